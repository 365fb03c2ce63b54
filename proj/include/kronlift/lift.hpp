#pragma once

// Lifting a formulation-K system into the underdetermined linear system
// P·y = b, where y stacks x, the products x_i·x_j (i ≤ j) and, for cubic
// systems, x_i·x_j·x_k (i ≤ j ≤ k).

#include <memory>
#include <optional>
#include <vector>

#include "kronlift/system_model.hpp"
#include "kronlift/tensor_core.hpp"

namespace kronlift {

/// A contiguous range of y-columns holding monomials of one degree.
/// `offset` is a 0-based column index into P.
struct LiftBlock {
    int degree = 1;
    std::size_t offset = 0;
    std::size_t length = 0;
};

struct LiftedSystem {
    Matrix P;
    Vector b;
    std::vector<LiftBlock> blocks;
    PairIndexMap pair_map{1};
    std::optional<TripleIndexMap> triple_map;
    std::shared_ptr<const PolynomialSystem> origin;

    std::size_t n() const noexcept { return static_cast<std::size_t>(P.rows()); }
    std::size_t m() const noexcept { return static_cast<std::size_t>(P.cols()); }

    /// Block for the given degree, or nullptr when absent.
    const LiftBlock* block(int degree) const noexcept;
};

/// Column count n + [G]·n(n+1)/2 + [R]·n(n+1)(n+2)/6.
std::size_t lifted_width(std::size_t n, bool quadratic, bool cubic) noexcept;

/// Throws DegenerateLiftError for purely linear systems.
LiftedSystem build_lifted(const PolynomialSystem& sys);

/// y(x): the exact monomial vector whose image under P equals D·x + … .
Vector monomial_embedding(const LiftedSystem& lift, const Vector& x);

} // namespace kronlift
