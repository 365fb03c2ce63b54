#pragma once

// Formulation-K systems  D·x + G·(x⊗x) + R·(x⊗x⊗x) = b.
//
// Column convention: G column (i-1)·n + j multiplies x_i·x_j, and R column
// ((i-1)·n + (j-1))·n + k multiplies x_i·x_j·x_k, matching the ordering of
// the Kronecker powers of x.

#include <cstdint>
#include <optional>
#include <string>

#include "kronlift/types.hpp"

namespace kronlift {

struct PolynomialSystem {
    std::size_t n = 0;
    Matrix D;                 ///< n×n linear part
    std::optional<Matrix> G;  ///< n×n² quadratic part
    std::optional<Matrix> R;  ///< n×n³ cubic part
    Vector b;                 ///< right-hand side
    std::string meta;         ///< free-form provenance

    bool is_linear() const noexcept { return !G && !R; }

    /// Throws DimensionError / DomainError naming the offending field.
    void validate() const;
};

struct ResidualVector {
    Vector values;
    double norm = 0.0;
};

/// F(x) = D·x + G·(x⊗x) + R·(x⊗x⊗x) − b.
ResidualVector eval_residual(const PolynomialSystem& sys, const Vector& x);

/// ∂F/∂x = D + G·(x⊗I + I⊗x) + R·(x⊗x⊗I + x⊗I⊗x + I⊗x⊗x).
Matrix eval_jacobian(const PolynomialSystem& sys, const Vector& x);

/// Standard-normal entries from a seeded generator. degree 2 fills G,
/// degree 3 fills R. With a planted root, b is chosen so F(root) = 0.
PolynomialSystem random_system(std::size_t n, int degree, std::uint64_t seed,
                               const std::optional<Vector>& planted_root = std::nullopt);

/// Deterministic standard-normal root used when a root is planted by seed.
Vector draw_root(std::size_t n, std::uint64_t seed);

/// Replaces G by its symmetric part with respect to swapping (i, j).
/// The residual is unchanged for every x. Throws DomainError without G.
PolynomialSystem symmetrize_quadratic(const PolynomialSystem& sys);

} // namespace kronlift
