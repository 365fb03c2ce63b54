#pragma once

// Hadamard and Kronecker products, the E_N selection matrices that connect
// them, Schur-product bound checks, and the symmetric monomial index maps
// used by the lift.

#include <array>
#include <cstddef>
#include <utility>

#include "kronlift/types.hpp"

namespace kronlift {

/// Default upper bound on the number of entries a Kronecker product may have.
inline constexpr std::size_t kDefaultKronEntryCap = 10'000'000;

/// Entrywise product. Throws DimensionError on shape mismatch.
Matrix hadamard(const Matrix& a, const Matrix& b);

/// Block Kronecker product: result((i,k),(j,l)) = a(i,j)·b(k,l).
/// Throws CapacityError when the result would exceed `entry_cap` entries.
Matrix kron(const Matrix& a, const Matrix& b, std::size_t entry_cap = kDefaultKronEntryCap);

/// E_n = [e_1⊗e_1 : … : e_n⊗e_n], an n²×n matrix with orthonormal columns.
Matrix selection_matrix(std::size_t n);

/// A∘B computed through the Kronecker identity E_Nᵀ (A⊗B) E_M.
Matrix hadamard_via_kron(const Matrix& a, const Matrix& b);

struct SpectralBoundReport {
    double lower = 0.0; ///< λ_min(a)·min_i b_ii
    double upper = 0.0; ///< λ_max(a)·max_i b_ii
    Vector eigenvalues; ///< eigenvalues of a∘b, ascending
    bool pass = false;
};

struct DeterminantReport {
    double product_of_dets = 0.0; ///< det(a)·det(b)
    double det_of_hadamard = 0.0; ///< det(a∘b)
    bool pass = false;
};

/// Checks λ_min(a)·min b_ii ≤ λ_j(a∘b) ≤ λ_max(a)·max b_ii for symmetric
/// (positive semidefinite) a, b. `slack` is relative to max(1, |bound|).
SpectralBoundReport check_spectral_bounds(const Matrix& a, const Matrix& b, double slack = 1e-12);

/// Checks det(a)·det(b) ≤ det(a∘b) for symmetric (positive semidefinite) a, b.
DeterminantReport check_det_inequality(const Matrix& a, const Matrix& b, double slack = 1e-12);

/// Lexicographic enumeration of pairs (i, j), 1 ≤ i ≤ j ≤ n. All indices
/// in this API are 1-based.
class PairIndexMap {
public:
    explicit PairIndexMap(std::size_t n);

    std::size_t dimension() const noexcept { return n_; }
    std::size_t size() const noexcept { return n_ * (n_ + 1) / 2; }

    std::size_t index(std::size_t i, std::size_t j) const;
    std::pair<std::size_t, std::size_t> unindex(std::size_t p) const;

private:
    std::size_t n_;
};

/// Lexicographic enumeration of triples (i, j, k), 1 ≤ i ≤ j ≤ k ≤ n. 1-based.
class TripleIndexMap {
public:
    explicit TripleIndexMap(std::size_t n);

    std::size_t dimension() const noexcept { return n_; }
    std::size_t size() const noexcept { return n_ * (n_ + 1) * (n_ + 2) / 6; }

    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const;
    std::array<std::size_t, 3> unindex(std::size_t p) const;

private:
    std::size_t n_;
};

} // namespace kronlift
