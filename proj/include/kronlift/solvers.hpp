#pragma once

// Linear algebra on the lifted system P·y = b, plus the Newton–Raphson
// baseline on the original nonlinear system. A single SVD drives rank,
// pseudoinverse and null space so their diagnostics always agree.

#include <cstddef>
#include <vector>

#include "kronlift/lift.hpp"
#include "kronlift/system_model.hpp"

namespace kronlift {

inline constexpr double kDefaultRankRtol = 1e-10;
inline constexpr double kDefaultRidge = 1e-10;

struct SvdReport {
    Vector singular_values;          ///< descending
    std::size_t numerical_rank = 0;  ///< #{σ > rank_tolerance}
    std::size_t nullity = 0;         ///< columns − rank
    double rank_tolerance = 0.0;     ///< rank_rtol · σ_max
    double condition_estimate = 0.0; ///< σ_max / σ_rank, +inf when rank is 0
};

/// Thin U, full V and the report, from one decomposition.
struct SvdFactors {
    SvdReport report;
    Matrix U;
    Matrix V;
};

SvdFactors decompose(const Matrix& P, double rank_rtol = kDefaultRankRtol);
SvdReport svd_analyze(const Matrix& P, double rank_rtol = kDefaultRankRtol);

/// Truncated-SVD Moore–Penrose inverse.
Matrix pseudoinverse(const Matrix& P, double rank_rtol = kDefaultRankRtol);

struct PinvSolution {
    Vector y;
    double residual_norm = 0.0;
};

/// Minimum-norm least-squares solution of P·y = b.
PinvSolution pinv_solve(const Matrix& P, const Vector& b, double rank_rtol = kDefaultRankRtol);
PinvSolution pinv_solve(const LiftedSystem& lift, double rank_rtol = kDefaultRankRtol);

/// Solves (PᵀP + ridge·I)·y = Pᵀb by Cholesky. With ridge = 0 and a
/// rank-deficient P this throws SingularityError.
Vector normal_eq_solve(const Matrix& P, const Vector& b, double ridge = kDefaultRidge);
Vector normal_eq_solve(const LiftedSystem& lift, double ridge = kDefaultRidge);

/// Orthonormal basis (m × nullity) of the numerical null space of P.
Matrix nullspace_basis(const Matrix& P, double rank_rtol = kDefaultRankRtol);
Matrix nullspace_basis(const LiftedSystem& lift, double rank_rtol = kDefaultRankRtol);

struct NewtonIterate {
    Vector x;
    double residual_norm = 0.0;
};

struct NewtonTrace {
    std::vector<NewtonIterate> iterates; ///< starts with x0
    bool converged = false;
    std::size_t iterations = 0;
};

struct NewtonOptions {
    double tol = 1e-10;       ///< stop when ‖F‖ ≤ tol·(1 + ‖b‖)
    std::size_t max_iter = 50;
};

/// Newton–Raphson with a Levenberg shift J + μI (μ = 1e-8‖J‖, doubled until
/// solvable) on singular Jacobians. Running out of iterations is reported
/// through `converged`; a non-finite iterate throws NumericalFailure.
NewtonTrace newton_solve(const PolynomialSystem& sys, const Vector& x0, const NewtonOptions& opts = {});

} // namespace kronlift
