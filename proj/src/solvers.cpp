#include "kronlift/solvers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kronlift/errors.hpp"

namespace kronlift {

SvdFactors decompose(const Matrix& P, double rank_rtol)
{
    if (!P.allFinite())
        throw NumericalFailure("svd: matrix has non-finite entries");
    if (!(rank_rtol >= 0.0))
        throw DomainError("svd: rank tolerance must be non-negative");

    const Eigen::MatrixXd A = P;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success || !svd.singularValues().allFinite() || !svd.matrixV().allFinite())
        throw NumericalFailure("svd: decomposition did not converge");

    SvdFactors f;
    SvdReport& r = f.report;
    r.singular_values = svd.singularValues();
    const double smax = r.singular_values.size() > 0 ? r.singular_values(0) : 0.0;
    r.rank_tolerance = rank_rtol * smax;
    for (Eigen::Index i = 0; i < r.singular_values.size(); ++i)
        if (r.singular_values(i) > r.rank_tolerance)
            ++r.numerical_rank;
    r.nullity = static_cast<std::size_t>(P.cols()) - r.numerical_rank;
    r.condition_estimate = r.numerical_rank == 0
                               ? std::numeric_limits<double>::infinity()
                               : smax / r.singular_values(static_cast<Eigen::Index>(r.numerical_rank - 1));
    f.U = svd.matrixU();
    f.V = svd.matrixV();
    return f;
}

SvdReport svd_analyze(const Matrix& P, double rank_rtol)
{
    return decompose(P, rank_rtol).report;
}

Matrix pseudoinverse(const Matrix& P, double rank_rtol)
{
    const SvdFactors f = decompose(P, rank_rtol);
    const auto r = static_cast<Eigen::Index>(f.report.numerical_rank);
    const Vector inv_sigma = f.report.singular_values.head(r).cwiseInverse();
    return f.V.leftCols(r) * inv_sigma.asDiagonal() * f.U.leftCols(r).transpose();
}

PinvSolution pinv_solve(const Matrix& P, const Vector& b, double rank_rtol)
{
    if (b.size() != P.rows())
        throw DimensionError("pinv_solve: b has length " + std::to_string(b.size()) + ", expected "
                             + std::to_string(P.rows()));
    const SvdFactors f = decompose(P, rank_rtol);
    const auto r = static_cast<Eigen::Index>(f.report.numerical_rank);
    const Vector coeffs = (f.U.leftCols(r).transpose() * b).cwiseQuotient(f.report.singular_values.head(r));
    PinvSolution out;
    out.y = f.V.leftCols(r) * coeffs;
    out.residual_norm = (P * out.y - b).norm();
    return out;
}

PinvSolution pinv_solve(const LiftedSystem& lift, double rank_rtol)
{
    return pinv_solve(lift.P, lift.b, rank_rtol);
}

Vector normal_eq_solve(const Matrix& P, const Vector& b, double ridge)
{
    if (b.size() != P.rows())
        throw DimensionError("normal_eq_solve: b has length " + std::to_string(b.size()) + ", expected "
                             + std::to_string(P.rows()));
    if (!(ridge >= 0.0) || !std::isfinite(ridge))
        throw DomainError("normal_eq_solve: ridge must be a finite non-negative number");

    const auto m = P.cols();
    if (ridge == 0.0) {
        const SvdReport rep = svd_analyze(P);
        if (rep.numerical_rank < static_cast<std::size_t>(m))
            throw SingularityError("normal_eq_solve: P^T P is singular (rank " + std::to_string(rep.numerical_rank)
                                   + " < " + std::to_string(m)
                                   + " columns); the lifted system is ill-posed, use a ridge > 0");
    }

    Eigen::MatrixXd normal = P.transpose() * P;
    normal.diagonal().array() += ridge;
    const Vector rhs = P.transpose() * b;
    const Eigen::LLT<Eigen::MatrixXd> llt(normal);
    if (llt.info() != Eigen::Success)
        throw SingularityError("normal_eq_solve: P^T P + ridge*I is not positive definite");
    Vector y = llt.solve(rhs);
    if (!y.allFinite())
        throw NumericalFailure("normal_eq_solve: solution has non-finite entries");
    return y;
}

Vector normal_eq_solve(const LiftedSystem& lift, double ridge)
{
    return normal_eq_solve(lift.P, lift.b, ridge);
}

Matrix nullspace_basis(const Matrix& P, double rank_rtol)
{
    const SvdFactors f = decompose(P, rank_rtol);
    return f.V.rightCols(static_cast<Eigen::Index>(f.report.nullity));
}

Matrix nullspace_basis(const LiftedSystem& lift, double rank_rtol)
{
    return nullspace_basis(lift.P, rank_rtol);
}

namespace {

Vector newton_step(const Matrix& jac, const Vector& residual)
{
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (lu.isInvertible())
        return lu.solve(-residual);

    const auto n = jac.rows();
    double mu = 1e-8 * jac.norm();
    if (mu == 0.0)
        mu = 1e-8;
    for (int attempt = 0; attempt < 200; ++attempt, mu *= 2.0) {
        lu.compute(jac + mu * Matrix::Identity(n, n));
        if (lu.isInvertible())
            return lu.solve(-residual);
    }
    throw NumericalFailure("newton_solve: Levenberg shift failed to regularise the Jacobian");
}

} // namespace

NewtonTrace newton_solve(const PolynomialSystem& sys, const Vector& x0, const NewtonOptions& opts)
{
    if (static_cast<std::size_t>(x0.size()) != sys.n)
        throw DimensionError("newton_solve: x0 has length " + std::to_string(x0.size()) + ", expected "
                             + std::to_string(sys.n));
    if (!x0.allFinite())
        throw DomainError("newton_solve: x0 has non-finite entries");

    const double threshold = opts.tol * (1.0 + sys.b.norm());
    NewtonTrace trace;
    Vector x = x0;
    ResidualVector res = eval_residual(sys, x);
    trace.iterates.push_back({x, res.norm});
    if (res.norm <= threshold) {
        trace.converged = true;
        return trace;
    }

    for (std::size_t k = 0; k < opts.max_iter; ++k) {
        x += newton_step(eval_jacobian(sys, x), res.values);
        if (!x.allFinite())
            throw NumericalFailure("newton_solve: iterate " + std::to_string(k + 1) + " is not finite");
        res = eval_residual(sys, x);
        if (!std::isfinite(res.norm))
            throw NumericalFailure("newton_solve: residual at iterate " + std::to_string(k + 1) + " is not finite");
        trace.iterates.push_back({x, res.norm});
        trace.iterations = k + 1;
        if (res.norm <= threshold) {
            trace.converged = true;
            break;
        }
    }
    return trace;
}

} // namespace kronlift
