#pragma once

// Test-only generators and oracles. Nothing here calls into the library's
// own kernels, so they can be used to check them.

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "kronlift/solvers.hpp"
#include "kronlift/system_model.hpp"
#include "kronlift/types.hpp"

namespace kronlift::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    std::size_t index(std::size_t lo, std::size_t hi)
    {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
    }

    Matrix matrix(Eigen::Index r, Eigen::Index c)
    {
        Matrix m(r, c);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < c; ++j)
                m(i, j) = normal();
        return m;
    }
    /// Entries uniform in [-1, 1].
    Matrix bounded(Eigen::Index r, Eigen::Index c)
    {
        Matrix m(r, c);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < c; ++j)
                m(i, j) = uniform(-1.0, 1.0);
        return m;
    }
    Vector vector(Eigen::Index n)
    {
        Vector v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v(i) = normal();
        return v;
    }
    /// Gram matrix F·Fᵀ of a random n×k factor, symmetrised exactly.
    Matrix psd(Eigen::Index n, Eigen::Index k)
    {
        const Matrix f = matrix(n, k);
        Matrix g(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j <= i; ++j) {
                double acc = 0.0;
                for (Eigen::Index q = 0; q < k; ++q)
                    acc += f(i, q) * f(j, q);
                g(i, j) = acc;
                g(j, i) = acc;
            }
        return g;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Naive triple-loop matrix product.
inline Matrix naive_mul(const Matrix& a, const Matrix& b)
{
    Matrix out = Matrix::Zero(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            for (Eigen::Index k = 0; k < a.cols(); ++k)
                out(i, j) += a(i, k) * b(k, j);
    return out;
}

/// Laplace expansion along the first row; fine for n ≤ 7.
inline double laplace_det(const Matrix& m)
{
    const Eigen::Index n = m.rows();
    if (n == 1)
        return m(0, 0);
    double det = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        Matrix minor(n - 1, n - 1);
        for (Eigen::Index i = 1; i < n; ++i)
            for (Eigen::Index j = 0, jj = 0; j < n; ++j)
                if (j != c)
                    minor(i - 1, jj++) = m(i, j);
        det += ((c % 2 == 0) ? 1.0 : -1.0) * m(0, c) * laplace_det(minor);
    }
    return det;
}

/// F(x) by explicit sums over every monomial, independent of the kernels.
inline Vector loop_residual(const PolynomialSystem& sys, const Vector& x)
{
    const auto n = static_cast<Eigen::Index>(sys.n);
    Vector out(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            acc += sys.D(r, i) * x(i);
        if (sys.G)
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    acc += (*sys.G)(r, i * n + j) * x(i) * x(j);
        if (sys.R)
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    for (Eigen::Index k = 0; k < n; ++k)
                        acc += (*sys.R)(r, (i * n + j) * n + k) * x(i) * x(j) * x(k);
        out(r) = acc - sys.b(r);
    }
    return out;
}

/// Central finite differences of a vector field.
inline Matrix central_differences(const std::function<Vector(const Vector&)>& f, const Vector& x, double h)
{
    const Vector f0 = f(x);
    Matrix jac(f0.size(), x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        Vector xp = x, xm = x;
        xp(j) += h;
        xm(j) -= h;
        jac.col(j) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return jac;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Largest of the four Penrose residuals, each relative to its own scale.
inline double penrose_error(const Matrix& p, const Matrix& pp)
{
    const Matrix ppp = p * pp;
    const Matrix pinvp = pp * p;
    const double e1 = max_abs(ppp * p - p) / std::max(1.0, max_abs(p));
    const double e2 = max_abs(pinvp * pp - pp) / std::max(1.0, max_abs(pp));
    const double e3 = max_abs(ppp - ppp.transpose()) / std::max(1.0, max_abs(ppp));
    const double e4 = max_abs(pinvp - pinvp.transpose()) / std::max(1.0, max_abs(pinvp));
    return std::max({e1, e2, e3, e4});
}

/// Null space from a full-pivot LU, a different factorisation from the one under test.
inline Matrix lu_kernel(const Matrix& p)
{
    Eigen::FullPivLU<Eigen::MatrixXd> lu(p);
    lu.setThreshold(1e-10);
    if (lu.dimensionOfKernel() == 0)
        return Matrix(p.cols(), 0);
    return lu.kernel();
}

/// Count of draws y + K·z (same residual as y) whose norm is not below ‖y‖.
inline int minimality_holds(const Matrix& p, const Vector& y, Rng& rng, int draws)
{
    const Matrix k = lu_kernel(p);
    int held = 0;
    for (int d = 0; d < draws; ++d) {
        Vector delta = Vector::Zero(p.cols());
        if (k.cols() > 0) {
            const double scale = std::pow(10.0, rng.uniform(-6.0, 1.0));
            delta = scale * (k * rng.vector(k.cols()));
        }
        if ((y + delta).norm() >= y.norm() * (1.0 - 1e-12))
            ++held;
    }
    return held;
}

/// Quadratic convergence check on a Newton trace towards a known root:
/// every step whose error stays above the rounding floor obeys
/// e_{k+1} <= bound · e_k^2. Returns the number of such steps, or -1 on a violation.
inline int quadratic_steps(const NewtonTrace& trace, const Vector& root, double bound, double floor = 1e-12)
{
    int steps = 0;
    for (std::size_t k = 0; k + 1 < trace.iterates.size(); ++k) {
        const double e0 = (trace.iterates[k].x - root).norm();
        const double e1 = (trace.iterates[k + 1].x - root).norm();
        if (e1 < floor * (1.0 + root.norm()))
            break;
        if (e1 > bound * e0 * e0)
            return -1;
        ++steps;
    }
    return steps;
}

/// Distance from the root that Newton's stopping rule ‖F‖ ≤ tol·(1+‖b‖) allows,
/// to first order, with a factor 2 for the neglected curvature.
inline double newton_error_budget(const PolynomialSystem& sys, const Vector& root, double tol = 1e-10)
{
    Matrix jac = Matrix::Zero(static_cast<Eigen::Index>(sys.n), static_cast<Eigen::Index>(sys.n));
    const double h = 1e-6;
    for (Eigen::Index j = 0; j < jac.cols(); ++j) {
        Vector xp = root, xm = root;
        xp(j) += h;
        xm(j) -= h;
        jac.col(j) = (loop_residual(sys, xp) - loop_residual(sys, xm)) / (2.0 * h);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    return 2.0 * tol * (1.0 + sys.b.norm()) / svd.singularValues().minCoeff() + 1e-14 * (1.0 + root.norm());
}

/// Local quadratic-convergence constant: ‖J(x*)⁻¹‖ times a bound on the
/// second derivative of F in a unit ball around x*.
inline double newton_constant(const PolynomialSystem& sys, const Matrix& jacobian_at_root, const Vector& root)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian_at_root);
    const double inv_norm = 1.0 / svd.singularValues().minCoeff();
    double second = 0.0;
    if (sys.G)
        second += 2.0 * sys.G->norm();
    if (sys.R)
        second += 6.0 * sys.R->norm() * (root.norm() + 1.0);
    return inv_norm * second;
}

} // namespace kronlift::testing
