#include "kronlift/system_model.hpp"

#include <random>

#include "kronlift/errors.hpp"
#include "kronlift/kernels.hpp"

namespace kronlift {

namespace {

std::string dims(Eigen::Index r, Eigen::Index c)
{
    return std::to_string(r) + "x" + std::to_string(c);
}

void require_length(const PolynomialSystem& sys, const Vector& x, const char* op)
{
    if (static_cast<std::size_t>(x.size()) != sys.n)
        throw DimensionError(std::string(op) + ": x has length " + std::to_string(x.size())
                             + ", expected " + std::to_string(sys.n));
}

} // namespace

void PolynomialSystem::validate() const
{
    if (n == 0)
        throw DomainError("system: n must be at least 1");
    const auto dim = static_cast<Eigen::Index>(n);
    if (D.rows() != dim || D.cols() != dim)
        throw DimensionError("system: D is " + dims(D.rows(), D.cols()) + ", expected " + dims(dim, dim));
    if (b.size() != dim)
        throw DimensionError("system: b has length " + std::to_string(b.size()) + ", expected " + std::to_string(n));
    if (G && (G->rows() != dim || G->cols() != dim * dim))
        throw DimensionError("system: G is " + dims(G->rows(), G->cols()) + ", expected " + dims(dim, dim * dim));
    if (R && (R->rows() != dim || R->cols() != dim * dim * dim))
        throw DimensionError("system: R is " + dims(R->rows(), R->cols()) + ", expected "
                             + dims(dim, dim * dim * dim));
    if (!D.allFinite())
        throw DomainError("system: D has non-finite entries");
    if (!b.allFinite())
        throw DomainError("system: b has non-finite entries");
    if (G && !G->allFinite())
        throw DomainError("system: G has non-finite entries");
    if (R && !R->allFinite())
        throw DomainError("system: R has non-finite entries");
}

ResidualVector eval_residual(const PolynomialSystem& sys, const Vector& x)
{
    require_length(sys, x, "eval_residual");
    Vector values = sys.D * x;
    if (sys.G)
        values += kernels::quadratic_apply(*sys.G, x);
    if (sys.R)
        values += kernels::cubic_apply(*sys.R, x);
    values -= sys.b;
    const double norm = values.norm();
    return {std::move(values), norm};
}

Matrix eval_jacobian(const PolynomialSystem& sys, const Vector& x)
{
    require_length(sys, x, "eval_jacobian");
    const auto n = static_cast<Eigen::Index>(sys.n);
    Matrix jac = sys.D;

    if (sys.G) {
        const Matrix& g = *sys.G;
        for (Eigen::Index row = 0; row < n; ++row)
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) {
                    const double c = g(row, i * n + j);
                    jac(row, i) += c * x(j);
                    jac(row, j) += c * x(i);
                }
    }
    if (sys.R) {
        const Matrix& r = *sys.R;
        for (Eigen::Index row = 0; row < n; ++row)
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    for (Eigen::Index k = 0; k < n; ++k) {
                        const double c = r(row, (i * n + j) * n + k);
                        jac(row, i) += c * x(j) * x(k);
                        jac(row, j) += c * x(i) * x(k);
                        jac(row, k) += c * x(i) * x(j);
                    }
    }
    return jac;
}

PolynomialSystem random_system(std::size_t n, int degree, std::uint64_t seed,
                               const std::optional<Vector>& planted_root)
{
    if (n == 0)
        throw DomainError("random_system: n must be at least 1");
    if (degree != 2 && degree != 3)
        throw DomainError("random_system: degree must be 2 or 3, got " + std::to_string(degree));
    if (planted_root && static_cast<std::size_t>(planted_root->size()) != n)
        throw DimensionError("random_system: planted root has wrong length");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto fill = [&](Matrix& m) {
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                m(i, j) = normal(rng);
    };

    const auto dim = static_cast<Eigen::Index>(n);
    PolynomialSystem sys;
    sys.n = n;
    sys.D.resize(dim, dim);
    fill(sys.D);
    if (degree == 2) {
        sys.G = Matrix(dim, dim * dim);
        fill(*sys.G);
    } else {
        sys.R = Matrix(dim, dim * dim * dim);
        fill(*sys.R);
    }

    sys.meta = "random n=" + std::to_string(n) + " degree=" + std::to_string(degree)
               + " seed=" + std::to_string(seed);
    if (planted_root) {
        sys.b = Vector::Zero(dim);
        sys.b = eval_residual(sys, *planted_root).values;
        sys.meta += " planted_root";
    } else {
        sys.b.resize(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            sys.b(i) = normal(rng);
    }
    return sys;
}

Vector draw_root(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector x(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x(i) = normal(rng);
    return x;
}

PolynomialSystem symmetrize_quadratic(const PolynomialSystem& sys)
{
    if (!sys.G)
        throw DomainError("symmetrize_quadratic: system has no quadratic block");
    PolynomialSystem out = sys;
    const auto n = static_cast<Eigen::Index>(sys.n);
    Matrix& g = *out.G;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const auto c1 = i * n + j;
            const auto c2 = j * n + i;
            const Vector avg = 0.5 * (g.col(c1) + g.col(c2));
            g.col(c1) = avg;
            g.col(c2) = avg;
        }
    return out;
}

} // namespace kronlift
