#include "kronlift/mwr_frontend.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kronlift/errors.hpp"
#include "kronlift/kernels.hpp"

namespace kronlift {

int LinearOperatorSpec::max_order() const noexcept
{
    int m = 0;
    for (const auto& t : terms)
        m = std::max(m, t.order);
    return m;
}

LinearOperatorSpec LinearOperatorSpec::identity()
{
    return {{OperatorTerm{0, {1.0}}}};
}

LinearOperatorSpec LinearOperatorSpec::derivative(int order, double scale)
{
    return {{OperatorTerm{order, {scale}}}};
}

Forcing Forcing::polynomial(std::vector<double> coefficients)
{
    Forcing f;
    f.kind_ = Kind::Polynomial;
    f.data_ = std::move(coefficients);
    return f;
}

Forcing Forcing::node_values(std::vector<double> values)
{
    Forcing f;
    f.kind_ = Kind::NodeValues;
    f.data_ = std::move(values);
    return f;
}

Forcing Forcing::function(std::function<double(double)> fn)
{
    Forcing f;
    f.kind_ = Kind::Function;
    f.data_.clear();
    f.fn_ = std::move(fn);
    return f;
}

double Forcing::at(std::size_t node_index, double x) const
{
    switch (kind_) {
    case Kind::Polynomial:
        return evaluate_polynomial(data_, x);
    case Kind::NodeValues:
        if (node_index >= data_.size())
            throw DimensionError("forcing: no value for interior node " + std::to_string(node_index));
        return data_[node_index];
    case Kind::Function:
        return fn_(x);
    }
    return 0.0;
}

double evaluate_polynomial(const std::vector<double>& coefficients, double x) noexcept
{
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

int MwrProblem::max_order() const noexcept
{
    return std::max({p.max_order(), r.max_order(), L.max_order()});
}

void MwrProblem::validate() const
{
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("mwr: domain must satisfy a < b, got [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    if (n_basis < bc.size() + 1)
        throw DimensionError("mwr: n_basis = " + std::to_string(n_basis) + " leaves no interior node for "
                             + std::to_string(bc.size()) + " boundary conditions");
    for (const auto* op : {&p, &r, &L})
        for (const auto& t : op->terms) {
            if (t.order < 0 || t.order > kMaxDerivativeOrder)
                throw DomainError("mwr: derivative order " + std::to_string(t.order) + " outside 0.."
                                  + std::to_string(kMaxDerivativeOrder));
            if (!std::all_of(t.coefficient.begin(), t.coefficient.end(), [](double c) { return std::isfinite(c); }))
                throw DomainError("mwr: operator coefficient is not finite");
        }
    for (const auto& c : bc) {
        if (c.at != a && c.at != b)
            throw DomainError("mwr: boundary condition at " + std::to_string(c.at) + " is not an endpoint");
        if (!std::isfinite(c.value))
            throw DomainError("mwr: boundary value is not finite");
    }
    if (f.kind() == Forcing::Kind::NodeValues && f.data().size() != interior_count())
        throw DimensionError("mwr: forcing has " + std::to_string(f.data().size()) + " node values, expected "
                             + std::to_string(interior_count()));
}

std::vector<double> collocation_nodes(const MwrProblem& problem)
{
    const std::size_t count = problem.interior_count();
    std::vector<double> nodes(count);
    const double mid = 0.5 * (problem.a + problem.b);
    const double half = 0.5 * (problem.b - problem.a);
    for (std::size_t j = 0; j < count; ++j) {
        const double t = -std::cos((2.0 * static_cast<double>(j) + 1.0) * std::numbers::pi
                                   / (2.0 * static_cast<double>(count)));
        nodes[j] = mid + half * t;
    }
    return nodes;
}

Matrix basis_derivatives(const MwrProblem& problem, double x, int order)
{
    if (order < 0 || order > kMaxDerivativeOrder)
        throw DomainError("basis: unsupported derivative order " + std::to_string(order));
    const auto n = static_cast<Eigen::Index>(problem.n_basis);
    Matrix out = Matrix::Zero(order + 1, n);

    if (problem.basis == BasisKind::Monomial) {
        for (Eigen::Index k = 0; k < n; ++k)
            for (int d = 0; d <= order && d <= k; ++d) {
                double factor = 1.0;
                for (int q = 0; q < d; ++q)
                    factor *= static_cast<double>(k - q);
                out(d, k) = factor * std::pow(x, static_cast<double>(k - d));
            }
        return out;
    }

    // Chebyshev in t ∈ [-1, 1]; differentiate the three-term recurrence
    // T_{k+1} = 2t·T_k − T_{k−1} and rescale by (dt/dx)^d.
    const double scale = 2.0 / (problem.b - problem.a);
    const double t = (2.0 * x - problem.a - problem.b) / (problem.b - problem.a);
    out(0, 0) = 1.0;
    if (n > 1) {
        out(0, 1) = t;
        if (order >= 1)
            out(1, 1) = 1.0;
    }
    for (Eigen::Index k = 1; k + 1 < n; ++k)
        for (int d = 0; d <= order; ++d) {
            double v = 2.0 * t * out(d, k) - out(d, k - 1);
            if (d > 0)
                v += 2.0 * d * out(d - 1, k);
            out(d, k + 1) = v;
        }
    double s = 1.0;
    for (int d = 1; d <= order; ++d) {
        s *= scale;
        out.row(d) *= s;
    }
    return out;
}

BasisEvaluation basis_eval(const MwrProblem& problem, int order)
{
    if (order < 0 || order > kMaxDerivativeOrder)
        throw DomainError("basis_eval: unsupported derivative order " + std::to_string(order));
    problem.validate();
    BasisEvaluation ev;
    ev.nodes = collocation_nodes(problem);
    const auto count = static_cast<Eigen::Index>(ev.nodes.size());
    const auto n = static_cast<Eigen::Index>(problem.n_basis);
    ev.values.assign(static_cast<std::size_t>(order) + 1, Matrix(count, n));
    for (Eigen::Index j = 0; j < count; ++j) {
        const Matrix at = basis_derivatives(problem, ev.nodes[static_cast<std::size_t>(j)], order);
        for (int d = 0; d <= order; ++d)
            ev.values[static_cast<std::size_t>(d)].row(j) = at.row(d);
    }
    return ev;
}

Vector apply_operator(const MwrProblem& problem, const LinearOperatorSpec& op, double x)
{
    Vector row = Vector::Zero(static_cast<Eigen::Index>(problem.n_basis));
    if (op.empty())
        return row;
    const Matrix derivs = basis_derivatives(problem, x, op.max_order());
    for (const auto& term : op.terms)
        row += evaluate_polynomial(term.coefficient, x) * derivs.row(term.order).transpose();
    return row;
}

PolynomialSystem build_collocation_system(const MwrProblem& problem)
{
    problem.validate();
    const auto n = static_cast<Eigen::Index>(problem.n_basis);
    const std::vector<double> nodes = collocation_nodes(problem);
    const bool quadratic = !problem.p.empty() && !problem.r.empty();

    PolynomialSystem sys;
    sys.n = problem.n_basis;
    sys.D = Matrix::Zero(n, n);
    sys.b = Vector::Zero(n);
    if (quadratic)
        sys.G = Matrix::Zero(n, n * n);

    Eigen::Index row = 0;
    for (std::size_t j = 0; j < nodes.size(); ++j, ++row) {
        const double xj = nodes[j];
        sys.D.row(row) = apply_operator(problem, problem.L, xj).transpose();
        if (quadratic) {
            const Matrix prow = apply_operator(problem, problem.p, xj).transpose();
            const Matrix rrow = apply_operator(problem, problem.r, xj).transpose();
            sys.G->row(row) = kernels::kron(prow, rrow);
        }
        sys.b(row) = problem.f.at(j, xj);
    }
    for (const auto& c : problem.bc) {
        const int order = c.kind == BoundaryKind::Value ? 0 : 1;
        sys.D.row(row) = basis_derivatives(problem, c.at, order).row(order);
        sys.b(row) = c.value;
        ++row;
    }
    if (!sys.b.allFinite())
        throw DomainError("mwr: forcing produced non-finite values");
    sys.meta = "collocation n_basis=" + std::to_string(problem.n_basis)
               + (problem.basis == BasisKind::Chebyshev ? " chebyshev" : " monomial");
    return sys;
}

std::vector<double> evaluate_solution(const MwrProblem& problem, const Vector& coeffs,
                                      const std::vector<double>& points)
{
    if (static_cast<std::size_t>(coeffs.size()) != problem.n_basis)
        throw DimensionError("evaluate_solution: expected " + std::to_string(problem.n_basis) + " coefficients, got "
                             + std::to_string(coeffs.size()));
    std::vector<double> out;
    out.reserve(points.size());
    for (double x : points) {
        if (!(x >= problem.a && x <= problem.b))
            throw DomainError("evaluate_solution: point " + std::to_string(x) + " outside ["
                              + std::to_string(problem.a) + ", " + std::to_string(problem.b) + "]");
        out.push_back(basis_derivatives(problem, x, 0).row(0).dot(coeffs));
    }
    return out;
}

} // namespace kronlift
