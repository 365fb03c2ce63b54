#pragma once

// Collocation frontend for 1-D problems of the form
//
//     p(u)·r(u) + L(u) = f   on [a, b]
//
// with p, r, L linear differential operators whose coefficients are
// polynomials in x. Interior rows enforce the equation at Chebyshev–Gauss
// points; each boundary condition replaces one row with a strong-form
// value or derivative constraint. The result is a quadratic formulation-K
// system in the expansion coefficients.

#include <functional>
#include <string>
#include <vector>

#include "kronlift/system_model.hpp"

namespace kronlift {

inline constexpr int kMaxDerivativeOrder = 4;

struct OperatorTerm {
    int order = 0;                    ///< derivative order, 0..4
    std::vector<double> coefficient;  ///< polynomial in x, ascending powers
};

struct LinearOperatorSpec {
    std::vector<OperatorTerm> terms;

    bool empty() const noexcept { return terms.empty(); }
    int max_order() const noexcept;

    static LinearOperatorSpec identity();
    static LinearOperatorSpec derivative(int order, double scale = 1.0);
};

enum class BasisKind { Monomial, Chebyshev };
enum class BoundaryKind { Value, Derivative };

struct BoundaryCondition {
    double at = 0.0;  ///< must equal a or b
    BoundaryKind kind = BoundaryKind::Value;
    double value = 0.0;
};

/// Right-hand side f: a polynomial, explicit values at the interior nodes,
/// or (API only) an arbitrary callable.
class Forcing {
public:
    Forcing() = default;

    static Forcing constant(double c) { return polynomial({c}); }
    static Forcing polynomial(std::vector<double> coefficients);
    static Forcing node_values(std::vector<double> values);
    static Forcing function(std::function<double(double)> fn);

    enum class Kind { Polynomial, NodeValues, Function };
    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& data() const noexcept { return data_; }

    /// f at interior node `node_index` located at `x`.
    double at(std::size_t node_index, double x) const;

private:
    Kind kind_ = Kind::Polynomial;
    std::vector<double> data_{0.0};
    std::function<double(double)> fn_;
};

struct MwrProblem {
    double a = 0.0;
    double b = 1.0;
    LinearOperatorSpec p;
    LinearOperatorSpec r;
    LinearOperatorSpec L;
    Forcing f;
    std::size_t n_basis = 1;
    BasisKind basis = BasisKind::Chebyshev;
    std::vector<BoundaryCondition> bc;

    std::size_t interior_count() const noexcept { return n_basis - bc.size(); }
    int max_order() const noexcept;

    /// Throws DomainError / DimensionError describing the violated constraint.
    void validate() const;
};

struct BasisEvaluation {
    std::vector<double> nodes;   ///< interior collocation points, ascending
    std::vector<Matrix> values;  ///< values[d](j, k) = φ_k^{(d)}(nodes[j])
};

double evaluate_polynomial(const std::vector<double>& coefficients, double x) noexcept;

/// Chebyshev–Gauss points mapped into (a, b), ascending.
std::vector<double> collocation_nodes(const MwrProblem& problem);

/// (order+1) × n_basis matrix of basis derivatives at a single point.
Matrix basis_derivatives(const MwrProblem& problem, double x, int order);

BasisEvaluation basis_eval(const MwrProblem& problem, int order);

/// Row vector (Lφ_1 … Lφ_n) evaluated at x.
Vector apply_operator(const MwrProblem& problem, const LinearOperatorSpec& op, double x);

PolynomialSystem build_collocation_system(const MwrProblem& problem);

/// û(x) = Σ c_k φ_k(x). Throws DomainError for points outside [a, b].
std::vector<double> evaluate_solution(const MwrProblem& problem, const Vector& coeffs,
                                      const std::vector<double>& points);

} // namespace kronlift
