#include "kronlift/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kronlift/errors.hpp"
#include "kronlift/kernels.hpp"

namespace kronlift {

namespace {

std::string shape(const Matrix& m)
{
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
}

void require_symmetric(const Matrix& m, const char* op)
{
    if (m.rows() != m.cols())
        throw DomainError(std::string(op) + ": matrix must be square, got " + shape(m));
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw DomainError(std::string(op) + ": matrix is not symmetric");
}

std::size_t choose3(std::size_t m)
{
    return m < 3 ? 0 : m * (m - 1) * (m - 2) / 6;
}

} // namespace

Matrix hadamard(const Matrix& a, const Matrix& b)
{
    require_same_shape(a, b, "hadamard");
    return kernels::hadamard(a, b);
}

Matrix kron(const Matrix& a, const Matrix& b, std::size_t entry_cap)
{
    const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
    const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
    if (cols != 0 && rows > entry_cap / cols)
        throw CapacityError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols)
                            + " exceeds cap of " + std::to_string(entry_cap) + " entries");
    return kernels::kron(a, b);
}

Matrix selection_matrix(std::size_t n)
{
    if (n == 0)
        throw DomainError("selection_matrix: n must be at least 1");
    const auto dim = static_cast<Eigen::Index>(n);
    Matrix e = Matrix::Zero(dim * dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        e(k * dim + k, k) = 1.0;
    return e;
}

Matrix hadamard_via_kron(const Matrix& a, const Matrix& b)
{
    require_same_shape(a, b, "hadamard_via_kron");
    const Matrix en = selection_matrix(static_cast<std::size_t>(a.rows()));
    const Matrix em = selection_matrix(static_cast<std::size_t>(a.cols()));
    return en.transpose() * kron(a, b) * em;
}

SpectralBoundReport check_spectral_bounds(const Matrix& a, const Matrix& b, double slack)
{
    require_same_shape(a, b, "check_spectral_bounds");
    require_symmetric(a, "check_spectral_bounds");
    require_symmetric(b, "check_spectral_bounds");

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_a(a, Eigen::EigenvaluesOnly);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_ab(Eigen::MatrixXd(hadamard(a, b)),
                                                                Eigen::EigenvaluesOnly);
    if (eig_a.info() != Eigen::Success || eig_ab.info() != Eigen::Success)
        throw NumericalFailure("check_spectral_bounds: eigendecomposition did not converge");

    const Vector diag_b = b.diagonal();
    SpectralBoundReport report;
    report.lower = eig_a.eigenvalues().minCoeff() * diag_b.minCoeff();
    report.upper = eig_a.eigenvalues().maxCoeff() * diag_b.maxCoeff();
    report.eigenvalues = eig_ab.eigenvalues();

    const double lo = report.lower - slack * std::max(1.0, std::abs(report.lower));
    const double hi = report.upper + slack * std::max(1.0, std::abs(report.upper));
    report.pass = (report.eigenvalues.array() >= lo).all() && (report.eigenvalues.array() <= hi).all();
    return report;
}

DeterminantReport check_det_inequality(const Matrix& a, const Matrix& b, double slack)
{
    require_same_shape(a, b, "check_det_inequality");
    require_symmetric(a, "check_det_inequality");
    require_symmetric(b, "check_det_inequality");

    DeterminantReport report;
    report.product_of_dets = a.determinant() * b.determinant();
    report.det_of_hadamard = hadamard(a, b).determinant();
    const double scale = std::max({1.0, std::abs(report.product_of_dets), std::abs(report.det_of_hadamard)});
    report.pass = report.product_of_dets <= report.det_of_hadamard + slack * scale;
    return report;
}

PairIndexMap::PairIndexMap(std::size_t n) : n_(n)
{
    if (n == 0)
        throw DomainError("PairIndexMap: dimension must be at least 1");
}

std::size_t PairIndexMap::index(std::size_t i, std::size_t j) const
{
    if (i < 1 || i > j || j > n_)
        throw DomainError("pair_index: need 1 <= i <= j <= " + std::to_string(n_) + ", got ("
                          + std::to_string(i) + "," + std::to_string(j) + ")");
    return (i - 1) * (2 * n_ - i + 2) / 2 + (j - i + 1);
}

std::pair<std::size_t, std::size_t> PairIndexMap::unindex(std::size_t p) const
{
    if (p < 1 || p > size())
        throw DomainError("pair_unindex: index " + std::to_string(p) + " outside 1.."
                          + std::to_string(size()));
    std::size_t i = 1;
    std::size_t remaining = p;
    while (remaining > n_ - i + 1) {
        remaining -= n_ - i + 1;
        ++i;
    }
    return {i, i + remaining - 1};
}

TripleIndexMap::TripleIndexMap(std::size_t n) : n_(n)
{
    if (n == 0)
        throw DomainError("TripleIndexMap: dimension must be at least 1");
}

// Triples with first index >= i number C(n-i+3, 3); the block for first
// index i is a pair enumeration over {i..n}.
std::size_t TripleIndexMap::index(std::size_t i, std::size_t j, std::size_t k) const
{
    if (i < 1 || i > j || j > k || k > n_)
        throw DomainError("triple_index: need 1 <= i <= j <= k <= " + std::to_string(n_));
    const std::size_t offset = choose3(n_ + 2) - choose3(n_ - i + 3);
    const PairIndexMap tail(n_ - i + 1);
    return offset + tail.index(j - i + 1, k - i + 1);
}

std::array<std::size_t, 3> TripleIndexMap::unindex(std::size_t p) const
{
    if (p < 1 || p > size())
        throw DomainError("triple_unindex: index " + std::to_string(p) + " outside 1.."
                          + std::to_string(size()));
    std::size_t i = 1;
    std::size_t remaining = p;
    for (;;) {
        const std::size_t m = n_ - i + 1;
        const std::size_t block = m * (m + 1) / 2;
        if (remaining <= block)
            break;
        remaining -= block;
        ++i;
    }
    const auto [j, k] = PairIndexMap(n_ - i + 1).unindex(remaining);
    return {i, j + i - 1, k + i - 1};
}

} // namespace kronlift
