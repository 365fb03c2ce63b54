#include "kronlift/kernels.hpp"

namespace kronlift::kernels::serial {

Matrix hadamard(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j) * b(i, j);
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b)
{
    const Eigen::Index br = b.rows();
    const Eigen::Index bc = b.cols();
    Matrix out(a.rows() * br, a.cols() * bc);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < br; ++k)
                for (Eigen::Index l = 0; l < bc; ++l)
                    out(i * br + k, j * bc + l) = a(i, j) * b(k, l);
    return out;
}

Vector kron_square(const Vector& x)
{
    const Eigen::Index n = x.size();
    Vector out(n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out(i * n + j) = x(i) * x(j);
    return out;
}

Vector kron_cube(const Vector& x)
{
    const Eigen::Index n = x.size();
    Vector out(n * n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                out((i * n + j) * n + k) = x(i) * x(j) * x(k);
    return out;
}

Vector quadratic_apply(const Matrix& g, const Vector& x)
{
    const Vector xx = kron_square(x);
    Vector out(g.rows());
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        double acc = 0.0;
        for (Eigen::Index c = 0; c < xx.size(); ++c)
            acc += g(r, c) * xx(c);
        out(r) = acc;
    }
    return out;
}

Vector cubic_apply(const Matrix& r, const Vector& x)
{
    const Vector xxx = kron_cube(x);
    Vector out(r.rows());
    for (Eigen::Index row = 0; row < r.rows(); ++row) {
        double acc = 0.0;
        for (Eigen::Index c = 0; c < xxx.size(); ++c)
            acc += r(row, c) * xxx(c);
        out(row) = acc;
    }
    return out;
}

} // namespace kronlift::kernels::serial
