#include "kronlift/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kronlift::kernels {

int max_threads() noexcept
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Matrix hadamard(const Matrix& a, const Matrix& b)
{
    const long rows = static_cast<long>(a.rows());
    const long cols = static_cast<long>(a.cols());
    Matrix out(rows, cols);
    const double* pa = a.data();
    const double* pb = b.data();
    double* po = out.data();
    const long total = rows * cols;
#pragma omp parallel for schedule(static) if (total > 4096)
    for (long e = 0; e < total; ++e)
        po[e] = pa[e] * pb[e];
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b)
{
    const long ar = static_cast<long>(a.rows());
    const long ac = static_cast<long>(a.cols());
    const long br = static_cast<long>(b.rows());
    const long bc = static_cast<long>(b.cols());
    Matrix out(ar * br, ac * bc);
    // One output row per iteration: row (i, k) holds a(i, :) ⊗ b(k, :).
#pragma omp parallel for schedule(static) if (ar * br * ac * bc > 4096)
    for (long row = 0; row < ar * br; ++row) {
        const long i = row / br;
        const long k = row % br;
        for (long j = 0; j < ac; ++j) {
            const double aij = a(i, j);
            for (long l = 0; l < bc; ++l)
                out(row, j * bc + l) = aij * b(k, l);
        }
    }
    return out;
}

Vector kron_square(const Vector& x)
{
    const long n = static_cast<long>(x.size());
    Vector out(n * n);
#pragma omp parallel for schedule(static) if (n > 64)
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            out(i * n + j) = x(i) * x(j);
    return out;
}

Vector kron_cube(const Vector& x)
{
    const long n = static_cast<long>(x.size());
    Vector out(n * n * n);
#pragma omp parallel for schedule(static) if (n > 16)
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            for (long k = 0; k < n; ++k)
                out((i * n + j) * n + k) = x(i) * x(j) * x(k);
    return out;
}

// Row sums keep the serial summation order, so results match the serial
// kernels bit for bit regardless of thread count.
Vector quadratic_apply(const Matrix& g, const Vector& x)
{
    const long n = static_cast<long>(x.size());
    const long rows = static_cast<long>(g.rows());
    Vector out(rows);
#pragma omp parallel for schedule(static) if (rows * n * n > 8192)
    for (long r = 0; r < rows; ++r) {
        const double* gr = g.data() + r * n * n;
        double acc = 0.0;
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                acc += gr[i * n + j] * (x(i) * x(j));
        out(r) = acc;
    }
    return out;
}

Vector cubic_apply(const Matrix& r, const Vector& x)
{
    const long n = static_cast<long>(x.size());
    const long rows = static_cast<long>(r.rows());
    Vector out(rows);
#pragma omp parallel for schedule(static) if (rows * n * n * n > 8192)
    for (long row = 0; row < rows; ++row) {
        const double* rr = r.data() + row * n * n * n;
        double acc = 0.0;
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                for (long k = 0; k < n; ++k)
                    acc += rr[(i * n + j) * n + k] * (x(i) * x(j) * x(k));
        out(row) = acc;
    }
    return out;
}

} // namespace kronlift::kernels
