#pragma once

// Data-parallel inner kernels. The default namespace holds the OpenMP
// versions; kernels::serial holds the straightforward loops they are tested
// and benchmarked against. Callers are responsible for shape checks.

#include "kronlift/types.hpp"

namespace kronlift::kernels {

Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// x ⊗ x (length n²) and x ⊗ x ⊗ x (length n³).
Vector kron_square(const Vector& x);
Vector kron_cube(const Vector& x);

/// G·(x⊗x) for G of shape rows×n², without materialising x⊗x per row.
Vector quadratic_apply(const Matrix& g, const Vector& x);
/// R·(x⊗x⊗x) for R of shape rows×n³.
Vector cubic_apply(const Matrix& r, const Vector& x);

namespace serial {

Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron_square(const Vector& x);
Vector kron_cube(const Vector& x);
Vector quadratic_apply(const Matrix& g, const Vector& x);
Vector cubic_apply(const Matrix& r, const Vector& x);

} // namespace serial

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads() noexcept;

} // namespace kronlift::kernels
