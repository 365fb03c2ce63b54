#pragma once

#include <Eigen/Dense>

namespace kronlift {

// Dense row-major storage; entries are expected to be finite.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

inline bool all_finite(const Matrix& m) { return m.allFinite(); }
inline bool all_finite(const Vector& v) { return v.allFinite(); }

} // namespace kronlift
