#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace fsvd {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using NodeId = std::int64_t;

}  // namespace fsvd
