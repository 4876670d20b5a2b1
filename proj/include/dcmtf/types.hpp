#pragma once

#include <Eigen/Dense>

namespace dcmtf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace dcmtf
