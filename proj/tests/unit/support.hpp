#pragma once

#include <Eigen/Dense>

namespace galmech::test {

template <typename A, typename B>
double max_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace galmech::test
