#include "csvel/dft.hpp"

#include <cmath>
#include <complex>

namespace csvel {

Eigen::MatrixXcd dft_matrix(int n_points) {
  Eigen::MatrixXcd w(n_points, n_points);
  const double step = -2.0 * M_PI / n_points;
  for (int k = 0; k < n_points; ++k)
    for (int n = 0; n < n_points; ++n)
      w(k, n) = std::polar(1.0, step * ((static_cast<long long>(k) * n) % n_points));
  return w;
}

Eigen::VectorXcd to_signed_bins(const Eigen::VectorXcd& dft_ordered) {
  const Eigen::Index n = dft_ordered.size();
  Eigen::VectorXcd out(n);
  const Eigen::Index half = n / 2;
  out.head(n - half) = dft_ordered.tail(n - half);
  out.tail(half) = dft_ordered.head(half);
  return out;
}

}  // namespace csvel
