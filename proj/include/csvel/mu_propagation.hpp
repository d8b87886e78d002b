#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "csvel/projection.hpp"

namespace csvel {

/// Spatial phase rate in radians per pixel. Above pi the per-pixel phase
/// aliases, so (0, pi] is enforced.
struct MuParams {
  double mu = 0.15;
  void validate() const;
};

/// Default sweep grid for mu selection: 0.10 .. 0.30, step 0.05.
std::vector<double> default_mu_sweep();

/// Complex samples on the full [0, n_total) grid; defined exactly at the
/// `available` indices, zero elsewhere.
struct ComplexSignal {
  Eigen::VectorXcd values;
  std::vector<std::size_t> available;
  std::size_t n_total = 0;

  bool is_available(std::size_t t) const;
};

/// s(T_d) = sum_x proj(x, T_d) * exp(i * mu * x), one sample per projection
/// column, stamped at that column's pair time.
ComplexSignal propagate(const ProjectionSignal& proj, const MuParams& params,
                        std::size_t n_total);

}  // namespace csvel
