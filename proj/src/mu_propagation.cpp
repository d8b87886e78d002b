#include "csvel/mu_propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csvel {

void MuParams::validate() const {
  if (!(mu > 0.0) || mu > M_PI)
    throw std::invalid_argument("mu must be in (0, pi]");
}

std::vector<double> default_mu_sweep() { return {0.10, 0.15, 0.20, 0.25, 0.30}; }

bool ComplexSignal::is_available(std::size_t t) const {
  return std::binary_search(available.begin(), available.end(), t);
}

ComplexSignal propagate(const ProjectionSignal& proj, const MuParams& params,
                        std::size_t n_total) {
  params.validate();
  if (proj.pair_count() == 0)
    throw std::invalid_argument("mu-propagation: empty projection");
  if (!proj.pair_times.empty() && proj.pair_times.back() >= n_total)
    throw std::invalid_argument("mu-propagation: pair time beyond grid");

  Eigen::VectorXcd phasor(proj.width);
  for (int x = 0; x < proj.width; ++x)
    phasor(x) = std::polar(1.0, params.mu * x);

  ComplexSignal sig;
  sig.n_total = n_total;
  sig.values = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_total));
  sig.available = proj.pair_times;
  for (std::size_t d = 0; d < proj.pair_count(); ++d) {
    const auto col = proj.values.col(static_cast<Eigen::Index>(d));
    sig.values(static_cast<Eigen::Index>(proj.pair_times[d])) =
        (col.array().cast<std::complex<double>>() * phasor.array()).sum();
  }
  return sig;
}

}  // namespace csvel
