#include "csvel/window.hpp"

#include <cmath>
#include <stdexcept>

namespace csvel {

void WindowSpec::validate() const {
  if (length < 4) throw std::invalid_argument("window: length must be >= 4");
  if (length % 2 != 0) throw std::invalid_argument("window: length must be even");
}

Eigen::VectorXd WindowSpec::weights() const {
  validate();
  Eigen::VectorXd w(length);
  if (kind == Kind::rectangular) {
    w.setOnes();
  } else {
    for (int i = 0; i < length; ++i)
      w(i) = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (length - 1)));
  }
  return w;
}

WindowSpec::Kind WindowSpec::kind_from_string(const std::string& s) {
  if (s == "hanning") return Kind::hanning;
  if (s == "rectangular") return Kind::rectangular;
  throw std::invalid_argument("window: unknown kind '" + s + "'");
}

std::string WindowSpec::kind_to_string(Kind k) {
  return k == Kind::hanning ? "hanning" : "rectangular";
}

}  // namespace csvel
