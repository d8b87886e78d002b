#pragma once

#include <Eigen/Dense>
#include <string>

namespace csvel {

struct WindowSpec {
  enum class Kind { hanning, rectangular };
  Kind kind = Kind::hanning;
  int length = 64;  // Np, even, >= 4

  void validate() const;

  /// Weights over tau in [-Np/2, Np/2 - 1]; index i corresponds to
  /// tau = i - Np/2. Hanning: 0.5 * (1 - cos(2*pi*i / (Np - 1))).
  Eigen::VectorXd weights() const;

  static WindowSpec::Kind kind_from_string(const std::string& s);
  static std::string kind_to_string(Kind k);
};

}  // namespace csvel
