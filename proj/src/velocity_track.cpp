#include "csvel/velocity_track.hpp"

#include <cmath>

namespace csvel {

double VelocityTrack::total_variation() const {
  double tv = 0.0;
  bool have_prev = false;
  double prev = 0.0;
  for (const auto& v : velocity) {
    if (!v) continue;
    if (have_prev) tv += std::abs(*v - prev);
    prev = *v;
    have_prev = true;
  }
  return tv;
}

std::size_t VelocityTrack::defined_count() const {
  std::size_t n = 0;
  for (const auto& v : velocity)
    if (v) ++n;
  return n;
}

double VelocityTrack::gap_fraction() const {
  if (velocity.empty()) return 1.0;
  return 1.0 - static_cast<double>(defined_count()) /
                   static_cast<double>(velocity.size());
}

}  // namespace csvel
