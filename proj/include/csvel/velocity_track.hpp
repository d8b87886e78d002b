#pragma once

#include <optional>
#include <string>
#include <vector>

namespace csvel {

/// Per-frame velocity estimates in pixels/frame. An empty optional marks a
/// frame where no estimate exists (a gap), which is distinct from zero.
struct VelocityTrack {
  std::vector<std::size_t> frames;                // strictly increasing
  std::vector<std::optional<double>> velocity;    // parallel to frames
  std::string method;
  double mu = 0.0;

  /// Total variation over consecutive defined entries (gaps skipped).
  double total_variation() const;
  double gap_fraction() const;
  std::size_t defined_count() const;
};

}  // namespace csvel
