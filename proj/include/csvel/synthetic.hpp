#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csvel/frames.hpp"

namespace csvel {

struct VelocityProfile {
  enum class Kind { constant, linear_accel };
  Kind kind = Kind::constant;
  double vx_start = 0.0;
  double vx_end = 0.0;  // ignored for constant

  static VelocityProfile constant(double vx) {
    return {Kind::constant, vx, vx};
  }
  static VelocityProfile linear_accel(double vx_start, double vx_end) {
    return {Kind::linear_accel, vx_start, vx_end};
  }

  /// Velocity at frame t, in pixels/frame.
  double at(std::size_t t, std::size_t n_frames) const;
  /// Continuous displacement integral from 0 to t.
  double displacement(std::size_t t, std::size_t n_frames) const;
};

/// A rectangle gliding horizontally over a uniform background.
struct SyntheticSceneSpec {
  int width = 0;
  int height = 0;
  std::size_t n_frames = 0;
  int object_w = 0;
  int object_h = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  VelocityProfile velocity_profile;
  double object_intensity = 1.0;
  double background_intensity = 0.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  static SyntheticSceneSpec from_json_text(const std::string& text);
  static SyntheticSceneSpec from_json_file(const std::string& path);
};

struct SyntheticResult {
  FrameSequence sequence;                  // fully available
  std::vector<double> true_velocity;       // pixels/frame, pre-rounding
};

/// Renders the scene with nearest-pixel object placement and clipped
/// gaussian pixel noise. Rejects specs whose object would leave the frame.
SyntheticResult generate_synthetic(const SyntheticSceneSpec& spec);

}  // namespace csvel
