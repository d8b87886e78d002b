#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace csvel {

/// Which frames of a length-n_total grid survive subsampling.
struct AvailabilityMask {
  std::size_t n_total = 0;
  std::vector<std::size_t> kept;  // sorted, unique, each < n_total
  double keep_ratio = 1.0;
  std::uint64_t seed = 0;

  /// |kept| = round(keep_ratio * n_total), drawn uniformly without
  /// replacement. Deterministic for fixed (n_total, keep_ratio, seed).
  static AvailabilityMask random(std::size_t n_total, double keep_ratio,
                                 std::uint64_t seed);
  static AvailabilityMask full(std::size_t n_total);
  static AvailabilityMask from_indices(std::size_t n_total,
                                       std::vector<std::size_t> indices);

  /// Text format: one kept index per line, ascending.
  static AvailabilityMask load(const std::filesystem::path& path,
                               std::size_t n_total);
  void save(const std::filesystem::path& path) const;
};

/// Ordered grayscale frames on a full [0, n_total) time grid, of which only
/// the `available` subset is present. frames[i] is the frame at grid index
/// available[i]; every frame is H x W with luminance in [0, 1].
struct FrameSequence {
  std::vector<Eigen::MatrixXd> frames;
  std::size_t n_total = 0;
  std::vector<std::size_t> available;
  int width = 0;
  int height = 0;

  std::size_t available_count() const { return available.size(); }
  const Eigen::MatrixXd& frame(std::size_t i) const { return frames[i]; }

  /// Throws std::invalid_argument if an invariant is broken.
  void validate() const;
};

/// Load numerically-sorted PGM/PNG frames from a directory, retaining only
/// the frames selected by `mask`. n_total equals the file count.
FrameSequence load_sequence(const std::filesystem::path& dir,
                            const AvailabilityMask& mask);
FrameSequence load_sequence(const std::filesystem::path& dir,
                            const std::vector<std::size_t>& indices);
FrameSequence load_sequence(const std::filesystem::path& dir);

/// Restrict `seq` to the frames selected by `mask`. Every kept index must
/// already be available in `seq`.
FrameSequence apply_mask(const FrameSequence& seq, const AvailabilityMask& mask);

}  // namespace csvel
