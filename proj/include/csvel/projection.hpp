#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <vector>

#include "csvel/frames.hpp"

namespace csvel {

/// Column-sum profiles of consecutive-available frame differences.
/// values(x, d) = sum_y (frame(T_{d+1}) - frame(T_d))(y, x); each difference
/// is stamped at the earlier grid index T_d. Differences over availability
/// gaps are used as-is (no gap-width normalization).
struct ProjectionSignal {
  Eigen::MatrixXd values;          // W x n_pairs
  std::vector<std::size_t> pair_times;  // earlier index of each pair
  int width = 0;

  std::size_t pair_count() const { return pair_times.size(); }
};

struct ProjectionOptions {
  /// Divide each difference by its availability gap T_{d+1} - T_d.
  /// Off by default; raw differences feed the reconstruction.
  bool normalize_gap_width = false;
};

/// Requires at least two available frames.
ProjectionSignal project(const FrameSequence& seq, const ProjectionOptions& opts = {});

/// Debug dump, rows = x, columns = pair index.
void dump_projection_csv(const ProjectionSignal& proj,
                         const std::filesystem::path& path);

}  // namespace csvel
