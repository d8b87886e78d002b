#include "csvel/projection.hpp"

#include <fstream>
#include <stdexcept>

namespace csvel {

ProjectionSignal project(const FrameSequence& seq, const ProjectionOptions& opts) {
  const std::size_t m = seq.available_count();
  if (m < 2)
    throw std::invalid_argument("projection: need at least 2 available frames");

  ProjectionSignal out;
  out.width = seq.width;
  out.values.resize(seq.width, static_cast<Eigen::Index>(m - 1));
  out.pair_times.resize(m - 1);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    // Column sums accumulate in double over the H x W difference image.
    out.values.col(static_cast<Eigen::Index>(k)) =
        (seq.frame(k + 1) - seq.frame(k)).colwise().sum().transpose();
    if (opts.normalize_gap_width) {
      const double gap =
          static_cast<double>(seq.available[k + 1] - seq.available[k]);
      out.values.col(static_cast<Eigen::Index>(k)) /= gap;
    }
    out.pair_times[k] = seq.available[k];
  }
  return out;
}

void dump_projection_csv(const ProjectionSignal& proj,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("projection: cannot write " + path.string());
  out << "x";
  for (auto t : proj.pair_times) out << ",t" << t;
  out << "\n";
  for (Eigen::Index x = 0; x < proj.values.rows(); ++x) {
    out << x;
    for (Eigen::Index d = 0; d < proj.values.cols(); ++d)
      out << "," << proj.values(x, d);
    out << "\n";
  }
}

}  // namespace csvel
