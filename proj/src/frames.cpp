#include "csvel/frames.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "csvel/image_io.hpp"
#include "csvel/rng.hpp"

namespace csvel {

AvailabilityMask AvailabilityMask::random(std::size_t n_total, double keep_ratio,
                                          std::uint64_t seed) {
  if (n_total == 0) throw std::invalid_argument("mask: n_total must be positive");
  if (!(keep_ratio > 0.0) || keep_ratio > 1.0)
    throw std::invalid_argument("mask: keep_ratio must be in (0, 1]");
  const auto k = static_cast<std::size_t>(
      std::llround(keep_ratio * static_cast<double>(n_total)));
  if (k == 0)
    throw std::invalid_argument("mask: keep_ratio keeps zero frames");
  AvailabilityMask m;
  m.n_total = n_total;
  m.keep_ratio = keep_ratio;
  m.seed = seed;
  m.kept = rng::sample_without_replacement(n_total, std::min(k, n_total), seed);
  return m;
}

AvailabilityMask AvailabilityMask::full(std::size_t n_total) {
  AvailabilityMask m;
  m.n_total = n_total;
  m.keep_ratio = 1.0;
  m.kept.resize(n_total);
  for (std::size_t i = 0; i < n_total; ++i) m.kept[i] = i;
  return m;
}

AvailabilityMask AvailabilityMask::from_indices(std::size_t n_total,
                                                std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!indices.empty() && indices.back() >= n_total)
    throw std::invalid_argument("mask: index " + std::to_string(indices.back()) +
                                " out of range [0, " + std::to_string(n_total) + ")");
  AvailabilityMask m;
  m.n_total = n_total;
  m.kept = std::move(indices);
  m.keep_ratio = n_total ? static_cast<double>(m.kept.size()) /
                               static_cast<double>(n_total)
                         : 1.0;
  return m;
}

AvailabilityMask AvailabilityMask::load(const std::filesystem::path& path,
                                        std::size_t n_total) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("mask: cannot open " + path.string());
  std::vector<std::size_t> idx;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    idx.push_back(static_cast<std::size_t>(std::stoull(line)));
  }
  return from_indices(n_total, std::move(idx));
}

void AvailabilityMask::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("mask: cannot write " + path.string());
  for (auto i : kept) out << i << "\n";
}

void FrameSequence::validate() const {
  if (available.size() != frames.size())
    throw std::invalid_argument("sequence: frames/available size mismatch");
  if (available.size() > n_total)
    throw std::invalid_argument("sequence: more frames than grid slots");
  for (std::size_t i = 0; i < available.size(); ++i) {
    if (available[i] >= n_total)
      throw std::invalid_argument("sequence: index out of grid");
    if (i > 0 && available[i] <= available[i - 1])
      throw std::invalid_argument("sequence: available not strictly increasing");
    if (frames[i].rows() != height || frames[i].cols() != width)
      throw std::invalid_argument("sequence: inconsistent frame dimensions");
  }
}

namespace {

bool has_frame_extension(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" || ext == ".png";
}

// Numeric sort key: the last run of digits in the stem, e.g. frame_12.png
// sorts by 12. Non-numeric names fall back to lexicographic order.
std::pair<long long, std::string> numeric_key(const std::filesystem::path& p) {
  const std::string stem = p.stem().string();
  long long value = -1;
  std::size_t end = stem.size();
  while (end > 0 && !std::isdigit(static_cast<unsigned char>(stem[end - 1]))) --end;
  std::size_t begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1])))
    --begin;
  if (begin < end) value = std::stoll(stem.substr(begin, end - begin));
  return {value, stem};
}

std::vector<std::filesystem::path> list_frame_files(
    const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error("ingest: no such directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && has_frame_extension(e.path()))
      files.push_back(e.path());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return numeric_key(a) < numeric_key(b); });
  return files;
}

}  // namespace

FrameSequence load_sequence(const std::filesystem::path& dir,
                            const std::vector<std::size_t>& indices) {
  const auto files = list_frame_files(dir);
  if (files.empty())
    throw std::runtime_error("ingest: no frame files in " + dir.string());

  FrameSequence seq;
  seq.n_total = files.size();
  for (auto i : indices) {
    if (i >= files.size())
      throw std::runtime_error("ingest: mask index " + std::to_string(i) +
                               " >= file count " + std::to_string(files.size()));
  }
  std::vector<std::size_t> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  for (auto i : sorted) {
    Eigen::MatrixXd img = load_image_gray(files[i]);
    if (seq.frames.empty()) {
      seq.height = static_cast<int>(img.rows());
      seq.width = static_cast<int>(img.cols());
    } else if (img.rows() != seq.height || img.cols() != seq.width) {
      throw std::runtime_error("ingest: inconsistent dimensions in " +
                               files[i].filename().string());
    }
    seq.frames.push_back(std::move(img));
    seq.available.push_back(i);
  }
  seq.validate();
  return seq;
}

FrameSequence load_sequence(const std::filesystem::path& dir,
                            const AvailabilityMask& mask) {
  const auto files = list_frame_files(dir);
  if (mask.n_total != files.size())
    throw std::runtime_error("ingest: mask covers " + std::to_string(mask.n_total) +
                             " frames but directory has " +
                             std::to_string(files.size()));
  return load_sequence(dir, mask.kept);
}

FrameSequence load_sequence(const std::filesystem::path& dir) {
  const auto files = list_frame_files(dir);
  return load_sequence(dir, AvailabilityMask::full(files.size()).kept);
}

FrameSequence apply_mask(const FrameSequence& seq, const AvailabilityMask& mask) {
  if (mask.n_total != seq.n_total)
    throw std::invalid_argument("mask: grid length mismatch");
  FrameSequence out;
  out.n_total = seq.n_total;
  out.width = seq.width;
  out.height = seq.height;
  std::size_t pos = 0;
  for (auto want : mask.kept) {
    while (pos < seq.available.size() && seq.available[pos] < want) ++pos;
    if (pos == seq.available.size() || seq.available[pos] != want)
      throw std::invalid_argument("mask: frame " + std::to_string(want) +
                                  " not present in sequence");
    out.frames.push_back(seq.frames[pos]);
    out.available.push_back(want);
  }
  out.validate();
  return out;
}

}  // namespace csvel
