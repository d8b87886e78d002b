#include "csvel/tfa.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "csvel/dft.hpp"

namespace csvel {

void SMethodParams::validate(int np) const {
  if (half_width < 0 || half_width > np / 4)
    throw std::invalid_argument("s-method: L must be in [0, Np/4]");
}

namespace {

// Windowed segment around `center`, rotated so buffer index n = tau mod Np.
// Positions outside the grid stay zero.
Eigen::VectorXcd rotated_window(const ComplexSignal& signal, int np,
                                const Eigen::VectorXd& w, std::size_t center) {
  Eigen::VectorXcd buf = Eigen::VectorXcd::Zero(np);
  const long long n_total = static_cast<long long>(signal.n_total);
  for (int i = 0; i < np; ++i) {
    const int tau = i - np / 2;
    const long long t = static_cast<long long>(center) + tau;
    if (t < 0 || t >= n_total) continue;
    const int slot = tau >= 0 ? tau : tau + np;
    buf(slot) = w(i) * signal.values(static_cast<Eigen::Index>(t));
  }
  return buf;
}

}  // namespace

ComplexTFMap stft(const ComplexSignal& signal, const WindowSpec& window,
                  const std::vector<std::size_t>& centers) {
  window.validate();
  const int np = window.length;
  for (auto c : centers)
    if (c >= signal.n_total)
      throw std::invalid_argument("stft: center outside grid");

  const Eigen::VectorXd w = window.weights();
  const Eigen::MatrixXcd dft = dft_matrix(np);

  ComplexTFMap map;
  map.np = np;
  map.time_stamps = centers;
  map.time_valid.assign(centers.size(), 1);
  map.data.resize(static_cast<Eigen::Index>(centers.size()), np);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const Eigen::VectorXcd buf = rotated_window(signal, np, w, centers[i]);
    map.data.row(static_cast<Eigen::Index>(i)) =
        to_signed_bins(dft * buf).transpose();
  }
  return map;
}

RealTFMap spectrogram(const ComplexTFMap& map) {
  RealTFMap out;
  out.np = map.np;
  out.time_stamps = map.time_stamps;
  out.time_valid = map.time_valid;
  out.data = map.data.cwiseAbs2();
  return out;
}

RealTFMap s_method(const ComplexTFMap& map, const SMethodParams& params) {
  params.validate(map.np);
  const int np = map.np;
  const int L = params.half_width;

  RealTFMap out;
  out.np = np;
  out.time_stamps = map.time_stamps;
  out.time_valid = map.time_valid;
  out.data.resize(map.data.rows(), np);
  for (Eigen::Index t = 0; t < map.data.rows(); ++t) {
    for (int j = 0; j < np; ++j) {
      // i and -i terms are conjugate pairs, so accumulate 2*Re for i >= 1.
      double acc = std::norm(map.data(t, j));
      for (int i = 1; i <= L; ++i) {
        if (j + i >= np || j - i < 0) continue;
        acc += 2.0 * (map.data(t, j + i) * std::conj(map.data(t, j - i))).real();
      }
      out.data(t, j) = acc;
    }
  }
  return out;
}

std::vector<double> ridge_concentration(const RealTFMap& dist,
                                        const ComplexTFMap& stft_map) {
  if (dist.data.rows() != stft_map.data.rows() || dist.np != stft_map.np)
    throw std::invalid_argument("concentration: map shapes differ");
  std::vector<double> out(static_cast<std::size_t>(dist.data.rows()),
                          std::numeric_limits<double>::quiet_NaN());
  for (Eigen::Index t = 0; t < dist.data.rows(); ++t) {
    if (!dist.time_valid[static_cast<std::size_t>(t)] ||
        !stft_map.time_valid[static_cast<std::size_t>(t)])
      continue;
    const double energy = stft_map.data.row(t).cwiseAbs2().sum();
    if (energy <= 0.0) continue;
    out[static_cast<std::size_t>(t)] = dist.data.row(t).maxCoeff() / energy;
  }
  return out;
}

VelocityTrack extract_if(const RealTFMap& map, const MuParams& mu) {
  mu.validate();
  const int np = map.np;

  // Bin visit order realizes the tie rule: smallest |k| first, negative
  // before positive; a strictly-greater test then keeps the first winner.
  std::vector<int> order;
  order.reserve(np);
  order.push_back(0);
  for (int a = 1; a <= np / 2; ++a) {
    order.push_back(-a);
    if (a < np / 2) order.push_back(a);
  }

  VelocityTrack track;
  track.mu = mu.mu;
  track.frames = map.time_stamps;
  track.velocity.resize(map.time_stamps.size());
  for (Eigen::Index t = 0; t < map.data.rows(); ++t) {
    auto& slot = track.velocity[static_cast<std::size_t>(t)];
    if (!map.time_valid[static_cast<std::size_t>(t)]) continue;  // gap
    if ((map.data.row(t).array() == 0.0).all()) continue;        // gap
    int best_k = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int k : order) {
      const double v = map.data(t, k + np / 2);
      if (v > best) {
        best = v;
        best_k = k;
      }
    }
    slot = 2.0 * M_PI * best_k / (np * mu.mu);
  }
  return track;
}

void dump_tfmap_csv(const RealTFMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("tfa: cannot write " + path.string());
  out << "t";
  for (int j = 0; j < map.np; ++j) out << ",k" << map.bin_of_column(j);
  out << "\n";
  for (Eigen::Index t = 0; t < map.data.rows(); ++t) {
    out << map.time_stamps[static_cast<std::size_t>(t)];
    for (int j = 0; j < map.np; ++j) out << "," << map.data(t, j);
    out << "\n";
  }
}

}  // namespace csvel
