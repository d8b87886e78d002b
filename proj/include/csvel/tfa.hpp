#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <vector>

#include "csvel/mu_propagation.hpp"
#include "csvel/velocity_track.hpp"
#include "csvel/window.hpp"

namespace csvel {

// Time-frequency maps are (n_times x Np) with bins arranged as signed
// frequencies: column j holds bin k = j - Np/2, i.e. omega_k = 2*pi*k/Np
// radians per sample. time_valid marks rows that carry an estimate at all
// (reconstruction can leave holes).

struct ComplexTFMap {
  Eigen::MatrixXcd data;               // n_times x Np
  std::vector<std::size_t> time_stamps;
  std::vector<std::uint8_t> time_valid;
  int np = 0;

  int bin_of_column(int j) const { return j - np / 2; }
  int column_of_bin(int k) const { return k + np / 2; }
};

struct RealTFMap {
  Eigen::MatrixXd data;
  std::vector<std::size_t> time_stamps;
  std::vector<std::uint8_t> time_valid;
  int np = 0;

  int bin_of_column(int j) const { return j - np / 2; }
  int column_of_bin(int k) const { return k + np / 2; }
};

struct SMethodParams {
  int half_width = 3;  // L; window on the frequency axis spans 2L+1 bins
  void validate(int np) const;
};

/// Sliding-window transform of the zero-filled signal: the row at center t
/// is the plain-forward-sum DFT of w(tau) * s(t + tau) over
/// tau in [-Np/2, Np/2 - 1]; out-of-grid samples contribute zero.
ComplexTFMap stft(const ComplexSignal& signal, const WindowSpec& window,
                  const std::vector<std::size_t>& centers);

/// Entrywise squared magnitude.
RealTFMap spectrogram(const ComplexTFMap& map);

/// sm(t, k) = sum_{i=-L..L} F(t, k+i) * conj(F(t, k-i)), terms with either
/// bin outside the signed range dropped; the (analytically zero) imaginary
/// residue is discarded.
RealTFMap s_method(const ComplexTFMap& map, const SMethodParams& params);

/// Ridge peak of `dist` over the energy of the matching `stft_map` row,
/// per time stamp. NaN where either row is invalid or the energy is zero.
std::vector<double> ridge_concentration(const RealTFMap& dist,
                                        const ComplexTFMap& stft_map);

/// Reads velocity off the per-row argmax: v(t) = 2*pi*k* / (Np * mu).
/// Ties go to the smallest |k|, negative before positive. All-zero or
/// invalid rows become gaps.
VelocityTrack extract_if(const RealTFMap& map, const MuParams& mu);

void dump_tfmap_csv(const RealTFMap& map, const std::filesystem::path& path);

}  // namespace csvel
