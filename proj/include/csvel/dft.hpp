#pragma once

#include <Eigen/Dense>

namespace csvel {

/// Forward DFT matrix, W(k, n) = exp(-i * 2*pi * k * n / n_points).
/// Analysis carries no normalization; synthesis is adjoint / n_points.
Eigen::MatrixXcd dft_matrix(int n_points);

/// fftshift: reorders DFT-bin-ordered coefficients [0, N) into the signed
/// arrangement [-N/2, N/2).
Eigen::VectorXcd to_signed_bins(const Eigen::VectorXcd& dft_ordered);

}  // namespace csvel
