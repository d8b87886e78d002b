#pragma once

#include <Eigen/Dense>
#include <filesystem>

namespace csvel {

/// Reads an 8-bit binary PGM (P5) or a PNG (gray/RGB, 8 or 16 bit) as
/// luminance in [0, 1]. Color inputs are converted with Rec. 601 weights
/// 0.299/0.587/0.114; alpha is dropped.
Eigen::MatrixXd load_image_gray(const std::filesystem::path& path);

/// 8-bit binary PGM. Values are clamped to [0, 1] before quantization.
void save_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& img);

/// 8-bit grayscale PNG.
void save_png_gray(const std::filesystem::path& path, const Eigen::MatrixXd& img);

}  // namespace csvel
