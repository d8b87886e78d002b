#include "csvel/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace csvel {

namespace {

// Skips whitespace and '#' comments between PGM header tokens.
int next_pgm_token(std::istream& in) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      in.unget();
      return c;
    }
    c = in.get();
  }
  return EOF;
}

long read_pgm_int(std::istream& in) {
  if (next_pgm_token(in) == EOF)
    throw std::runtime_error("pgm: truncated header");
  long v = 0;
  if (!(in >> v)) throw std::runtime_error("pgm: malformed header");
  return v;
}

Eigen::MatrixXd load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("pgm: cannot open " + path.string());
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5')
    throw std::runtime_error("pgm: not a binary P5 file: " + path.string());
  const long w = read_pgm_int(in);
  const long h = read_pgm_int(in);
  const long maxval = read_pgm_int(in);
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
    throw std::runtime_error("pgm: unsupported header in " + path.string());
  in.get();  // single whitespace after maxval
  std::vector<unsigned char> buf(static_cast<std::size_t>(w) * h);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size()))
    throw std::runtime_error("pgm: truncated pixel data in " + path.string());
  Eigen::MatrixXd img(h, w);
  const double scale = 1.0 / static_cast<double>(maxval);
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x)
      img(y, x) = buf[static_cast<std::size_t>(y) * w + x] * scale;
  return img;
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngReader() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

Eigen::MatrixXd load_png(const std::filesystem::path& path) {
  PngReader r;
  r.fp = std::fopen(path.c_str(), "rb");
  if (!r.fp) throw std::runtime_error("png: cannot open " + path.string());
  r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!r.png) throw std::runtime_error("png: init failed");
  r.info = png_create_info_struct(r.png);
  if (!r.info) throw std::runtime_error("png: init failed");
  if (setjmp(png_jmpbuf(r.png)))
    throw std::runtime_error("png: decode error in " + path.string());

  png_init_io(r.png, r.fp);
  png_read_info(r.png, r.info);

  // Normalize to 8-bit RGB or gray without alpha.
  png_byte color = png_get_color_type(r.png, r.info);
  png_byte depth = png_get_bit_depth(r.png, r.info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(r.png);
  if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
  if (depth == 16) png_set_strip_16(r.png);
  png_set_strip_alpha(r.png);
  png_read_update_info(r.png, r.info);

  const png_uint_32 w = png_get_image_width(r.png, r.info);
  const png_uint_32 h = png_get_image_height(r.png, r.info);
  const int channels = png_get_channels(r.png, r.info);
  if (channels != 1 && channels != 3)
    throw std::runtime_error("png: unsupported channel count in " + path.string());

  std::vector<png_byte> row(png_get_rowbytes(r.png, r.info));
  Eigen::MatrixXd img(h, w);
  for (png_uint_32 y = 0; y < h; ++y) {
    png_read_row(r.png, row.data(), nullptr);
    for (png_uint_32 x = 0; x < w; ++x) {
      double v;
      if (channels == 1) {
        v = row[x] / 255.0;
      } else {
        const double rr = row[3 * x + 0], gg = row[3 * x + 1], bb = row[3 * x + 2];
        v = (0.299 * rr + 0.587 * gg + 0.114 * bb) / 255.0;
      }
      img(y, x) = v;
    }
  }
  return img;
}

unsigned char quantize(double v) {
  if (v < 0.0) v = 0.0;
  if (v > 1.0) v = 1.0;
  return static_cast<unsigned char>(std::lround(v * 255.0));
}

}  // namespace

Eigen::MatrixXd load_image_gray(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".pgm") return load_pgm(path);
  if (ext == ".png") return load_png(path);
  throw std::runtime_error("image: unsupported format: " + path.string());
}

void save_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("pgm: cannot write " + path.string());
  out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
  for (Eigen::Index y = 0; y < img.rows(); ++y)
    for (Eigen::Index x = 0; x < img.cols(); ++x)
      out.put(static_cast<char>(quantize(img(y, x))));
}

void save_png_gray(const std::filesystem::path& path, const Eigen::MatrixXd& img) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("png: cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    std::fclose(fp);
    throw std::runtime_error("png: encode error for " + path.string());
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.cols()),
               static_cast<png_uint_32>(img.rows()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_byte> row(img.cols());
  for (Eigen::Index y = 0; y < img.rows(); ++y) {
    for (Eigen::Index x = 0; x < img.cols(); ++x) row[x] = quantize(img(y, x));
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace csvel
