#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "csvel/frames.hpp"
#include "csvel/image_io.hpp"

using namespace csvel;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("csvel_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Eigen::MatrixXd gradient_frame(int h, int w, double offset) {
  Eigen::MatrixXd f(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) f(y, x) = std::min(1.0, (x + offset) / (w + 10.0));
  return f;
}

}  // namespace

TEST_CASE("random mask counts match the rounded keep ratio") {
  CHECK(AvailabilityMask::random(121, 0.545, 1).kept.size() == 66);
  CHECK(AvailabilityMask::random(130, 0.53846, 7).kept.size() == 70);
  CHECK(AvailabilityMask::random(128, 0.545, 3).kept.size() == 70);
}

TEST_CASE("random mask is sorted, unique, in range, and deterministic") {
  const auto a = AvailabilityMask::random(200, 0.4, 42);
  const auto b = AvailabilityMask::random(200, 0.4, 42);
  CHECK(a.kept == b.kept);
  CHECK(a.kept.size() == 80);
  for (std::size_t i = 0; i < a.kept.size(); ++i) {
    CHECK(a.kept[i] < 200);
    if (i > 0) CHECK(a.kept[i] > a.kept[i - 1]);
  }
  const auto c = AvailabilityMask::random(200, 0.4, 43);
  CHECK(a.kept != c.kept);
}

TEST_CASE("full mask keeps everything") {
  const auto m = AvailabilityMask::full(10);
  CHECK(m.kept.size() == 10);
  CHECK(m.kept.front() == 0);
  CHECK(m.kept.back() == 9);
}

TEST_CASE("mask validation") {
  CHECK_THROWS(AvailabilityMask::random(0, 0.5, 1));
  CHECK_THROWS(AvailabilityMask::random(10, 0.0, 1));
  CHECK_THROWS(AvailabilityMask::random(10, 1.5, 1));
  CHECK_THROWS(AvailabilityMask::from_indices(5, {1, 7}));
}

TEST_CASE("mask file round trip") {
  const auto dir = make_temp_dir("mask_io");
  const auto m = AvailabilityMask::random(50, 0.5, 9);
  m.save(dir / "mask.txt");
  const auto back = AvailabilityMask::load(dir / "mask.txt", 50);
  CHECK(back.kept == m.kept);
}

TEST_CASE("apply_mask with full ratio is the identity") {
  FrameSequence seq;
  seq.n_total = 4;
  seq.width = 3;
  seq.height = 2;
  for (std::size_t t = 0; t < 4; ++t) {
    seq.frames.push_back(Eigen::MatrixXd::Constant(2, 3, 0.1 * t));
    seq.available.push_back(t);
  }
  const auto out = apply_mask(seq, AvailabilityMask::full(4));
  CHECK(out.available == seq.available);
  CHECK(out.frames[2] == seq.frames[2]);
}

TEST_CASE("apply_mask rejects frames that are not present") {
  FrameSequence seq;
  seq.n_total = 4;
  seq.width = 1;
  seq.height = 1;
  seq.frames = {Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Zero(1, 1)};
  seq.available = {0, 2};
  CHECK_THROWS(apply_mask(seq, AvailabilityMask::from_indices(4, {1})));
  const auto ok = apply_mask(seq, AvailabilityMask::from_indices(4, {2}));
  CHECK(ok.available == std::vector<std::size_t>{2});
}

TEST_CASE("load_sequence keeps masked frames from numerically sorted files") {
  const auto dir = make_temp_dir("load_small");
  for (int i = 0; i < 10; ++i)
    save_pgm(dir / ("frame_" + std::to_string(i) + ".pgm"),
             Eigen::MatrixXd::Constant(4, 5, i / 10.0));

  const auto full = load_sequence(dir);
  CHECK(full.n_total == 10);
  CHECK(full.available_count() == 10);
  CHECK(full.width == 5);
  CHECK(full.height == 4);

  const auto masked = load_sequence(dir, AvailabilityMask::from_indices(10, {0, 3, 7}));
  CHECK(masked.available == std::vector<std::size_t>{0, 3, 7});
  CHECK(masked.frame(1)(0, 0) == doctest::Approx(3 / 10.0).epsilon(0.01));
}

TEST_CASE("file ordering is numeric, not lexicographic") {
  const auto dir = make_temp_dir("load_order");
  save_pgm(dir / "f10.pgm", Eigen::MatrixXd::Constant(2, 2, 10 / 255.0));
  save_pgm(dir / "f2.pgm", Eigen::MatrixXd::Constant(2, 2, 2 / 255.0));
  save_pgm(dir / "f1.pgm", Eigen::MatrixXd::Constant(2, 2, 1 / 255.0));
  const auto seq = load_sequence(dir);
  CHECK(seq.frame(0)(0, 0) == doctest::Approx(1 / 255.0));
  CHECK(seq.frame(1)(0, 0) == doctest::Approx(2 / 255.0));
  CHECK(seq.frame(2)(0, 0) == doctest::Approx(10 / 255.0));
}

TEST_CASE("121 files with a 66-frame mask") {
  const auto dir = make_temp_dir("load_121");
  for (int i = 0; i < 121; ++i)
    save_pgm(dir / (std::to_string(i) + ".pgm"), Eigen::MatrixXd::Zero(2, 2));
  const auto mask = AvailabilityMask::random(121, 0.545, 11);
  const auto seq = load_sequence(dir, mask);
  CHECK(seq.n_total == 121);
  CHECK(seq.available_count() == 66);
}

TEST_CASE("load_sequence error paths") {
  CHECK_THROWS(load_sequence(fs::path("/no/such/dir/csvel")));

  const auto dir = make_temp_dir("load_bad");
  save_pgm(dir / "0.pgm", Eigen::MatrixXd::Zero(2, 2));
  save_pgm(dir / "1.pgm", Eigen::MatrixXd::Zero(3, 2));
  CHECK_THROWS_WITH_AS(load_sequence(dir), doctest::Contains("inconsistent"),
                       std::runtime_error);

  const auto dir2 = make_temp_dir("load_oob");
  save_pgm(dir2 / "0.pgm", Eigen::MatrixXd::Zero(2, 2));
  CHECK_THROWS(load_sequence(dir2, std::vector<std::size_t>{5}));
}

TEST_CASE("pgm round trip preserves luminance to quantization accuracy") {
  const auto dir = make_temp_dir("pgm_rt");
  const auto img = gradient_frame(6, 9, 2.0);
  save_pgm(dir / "g.pgm", img);
  const auto back = load_image_gray(dir / "g.pgm");
  REQUIRE(back.rows() == 6);
  REQUIRE(back.cols() == 9);
  CHECK((back - img).cwiseAbs().maxCoeff() <= 0.5 / 255.0 + 1e-12);
}

TEST_CASE("rgb png converts with Rec.601 weights") {
  const auto dir = make_temp_dir("png_rgb");
  const fs::path p = dir / "c.png";
  {
    FILE* fp = std::fopen(p.c_str(), "wb");
    REQUIRE(fp != nullptr);
    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    REQUIRE(setjmp(png_jmpbuf(png)) == 0);
    png_init_io(png, fp);
    png_set_IHDR(png, info, 3, 1, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    // pure red, pure green, pure blue
    png_byte row[9] = {255, 0, 0, 0, 255, 0, 0, 0, 255};
    png_write_row(png, row);
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
  }
  const auto img = load_image_gray(p);
  REQUIRE(img.rows() == 1);
  REQUIRE(img.cols() == 3);
  CHECK(img(0, 0) == doctest::Approx(0.299).epsilon(1e-9));
  CHECK(img(0, 1) == doctest::Approx(0.587).epsilon(1e-9));
  CHECK(img(0, 2) == doctest::Approx(0.114).epsilon(1e-9));
}

TEST_CASE("png round trip and mixed formats in one directory") {
  const auto dir = make_temp_dir("png_rt");
  const auto img = gradient_frame(5, 7, 1.0);
  save_png_gray(dir / "0.png", img);
  save_pgm(dir / "1.pgm", img);
  const auto seq = load_sequence(dir);
  CHECK(seq.available_count() == 2);
  CHECK((seq.frame(0) - seq.frame(1)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((seq.frame(0) - img).cwiseAbs().maxCoeff() <= 0.5 / 255.0 + 1e-12);
}
