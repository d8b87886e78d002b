#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "csvel/projection.hpp"
#include "csvel/synthetic.hpp"
#include "oracle_utils.hpp"

using namespace csvel;

namespace {

FrameSequence from_frames(std::vector<Eigen::MatrixXd> frames) {
  FrameSequence seq;
  seq.n_total = frames.size();
  seq.height = static_cast<int>(frames[0].rows());
  seq.width = static_cast<int>(frames[0].cols());
  for (std::size_t t = 0; t < frames.size(); ++t) seq.available.push_back(t);
  seq.frames = std::move(frames);
  return seq;
}

}  // namespace

TEST_CASE("static scene projects to zero") {
  Eigen::MatrixXd f = Eigen::MatrixXd::Constant(8, 8, 0.4);
  f(3, 5) = 0.9;
  const auto proj = project(from_frames({f, f, f, f}));
  CHECK(proj.pair_count() == 3);
  CHECK(proj.values.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("single-pixel move gives a minus/plus impulse pair") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(8, 8);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(8, 8);
  a(2, 3) = 1.0;
  b(2, 4) = 1.0;
  const auto proj = project(from_frames({a, b}));
  REQUIRE(proj.pair_count() == 1);
  CHECK(proj.pair_times[0] == 0);
  for (int x = 0; x < 8; ++x) {
    const double expect = x == 3 ? -1.0 : (x == 4 ? 1.0 : 0.0);
    CHECK(proj.values(x, 0) == doctest::Approx(expect).epsilon(1e-15));
  }
}

TEST_CASE("projection matches the per-pixel oracle and stays on the edges") {
  SyntheticSceneSpec s;
  s.width = 128;
  s.height = 24;
  s.n_frames = 20;
  s.object_w = 10;
  s.object_h = 8;
  s.x0 = 6;
  s.y0 = 8;
  s.velocity_profile = VelocityProfile::constant(3.0);
  s.object_intensity = 0.9;
  s.background_intensity = 0.1;
  const auto seq = generate_synthetic(s).sequence;
  const auto proj = project(seq);
  const auto direct = oracle::projection_direct(seq);
  CHECK((proj.values - direct).cwiseAbs().maxCoeff() <= 1e-12);

  for (std::size_t d = 0; d + 1 < 20; ++d) {
    // support confined to the vacated and newly covered columns
    const long x_old = std::lround(6 + 3.0 * d);
    for (int x = 0; x < 128; ++x) {
      const bool trailing = x >= x_old && x < x_old + 3;
      const bool leading = x >= x_old + 10 && x < x_old + 13;
      if (!trailing && !leading)
        CHECK(proj.values(x, static_cast<Eigen::Index>(d)) == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("projection differences consecutive available frames and stamps the earlier index") {
  Eigen::MatrixXd f0 = Eigen::MatrixXd::Zero(4, 6);
  Eigen::MatrixXd f3 = Eigen::MatrixXd::Zero(4, 6);
  Eigen::MatrixXd f5 = Eigen::MatrixXd::Zero(4, 6);
  f0(1, 0) = 1.0;
  f3(1, 2) = 1.0;
  f5(1, 4) = 1.0;
  FrameSequence seq;
  seq.n_total = 6;
  seq.width = 6;
  seq.height = 4;
  seq.frames = {f0, f3, f5};
  seq.available = {0, 3, 5};
  const auto proj = project(seq);
  REQUIRE(proj.pair_count() == 2);
  CHECK(proj.pair_times == std::vector<std::size_t>{0, 3});
  // gap width does not rescale the difference
  CHECK(proj.values(0, 0) == doctest::Approx(-1.0));
  CHECK(proj.values(2, 0) == doctest::Approx(1.0));
  CHECK(proj.values(2, 1) == doctest::Approx(-1.0));
  CHECK(proj.values(4, 1) == doctest::Approx(1.0));
}

TEST_CASE("projection is linear in luminance") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(6, 10).cwiseAbs() * 0.4;
  Eigen::MatrixXd b = Eigen::MatrixXd::Random(6, 10).cwiseAbs() * 0.4;
  const auto p1 = project(from_frames({a, b}));
  const auto p2 = project(from_frames({2.0 * a, 2.0 * b}));
  CHECK((p2.values - 2.0 * p1.values).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("a time-constant background image cancels out") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(6, 10).cwiseAbs() * 0.3;
  Eigen::MatrixXd b = Eigen::MatrixXd::Random(6, 10).cwiseAbs() * 0.3;
  Eigen::MatrixXd bg = Eigen::MatrixXd::Random(6, 10).cwiseAbs() * 0.5;
  const auto p1 = project(from_frames({a, b}));
  const auto p2 = project(from_frames({a + bg, b + bg}));
  CHECK((p2.values - p1.values).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("difference columns sum to zero for a contained object") {
  SyntheticSceneSpec s;
  s.width = 96;
  s.height = 16;
  s.n_frames = 12;
  s.object_w = 8;
  s.object_h = 6;
  s.x0 = 4;
  s.y0 = 5;
  s.velocity_profile = VelocityProfile::linear_accel(1.0, 4.0);
  const auto proj = project(generate_synthetic(s).sequence);
  for (Eigen::Index d = 0; d < proj.values.cols(); ++d)
    CHECK(std::abs(proj.values.col(d).sum()) <= 1e-12);
}

TEST_CASE("optional gap-width normalization divides by the stride") {
  Eigen::MatrixXd f0 = Eigen::MatrixXd::Zero(4, 6);
  Eigen::MatrixXd f3 = Eigen::MatrixXd::Zero(4, 6);
  f0(1, 0) = 1.0;
  f3(1, 2) = 1.0;
  FrameSequence seq;
  seq.n_total = 4;
  seq.width = 6;
  seq.height = 4;
  seq.frames = {f0, f3};
  seq.available = {0, 3};
  const auto raw = project(seq);
  ProjectionOptions opts;
  opts.normalize_gap_width = true;
  const auto norm = project(seq, opts);
  CHECK((norm.values * 3.0 - raw.values).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("fewer than two frames cannot be differenced") {
  Eigen::MatrixXd one = Eigen::MatrixXd::Zero(4, 4);
  CHECK_THROWS(project(from_frames({one})));
}

TEST_CASE("csv dump writes one row per x") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 5);
  Eigen::MatrixXd b = Eigen::MatrixXd::Ones(4, 5);
  const auto proj = project(from_frames({a, b}));
  const auto path = std::filesystem::temp_directory_path() / "csvel_proj.csv";
  dump_projection_csv(proj, path);
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 6);  // header + 5 x rows
}
