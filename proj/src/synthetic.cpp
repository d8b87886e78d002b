#include "csvel/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "csvel/rng.hpp"

namespace csvel {

double VelocityProfile::at(std::size_t t, std::size_t n_frames) const {
  if (kind == Kind::constant || n_frames < 2) return vx_start;
  return vx_start + (vx_end - vx_start) * static_cast<double>(t) /
                        static_cast<double>(n_frames - 1);
}

double VelocityProfile::displacement(std::size_t t, std::size_t n_frames) const {
  const double td = static_cast<double>(t);
  if (kind == Kind::constant || n_frames < 2) return vx_start * td;
  return vx_start * td +
         (vx_end - vx_start) * td * td / (2.0 * static_cast<double>(n_frames - 1));
}

SyntheticResult generate_synthetic(const SyntheticSceneSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0 || spec.n_frames == 0)
    throw std::invalid_argument("synthetic: empty scene");
  if (spec.object_w <= 0 || spec.object_h <= 0)
    throw std::invalid_argument("synthetic: empty object");
  if (spec.noise_sigma < 0)
    throw std::invalid_argument("synthetic: negative noise_sigma");

  const long y_top = std::lround(spec.y0);
  if (y_top < 0 || y_top + spec.object_h > spec.height)
    throw std::invalid_argument("synthetic: object outside frame vertically");

  // Containment check before any rendering.
  std::vector<long> x_left(spec.n_frames);
  for (std::size_t t = 0; t < spec.n_frames; ++t) {
    const double x = spec.x0 + spec.velocity_profile.displacement(t, spec.n_frames);
    x_left[t] = std::lround(x);
    if (x_left[t] < 0 || x_left[t] + spec.object_w > spec.width) {
      std::ostringstream msg;
      msg << "synthetic: object exits frame at t=" << t << " (x=" << x
          << ", object width " << spec.object_w << ", frame width "
          << spec.width << ")";
      throw std::invalid_argument(msg.str());
    }
  }

  rng::GaussianGen noise(spec.seed);
  SyntheticResult out;
  out.sequence.n_total = spec.n_frames;
  out.sequence.width = spec.width;
  out.sequence.height = spec.height;
  out.true_velocity.resize(spec.n_frames);

  for (std::size_t t = 0; t < spec.n_frames; ++t) {
    Eigen::MatrixXd f =
        Eigen::MatrixXd::Constant(spec.height, spec.width, spec.background_intensity);
    f.block(y_top, x_left[t], spec.object_h, spec.object_w)
        .setConstant(spec.object_intensity);
    if (spec.noise_sigma > 0) {
      for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
          double v = f(y, x) + spec.noise_sigma * noise();
          f(y, x) = std::min(1.0, std::max(0.0, v));
        }
    }
    out.sequence.frames.push_back(std::move(f));
    out.sequence.available.push_back(t);
    out.true_velocity[t] = spec.velocity_profile.at(t, spec.n_frames);
  }
  out.sequence.validate();
  return out;
}

namespace {

VelocityProfile profile_from_json(const nlohmann::json& j) {
  if (j.contains("constant"))
    return VelocityProfile::constant(j.at("constant").at("vx").get<double>());
  if (j.contains("linear_accel")) {
    const auto& p = j.at("linear_accel");
    return VelocityProfile::linear_accel(p.at("vx_start").get<double>(),
                                         p.at("vx_end").get<double>());
  }
  throw std::invalid_argument(
      "synthetic: velocity_profile must be 'constant' or 'linear_accel'");
}

}  // namespace

SyntheticSceneSpec SyntheticSceneSpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("synthetic: bad JSON: ") + e.what());
  }
  try {
    SyntheticSceneSpec s;
    s.width = j.at("width").get<int>();
    s.height = j.at("height").get<int>();
    s.n_frames = j.at("n_frames").get<std::size_t>();
    s.object_w = j.at("object_size").at(0).get<int>();
    s.object_h = j.at("object_size").at(1).get<int>();
    s.x0 = j.at("initial_position").at(0).get<double>();
    s.y0 = j.at("initial_position").at(1).get<double>();
    s.velocity_profile = profile_from_json(j.at("velocity_profile"));
    s.object_intensity = j.value("object_intensity", 1.0);
    s.background_intensity = j.value("background_intensity", 0.0);
    s.noise_sigma = j.value("noise_sigma", 0.0);
    s.seed = j.value("seed", std::uint64_t{0});
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("synthetic: bad spec: ") + e.what());
  }
}

SyntheticSceneSpec SyntheticSceneSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("synthetic: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

}  // namespace csvel
