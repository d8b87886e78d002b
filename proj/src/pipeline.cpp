#include "csvel/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace csvel {

std::string method_name(Method m) {
  switch (m) {
    case Method::initial_sm: return "initial_sm";
    case Method::cs_spec: return "cs_spec";
    case Method::cs_sm: return "cs_sm";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "initial_sm") return Method::initial_sm;
  if (s == "cs_spec") return Method::cs_spec;
  if (s == "cs_sm") return Method::cs_sm;
  throw std::invalid_argument("config: unknown method '" + s + "'");
}

void PipelineConfig::validate() const {
  if (methods.empty())
    throw std::invalid_argument("config: at least one method required");
  window.validate();
  sm.validate(window.length);
  solver.validate();
  for (double mu : mus)
    if (!(mu > 0.0) || mu > M_PI)
      throw std::invalid_argument("config: mu values must be in (0, pi]");
  const bool has_frames = input.frames_dir.has_value();
  const bool has_synth =
      input.synthetic_spec_path.has_value() || input.synthetic.has_value();
  if (has_frames == has_synth)
    throw std::invalid_argument(
        "config: input needs exactly one of frames_dir or a synthetic spec");
  if (input.keep_ratio &&
      (!(*input.keep_ratio > 0.0) || *input.keep_ratio > 1.0))
    throw std::invalid_argument("config: keep_ratio must be in (0, 1]");
}

namespace {

struct IngestOutput {
  FrameSequence seq;
  std::optional<std::vector<double>> ground_truth;
};

IngestOutput ingest(const InputSpec& input) {
  IngestOutput out;
  if (input.frames_dir) {
    if (input.mask_file) {
      // Mask length must match the directory; load full first to count.
      FrameSequence full = load_sequence(*input.frames_dir);
      const auto mask = AvailabilityMask::load(*input.mask_file, full.n_total);
      out.seq = apply_mask(full, mask);
    } else {
      out.seq = load_sequence(*input.frames_dir);
    }
  } else {
    const SyntheticSceneSpec spec =
        input.synthetic ? *input.synthetic
                        : SyntheticSceneSpec::from_json_file(*input.synthetic_spec_path);
    SyntheticResult res = generate_synthetic(spec);
    out.seq = std::move(res.sequence);
    out.ground_truth = std::move(res.true_velocity);
  }
  if (input.keep_ratio && *input.keep_ratio < 1.0) {
    const auto mask =
        AvailabilityMask::random(out.seq.n_total, *input.keep_ratio, input.mask_seed);
    out.seq = apply_mask(out.seq, mask);
  }
  return out;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw PipelineError("config", e.what());
  }

  IngestOutput in;
  try {
    in = ingest(cfg.input);
    if (in.seq.n_total == 0 || in.seq.available.empty())
      throw std::runtime_error("empty sequence");
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError("ingest", e.what());
  }

  ProjectionSignal proj;
  try {
    proj = project(in.seq, cfg.projection);
  } catch (const std::exception& e) {
    throw PipelineError("projection", e.what());
  }

  const std::vector<double> mus = cfg.mus.empty() ? default_mu_sweep() : cfg.mus;
  std::vector<std::size_t> centers(in.seq.n_total);
  for (std::size_t t = 0; t < in.seq.n_total; ++t) centers[t] = t;

  PipelineResult result;
  result.ground_truth = in.ground_truth;

  for (double mu : mus) {
    const MuParams mu_params{mu};
    ComplexSignal sig;
    try {
      sig = propagate(proj, mu_params, in.seq.n_total);
    } catch (const std::exception& e) {
      throw PipelineError("mu-propagation", e.what());
    }

    // The CS map is shared by cs_spec and cs_sm.
    std::optional<CsStftResult> cs;
    const bool needs_cs =
        std::any_of(cfg.methods.begin(), cfg.methods.end(), [](Method m) {
          return m == Method::cs_spec || m == Method::cs_sm;
        });
    try {
      if (needs_cs) {
        cs = cs_stft(sig, cfg.window, cfg.solver, centers);
        result.solver_failures += cs->solver_failures;
      }
      for (Method method : cfg.methods) {
        RealTFMap dist;
        if (method == Method::initial_sm) {
          dist = s_method(stft(sig, cfg.window, centers), cfg.sm);
        } else if (method == Method::cs_spec) {
          dist = spectrogram(cs->map);
        } else {
          dist = s_method(cs->map, cfg.sm);
        }
        VelocityTrack track = extract_if(dist, mu_params);
        track.method = method_name(method);
        result.tracks.push_back(std::move(track));
      }
    } catch (const std::exception& e) {
      throw PipelineError("time-frequency", e.what());
    }
  }
  return result;
}

MuSelection select_mu(const std::vector<VelocityTrack>& tracks) {
  if (tracks.empty()) throw std::runtime_error("select_mu: no candidate tracks");
  for (const auto& t : tracks)
    if (t.method != tracks.front().method)
      throw std::invalid_argument("select_mu: mixed methods");

  const VelocityTrack* best = nullptr;
  double best_tv = std::numeric_limits<double>::infinity();
  for (const auto& t : tracks) {
    if (t.gap_fraction() > 0.5) continue;  // disqualified
    const double tv = t.total_variation();
    const bool wins = best == nullptr || tv < best_tv ||
                      (tv == best_tv && t.mu < best->mu);
    if (wins) {
      best = &t;
      best_tv = tv;
    }
  }
  if (!best) throw std::runtime_error("select_mu: no admissible mu");
  return {best->mu, *best};
}

namespace {

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void emit_csv(const std::vector<VelocityTrack>& tracks,
              const std::filesystem::path& path, double velocity_scale) {
  if (tracks.empty()) throw std::invalid_argument("emit: no tracks");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit: cannot write " + path.string());
  out << "frame,method,mu,velocity_px_per_frame\n";
  for (const auto& t : tracks) {
    for (std::size_t i = 0; i < t.frames.size(); ++i) {
      out << t.frames[i] << "," << t.method << "," << format_sig6(t.mu) << ",";
      if (t.velocity[i]) out << format_sig6(*t.velocity[i] * velocity_scale);
      out << "\n";
    }
  }
}

void emit_plot(const std::vector<VelocityTrack>& tracks,
               const std::filesystem::path& path, double velocity_scale) {
  if (tracks.empty()) throw std::invalid_argument("emit: no tracks");
  const int width = 880, height = 520;
  const int ml = 64, mr = 200, mt = 24, mb = 44;
  const double plot_w = width - ml - mr, plot_h = height - mt - mb;

  std::size_t frame_max = 1;
  double v_lo = std::numeric_limits<double>::infinity(), v_hi = -v_lo;
  for (const auto& t : tracks) {
    if (!t.frames.empty()) frame_max = std::max(frame_max, t.frames.back());
    for (const auto& v : t.velocity)
      if (v) {
        v_lo = std::min(v_lo, *v * velocity_scale);
        v_hi = std::max(v_hi, *v * velocity_scale);
      }
  }
  if (!std::isfinite(v_lo)) {
    v_lo = 0.0;
    v_hi = 1.0;
  }
  if (v_hi - v_lo < 1e-12) {
    v_lo -= 0.5;
    v_hi += 0.5;
  }
  const double pad = 0.05 * (v_hi - v_lo);
  v_lo -= pad;
  v_hi += pad;

  const auto sx = [&](double f) { return ml + plot_w * f / static_cast<double>(frame_max); };
  const auto sy = [&](double v) { return mt + plot_h * (1.0 - (v - v_lo) / (v_hi - v_lo)); };
  const char* palette[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad",
                           "#d35400", "#16a085", "#7f8c8d", "#2c3e50"};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit: cannot write " + path.string());
  char buf[160];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%d\" y=\"%d\" width=\"%.1f\" height=\"%.1f\" "
                "fill=\"none\" stroke=\"#333\"/>\n",
                ml, mt, plot_w, plot_h);
  out << buf;

  // Axis ticks: 5 on each axis.
  for (int i = 0; i <= 4; ++i) {
    const double f = frame_max * i / 4.0;
    const double v = v_lo + (v_hi - v_lo) * i / 4.0;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%d\" font-size=\"11\" text-anchor=\"middle\" "
                  "fill=\"#333\">%.0f</text>\n",
                  sx(f), height - mb + 16, f);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\" "
                  "fill=\"#333\">%.2f</text>\n",
                  ml - 6, sy(v) + 4, v);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%d\" font-size=\"12\" text-anchor=\"middle\" "
                "fill=\"#333\">frame</text>\n",
                ml + plot_w / 2, height - 8);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"14\" y=\"%.1f\" font-size=\"12\" text-anchor=\"middle\" "
                "fill=\"#333\" transform=\"rotate(-90 14 %.1f)\">velocity</text>\n",
                mt + plot_h / 2, mt + plot_h / 2);
  out << buf;

  for (std::size_t ti = 0; ti < tracks.size(); ++ti) {
    const auto& t = tracks[ti];
    const char* color = palette[ti % (sizeof(palette) / sizeof(palette[0]))];
    std::ostringstream d;
    bool pen_down = false;
    for (std::size_t i = 0; i < t.frames.size(); ++i) {
      if (!t.velocity[i]) {
        pen_down = false;  // gaps break the line
        continue;
      }
      std::snprintf(buf, sizeof(buf), "%c%.2f %.2f ", pen_down ? 'L' : 'M',
                    sx(static_cast<double>(t.frames[i])),
                    sy(*t.velocity[i] * velocity_scale));
      d << buf;
      pen_down = true;
    }
    out << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%.1f\" font-size=\"12\" fill=\"%s\">%s "
                  "mu=%.6g</text>\n",
                  width - mr + 12, mt + 16.0 + 18.0 * ti, color,
                  t.method.c_str(), t.mu);
    out << buf;
  }
  out << "</svg>\n";
}

namespace {

WindowSpec window_from_json(const nlohmann::json& j) {
  WindowSpec w;
  if (j.contains("kind"))
    w.kind = WindowSpec::kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("np")) w.length = j.at("np").get<int>();
  return w;
}

SolverConfig solver_from_json(const nlohmann::json& j) {
  SolverConfig s;
  if (j.contains("algorithm")) {
    const auto a = j.at("algorithm").get<std::string>();
    if (a == "omp")
      s.algorithm = SparseAlgorithm::omp;
    else if (a == "basis_pursuit")
      s.algorithm = SparseAlgorithm::basis_pursuit;
    else
      throw std::invalid_argument("config: unknown solver algorithm '" + a + "'");
  }
  if (j.contains("residual_tol")) s.residual_tol_rel = j.at("residual_tol").get<double>();
  if (j.contains("k_max")) s.k_max = j.at("k_max").get<int>();
  if (j.contains("max_iterations")) s.max_iterations = j.at("max_iterations").get<int>();
  return s;
}

}  // namespace

PipelineConfig PipelineConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: bad JSON: ") + e.what());
  }
  try {
    PipelineConfig cfg;
    if (j.contains("input")) {
      const auto& in = j.at("input");
      if (in.contains("frames_dir"))
        cfg.input.frames_dir = in.at("frames_dir").get<std::string>();
      if (in.contains("mask_file"))
        cfg.input.mask_file = in.at("mask_file").get<std::string>();
      if (in.contains("synthetic_spec"))
        cfg.input.synthetic_spec_path = in.at("synthetic_spec").get<std::string>();
      if (in.contains("synthetic"))
        cfg.input.synthetic =
            SyntheticSceneSpec::from_json_text(in.at("synthetic").dump());
      if (in.contains("keep_ratio"))
        cfg.input.keep_ratio = in.at("keep_ratio").get<double>();
      if (in.contains("mask_seed"))
        cfg.input.mask_seed = in.at("mask_seed").get<std::uint64_t>();
    }
    if (j.contains("window")) cfg.window = window_from_json(j.at("window"));
    if (j.contains("mu")) cfg.mus = {j.at("mu").get<double>()};
    if (j.contains("mu_sweep"))
      cfg.mus = j.at("mu_sweep").get<std::vector<double>>();
    if (j.contains("sm") && j.at("sm").contains("l"))
      cfg.sm.half_width = j.at("sm").at("l").get<int>();
    if (j.contains("normalize_gap_differences"))
      cfg.projection.normalize_gap_width =
          j.at("normalize_gap_differences").get<bool>();
    if (j.contains("solver")) cfg.solver = solver_from_json(j.at("solver"));
    if (j.contains("methods")) {
      cfg.methods.clear();
      for (const auto& name : j.at("methods"))
        cfg.methods.push_back(method_from_string(name.get<std::string>()));
    }
    if (j.contains("output_csv")) cfg.output_csv = j.at("output_csv").get<std::string>();
    if (j.contains("output_plot"))
      cfg.output_plot = j.at("output_plot").get<std::string>();
    if (j.contains("velocity_scale"))
      cfg.velocity_scale = j.at("velocity_scale").get<double>();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: bad config: ") + e.what());
  }
}

PipelineConfig PipelineConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

}  // namespace csvel
