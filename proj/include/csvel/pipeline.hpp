#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csvel/cs_recon.hpp"
#include "csvel/frames.hpp"
#include "csvel/projection.hpp"
#include "csvel/synthetic.hpp"
#include "csvel/tfa.hpp"
#include "csvel/velocity_track.hpp"

namespace csvel {

enum class Method { initial_sm, cs_spec, cs_sm };

std::string method_name(Method m);
Method method_from_string(const std::string& s);

/// Where the frames come from: a directory of image files (with an optional
/// mask file), or a synthetic scene. keep_ratio/mask_seed, when set, apply
/// an additional random mask after loading or generation.
struct InputSpec {
  std::optional<std::string> frames_dir;
  std::optional<std::string> mask_file;
  std::optional<std::string> synthetic_spec_path;
  std::optional<SyntheticSceneSpec> synthetic;
  std::optional<double> keep_ratio;
  std::uint64_t mask_seed = 0;
};

struct PipelineConfig {
  InputSpec input;
  WindowSpec window{WindowSpec::Kind::hanning, 64};
  std::vector<double> mus;  // single value or sweep; default sweep if empty
  SMethodParams sm{3};
  ProjectionOptions projection;
  SolverConfig solver;
  std::vector<Method> methods{Method::initial_sm, Method::cs_spec,
                              Method::cs_sm};
  std::string output_csv;
  std::optional<std::string> output_plot;
  double velocity_scale = 1.0;

  void validate() const;

  static PipelineConfig from_json_text(const std::string& text);
  static PipelineConfig from_json_file(const std::string& path);
};

/// Stage-tagged failure: what() starts with "<stage>: ".
class PipelineError : public std::runtime_error {
 public:
  PipelineError(const std::string& stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct PipelineResult {
  std::vector<VelocityTrack> tracks;  // one per (method, mu), config order
  std::optional<std::vector<double>> ground_truth;  // synthetic inputs only
  int solver_failures = 0;
};

/// ingest -> project -> propagate(mu) -> per-method transform -> ridge read.
/// Per-column solver failures degrade to gaps; stage failures throw
/// PipelineError.
PipelineResult run_pipeline(const PipelineConfig& cfg);

struct MuSelection {
  double mu = 0.0;
  VelocityTrack track;
};

/// Picks the candidate with the smallest total variation; ties go to the
/// smaller mu. Tracks with more than half their entries missing are
/// disqualified. Throws std::runtime_error when nothing remains.
MuSelection select_mu(const std::vector<VelocityTrack>& tracks);

/// CSV schema: header "frame,method,mu,velocity_px_per_frame", one row per
/// (frame, method, mu), empty velocity field for gaps, LF line endings,
/// 6 significant digits. Velocities are multiplied by velocity_scale.
void emit_csv(const std::vector<VelocityTrack>& tracks,
              const std::filesystem::path& path, double velocity_scale = 1.0);

/// Self-contained SVG, one polyline per track (gaps break the line).
void emit_plot(const std::vector<VelocityTrack>& tracks,
               const std::filesystem::path& path, double velocity_scale = 1.0);

}  // namespace csvel
