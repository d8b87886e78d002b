#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "csvel/cs_recon.hpp"
#include "csvel/frames.hpp"
#include "csvel/image_io.hpp"
#include "csvel/mu_propagation.hpp"
#include "csvel/pipeline.hpp"
#include "csvel/projection.hpp"
#include "csvel/synthetic.hpp"
#include "csvel/tfa.hpp"
#include "csvel/window.hpp"

namespace py = pybind11;
using namespace csvel;

namespace {

FrameSequence sequence_from_array(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& frames) {
  if (frames.ndim() != 3)
    throw std::invalid_argument("frames must be a (n, height, width) array");
  FrameSequence seq;
  seq.n_total = static_cast<std::size_t>(frames.shape(0));
  seq.height = static_cast<int>(frames.shape(1));
  seq.width = static_cast<int>(frames.shape(2));
  auto r = frames.unchecked<3>();
  for (py::ssize_t t = 0; t < frames.shape(0); ++t) {
    Eigen::MatrixXd f(seq.height, seq.width);
    for (int y = 0; y < seq.height; ++y)
      for (int x = 0; x < seq.width; ++x) f(y, x) = r(t, y, x);
    seq.frames.push_back(std::move(f));
    seq.available.push_back(static_cast<std::size_t>(t));
  }
  seq.validate();
  return seq;
}

py::array frames_to_array(const FrameSequence& seq) {
  py::array_t<double> out({seq.available_count(), static_cast<std::size_t>(seq.height),
                           static_cast<std::size_t>(seq.width)});
  auto w = out.mutable_unchecked<3>();
  for (std::size_t i = 0; i < seq.available_count(); ++i)
    for (int y = 0; y < seq.height; ++y)
      for (int x = 0; x < seq.width; ++x) w(i, y, x) = seq.frame(i)(y, x);
  return out;
}

py::list track_velocities(const VelocityTrack& t) {
  py::list out;
  for (const auto& v : t.velocity)
    out.append(v ? py::object(py::float_(*v)) : py::none());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Velocity estimation from subsampled video via sparse "
            "time-frequency reconstruction";

  py::class_<AvailabilityMask>(m, "AvailabilityMask")
      .def_static("random", &AvailabilityMask::random, py::arg("n_total"),
                  py::arg("keep_ratio"), py::arg("seed"))
      .def_static("full", &AvailabilityMask::full, py::arg("n_total"))
      .def_static("from_indices", &AvailabilityMask::from_indices,
                  py::arg("n_total"), py::arg("indices"))
      .def_static("load", &AvailabilityMask::load, py::arg("path"),
                  py::arg("n_total"))
      .def("save", &AvailabilityMask::save, py::arg("path"))
      .def_readonly("n_total", &AvailabilityMask::n_total)
      .def_readonly("kept", &AvailabilityMask::kept)
      .def_readonly("keep_ratio", &AvailabilityMask::keep_ratio);

  py::class_<FrameSequence>(m, "FrameSequence")
      .def_static("from_array", &sequence_from_array, py::arg("frames"),
                  "Build a fully available sequence from a (n, H, W) array")
      .def("to_array", &frames_to_array,
           "Available frames as a (M, H, W) array")
      .def_readonly("n_total", &FrameSequence::n_total)
      .def_readonly("available", &FrameSequence::available)
      .def_readonly("width", &FrameSequence::width)
      .def_readonly("height", &FrameSequence::height);

  py::class_<VelocityProfile>(m, "VelocityProfile")
      .def_static("constant", &VelocityProfile::constant, py::arg("vx"))
      .def_static("linear_accel", &VelocityProfile::linear_accel,
                  py::arg("vx_start"), py::arg("vx_end"));

  py::class_<SyntheticSceneSpec>(m, "SyntheticSceneSpec")
      .def(py::init([](int width, int height, std::size_t n_frames, int object_w,
                       int object_h, double x0, double y0,
                       const VelocityProfile& profile, double object_intensity,
                       double background_intensity, double noise_sigma,
                       std::uint64_t seed) {
             SyntheticSceneSpec s;
             s.width = width;
             s.height = height;
             s.n_frames = n_frames;
             s.object_w = object_w;
             s.object_h = object_h;
             s.x0 = x0;
             s.y0 = y0;
             s.velocity_profile = profile;
             s.object_intensity = object_intensity;
             s.background_intensity = background_intensity;
             s.noise_sigma = noise_sigma;
             s.seed = seed;
             return s;
           }),
           py::arg("width"), py::arg("height"), py::arg("n_frames"),
           py::arg("object_w"), py::arg("object_h"), py::arg("x0"),
           py::arg("y0"), py::arg("profile"), py::arg("object_intensity") = 1.0,
           py::arg("background_intensity") = 0.0, py::arg("noise_sigma") = 0.0,
           py::arg("seed") = 0)
      .def_static("from_json", &SyntheticSceneSpec::from_json_text,
                  py::arg("text"));

  m.def(
      "generate_synthetic",
      [](const SyntheticSceneSpec& spec) {
        SyntheticResult r = generate_synthetic(spec);
        return py::make_tuple(std::move(r.sequence), r.true_velocity);
      },
      py::arg("spec"), "Returns (sequence, true_velocity)");

  m.def("load_sequence",
        py::overload_cast<const std::filesystem::path&, const AvailabilityMask&>(
            &load_sequence),
        py::arg("dir"), py::arg("mask"));
  m.def("load_sequence",
        py::overload_cast<const std::filesystem::path&>(&load_sequence),
        py::arg("dir"));
  m.def("apply_mask", &apply_mask, py::arg("sequence"), py::arg("mask"));
  m.def("load_image_gray", &load_image_gray, py::arg("path"));
  m.def("save_pgm", &save_pgm, py::arg("path"), py::arg("image"));
  m.def("save_png_gray", &save_png_gray, py::arg("path"), py::arg("image"));

  py::class_<ProjectionSignal>(m, "ProjectionSignal")
      .def_readonly("values", &ProjectionSignal::values)
      .def_readonly("pair_times", &ProjectionSignal::pair_times)
      .def_readonly("width", &ProjectionSignal::width);
  m.def(
      "project",
      [](const FrameSequence& seq, bool normalize_gap_width) {
        ProjectionOptions opts;
        opts.normalize_gap_width = normalize_gap_width;
        return project(seq, opts);
      },
      py::arg("sequence"), py::arg("normalize_gap_width") = false);

  py::class_<ComplexSignal>(m, "ComplexSignal")
      .def_readonly("values", &ComplexSignal::values)
      .def_readonly("available", &ComplexSignal::available)
      .def_readonly("n_total", &ComplexSignal::n_total);
  m.def(
      "propagate",
      [](const ProjectionSignal& proj, double mu, std::size_t n_total) {
        return propagate(proj, MuParams{mu}, n_total);
      },
      py::arg("projection"), py::arg("mu"), py::arg("n_total"));
  m.def("default_mu_sweep", &default_mu_sweep);

  py::class_<WindowSpec>(m, "WindowSpec")
      .def(py::init([](const std::string& kind, int length) {
             return WindowSpec{WindowSpec::kind_from_string(kind), length};
           }),
           py::arg("kind") = "hanning", py::arg("length") = 64)
      .def("weights", &WindowSpec::weights)
      .def_readonly("length", &WindowSpec::length);

  py::class_<ComplexTFMap>(m, "ComplexTFMap")
      .def_readonly("data", &ComplexTFMap::data)
      .def_readonly("time_stamps", &ComplexTFMap::time_stamps)
      .def_readonly("time_valid", &ComplexTFMap::time_valid)
      .def_readonly("np", &ComplexTFMap::np);
  py::class_<RealTFMap>(m, "RealTFMap")
      .def_readonly("data", &RealTFMap::data)
      .def_readonly("time_stamps", &RealTFMap::time_stamps)
      .def_readonly("time_valid", &RealTFMap::time_valid)
      .def_readonly("np", &RealTFMap::np);

  m.def("stft", &stft, py::arg("signal"), py::arg("window"), py::arg("centers"));
  m.def("spectrogram", &spectrogram, py::arg("map"));
  m.def(
      "s_method",
      [](const ComplexTFMap& map, int L) { return s_method(map, SMethodParams{L}); },
      py::arg("map"), py::arg("L") = 3);
  m.def("ridge_concentration", &ridge_concentration, py::arg("dist"),
        py::arg("stft_map"));

  py::class_<VelocityTrack>(m, "VelocityTrack")
      .def_readonly("frames", &VelocityTrack::frames)
      .def_property_readonly("velocity", &track_velocities)
      .def_readonly("method", &VelocityTrack::method)
      .def_readonly("mu", &VelocityTrack::mu)
      .def("total_variation", &VelocityTrack::total_variation)
      .def("gap_fraction", &VelocityTrack::gap_fraction);
  m.def(
      "extract_if",
      [](const RealTFMap& map, double mu) { return extract_if(map, MuParams{mu}); },
      py::arg("map"), py::arg("mu"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init([](const std::string& algorithm, double residual_tol,
                       int k_max, int max_iterations) {
             SolverConfig cfg;
             if (algorithm == "omp")
               cfg.algorithm = SparseAlgorithm::omp;
             else if (algorithm == "basis_pursuit")
               cfg.algorithm = SparseAlgorithm::basis_pursuit;
             else
               throw std::invalid_argument("unknown algorithm: " + algorithm);
             cfg.residual_tol_rel = residual_tol;
             cfg.k_max = k_max;
             cfg.max_iterations = max_iterations;
             return cfg;
           }),
           py::arg("algorithm") = "omp", py::arg("residual_tol") = 1e-6,
           py::arg("k_max") = 4, py::arg("max_iterations") = 20000);

  m.def(
      "solve_sparse",
      [](const std::vector<int>& local_indices, int np, const Eigen::VectorXcd& m_vec,
         const SolverConfig& cfg) {
        MeasurementSet ms;
        ms.local_indices = local_indices;
        ms.values = m_vec;
        const SolveResult r = solve_sparse(build_model(ms, np), m_vec, cfg);
        return py::make_tuple(r.coeffs, r.residual_norm, r.converged, r.ok);
      },
      py::arg("local_indices"), py::arg("np"), py::arg("measurements"),
      py::arg("config"),
      "Returns (coefficients in DFT bin order, residual, converged, ok)");

  m.def(
      "cs_stft",
      [](const ComplexSignal& signal, const WindowSpec& window,
         const SolverConfig& cfg, const std::vector<std::size_t>& centers) {
        CsStftResult r = cs_stft(signal, window, cfg, centers);
        return py::make_tuple(std::move(r.map), r.solver_failures);
      },
      py::arg("signal"), py::arg("window"), py::arg("config"), py::arg("centers"),
      "Returns (map, solver_failures)");

  m.def(
      "run_pipeline",
      [](const std::string& config_json) {
        const PipelineResult r =
            run_pipeline(PipelineConfig::from_json_text(config_json));
        py::dict out;
        py::list tracks;
        for (const auto& t : r.tracks) tracks.append(t);
        out["tracks"] = tracks;
        out["solver_failures"] = r.solver_failures;
        out["ground_truth"] =
            r.ground_truth ? py::cast(*r.ground_truth) : py::none();
        return out;
      },
      py::arg("config_json"),
      "Run the full pipeline from a JSON config string");

  m.def(
      "select_mu",
      [](const std::vector<VelocityTrack>& tracks) {
        const MuSelection s = select_mu(tracks);
        return py::make_tuple(s.mu, s.track);
      },
      py::arg("tracks"), "Returns (mu, track) with the smallest total variation");

  m.def(
      "emit_csv",
      [](const std::vector<VelocityTrack>& tracks, const std::string& path,
         double velocity_scale) { emit_csv(tracks, path, velocity_scale); },
      py::arg("tracks"), py::arg("path"), py::arg("velocity_scale") = 1.0);
  m.def(
      "emit_plot",
      [](const std::vector<VelocityTrack>& tracks, const std::string& path,
         double velocity_scale) { emit_plot(tracks, path, velocity_scale); },
      py::arg("tracks"), py::arg("path"), py::arg("velocity_scale") = 1.0);
}
