#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "csvel/mu_propagation.hpp"
#include "csvel/tfa.hpp"
#include "csvel/window.hpp"

namespace csvel {

/// The windowed samples actually present around one center: values are
/// w(tau) * s(center + tau) for each available local index tau.
struct MeasurementSet {
  std::size_t center = 0;
  std::vector<int> local_indices;  // tau in [-Np/2, Np/2 - 1], sorted
  Eigen::VectorXcd values;

  Eigen::Index count() const { return values.size(); }
};

/// Row-selected inverse-DFT synthesis operator: theta(r, k) =
/// (1/Np) * exp(i * 2*pi * k * (tau_r mod Np) / Np). Rows are mutually
/// orthogonal with squared norm 1/Np.
struct SensingModel {
  Eigen::MatrixXcd theta;          // M_w x Np
  std::vector<int> local_indices;  // the tau behind each row
  int np = 0;
};

enum class SparseAlgorithm { basis_pursuit, omp };

struct SolverConfig {
  SparseAlgorithm algorithm = SparseAlgorithm::omp;
  /// l2 feasibility tolerance, relative to ||m||.
  double residual_tol_rel = 1e-6;
  int k_max = 4;            // omp stop, clamped to M_w per window
  int max_iterations = 20000;

  void validate() const;
};

struct SolveResult {
  Eigen::VectorXcd coeffs;  // Np spectral coefficients, DFT bin order
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;   // residual tolerance reached
  bool ok = false;          // a usable estimate was produced
  std::string message;
};

/// Collects the available windowed samples around `center`. Out-of-grid
/// positions are not measurements; an empty window is legal here.
MeasurementSet form_measurements(const ComplexSignal& signal,
                                 const WindowSpec& window, std::size_t center);

/// Requires at least one measurement.
SensingModel build_model(const MeasurementSet& ms, int np);

/// Sparse spectrum recovery: basis pursuit (l1 minimization under the
/// residual bound, via ADMM with a feasibility-guarded debiasing pass) or
/// orthogonal matching pursuit. A fully determined window (M_w == Np) short-
/// circuits to the exact DFT, the unique feasible point.
SolveResult solve_sparse(const SensingModel& model, const Eigen::VectorXcd& m,
                         const SolverConfig& cfg);

/// Windows with fewer than this many samples are reported as gaps instead
/// of unreliable solves.
int min_measurements(int np);

struct CsStftResult {
  ComplexTFMap map;
  int solver_failures = 0;  // columns degraded to gaps by solver errors
};

/// Per-center sparse reconstruction of the windowed spectrum. Centers whose
/// window is too empty, or whose solve fails, become invalid rows. On fully
/// available windows the result equals stft() exactly.
CsStftResult cs_stft(const ComplexSignal& signal, const WindowSpec& window,
                     const SolverConfig& cfg,
                     const std::vector<std::size_t>& centers);

}  // namespace csvel
