#include "csvel/cs_recon.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "csvel/dft.hpp"

namespace csvel {

void SolverConfig::validate() const {
  if (!(residual_tol_rel > 0.0))
    throw std::invalid_argument("solver: residual_tol must be positive");
  if (k_max < 1) throw std::invalid_argument("solver: k_max must be >= 1");
  if (max_iterations < 1)
    throw std::invalid_argument("solver: max_iterations must be >= 1");
}

int min_measurements(int np) { return np / 4; }

MeasurementSet form_measurements(const ComplexSignal& signal,
                                 const WindowSpec& window, std::size_t center) {
  window.validate();
  const int np = window.length;
  const Eigen::VectorXd w = window.weights();

  MeasurementSet ms;
  ms.center = center;
  std::vector<std::complex<double>> vals;
  const long long n_total = static_cast<long long>(signal.n_total);
  for (int i = 0; i < np; ++i) {
    const int tau = i - np / 2;
    const long long t = static_cast<long long>(center) + tau;
    if (t < 0 || t >= n_total) continue;
    if (!signal.is_available(static_cast<std::size_t>(t))) continue;
    ms.local_indices.push_back(tau);
    vals.push_back(w(i) * signal.values(static_cast<Eigen::Index>(t)));
  }
  ms.values.resize(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i)
    ms.values(static_cast<Eigen::Index>(i)) = vals[i];
  return ms;
}

SensingModel build_model(const MeasurementSet& ms, int np) {
  if (ms.count() == 0)
    throw std::invalid_argument("sensing model: no measurements");
  SensingModel model;
  model.np = np;
  model.local_indices = ms.local_indices;
  model.theta.resize(ms.count(), np);
  const double step = 2.0 * M_PI / np;
  for (Eigen::Index r = 0; r < ms.count(); ++r) {
    const int tau = ms.local_indices[static_cast<std::size_t>(r)];
    const int slot = tau >= 0 ? tau : tau + np;
    for (int k = 0; k < np; ++k)
      model.theta(r, k) =
          std::polar(1.0 / np, step * ((static_cast<long long>(k) * slot) % np));
  }
  return model;
}

namespace {

// M_w == Np: the constraint set is a single point, the plain DFT of the
// windowed segment.
SolveResult solve_fully_determined(const SensingModel& model,
                                   const Eigen::VectorXcd& m) {
  const int np = model.np;
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(np);
  for (Eigen::Index r = 0; r < m.size(); ++r) {
    const int tau = model.local_indices[static_cast<std::size_t>(r)];
    d(tau >= 0 ? tau : tau + np) = m(r);
  }
  SolveResult res;
  res.coeffs = dft_matrix(np) * d;
  res.residual_norm = (model.theta * res.coeffs - m).norm();
  res.iterations = 0;
  res.converged = true;
  res.ok = true;
  return res;
}

SolveResult solve_omp(const SensingModel& model, const Eigen::VectorXcd& m,
                      const SolverConfig& cfg) {
  const int np = model.np;
  const Eigen::Index mw = m.size();
  const double tol = cfg.residual_tol_rel * m.norm();
  const int k_max = std::min<int>(cfg.k_max, static_cast<int>(mw));

  SolveResult res;
  res.coeffs = Eigen::VectorXcd::Zero(np);
  Eigen::VectorXcd residual = m;
  std::vector<int> support;
  std::vector<char> used(np, 0);
  Eigen::VectorXcd fit;

  const Eigen::VectorXd col_norms = model.theta.colwise().norm();
  while (static_cast<int>(support.size()) < k_max && residual.norm() > tol) {
    // Most correlated unused atom.
    const Eigen::VectorXd corr =
        (model.theta.adjoint() * residual).cwiseAbs().cwiseQuotient(
            col_norms.cwiseMax(1e-300));
    int best = -1;
    double best_c = 0.0;
    for (int k = 0; k < np; ++k) {
      if (used[k]) continue;
      if (best < 0 || corr(k) > best_c) {
        best = k;
        best_c = corr(k);
      }
    }
    if (best < 0 || best_c <= 1e-300) break;
    used[best] = 1;
    support.push_back(best);

    // Least-squares refit over the active set.
    Eigen::MatrixXcd sub(mw, support.size());
    for (std::size_t i = 0; i < support.size(); ++i)
      sub.col(static_cast<Eigen::Index>(i)) = model.theta.col(support[i]);
    fit = sub.colPivHouseholderQr().solve(m);
    residual = m - sub * fit;
    ++res.iterations;
  }
  for (std::size_t i = 0; i < support.size(); ++i)
    res.coeffs(support[i]) = fit(static_cast<Eigen::Index>(i));
  res.residual_norm = residual.norm();
  res.converged = res.residual_norm <= tol;
  res.ok = true;
  return res;
}

// l1 minimization s.t. theta * F = m, by ADMM. Rows of theta are mutually
// orthogonal with squared norm 1/Np, so the affine projection is
// v - Np * theta^H (theta v - m). A debiasing pass then searches for the
// sparsest support whose least-squares fit stays feasible without
// increasing the l1 objective.
SolveResult solve_basis_pursuit(const SensingModel& model,
                                const Eigen::VectorXcd& m,
                                const SolverConfig& cfg) {
  const int np = model.np;
  const Eigen::Index mw = m.size();
  const double m_norm = m.norm();
  const double tol = cfg.residual_tol_rel * m_norm;

  SolveResult res;
  if (m_norm == 0.0) {
    res.coeffs = Eigen::VectorXcd::Zero(np);
    res.converged = res.ok = true;
    return res;
  }

  const auto project = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return v - static_cast<double>(np) * (model.theta.adjoint() * (model.theta * v - m));
  };

  Eigen::VectorXcd x = project(Eigen::VectorXcd::Zero(np));
  const double scale = x.cwiseAbs().maxCoeff();
  const double rho = 10.0 / scale;
  const double alpha = 1.7;  // over-relaxation
  const double eps_primal = 1e-12 * scale * std::sqrt(static_cast<double>(np));
  const double eps_dual = 1e-10 * scale * std::sqrt(static_cast<double>(np)) * rho;

  Eigen::VectorXcd z = x;
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(np);
  bool converged = false;
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    x = project(z - u);
    const Eigen::VectorXcd xr = alpha * x + (1.0 - alpha) * z;
    const Eigen::VectorXcd v = xr + u;
    Eigen::VectorXcd z_new(np);
    for (int k = 0; k < np; ++k) {
      const double mag = std::abs(v(k));
      z_new(k) = mag > 1.0 / rho ? v(k) * (1.0 - 1.0 / (rho * mag))
                                 : std::complex<double>(0.0, 0.0);
    }
    const double primal = (x - z_new).norm();
    const double dual = rho * (z_new - z).norm();
    z = z_new;
    u += xr - z;
    if (primal <= eps_primal && dual <= eps_dual) {
      converged = true;
      break;
    }
  }

  res.coeffs = x;  // always feasible
  res.residual_norm = (model.theta * x - m).norm();
  res.iterations = it;
  res.converged = converged;
  res.ok = true;

  // Debias: smallest support (by |z| ranking) that stays feasible with an
  // l1 norm no worse than the iterate's.
  const double l1_x = x.cwiseAbs().sum();
  std::vector<int> order(np);
  for (int k = 0; k < np; ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(z(a)) > std::abs(z(b)); });
  for (Eigen::Index sz = 1; sz <= mw; ++sz) {
    if (std::abs(z(order[static_cast<std::size_t>(sz - 1)])) <= 1e-12 * scale) break;
    Eigen::MatrixXcd sub(mw, sz);
    for (Eigen::Index i = 0; i < sz; ++i)
      sub.col(i) = model.theta.col(order[static_cast<std::size_t>(i)]);
    const Eigen::VectorXcd fit = sub.colPivHouseholderQr().solve(m);
    const double resid = (sub * fit - m).norm();
    Eigen::VectorXcd cand = Eigen::VectorXcd::Zero(np);
    for (Eigen::Index i = 0; i < sz; ++i)
      cand(order[static_cast<std::size_t>(i)]) = fit(i);
    if (resid <= std::max(tol, 1e-9 * m_norm) &&
        cand.cwiseAbs().sum() <= l1_x * (1.0 + 1e-9)) {
      res.coeffs = cand;
      res.residual_norm = resid;
      res.converged = true;
      return res;
    }
  }

  if (!converged) {
    res.ok = false;
    res.message = "basis pursuit: no convergence within max_iterations";
  }
  return res;
}

}  // namespace

SolveResult solve_sparse(const SensingModel& model, const Eigen::VectorXcd& m,
                         const SolverConfig& cfg) {
  cfg.validate();
  if (m.size() != model.theta.rows())
    throw std::invalid_argument("solver: measurement/model size mismatch");
  if (m.size() == 0) {
    SolveResult res;
    res.ok = false;
    res.message = "no measurements";
    return res;
  }
  if (m.size() == model.np) return solve_fully_determined(model, m);
  if (cfg.algorithm == SparseAlgorithm::omp) return solve_omp(model, m, cfg);
  return solve_basis_pursuit(model, m, cfg);
}

CsStftResult cs_stft(const ComplexSignal& signal, const WindowSpec& window,
                     const SolverConfig& cfg,
                     const std::vector<std::size_t>& centers) {
  window.validate();
  cfg.validate();
  const int np = window.length;
  for (auto c : centers)
    if (c >= signal.n_total)
      throw std::invalid_argument("cs-stft: center outside grid");

  CsStftResult out;
  out.map.np = np;
  out.map.time_stamps = centers;
  out.map.time_valid.assign(centers.size(), 0);
  out.map.data = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(centers.size()), np);

  std::atomic<int> failures{0};
  const auto solve_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const MeasurementSet ms = form_measurements(signal, window, centers[i]);
      if (ms.count() < min_measurements(np)) continue;  // gap column
      const SensingModel model = build_model(ms, np);
      const SolveResult res = solve_sparse(model, ms.values, cfg);
      if (!res.ok) {
        failures.fetch_add(1, std::memory_order_relaxed);
        continue;
      }
      out.map.data.row(static_cast<Eigen::Index>(i)) =
          to_signed_bins(res.coeffs).transpose();
      out.map.time_valid[i] = 1;
    }
  };

  // Independent per-center solves; rows are disjoint, order fixed by index.
  const std::size_t n = centers.size();
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(hw, std::max<std::size_t>(1, n / 8));
  if (n_threads <= 1) {
    solve_range(0, n);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (n + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) workers.emplace_back(solve_range, begin, end);
    }
    for (auto& w : workers) w.join();
  }

  out.solver_failures = failures.load();
  return out;
}

}  // namespace csvel
