// Test-side reference implementations, kept independent of the library's
// computation paths: literal formula evaluations and exhaustive searches.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <set>
#include <vector>

#include "csvel/frames.hpp"
#include "csvel/mu_propagation.hpp"
#include "csvel/window.hpp"

namespace oracle {

using Complex = std::complex<double>;

/// Direct evaluation of the windowed transform at one signed bin:
/// sum_tau w(tau) s(center+tau) exp(-i 2 pi k tau / np), out-of-grid -> 0.
inline Complex stft_direct(const csvel::ComplexSignal& sig,
                           const Eigen::VectorXd& w, int np,
                           std::size_t center, int k) {
  Complex acc(0.0, 0.0);
  for (int i = 0; i < np; ++i) {
    const int tau = i - np / 2;
    const long long t = static_cast<long long>(center) + tau;
    if (t < 0 || t >= static_cast<long long>(sig.n_total)) continue;
    acc += w(i) * sig.values(static_cast<Eigen::Index>(t)) *
           std::exp(Complex(0.0, -2.0 * M_PI * k * tau / np));
  }
  return acc;
}

/// Literal triple-loop s-method over a signed-bin spectrum row.
inline Eigen::VectorXd s_method_direct(const Eigen::VectorXcd& row, int L) {
  const int np = static_cast<int>(row.size());
  Eigen::VectorXd out(np);
  for (int j = 0; j < np; ++j) {
    Complex acc(0.0, 0.0);
    for (int i = -L; i <= L; ++i) {
      const int a = j + i, b = j - i;
      if (a < 0 || a >= np || b < 0 || b >= np) continue;
      acc += row(a) * std::conj(row(b));
    }
    out(j) = acc.real();
  }
  return out;
}

/// Per-pixel recomputation of the difference-image column sums.
inline Eigen::MatrixXd projection_direct(const csvel::FrameSequence& seq) {
  const std::size_t m = seq.available_count();
  Eigen::MatrixXd out =
      Eigen::MatrixXd::Zero(seq.width, static_cast<Eigen::Index>(m - 1));
  for (std::size_t k = 0; k + 1 < m; ++k)
    for (int x = 0; x < seq.width; ++x) {
      double acc = 0.0;
      for (int y = 0; y < seq.height; ++y)
        acc += seq.frame(k + 1)(y, x) - seq.frame(k)(y, x);
      out(x, static_cast<Eigen::Index>(k)) = acc;
    }
  return out;
}

/// Term-by-term mu-propagation of one projection column.
inline Complex propagate_direct(const Eigen::VectorXd& column, double mu) {
  Complex acc(0.0, 0.0);
  for (Eigen::Index x = 0; x < column.size(); ++x)
    acc += column(x) * std::exp(Complex(0.0, mu * static_cast<double>(x)));
  return acc;
}

/// Sensing rows rebuilt from first principles for the exhaustive search.
inline Eigen::MatrixXcd sensing_rows(const std::vector<int>& taus, int np) {
  Eigen::MatrixXcd a(taus.size(), np);
  for (std::size_t r = 0; r < taus.size(); ++r) {
    const int slot = taus[r] >= 0 ? taus[r] : taus[r] + np;
    for (int k = 0; k < np; ++k)
      a(static_cast<Eigen::Index>(r), k) =
          std::exp(Complex(0.0, 2.0 * M_PI * k * slot / np)) / static_cast<double>(np);
  }
  return a;
}

struct SparseOracleResult {
  std::set<int> support;
  double residual = 0.0;
};

/// Exhaustive least-squares over all supports of size 1..k_max; the
/// smallest size reaching `tol` wins (parsimony), otherwise the global
/// best. Coefficients below 1e-8 of the largest do not count as support.
inline SparseOracleResult exhaustive_sparse(const Eigen::MatrixXcd& a,
                                            const Eigen::VectorXcd& m, int k_max,
                                            double tol) {
  const int np = static_cast<int>(a.cols());

  const auto evaluate = [&](const std::vector<int>& sup) {
    Eigen::MatrixXcd sub(a.rows(), static_cast<Eigen::Index>(sup.size()));
    for (std::size_t i = 0; i < sup.size(); ++i)
      sub.col(static_cast<Eigen::Index>(i)) = a.col(sup[i]);
    const Eigen::VectorXcd fit = sub.colPivHouseholderQr().solve(m);
    SparseOracleResult r;
    r.residual = (sub * fit - m).norm();
    const double peak = fit.cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i < sup.size(); ++i)
      if (std::abs(fit(static_cast<Eigen::Index>(i))) > 1e-8 * peak)
        r.support.insert(sup[i]);
    return r;
  };

  SparseOracleResult global;
  double global_res = std::numeric_limits<double>::infinity();
  std::vector<int> sel;
  for (int size = 1; size <= k_max; ++size) {
    SparseOracleResult size_best;
    double size_res = std::numeric_limits<double>::infinity();
    const std::function<void(int, int)> recurse = [&](int start, int left) {
      if (left == 0) {
        SparseOracleResult r = evaluate(sel);
        if (r.residual < size_res) {
          size_res = r.residual;
          size_best = std::move(r);
        }
        return;
      }
      for (int k = start; k <= np - left; ++k) {
        sel.push_back(k);
        recurse(k + 1, left - 1);
        sel.pop_back();
      }
    };
    recurse(0, size);
    if (size_res <= tol) return size_best;
    if (size_res < global_res) {
      global_res = size_res;
      global = size_best;
    }
  }
  return global;
}

}  // namespace oracle
