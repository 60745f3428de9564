#include "imq/solver.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "imq/expansion.hpp"

namespace imq {

namespace {

double nrm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void check_finite(const std::vector<double>& v, int iter) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::runtime_error("iterative_solve: non-finite value at iteration " +
                               std::to_string(iter));
    }
  }
}

}  // namespace

SolveReport iterative_solve(const FastOperator& op, const std::vector<double>& f, double tol,
                            int max_iter, int restart) {
  const std::size_t n = op.size();
  if (f.size() != n) throw std::invalid_argument("iterative_solve: rhs size mismatch");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("iterative_solve: tol must be positive");
  if (max_iter < 0) throw std::invalid_argument("iterative_solve: max_iter must be >= 0");
  if (restart < 1) throw std::invalid_argument("iterative_solve: restart must be >= 1");
  check_finite(f, 0);

  SolveReport rep;
  rep.c.assign(n, 0.0);

  const double bnorm = nrm2(f);
  if (bnorm == 0.0) {
    rep.converged = true;
    rep.cycle_residuals.push_back(0.0);
    return rep;
  }

  std::vector<double> x(n, 0.0);
  std::vector<double> r = f;  // residual at x = 0
  std::vector<double> w(n);
  int total = 0;

  double rel = 1.0;
  while (true) {
    // True residual at the current iterate; declares convergence and is the
    // value reported at each restart boundary.
    if (total > 0) {
      w = fast_matvec(op, x);
      r = f;
      axpy(-1.0, w, r);
    }
    rel = nrm2(r) / bnorm;
    rep.cycle_residuals.push_back(rel);
    if (!std::isfinite(rel)) {
      throw std::runtime_error("iterative_solve: non-finite value at iteration " +
                               std::to_string(total));
    }
    if (rel <= tol || total >= max_iter) break;

    const int m = std::min(restart, max_iter - total);
    const double beta = rel * bnorm;

    std::vector<std::vector<double>> v;
    v.reserve(static_cast<std::size_t>(m) + 1);
    v.push_back(r);
    for (double& e : v[0]) e /= beta;

    // Column-major Hessenberg kept in rotated (upper triangular) form.
    std::vector<std::vector<double>> hcol(static_cast<std::size_t>(m));
    std::vector<double> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m));
    std::vector<double> g(static_cast<std::size_t>(m) + 1, 0.0);
    g[0] = beta;

    int k = 0;  // completed inner steps
    for (int j = 0; j < m; ++j) {
      w = fast_matvec(op, v[static_cast<std::size_t>(j)]);
      ++total;
      check_finite(w, total);

      auto& h = hcol[static_cast<std::size_t>(j)];
      h.assign(static_cast<std::size_t>(j) + 2, 0.0);
      for (int i = 0; i <= j; ++i) {
        const double hij = dot(w, v[static_cast<std::size_t>(i)]);
        h[static_cast<std::size_t>(i)] = hij;
        axpy(-hij, v[static_cast<std::size_t>(i)], w);
      }
      const double hh = nrm2(w);
      h[static_cast<std::size_t>(j) + 1] = hh;

      for (int i = 0; i < j; ++i) {
        const double t0 = cs[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)] +
                          sn[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i) + 1];
        h[static_cast<std::size_t>(i) + 1] =
            -sn[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)] +
            cs[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i) + 1];
        h[static_cast<std::size_t>(i)] = t0;
      }
      const double denom = std::hypot(h[static_cast<std::size_t>(j)], hh);
      if (denom == 0.0) {
        // Fully annihilated column contributes nothing; drop it and close the cycle.
        k = j;
        break;
      }
      cs[static_cast<std::size_t>(j)] = h[static_cast<std::size_t>(j)] / denom;
      sn[static_cast<std::size_t>(j)] = hh / denom;
      h[static_cast<std::size_t>(j)] = denom;
      h[static_cast<std::size_t>(j) + 1] = 0.0;
      g[static_cast<std::size_t>(j) + 1] = -sn[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)];
      g[static_cast<std::size_t>(j)] = cs[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)];

      k = j + 1;
      const double rel_est = std::fabs(g[static_cast<std::size_t>(j) + 1]) / bnorm;
      if (rel_est <= tol || hh == 0.0) break;  // estimated convergence or happy breakdown
      if (j + 1 < m) {
        v.push_back(w);
        for (double& e : v.back()) e /= hh;
      }
    }

    if (k == 0) break;  // no progress possible

    std::vector<double> y(static_cast<std::size_t>(k), 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[static_cast<std::size_t>(i)];
      for (int l = i + 1; l < k; ++l)
        s -= hcol[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(l)];
      y[static_cast<std::size_t>(i)] = s / hcol[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < k; ++i) axpy(y[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)], x);
  }

  rep.c = x;
  rep.iterations = total;
  rep.final_relative_residual = rel;
  rep.converged = rel <= tol;
  return rep;
}

double evaluate_interpolant(const Interpolant& interp, Point2 x) {
  if (interp.centers.size() != interp.c.size())
    throw std::invalid_argument("evaluate_interpolant: size mismatch");
  const double t2 = interp.params.t * interp.params.t;
  double s = 0.0;
  for (std::size_t j = 0; j < interp.centers.size(); ++j) {
    const double dx = x.x1 - interp.centers[j].x1;
    const double dy = x.x2 - interp.centers[j].x2;
    s += interp.c[j] / std::sqrt(t2 + dx * dx + dy * dy);
  }
  return s;
}

}  // namespace imq
