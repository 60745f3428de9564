#include "imqfast.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "imq/expansion.hpp"
#include "imq/fastmv.hpp"
#include "imq/partition.hpp"
#include "imq/reference.hpp"
#include "imq/solver.hpp"
#include "imq/specfun.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

struct imq_operator {
  imq::FastOperator op;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* msg) {
  g_last_error = msg;
  return code;
}

// Maps the library's exception taxonomy onto error codes; runtime_code
// replaces the generic runtime bucket for filesystem entry points.
template <typename F>
int guard(F&& fn, int runtime_code = IMQ_ERR_INTERNAL) {
  try {
    return fn();
  } catch (const imq::singular_error& e) {
    return fail(IMQ_ERR_SINGULAR, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(IMQ_ERR_INVALID_ARG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(IMQ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(runtime_code, e.what());
  }
}

std::vector<imq::Point2> to_points(const double* xy, size_t n) {
  std::vector<imq::Point2> pts(n);
  for (size_t i = 0; i < n; ++i) pts[i] = {xy[2 * i], xy[2 * i + 1]};
  return pts;
}

struct CheckSink {
  imq_verify_callback cb;
  void* ud;
  int fails = 0;
  void report(const char* name, bool pass, double value) {
    if (!pass) ++fails;
    if (cb) cb(name, pass ? 1 : 0, value, ud);
  }
};

// Counts, for every ordered point pair of a small instance, how many
// far-list block pairs plus near-list block pairs serve it; the scheme is
// correct only if each pair is served exactly once.
int exact_cover_deviation(const std::vector<imq::Point2>& pts, int L) {
  imq::BlockTree tree = imq::build_tree(pts, imq::bounding_square(pts), L);
  const size_t n = pts.size();
  std::vector<int> count(n * n, 0);
  for (int l = 1; l <= L; ++l) {
    const auto& lev = tree.levels[static_cast<size_t>(l) - 1];
    const int nb = lev.grid * lev.grid;
    for (int p = 0; p < nb; ++p)
      for (int q : lev.slist[static_cast<size_t>(p)])
        for (int i : lev.buckets[static_cast<size_t>(p)])
          for (int j : lev.buckets[static_cast<size_t>(q)])
            ++count[static_cast<size_t>(i) * n + static_cast<size_t>(j)];
  }
  const auto& fin = tree.levels[static_cast<size_t>(L) - 1];
  for (size_t p = 0; p < tree.near_lists.size(); ++p)
    for (int q : tree.near_lists[p])
      for (int i : fin.buckets[p])
        for (int j : fin.buckets[static_cast<size_t>(q)])
          ++count[static_cast<size_t>(i) * n + static_cast<size_t>(j)];
  int dev = 0;
  for (int c : count) dev = std::max(dev, std::abs(c - 1));
  return dev;
}

}  // namespace

extern "C" {

const char* imq_last_error(void) { return g_last_error.c_str(); }

int imq_operator_create(const double* xy, size_t n, double t, int m, int levels,
                        imq_operator** out) {
  if (!xy || !out || n == 0)
    return fail(IMQ_ERR_INVALID_ARG, "imq_operator_create: null argument or empty point set");
  *out = nullptr;
  return guard([&] {
    auto holder = std::make_unique<imq_operator>(
        imq_operator{imq::build_operator(to_points(xy, n), imq::KernelParams(t), m, levels)});
    *out = holder.release();
    return IMQ_OK;
  });
}

void imq_operator_destroy(imq_operator* op) { delete op; }

int imq_operator_size(const imq_operator* op, size_t* out) {
  if (!op || !out) return fail(IMQ_ERR_INVALID_ARG, "imq_operator_size: null argument");
  *out = static_cast<size_t>(op->op.size());
  return IMQ_OK;
}

int imq_operator_levels(const imq_operator* op, int* out) {
  if (!op || !out) return fail(IMQ_ERR_INVALID_ARG, "imq_operator_levels: null argument");
  *out = op->op.L;
  return IMQ_OK;
}

int imq_operator_apply(const imq_operator* op, const double* u, double* b_out) {
  if (!op || !u || !b_out) return fail(IMQ_ERR_INVALID_ARG, "imq_operator_apply: null argument");
  return guard([&] {
    std::vector<double> uv(u, u + op->op.size());
    std::vector<double> b = imq::fast_matvec(op->op, uv);
    std::copy(b.begin(), b.end(), b_out);
    return IMQ_OK;
  });
}

int imq_dense_matvec(const double* xy, size_t n, double t, const double* u, double* b_out) {
  if (!xy || !u || !b_out || n == 0)
    return fail(IMQ_ERR_INVALID_ARG, "imq_dense_matvec: null argument or empty point set");
  return guard([&] {
    std::vector<double> uv(u, u + n);
    std::vector<double> b = imq::dense_matvec(to_points(xy, n), imq::KernelParams(t), uv);
    std::copy(b.begin(), b.end(), b_out);
    return IMQ_OK;
  });
}

int imq_dense_solve(const double* xy, size_t n, double t, const double* f, double* c_out,
                    double* residual_out) {
  if (!xy || !f || !c_out || n == 0)
    return fail(IMQ_ERR_INVALID_ARG, "imq_dense_solve: null argument or empty point set");
  return guard([&] {
    imq::DenseMatrix A = imq::assemble_dense(to_points(xy, n), imq::KernelParams(t));
    std::vector<double> fv(f, f + n);
    imq::DenseSolveResult r = imq::dense_solve(A, fv);
    std::copy(r.c.begin(), r.c.end(), c_out);
    if (residual_out) *residual_out = r.residual;
    return IMQ_OK;
  });
}

int imq_iterative_solve(const imq_operator* op, const double* f, double tol, int max_iter,
                        int restart, double* c_out, imq_solve_stats* stats_out) {
  if (!op || !f || !c_out) return fail(IMQ_ERR_INVALID_ARG, "imq_iterative_solve: null argument");
  return guard([&] {
    std::vector<double> fv(f, f + op->op.size());
    imq::SolveReport rep = imq::iterative_solve(op->op, fv, tol, max_iter, restart);
    std::copy(rep.c.begin(), rep.c.end(), c_out);
    if (stats_out) {
      stats_out->iterations = rep.iterations;
      stats_out->final_relative_residual = rep.final_relative_residual;
      stats_out->converged = rep.converged ? 1 : 0;
    }
    return IMQ_OK;
  });
}

int imq_evaluate_interpolant(const double* centers_xy, const double* c, size_t n, double t,
                             const double* x_xy, size_t nx, double* out) {
  if (!centers_xy || !c || !x_xy || !out || n == 0)
    return fail(IMQ_ERR_INVALID_ARG, "imq_evaluate_interpolant: null argument");
  return guard([&] {
    imq::Interpolant interp{to_points(centers_xy, n), std::vector<double>(c, c + n),
                            imq::KernelParams(t)};
    for (size_t q = 0; q < nx; ++q)
      out[q] = imq::evaluate_interpolant(interp, {x_xy[2 * q], x_xy[2 * q + 1]});
    return IMQ_OK;
  });
}

int imq_green_exact(const double* x3, const double* y3, double* out) {
  if (!x3 || !y3 || !out) return fail(IMQ_ERR_INVALID_ARG, "imq_green_exact: null argument");
  return guard([&] {
    *out = imq::green_exact({x3[0], x3[1], x3[2]}, {y3[0], y3[1], y3[2]});
    return IMQ_OK;
  });
}

int imq_green_truncated(const double* x3, const double* y3, int m, double* out) {
  if (!x3 || !y3 || !out) return fail(IMQ_ERR_INVALID_ARG, "imq_green_truncated: null argument");
  return guard([&] {
    *out = imq::green_truncated({x3[0], x3[1], x3[2]}, {y3[0], y3[1], y3[2]}, m);
    return IMQ_OK;
  });
}

int imq_truncation_error_bound(double rho_major, double r, int m, double* out) {
  if (!out) return fail(IMQ_ERR_INVALID_ARG, "imq_truncation_error_bound: null argument");
  return guard([&] {
    *out = imq::truncation_error_bound(rho_major, r, m);
    return IMQ_OK;
  });
}

int imq_auto_level(size_t n, int m, int* out) {
  if (!out || n == 0 || n > (static_cast<size_t>(1) << 31))
    return fail(IMQ_ERR_INVALID_ARG, "imq_auto_level: bad argument");
  return guard([&] {
    *out = imq::auto_level(static_cast<int>(n), m);
    return IMQ_OK;
  });
}

int imq_cost_upper_bound(size_t n, int m, int levels, double* out) {
  if (!out || n == 0 || n > (static_cast<size_t>(1) << 31))
    return fail(IMQ_ERR_INVALID_ARG, "imq_cost_upper_bound: bad argument");
  return guard([&] {
    *out = imq::cost_upper_bound(static_cast<int>(n), m, levels);
    return IMQ_OK;
  });
}

int imq_halton2d(size_t n, double* xy_out) {
  if (!xy_out || n == 0 || n > (static_cast<size_t>(1) << 31))
    return fail(IMQ_ERR_INVALID_ARG, "imq_halton2d: bad argument");
  return guard([&] {
    std::vector<imq::Point2> pts = imq::halton2d(static_cast<int>(n));
    for (size_t i = 0; i < n; ++i) {
      xy_out[2 * i] = pts[i].x1;
      xy_out[2 * i + 1] = pts[i].x2;
    }
    return IMQ_OK;
  });
}

int imq_random_vector(size_t n, unsigned long long seed, double* out) {
  if (!out || n == 0 || n > (static_cast<size_t>(1) << 31))
    return fail(IMQ_ERR_INVALID_ARG, "imq_random_vector: bad argument");
  return guard([&] {
    std::vector<double> v = imq::random_vector(static_cast<int>(n), seed);
    std::copy(v.begin(), v.end(), out);
    return IMQ_OK;
  });
}

int imq_read_points(const char* path, double** xy_out, size_t* n_out) {
  if (!path || !xy_out || !n_out)
    return fail(IMQ_ERR_INVALID_ARG, "imq_read_points: null argument");
  *xy_out = nullptr;
  *n_out = 0;
  return guard(
      [&] {
        std::vector<imq::Point2> pts = imq::read_points(path);
        double* buf = static_cast<double*>(std::malloc(2 * pts.size() * sizeof(double)));
        if (!buf) throw std::bad_alloc();
        for (size_t i = 0; i < pts.size(); ++i) {
          buf[2 * i] = pts[i].x1;
          buf[2 * i + 1] = pts[i].x2;
        }
        *xy_out = buf;
        *n_out = pts.size();
        return IMQ_OK;
      },
      IMQ_ERR_IO);
}

int imq_write_points(const char* path, const double* xy, size_t n) {
  if (!path || (!xy && n > 0)) return fail(IMQ_ERR_INVALID_ARG, "imq_write_points: null argument");
  return guard(
      [&] {
        imq::write_points(path, to_points(xy, n));
        return IMQ_OK;
      },
      IMQ_ERR_IO);
}

void imq_free(void* p) { std::free(p); }

int imq_set_threads(int n) {
  if (n < 1) return fail(IMQ_ERR_INVALID_ARG, "imq_set_threads: n must be >= 1");
#ifdef _OPENMP
  omp_set_num_threads(n);
#endif
  return IMQ_OK;
}

int imq_verify(const imq_verify_config* cfg, imq_verify_callback cb, void* user_data) {
  if (!cfg || !cfg->xy || cfg->n == 0) {
    fail(IMQ_ERR_INVALID_ARG, "imq_verify: null or empty configuration");
    return -IMQ_ERR_INVALID_ARG;
  }
  try {
    std::vector<imq::Point2> pts = to_points(cfg->xy, cfg->n);
    imq::KernelParams params(cfg->t);
    imq::FastOperator op = imq::build_operator(pts, params, cfg->m, cfg->levels);
    CheckSink sink{cb, user_data};

    imq::SeparationReport sep = imq::verify_separation(op.tree, params);
    sink.report("separation_ratio", sep.valid, sep.max_ratio);

    imq::SeparationReport sep0 = imq::verify_separation(op.tree, 0.0);
    sink.report("separation_ratio_planar", sep0.valid, sep0.max_ratio);

    {
      int max_far = 0, max_near = 0;
      bool within = true;
      for (int l = 1; l <= op.L; ++l) {
        const auto& lev = op.tree.levels[static_cast<size_t>(l) - 1];
        const int cap = (l == 1) ? 12 : 27;
        for (const auto& s : lev.slist) {
          max_far = std::max(max_far, static_cast<int>(s.size()));
          if (static_cast<int>(s.size()) > cap) within = false;
        }
      }
      for (const auto& s : op.tree.near_lists)
        max_near = std::max(max_near, static_cast<int>(s.size()));
      if (max_near > 9) within = false;
      sink.report("interaction_counts", within, static_cast<double>(std::max(max_far, max_near)));
    }

    {
      const size_t nsub = std::min<size_t>(cfg->n, 200);
      std::vector<imq::Point2> sub(pts.begin(), pts.begin() + static_cast<long>(nsub));
      int dev = 0;
      for (int L = 1; L <= 3; ++L) dev = std::max(dev, exact_cover_deviation(sub, L));
      sink.report("exact_cover", dev == 0, static_cast<double>(dev));
    }

    {
      const size_t nsub = std::min<size_t>(cfg->n, 2000);
      std::vector<imq::Point2> sub(pts.begin(), pts.begin() + static_cast<long>(nsub));
      imq::FastOperator osub = (nsub == cfg->n)
                                   ? std::move(op)
                                   : imq::build_operator(sub, params, cfg->m, cfg->levels);
      std::vector<double> u = imq::random_vector(static_cast<int>(nsub), cfg->seed);
      std::vector<double> bf = imq::fast_matvec(osub, u);
      std::vector<double> bd = imq::dense_matvec(sub, params, u);
      double rel = imq::rel_err_inf(bf, bd);
      sink.report("oracle_equivalence", rel <= 5e-8, rel);

      // m = 0 sine moments vanish identically: sin(0 * w) scales every term.
      std::vector<double> u1 = imq::random_vector(static_cast<int>(nsub), cfg->seed + 1);
      double worst = 0.0;
      for (int l = 1; l <= osub.L; ++l) {
        const auto& lev = osub.tree.levels[static_cast<size_t>(l) - 1];
        const int nb = lev.grid * lev.grid;
        for (int b = 0; b < nb; ++b) {
          imq::Moments mom = imq::compute_moments(osub, l, b, u1);
          for (int nn = 0; nn <= osub.order.M; ++nn)
            worst = std::max(worst, std::fabs(mom.v[static_cast<size_t>(imq::flat_index(nn, 0))]));
        }
      }
      sink.report("m0_sine_moments", worst == 0.0, worst);

      std::vector<double> u2 = imq::random_vector(static_cast<int>(nsub), cfg->seed + 2);
      const double alpha = 0.7, beta = -1.3;
      std::vector<double> mix(nsub);
      for (size_t i = 0; i < nsub; ++i) mix[i] = alpha * u1[i] + beta * u2[i];
      std::vector<double> b1 = imq::fast_matvec(osub, u1);
      std::vector<double> b2 = imq::fast_matvec(osub, u2);
      std::vector<double> bmix = imq::fast_matvec(osub, mix);
      std::vector<double> ref(nsub);
      for (size_t i = 0; i < nsub; ++i) ref[i] = alpha * b1[i] + beta * b2[i];
      double lin = imq::rel_err_inf(bmix, ref);
      sink.report("linearity", lin <= 1e-12, lin);

      std::vector<double> b1bis = imq::fast_matvec(osub, u1);
      double dmax = 0.0;
      for (size_t i = 0; i < nsub; ++i) dmax = std::max(dmax, std::fabs(b1bis[i] - b1[i]));
      sink.report("determinism", dmax == 0.0, dmax);
    }

    return sink.fails;
  } catch (const std::invalid_argument& e) {
    fail(IMQ_ERR_INVALID_ARG, e.what());
    return -IMQ_ERR_INVALID_ARG;
  } catch (const std::exception& e) {
    fail(IMQ_ERR_INTERNAL, e.what());
    return -IMQ_ERR_INTERNAL;
  }
}

}  // extern "C"
