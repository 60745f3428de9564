// Command line front end. Links the C interface only.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "imqfast.h"

namespace {

struct Options {
  std::string mode = "verify";
  std::string nlist;  // empty = per-mode default; comma list in bench mode
  double t = 1.0;
  int m = 10;
  std::string levels = "auto";
  unsigned long long seed = 42;
  std::string points;
  std::string out;
  int threads = 0;  // 0 = leave the runtime default
  double tol = 1e-10;
  int max_iter = 500;
  int restart = 100;
};

int api_fail(const char* where) {
  std::string msg = imq_last_error();
  if (msg.rfind(where, 0) != 0) msg = std::string(where) + ": " + msg;
  std::cerr << msg << "\n";
  return 2;
}

std::vector<size_t> parse_n(const std::string& s, const std::vector<size_t>& dflt) {
  if (s.empty()) return dflt;
  std::vector<size_t> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(std::stoull(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

int parse_levels(const std::string& s) {
  if (s == "auto") return 0;
  int L = 0;
  try {
    size_t used = 0;
    L = std::stoi(s, &used);
    if (used != s.size()) L = 0;
  } catch (const std::exception&) {
  }
  if (L < 1) throw std::invalid_argument("--levels must be 'auto' or an integer >= 1");
  return L;
}

// Points from --points when given, else the first n Halton points.
int load_points(const Options& opt, size_t n, std::vector<double>& xy) {
  if (!opt.points.empty()) {
    double* buf = nullptr;
    size_t got = 0;
    if (imq_read_points(opt.points.c_str(), &buf, &got) != IMQ_OK) return api_fail("read_points");
    xy.assign(buf, buf + 2 * got);
    imq_free(buf);
    return 0;
  }
  xy.resize(2 * n);
  if (imq_halton2d(n, xy.data()) != IMQ_OK) return api_fail("halton2d");
  return 0;
}

void print_config(std::ostream& os, const Options& opt, size_t n_effective) {
  os << "# config: mode=" << opt.mode << " n=" << n_effective << " t=" << opt.t << " m=" << opt.m
     << " levels=" << opt.levels << " seed=" << opt.seed
     << " points=" << (opt.points.empty() ? "-" : opt.points)
     << " threads=" << (opt.threads > 0 ? std::to_string(opt.threads) : "default");
  if (opt.mode == "solve")
    os << " tol=" << opt.tol << " max_iter=" << opt.max_iter << " restart=" << opt.restart;
  os << "\n";
}

double rel_inf(const std::vector<double>& test, const std::vector<double>& ref) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < ref.size(); ++i) {
    num = std::max(num, std::fabs(test[i] - ref[i]));
    den = std::max(den, std::fabs(ref[i]));
  }
  return num / den;
}

double median3(double a, double b, double c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

struct VerifySink {
  std::ostream* os;
  int calls = 0;
};

void verify_cb(const char* name, int pass, double value, void* ud) {
  auto* st = static_cast<VerifySink*>(ud);
  char line[128];
  std::snprintf(line, sizeof line, "[%s] %s = %.6e", pass ? "PASS" : "FAIL", name, value);
  (*st->os) << line << "\n";
  ++st->calls;
}

int run_verify(const Options& opt, std::ostream& os) {
  std::vector<double> xy;
  size_t n = parse_n(opt.nlist, {2000}).front();
  if (int rc = load_points(opt, n, xy)) return rc;
  n = xy.size() / 2;
  print_config(os, opt, n);

  imq_verify_config cfg{};
  cfg.xy = xy.data();
  cfg.n = n;
  cfg.t = opt.t;
  cfg.m = opt.m;
  cfg.levels = parse_levels(opt.levels);
  cfg.seed = opt.seed;
  VerifySink sink{&os};
  int fails = imq_verify(&cfg, verify_cb, &sink);
  if (fails < 0) return api_fail("verify");
  os << "# verify: " << fails << " of " << sink.calls << " checks failed\n";
  return fails;
}

int run_bench(const Options& opt, std::ostream& os) {
  std::vector<size_t> ns = parse_n(opt.nlist, {20000, 40000, 60000, 80000, 100000});
  print_config(os, opt, ns.size() == 1 ? ns.front() : 0);
  os << "N,M,L,time_fast_s,time_dense_s,rel_err_inf\n";

  std::vector<std::string> normalized;
  for (size_t n : ns) {
    std::vector<double> xy;
    if (int rc = load_points(opt, n, xy)) return rc;
    n = xy.size() / 2;
    std::vector<double> u(n);
    if (imq_random_vector(n, opt.seed, u.data()) != IMQ_OK) return api_fail("random_vector");

    imq_operator* op = nullptr;
    if (imq_operator_create(xy.data(), n, opt.t, opt.m, parse_levels(opt.levels), &op) != IMQ_OK)
      return api_fail("operator_create");
    int L = 0;
    imq_operator_levels(op, &L);

    std::vector<double> bf(n), bd(n);
    double tf[3], td[3];
    for (double& rec : tf) {
      auto t0 = std::chrono::steady_clock::now();
      if (imq_operator_apply(op, u.data(), bf.data()) != IMQ_OK) return api_fail("operator_apply");
      rec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    for (double& rec : td) {
      auto t0 = std::chrono::steady_clock::now();
      if (imq_dense_matvec(xy.data(), n, opt.t, u.data(), bd.data()) != IMQ_OK)
        return api_fail("dense_matvec");
      rec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    imq_operator_destroy(op);

    double fast = median3(tf[0], tf[1], tf[2]);
    double dense = median3(td[0], td[1], td[2]);
    char row[192];
    std::snprintf(row, sizeof row, "%zu,%d,%d,%.6e,%.6e,%.3e", n, opt.m, L, fast, dense,
                  rel_inf(bf, bd));
    os << row << "\n";
    std::snprintf(row, sizeof row, "# normalized N=%zu fast=%.3e s/pt dense=%.3e s/pt", n,
                  fast / static_cast<double>(n), dense / static_cast<double>(n));
    normalized.emplace_back(row);
  }
  for (const std::string& line : normalized) os << line << "\n";
  return 0;
}

int run_errtrend(const Options& opt, std::ostream& os) {
  print_config(os, opt, 0);
  os << "rho_x,M,case,E,bound\n";
  const double pi = 3.14159265358979323846;
  for (int M : {5, 10, 20}) {
    for (char cs : {'a', 'b'}) {
      double thx = (cs == 'a') ? pi / 3 : pi;
      double thy = (cs == 'a') ? pi / 3 : pi / 4;
      double omx = pi / 3;
      double omy = (cs == 'a') ? pi / 3 : pi / 2;
      for (int i = 0; i < 100; ++i) {
        double rho_x = 1.1 + (21.0 - 1.1) * i / 99.0;
        double X[3] = {rho_x * std::sin(thx) * std::cos(omx), rho_x * std::sin(thx) * std::sin(omx),
                       rho_x * std::cos(thx)};
        double Y[3] = {std::sin(thy) * std::cos(omy), std::sin(thy) * std::sin(omy), std::cos(thy)};
        double exact = 0.0, approx = 0.0, bound = 0.0;
        if (imq_green_exact(X, Y, &exact) != IMQ_OK) return api_fail("green_exact");
        if (imq_green_truncated(X, Y, M, &approx) != IMQ_OK) return api_fail("green_truncated");
        if (imq_truncation_error_bound(rho_x, 1.0 / rho_x, M, &bound) != IMQ_OK)
          return api_fail("truncation_error_bound");
        char row[160];
        std::snprintf(row, sizeof row, "%.6f,%d,%c,%.6e,%.6e", rho_x, M, cs,
                      std::fabs(approx - exact), bound);
        os << row << "\n";
      }
    }
  }
  return 0;
}

int run_solve(const Options& opt, std::ostream& os) {
  std::vector<double> xy;
  size_t n = parse_n(opt.nlist, {500}).front();
  if (int rc = load_points(opt, n, xy)) return rc;
  n = xy.size() / 2;
  print_config(os, opt, n);

  std::vector<double> f(n);
  double fmax = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double x = xy[2 * i], y = xy[2 * i + 1];
    f[i] = std::exp(x) * std::sin(3.0 * y) + x * y;
    fmax = std::max(fmax, std::fabs(f[i]));
  }

  imq_operator* op = nullptr;
  if (imq_operator_create(xy.data(), n, opt.t, opt.m, parse_levels(opt.levels), &op) != IMQ_OK)
    return api_fail("operator_create");
  int L = 0;
  imq_operator_levels(op, &L);

  std::vector<double> c(n);
  imq_solve_stats st{};
  int rc = imq_iterative_solve(op, f.data(), opt.tol, opt.max_iter, opt.restart, c.data(), &st);
  if (rc != IMQ_OK) {
    imq_operator_destroy(op);
    return api_fail("iterative_solve");
  }
  char line[192];
  std::snprintf(line, sizeof line, "# solve: L=%d iterations=%d residual=%.3e converged=%d", L,
                st.iterations, st.final_relative_residual, st.converged);
  os << line << "\n";

  if (n <= 5000) {
    std::vector<double> cd(n);
    double resid = 0.0;
    int drc = imq_dense_solve(xy.data(), n, opt.t, f.data(), cd.data(), &resid);
    if (drc == IMQ_OK) {
      std::snprintf(line, sizeof line, "# dense comparison: coeff dev %.3e, dense residual %.3e",
                    rel_inf(c, cd), resid);
      os << line << "\n";
    } else if (drc == IMQ_ERR_SINGULAR) {
      os << "# dense comparison skipped: " << imq_last_error() << "\n";
    } else {
      imq_operator_destroy(op);
      return api_fail("dense_solve");
    }
  }

  std::vector<double> at_centers(n);
  if (imq_evaluate_interpolant(xy.data(), c.data(), n, opt.t, xy.data(), n, at_centers.data()) !=
      IMQ_OK) {
    imq_operator_destroy(op);
    return api_fail("evaluate_interpolant");
  }
  double repro = 0.0;
  for (size_t i = 0; i < n; ++i) repro = std::max(repro, std::fabs(at_centers[i] - f[i]));
  std::snprintf(line, sizeof line, "# interpolant reproduction: %.3e relative", repro / fmax);
  os << line << "\n";
  imq_operator_destroy(op);

  os << "index,coefficient\n";
  for (size_t i = 0; i < n; ++i) {
    std::snprintf(line, sizeof line, "%zu,%.17g", i, c[i]);
    os << line << "\n";
  }
  return st.converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"fast inverse-multiquadric kernel evaluator"};
  app.add_option("--mode", opt.mode, "verify | bench | errtrend | solve")
      ->check(CLI::IsMember({"verify", "bench", "errtrend", "solve"}));
  app.add_option("--n", opt.nlist, "point count; comma list in bench mode");
  app.add_option("--t", opt.t, "kernel shape parameter t > 0");
  app.add_option("--m", opt.m, "truncation order M");
  app.add_option("--levels", opt.levels, "'auto' or a level count >= 1");
  app.add_option("--seed", opt.seed, "seed for the test vector");
  app.add_option("--points", opt.points, "two-column point file replacing the Halton set");
  app.add_option("--out", opt.out, "output file (default stdout)");
  app.add_option("--threads", opt.threads, "worker thread cap");
  app.add_option("--tol", opt.tol, "solver relative residual tolerance");
  app.add_option("--max-iter", opt.max_iter, "solver total iteration cap");
  app.add_option("--restart", opt.restart, "solver restart length");
  CLI11_PARSE(app, argc, argv);

  if (opt.threads > 0 && imq_set_threads(opt.threads) != IMQ_OK) return api_fail("set_threads");

  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) {
      std::cerr << "cannot open output file " << opt.out << "\n";
      return 2;
    }
  }
  std::ostream& os = opt.out.empty() ? std::cout : file;

  try {
    if (opt.mode == "bench") return run_bench(opt, os);
    if (opt.mode == "errtrend") return run_errtrend(opt, os);
    if (opt.mode == "solve") return run_solve(opt, os);
    return run_verify(opt, os);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
