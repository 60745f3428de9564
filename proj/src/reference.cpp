#include "imq/reference.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace imq {

std::vector<double> dense_matvec(const std::vector<Point2>& points, const KernelParams& params,
                                 const std::vector<double>& u) {
  int N = static_cast<int>(points.size());
  if (static_cast<int>(u.size()) != N) throw std::invalid_argument("dense_matvec: length mismatch");
  std::vector<double> b(N, 0.0);
  double t2 = params.t * params.t;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < N; ++i) {
    double xi = points[i].x1, yi = points[i].x2;
    double acc = 0.0;
    for (int j = 0; j < N; ++j) {
      double dx = xi - points[j].x1, dy = yi - points[j].x2;
      acc += u[j] / std::sqrt(t2 + dx * dx + dy * dy);
    }
    b[i] = acc;
  }
  return b;
}

DenseMatrix assemble_dense(const std::vector<Point2>& points, const KernelParams& params, int cap) {
  int N = static_cast<int>(points.size());
  if (N > cap) throw std::invalid_argument("assemble_dense: N exceeds the memory cap");
  DenseMatrix A;
  A.N = N;
  A.a.resize(static_cast<size_t>(N) * N);
  double inv_t = 1.0 / params.t;
  for (int i = 0; i < N; ++i) {
    A.at(i, i) = inv_t;
    for (int j = i + 1; j < N; ++j) {
      double v = phi_imq(points[i], points[j], params);  // each pair evaluated once
      A.at(i, j) = v;
      A.at(j, i) = v;
    }
  }
  return A;
}

DenseSolveResult dense_solve(const DenseMatrix& A, const std::vector<double>& f) {
  int N = A.N;
  if (N < 1 || static_cast<int>(f.size()) != N) throw std::invalid_argument("dense_solve: length mismatch");
  using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const Mat> Am(A.a.data(), N, N);
  Eigen::Map<const Eigen::VectorXd> fm(f.data(), N);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(Am);
  Eigen::VectorXd c = lu.solve(fm);
  c += lu.solve(fm - Am * c);  // one refinement step
  double fnorm = fm.cwiseAbs().maxCoeff();
  if (fnorm == 0.0) throw std::invalid_argument("dense_solve: zero right-hand side");
  double resid = (Am * c - fm).cwiseAbs().maxCoeff() / fnorm;
  if (!(resid <= 1e-10))
    throw singular_error("dense_solve: numerically singular matrix (relative residual " +
                         std::to_string(resid) + " exceeds 1e-10)");
  return {std::vector<double>(c.data(), c.data() + N), resid};
}

double rel_err_inf(const std::vector<double>& b_test, const std::vector<double>& b_ref) {
  if (b_test.size() != b_ref.size()) throw std::invalid_argument("rel_err_inf: length mismatch");
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < b_ref.size(); ++i) {
    num = std::max(num, std::abs(b_test[i] - b_ref[i]));
    den = std::max(den, std::abs(b_ref[i]));
  }
  if (den == 0.0) throw std::invalid_argument("rel_err_inf: reference vector is identically zero");
  return num / den;
}

static double radical_inverse(int index, int base) {
  double r = 0.0, denom = 1.0;
  while (index > 0) {
    denom *= base;
    r += (index % base) / denom;
    index /= base;
  }
  return r;
}

std::vector<Point2> halton2d(int N) {
  if (N < 1) throw std::invalid_argument("halton2d: N must be >= 1");
  std::vector<Point2> pts(N);
  for (int i = 0; i < N; ++i) pts[i] = {radical_inverse(i + 1, 2), radical_inverse(i + 1, 3)};
  return pts;
}

std::vector<double> random_vector(int N, std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("random_vector: N must be >= 1");
  std::vector<double> u(N);
  std::uint64_t state = seed;
  for (int i = 0; i < N; ++i) {
    // SplitMix64 step
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    u[i] = 2.0 * ((z >> 11) * 0x1.0p-53) - 1.0;
  }
  return u;
}

std::vector<Point2> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_points: cannot open " + path);
  std::vector<Point2> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ss(line);
    double x, y;
    std::string extra;
    if (!(ss >> x >> y) || (ss >> extra))
      throw std::runtime_error("read_points: malformed line " + std::to_string(lineno) + " in " + path);
    pts.push_back({x, y});
  }
  return pts;
}

void write_points(const std::string& path, const std::vector<Point2>& points) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_points: cannot open " + path);
  out.precision(17);
  for (const Point2& p : points) out << p.x1 << ' ' << p.x2 << '\n';
  if (!out) throw std::runtime_error("write_points: write failure on " + path);
}

}  // namespace imq
