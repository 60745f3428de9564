#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "imq/reference.hpp"

using namespace imq;

TEST_CASE("dense matvec fixed values") {
  KernelParams kp(2.0);
  std::vector<double> b = dense_matvec({{0.1, 0.7}}, kp, {3.0});
  CHECK(b[0] == doctest::Approx(1.5).epsilon(1e-15));

  // u = e_j extracts column j with unit diagonal 1/t
  std::vector<Point2> pts = halton2d(7);
  KernelParams one(1.0);
  std::vector<double> e(7, 0.0);
  e[3] = 1.0;
  b = dense_matvec(pts, one, e);
  CHECK(b[3] == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i < 7; ++i)
    CHECK(b[static_cast<size_t>(i)] ==
          doctest::Approx(phi_imq(pts[static_cast<size_t>(i)], pts[3], one)).epsilon(1e-15));

  b = dense_matvec({{0, 0}, {std::sqrt(3.0), 0}}, one, {1.0, 1.0});
  CHECK(b[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(b[1] == doctest::Approx(1.5).epsilon(1e-15));

  CHECK_THROWS_AS(dense_matvec(pts, one, {1.0}), std::invalid_argument);
}

TEST_CASE("dense assembly invariants") {
  std::vector<Point2> pts = halton2d(60);
  KernelParams kp(0.8);
  DenseMatrix A = assemble_dense(pts, kp);
  for (int i = 0; i < 60; ++i) {
    CHECK(A.at(i, i) == doctest::Approx(1.25).epsilon(1e-15));
    for (int j = 0; j < i; ++j) {
      CHECK(A.at(i, j) == A.at(j, i));  // each pair evaluated once
      CHECK(A.at(i, j) > 0.0);
      CHECK(A.at(i, j) <= 1.25);
    }
  }

  // three collinear unit-spaced points, t = 1
  DenseMatrix C = assemble_dense({{0, 0}, {1, 0}, {2, 0}}, KernelParams(1.0));
  CHECK(C.at(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(C.at(1, 2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(C.at(0, 2) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));

  CHECK_THROWS_AS(assemble_dense(pts, kp, 10), std::invalid_argument);
}

TEST_CASE("assembled multiply agrees with the streamed matvec") {
  std::vector<Point2> pts = halton2d(150);
  KernelParams kp(0.6);
  DenseMatrix A = assemble_dense(pts, kp);
  std::vector<double> u = random_vector(150, 4);
  std::vector<double> b1 = dense_matvec(pts, kp, u);
  std::vector<double> b2(150, 0.0);
  for (int i = 0; i < 150; ++i) {
    double s = 0.0;
    for (int j = 0; j < 150; ++j) s += A.at(i, j) * u[static_cast<size_t>(j)];
    b2[static_cast<size_t>(i)] = s;
  }
  CHECK(rel_err_inf(b2, b1) <= 1e-13);
}

TEST_CASE("interpolation matrix is numerically positive definite") {
  // unpivoted Cholesky succeeds with strictly positive pivots
  std::vector<Point2> pts = halton2d(100);
  DenseMatrix A = assemble_dense(pts, KernelParams(0.05));
  const int n = A.N;
  std::vector<double> L(static_cast<size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    double d = A.at(j, j);
    for (int k = 0; k < j; ++k) d -= L[static_cast<size_t>(j) * n + k] * L[static_cast<size_t>(j) * n + k];
    REQUIRE(d > 0.0);
    double lj = std::sqrt(d);
    L[static_cast<size_t>(j) * n + j] = lj;
    for (int i = j + 1; i < n; ++i) {
      double s = A.at(i, j);
      for (int k = 0; k < j; ++k) s -= L[static_cast<size_t>(i) * n + k] * L[static_cast<size_t>(j) * n + k];
      L[static_cast<size_t>(i) * n + j] = s / lj;
    }
  }
}

TEST_CASE("dense solve contract") {
  // N = 1: c = t f
  DenseMatrix A1 = assemble_dense({{0.2, 0.9}}, KernelParams(4.0));
  DenseSolveResult r1 = dense_solve(A1, {2.0});
  CHECK(r1.c[0] == doctest::Approx(8.0).epsilon(1e-12));

  // constructed right-hand side f = A 1 recovers the ones vector
  std::vector<Point2> pts = halton2d(20);
  KernelParams kp(1.0);
  DenseMatrix A = assemble_dense(pts, kp);
  std::vector<double> ones(20, 1.0);
  std::vector<double> f = dense_matvec(pts, kp, ones);
  DenseSolveResult r = dense_solve(A, f);
  for (double c : r.c) CHECK(c == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.residual <= 1e-10);

  CHECK_THROWS_AS(dense_solve(A, std::vector<double>(20, 0.0)), std::invalid_argument);
}

TEST_CASE("dense solve at N = 200: in-range data meets the residual contract") {
  // t = 1, N = 200 Halton: the matrix is severely ill conditioned, but a
  // right-hand side constructed inside the range of A reaches the 1e-10
  // residual; a generic smooth f cannot, and the solver reports failure
  std::vector<Point2> pts = halton2d(200);
  KernelParams kp(1.0);
  DenseMatrix A = assemble_dense(pts, kp);

  std::vector<double> cstar(200), fgen(200);
  for (int i = 0; i < 200; ++i) {
    double x = pts[static_cast<size_t>(i)].x1, y = pts[static_cast<size_t>(i)].x2;
    cstar[static_cast<size_t>(i)] = std::sin(3.0 * x) * std::cos(2.0 * y);
    fgen[static_cast<size_t>(i)] = std::exp(x) * std::sin(3.0 * y) + x * y;
  }
  std::vector<double> fin = dense_matvec(pts, kp, cstar);
  DenseSolveResult r = dense_solve(A, fin);
  CHECK(r.residual <= 1e-10);

  CHECK_THROWS_AS(dense_solve(A, fgen), singular_error);
}

TEST_CASE("relative infinity-norm error") {
  std::vector<double> a{1.0, -2.0, 0.5};
  CHECK(rel_err_inf(a, a) == 0.0);
  std::vector<double> b{1.01, -2.02, 0.505};
  CHECK(rel_err_inf(b, a) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK_THROWS_AS(rel_err_inf(a, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(rel_err_inf(a, {0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("Halton sequence") {
  std::vector<Point2> pts = halton2d(100000);
  CHECK(pts[0].x1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pts[0].x2 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(pts[1].x1 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(pts[1].x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  for (const Point2& p : pts) {
    CHECK(p.x1 > 0.0);
    CHECK(p.x1 < 1.0);
    CHECK(p.x2 > 0.0);
    CHECK(p.x2 < 1.0);
  }
  std::vector<std::pair<double, double>> sorted;
  sorted.reserve(pts.size());
  for (const Point2& p : pts) sorted.emplace_back(p.x1, p.x2);
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("seeded random vectors") {
  std::vector<double> a = random_vector(1000, 42);
  std::vector<double> b = random_vector(1000, 42);
  std::vector<double> c = random_vector(1000, 43);
  CHECK(a == b);
  CHECK(a != c);
  for (double x : a) {
    CHECK(x >= -1.0);
    CHECK(x <= 1.0);
  }
  CHECK_THROWS_AS(random_vector(0, 1), std::invalid_argument);
}

TEST_CASE("point file round trip") {
  std::string path = "test_points_roundtrip.txt";
  std::vector<Point2> pts = halton2d(37);
  write_points(path, pts);
  std::vector<Point2> back = read_points(path);
  REQUIRE(back.size() == pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    CHECK(back[i].x1 == pts[i].x1);
    CHECK(back[i].x2 == pts[i].x2);
  }

  std::ofstream out(path);
  out << "# comment line\n\n0.5 0.25\n0.125   0.75\n";
  out.close();
  back = read_points(path);
  REQUIRE(back.size() == 2);
  CHECK(back[1].x1 == 0.125);

  out.open(path);
  out << "0.5 0.25\nnot numbers here\n";
  out.close();
  CHECK_THROWS_WITH_AS(read_points(path), doctest::Contains("line 2"), std::runtime_error);

  std::remove(path.c_str());
  CHECK_THROWS_AS(read_points("no_such_file_anywhere.txt"), std::runtime_error);
}
