#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "imq/expansion.hpp"
#include "imq/geometry.hpp"

namespace imq {

// Raised by dense_solve when the factorization cannot meet the residual contract.
struct singular_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Symmetric kernel matrix a_{ij} = phi(||x_i - x_j||), row-major storage.
struct DenseMatrix {
  int N = 0;
  std::vector<double> a;
  double& at(int i, int j) { return a[static_cast<size_t>(i) * N + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * N + j]; }
};

struct DenseSolveResult {
  std::vector<double> c;
  double residual;  // ||A c - f||_inf / ||f||_inf
};

// b_i = sum_j phi(||x_i - x_j||) u_j, row streamed, A never materialized.
std::vector<double> dense_matvec(const std::vector<Point2>& points, const KernelParams& params,
                                 const std::vector<double>& u);

// Full assembly, guarded by a memory cap on N (default 5000).
DenseMatrix assemble_dense(const std::vector<Point2>& points, const KernelParams& params,
                           int cap = 5000);

// Pivoted LU with one refinement step. Throws when the relative infinity-norm
// residual cannot be brought to 1e-10 (numerically singular regime: tiny or
// large shape parameters with clustered points push cond(A) past 1/eps).
DenseSolveResult dense_solve(const DenseMatrix& A, const std::vector<double>& f);

// max_i |test_i - ref_i| / max_i |ref_i|; rejects an identically zero reference.
double rel_err_inf(const std::vector<double>& b_test, const std::vector<double>& b_ref);

// First N Halton points, bases (2, 3), indices starting at 1; all inside (0,1)^2.
std::vector<Point2> halton2d(int N);

// N uniform values on [-1, 1] from a SplitMix64 stream; identical for equal seeds.
std::vector<double> random_vector(int N, std::uint64_t seed);

// Plain-text point files: one point per line, two fields separated by
// whitespace, '#' starts a comment line.
std::vector<Point2> read_points(const std::string& path);
void write_points(const std::string& path, const std::vector<Point2>& points);

}  // namespace imq
