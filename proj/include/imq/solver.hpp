#pragma once

#include <vector>

#include "imq/fastmv.hpp"

namespace imq {

struct SolveReport {
  std::vector<double> c;
  int iterations = 0;                    // Arnoldi steps (operator applications in the Krylov build)
  double final_relative_residual = 0.0;  // ||f - A c||_2 / ||f||_2, recomputed with the operator
  bool converged = false;
  std::vector<double> cycle_residuals;   // true relative residual at each restart boundary + final
};

// Restarted GMRES on the fast operator: zero initial guess, modified
// Gram-Schmidt Arnoldi, Givens-rotation least squares, right-hand-side
// relative stopping criterion verified against the recomputed true residual.
// max_iter caps the total Arnoldi steps. Throws on non-finite values,
// reporting the iteration index.
SolveReport iterative_solve(const FastOperator& op, const std::vector<double>& f, double tol = 1e-8,
                            int max_iter = 500, int restart = 100);

struct Interpolant {
  std::vector<Point2> centers;
  std::vector<double> c;
  KernelParams params;
};

// P_f(x) = sum_j c_j phi(||x - y_j||)
double evaluate_interpolant(const Interpolant& interp, Point2 x);

}  // namespace imq
