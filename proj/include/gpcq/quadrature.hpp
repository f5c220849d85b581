#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gpcq/error.hpp"
#include "gpcq/orthopoly.hpp"

namespace gpcq {

struct JacobiMatrix {
  std::vector<long double> diag;     // gamma_0 .. gamma_n
  std::vector<long double> offdiag;  // sqrt(kappa_1) .. sqrt(kappa_n)

  std::size_t size() const { return diag.size(); }
};

JacobiMatrix build_jacobi(const RecurrenceCoeffs& rec);

struct TridiagEigen {
  std::vector<long double> values;     // ascending
  std::vector<long double> first_row;  // u_{1,j} paired with values[j]
  int max_iterations = 0;              // most QL sweeps spent on one eigenvalue
};

/// Implicit-shift QL with Wilkinson shifts. Only the first row of the
/// eigenvector matrix is carried along.
TridiagEigen tridiag_eigen(const JacobiMatrix& j);

struct QuadratureRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Golub-Welsch: nodes are eigenvalues, weights M_0 u_{1,j}^2.
QuadratureRule gauss_rule(const RecurrenceCoeffs& rec);

template <typename F>
double integrate(const QuadratureRule& rule, F&& g) {
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double v = g(rule.nodes[j]);
    if (!std::isfinite(v))
      throw NumericalError("integrand is not finite at node " + std::to_string(j));
    sum += v * rule.weights[j];
  }
  return sum;
}

/// ||I - V||_inf with V_ij = sum_k w_k phi_i(x_k) phi_j(x_k).
double orthonormality_error(const OrthonormalBasis& basis, const QuadratureRule& rule);

}  // namespace gpcq
