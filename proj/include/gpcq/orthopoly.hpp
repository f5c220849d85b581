#pragma once

#include <cstddef>
#include <vector>

#include "gpcq/moments.hpp"

namespace gpcq {

/// Largest supported basis degree.
inline constexpr int kMaxDegree = 10;

/// Monic recurrence pi_{i+1} = (x - gamma_i) pi_i - kappa_i pi_{i-1}.
struct RecurrenceCoeffs {
  std::vector<long double> gamma;  // gamma_0 .. gamma_n
  std::vector<long double> kappa;  // kappa_0 = 1, kappa_1 .. kappa_n
  long double mass = 1.0L;         // M_0

  int degree() const { return static_cast<int>(gamma.size()) - 1; }
};

struct OrthonormalBasis {
  int degree = 0;
  std::vector<std::vector<long double>> monic;  // pi_i, lowest degree first
  std::vector<long double> norms;               // sqrt(kappa_0 ... kappa_i)
  std::vector<std::vector<long double>> phi;    // pi_i / norms[i]
};

struct RecurrenceDiagnostics {
  /// Largest ratio sum|tau_k M_k| / |sum tau_k M_k| seen while contracting.
  double max_cancellation = 1.0;
  /// Set when max_cancellation exceeds 1e10; results may have lost most digits.
  bool ill_conditioned = false;
};

struct RecurrenceResult {
  RecurrenceCoeffs rec;
  OrthonormalBasis basis;
  RecurrenceDiagnostics diagnostics;
};

/// Needs M_0 .. M_{2 degree + 1}. Throws NumericalError naming the index of
/// the first non-positive kappa.
RecurrenceResult compute_recurrence(const MomentVector& moments, int degree);

/// Horner evaluation of phi_i.
double eval_basis(const OrthonormalBasis& basis, int i, double x);

/// phi_0 .. phi_n at x via the recurrence itself, normalized on the fly.
std::vector<double> eval_basis_by_recurrence(const RecurrenceCoeffs& rec, double x);

}  // namespace gpcq
