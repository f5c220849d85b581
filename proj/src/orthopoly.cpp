#include "gpcq/orthopoly.hpp"

#include <cmath>
#include <string>

#include "gpcq/error.hpp"
#include "gpcq/polynomial.hpp"

namespace gpcq {

namespace {

using Real = long double;
using Poly = std::vector<Real>;

struct Contraction {
  Real value = 0.0L;
  Real magnitude = 0.0L;
};

// sum_k tau_k M_{k + shift}
Contraction contract(const Poly& tau, const MomentVector& m, int shift) {
  Contraction c;
  for (std::size_t k = 0; k < tau.size(); ++k) {
    const Real term = tau[k] * m.values[k + static_cast<std::size_t>(shift)];
    c.value += term;
    c.magnitude += std::abs(term);
  }
  return c;
}

}  // namespace

RecurrenceResult compute_recurrence(const MomentVector& moments, int degree) {
  if (degree < 0) throw InvalidInput("basis degree must be non-negative");
  if (degree > kMaxDegree)
    throw InvalidInput("degree cap exceeded: " + std::to_string(degree) + " > " +
                       std::to_string(kMaxDegree));
  if (moments.max_order() < 2 * degree + 1)
    throw InvalidInput("degree " + std::to_string(degree) + " needs moments up to order " +
                       std::to_string(2 * degree + 1));
  const Real m0 = moments.values[0];
  if (!(m0 > 0.0L)) throw NumericalError("zeroth moment is not positive");

  RecurrenceResult out;
  RecurrenceCoeffs& rec = out.rec;
  rec.mass = m0;
  rec.kappa.push_back(1.0L);

  Poly prev;          // pi_{-1} = 0
  Poly cur{1.0L};     // pi_0 = 1
  Real norm_cur = m0;  // integral of pi_i^2 rho
  std::vector<Poly> monic{cur};
  auto note = [&](const Contraction& c) {
    if (c.value != 0.0L) {
      const double ratio = static_cast<double>(c.magnitude / std::abs(c.value));
      if (ratio > out.diagnostics.max_cancellation) out.diagnostics.max_cancellation = ratio;
    }
  };

  for (int i = 0; i <= degree; ++i) {
    const Poly tau = poly::multiply<Real>(cur, cur);
    if (i > 0) {
      const Contraction sq = contract(tau, moments, 0);
      note(sq);
      const Real kappa = sq.value / norm_cur;
      if (!(kappa > 0.0L) || !std::isfinite(kappa))
        throw NumericalError("recurrence coefficient kappa_" + std::to_string(i) +
                             " is not positive (" + std::to_string(static_cast<double>(kappa)) +
                             "); moments are inconsistent at this degree");
      rec.kappa.push_back(kappa);
      norm_cur = sq.value;
    }
    const Contraction first = contract(tau, moments, 1);
    note(first);
    const Real gamma = first.value / norm_cur;
    rec.gamma.push_back(gamma);
    if (i == degree) break;

    // pi_{i+1} = (x - gamma_i) pi_i - kappa_i pi_{i-1}
    Poly next(cur.size() + 1, 0.0L);
    for (std::size_t k = 0; k < cur.size(); ++k) {
      next[k + 1] += cur[k];
      next[k] -= gamma * cur[k];
    }
    for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= rec.kappa.back() * prev[k];
    next.back() = 1.0L;
    prev = std::move(cur);
    cur = std::move(next);
    monic.push_back(cur);
  }
  out.diagnostics.ill_conditioned = out.diagnostics.max_cancellation > 1e10;

  OrthonormalBasis& basis = out.basis;
  basis.degree = degree;
  basis.monic = std::move(monic);
  Real product = 1.0L;
  for (int i = 0; i <= degree; ++i) {
    product *= rec.kappa[static_cast<std::size_t>(i)];
    const Real norm = std::sqrt(product);
    basis.norms.push_back(norm);
    Poly phi = basis.monic[static_cast<std::size_t>(i)];
    for (Real& c : phi) c /= norm;
    basis.phi.push_back(std::move(phi));
  }
  return out;
}

double eval_basis(const OrthonormalBasis& basis, int i, double x) {
  if (i < 0 || i > basis.degree)
    throw InvalidInput("basis index " + std::to_string(i) + " outside [0, " +
                       std::to_string(basis.degree) + "]");
  return static_cast<double>(
      poly::horner<Real>(basis.phi[static_cast<std::size_t>(i)], static_cast<Real>(x)));
}

std::vector<double> eval_basis_by_recurrence(const RecurrenceCoeffs& rec, double x) {
  // Orthonormal form: sqrt(k_{i+1}) phi_{i+1} = (x - g_i) phi_i - sqrt(k_i) phi_{i-1}.
  const int n = rec.degree();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  Real prev = 0.0L;
  Real cur = 1.0L;
  out.push_back(1.0);
  for (int i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const Real back = i == 0 ? 0.0L : std::sqrt(rec.kappa[iu]);
    const Real next = ((static_cast<Real>(x) - rec.gamma[iu]) * cur - back * prev) /
                      std::sqrt(rec.kappa[iu + 1]);
    prev = cur;
    cur = next;
    out.push_back(static_cast<double>(cur));
  }
  return out;
}

}  // namespace gpcq
