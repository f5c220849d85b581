#include "gpcq/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "gpcq/polynomial.hpp"

namespace gpcq {

namespace {

using Real = long double;

constexpr int kMaxSweeps = 50;

}  // namespace

JacobiMatrix build_jacobi(const RecurrenceCoeffs& rec) {
  if (rec.gamma.empty()) throw InvalidInput("empty recurrence");
  if (rec.kappa.size() != rec.gamma.size())
    throw InvalidInput("recurrence has mismatched gamma/kappa lengths");
  JacobiMatrix j;
  j.diag = rec.gamma;
  for (std::size_t i = 1; i < rec.kappa.size(); ++i) {
    if (!(rec.kappa[i] > 0.0L))
      throw NumericalError("kappa_" + std::to_string(i) + " is not positive");
    j.offdiag.push_back(std::sqrt(rec.kappa[i]));
  }
  return j;
}

TridiagEigen tridiag_eigen(const JacobiMatrix& jm) {
  const std::size_t n = jm.size();
  if (n == 0) throw InvalidInput("empty matrix");
  if (jm.offdiag.size() + 1 != n) throw InvalidInput("off-diagonal length must be size - 1");

  std::vector<Real> d = jm.diag;
  std::vector<Real> e(n, 0.0L);
  std::copy(jm.offdiag.begin(), jm.offdiag.end(), e.begin());
  std::vector<Real> z(n, 0.0L);  // first row of the accumulated rotations
  z[0] = 1.0L;
  const Real eps = std::numeric_limits<Real>::epsilon();
  TridiagEigen out;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const Real dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > kMaxSweeps)
        throw NumericalError("tridiagonal eigensolver did not converge for eigenvalue " +
                             std::to_string(l) + " after " + std::to_string(kMaxSweeps) +
                             " sweeps");
      out.max_iterations = std::max(out.max_iterations, iter);

      // Wilkinson shift from the leading 2x2 block.
      Real g = (d[l + 1] - d[l]) / (2.0L * e[l]);
      Real r = std::hypot(g, 1.0L);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      Real s = 1.0L, c = 1.0L, p = 0.0L;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const Real f = s * e[i];
        const Real b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0L) {
          d[i + 1] -= p;
          e[m] = 0.0L;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0L * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        const Real t = z[i + 1];
        z[i + 1] = s * z[i] + c * t;
        z[i] = c * z[i] - s * t;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0L;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  for (std::size_t k : order) {
    out.values.push_back(d[k]);
    out.first_row.push_back(z[k]);
  }
  return out;
}

QuadratureRule gauss_rule(const RecurrenceCoeffs& rec) {
  const TridiagEigen eig = tridiag_eigen(build_jacobi(rec));
  std::vector<Real> w(eig.values.size());
  Real sum = 0.0L;
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = rec.mass * eig.first_row[j] * eig.first_row[j];
    sum += w[j];
  }
  const Real residual = std::abs(sum - rec.mass);
  if (residual > 1e-12L)
    throw NumericalError("quadrature weights sum to " + std::to_string(static_cast<double>(sum)) +
                         " instead of the zeroth moment");
  QuadratureRule rule;
  for (std::size_t j = 0; j < w.size(); ++j) {
    rule.nodes.push_back(static_cast<double>(eig.values[j]));
    rule.weights.push_back(static_cast<double>(w[j] * rec.mass / sum));
  }
  for (std::size_t j = 0; j < rule.size(); ++j) {
    if (!(rule.weights[j] > 0.0))
      throw NumericalError("quadrature weight " + std::to_string(j) + " is not positive");
    if (j > 0 && !(rule.nodes[j] > rule.nodes[j - 1]))
      throw NumericalError("quadrature nodes are not distinct");
  }
  return rule;
}

double orthonormality_error(const OrthonormalBasis& basis, const QuadratureRule& rule) {
  const std::size_t n = static_cast<std::size_t>(basis.degree) + 1;
  if (rule.size() != n)
    throw InvalidInput("basis has " + std::to_string(n) + " functions but the rule has " +
                       std::to_string(rule.size()) + " nodes");
  // phi values at every node, then V = Phi W Phi^T.
  std::vector<std::vector<Real>> phi(n, std::vector<Real>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      phi[i][k] = poly::horner<Real>(basis.phi[i], static_cast<Real>(rule.nodes[k]));
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Real row = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      Real v = 0.0L;
      for (std::size_t k = 0; k < n; ++k) v += rule.weights[k] * phi[i][k] * phi[j][k];
      row += std::abs((i == j ? 1.0L : 0.0L) - v);
    }
    worst = std::max(worst, static_cast<double>(row));
  }
  return worst;
}

}  // namespace gpcq
