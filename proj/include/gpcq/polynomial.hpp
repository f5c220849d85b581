#pragma once

// Dense univariate polynomial helpers. Coefficients are stored lowest degree
// first: p(x) = c[0] + c[1] x + ... + c[n] x^n.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace gpcq::poly {

template <typename T>
T horner(std::span<const T> c, T x) {
  T acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

template <typename T>
std::vector<T> multiply(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <typename T>
std::vector<T> derivative(std::span<const T> c) {
  if (c.size() <= 1) return {T(0)};
  std::vector<T> out(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = T(i) * c[i];
  return out;
}

/// Antiderivative vanishing at 0.
template <typename T>
std::vector<T> antiderivative(std::span<const T> c) {
  std::vector<T> out(c.size() + 1, T(0));
  for (std::size_t i = 0; i < c.size(); ++i) out[i + 1] = c[i] / T(i + 1);
  return out;
}

/// Coefficients of (shift + t)^n expanded in t.
template <typename T>
std::vector<T> shifted_power(T shift, int n) {
  std::vector<T> out{T(1)};
  const std::vector<T> lin{shift, T(1)};
  for (int i = 0; i < n; ++i) out = multiply<T>(out, lin);
  return out;
}

template <typename T>
struct DivisionResult {
  std::vector<T> quotient;
  std::vector<T> remainder;  // size == divisor degree
};

/// Synthetic division num = quotient * den + remainder. The leading
/// coefficient of den must be nonzero; deg(remainder) < deg(den) by layout.
template <typename T>
DivisionResult<T> divide(std::span<const T> num, std::span<const T> den) {
  const std::size_t dn = den.size() - 1;
  DivisionResult<T> out;
  std::vector<T> rem(num.begin(), num.end());
  if (rem.size() <= dn) {
    rem.resize(dn, T(0));
    out.quotient = {T(0)};
    out.remainder = std::move(rem);
    return out;
  }
  out.quotient.assign(rem.size() - dn, T(0));
  const T lead = den[dn];
  for (std::size_t k = rem.size() - 1; k >= dn; --k) {
    const T q = rem[k] / lead;
    out.quotient[k - dn] = q;
    for (std::size_t j = 0; j <= dn; ++j) rem[k - dn + j] -= q * den[j];
    rem[k] = T(0);
    if (k == dn) break;
  }
  rem.resize(dn);
  out.remainder = std::move(rem);
  return out;
}

}  // namespace gpcq::poly
