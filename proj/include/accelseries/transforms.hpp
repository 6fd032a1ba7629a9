#pragma once

// Sequence transformations for alternating series sum (-1)^n alpha_n.
//
// Every method fills a triangular table s_k^n (k = order, n = start index)
// where row 0 holds the partial sums. With a term budget M (alpha_0..alpha_M
// available) the entry s_k^n exists exactly when n + k + 1 <= M.
//
// All methods other than the explicit Levin/Weniger formula are convex
// combinations
//
//     s_k^n = (beta_{n+1} s_{k-1}^n + phi_k^n s_{k-1}^{n+1}) / (beta_{n+1} + phi_k^n)
//
// and the table keeps the weight phi_k^n of each entry for the diagnostics.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "accelseries/errors.hpp"
#include "accelseries/numeric.hpp"
#include "accelseries/series.hpp"

namespace accel {

enum class Method { Aitken, S, SPhi, Levin, Weniger };
enum class Realization { Explicit, PqRecurrence, DirectPhi };
enum class PhiKind { LevinTilde, WenigerTilde, WenigerRatioPowers, TwoPointPowers, Custom };

inline const char* method_label(Method m) {
  switch (m) {
    case Method::Aitken: return "Aitken";
    case Method::S: return "S";
    case Method::SPhi: return "Sphi";
    case Method::Levin: return "L";
    case Method::Weniger: return "W";
  }
  return "?";
}

/// Weight function of the Levin (L) and Weniger (W) three-term recurrences:
///   L: (n+b+1)^{k-2} (n+k+b) / (n+b)^{k-1}
///   W: (n+b+2k-2) / (n+b)
template <RealNumber Real>
Real phi_tilde(Method method, int k, std::size_t n, const Real& b) {
  if (k < 1) throw RangeError("phi_tilde requires k >= 1");
  const Real nb = Real(static_cast<long long>(n)) + b;
  switch (method) {
    case Method::Levin:
      return pow_int(Real(nb + Real(1)), k - 2) * (nb + Real(k)) / pow_int(nb, k - 1);
    case Method::Weniger:
      return (nb + Real(2 * k - 2)) / nb;
    default:
      throw Error("phi_tilde is defined for Levin and Weniger only");
  }
}

/// Weight family phi_k^n for the generalised method S_phi.
template <RealNumber Real>
class PhiFamily {
 public:
  using Fn = std::function<Real(int, std::size_t)>;

  static PhiFamily levin_tilde(Real b = Real(1)) {
    return PhiFamily(PhiKind::LevinTilde, "levin_tilde",
                     [b](int k, std::size_t n) { return phi_tilde(Method::Levin, k, n, b); });
  }
  /// With b = 1 this turns S_phi into method S.
  static PhiFamily weniger_tilde(Real b = Real(1)) {
    return PhiFamily(PhiKind::WenigerTilde, "weniger_tilde",
                     [b](int k, std::size_t n) { return phi_tilde(Method::Weniger, k, n, b); });
  }
  /// ((n+3)/(n+1))^{k-1}
  static PhiFamily ratio_powers() {
    return PhiFamily(PhiKind::WenigerRatioPowers, "ratio_powers", [](int k, std::size_t n) {
      const long long m = static_cast<long long>(n);
      return pow_int(Real(m + 3) / Real(m + 1), k - 1);
    });
  }
  /// ((n+2)/(n+1))^{2k-2}
  static PhiFamily two_point_powers() {
    return PhiFamily(PhiKind::TwoPointPowers, "two_point_powers", [](int k, std::size_t n) {
      const long long m = static_cast<long long>(n);
      return pow_int(Real(m + 2) / Real(m + 1), 2 * k - 2);
    });
  }
  static PhiFamily custom(Fn fn, std::string label = "custom") {
    return PhiFamily(PhiKind::Custom, std::move(label), std::move(fn));
  }

  PhiKind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  Real operator()(int k, std::size_t n) const { return fn_(k, n); }

 private:
  PhiFamily(PhiKind kind, std::string label, Fn fn)
      : kind_(kind), label_(std::move(label)), fn_(std::move(fn)) {}

  PhiKind kind_;
  std::string label_;
  Fn fn_;
};

template <RealNumber Real>
struct MethodSpec {
  Method kind = Method::S;
  Real b{1};
  std::optional<PhiFamily<Real>> phi;
  Realization realization = Realization::PqRecurrence;

  void validate() const {
    if (!(Real(0) < b)) throw Error("shift parameter b must be > 0");
    if (kind == Method::SPhi && !phi) throw Error("method Sphi requires a phi family");
  }

  std::string label() const {
    if (kind == Method::SPhi) return "Sphi[" + (phi ? phi->label() : std::string("?")) + "]";
    return method_label(kind);
  }
};

/// Triangular table of approximants s_k^n, 0 <= k <= K, n + k + 1 <= M.
///
/// Entries that could not be formed (zero weight or denominator) are recorded
/// as failures; entries depending on them are absent. The rest of the table
/// stays valid.
template <RealNumber Real>
class TransformTable {
 public:
  enum class FailureKind { ZeroWeight, ZeroDenominator, Dependent };
  struct Failure {
    int k;
    std::size_t n;
    FailureKind kind;
  };

  TransformTable(int max_order, std::size_t budget) : max_order_(max_order), budget_(budget) {
    if (max_order < 0) throw RangeError("transformation order must be >= 0");
    if (budget < static_cast<std::size_t>(max_order) + 1)
      throw RangeError("term budget M=" + std::to_string(budget) + " must be >= K+1=" +
                       std::to_string(max_order + 1));
    entries_.resize(max_order + 1);
    weights_.resize(max_order + 1);
    for (int k = 0; k <= max_order; ++k) {
      entries_[k].resize(row_size(k));
      weights_[k].resize(row_size(k));
    }
  }

  int max_order() const noexcept { return max_order_; }
  std::size_t budget() const noexcept { return budget_; }
  std::size_t row_size(int k) const noexcept { return budget_ - static_cast<std::size_t>(k); }

  /// (k, n) is inside the budget shape.
  bool contains(int k, std::size_t n) const noexcept {
    return k >= 0 && k <= max_order_ && n < row_size(k);
  }
  bool has(int k, std::size_t n) const noexcept {
    return contains(k, n) && entries_[k][n].has_value();
  }
  std::optional<Real> get(int k, std::size_t n) const {
    if (!contains(k, n)) return std::nullopt;
    return entries_[k][n];
  }

  const Real& at(int k, std::size_t n) const {
    if (!contains(k, n))
      throw RangeError("s_" + std::to_string(k) + "^" + std::to_string(n) +
                       " lies outside the table (K=" + std::to_string(max_order_) +
                       ", M=" + std::to_string(budget_) + ")");
    if (const auto& e = entries_[k][n]) return *e;
    for (const auto& f : failures_) {
      if (f.k != k || f.n != n) continue;
      if (f.kind == FailureKind::ZeroWeight) throw DegenerateWeightError(k, n);
      if (f.kind == FailureKind::ZeroDenominator) throw DegenerateDenominatorError(k, n);
    }
    throw RangeError("s_" + std::to_string(k) + "^" + std::to_string(n) +
                     " depends on a degenerate entry");
  }

  bool has_weight(int k, std::size_t n) const noexcept {
    return k >= 1 && contains(k, n) && weights_[k][n].has_value();
  }
  /// phi_k^n of the convex-combination step that produced s_k^n.
  const Real& weight(int k, std::size_t n) const {
    if (!has_weight(k, n))
      throw RangeError("no weight phi_" + std::to_string(k) + "^" + std::to_string(n));
    return *weights_[k][n];
  }

  const std::vector<Failure>& failures() const noexcept { return failures_; }

  void set(int k, std::size_t n, Real value) { entries_.at(k).at(n) = std::move(value); }
  void set_weight(int k, std::size_t n, Real value) { weights_.at(k).at(n) = std::move(value); }
  void fail(int k, std::size_t n, FailureKind kind) {
    entries_.at(k).at(n).reset();
    if (kind != FailureKind::Dependent) failures_.push_back({k, n, kind});
  }

 private:
  int max_order_;
  std::size_t budget_;
  std::vector<std::vector<std::optional<Real>>> entries_;
  std::vector<std::vector<std::optional<Real>>> weights_;
  std::vector<Failure> failures_;
};

namespace detail {

template <RealNumber Real>
TransformTable<Real> table_with_sums(const SeriesTerms<Real>& terms, int K) {
  TransformTable<Real> table(K, terms.budget());
  for (std::size_t n = 0; n < table.row_size(0); ++n) table.set(0, n, terms.sum(n));
  return table;
}

/// One convex-combination step s_k^n from s_{k-1}^n, s_{k-1}^{n+1}.
template <RealNumber Real>
void convex_step(TransformTable<Real>& table, int k, std::size_t n, const Real& beta,
                 const Real& phi) {
  table.set_weight(k, n, phi);
  const auto lo = table.get(k - 1, n);
  const auto hi = table.get(k - 1, n + 1);
  const Real den = beta + phi;
  if (den == Real(0)) {
    table.fail(k, n, TransformTable<Real>::FailureKind::ZeroWeight);
    return;
  }
  if (!lo || !hi) {
    table.fail(k, n, TransformTable<Real>::FailureKind::Dependent);
    return;
  }
  table.set(k, n, (beta * *lo + phi * *hi) / den);
}

template <RealNumber Real>
Real binomial(int k, int j) {
  Real c(1);
  for (int i = 1; i <= j; ++i) c = c * Real(k - j + i) / Real(i);
  return c;
}

}  // namespace detail

/// Aitken's delta-squared on an arbitrary sequence: len-2 results.
template <RealNumber Real>
std::vector<Real> aitken(std::span<const Real> s) {
  if (s.size() < 3) throw RangeError("aitken needs at least 3 elements");
  std::vector<Real> out;
  out.reserve(s.size() - 2);
  for (std::size_t n = 0; n + 2 < s.size(); ++n) {
    const Real den = s[n + 2] - Real(2) * s[n + 1] + s[n];
    if (den == Real(0)) throw DegenerateDifferenceError(n);
    out.push_back((s[n] * s[n + 2] - s[n + 1] * s[n + 1]) / den);
  }
  return out;
}

/// Aitken's step written for partial sums of an alternating series:
/// the weighted average (alpha_{n+2} s_n + alpha_{n+1} s_{n+1}) / (alpha_{n+2} + alpha_{n+1}).
template <RealNumber Real>
Real aitken_alternating(const SeriesTerms<Real>& terms, std::size_t n) {
  if (n + 2 > terms.budget()) throw RangeError("aitken_alternating needs alpha_{n+2}");
  const Real& a1 = terms.alpha(n + 1);
  const Real& a2 = terms.alpha(n + 2);
  if (!(Real(0) < a1)) throw AlternationError(n + 1, "alpha must be positive");
  if (!(Real(0) < a2)) throw AlternationError(n + 2, "alpha must be positive");
  return (a2 * terms.sum(n) + a1 * terms.sum(n + 1)) / (a2 + a1);
}

template <RealNumber Real>
Real aitken_alternating(const AlternatingSeries<Real>& series, std::size_t n) {
  return aitken_alternating(SeriesTerms<Real>(series, n + 2), n);
}

/// Method S in the form s_k^n = (s_{k-1}^n + t s_{k-1}^{n+1}) / (1 + t) with
/// t_k^n = (n+2k-1) / ((n+1) beta_{n+1}).
template <RealNumber Real>
TransformTable<Real> method_s(const SeriesTerms<Real>& terms, int K) {
  auto table = detail::table_with_sums(terms, K);
  using Failure = typename TransformTable<Real>::FailureKind;
  for (int k = 1; k <= K; ++k) {
    for (std::size_t n = 0; n < table.row_size(k); ++n) {
      const long long m = static_cast<long long>(n);
      const Real& beta = terms.beta(n + 1);
      table.set_weight(k, n, Real(m + 2 * k - 1) / Real(m + 1));
      const Real t = Real(m + 2 * k - 1) / (Real(m + 1) * beta);
      const Real den = Real(1) + t;
      const auto lo = table.get(k - 1, n);
      const auto hi = table.get(k - 1, n + 1);
      if (den == Real(0)) {
        table.fail(k, n, Failure::ZeroWeight);
      } else if (!lo || !hi) {
        table.fail(k, n, Failure::Dependent);
      } else {
        table.set(k, n, (*lo + t * *hi) / den);
      }
    }
  }
  return table;
}

template <RealNumber Real>
TransformTable<Real> method_s(const AlternatingSeries<Real>& series, int K, std::size_t M) {
  return method_s(SeriesTerms<Real>(series, M), K);
}

/// Generalised method with an arbitrary weight family phi_k^n.
template <RealNumber Real>
TransformTable<Real> method_s_phi(const SeriesTerms<Real>& terms, const PhiFamily<Real>& phi,
                                  int K) {
  auto table = detail::table_with_sums(terms, K);
  for (int k = 1; k <= K; ++k)
    for (std::size_t n = 0; n < table.row_size(k); ++n)
      detail::convex_step(table, k, n, terms.beta(n + 1), phi(k, n));
  return table;
}

template <RealNumber Real>
TransformTable<Real> method_s_phi(const AlternatingSeries<Real>& series,
                                  const PhiFamily<Real>& phi, int K, std::size_t M) {
  return method_s_phi(SeriesTerms<Real>(series, M), phi, K);
}

/// Numerators p_k^n and denominators q_k^n of the Levin/Weniger recurrences
///   p_0^n = s_n, q_0^n = 1,
///   r_k^n = beta_{n+k} r_{k-1}^n + phi~_k^n r_{k-1}^{n+1}   (r = p, q).
/// In floating backends each completed row k is divided by max_n |q_k^n|;
/// `log10_scale[k]` records that factor (0 when unscaled).
template <RealNumber Real>
struct PqState {
  std::vector<std::vector<Real>> p;
  std::vector<std::vector<Real>> q;
  std::vector<double> log10_scale;
};

template <RealNumber Real>
PqState<Real> levin_weniger_state(const SeriesTerms<Real>& terms, Method method, const Real& b,
                                  int K, bool with_numerators = true) {
  if (method != Method::Levin && method != Method::Weniger)
    throw Error("levin_weniger_state expects Levin or Weniger");
  if (!(Real(0) < b)) throw Error("shift parameter b must be > 0");
  if (terms.budget() < static_cast<std::size_t>(K) + 1) throw RangeError("term budget < K+1");
  const std::size_t M = terms.budget();
  PqState<Real> st;
  st.p.resize(K + 1);
  st.q.resize(K + 1);
  st.log10_scale.assign(K + 1, 0.0);
  if (with_numerators) st.p[0].assign(terms.sums().begin(), terms.sums().begin() + M);
  st.q[0].assign(M, Real(1));
  for (int k = 1; k <= K; ++k) {
    const std::size_t len = M - static_cast<std::size_t>(k);
    auto& p = st.p[k];
    auto& q = st.q[k];
    q.resize(len);
    if (with_numerators) p.resize(len);
    for (std::size_t n = 0; n < len; ++n) {
      const Real& beta = terms.beta(n + k);
      const Real phi = phi_tilde(method, k, n, b);
      q[n] = beta * st.q[k - 1][n] + phi * st.q[k - 1][n + 1];
      if (with_numerators) p[n] = beta * st.p[k - 1][n] + phi * st.p[k - 1][n + 1];
    }
    if constexpr (!is_exact_v<Real>) {
      Real big(0);
      for (const auto& v : q) {
        if (!is_finite(v)) throw OverflowError(k);
        if (big < abs_value(v)) big = abs_value(v);
      }
      if (big != Real(0)) {
        for (auto& v : q) v /= big;
        if (with_numerators)
          for (auto& v : p) {
            v /= big;
            if (!is_finite(v)) throw OverflowError(k);
          }
        st.log10_scale[k] = log10_abs(big);
      }
    }
  }
  return st;
}

/// Levin / Weniger through the p/q recurrences: s_k^n = p_k^n / q_k^n.
template <RealNumber Real>
TransformTable<Real> levin_weniger_pq(const SeriesTerms<Real>& terms, Method method,
                                      const Real& b, int K) {
  const auto st = levin_weniger_state(terms, method, b, K);
  auto table = detail::table_with_sums(terms, K);
  for (int k = 1; k <= K; ++k) {
    for (std::size_t n = 0; n < table.row_size(k); ++n) {
      const auto& qp = st.q[k - 1];
      if (qp[n] != Real(0))
        table.set_weight(k, n,
                         phi_tilde(method, k, n, b) * terms.beta(n + 1) / terms.beta(n + k) *
                             qp[n + 1] / qp[n]);
      if (st.q[k][n] == Real(0))
        table.fail(k, n, TransformTable<Real>::FailureKind::ZeroDenominator);
      else
        table.set(k, n, st.p[k][n] / st.q[k][n]);
    }
  }
  return table;
}

/// Levin / Weniger without numerators: the convex-combination recurrence with
/// phi_k^n = phi~_k^n (beta_{n+1}/beta_{n+k}) (q_{k-1}^{n+1}/q_{k-1}^n).
template <RealNumber Real>
TransformTable<Real> levin_weniger_direct(const SeriesTerms<Real>& terms, Method method,
                                          const Real& b, int K) {
  const auto st = levin_weniger_state(terms, method, b, K, /*with_numerators=*/false);
  auto table = detail::table_with_sums(terms, K);
  for (int k = 1; k <= K; ++k) {
    const auto& qp = st.q[k - 1];
    for (std::size_t n = 0; n < table.row_size(k); ++n) {
      if (qp[n] == Real(0)) {
        table.fail(k, n, TransformTable<Real>::FailureKind::ZeroDenominator);
        continue;
      }
      const Real& beta = terms.beta(n + 1);
      const Real phi = phi_tilde(method, k, n, b) * beta / terms.beta(n + k) * qp[n + 1] / qp[n];
      detail::convex_step(table, k, n, beta, phi);
    }
  }
  return table;
}

/// Explicit ratio of binomial sums with remainder estimates omega_m = a_{m+1}:
///   sum_j (-1)^j C(k,j) w(n+j) s_{n+j}/omega_{n+j} / sum_j (-1)^j C(k,j) w(n+j)/omega_{n+j}
/// where w(m) = (m+b)^{k-1} (Levin) or the Pochhammer symbol (m+b)_{k-1} (Weniger).
template <RealNumber Real>
Real levin_explicit(const SeriesTerms<Real>& terms, Method method, const Real& b, int k,
                    std::size_t n) {
  if (method != Method::Levin && method != Method::Weniger)
    throw Error("levin_explicit expects Levin or Weniger");
  if (k < 0) throw RangeError("order must be >= 0");
  if (n + static_cast<std::size_t>(k) + 1 > terms.budget())
    throw RangeError("levin_explicit needs alpha up to n+k+1");
  Real num(0), den(0);
  for (int j = 0; j <= k; ++j) {
    const std::size_t m = n + static_cast<std::size_t>(j);
    const Real mb = Real(static_cast<long long>(m)) + b;
    Real w(1);
    if (k >= 1) {
      if (method == Method::Levin) {
        w = pow_int(mb, k - 1);
      } else {
        for (int i = 0; i < k - 1; ++i) w *= mb + Real(i);
      }
    }
    // omega_m = a_{m+1} = (-1)^{m+1} alpha_{m+1}
    const Real& a = terms.alpha(m + 1);
    Real c = detail::binomial<Real>(k, j) * w / a;
    if ((j + static_cast<int>(m + 1)) % 2 != 0) c = -c;
    num += c * terms.sum(m);
    den += c;
  }
  if (den == Real(0)) throw DegenerateDenominatorError(k, n);
  return num / den;
}

template <RealNumber Real>
Real levin_explicit(const AlternatingSeries<Real>& series, Method method, const Real& b, int k,
                    std::size_t n) {
  return levin_explicit(SeriesTerms<Real>(series, n + static_cast<std::size_t>(k) + 1), method,
                        b, k, n);
}

template <RealNumber Real>
TransformTable<Real> levin_weniger_explicit(const SeriesTerms<Real>& terms, Method method,
                                            const Real& b, int K) {
  auto table = detail::table_with_sums(terms, K);
  for (int k = 1; k <= K; ++k)
    for (std::size_t n = 0; n < table.row_size(k); ++n) {
      try {
        table.set(k, n, levin_explicit(terms, method, b, k, n));
      } catch (const DegenerateDenominatorError&) {
        table.fail(k, n, TransformTable<Real>::FailureKind::ZeroDenominator);
      }
    }
  return table;
}

template <RealNumber Real>
TransformTable<Real> levin_weniger(const SeriesTerms<Real>& terms, Method method, const Real& b,
                                   int K, Realization realization = Realization::PqRecurrence) {
  switch (realization) {
    case Realization::Explicit: return levin_weniger_explicit(terms, method, b, K);
    case Realization::DirectPhi: return levin_weniger_direct(terms, method, b, K);
    case Realization::PqRecurrence: break;
  }
  return levin_weniger_pq(terms, method, b, K);
}

template <RealNumber Real>
TransformTable<Real> levin_weniger(const AlternatingSeries<Real>& series, Method method,
                                   const Real& b, int K, std::size_t M,
                                   Realization realization = Realization::PqRecurrence) {
  return levin_weniger(SeriesTerms<Real>(series, M), method, b, K, realization);
}

/// Table for any method. Aitken fills rows 0 and 1 only.
template <RealNumber Real>
TransformTable<Real> transform(const SeriesTerms<Real>& terms, const MethodSpec<Real>& spec,
                               int K) {
  spec.validate();
  switch (spec.kind) {
    case Method::Aitken: {
      auto table = detail::table_with_sums(terms, std::min(K, 1));
      if (K >= 1)
        for (std::size_t n = 0; n < table.row_size(1); ++n) {
          table.set_weight(1, n, Real(1));
          table.set(1, n, aitken_alternating(terms, n));
        }
      return table;
    }
    case Method::S: return method_s(terms, K);
    case Method::SPhi: return method_s_phi(terms, *spec.phi, K);
    case Method::Levin:
    case Method::Weniger: return levin_weniger(terms, spec.kind, spec.b, K, spec.realization);
  }
  throw Error("unknown method");
}

template <RealNumber Real>
TransformTable<Real> transform(const AlternatingSeries<Real>& series,
                               const MethodSpec<Real>& spec, int K, std::size_t M) {
  return transform(SeriesTerms<Real>(series, M), spec, K);
}

}  // namespace accel
