#pragma once

// Diagnostic quantities of a transformation table
//
//     D_k^n = (-1)^{n+k+1} (s_k^{n+1} - s_k^n) / alpha_{n+1}
//     B_k^n = beta_{n+1} / (beta_{n+1} + phi_k^n)
//
// and empirical checks of the identities and asymptotic laws they satisfy.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "accelseries/errors.hpp"
#include "accelseries/numeric.hpp"
#include "accelseries/series.hpp"
#include "accelseries/transforms.hpp"

namespace accel {

template <RealNumber Real>
Real d_value(const SeriesTerms<Real>& terms, const TransformTable<Real>& table, int k,
             std::size_t n) {
  if (!table.has(k, n) || !table.has(k, n + 1))
    throw RangeError("D_" + std::to_string(k) + "^" + std::to_string(n) + " needs s_k^n and s_k^{n+1}");
  Real d = (table.at(k, n + 1) - table.at(k, n)) / terms.alpha(n + 1);
  if ((n + static_cast<std::size_t>(k) + 1) % 2 != 0) d = -d;
  return d;
}

template <RealNumber Real>
Real b_value(const SeriesTerms<Real>& terms, const TransformTable<Real>& table, int k,
             std::size_t n) {
  const Real& beta = terms.beta(n + 1);
  return beta / (beta + table.weight(k, n));
}

template <RealNumber Real>
class DiagnosticTable {
 public:
  DiagnosticTable(int max_order, std::size_t max_index)
      : max_order_(max_order),
        max_index_(max_index),
        d_(max_order + 1, std::vector<Real>(max_index + 1)),
        b_(max_order + 1, std::vector<std::optional<Real>>(max_index + 1)) {}

  int max_order() const noexcept { return max_order_; }
  std::size_t max_index() const noexcept { return max_index_; }

  const Real& D(int k, std::size_t n) const { return d_.at(k).at(n); }
  bool has_B(int k, std::size_t n) const { return k >= 1 && b_.at(k).at(n).has_value(); }
  const Real& B(int k, std::size_t n) const {
    if (!has_B(k, n)) throw RangeError("B_k^n unavailable (k=0 or table without weights)");
    return *b_[k][n];
  }
  /// x/(x+1), the limit of B_k^n, when the series carries asymptotic parameters.
  const std::optional<Real>& xi() const noexcept { return xi_; }

  Real& D_ref(int k, std::size_t n) { return d_.at(k).at(n); }
  void set_B(int k, std::size_t n, Real v) { b_.at(k).at(n) = std::move(v); }
  void set_xi(Real v) { xi_ = std::move(v); }

 private:
  int max_order_;
  std::size_t max_index_;
  std::vector<std::vector<Real>> d_;
  std::vector<std::vector<std::optional<Real>>> b_;
  std::optional<Real> xi_;
};

/// D_k^n (and B_k^n where the table has weights) for 0 <= k <= K, 0 <= n <= N.
template <RealNumber Real>
DiagnosticTable<Real> d_table(const SeriesTerms<Real>& terms, const TransformTable<Real>& table,
                              int K, std::size_t N,
                              std::optional<AsymptoticParams> asymptotics = std::nullopt) {
  if (K > table.max_order()) throw RangeError("d_table: K exceeds the table order");
  DiagnosticTable<Real> out(K, N);
  for (int k = 0; k <= K; ++k)
    for (std::size_t n = 0; n <= N; ++n) {
      out.D_ref(k, n) = d_value(terms, table, k, n);
      if (k >= 1 && table.has_weight(k, n)) out.set_B(k, n, b_value(terms, table, k, n));
    }
  if (asymptotics) {
    const Real x(asymptotics->x);
    out.set_xi(x / (x + Real(1)));
  }
  return out;
}

template <RealNumber Real>
DiagnosticTable<Real> d_table(const AlternatingSeries<Real>& series,
                              const TransformTable<Real>& table, int K, std::size_t N) {
  return d_table(SeriesTerms<Real>(series, table.budget()), table, K, N, series.asymptotics());
}

/// D_k^n - [beta_{n+1} (1 - B_k^{n+1}) D_{k-1}^{n+1} - B_k^n D_{k-1}^n]; zero in exact arithmetic.
template <RealNumber Real>
Real lemma2_check(const SeriesTerms<Real>& terms, const TransformTable<Real>& table, int k,
                  std::size_t n) {
  if (k < 1) throw RangeError("lemma2_check requires k >= 1");
  const Real lhs = d_value(terms, table, k, n);
  const Real rhs =
      terms.beta(n + 1) * (Real(1) - b_value(terms, table, k, n + 1)) *
          d_value(terms, table, k - 1, n + 1) -
      b_value(terms, table, k, n) * d_value(terms, table, k - 1, n);
  return lhs - rhs;
}

/// Delta s_1^n / alpha_{n+1} - (-1)^n beta_{n+1} Delta(1 / (1 + beta_{n+1})).
template <RealNumber Real>
Real delta_s1_identity(const SeriesTerms<Real>& terms, const TransformTable<Real>& table,
                       std::size_t n) {
  if (!table.has(1, n) || !table.has(1, n + 1))
    throw RangeError("delta_s1_identity needs s_1^n and s_1^{n+1}");
  const Real lhs = (table.at(1, n + 1) - table.at(1, n)) / terms.alpha(n + 1);
  const Real& b1 = terms.beta(n + 1);
  const Real& b2 = terms.beta(n + 2);
  Real rhs = b1 * (Real(1) / (Real(1) + b2) - Real(1) / (Real(1) + b1));
  if (n % 2 != 0) rhs = -rhs;
  return lhs - rhs;
}

/// (D_k^n / D_k^{n+1}) / phi_{k+1}^n - 1, which decays like n^{-2}.
template <RealNumber Real>
Real theorem2_ratio(const SeriesTerms<Real>& terms, const TransformTable<Real>& table, int k,
                    std::size_t n) {
  const Real d0 = d_value(terms, table, k, n);
  const Real d1 = d_value(terms, table, k, n + 1);
  if (d0 == Real(0) || d1 == Real(0))
    throw DegenerateDiagnosticError("D_" + std::to_string(k) + " vanishes near n=" + std::to_string(n));
  return d0 / d1 / table.weight(k + 1, n) - Real(1);
}

template <RealNumber Real>
struct ScaledValue {
  std::size_t n;
  Real value;
};

/// n^{2k} D_k^n for each requested n. The table is built to max(n)+k+2 terms,
/// so large n needs a wide backend; PrecisionError is raised when rounding
/// noise in the differences exceeds 1e-3 of the difference itself.
template <RealNumber Real>
std::vector<ScaledValue<Real>> theorem1_scaling(const AlternatingSeries<Real>& series,
                                                const MethodSpec<Real>& spec, int k,
                                                const std::vector<std::size_t>& ns) {
  if (ns.empty()) return {};
  std::size_t top = 0;
  for (auto n : ns) top = std::max(top, n);
  const SeriesTerms<Real> terms(series, top + static_cast<std::size_t>(k) + 2);
  const auto table = transform(terms, spec, k);
  std::vector<ScaledValue<Real>> out;
  for (auto n : ns) {
    const Real d = d_value(terms, table, k, n);
    if constexpr (!is_exact_v<Real>) {
      const Real delta = abs_value(Real(table.at(k, n + 1) - table.at(k, n)));
      const Real noise = Real(static_cast<long long>(n + k + 2)) *
                         std::numeric_limits<Real>::epsilon() * abs_value(table.at(k, n));
      if (!(noise < delta * Real(1) / Real(1000)))
        throw PrecisionError("n^" + std::to_string(2 * k) + " D_" + std::to_string(k) + "^" +
                             std::to_string(n) + " is dominated by rounding; raise --digits");
    }
    out.push_back({n, d * pow_int(Real(static_cast<long long>(n)), 2 * k)});
  }
  return out;
}

/// |q_{k-1}^{n+1} / q_{k-1}^n - 1| n^2 for the Levin/Weniger denominators.
template <RealNumber Real>
Real lemma1_scaled(const SeriesTerms<Real>& terms, Method method, const Real& b, int k,
                   std::size_t n) {
  if (k < 1) throw RangeError("lemma1_scaled requires k >= 1");
  const auto st = levin_weniger_state(terms, method, b, k - 1, /*with_numerators=*/false);
  const auto& q = st.q.at(k - 1);
  if (n + 1 >= q.size()) throw RangeError("lemma1_scaled: n outside the term budget");
  const Real nn(static_cast<long long>(n));
  return abs_value(Real(q[n + 1] / q[n] - Real(1))) * nn * nn;
}

/// |phi_k^n / phi~_k^n - 1| n^2 using the weights stored by a L/W table.
template <RealNumber Real>
Real phi_closeness_scaled(const TransformTable<Real>& table, Method method, const Real& b, int k,
                          std::size_t n) {
  const Real nn(static_cast<long long>(n));
  return abs_value(Real(table.weight(k, n) / phi_tilde(method, k, n, b) - Real(1))) * nn * nn;
}

/// |phi_k^n - 1 - (2k-2)/n| n^2 for a weight family.
template <RealNumber Real>
Real phi_condition_scaled(const PhiFamily<Real>& phi, int k, std::size_t n) {
  const Real nn(static_cast<long long>(n));
  return abs_value(Real(phi(k, n) - Real(1) - Real(2 * k - 2) / nn)) * nn * nn;
}

/// |beta_{n+1} / beta_{n+k} - 1| n^2.
template <RealNumber Real>
Real beta_ratio_scaled(const SeriesTerms<Real>& terms, std::size_t n, int k) {
  const Real nn(static_cast<long long>(n));
  return abs_value(Real(terms.beta(n + 1) / terms.beta(n + static_cast<std::size_t>(k)) - Real(1))) *
         nn * nn;
}

/// Digit accuracy of s_k^0 for k in [k_first, k_last].
struct AccuracyRow {
  std::vector<int> orders;
  std::vector<double> digits;  // NaN where the entry is missing
  int cap = 0;
  bool absolute = false;  // reference was zero: -log10 |s~ - s| instead
};

/// -log10 |approx/reference - 1| capped at `cap` (exact hits report the cap).
template <RealNumber Real>
double digits_of(const Real& approx, const Real& reference, int cap, bool* absolute = nullptr) {
  Real err;
  if (reference == Real(0)) {
    if (absolute) *absolute = true;
    err = abs_value(Real(approx - reference));
  } else {
    err = rel_error(approx, reference);
  }
  if (err == Real(0)) return cap;
  return std::min(static_cast<double>(cap), -log10_abs(err));
}

template <RealNumber Real>
AccuracyRow digits_row(const TransformTable<Real>& table, int k_first, int k_last,
                       const Real& reference, int cap = digits10_v<Real>) {
  AccuracyRow row;
  row.cap = cap;
  for (int k = k_first; k <= k_last; ++k) {
    row.orders.push_back(k);
    if (!table.has(k, 0)) {
      row.digits.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    row.digits.push_back(digits_of(table.at(k, 0), reference, cap, &row.absolute));
  }
  return row;
}

/// One decimal place, halves rounded away from zero.
inline std::string format_digits(double d) {
  if (std::isnan(d)) return "-";
  const double r = std::round(d * 10.0) / 10.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", r);
  return buf;
}

}  // namespace accel
