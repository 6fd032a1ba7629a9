#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accelseries/errors.hpp"
#include "accelseries/numeric.hpp"
#include "accelseries/series.hpp"

namespace accel {

/// Decimal-string parameters so that rational backends see exact values.
struct SeriesParams {
  std::optional<std::string> x;
  std::optional<std::string> rho;
  std::vector<std::string> a;  // numerator parameters of pFq
  std::vector<std::string> b;  // denominator parameters of pFq
};

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "example1", "example2", "example3",       "example4",    "example5",
      "example6", "example7", "geometric",      "arith_geometric",
      "one_f_zero", "hypergeometric_pFq"};
  return names;
}

namespace detail {

// Reference sums with no closed form, computed to 60 digits by two
// independent summation routes.
inline constexpr const char* kExample6Limit =
    "0.811396827043132432631474790877009930595158873740141218543528";
inline constexpr const char* kExample7Limit =
    "-0.0204906107716553337761206662510629007400009653250825424315151";

inline void check_params(std::string_view name, const SeriesParams& p, bool x, bool rho,
                         bool lists) {
  const auto reject = [&](const char* what) {
    throw RegistryError("series '" + std::string(name) + "' does not take parameter " + what);
  };
  if (p.x && !x) reject("x");
  if (p.rho && !rho) reject("rho");
  if ((!p.a.empty() || !p.b.empty()) && !lists) reject("a/b lists");
}

template <RealNumber Real>
Real positive_param(std::string_view series, const char* what, const std::string& text) {
  Real v;
  try {
    v = parse_decimal<Real>(text);
  } catch (const ParseError& e) {
    throw RegistryError("series '" + std::string(series) + "': " + what + ": " + e.what());
  }
  if (!(Real(0) < v))
    throw RegistryError("series '" + std::string(series) + "': " + what + " must be > 0");
  return v;
}

template <RealNumber Real>
void require_float(std::string_view name) {
  if constexpr (is_exact_v<Real>) throw IrrationalTermError(std::string(name));
}

}  // namespace detail

/// Builds a registered series. Unknown names or bad parameters raise
/// RegistryError; series with irrational terms raise IrrationalTermError in
/// the rational backend.
template <RealNumber Real>
AlternatingSeries<Real> builtin(std::string_view name, const SeriesParams& params = {}) {
  using Series = AlternatingSeries<Real>;
  const std::string id(name);
  const auto x_or = [&](const char* fallback) {
    return detail::positive_param<Real>(name, "x", params.x.value_or(fallback));
  };

  if (name == "example1") {
    detail::check_params(name, params, false, false, false);
    auto s = Series::from_terms(id, [](std::size_t n) {
                const Real nn(static_cast<long long>(n));
                return Real(1) / (nn * nn + Real(1));
              }).with_asymptotics({1.0, -2.0, 1});
    if constexpr (!is_exact_v<Real>) {
      using M = math<Real>;
      const Real pi = M::pi();
      s = s.with_known_limit(Real(1) / 2 + pi / (Real(2) * M::sinh(pi)));
    }
    return s;
  }
  if (name == "example2") {
    detail::check_params(name, params, false, false, false);
    // (2n+1)! / (4^n ((n+1)!)^2)
    auto s = Series::from_ratio(id, Real(1), [](std::size_t n) {
                const long long m = static_cast<long long>(n);
                return Real((2 * m + 3) * (m + 1)) / Real(2 * (m + 2) * (m + 2));
              }).with_asymptotics({1.0, -1.5, 1});
    if constexpr (!is_exact_v<Real>) {
      using M = math<Real>;
      const Real half = Real(1) / 2;
      s = s.with_known_limit(Real(4) * M::log(half + M::sqrt(half)));
    }
    return s;
  }
  if (name == "example3") {
    detail::check_params(name, params, false, false, false);
    auto s = Series::from_terms(id, [](std::size_t n) {
                return Real(1) / Real(static_cast<long long>(n) + 1);
              }).with_asymptotics({1.0, -1.0, 1});
    if constexpr (!is_exact_v<Real>) s = s.with_known_limit(math<Real>::log(Real(2)));
    return s;
  }
  if (name == "example4") {
    // (2n+2)! x^n / (4^n n! (n+2)!); x = 2/3 is the registered example.
    detail::check_params(name, params, true, false, false);
    const Real x = params.x ? x_or("") : Real(2) / 3;
    auto s = Series::from_ratio(id, Real(1), [x](std::size_t n) {
                const long long m = static_cast<long long>(n);
                return Real((2 * m + 4) * (2 * m + 3)) * x / Real(4 * (m + 1) * (m + 3));
              }).with_asymptotics({to_double(x), -0.5, 1});
    if constexpr (!is_exact_v<Real>) {
      using M = math<Real>;
      const Real root = M::sqrt(Real(1) + x);
      const Real c = root - Real(1);
      s = s.with_known_limit(Real(4) * c * c / (x * x * root));
    }
    return s;
  }
  if (name == "example5") {
    detail::check_params(name, params, false, false, false);
    detail::require_float<Real>(name);
    if constexpr (!is_exact_v<Real>) {
      using M = math<Real>;
      auto term = [](std::size_t n) {
        return M::sqrt(Real(static_cast<long long>(n) + 1)) *
               pow_int(Real(1) / 2, static_cast<long long>(n));
      };
      // Geometric convergence: sum until terms fall below the working precision.
      Real sum(0);
      for (std::size_t n = 0;; ++n) {
        const Real t = term(n);
        sum += (n % 2 == 0) ? t : Real(-t);
        if (n > 8 && t < M::epsilon() * abs_value(sum) / 64) break;
      }
      return Series::from_terms(id, term).with_asymptotics({0.5, 0.5, 1}).with_known_limit(sum);
    }
  }
  if (name == "example6") {
    detail::check_params(name, params, false, false, false);
    detail::require_float<Real>(name);
    if constexpr (!is_exact_v<Real>) {
      using M = math<Real>;
      return Series::from_terms(id,
                                [](std::size_t n) {
                                  const Real nn(static_cast<long long>(n));
                                  return Real(1) / (nn + M::sqrt(nn) + M::cbrt(nn + Real(1)));
                                })
          .with_asymptotics({1.0, -1.0, 6})
          .with_known_limit(parse_decimal<Real>(detail::kExample6Limit));
    }
  }
  if (name == "example7") {
    detail::check_params(name, params, false, false, false);
    detail::require_float<Real>(name);
    if constexpr (!is_exact_v<Real>) {
      using M = math<Real>;
      const Real e = M::e();
      return Series::from_terms(id,
                                [e](std::size_t n) {
                                  const Real nn(static_cast<long long>(n));
                                  if (n == 0) return Real(0);
                                  const Real m = nn + Real(1);
                                  return M::pow(nn, e) / (nn + m * m * m * M::sqrt(m));
                                })
          .with_asymptotics({1.0, to_double(e) - 3.5, 2})
          .with_known_limit(parse_decimal<Real>(detail::kExample7Limit));
    }
  }
  if (name == "geometric") {
    detail::check_params(name, params, true, false, false);
    const Real x = x_or("1");
    auto s = Series::from_ratio(id, Real(1), [x](std::size_t) { return x; })
                 .with_known_limit(Real(1) / (Real(1) + x));
    if (!(Real(1) < x)) s = s.with_asymptotics({to_double(x), 0.0, 1});
    return s;
  }
  if (name == "arith_geometric") {
    detail::check_params(name, params, true, false, false);
    const Real x = x_or("1");
    const Real d = Real(1) + x;
    auto s = Series::from_terms(id,
                                [x](std::size_t n) {
                                  return Real(static_cast<long long>(n) + 1) *
                                         pow_int(x, static_cast<long long>(n));
                                })
                 .with_known_limit(Real(1) / (d * d));
    if (!(Real(1) < x)) s = s.with_asymptotics({to_double(x), 1.0, 1});
    return s;
  }
  if (name == "one_f_zero") {
    // (1+x)^{-rho} = sum (rho)_n/n! (-x)^n; rho > 0 keeps every alpha_n positive.
    detail::check_params(name, params, true, true, false);
    if (!params.rho) throw RegistryError("series 'one_f_zero' requires rho");
    const Real rho = detail::positive_param<Real>(name, "rho", *params.rho);
    const Real x = x_or("1");
    auto s = Series::from_ratio(id, Real(1), [rho, x](std::size_t n) {
      const Real nn(static_cast<long long>(n));
      return (rho + nn) * x / (nn + Real(1));
    });
    if (!(Real(1) < x)) s = s.with_asymptotics({to_double(x), to_double(rho) - 1.0, 1});
    if constexpr (is_exact_v<Real>) {
      if (bmp::denominator(rho) == 1) {
        const auto k = static_cast<long long>(bmp::numerator(rho));
        s = s.with_known_limit(Real(1) / pow_int(Real(1) + x, k));
      }
    } else {
      s = s.with_known_limit(math<Real>::pow(Real(1) + x, Real(-rho)));
    }
    return s;
  }
  if (name == "hypergeometric_pFq") {
    // sum (a_1)_n..(a_p)_n / ((b_1)_n..(b_q)_n) x^n/n! (-1)^n with positive parameters.
    detail::check_params(name, params, true, false, true);
    if (params.a.empty()) throw RegistryError("series 'hypergeometric_pFq' requires a-list");
    std::vector<Real> a, b;
    for (const auto& t : params.a) a.push_back(detail::positive_param<Real>(name, "a", t));
    for (const auto& t : params.b) b.push_back(detail::positive_param<Real>(name, "b", t));
    const Real x = x_or("1");
    auto s = Series::from_ratio(id, Real(1), [a, b, x](std::size_t n) {
      const Real nn(static_cast<long long>(n));
      Real r = x / (nn + Real(1));
      for (const auto& ai : a) r *= ai + nn;
      for (const auto& bj : b) r /= bj + nn;
      return r;
    });
    if (a.size() == b.size() + 1 && !(Real(1) < x)) {
      double v = -1.0;
      for (const auto& ai : a) v += to_double(ai);
      for (const auto& bj : b) v -= to_double(bj);
      s = s.with_asymptotics({to_double(x), v, 1});
    }
    return s;
  }
  throw RegistryError("unknown series '" + id + "'");
}

}  // namespace accel
