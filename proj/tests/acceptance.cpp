// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "accelseries/builtins.hpp"
#include "accelseries/diagnostics.hpp"
#include "accelseries/transforms.hpp"
#include "oracles.hpp"

using namespace accel;
using oracle::q;

namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> failures;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<Method> kSLW{Method::S, Method::Levin, Method::Weniger};

// 1. D_1 and D_2 closed forms for alpha_n = 1/(n+1).
Verdict closed_form_oracle() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const SeriesTerms<Rational> terms(builtin<Rational>("example3"), 24);
  for (Method m : kSLW) {
    const auto table = transform(terms, MethodSpec<Rational>{m}, 2);
    for (long long n = 0; n <= 20; ++n) {
      v.require(d_value(terms, table, 1, n) == oracle::harmonic_d1(n),
                std::string("D_1 ") + method_label(m) + " n=" + std::to_string(n));
      const Rational d2 = m == Method::S ? oracle::harmonic_d2_s(n) : oracle::harmonic_d2_levin(n);
      v.require(d_value(terms, table, 2, n) == d2,
                std::string("D_2 ") + method_label(m) + " n=" + std::to_string(n));
    }
  }
  const double dt = seconds_since(t0);
  v.require(dt < 1.0, "runtime " + std::to_string(dt) + " s");
  v.summary = "n=0..20, S/L/W, " + std::to_string(dt) + " s";
  return v;
}

// 2. Approximants of 1 - 2 + 3 - 4 + ...
Verdict divergent_closed_forms() {
  Verdict v;
  const auto series = builtin<Rational>("arith_geometric", {.x = "1"});
  const auto s = method_s(series, 3, 24);
  const auto lev = levin_weniger(series, Method::Levin, Rational(1), 3, 24);
  const auto wen = levin_weniger(series, Method::Weniger, Rational(1), 3, 24);
  int levin3_mismatches = 0;
  for (long long n = 0; n <= 20; ++n) {
    const std::string at = " n=" + std::to_string(n);
    v.require(s.at(1, n) == oracle::s_method_s1(n), "S s_1" + at);
    v.require(s.at(2, n) == oracle::s_method_s2(n), "S s_2" + at);
    v.require(s.at(3, n) == oracle::s_method_s3(n), "S s_3" + at);
    v.require(lev.at(2, n) == oracle::s_levin2(n), "L s_2" + at);
    if (lev.at(3, n) != oracle::s_levin3_printed(n)) ++levin3_mismatches;
    v.require(wen.at(3, n) == q(1, 4), "W s_3" + at);
  }
  v.require(levin3_mismatches == 0,
            "L s_3 differs from the printed closed form at " + std::to_string(levin3_mismatches) +
                "/21 indices (computed s_3^0 = " + format_number(lev.at(3, 0)) +
                "; printed form gives " + format_number(oracle::s_levin3_printed(0)) +
                "; the sign-flipped form matches all 21)");
  v.summary = "n=0..20";
  return v;
}

struct ReferenceTable {
  const char* series;
  std::vector<std::vector<double>> rows;  // S, L, W for k = 3..15
};

const std::vector<ReferenceTable>& reference_tables() {
  static const std::vector<ReferenceTable> tables = {
      {"example1",
       {{3.6, 5.1, 6.1, 7.0, 8.7, 9.2, 10.4, 11.6, 12.5, 14.1, 14.6, 17.1, 16.8},
        {3.9, 5.6, 6.1, 7.4, 9.1, 9.7, 11.1, 12.8, 13.4, 14.8, 16.6, 17.2, 18.7},
        {5.1, 5.1, 6.2, 7.6, 9.2, 10.2, 10.9, 11.7, 12.7, 13.6, 14.5, 15.5, 16.4}}},
      {"example2",
       {{4.0, 5.2, 7.1, 7.7, 8.9, 10.4, 11.1, 13.1, 13.4, 14.8, 15.7, 16.9, 18.0},
        {4.1, 5.4, 7.0, 8.1, 9.1, 10.4, 13.9, 12.9, 14.0, 15.8, 16.7, 17.7, 19.0},
        {4.7, 5.9, 7.5, 10.2, 10.2, 11.2, 12.3, 13.4, 14.5, 15.5, 16.6, 17.6, 18.7}}},
      {"example3",
       {{3.9, 5.3, 7.0, 7.6, 9.5, 10.0, 11.4, 12.4, 13.5, 14.7, 15.7, 17.1, 17.9},
        {4.0, 5.3, 7.0, 8.1, 9.1, 10.5, 12.3, 12.8, 14.1, 17.0, 16.6, 17.8, 18.8},
        {4.9, 5.9, 7.2, 8.6, 10.1, 11.6, 13.1, 14.6, 16.1, 17.6, 19.0, 19.0, 19.0}}},
      {"example4",
       {{4.2, 5.3, 6.6, 8.3, 9.7, 10.8, 13.2, 13.5, 15.0, 16.3, 17.4, 18.3, 18.4},
        {4.1, 5.1, 6.2, 7.5, 8.8, 10.2, 11.8, 13.9, 15.0, 16.2, 17.9, 19.0, 18.6},
        {4.3, 6.4, 7.8, 9.4, 11.1, 12.8, 14.6, 16.4, 18.0, 19.0, 18.8, 18.8, 18.6}}},
      {"example5",
       {{4.7, 7.2, 7.8, 9.9, 10.8, 12.6, 13.8, 15.4, 16.9, 18.5, 18.1, 18.1, 18.1},
        {4.4, 5.7, 7.2, 8.8, 10.5, 12.4, 14.9, 17.6, 17.6, 18.1, 18.1, 18.1, 18.1},
        {5.5, 7.0, 8.4, 9.8, 11.1, 12.3, 13.5, 14.6, 15.8, 17.0, 19.0, 18.1, 18.1}}},
      {"example6",
       {{4.4, 5.9, 7.2, 7.8, 8.6, 9.4, 10.3, 11.1, 11.9, 12.7, 13.5, 14.2, 15.0},
        {4.5, 5.8, 6.8, 7.6, 8.3, 9.1, 9.9, 10.6, 11.3, 12.1, 12.8, 13.5, 14.1},
        {5.2, 6.3, 7.8, 8.7, 10.0, 10.6, 12.5, 12.4, 14.4, 14.2, 15.8, 16.0, 17.3}}},
      {"example7",
       {{2.2, 3.0, 4.0, 5.1, 6.1, 7.2, 8.4, 9.6, 10.7, 11.9, 13.4, 14.5, 15.8},
        {2.3, 3.3, 4.6, 6.6, 6.8, 8.0, 9.7, 10.0, 10.9, 12.0, 13.0, 13.8, 14.7},
        {3.1, 3.6, 4.4, 5.2, 6.1, 7.0, 7.9, 8.7, 9.5, 10.4, 11.2, 12.0, 12.9}}},
  };
  return tables;
}

// Entries <= 13.0 within 0.3; larger entries within 1.5 or at the cap.
void compare_table(const ReferenceTable& expected_table, Verdict& v, double& worst_low, std::string& timing) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto series = builtin<Extended>(expected_table.series);
  const SeriesTerms<Extended> terms(series, 16);
  for (std::size_t r = 0; r < kSLW.size(); ++r) {
    const auto table = transform(terms, MethodSpec<Extended>{kSLW[r]}, 15);
    const auto row = digits_row(table, 3, 15, *series.known_limit());
    for (std::size_t i = 0; i < row.digits.size(); ++i) {
      const double expected = expected_table.rows[r][i];
      const double got = std::stod(format_digits(row.digits[i]));
      const double diff = std::abs(got - expected);
      const bool ok = expected <= 13.0 ? diff <= 0.3 + 1e-9
                                       : diff <= 1.5 + 1e-9 || got >= row.cap;
      if (expected <= 13.0) worst_low = std::max(worst_low, diff);
      std::ostringstream what;
      what << expected_table.series << ' ' << method_label(kSLW[r]) << " k=" << i + 3 << ": got " << got
           << ", table " << expected;
      v.require(ok, what.str());
    }
  }
  const double dt = seconds_since(t0);
  v.require(dt < 1.0, std::string(expected_table.series) + " runtime " + std::to_string(dt) + " s");
  std::ostringstream os;
  os.precision(3);
  os << expected_table.series << ' ' << dt << "s ";
  timing += os.str();
}

Verdict tables(std::size_t first, std::size_t last) {
  Verdict v;
  double worst_low = 0;
  std::string timing;
  for (std::size_t i = first; i <= last; ++i) compare_table(reference_tables()[i], v, worst_low, timing);
  std::ostringstream os;
  os << "max |diff| on entries <= 13.0: " << format_digits(worst_low) << "; " << timing;
  v.summary = os.str();
  if (last == 6) v.summary += "; d~ row skipped (out of scope)";
  return v;
}

template <RealNumber Real>
void cross_method(const char* name, double tol, Verdict& v) {
  const SeriesTerms<Real> terms(builtin<Real>(name), 33);
  std::vector<TransformTable<Real>> rows;
  std::vector<std::string> labels;
  for (Method m : {Method::S, Method::Aitken, Method::Levin, Method::Weniger}) {
    rows.push_back(transform(terms, MethodSpec<Real>{m}, 2));
    labels.push_back(method_label(m));
  }
  for (auto phi : {PhiFamily<Real>::levin_tilde(), PhiFamily<Real>::weniger_tilde(),
                   PhiFamily<Real>::ratio_powers(), PhiFamily<Real>::two_point_powers()}) {
    rows.push_back(method_s_phi(terms, phi, 2));
    labels.push_back("Sphi[" + phi.label() + "]");
  }
  for (std::size_t n = 0; n <= 30; ++n) {
    const Real& ref = rows[0].at(1, n);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const Real& got = rows[i].at(1, n);
      const bool ok = is_exact_v<Real> ? got == ref
                                       : to_double(rel_error(got, ref)) <= tol;
      v.require(ok, std::string(name) + " s_1 " + labels[i] + " n=" + std::to_string(n));
    }
    if constexpr (is_exact_v<Real>)
      v.require(rows[2].at(2, n) == rows[3].at(2, n),
                std::string(name) + " s_2 L!=W n=" + std::to_string(n));
  }
}

// 5. Row 1 universal, row 2 shared by L and W.
Verdict cross_method_equalities() {
  Verdict v;
  for (const char* name : {"example1", "example3"}) {
    cross_method<Rational>(name, 0.0, v);
    cross_method<double>(name, 1e-12, v);
  }
  v.summary = "example1, example3, n=0..30, rational and binary64";
  return v;
}

// 6. Explicit, p/q and direct-phi realizations.
Verdict realization_equivalence() {
  Verdict v;
  const SeriesTerms<Rational> terms(builtin<Rational>("example3"), 17);
  for (Method m : {Method::Levin, Method::Weniger}) {
    const auto pq = levin_weniger(terms, m, Rational(1), 6, Realization::PqRecurrence);
    const auto ex = levin_weniger(terms, m, Rational(1), 6, Realization::Explicit);
    const auto dp = levin_weniger(terms, m, Rational(1), 6, Realization::DirectPhi);
    for (int k = 0; k <= 6; ++k)
      for (std::size_t n = 0; n <= 10; ++n) {
        const std::string at = std::string(method_label(m)) + " k=" + std::to_string(k) +
                               " n=" + std::to_string(n);
        v.require(pq.at(k, n) == ex.at(k, n), "explicit " + at);
        v.require(pq.at(k, n) == dp.at(k, n), "direct " + at);
      }
  }
  v.summary = "k<=6, n<=10, exact";
  return v;
}

// 7. n^2 D_1 and n^4 D_2 scaling on example3 with 30 digits.
Verdict theorem1_scaling_check() {
  Verdict v;
  const auto series = builtin<Float30>("example3");
  std::ostringstream os;
  os.precision(5);
  for (Method m : kSLW) {
    const MethodSpec<Float30> spec{m};
    for (const auto& s : theorem1_scaling(series, spec, 1, {100, 1000})) {
      const double value = to_double(s.value);
      v.require(std::abs(value + 0.25) <= 2.0 / s.n,
                std::string(method_label(m)) + " n^2 D_1 at n=" + std::to_string(s.n));
    }
    const double d2 = to_double(theorem1_scaling(series, spec, 2, {1000}).front().value);
    const bool ok = m == Method::S ? (-0.40 <= d2 && d2 <= -0.25) : (-0.30 <= d2 && d2 <= -0.20);
    v.require(ok, std::string(method_label(m)) + " n^4 D_2 at 1000 = " + std::to_string(d2));
    os << method_label(m) << " n^4 D_2(1000)=" << d2 << ' ';
  }
  v.summary = os.str();
  return v;
}

// 8. Scaling, translation, convex bounds, Lemma 2, and the s_1 identity.
Verdict property_suite() {
  Verdict v;
  const Rational c = q(7, 3);
  const Rational delta = q(5, 11);
  for (const auto& [name, params] : {std::pair<std::string, SeriesParams>{"example3", {}},
                                     {"arith_geometric", {.x = "1"}}}) {
    const auto base = builtin<Rational>(name, params);
    const SeriesTerms<Rational> terms(base, 18);
    const SeriesTerms<Rational> scaled(base.scaled(c), 18);
    const SeriesTerms<Rational> shifted(base.shifted_first(delta), 18);
    for (Method m : kSLW) {
      const MethodSpec<Rational> spec{m};
      const auto t = transform(terms, spec, 6);
      const auto ts = transform(scaled, spec, 6);
      const auto tt = transform(shifted, spec, 6);
      for (int k = 0; k <= 6; ++k)
        for (std::size_t n = 0; n < t.row_size(k); ++n) {
          const std::string at = name + ' ' + method_label(m) + " k=" + std::to_string(k) +
                                 " n=" + std::to_string(n);
          v.require(ts.at(k, n) == c * t.at(k, n), "scaling " + at);
          v.require(tt.at(k, n) == t.at(k, n) + delta, "translation " + at);
          if (m == Method::S && k >= 1) {
            const auto& a = t.at(k - 1, n);
            const auto& b = t.at(k - 1, n + 1);
            const auto lo = a < b ? a : b;
            const auto hi = a < b ? b : a;
            v.require(!(t.at(k, n) < lo) && !(hi < t.at(k, n)), "convex bound " + at);
          }
        }
      const auto t5 = transform(terms, spec, 5);
      for (int k = 1; k <= 5; ++k)
        for (std::size_t n = 0; n <= 10; ++n)
          v.require(lemma2_check(terms, t5, k, n) == 0,
                    "lemma2 " + name + ' ' + method_label(m) + " k=" + std::to_string(k) +
                        " n=" + std::to_string(n));
    }
    const auto s1 = method_s(terms, 1);
    for (std::size_t n = 0; n <= 15; ++n)
      v.require(delta_s1_identity(terms, s1, n) == 0, "s_1 identity " + name + " n=" + std::to_string(n));
  }
  v.summary = "example3, arith_geometric(x=1), exact";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "closed-form D_1, D_2 oracle", closed_form_oracle},
      {"AC2", "divergent-series closed forms", divergent_closed_forms},
      {"AC3", "digit tables, examples 1-5", [] { return tables(0, 4); }},
      {"AC4", "digit tables, examples 6-7", [] { return tables(5, 6); }},
      {"AC5", "cross-method equalities", cross_method_equalities},
      {"AC6", "realization equivalence", realization_equivalence},
      {"AC7", "n^{2k} D_k scaling", theorem1_scaling_check},
      {"AC8", "property suite", property_suite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.id << "  " << c.title;
    if (!v.summary.empty()) std::cout << "  [" << v.summary << ']';
    std::cout << '\n';
    const std::size_t shown = std::min<std::size_t>(v.failures.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) std::cout << "       - " << v.failures[i] << '\n';
    if (v.failures.size() > shown)
      std::cout << "       - ... " << v.failures.size() - shown << " more\n";
    if (!v.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << '/' << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
