#pragma once

// Command-line front end: option parsing, backend dispatch and rendering of
// approximation tables, digit tables and property checks.
//
//   accelseries sum          --series NAME | --terms-file PATH [options]
//   accelseries digits-table --series NAME | --terms-file PATH [options]
//   accelseries check        --property P --series NAME [options]

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "accelseries/builtins.hpp"
#include "accelseries/diagnostics.hpp"
#include "accelseries/errors.hpp"
#include "accelseries/numeric.hpp"
#include "accelseries/series.hpp"
#include "accelseries/transforms.hpp"

namespace accel::cli {

/// Invalid command line; reported with exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Command { Sum, DigitsTable, Check };
enum class OutputFormat { Table, Csv, Json };
enum class Backend { Float, Rational };
enum class Property { Theorem1, Theorem2, Lemma1, Lemma2, IdentityS1, Equivalences };

struct MethodChoice {
  Method kind = Method::S;
  std::string phi = "ratio_powers";  // family name, Sphi only
};

struct RunConfig {
  Command command = Command::Sum;
  std::string series;
  SeriesParams params;
  std::optional<std::string> terms_file;
  std::vector<MethodChoice> methods;  // empty: command default
  Realization realization = Realization::PqRecurrence;
  int kmax = 15;
  std::optional<std::size_t> terms;  // M; defaults to kmax + 1
  std::string b = "1";
  int digits = 19;
  Backend backend = Backend::Float;
  OutputFormat output = OutputFormat::Table;
  std::optional<std::string> reference;
  std::optional<Property> property;
  std::optional<int> k;
  std::vector<std::size_t> n_list;

  std::size_t budget() const { return terms.value_or(static_cast<std::size_t>(kmax) + 1); }

  /// Throws UsageError for any violated precondition.
  void validate() const {
    if (series.empty() == !terms_file.has_value())
      throw UsageError("exactly one of --series or --terms-file is required");
    if (kmax < 0) throw UsageError("--kmax must be >= 0");
    if (budget() < static_cast<std::size_t>(kmax) + 1)
      throw UsageError("--terms must be >= kmax + 1");
    Rational bv;
    try {
      bv = parse_decimal<Rational>(b);
    } catch (const ParseError& e) {
      throw UsageError(std::string("--b: ") + e.what());
    }
    if (!(Rational(0) < bv)) throw UsageError("--b must be > 0");
    if (reference) {
      try {
        (void)parse_decimal<Rational>(*reference);
      } catch (const ParseError& e) {
        throw UsageError(std::string("--reference: ") + e.what());
      }
    }
    if (backend == Backend::Float && digits != 15 && (digits < 19 || digits > 100))
      throw UsageError("--digits must be 15 or in [19, 100]");
    if (command == Command::Check && !property) throw UsageError("check requires --property");
    if (k && *k < 0) throw UsageError("--k must be >= 0");
    for (const auto& m : methods)
      if (m.kind == Method::SPhi && m.phi != "ratio_powers" && m.phi != "two_point_powers" &&
          m.phi != "levin_tilde" && m.phi != "weniger_tilde")
        throw UsageError("unknown phi family '" + m.phi + "'");
  }
};

namespace detail {

inline const char* command_name(Command c) {
  switch (c) {
    case Command::Sum: return "sum";
    case Command::DigitsTable: return "digits-table";
    case Command::Check: return "check";
  }
  return "?";
}

inline const char* property_name(Property p) {
  switch (p) {
    case Property::Theorem1: return "theorem1";
    case Property::Theorem2: return "theorem2";
    case Property::Lemma1: return "lemma1";
    case Property::Lemma2: return "lemma2";
    case Property::IdentityS1: return "identity_s1";
    case Property::Equivalences: return "equivalences";
  }
  return "?";
}

inline std::string backend_label(const RunConfig& c) {
  if (c.backend == Backend::Rational) return "rational";
  if (c.digits == 15) return "binary64";
  return "float" + std::to_string(c.digits);
}

inline nlohmann::ordered_json config_echo(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = command_name(c.command);
  if (c.terms_file) j["terms_file"] = *c.terms_file;
  else j["series"] = c.series;
  if (c.params.x) j["x"] = *c.params.x;
  if (c.params.rho) j["rho"] = *c.params.rho;
  if (!c.params.a.empty()) j["pfq_a"] = c.params.a;
  if (!c.params.b.empty()) j["pfq_b"] = c.params.b;
  j["backend"] = backend_label(c);
  j["kmax"] = c.kmax;
  j["terms"] = c.budget();
  j["b"] = c.b;
  if (c.reference) j["reference"] = *c.reference;
  if (c.property) j["property"] = property_name(*c.property);
  return j;
}

// Parsed digit string as a JSON number, so csv/json/table carry one value.
inline nlohmann::ordered_json digits_json(double d) {
  if (std::isnan(d)) return nullptr;
  return std::stod(format_digits(d));
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Reports: computed once, then rendered in the requested format.

struct Entry {
  int k = 0;
  std::string value;  // empty when the entry is missing
  double digits = std::numeric_limits<double>::quiet_NaN();
};

struct MethodRow {
  std::string method;
  std::vector<Entry> entries;
  std::vector<std::string> failures;
};

struct TableReport {
  std::vector<MethodRow> rows;
  std::vector<std::string> notes;
  bool has_reference = false;
  bool absolute = false;
};

struct CheckRecord {
  std::string method;
  std::string quantity;
  int k = 0;
  std::size_t n = 0;
  std::string value;
  bool pass = true;
};

struct CheckReport {
  std::vector<CheckRecord> records;
  std::vector<std::string> notes;
  bool passed = true;
};

namespace detail {

template <RealNumber Real>
std::vector<MethodSpec<Real>> method_specs(const RunConfig& c,
                                           std::vector<MethodChoice> fallback) {
  const auto& chosen = c.methods.empty() ? fallback : c.methods;
  const Real b = parse_decimal<Real>(c.b);
  std::vector<MethodSpec<Real>> out;
  for (const auto& m : chosen) {
    MethodSpec<Real> spec;
    spec.kind = m.kind;
    spec.b = b;
    spec.realization = c.realization;
    if (m.kind == Method::SPhi) {
      if (m.phi == "ratio_powers") spec.phi = PhiFamily<Real>::ratio_powers();
      else if (m.phi == "two_point_powers") spec.phi = PhiFamily<Real>::two_point_powers();
      else if (m.phi == "levin_tilde") spec.phi = PhiFamily<Real>::levin_tilde(b);
      else spec.phi = PhiFamily<Real>::weniger_tilde(b);
    }
    out.push_back(std::move(spec));
  }
  return out;
}

inline std::vector<MethodChoice> slw() {
  return {{Method::S, {}}, {Method::Levin, {}}, {Method::Weniger, {}}};
}

template <RealNumber Real>
AlternatingSeries<Real> load_series(const RunConfig& c) {
  auto s = c.terms_file ? from_file<Real>(*c.terms_file) : builtin<Real>(c.series, c.params);
  if (c.reference) s = s.with_known_limit(parse_decimal<Real>(*c.reference));
  return s;
}

template <RealNumber Real>
std::vector<std::string> failure_notes(const TransformTable<Real>& t) {
  std::vector<std::string> out;
  for (const auto& f : t.failures()) {
    const char* why = f.kind == TransformTable<Real>::FailureKind::ZeroWeight
                          ? "zero weight denominator"
                          : "zero denominator";
    out.push_back(std::string(why) + " at k=" + std::to_string(f.k) + " n=" +
                  std::to_string(f.n));
  }
  return out;
}

template <RealNumber Real>
TableReport table_report(const RunConfig& c, int k_first, int k_last,
                         std::vector<MethodChoice> fallback) {
  const auto series = load_series<Real>(c);
  const std::size_t M = c.budget();
  if (auto count = series.term_count(); count && *count < M + 1)
    throw UsageError("terms file has " + std::to_string(*count) + " terms; need " +
                     std::to_string(M + 1) + " (lower --kmax or --terms)");
  const SeriesTerms<Real> terms(series, M);
  TableReport report;
  const auto& limit = series.known_limit();
  report.has_reference = limit.has_value();
  const int cap = digits10_v<Real>;
  for (const auto& spec : method_specs<Real>(c, std::move(fallback))) {
    const auto table = transform(terms, spec, c.kmax);
    MethodRow row{spec.label(), {}, failure_notes(table)};
    for (int k = k_first; k <= k_last; ++k) {
      Entry e{k, {}, std::numeric_limits<double>::quiet_NaN()};
      if (table.has(k, 0)) {
        e.value = format_number(table.at(k, 0));
        if (limit) e.digits = digits_of(table.at(k, 0), *limit, cap, &report.absolute);
      }
      row.entries.push_back(std::move(e));
    }
    report.rows.push_back(std::move(row));
  }
  if (report.absolute)
    report.notes.push_back("reference is zero: digits are -log10 |s~ - s| (absolute)");
  return report;
}

template <RealNumber Real>
TableReport sum_report(const RunConfig& c) {
  return table_report<Real>(c, c.kmax, c.kmax, slw());
}

template <RealNumber Real>
TableReport digits_table_report(const RunConfig& c) {
  const bool known =
      c.reference || (!c.terms_file && load_series<Real>(c).known_limit().has_value());
  if (!known) throw UsageError("series has no known limit; pass --reference DEC");
  auto report = table_report<Real>(c, std::min(3, c.kmax), c.kmax, slw());
  if (!c.terms_file) {
    const auto asym = builtin<Real>(c.series, c.params).asymptotics();
    if (asym && asym->r > 1)
      report.notes.push_back("d~ transformation row is out of scope and not computed");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Checks

template <RealNumber Real>
Real tolerance_unit() {
  if constexpr (is_exact_v<Real>) return Real(0);
  else return Real(64) * std::numeric_limits<Real>::epsilon();
}

template <RealNumber Real>
std::vector<std::size_t> n_values(const RunConfig& c, std::vector<std::size_t> fallback) {
  return c.n_list.empty() ? fallback : c.n_list;
}

template <RealNumber Real>
std::vector<int> k_values(const RunConfig& c, std::vector<int> fallback) {
  return c.k ? std::vector<int>{*c.k} : fallback;
}

inline std::vector<std::size_t> range_n(std::size_t last) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= last; ++n) out.push_back(n);
  return out;
}

// Exact residuals must vanish; float residuals must stay within a few ulps of
// the rounding noise in a difference quotient (s / alpha_{n+1}).
template <RealNumber Real>
bool residual_ok(const Real& residual, const Real& noise_scale) {
  if constexpr (is_exact_v<Real>) return residual == Real(0);
  else return !(tolerance_unit<Real>() * noise_scale < abs_value(residual));
}

template <RealNumber Real>
std::size_t max_of(const std::vector<std::size_t>& v) {
  return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}

template <RealNumber Real>
void check_lemma2(const RunConfig& c, CheckReport& r) {
  const auto series = load_series<Real>(c);
  const auto ks = k_values<Real>(c, {1, 2, 3, 4, 5});
  const auto ns = n_values<Real>(c, range_n(10));
  const int K = *std::max_element(ks.begin(), ks.end());
  const SeriesTerms<Real> terms(series, max_of<Real>(ns) + static_cast<std::size_t>(K) + 3);
  for (const auto& spec : method_specs<Real>(c, slw())) {
    if (spec.kind == Method::Aitken) continue;
    if (spec.realization == Realization::Explicit) {
      r.notes.push_back("explicit realization stores no weights; skipped " + spec.label());
      continue;
    }
    const auto table = transform(terms, spec, K);
    for (int k : ks)
      for (auto n : ns) {
        if (k < 1) continue;
        const Real res = lemma2_check(terms, table, k, n);
        const Real scale = (abs_value(table.at(k - 1, n)) + Real(1)) / terms.alpha(n + 1) *
                           Real(static_cast<long long>(n) + 2 * k + 2);
        r.records.push_back({spec.label(), "residual", k, n, format_number(res, 6),
                             residual_ok(res, scale)});
      }
  }
}

template <RealNumber Real>
void check_identity_s1(const RunConfig& c, CheckReport& r) {
  const auto series = load_series<Real>(c);
  const auto ns = n_values<Real>(c, range_n(10));
  const SeriesTerms<Real> terms(series, max_of<Real>(ns) + 4);
  const auto table = method_s(terms, 1);
  for (auto n : ns) {
    const Real res = delta_s1_identity(terms, table, n);
    const Real scale = (abs_value(table.at(1, n)) + Real(1)) / terms.alpha(n + 1);
    r.records.push_back({"S", "residual", 1, n, format_number(res, 6), residual_ok(res, scale)});
  }
}

// Leading coefficients of n^{2k} D_k^n for alpha_n = 1/(n+1).
inline std::optional<double> harmonic_coefficient(Method m, int k) {
  if (k == 1) return -0.25;
  if (k == 2) return m == Method::S ? -5.0 / 16 : -0.25;
  if (k == 3) {
    if (m == Method::S) return -9.0 / 64;
    if (m == Method::Levin) return -3.0 / 16;
    if (m == Method::Weniger) return 3.0 / 16;
  }
  return std::nullopt;
}

// Boundedness proxy: the value at the largest n is at most ten times the value
// at the smallest.
inline bool bounded_proxy(const std::vector<double>& scaled) {
  if (scaled.size() < 2) return true;
  return std::abs(scaled.back()) <= 10.0 * std::abs(scaled.front());
}

template <RealNumber Real>
void check_theorem1(const RunConfig& c, CheckReport& r) {
  const auto series = load_series<Real>(c);
  const auto ks = k_values<Real>(c, {1});
  auto ns = n_values<Real>(c, {100, 1000});
  std::sort(ns.begin(), ns.end());
  const bool harmonic = !c.terms_file && c.series == "example3" && !c.reference;
  for (const auto& spec : method_specs<Real>(c, slw())) {
    for (int k : ks) {
      if (k < 1) continue;
      const auto values = theorem1_scaling(series, spec, k, ns);
      const auto target = harmonic ? harmonic_coefficient(spec.kind, k) : std::nullopt;
      std::vector<double> scaled;
      for (const auto& v : values) scaled.push_back(to_double(v.value));
      const bool bounded = bounded_proxy(scaled);
      for (const auto& v : values) {
        bool ok = bounded;
        if (target) ok = std::abs(to_double(v.value) - *target) <= 2.0 * k * k / double(v.n);
        r.records.push_back({spec.label(), "n^" + std::to_string(2 * k) + "*D", k, v.n,
                             format_number(v.value, 8), ok});
      }
    }
  }
}

template <RealNumber Real>
void check_theorem2(const RunConfig& c, CheckReport& r) {
  const auto series = load_series<Real>(c);
  const auto ks = k_values<Real>(c, {1});
  auto ns = n_values<Real>(c, {100, 1000});
  std::sort(ns.begin(), ns.end());
  const int K = *std::max_element(ks.begin(), ks.end()) + 1;
  const SeriesTerms<Real> terms(series, max_of<Real>(ns) + static_cast<std::size_t>(K) + 3);
  for (const auto& spec : method_specs<Real>(c, slw())) {
    if (spec.kind == Method::Aitken) continue;
    const auto table = transform(terms, spec, K);
    for (int k : ks) {
      if (k < 0) continue;
      std::vector<double> scaled;
      std::vector<std::string> shown;
      for (auto n : ns) {
        if constexpr (!is_exact_v<Real>) {
          const Real delta = abs_value(Real(table.at(k, n + 2) - table.at(k, n + 1)));
          const Real noise = Real(static_cast<long long>(n) + k + 3) *
                             std::numeric_limits<Real>::epsilon() * abs_value(table.at(k, n));
          if (!(noise < delta / Real(1000)))
            throw PrecisionError("D_" + std::to_string(k) + " near n=" + std::to_string(n) +
                                 " is dominated by rounding; raise --digits");
        }
        const Real nn(static_cast<long long>(n));
        const Real v = theorem2_ratio(terms, table, k, n) * nn * nn;
        scaled.push_back(to_double(v));
        shown.push_back(format_number(v, 8));
      }
      const bool ok = ns.size() >= 2 ? bounded_proxy(scaled)
                                     : std::abs(scaled.front()) <= 10.0;
      for (std::size_t i = 0; i < ns.size(); ++i)
        r.records.push_back({spec.label(), "n^2*residual", k, ns[i], shown[i], ok});
    }
  }
}

template <RealNumber Real>
void check_lemma1(const RunConfig& c, CheckReport& r) {
  const auto series = load_series<Real>(c);
  const auto ks = k_values<Real>(c, {2, 3});
  auto ns = n_values<Real>(c, {100, 1000});
  std::sort(ns.begin(), ns.end());
  const SeriesTerms<Real> terms(
      series, max_of<Real>(ns) + static_cast<std::size_t>(*std::max_element(ks.begin(), ks.end())) + 2);
  const Real b = parse_decimal<Real>(c.b);
  for (Method m : {Method::Levin, Method::Weniger}) {
    for (int k : ks) {
      if (k < 1) continue;
      std::vector<double> scaled;
      std::vector<std::string> shown;
      for (auto n : ns) {
        const Real v = lemma1_scaled(terms, m, b, k, n);
        scaled.push_back(to_double(v));
        shown.push_back(format_number(v, 8));
      }
      const bool ok = bounded_proxy(scaled);
      for (std::size_t i = 0; i < ns.size(); ++i)
        r.records.push_back({method_label(m), "n^2*|q ratio - 1|", k, ns[i], shown[i], ok});
    }
  }
}

template <RealNumber Real>
bool nearly_equal(const Real& a, const Real& b, double rel) {
  if constexpr (is_exact_v<Real>) {
    (void)rel;
    return a == b;
  } else {
    const Real scale = std::max(abs_value(a), abs_value(b));
    return !(Real(rel) * scale < abs_value(Real(a - b)));
  }
}

template <RealNumber Real>
void check_equivalences(const RunConfig& c, CheckReport& r) {
  const auto series = load_series<Real>(c);
  const std::size_t last_n = c.n_list.empty() ? 30 : max_of<Real>(c.n_list);
  const SeriesTerms<Real> terms(series, std::max<std::size_t>(last_n + 3, 17));
  const Real b = parse_decimal<Real>(c.b);
  const double row_tol = is_exact_v<Real> ? 0.0 : 1e-12;

  // Row 1 is universal.
  std::vector<MethodSpec<Real>> specs;
  for (Method m : {Method::Aitken, Method::S, Method::Levin, Method::Weniger})
    specs.push_back({m, b, std::nullopt, Realization::PqRecurrence});
  for (auto phi : {PhiFamily<Real>::levin_tilde(b), PhiFamily<Real>::weniger_tilde(b),
                   PhiFamily<Real>::ratio_powers(), PhiFamily<Real>::two_point_powers()})
    specs.push_back({Method::SPhi, b, phi, Realization::PqRecurrence});
  std::vector<TransformTable<Real>> tables;
  for (const auto& s : specs) tables.push_back(transform(terms, s, 2));
  for (std::size_t n = 0; n <= last_n; ++n) {
    const Real& ref = tables[1].at(1, n);
    Real worst(0);
    bool ok = true;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      const Real& v = tables[i].at(1, n);
      ok = ok && nearly_equal(v, ref, row_tol);
      worst = std::max(worst, abs_value(Real(v - ref)));
    }
    r.records.push_back({"all", "row1 spread", 1, n, format_number(worst, 6), ok});
  }
  // Row 2: Levin and Weniger coincide.
  const auto& lev = tables[2];
  const auto& wen = tables[3];
  for (std::size_t n = 0; n <= last_n; ++n) {
    const Real d = abs_value(Real(lev.at(2, n) - wen.at(2, n)));
    r.records.push_back({"L,W", "row2 difference", 2, n, format_number(d, 6),
                         nearly_equal(lev.at(2, n), wen.at(2, n), row_tol)});
  }
  // Realizations of L and W agree for k <= 6, n <= 10.
  const double real_tol = is_exact_v<Real> ? 0.0 : 1e-10;
  for (Method m : {Method::Levin, Method::Weniger}) {
    const auto pq = levin_weniger(terms, m, b, 6, Realization::PqRecurrence);
    const auto ex = levin_weniger(terms, m, b, 6, Realization::Explicit);
    const auto dp = levin_weniger(terms, m, b, 6, Realization::DirectPhi);
    for (int k = 0; k <= 6; ++k) {
      Real worst(0);
      bool ok = true;
      for (std::size_t n = 0; n <= 10; ++n) {
        const Real& v = pq.at(k, n);
        ok = ok && nearly_equal(ex.at(k, n), v, real_tol) && nearly_equal(dp.at(k, n), v, real_tol);
        worst = std::max({worst, abs_value(Real(ex.at(k, n) - v)), abs_value(Real(dp.at(k, n) - v))});
      }
      r.records.push_back({method_label(m), "realization spread n<=10", k, 10,
                           format_number(worst, 6), ok});
    }
  }
}

template <RealNumber Real>
CheckReport check_report(const RunConfig& c) {
  CheckReport r;
  switch (*c.property) {
    case Property::Lemma2: check_lemma2<Real>(c, r); break;
    case Property::IdentityS1: check_identity_s1<Real>(c, r); break;
    case Property::Theorem1: check_theorem1<Real>(c, r); break;
    case Property::Theorem2: check_theorem2<Real>(c, r); break;
    case Property::Lemma1: check_lemma1<Real>(c, r); break;
    case Property::Equivalences: check_equivalences<Real>(c, r); break;
  }
  for (const auto& rec : r.records) r.passed = r.passed && rec.pass;
  if (r.records.empty()) {
    r.passed = false;
    r.notes.push_back("no checks were run");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

inline void render_table(const RunConfig& c, const TableReport& rep, std::ostream& out) {
  const auto echo = config_echo(c);
  if (c.output == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["config"] = echo;
    j["tables"] = nlohmann::ordered_json::array();
    for (const auto& row : rep.rows) {
      nlohmann::ordered_json t;
      t["method"] = row.method;
      t["entries"] = nlohmann::ordered_json::array();
      for (const auto& e : row.entries) {
        nlohmann::ordered_json je;
        je["k"] = e.k;
        je["s_k_0"] = e.value.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(e.value);
        je["digits"] = digits_json(e.digits);
        t["entries"].push_back(je);
      }
      t["failures"] = row.failures;
      j["tables"].push_back(t);
    }
    j["notes"] = rep.notes;
    out << j.dump(2) << '\n';
    return;
  }
  if (c.output == OutputFormat::Csv) {
    out << "k,method,s_k_0,digits\n";
    for (const auto& row : rep.rows)
      for (const auto& e : row.entries)
        out << e.k << ',' << csv_field(row.method) << ',' << e.value << ','
            << (std::isnan(e.digits) ? std::string() : format_digits(e.digits)) << '\n';
    return;
  }
  out << "# " << echo["command"].get<std::string>() << ": "
      << (c.terms_file ? *c.terms_file : c.series) << ", backend " << backend_label(c)
      << ", K=" << c.kmax << ", M=" << c.budget() << ", b=" << c.b << '\n';
  if (c.command == Command::DigitsTable) {
    out << std::left << std::setw(10) << "k";
    for (const auto& e : rep.rows.front().entries) out << std::right << std::setw(6) << e.k;
    out << '\n';
    for (const auto& row : rep.rows) {
      out << std::left << std::setw(10) << row.method;
      for (const auto& e : row.entries) out << std::right << std::setw(6) << format_digits(e.digits);
      out << '\n';
    }
  } else {
    for (const auto& row : rep.rows)
      for (const auto& e : row.entries) {
        out << std::left << std::setw(10) << row.method << "k=" << e.k << "  s="
            << (e.value.empty() ? "-" : e.value);
        if (rep.has_reference) out << "  digits=" << format_digits(e.digits);
        out << '\n';
      }
  }
  for (const auto& row : rep.rows)
    for (const auto& f : row.failures) out << "failure: " << row.method << ": " << f << '\n';
  for (const auto& n : rep.notes) out << "note: " << n << '\n';
}

inline void render_check(const RunConfig& c, const CheckReport& rep, std::ostream& out) {
  const std::string prop = property_name(*c.property);
  if (c.output == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["config"] = config_echo(c);
    j["passed"] = rep.passed;
    j["residuals"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.records) {
      nlohmann::ordered_json e;
      e["method"] = r.method;
      e["quantity"] = r.quantity;
      e["k"] = r.k;
      e["n"] = r.n;
      e["value"] = r.value;
      e["pass"] = r.pass;
      j["residuals"].push_back(e);
    }
    j["notes"] = rep.notes;
    out << j.dump(2) << '\n';
    return;
  }
  if (c.output == OutputFormat::Csv) {
    out << "property,method,quantity,k,n,value,pass\n";
    for (const auto& r : rep.records)
      out << prop << ',' << csv_field(r.method) << ',' << csv_field(r.quantity) << ',' << r.k
          << ',' << r.n << ',' << r.value << ',' << (r.pass ? "true" : "false") << '\n';
    return;
  }
  out << "# check " << prop << ": " << (c.terms_file ? *c.terms_file : c.series)
      << ", backend " << backend_label(c) << '\n';
  for (const auto& r : rep.records)
    out << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(22) << r.method
        << " k=" << r.k << " n=" << std::setw(5) << r.n << ' ' << r.quantity << " = " << r.value
        << '\n';
  for (const auto& n : rep.notes) out << "note: " << n << '\n';
  out << (rep.passed ? "PASS" : "FAIL") << ' ' << prop << '\n';
}

template <RealNumber Real>
int run_typed(const RunConfig& c, std::ostream& out) {
  switch (c.command) {
    case Command::Sum: render_table(c, sum_report<Real>(c), out); return 0;
    case Command::DigitsTable: render_table(c, digits_table_report<Real>(c), out); return 0;
    case Command::Check: {
      const auto rep = check_report<Real>(c);
      render_check(c, rep, out);
      return rep.passed ? 0 : 1;
    }
  }
  return 2;
}

}  // namespace detail

/// Runs a validated configuration. Returns the process exit code.
inline int run(const RunConfig& c, std::ostream& out) {
  c.validate();
  if (c.backend == Backend::Rational) return detail::run_typed<Rational>(c, out);
  if (c.digits == 15) return detail::run_typed<double>(c, out);
  if (c.digits <= 19) return detail::run_typed<Extended>(c, out);
  if (c.digits <= 30) return detail::run_typed<Float30>(c, out);
  if (c.digits <= 50) return detail::run_typed<Float50>(c, out);
  return detail::run_typed<Float100>(c, out);
}

/// Parses argv into a RunConfig. --help is reported through CLI::CallForHelp.
inline RunConfig parse_command_line(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Convergence acceleration of alternating series"};
  app.name("accelseries");
  std::string command;
  std::vector<std::string> methods;
  std::string phi = "ratio_powers";
  std::string realization = "pq";
  std::string backend = "float";
  std::string output = "table";
  std::string property;
  std::optional<std::size_t> terms;
  std::optional<std::string> x, rho, reference, terms_file;
  std::optional<int> k;

  app.add_option("command", command, "sum | digits-table | check")
      ->required()
      ->check(CLI::IsMember({"sum", "digits-table", "check"}));
  app.add_option("--series", c.series, "builtin series name");
  app.add_option("--terms-file", terms_file, "file of signed terms, one per line");
  app.add_option("--x", x, "series parameter x");
  app.add_option("--rho", rho, "one_f_zero parameter rho");
  app.add_option("--pfq-a", c.params.a, "hypergeometric numerator parameters")->delimiter(',');
  app.add_option("--pfq-b", c.params.b, "hypergeometric denominator parameters")->delimiter(',');
  app.add_option("--method", methods, "s | sphi | levin | weniger | aitken (repeatable)")
      ->check(CLI::IsMember({"s", "sphi", "levin", "weniger", "aitken"}))
      ->delimiter(',');
  app.add_option("--phi", phi, "weight family for sphi")
      ->check(CLI::IsMember({"ratio_powers", "two_point_powers", "levin_tilde", "weniger_tilde"}));
  app.add_option("--realization", realization, "Levin/Weniger realization")
      ->check(CLI::IsMember({"pq", "explicit", "direct"}));
  app.add_option("--kmax", c.kmax, "maximal transformation order K");
  app.add_option("--terms", terms, "term budget M (default K+1)");
  app.add_option("--b", c.b, "shift parameter b > 0");
  app.add_option("--digits", c.digits, "decimal digits of the float backend");
  app.add_option("--backend", backend, "float | rational")
      ->check(CLI::IsMember({"float", "rational"}));
  app.add_option("--output", output, "table | csv | json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--reference", reference, "reference limit for digit counts");
  app.add_option("--property", property, "property for check")
      ->check(CLI::IsMember(
          {"theorem1", "theorem2", "lemma1", "lemma2", "identity_s1", "equivalences"}));
  app.add_option("--k", k, "transformation order for check");
  app.add_option("--n", c.n_list, "comma-separated indices for check")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  c.command = command == "sum" ? Command::Sum
              : command == "digits-table" ? Command::DigitsTable
                                          : Command::Check;
  c.params.x = x;
  c.params.rho = rho;
  c.terms_file = terms_file;
  c.reference = reference;
  c.terms = terms;
  c.k = k;
  for (const auto& m : methods) {
    MethodChoice choice;
    choice.phi = phi;
    if (m == "s") choice.kind = Method::S;
    else if (m == "sphi") choice.kind = Method::SPhi;
    else if (m == "levin") choice.kind = Method::Levin;
    else if (m == "weniger") choice.kind = Method::Weniger;
    else choice.kind = Method::Aitken;
    c.methods.push_back(choice);
  }
  c.realization = realization == "explicit" ? Realization::Explicit
                  : realization == "direct" ? Realization::DirectPhi
                                            : Realization::PqRecurrence;
  c.backend = backend == "rational" ? Backend::Rational : Backend::Float;
  c.output = output == "csv" ? OutputFormat::Csv
             : output == "json" ? OutputFormat::Json
                                : OutputFormat::Table;
  if (!property.empty()) {
    const std::vector<std::pair<std::string, Property>> names = {
        {"theorem1", Property::Theorem1}, {"theorem2", Property::Theorem2},
        {"lemma1", Property::Lemma1},     {"lemma2", Property::Lemma2},
        {"identity_s1", Property::IdentityS1}, {"equivalences", Property::Equivalences}};
    for (const auto& [name, p] : names)
      if (name == property) c.property = p;
  }
  c.validate();
  return c;
}

/// Full program: parse, run, report. Exit codes: 0 success, 1 failed check or
/// computation error, 2 usage error.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_command_line(argc, argv);
  } catch (const CLI::CallForHelp&) {
    CLI::App help{"Convergence acceleration of alternating series"};
    out << "usage: accelseries <sum|digits-table|check> (--series NAME | --terms-file PATH)\n"
           "  [--x V] [--rho V] [--pfq-a A,..] [--pfq-b B,..]\n"
           "  [--method s|sphi|levin|weniger|aitken]... [--phi FAMILY] [--realization "
           "pq|explicit|direct]\n"
           "  [--kmax K] [--terms M] [--b B] [--digits D] [--backend float|rational]\n"
           "  [--output table|csv|json] [--reference DEC]\n"
           "  [--property theorem1|theorem2|lemma1|lemma2|identity_s1|equivalences] [--k K] "
           "[--n N,..]\n";
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  try {
    return run(config, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const RegistryError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace accel::cli
