#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "accelseries/errors.hpp"
#include "accelseries/numeric.hpp"

namespace accel {

/// Parameters of the asymptotic form alpha_n ~ x^n n^v sum_j g_j n^{-j/r}.
/// Informational only; no transformation reads them.
struct AsymptoticParams {
  double x = 1.0;
  double v = 0.0;
  int r = 1;
};

/// The series sum_n (-1)^n alpha_n, described by the magnitudes alpha_n.
///
/// alpha_0 >= 0 and alpha_n > 0 for n >= 1 are enforced whenever terms are
/// materialised. alpha_0 may be zero because no weight of any transformation
/// depends on it (it only enters through the partial sums).
///
/// Providers are pure; a series is an immutable value and may be shared
/// across threads.
template <RealNumber Real>
class AlternatingSeries {
 public:
  using TermFn = std::function<Real(std::size_t)>;

  /// alpha_n evaluated independently for each n.
  static AlternatingSeries from_terms(std::string name, TermFn alpha) {
    AlternatingSeries s(std::move(name));
    s.term_ = std::move(alpha);
    return s;
  }

  /// alpha_0 given, alpha_{n+1} = alpha_n * ratio(n). Used for factorial-type
  /// terms so nothing overflows before the terms themselves do.
  static AlternatingSeries from_ratio(std::string name, Real alpha0, TermFn ratio) {
    AlternatingSeries s(std::move(name));
    s.alpha0_ = std::move(alpha0);
    s.ratio_ = std::move(ratio);
    return s;
  }

  /// A finite list of magnitudes alpha_0 .. alpha_{N-1}.
  static AlternatingSeries from_values(std::string name, std::vector<Real> alpha) {
    AlternatingSeries s(std::move(name));
    s.values_ = std::make_shared<const std::vector<Real>>(std::move(alpha));
    return s;
  }

  const std::string& name() const noexcept { return name_; }
  const std::optional<AsymptoticParams>& asymptotics() const noexcept { return asymptotics_; }
  /// Limit, or antilimit for a divergent series.
  const std::optional<Real>& known_limit() const noexcept { return limit_; }

  AlternatingSeries with_asymptotics(AsymptoticParams p) const {
    auto s = *this;
    s.asymptotics_ = p;
    return s;
  }
  AlternatingSeries with_known_limit(std::optional<Real> limit) const {
    auto s = *this;
    s.limit_ = std::move(limit);
    return s;
  }

  /// Number of available terms, when finite.
  std::optional<std::size_t> term_count() const {
    if (values_) return values_->size();
    return std::nullopt;
  }

  /// Series with every alpha_n multiplied by c. The limit scales with it.
  AlternatingSeries scaled(const Real& c) const {
    auto s = *this;
    s.scale_ = scale_ * c;
    s.name_ = name_ + "*c";
    if (s.limit_) s.limit_ = *s.limit_ * c;
    return s;
  }

  /// Series with alpha_0 replaced by alpha_0 + delta. The limit shifts by delta.
  AlternatingSeries shifted_first(const Real& delta) const {
    auto s = *this;
    s.shift_ = shift_ + delta;
    s.name_ = name_ + "+d";
    if (s.limit_) s.limit_ = *s.limit_ + delta;
    return s;
  }

  Real alpha(std::size_t n) const {
    if (values_ || term_) return finish(n, raw(n));
    Real a = alpha0_;
    for (std::size_t i = 0; i < n; ++i) a *= call(ratio_, i);
    return finish(n, a);
  }

  /// alpha_0 .. alpha_{count-1}.
  std::vector<Real> alphas(std::size_t count) const {
    std::vector<Real> out;
    out.reserve(count);
    if (values_ || term_) {
      for (std::size_t n = 0; n < count; ++n) out.push_back(finish(n, raw(n)));
      return out;
    }
    Real a = alpha0_;
    for (std::size_t n = 0; n < count; ++n) {
      if (n > 0) a *= call(ratio_, n - 1);
      out.push_back(finish(n, a));
    }
    return out;
  }

 private:
  explicit AlternatingSeries(std::string name) : name_(std::move(name)) {}

  Real call(const TermFn& fn, std::size_t n) const {
    try {
      return fn(n);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw TermError(n, e.what());
    }
  }

  Real raw(std::size_t n) const {
    if (values_) {
      if (n >= values_->size())
        throw TermError(n, "only " + std::to_string(values_->size()) + " terms available");
      return (*values_)[n];
    }
    return call(term_, n);
  }

  Real finish(std::size_t n, Real a) const {
    a *= scale_;
    if (n == 0) a += shift_;
    if (!is_finite(a)) throw TermError(n, "term is not finite");
    if (n == 0 ? a < Real(0) : !(Real(0) < a))
      throw TermError(n, "magnitude must be positive (got " + format_number(a, 6) + ")");
    return a;
  }

  std::string name_;
  TermFn term_;
  Real alpha0_{0};
  TermFn ratio_;
  std::shared_ptr<const std::vector<Real>> values_;
  Real scale_{1};
  Real shift_{0};
  std::optional<AsymptoticParams> asymptotics_;
  std::optional<Real> limit_;
};

/// s_0 .. s_m.
template <RealNumber Real>
struct PartialSumSequence {
  std::vector<Real> values;
};

template <RealNumber Real>
PartialSumSequence<Real> partial_sums(const AlternatingSeries<Real>& series, std::size_t m) {
  const auto a = series.alphas(m + 1);
  PartialSumSequence<Real> out;
  out.values.reserve(m + 1);
  Real acc(0);
  for (std::size_t n = 0; n <= m; ++n) {
    if (n % 2 == 0) acc += a[n];
    else acc -= a[n];
    out.values.push_back(acc);
  }
  return out;
}

/// beta_n = alpha_{n+1} / alpha_n.
template <RealNumber Real>
Real beta(const AlternatingSeries<Real>& series, std::size_t n) {
  const Real an = series.alpha(n);
  if (an == Real(0)) throw DegenerateTermError(n);
  return series.alpha(n + 1) / an;
}

/// Materialised prefix alpha_0..alpha_M with partial sums and memoised betas;
/// the common input of every transformation. `budget()` is M.
template <RealNumber Real>
class SeriesTerms {
 public:
  SeriesTerms(const AlternatingSeries<Real>& series, std::size_t budget)
      : alpha_(series.alphas(budget + 1)) {
    sums_.reserve(alpha_.size());
    Real acc(0);
    for (std::size_t n = 0; n < alpha_.size(); ++n) {
      if (n % 2 == 0) acc += alpha_[n];
      else acc -= alpha_[n];
      sums_.push_back(acc);
    }
    beta_.reserve(budget);
    for (std::size_t n = 0; n < budget; ++n)
      beta_.push_back(alpha_[n] == Real(0) ? Real(0) : Real(alpha_[n + 1] / alpha_[n]));
  }

  std::size_t budget() const noexcept { return alpha_.size() - 1; }
  const Real& alpha(std::size_t n) const { return alpha_.at(n); }
  const Real& sum(std::size_t n) const { return sums_.at(n); }
  const std::vector<Real>& sums() const noexcept { return sums_; }

  const Real& beta(std::size_t n) const {
    if (n >= beta_.size()) throw RangeError("beta_" + std::to_string(n) + " outside term budget");
    if (alpha_[n] == Real(0)) throw DegenerateTermError(n);
    return beta_[n];
  }

 private:
  std::vector<Real> alpha_;
  std::vector<Real> sums_;
  std::vector<Real> beta_;
};

/// Reads signed terms a_n, one per line. '#' starts a comment; blank lines are
/// skipped. Signs must alternate starting with a non-negative a_0.
template <RealNumber Real>
AlternatingSeries<Real> from_stream(std::istream& in, std::string name) {
  std::vector<Real> alpha;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r\n");
    const std::string text = line.substr(first, last - first + 1);
    Real a;
    try {
      a = parse_decimal<Real>(text);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
    const std::size_t n = alpha.size();
    const bool ok = n == 0 ? !(a < Real(0)) : (n % 2 == 0 ? Real(0) < a : a < Real(0));
    if (!ok)
      throw AlternationError(lineno, "term " + std::to_string(n) + " breaks the +,-,+,... pattern");
    alpha.push_back(abs_value(a));
  }
  if (alpha.empty()) throw ParseError("no terms found");
  return AlternatingSeries<Real>::from_values(std::move(name), std::move(alpha));
}

template <RealNumber Real>
AlternatingSeries<Real> from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open terms file " + path.string());
  return from_stream<Real>(in, path.stem().string());
}

}  // namespace accel
