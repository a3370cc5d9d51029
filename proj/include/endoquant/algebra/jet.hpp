#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "endoquant/algebra/gaussian_rational.hpp"

namespace endoquant {

/// Jets live in at most kMaxVars formal variables: z^1..z^m followed by
/// zbar^1..zbar^m, so charts have complex dimension at most kMaxVars / 2.
inline constexpr int kMaxVars = 6;

/// Accuracy value of a jet that is a genuine polynomial.
inline constexpr int kExact = std::numeric_limits<int>::max();

/// Accuracy value of a jet about which nothing is known.
inline constexpr int kNoInformation = -1;

using Exponent = std::array<std::uint8_t, kMaxVars>;

int total_degree(const Exponent& e);
std::string format_exponent(const Exponent& e, int nvars);

/// Accuracy arithmetic: min for sums and products, saturating shift for derivatives.
int combine_accuracy(int a, int b);
int lower_accuracy(int a, int by);

/// Truncated Taylor expansion at the chart origin. Every stored coefficient has
/// total degree at most accuracy(); coefficients beyond that degree are unknown,
/// and reading them throws AccuracyUnderflow.
class Jet {
 public:
  using Terms = std::map<Exponent, GaussianRational>;

  Jet() = default;
  explicit Jet(int nvars, int accuracy = kExact);

  static Jet constant(int nvars, const GaussianRational& c, int accuracy = kExact);
  static Jet monomial(int nvars, const Exponent& e, const GaussianRational& c, int accuracy = kExact);
  static Jet variable(int nvars, int index);
  /// Builds a jet from (coefficient, exponent) pairs; exponents list nvars entries.
  static Jet from_terms(int nvars, const std::vector<std::pair<GaussianRational, std::vector<int>>>& terms,
                        int accuracy = kExact);

  int nvars() const { return nvars_; }
  int accuracy() const { return accuracy_; }
  bool is_exact() const { return accuracy_ == kExact; }
  const Terms& terms() const { return terms_; }

  GaussianRational coeff(const Exponent& e) const;
  GaussianRational value_at_origin() const;

  /// True when no coefficient is stored; for an inexact jet this only means the
  /// known part vanishes.
  bool known_zero() const { return terms_.empty(); }
  bool exactly_zero() const { return terms_.empty() && is_exact(); }
  int max_degree() const;

  void add_term(const Exponent& e, const GaussianRational& c);

  Jet truncated(int accuracy) const;
  Jet derive(int var) const;
  Jet conj_swap(int m) const;
  Jet scaled(const GaussianRational& c) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const GaussianRational& c);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(const Jet& a) { return a.scaled(GaussianRational(-1)); }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, const GaussianRational& c) { return a *= c; }
  friend Jet operator*(const GaussianRational& c, Jet a) { return a *= c; }

  /// Structural equality: same accuracy and identical coefficients.
  friend bool operator==(const Jet& a, const Jet& b);

  std::string str() const;

 private:
  void check_compatible(const Jet& o) const;

  int nvars_ = 0;
  int accuracy_ = kExact;
  Terms terms_;
};

/// First monomial, in lexicographic order, whose coefficients differ among those
/// both jets know. std::nullopt when the jets agree on their common window.
std::optional<Exponent> first_difference(const Jet& a, const Jet& b);

/// Exponent over 2m variables from separate holomorphic and antiholomorphic parts.
Exponent join_exponent(const Exponent& hol, const Exponent& antihol, int m);
/// Iterated partial derivative d^e.
Jet derive_multi(const Jet& a, const Exponent& e);

Jet jet_inverse(const Jet& a, int fallback_accuracy);
Jet jet_exp(const Jet& a, int target_accuracy);
Jet jet_log(const Jet& a, int target_accuracy);

}  // namespace endoquant
