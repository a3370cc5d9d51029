#include "endoquant/algebra/jet.hpp"

#include <algorithm>
#include <sstream>

#include "endoquant/algebra/errors.hpp"

namespace endoquant {

int total_degree(const Exponent& e) {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

std::string format_exponent(const Exponent& e, int nvars) {
  std::string out = "[";
  for (int i = 0; i < nvars; ++i) {
    if (i) out += ",";
    out += std::to_string(e[i]);
  }
  return out + "]";
}

int combine_accuracy(int a, int b) { return std::min(a, b); }

int lower_accuracy(int a, int by) {
  if (a == kExact) return kExact;
  return std::max(kNoInformation, a - by);
}

Jet::Jet(int nvars, int accuracy) : nvars_(nvars), accuracy_(std::max(accuracy, kNoInformation)) {
  if (nvars < 0 || nvars > kMaxVars) throw ShapeMismatch("jet variable count out of range");
}

Jet Jet::constant(int nvars, const GaussianRational& c, int accuracy) {
  Jet j(nvars, accuracy);
  j.add_term(Exponent{}, c);
  return j;
}

Jet Jet::monomial(int nvars, const Exponent& e, const GaussianRational& c, int accuracy) {
  Jet j(nvars, accuracy);
  j.add_term(e, c);
  return j;
}

Jet Jet::variable(int nvars, int index) {
  Exponent e{};
  e[index] = 1;
  return monomial(nvars, e, GaussianRational(1));
}

Jet Jet::from_terms(int nvars, const std::vector<std::pair<GaussianRational, std::vector<int>>>& terms,
                    int accuracy) {
  Jet j(nvars, accuracy);
  for (const auto& [c, exps] : terms) {
    if (static_cast<int>(exps.size()) != nvars) throw ShapeMismatch("exponent vector has wrong length");
    Exponent e{};
    for (int i = 0; i < nvars; ++i) {
      if (exps[i] < 0 || exps[i] > 255) throw InvalidInput("exponent out of range");
      e[i] = static_cast<std::uint8_t>(exps[i]);
    }
    j.add_term(e, c);
  }
  return j;
}

GaussianRational Jet::coeff(const Exponent& e) const {
  if (total_degree(e) > accuracy_) {
    throw AccuracyUnderflow("coefficient " + format_exponent(e, nvars_) + " beyond jet accuracy " +
                            std::to_string(accuracy_));
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussianRational() : it->second;
}

GaussianRational Jet::value_at_origin() const { return coeff(Exponent{}); }

int Jet::max_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

void Jet::add_term(const Exponent& e, const GaussianRational& c) {
  if (c.is_zero() || total_degree(e) > accuracy_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Jet Jet::truncated(int accuracy) const {
  if (accuracy >= accuracy_) return *this;
  Jet out(nvars_, accuracy);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) <= out.accuracy_) out.terms_.emplace(e, c);
  }
  return out;
}

Jet Jet::derive(int var) const {
  if (var < 0 || var >= nvars_) throw ShapeMismatch("derivative variable out of range");
  Jet out(nvars_, lower_accuracy(accuracy_, 1));
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    if (total_degree(f) > out.accuracy_) continue;
    out.terms_.emplace(f, c * GaussianRational(static_cast<long>(e[var])));
  }
  return out;
}

Jet Jet::conj_swap(int m) const {
  if (2 * m != nvars_) throw ShapeMismatch("conj_swap needs 2m variables");
  Jet out(nvars_, accuracy_);
  for (const auto& [e, c] : terms_) {
    Exponent f{};
    for (int k = 0; k < m; ++k) {
      f[k] = e[m + k];
      f[m + k] = e[k];
    }
    out.terms_.emplace(f, c.conj());
  }
  return out;
}

Jet Jet::scaled(const GaussianRational& c) const {
  Jet out = *this;
  out *= c;
  return out;
}

void Jet::check_compatible(const Jet& o) const {
  if (nvars_ != o.nvars_) {
    throw ShapeMismatch("jet variable sets differ (" + std::to_string(nvars_) + " vs " +
                        std::to_string(o.nvars_) + ")");
  }
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(o);
  if (o.accuracy_ < accuracy_) *this = truncated(o.accuracy_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_compatible(o);
  if (o.accuracy_ < accuracy_) *this = truncated(o.accuracy_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Jet& Jet::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  Jet out(a.nvars_, combine_accuracy(a.accuracy_, b.accuracy_));
  for (const auto& [ea, ca] : a.terms_) {
    int da = total_degree(ea);
    if (da > out.accuracy_) continue;
    for (const auto& [eb, cb] : b.terms_) {
      if (da + total_degree(eb) > out.accuracy_) continue;
      Exponent e;
      for (int i = 0; i < kMaxVars; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const Jet& a, const Jet& b) {
  return a.nvars_ == b.nvars_ && a.accuracy_ == b.accuracy_ && a.terms_ == b.terms_;
}

std::string Jet::str() const {
  std::ostringstream os;
  if (terms_.empty()) {
    os << "0";
  } else {
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")" << format_exponent(e, nvars_);
    }
  }
  if (!is_exact()) os << " + O(" << accuracy_ + 1 << ")";
  return os.str();
}

std::optional<Exponent> first_difference(const Jet& a, const Jet& b) {
  if (a.nvars() != b.nvars()) throw ShapeMismatch("comparing jets on different variable sets");
  int acc = combine_accuracy(a.accuracy(), b.accuracy());
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  std::optional<Exponent> first;
  auto consider = [&](const Exponent& e) {
    if (total_degree(e) > acc) return;
    if (!first || e < *first) first = e;
  };
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
      consider(ia->first);
      ++ia;
    } else if (ia == a.terms().end() || ib->first < ia->first) {
      consider(ib->first);
      ++ib;
    } else {
      if (ia->second != ib->second) consider(ia->first);
      ++ia;
      ++ib;
    }
  }
  return first;
}

Exponent join_exponent(const Exponent& hol, const Exponent& antihol, int m) {
  Exponent e{};
  for (int k = 0; k < m; ++k) {
    e[k] = hol[k];
    e[m + k] = antihol[k];
  }
  return e;
}

Jet derive_multi(const Jet& a, const Exponent& e) {
  Jet out = a;
  for (int v = 0; v < a.nvars(); ++v) {
    for (int t = 0; t < e[v]; ++t) out = out.derive(v);
  }
  return out;
}

Jet jet_inverse(const Jet& a, int fallback_accuracy) {
  GaussianRational c0 = a.value_at_origin();
  if (c0.is_zero()) throw SingularValue("jet with vanishing constant term is not invertible");
  GaussianRational inv0 = GaussianRational(1) / c0;
  if (a.is_exact() && a.max_degree() <= 0) return Jet::constant(a.nvars(), inv0);
  int acc = a.is_exact() ? fallback_accuracy : a.accuracy();
  // a = c0 (1 + n) with n of valuation >= 1; 1/a = c0^{-1} sum (-n)^k.
  Jet n = (a - Jet::constant(a.nvars(), c0)).scaled(inv0).truncated(acc);
  Jet result = Jet::constant(a.nvars(), GaussianRational(1), acc);
  Jet power = result;
  for (int k = 1; k <= acc; ++k) {
    power = (power * n).scaled(GaussianRational(-1));
    if (power.known_zero()) break;
    result += power;
  }
  return result.scaled(inv0);
}

Jet jet_exp(const Jet& a, int target_accuracy) {
  if (!a.value_at_origin().is_zero()) throw InvalidInput("jet_exp needs a vanishing constant term");
  int acc = combine_accuracy(target_accuracy, a.accuracy());
  Jet x = a.truncated(acc);
  Jet result = Jet::constant(a.nvars(), GaussianRational(1), acc);
  Jet term = result;
  for (int k = 1; k <= acc; ++k) {
    term = (term * x).scaled(GaussianRational(Rational(1, k)));
    if (term.known_zero()) break;
    result += term;
  }
  return result;
}

Jet jet_log(const Jet& a, int target_accuracy) {
  if (a.value_at_origin() != GaussianRational(1)) {
    throw InvalidInput("jet_log needs constant term 1");
  }
  int acc = combine_accuracy(target_accuracy, a.accuracy());
  Jet x = (a - Jet::constant(a.nvars(), GaussianRational(1))).truncated(acc);
  Jet result(a.nvars(), acc);
  Jet power = Jet::constant(a.nvars(), GaussianRational(1), acc);
  for (int k = 1; k <= acc; ++k) {
    power = power * x;
    if (power.known_zero()) break;
    Rational coef(k % 2 == 1 ? 1 : -1, k);
    result += power.scaled(GaussianRational(coef));
  }
  return result;
}

}  // namespace endoquant
