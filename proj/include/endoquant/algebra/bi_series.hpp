#pragma once

#include <algorithm>
#include <climits>
#include <compare>
#include <map>
#include <type_traits>
#include <utility>
#include <vector>

#include "endoquant/algebra/jet.hpp"

namespace endoquant {

/// Monomial eta^hol etabar^antihol in the displacement parameters.
struct BiKey {
  Exponent hol{};
  Exponent antihol{};

  int p() const { return total_degree(hol); }
  int q() const { return total_degree(antihol); }
  friend auto operator<=>(const BiKey&, const BiKey&) = default;
  friend bool operator==(const BiKey&, const BiKey&) = default;
};

inline BiKey operator+(const BiKey& a, const BiKey& b) {
  BiKey k;
  for (int i = 0; i < kMaxVars; ++i) {
    k.hol[i] = static_cast<std::uint8_t>(a.hol[i] + b.hol[i]);
    k.antihol[i] = static_cast<std::uint8_t>(a.antihol[i] + b.antihol[i]);
  }
  return k;
}

/// Truncation box for expansions in (eta, etabar): |hol| <= pmax, |antihol| <= qmax
/// and |hol| + |antihol| <= total.
struct BiBox {
  int pmax = 0;
  int qmax = 0;
  int total = INT_MAX;

  bool admits(int p, int q) const { return p <= pmax && q <= qmax && p + q <= total; }
  bool admits(const BiKey& k) const { return admits(k.p(), k.q()); }
};

/// Truncated expansion in eta, etabar (m components each). Absent keys are zero.
template <class T>
class BiSeries {
 public:
  BiSeries() = default;
  BiSeries(int m, BiBox box) : m_(m), box_(box) {}

  int m() const { return m_; }
  const BiBox& box() const { return box_; }
  const std::map<BiKey, T>& terms() const { return terms_; }
  std::map<BiKey, T>& terms() { return terms_; }

  const T* find(const BiKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? nullptr : &it->second;
  }

  void add(const BiKey& k, const T& v) {
    if (!box_.admits(k)) return;
    auto [it, inserted] = terms_.try_emplace(k, v);
    if (!inserted) it->second += v;
  }

  BiSeries& operator+=(const BiSeries& o) {
    for (const auto& [k, v] : o.terms_) add(k, v);
    return *this;
  }

 private:
  int m_ = 0;
  BiBox box_;
  std::map<BiKey, T> terms_;
};

template <class A, class B, class Mul>
auto bi_product(const BiSeries<A>& a, const BiSeries<B>& b, Mul&& mul) {
  using R = std::invoke_result_t<Mul, const A&, const B&>;
  BiBox box{std::min(a.box().pmax, b.box().pmax), std::min(a.box().qmax, b.box().qmax),
            std::min(a.box().total, b.box().total)};
  BiSeries<R> out(a.m(), box);
  for (const auto& [ka, va] : a.terms()) {
    for (const auto& [kb, vb] : b.terms()) {
      BiKey k = ka + kb;
      if (!box.admits(k)) continue;
      out.add(k, mul(va, vb));
    }
  }
  return out;
}

/// All exponent vectors over m slots with total degree exactly n, in lexicographic order.
std::vector<Exponent> exponents_of_degree(int m, int n);

/// Number of distinct orderings of the multiset encoded by e: |e|! / prod e_i!.
Rational multinomial(const Exponent& e);
/// prod e_i!.
Rational exponent_factorial(const Exponent& e);

}  // namespace endoquant
