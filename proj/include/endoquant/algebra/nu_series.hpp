#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <string>
#include <type_traits>
#include <utility>

#include "endoquant/algebra/errors.hpp"

namespace endoquant {

/// Formal Laurent series in nu with a finite polar part.
///
/// Orders below smin() are zero; orders in [smin(), smax()] are known exactly;
/// orders above smax() are unknown. smax() == kOpen marks a genuine Laurent
/// polynomial. Zero coefficients are not stored.
template <class T>
class NuSeries {
 public:
  static constexpr int kOpen = INT_MAX;

  NuSeries() = default;
  NuSeries(int smin, int smax) : smin_(smin), smax_(smax) {
    if (smax_ != kOpen && smax_ < smin_ - 1) smax_ = smin_ - 1;
  }

  static NuSeries single(int order, T value, int smax = kOpen) {
    NuSeries s(order, smax);
    s.terms_.emplace(order, std::move(value));
    return s;
  }

  int smin() const { return smin_; }
  int smax() const { return smax_; }
  bool is_open() const { return smax_ == kOpen; }
  bool empty() const { return terms_.empty(); }
  const std::map<int, T>& terms() const { return terms_; }
  std::map<int, T>& terms() { return terms_; }

  bool known(int s) const { return s <= smax_; }

  /// Coefficient at order s; nullptr for a known zero. Throws beyond the window.
  const T* find(int s) const {
    if (!known(s)) {
      throw WindowUnderflow("nu order " + std::to_string(s) + " beyond series window (smax " +
                            std::to_string(smax_) + ")");
    }
    auto it = terms_.find(s);
    return it == terms_.end() ? nullptr : &it->second;
  }

  /// Adds v at order s; terms outside the window are dropped.
  void add(int s, const T& v) {
    if (s > smax_) return;
    if (s < smin_) throw WindowUnderflow("nu order below declared series start");
    auto [it, inserted] = terms_.try_emplace(s, v);
    if (!inserted) it->second += v;
  }

  /// Restricts the window to s <= smax.
  NuSeries truncated(int smax) const {
    if (smax >= smax_) return *this;
    NuSeries out(smin_, smax);
    for (const auto& [s, v] : terms_) {
      if (s <= out.smax_) out.terms_.emplace(s, v);
    }
    return out;
  }

  /// Raises smin to the lowest stored order (no-op when empty).
  void tighten() {
    if (!terms_.empty()) smin_ = std::max(smin_, terms_.begin()->first);
  }

  template <class F>
  NuSeries<std::invoke_result_t<F, const T&>> map(F&& f) const {
    NuSeries<std::invoke_result_t<F, const T&>> out(smin_, smax_);
    for (const auto& [s, v] : terms_) out.terms().emplace(s, f(v));
    return out;
  }

  NuSeries shifted(int by) const {
    NuSeries out(smin_ + by, smax_ == kOpen ? kOpen : smax_ + by);
    for (const auto& [s, v] : terms_) out.terms_.emplace(s + by, v);
    return out;
  }

  NuSeries& operator+=(const NuSeries& o) {
    NuSeries out(std::min(smin_, o.smin_), std::min(smax_, o.smax_));
    for (const auto& [s, v] : terms_) {
      if (s <= out.smax_) out.terms_.emplace(s, v);
    }
    for (const auto& [s, v] : o.terms_) out.add(s, v);
    *this = std::move(out);
    return *this;
  }

  friend NuSeries operator+(NuSeries a, const NuSeries& b) { return a += b; }

 private:
  int smin_ = 0;
  int smax_ = kOpen;
  std::map<int, T> terms_;
};

inline int add_orders(int a, int b) {
  if (a == INT_MAX || b == INT_MAX) return INT_MAX;
  return a + b;
}

/// Window of a product: smin adds; smax is the tighter of the two honest bounds.
inline std::pair<int, int> product_window(int amin, int amax, int bmin, int bmax) {
  return {amin + bmin, std::min(add_orders(amin, bmax), add_orders(amax, bmin))};
}

/// Cauchy product with a caller-supplied coefficient multiplication.
template <class A, class B, class Mul>
auto nu_product(const NuSeries<A>& a, const NuSeries<B>& b, Mul&& mul) {
  using R = std::invoke_result_t<Mul, const A&, const B&>;
  auto [lo, hi] = product_window(a.smin(), a.smax(), b.smin(), b.smax());
  NuSeries<R> out(lo, hi);
  for (const auto& [sa, va] : a.terms()) {
    for (const auto& [sb, vb] : b.terms()) {
      if (!out.known(sa + sb)) break;
      out.add(sa + sb, mul(va, vb));
    }
  }
  return out;
}

}  // namespace endoquant
