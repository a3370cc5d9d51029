#include "endoquant/algebra/bi_series.hpp"

namespace endoquant {

namespace {

void fill(int m, int slot, int left, Exponent& cur, std::vector<Exponent>& out) {
  if (slot == m - 1) {
    cur[slot] = static_cast<std::uint8_t>(left);
    out.push_back(cur);
    cur[slot] = 0;
    return;
  }
  for (int v = left; v >= 0; --v) {
    cur[slot] = static_cast<std::uint8_t>(v);
    fill(m, slot + 1, left - v, cur, out);
  }
  cur[slot] = 0;
}

}  // namespace

std::vector<Exponent> exponents_of_degree(int m, int n) {
  std::vector<Exponent> out;
  if (m <= 0) {
    if (n == 0) out.push_back(Exponent{});
    return out;
  }
  Exponent cur{};
  fill(m, 0, n, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

Rational exponent_factorial(const Exponent& e) {
  Rational f(1);
  for (auto x : e) f *= factorial(x);
  return f;
}

Rational multinomial(const Exponent& e) { return factorial(total_degree(e)) / exponent_factorial(e); }

}  // namespace endoquant
