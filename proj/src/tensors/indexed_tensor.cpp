#include "endoquant/tensors/indexed_tensor.hpp"

#include <climits>
#include <sstream>

namespace endoquant {

Rational index_count(const Exponent& e) { return multinomial(e); }

MatrixJet promote(const MatrixJet& a, int d) {
  if (a.dim() == d) return a;
  if (a.dim() != 1) throw InvalidInput("promote: matrix dimension mismatch");
  return MatrixJet::scalar(d, a(0, 0));
}

void accumulate(MatrixJet& a, const MatrixJet& b) {
  if (a.dim() == 0) {
    a = b;
  } else if (a.dim() == b.dim()) {
    a += b;
  } else if (a.dim() == 1) {
    a = promote(a, b.dim()) + b;
  } else {
    a += promote(b, a.dim());
  }
}

int IndexedTensor::row_window(const Exponent& a) const {
  auto it = row_smax.find(a);
  return it == row_smax.end() ? smax : it->second;
}

int IndexedTensor::col_window(const Exponent& b) const {
  auto it = col_smax.find(b);
  return it == col_smax.end() ? smax : it->second;
}

int IndexedTensor::window(const Exponent& a, const Exponent& b) const {
  auto r = row_smax.find(a);
  auto c = col_smax.find(b);
  if (r == row_smax.end() && c == col_smax.end()) return smax;
  if (r == row_smax.end()) return c->second;
  if (c == col_smax.end()) return r->second;
  return std::min(r->second, c->second);
}

TensorSeries IndexedTensor::at(const Exponent& a, const Exponent& b) const {
  auto it = entries.find({a, b});
  if (it != entries.end()) return it->second;
  return TensorSeries(smin, window(a, b));
}

void IndexedTensor::add(const Exponent& a, const Exponent& b, int order, const MatrixJet& v) {
  auto [it, inserted] = entries.try_emplace({a, b}, TensorSeries(smin, window(a, b)));
  auto& s = it->second;
  if (order > s.smax()) return;
  auto& terms = s.terms();
  auto t = terms.find(order);
  if (t == terms.end()) {
    if (order < s.smin()) throw WindowUnderflow("tensor entry below declared start");
    terms.emplace(order, v);
  } else {
    accumulate(t->second, v);
  }
}

void IndexedTensor::prune() {
  for (auto it = entries.begin(); it != entries.end();) {
    auto& terms = it->second.terms();
    for (auto t = terms.begin(); t != terms.end();) {
      t = t->second.exactly_zero() ? terms.erase(t) : std::next(t);
    }
    it = terms.empty() ? entries.erase(it) : std::next(it);
  }
}

IndexedTensor contract(const IndexedTensor& a, const IndexedTensor& b) {
  if (a.m != b.m) throw InvalidInput("contract: index ranges differ");
  bool a_open = a.is_open(), b_open = b.is_open();
  if (!a_open && !b_open) throw InvalidInput("contract: both operands are truncated");
  if ((!a_open && !a.row_smax.empty()) || (!b_open && !b.col_smax.empty())) {
    throw InvalidInput("contract: truncated operand has windows on the free index");
  }
  IndexedTensor out(a.m, a.smin + b.smin, TensorSeries::kOpen);
  std::map<Exponent, std::vector<std::pair<Exponent, const TensorSeries*>>> b_rows;
  for (const auto& [k, v] : b.entries) b_rows[k.first].emplace_back(k.second, &v);

  // honest windows: the truncated side may hide terms in any absent entry
  if (!b_open) {
    for (const auto& [k, v] : a.entries) {
      if (v.empty()) continue;
      int w = add_orders(v.terms().begin()->first, b.row_window(k.second));
      auto [it, ins] = out.row_smax.try_emplace(k.first, w);
      if (!ins) it->second = std::min(it->second, w);
    }
  }
  if (!a_open) {
    for (const auto& [k, v] : b.entries) {
      if (v.empty()) continue;
      int w = add_orders(a.col_window(k.first), v.terms().begin()->first);
      auto [it, ins] = out.col_smax.try_emplace(k.second, w);
      if (!ins) it->second = std::min(it->second, w);
    }
  }

  auto mul = [](const MatrixJet& x, const MatrixJet& y) { return x * y; };
  for (const auto& [ka, va] : a.entries) {
    auto rows = b_rows.find(ka.second);
    if (rows == b_rows.end()) continue;
    GaussianRational weight(index_count(ka.second));
    for (const auto& [c, vb] : rows->second) {
      // windows follow the lowest stored orders, not the declared starts
      TensorSeries x = va, y = *vb;
      x.tighten();
      y.tighten();
      auto prod = nu_product(x, y, mul);
      for (const auto& [s, v] : prod.terms()) {
        if (s <= out.window(ka.first, c)) out.add(ka.first, c, s, v * weight);
      }
    }
  }
  // re-window entries created before all bounds were known
  for (auto& [k, v] : out.entries) v = v.truncated(out.window(k.first, k.second));
  out.prune();
  return out;
}

TensorSeries delta_entry(const Exponent& k, int nvars) {
  Jet j = Jet::constant(nvars, GaussianRational(Rational(1 / index_count(k))));
  return TensorSeries::single(0, MatrixJet::scalar(1, j));
}

IndexedTensor delta_tensor(int m, int max_rank, int nvars) {
  IndexedTensor t(m, 0, TensorSeries::kOpen);
  for (int n = 0; n <= max_rank; ++n) {
    for (const auto& k : exponents_of_degree(m, n)) t.entries.emplace(IndexKey{k, k}, delta_entry(k, nvars));
  }
  return t;
}

std::optional<Discrepancy> compare_series(const TensorSeries& a, const TensorSeries& b, int lo, int hi) {
  for (int s = lo; s <= hi; ++s) {
    const MatrixJet* x = a.find(s);
    const MatrixJet* y = b.find(s);
    if (!x && !y) continue;
    int d = std::max(x ? x->dim() : 0, y ? y->dim() : 0);
    int nv = x ? x->nvars() : y->nvars();
    MatrixJet xa = x ? promote(*x, d) : MatrixJet(d, nv);
    MatrixJet ya = y ? promote(*y, d) : MatrixJet(d, nv);
    if (auto diff = first_difference(xa, ya)) {
      Discrepancy r;
      r.order = s;
      r.row = diff->row;
      r.col = diff->col;
      r.monomial = diff->monomial;
      r.what = xa(diff->row, diff->col).coeff(diff->monomial).str() + " vs " +
               ya(diff->row, diff->col).coeff(diff->monomial).str();
      return r;
    }
  }
  return std::nullopt;
}

std::string describe(const Discrepancy& d, int m, int nvars) {
  std::ostringstream os;
  os << "nu^" << d.order << " index (" << format_exponent(d.index.first, m) << ", "
     << format_exponent(d.index.second, m) << ") entry [" << d.row << "," << d.col << "] monomial "
     << format_exponent(d.monomial, nvars) << ": " << d.what;
  return os.str();
}

}  // namespace endoquant
