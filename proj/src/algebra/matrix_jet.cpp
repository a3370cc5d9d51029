#include "endoquant/algebra/matrix_jet.hpp"

#include <algorithm>
#include <sstream>

#include "endoquant/algebra/errors.hpp"

namespace endoquant {

MatrixJet::MatrixJet(int dim, int nvars)
    : dim_(dim), nvars_(nvars), entries_(static_cast<std::size_t>(dim * dim), Jet(nvars)) {
  if (dim < 1) throw ShapeMismatch("matrix dimension must be positive");
}

MatrixJet MatrixJet::identity(int dim, int nvars) {
  MatrixJet m(dim, nvars);
  for (int i = 0; i < dim; ++i) m(i, i) = Jet::constant(nvars, GaussianRational(1));
  return m;
}

MatrixJet MatrixJet::scalar(int dim, const Jet& j) {
  MatrixJet m(dim, j.nvars());
  for (int i = 0; i < dim; ++i) m(i, i) = j;
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) {
      if (i != k) m(i, k) = Jet(j.nvars(), j.accuracy());
    }
  }
  return m;
}

MatrixJet MatrixJet::from_constants(const std::vector<std::vector<GaussianRational>>& rows, int nvars) {
  int d = static_cast<int>(rows.size());
  MatrixJet m(d, nvars);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = Jet::constant(nvars, rows[i][j]);
  }
  return m;
}

int MatrixJet::accuracy() const {
  int acc = kExact;
  for (const auto& e : entries_) acc = std::min(acc, e.accuracy());
  return acc;
}

bool MatrixJet::exactly_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Jet& j) { return j.exactly_zero(); });
}

bool MatrixJet::known_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Jet& j) { return j.known_zero(); });
}

MatrixJet MatrixJet::truncated(int accuracy) const {
  MatrixJet out = *this;
  for (auto& e : out.entries_) e = e.truncated(accuracy);
  return out;
}

MatrixJet MatrixJet::derive(int var) const {
  MatrixJet out = *this;
  for (auto& e : out.entries_) e = e.derive(var);
  return out;
}

MatrixJet MatrixJet::scaled(const GaussianRational& c) const {
  MatrixJet out = *this;
  for (auto& e : out.entries_) e *= c;
  return out;
}

MatrixJet MatrixJet::hermitian_conj_swap(int m) const {
  MatrixJet out(dim_, nvars_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) out(i, j) = (*this)(j, i).conj_swap(m);
  }
  return out;
}

std::vector<std::vector<GaussianRational>> MatrixJet::value_at_origin() const {
  std::vector<std::vector<GaussianRational>> v(static_cast<std::size_t>(dim_),
                                               std::vector<GaussianRational>(static_cast<std::size_t>(dim_)));
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) v[i][j] = (*this)(i, j).value_at_origin();
  }
  return v;
}

MatrixJet& MatrixJet::operator+=(const MatrixJet& o) {
  if (dim_ != o.dim_) throw ShapeMismatch("matrix dimensions differ");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

MatrixJet& MatrixJet::operator-=(const MatrixJet& o) {
  if (dim_ != o.dim_) throw ShapeMismatch("matrix dimensions differ");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

MatrixJet operator*(const MatrixJet& a, const MatrixJet& b) {
  if (a.dim_ == 1 && b.dim_ != 1) {
    MatrixJet out = b;
    for (auto& e : out.entries_) e = a.entries_[0] * e;
    return out;
  }
  if (b.dim_ == 1 && a.dim_ != 1) {
    MatrixJet out = a;
    for (auto& e : out.entries_) e = e * b.entries_[0];
    return out;
  }
  if (a.dim_ != b.dim_) throw ShapeMismatch("matrix dimensions differ");
  int d = a.dim_;
  MatrixJet out(d, a.nvars_);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Jet acc(a.nvars_);
      for (int k = 0; k < d; ++k) {
        const Jet& x = a(i, k);
        const Jet& y = b(k, j);
        if (x.exactly_zero() || y.exactly_zero()) continue;
        acc += x * y;
      }
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

bool operator==(const MatrixJet& a, const MatrixJet& b) {
  return a.dim_ == b.dim_ && a.entries_ == b.entries_;
}

std::string MatrixJet::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < dim_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < dim_; ++j) {
      if (j) os << ", ";
      os << (*this)(i, j).str();
    }
  }
  os << "]";
  return os.str();
}

MatrixJet commutator(const MatrixJet& a, const MatrixJet& b) { return a * b - b * a; }

MatrixJet jet_scale(const Jet& j, const MatrixJet& a) {
  MatrixJet out(a.dim(), a.nvars());
  for (int r = 0; r < a.dim(); ++r) {
    for (int c = 0; c < a.dim(); ++c) out(r, c) = j * a(r, c);
  }
  return out;
}

std::optional<MatrixDifference> first_difference(const MatrixJet& a, const MatrixJet& b) {
  if (a.dim() != b.dim()) throw ShapeMismatch("comparing matrices of different dimension");
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (auto e = first_difference(a(i, j), b(i, j))) return MatrixDifference{i, j, *e};
    }
  }
  return std::nullopt;
}

std::vector<std::vector<GaussianRational>> invert_constant_matrix(std::vector<std::vector<GaussianRational>> a) {
  std::size_t n = a.size();
  std::vector<std::vector<GaussianRational>> inv(n, std::vector<GaussianRational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = GaussianRational(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw SingularValue("constant matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    GaussianRational scale = GaussianRational(1) / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      GaussianRational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

namespace {

MatrixJet minor_matrix(const MatrixJet& a, int row, int col) {
  int d = a.dim();
  MatrixJet out(d - 1, a.nvars());
  for (int i = 0, oi = 0; i < d; ++i) {
    if (i == row) continue;
    for (int j = 0, oj = 0; j < d; ++j) {
      if (j == col) continue;
      out(oi, oj) = a(i, j);
      ++oj;
    }
    ++oi;
  }
  return out;
}

}  // namespace

Jet determinant(const MatrixJet& a) {
  int d = a.dim();
  if (d == 1) return a(0, 0);
  if (d == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  Jet det(a.nvars());
  for (int j = 0; j < d; ++j) {
    if (a(0, j).exactly_zero()) continue;
    Jet term = a(0, j) * determinant(minor_matrix(a, 0, j));
    if (j % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

MatrixJet jet_inverse(const MatrixJet& a, int fallback_accuracy) {
  int d = a.dim();
  auto c0 = a.value_at_origin();
  auto inv0 = invert_constant_matrix(c0);
  if (a.is_exact() && d <= 4) {
    Jet det = determinant(a);
    if (det.max_degree() <= 0) {
      GaussianRational det0 = det.value_at_origin();
      MatrixJet adj(d, a.nvars());
      if (d == 1) {
        adj(0, 0) = Jet::constant(a.nvars(), GaussianRational(1));
      } else {
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            Jet cof = determinant(minor_matrix(a, j, i));
            adj(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
          }
        }
      }
      return adj.scaled(GaussianRational(1) / det0);
    }
  }
  int acc = a.is_exact() ? fallback_accuracy : a.accuracy();
  MatrixJet inv0m = MatrixJet::from_constants(inv0, a.nvars());
  // a = c0 (1 + n), 1/a = sum (-n)^k c0^{-1}.
  MatrixJet n = (inv0m * (a - MatrixJet::from_constants(c0, a.nvars()))).truncated(acc);
  MatrixJet result = MatrixJet::identity(d, a.nvars()).truncated(acc);
  MatrixJet power = result;
  for (int k = 1; k <= acc; ++k) {
    power = -(power * n);
    if (power.known_zero()) break;
    result += power;
  }
  return result * inv0m;
}

MatrixJet jet_exp(const MatrixJet& a, int target_accuracy) {
  for (const auto& row : a.value_at_origin()) {
    for (const auto& v : row) {
      if (!v.is_zero()) throw InvalidInput("jet_exp needs a vanishing constant term");
    }
  }
  int acc = combine_accuracy(target_accuracy, a.accuracy());
  MatrixJet x = a.truncated(acc);
  MatrixJet result = MatrixJet::identity(a.dim(), a.nvars()).truncated(acc);
  MatrixJet term = result;
  for (int k = 1; k <= acc; ++k) {
    term = (term * x).scaled(GaussianRational(Rational(1, k)));
    if (term.known_zero()) break;
    result += term;
  }
  return result;
}

MatrixJet jet_log(const MatrixJet& a, int target_accuracy) {
  auto c0 = a.value_at_origin();
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (c0[i][j] != GaussianRational(i == j ? 1 : 0)) {
        throw InvalidInput("jet_log needs identity constant term");
      }
    }
  }
  int acc = combine_accuracy(target_accuracy, a.accuracy());
  MatrixJet x = (a - MatrixJet::identity(a.dim(), a.nvars())).truncated(acc);
  MatrixJet result = MatrixJet(a.dim(), a.nvars()).truncated(acc);
  MatrixJet power = MatrixJet::identity(a.dim(), a.nvars()).truncated(acc);
  for (int k = 1; k <= acc; ++k) {
    power = power * x;
    if (power.known_zero()) break;
    result += power.scaled(GaussianRational(Rational(k % 2 == 1 ? 1 : -1, k)));
  }
  return result;
}

}  // namespace endoquant
