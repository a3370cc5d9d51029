#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endoquant/algebra/jet.hpp"

namespace endoquant {

/// Square d×d matrix of jets sharing one variable set.
class MatrixJet {
 public:
  MatrixJet() = default;
  MatrixJet(int dim, int nvars);

  static MatrixJet identity(int dim, int nvars);
  static MatrixJet scalar(int dim, const Jet& j);
  static MatrixJet from_constants(const std::vector<std::vector<GaussianRational>>& rows, int nvars);

  int dim() const { return dim_; }
  int nvars() const { return nvars_; }
  int accuracy() const;
  bool is_exact() const { return accuracy() == kExact; }
  bool exactly_zero() const;
  bool known_zero() const;

  Jet& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * dim_ + j)]; }
  const Jet& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * dim_ + j)]; }

  MatrixJet truncated(int accuracy) const;
  MatrixJet derive(int var) const;
  MatrixJet scaled(const GaussianRational& c) const;
  MatrixJet hermitian_conj_swap(int m) const;
  std::vector<std::vector<GaussianRational>> value_at_origin() const;

  MatrixJet& operator+=(const MatrixJet& o);
  MatrixJet& operator-=(const MatrixJet& o);
  MatrixJet& operator*=(const GaussianRational& c) { return *this = scaled(c); }
  friend MatrixJet operator+(MatrixJet a, const MatrixJet& b) { return a += b; }
  friend MatrixJet operator-(MatrixJet a, const MatrixJet& b) { return a -= b; }
  friend MatrixJet operator-(const MatrixJet& a) { return a.scaled(GaussianRational(-1)); }
  /// Matrix product; a 1×1 operand acts as a scalar on the other factor.
  friend MatrixJet operator*(const MatrixJet& a, const MatrixJet& b);
  friend MatrixJet operator*(const MatrixJet& a, const GaussianRational& c) { return a.scaled(c); }
  friend MatrixJet operator*(const GaussianRational& c, const MatrixJet& a) { return a.scaled(c); }
  friend bool operator==(const MatrixJet& a, const MatrixJet& b);

  std::string str() const;

 private:
  int dim_ = 0;
  int nvars_ = 0;
  std::vector<Jet> entries_;
};

MatrixJet commutator(const MatrixJet& a, const MatrixJet& b);
/// Scalar jet times matrix, entrywise.
MatrixJet jet_scale(const Jet& j, const MatrixJet& a);

struct MatrixDifference {
  int row;
  int col;
  Exponent monomial;
};

std::optional<MatrixDifference> first_difference(const MatrixJet& a, const MatrixJet& b);

/// Inverse of a matrix of exact constants; throws SingularValue.
std::vector<std::vector<GaussianRational>> invert_constant_matrix(std::vector<std::vector<GaussianRational>> a);

Jet determinant(const MatrixJet& a);

/// Pointwise inverse. Exact polynomial input with constant determinant gives an
/// exact result; otherwise the result carries the input accuracy, or
/// fallback_accuracy when the input is exact.
MatrixJet jet_inverse(const MatrixJet& a, int fallback_accuracy);

/// exp of a matrix jet vanishing at the origin, truncated at target_accuracy.
MatrixJet jet_exp(const MatrixJet& a, int target_accuracy);
/// log of a matrix jet equal to the identity at the origin.
MatrixJet jet_log(const MatrixJet& a, int target_accuracy);

}  // namespace endoquant
