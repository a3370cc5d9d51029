#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "endoquant/starprod/star.hpp"

namespace endoquant {

/// One checked identity: parameters and, on failure, the first discrepancy.
struct CheckRecord {
  std::string name;
  std::string params;
  bool pass = true;
  std::string locator;
};

struct Report {
  std::vector<CheckRecord> records;

  bool all_pass() const;
  /// Records sorted by name (stable), so reports are deterministic.
  void sort();
  void append(const Report& other);
  /// One line per record: "PASS|FAIL name [params] locator".
  std::string text() const;
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  int order = 2;
  /// Random sections per check.
  int samples = 4;
  /// Overrides the graph coefficients c (negative controls).
  Coefficient coefficient;
};

/// Throws InvalidInput when inexact chart data leaves too little derivative
/// headroom for products through `order` of degree-3 sections.
void require_headroom(const Chart& chart, int order);

/// Route equivalence, associativity, unitality, separation of variables,
/// constant-u degeneration, naturality, inversion (tensor and operator form)
/// and invariance under a constant change of trivialization.
Report verify_suite(const Chart& chart, const SuiteOptions& options);

/// (dPhi/dz^k + Gamma_k) *_u g = dg/dz^k + (dPhi/dz^k) g + g Gamma_k on both
/// routes, and the scalar identities for dPhi/dz^k * f and f * dPhi/dzbar^l.
Report verify_left_mult(const Chart& chart, const SuiteOptions& options);

/// d = 1: *_u equals the scalar product for the potential Phi + log u.
Report verify_twisted(const Chart& chart, const SuiteOptions& options);

/// Suite, left multiplication and (for d = 1) the twist, sorted.
Report verify_all(const Chart& chart, const SuiteOptions& options);

/// Triangular coefficients except c(target) -> c(target) + shift.
Coefficient corrupted_coefficient(const FGraph& target, const Rational& shift);

/// Chart with the same potentials and bundle metric a u a^dagger for constant a.
Chart change_trivialization(const Chart& chart, const MatrixJet& a);

/// Inverse of a constant invertible matrix; throws InvalidInput if singular.
MatrixJet constant_inverse(const MatrixJet& a);

}  // namespace endoquant
