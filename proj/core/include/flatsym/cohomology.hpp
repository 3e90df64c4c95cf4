#pragma once

// Group cochains of the free group F = F_{2g} and of Z = <R> with
// coefficients in su(n) twisted by Ad o h, the relative complex of the
// restriction F -> Z as a mapping cone, and the cup-product pairing against
// the fundamental chain c.
//
// Conventions: (delta eta)(x) = eta - Ad_{h(x)} eta, and a tangent H at h
// corresponds to the cochain x_i -> Ad_{h_i} H_i (right trivialization).

#include <array>
#include <cstdint>
#include <vector>

#include "flatsym/rep_variety.hpp"
#include "flatsym/report.hpp"

namespace flatsym {

/// A 1-cochain on F, determined by its values on the generators.
struct CochainC1 {
  std::vector<AlgebraVector> values;

  static CochainC1 zero(int n, int genus);
};

RVector to_coords(const CochainC1 &u);
CochainC1 cochain_from(int n, const RVector &coords);

CochainC1 coboundary0(const AlgebraVector &eta, const RepPoint &h);

/// Matrix of eta -> coboundary0(eta, h) in coordinates.
RMatrix coboundary_matrix(const RepPoint &h);

/// Value on an arbitrary word by u(xy) = u(x) + Ad_{h(x)} u(y) and
/// u(x^{-1}) = -Ad_{h(x)^{-1}} u(x).
AlgebraVector cochain_value(const CochainC1 &u, const Word &w, const RepPoint &h);

/// u(R) through the Fox expansion sum_i rho_h(dR/dx_i) u(x_i).
AlgebraVector relator_map(const CochainC1 &u, const RepPoint &h);

RMatrix relator_map_matrix(const RepPoint &h);

CochainC1 cochain_of_tangent(const RepTangent &x, const RepPoint &h);
RepTangent tangent_of_cochain(const CochainC1 &u, const RepPoint &h);

/// Dimensions and map ranks around the six-term sequence
/// 0 -> H0(F) -> H0(Z) -> H1(F,Z) -> H1(F) -> H1(Z) -> H2(F,Z) -> 0.
struct ComplexSummary {
  int h0_free = 0;
  int h1_free = 0;
  int h0_cyclic = 0;
  int h1_cyclic = 0;
  int h1_relative = 0;
  int h2_relative = 0;
  /// Ranks of H0(F)->H0(Z), H0(Z)->H1(F,Z), H1(F,Z)->H1(F), H1(F)->H1(Z),
  /// H1(Z)->H2(F,Z).
  std::array<int, 5> map_ranks{};
  /// Alternating sum of the dimensions.
  int euler = 0;
  /// Sum over the six nodes of |dim - rank in - rank out|.
  int exactness_defect = 0;
  /// |h1_rel - h1_free| + |h2_rel - h0_free|.
  int duality_defect = 0;
  /// rank of the coboundary C0(F) -> C1(F).
  int b1_dim = 0;
};

ComplexSummary summary(const RepPoint &h);

/// <u cup v, c> = sum over n(a,b) in the relator chain of n <u(a), Ad_{h(a)} v(b)>.
double cup_pairing(const CochainC1 &u, const CochainC1 &v, const RepPoint &h);

struct PairingAnalysis {
  /// dim ker(relator_map) / (B1 cap ker).
  int dimension = 0;
  int rank = 0;
  double smallest_singular_value = 0.0;
  /// d eps_R surjective at h; otherwise the result is flagged degenerate.
  bool surjective = false;
  RMatrix matrix;
};

PairingAnalysis pairing_analysis(const RepPoint &h);

/// 2 <u cup v, c> = omega(X, Y) for v in ker(relator_map), and coboundaries
/// pair trivially with that kernel.
VerificationReport verify_cup_equals_omega(int n, int genus, std::size_t samples,
                                           std::uint64_t seed, double tolerance = 1e-8);

/// Smallest singular value of the pairing at the witness point.
VerificationReport verify_pairing_nondegeneracy(int n, int genus, int beta_index,
                                                double tolerance = 1e-8);

/// Euler sum, exactness and duality symmetries at random points and at the
/// trivial point; exact integers.
VerificationReport verify_long_exact_sequence(int n, int genus, std::size_t samples,
                                              std::uint64_t seed);

} // namespace flatsym
