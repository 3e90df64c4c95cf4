#pragma once

// The extended moduli space
//   X_beta = {(h, Lambda) in G^{2g} x su(n) : eps_R(h) = beta exp(Lambda)}
// for a central beta, the 2-form omega~ = proj_1^* omega + proj_2^* sigma with
// sigma = I(exp^* lambda), Newton-retraction charts, and the moment map.
//
// Tangents (H, zeta) are left-trivialized in H; the linearized constraint
// reads Ad_{eps^{-1}} (d eps_R)(H) = dexp_left(Lambda, zeta).

#include <cstdint>
#include <functional>
#include <vector>

#include "flatsym/forms.hpp"
#include "flatsym/rep_variety.hpp"
#include "flatsym/report.hpp"

namespace flatsym {

struct ExtendedSpace {
  int n = 2;
  int genus = 2;
  GroupPoint beta;

  /// beta = e^{2 pi i k / n} I.
  static ExtendedSpace central(int n, int genus, int beta_index);

  /// Real dimension of T(G^{2g} x su(n)).
  int ambient_dim() const { return (2 * genus + 1) * algebra_dim(n); }
};

struct ExtendedPoint {
  RepPoint h;
  AlgebraVector Lambda;
};

struct ExtendedTangent {
  RepTangent H;
  AlgebraVector zeta;
};

RVector to_coords(const ExtendedTangent &x);
ExtendedTangent extended_tangent_from(int n, const RVector &coords);

/// || log(exp(-Lambda) beta^{-1} eps_R(h)) ||, or the Frobenius mismatch
/// when the logarithm is undefined.
double constraint_residual(const ExtendedSpace &space, const ExtendedPoint &p);

/// Rows: Ad_{eps^{-1}} d eps_R | -dexp_left(Lambda), on tangent coordinates.
RMatrix constraint_jacobian(const ExtendedPoint &p);

/// Residual of the linearized constraint for one tangent.
double linear_constraint_residual(const ExtendedPoint &p, const ExtendedTangent &x);

/// Random point: random h, Lambda = log(beta^{-1} eps_R(h)); resamples until
/// dexp_left(Lambda) is well conditioned.
ExtendedPoint random_extended_point(const ExtendedSpace &space, Rng &rng);

/// (exp^* lambda)_M(a, b, c) = lambda(dexp(M, a), dexp(M, b), dexp(M, c)).
double exp_pullback_lambda(const AlgebraVector &m, const AlgebraVector &a, const AlgebraVector &b,
                           const AlgebraVector &c);

/// sigma_Lambda(z1, z2) = int_0^1 t^2 (exp^* lambda)_{t Lambda}(Lambda, z1, z2) dt.
double sigma_eval(const AlgebraVector &lambda, const AlgebraVector &z1, const AlgebraVector &z2,
                  int quadrature_order = 24);

/// sigma as a 2-form on su(n) (single vector factor).
FormField sigma_form(int n, int quadrature_order = 24);

/// exp^* lambda as a 3-form on su(n).
FormField exp_lambda_form(int n);

/// omega(h; H1, H2) + sigma_Lambda(zeta1, zeta2).
double omega_tilde_eval(const ExtendedPoint &p, const ExtendedTangent &u, const ExtendedTangent &v,
                        int quadrature_order = 24);

struct TangentBasis {
  std::vector<ExtendedTangent> vectors;
  /// Same basis as columns of tangent coordinates (orthonormal).
  RMatrix coords;
  /// Rank of d eps_R at h.
  int image_rank = 0;
  /// False when d eps_R is not surjective; the kernel is then returned whole.
  bool surjective = true;
};

/// Orthonormal basis of the kernel of (H, zeta) -> Ad_{eps^{-1}} d eps_R(H) - dexp_left(Lambda, zeta).
TangentBasis tangent_basis(const ExtendedPoint &p);

struct ChartOptions {
  double tolerance = 1e-12;
  int max_iterations = 20;
};

struct ConstraintChart {
  ExtendedSpace space;
  ExtendedPoint base;
  TangentBasis basis;
  ChartOptions options;

  int dim() const { return static_cast<int>(basis.vectors.size()); }

  /// h_i exp(sum u_k H_{k,i}), then Newton in Lambda from Lambda + sum u_k zeta_k.
  /// Throws ConvergenceError when Newton fails.
  ExtendedPoint retract(const RVector &u) const;

  /// Exact differential of retract at u applied to v (implicit in Lambda).
  ExtendedTangent differential(const RVector &u, const ExtendedPoint &at, const RVector &v) const;
};

ConstraintChart make_chart(const ExtendedSpace &space, const ExtendedPoint &p,
                           ChartOptions options = {});

/// omega~ pulled back through the chart: a 2-form on R^dim.
FormField chart_omega_tilde(const ConstraintChart &chart, int quadrature_order = 24);

/// Conjugation field eta~ at p: (Ad_{h_i^{-1}} eta - eta, [eta, Lambda]).
ExtendedTangent extended_conj_field(const AlgebraVector &eta, const ExtendedPoint &p);

ExtendedPoint conj_action(const GroupPoint &s, const ExtendedPoint &p);

/// mu(h, Lambda) = 2 Lambda.
AlgebraVector moment_map(const ExtendedPoint &p);

/// Matrix of omega~ on tangent_basis(p).
RMatrix gram_matrix(const ExtendedPoint &p, int quadrature_order = 24);

struct ReducedForm {
  /// dim ker d proj_2 (tangents with zeta = 0).
  int kernel_dim = 0;
  /// dim of the span of eta~ for eta in stab(Lambda).
  int orbit_dim = 0;
  int dimension = 0;
  int rank = 0;
  double smallest_singular_value = 0.0;
  RMatrix matrix;
};

/// omega~ on ker d proj_2 modulo {eta~ : [eta, Lambda] = 0}, realized on the
/// orthogonal complement of the orbit directions inside the kernel.
ReducedForm reduced_form(const ExtendedPoint &p);

/// Neighbours of a point on mu^{-1}(0): random steps in ker d eps_R followed
/// by re-solving eps_R(h) = beta with Lambda = 0.
std::vector<ExtendedPoint> zero_level_neighbors(const ExtendedSpace &space,
                                                const ExtendedPoint &center, std::size_t count,
                                                std::uint64_t seed, double radius = 0.2);

/// Witness point (witness_point(n, genus, k), 0) on mu^{-1}(0).
ExtendedPoint extended_witness(const ExtendedSpace &space, int beta_index);

// --- verification ---------------------------------------------------------

/// d sigma = exp^* lambda in the chart su(n) = R^{dim}.
VerificationReport verify_sigma_closed(int n, std::size_t samples, std::uint64_t seed,
                                       DifferenceScheme scheme = {}, int quadrature_order = 24,
                                       double tolerance = 1e-6);

/// sigma_Lambda([eta, Lambda], z) = -theta_eta(beta exp Lambda; dexp(Lambda, z)) + 2 <eta, z>.
VerificationReport verify_sigma_contraction(const ExtendedSpace &space, std::size_t samples,
                                            std::uint64_t seed, int quadrature_order = 24,
                                            double tolerance = 1e-7);

/// (I e_beta^* theta_eta)_Lambda = 2 <eta, Lambda>.
VerificationReport verify_homotopy_theta(const ExtendedSpace &space, std::size_t samples,
                                         std::uint64_t seed, int quadrature_order = 24,
                                         double tolerance = 1e-9);

/// chart_d of the pulled-back omega~ at the chart origin on coordinate triples.
VerificationReport verify_closed_in_charts(const ExtendedSpace &space, std::size_t charts,
                                           std::uint64_t seed, DifferenceScheme scheme = {},
                                           int quadrature_order = 24, double tolerance = 1e-5);

/// i_eta~ omega~ = <eta, d mu> and mu(s.p) = Ad_s mu(p); also G-invariance
/// of omega~.
VerificationReport verify_moment(const ExtendedSpace &space, std::size_t samples,
                                 std::uint64_t seed, int quadrature_order = 24,
                                 double tolerance = 1e-7, double equivariance_tolerance = 1e-12);

/// Gram and reduced-form nondegeneracy at the witness and its neighbours on
/// mu^{-1}(0).
VerificationReport verify_nondegeneracy(const ExtendedSpace &space, int beta_index,
                                        std::size_t neighbors, std::uint64_t seed,
                                        int quadrature_order = 24, double tolerance = 1e-6);

} // namespace flatsym
