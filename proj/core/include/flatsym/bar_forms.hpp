#pragma once

// The bicomplex forms on powers of G = SU(n):
//   lambda  = (1/6) theta . [theta, theta]   on G,
//   Omega   = theta_1 . thetabar_2           on G^2,
//   theta_eta = eta . (theta + thetabar)     on G,
// together with the bar differential delta in the low degrees used here and
// the infinitesimal conjugation action.
//
// With the determinant convention lambda(x1, x2, x3) = <x1, [x2, x3]>.

#include <cstdint>

#include "flatsym/forms.hpp"
#include "flatsym/report.hpp"

namespace flatsym {

double lambda_eval(const GroupPoint &g, const AlgebraVector &x1, const AlgebraVector &x2,
                   const AlgebraVector &x3);

/// Omega((g1, g2); (z1, z2), (w1, w2)) = <z1, Ad_{g2} w2> - <w1, Ad_{g2} z2>.
double omega_pair_eval(const GroupPoint &g1, const GroupPoint &g2, const AlgebraVector &z1,
                       const AlgebraVector &z2, const AlgebraVector &w1, const AlgebraVector &w2);

/// theta_eta(g; z) = <eta, z + Ad_g z>.
double theta_eta_eval(const AlgebraVector &eta, const GroupPoint &g, const AlgebraVector &z);

/// Left-trivialized generator of g -> exp(t eta) g exp(-t eta):
/// Ad_{g^{-1}} eta - eta.
AlgebraVector conjugation_generator(const AlgebraVector &eta, const GroupPoint &g);

FormField lambda_form(int n);
FormField big_omega_form(int n);
FormField theta_form(const AlgebraVector &eta);

/// Diagonal conjugation vector field on G^p.
VectorFieldModel conjugation_field(const AlgebraVector &eta, int copies);

/// m(g1, g2) = g1 g2 with its left-trivialized differential
/// (z1, z2) -> Ad_{g2^{-1}} z1 + z2.
SmoothMap multiplication_map(int n);

/// Bar differential on forms over G^p for p = 1, 2:
/// (delta b)(g_1..g_{p+1}) = sum_i (-1)^i d_i^* b with face maps
/// d_0 = drop first, d_i = multiply g_i g_{i+1}, d_{p+1} = drop last.
FormField bar_delta(const FormField &b);

/// delta(lambda) = pi_1^* lambda - m^* lambda + pi_2^* lambda on G^2.
FormField bar_delta_lambda(int n);

/// Checks d lambda = 0, d Omega = delta lambda, i_eta lambda = d theta_eta and
/// i_eta Omega = -delta theta_eta at seeded random points.
VerificationReport verify_bar_identities(int n, std::size_t samples, std::uint64_t seed,
                                 DifferenceScheme scheme = {}, double tolerance = 1e-6);

} // namespace flatsym
