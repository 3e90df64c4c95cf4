#pragma once

// Y = Hom(F_{2g}, G) = G^{2g}: word evaluation and its differential, the
// 2-form omega = <c, E^* Omega>, the conjugation action, and the level sets
// of the relator map eps_R.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "flatsym/forms.hpp"
#include "flatsym/lie.hpp"
#include "flatsym/report.hpp"
#include "flatsym/word.hpp"

namespace flatsym {

struct RepPoint {
  std::vector<GroupPoint> components;

  int genus() const { return static_cast<int>(components.size()) / 2; }
  int n() const { return components.empty() ? 0 : components.front().n(); }

  static RepPoint identity(int n, int genus);
};

/// Left-trivialized tangent: one su(n) element per generator.
struct RepTangent {
  std::vector<AlgebraVector> components;

  static RepTangent zero(int n, int genus);
};

RepPoint random_rep_point(int n, int genus, Rng &rng);
/// Uniform direction on the unit sphere of T_h Y (orthonormal coordinates).
RepTangent random_rep_tangent(int n, int genus, Rng &rng);

Tangent to_tangent(const RepTangent &x);
RepTangent rep_tangent_from(int n, const Tangent &x);
ManifoldPoint to_manifold_point(const RepPoint &h);
RepPoint rep_point_from(const ManifoldPoint &p);

GroupPoint eval_word(const Word &w, const RepPoint &h);

/// eps_R(h) = prod_i [h_{2i-1}, h_{2i}].
GroupPoint relator_value(const RepPoint &h);

/// Right-trivialized differential d(eval_w)(H) eval_w(h)^{-1}, by the
/// recursion d(uv)(uv)^{-1} = du u^{-1} + Ad_u(dv v^{-1}).
AlgebraVector word_differential(const Word &w, const RepPoint &h, const RepTangent &x);

/// The same quantity through the Fox derivatives:
/// sum_i Ad-extension of rho_h(dw/dx_i) applied to Ad_{h_i} xi_i.
AlgebraVector word_differential_fox(const Word &w, const RepPoint &h, const RepTangent &x);

/// Left-trivialized: Ad_{eval_w(h)^{-1}} of word_differential.
AlgebraVector word_differential_left(const Word &w, const RepPoint &h, const RepTangent &x);

/// Matrix (dim g) x (2g dim g) of the right-trivialized differential of eps_R
/// on left-trivialized coordinates.
RMatrix relator_differential_matrix(const RepPoint &h);

/// omega_h(X, Y) = sum over n(a,b) in the relator chain of
/// n Omega((a(h), b(h)); (da X, db X), (da Y, db Y)).
double omega_eval(const RepPoint &h, const RepTangent &x, const RepTangent &y);

FormField omega_form(int n, int genus);

/// eps_R : G^{2g} -> G with its exact left-trivialized differential.
SmoothMap relator_smooth_map(int n, int genus);

RepPoint conj_action(const GroupPoint &s, const RepPoint &h);
/// Left-trivialized transport under conjugation: xi_i -> Ad_s xi_i.
RepTangent conj_tangent(const GroupPoint &s, const RepTangent &x);
/// Component i: Ad_{h_i^{-1}} eta - eta.
RepTangent conj_vector_field(const AlgebraVector &eta, const RepPoint &h);

/// Orthonormal basis (columns, su(n) coordinates) of the Lie algebra of the
/// stabilizer of h: the common null space of Ad_{h_i} - id.
RMatrix stabilizer_lie(const RepPoint &h);

/// Rank of (d eps_R)_h.
int image_dim(const RepPoint &h);

/// Orthonormal basis (columns, tangent coordinates) of ker (d eps_R)_h.
RMatrix relator_kernel(const RepPoint &h);

/// Orthonormal basis of the Ad_t-fixed subspace of su(n).
RMatrix centralizer_lie(const GroupPoint &t);

class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct FiberSearchOptions {
  int restarts = 25;
  int max_iterations = 200;
  /// Accept when ||eps_R(h) - t||_F is below this.
  double tolerance = 1e-10;
  /// Largest left-trivialized step per Newton iteration.
  double max_step = 0.5;
};

/// Damped Gauss-Newton on the log residual log(t^{-1} eps_R(h)) (Frobenius
/// residual near the branch cut) from `start`. Throws ConvergenceError.
RepPoint refine_fiber_point(const RepPoint &start, const GroupPoint &t,
                            const FiberSearchOptions &options = {});

/// Finds h with eps_R(h) = t: tries the identity point, then seeded random
/// starts. Throws ConvergenceError after the configured restarts.
RepPoint find_fiber_point(const GroupPoint &t, int genus, std::uint64_t seed,
                          const FiberSearchOptions &options = {});

/// Irreducible point with eps_R = e^{2 pi i k/n} I: (A, B, I, ..., I) with
/// A = diag(i, -i), B = [[0, 1], [-1, 0]] for SU(2); clock/shift matrices for
/// n > 2. Requires 1 <= k < n with gcd(k, n) = 1.
RepPoint witness_point(int n, int genus, int beta_index);

/// Checks d omega = -eps_R^* lambda, and d omega = 0 on triples from
/// ker d eps_R.
VerificationReport verify_d_omega(int n, int genus, std::size_t samples, std::uint64_t seed,
                                  DifferenceScheme scheme = {}, double tolerance = 1e-6);

/// omega(s h s^{-1}; Ad_s X, Ad_s Y) = omega(h; X, Y).
VerificationReport verify_conjugation_invariance(int n, int genus, std::size_t samples,
                                                 std::uint64_t seed, double tolerance = 1e-10);

/// i_eta omega = eps_R^* theta_eta, and horizontality on level sets for
/// Ad_t-fixed eta.
VerificationReport verify_contraction(int n, int genus, std::size_t samples, std::uint64_t seed,
                                      double tolerance = 1e-10);

} // namespace flatsym
