#include "flatsym/cohomology.hpp"

#include <cstdlib>

#include "flatsym/linalg.hpp"

namespace flatsym {

namespace {

int rank_of(const RMatrix &m) { return m.size() == 0 ? 0 : numerical_rank(m); }

RMatrix hstack(const RMatrix &a, const RMatrix &b) {
  RMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

RMatrix vstack(const RMatrix &a, const RMatrix &b) {
  RMatrix out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

const GroupPoint &value_of(const RepPoint &h, const Letter &l) {
  if (l.generator < 1 || l.generator > static_cast<int>(h.components.size()))
    throw std::out_of_range("cochain: generator x" + std::to_string(l.generator) + " out of range");
  return h.components[l.generator - 1];
}

} // namespace

CochainC1 CochainC1::zero(int n, int genus) {
  return {std::vector<AlgebraVector>(2 * genus, AlgebraVector::zero(n))};
}

RVector to_coords(const CochainC1 &u) { return make_tangent(u.values); }

CochainC1 cochain_from(int n, const RVector &coords) {
  return {rep_tangent_from(n, coords).components};
}

CochainC1 coboundary0(const AlgebraVector &eta, const RepPoint &h) {
  CochainC1 u;
  for (const auto &g : h.components)
    u.values.push_back(eta - adjoint(g, eta));
  return u;
}

RMatrix coboundary_matrix(const RepPoint &h) {
  const int n = h.n();
  const int d = algebra_dim(n);
  const auto &basis = algebra_basis(n);
  RMatrix out(static_cast<Eigen::Index>(h.components.size()) * d, d);
  for (int k = 0; k < d; ++k)
    out.col(k) = to_coords(coboundary0(basis[k], h));
  return out;
}

AlgebraVector cochain_value(const CochainC1 &u, const Word &w, const RepPoint &h) {
  if (u.values.size() != h.components.size())
    throw std::invalid_argument("cochain_value: cochain and point sizes differ");
  const int n = h.n();
  GroupPoint prefix = GroupPoint::identity(n);
  AlgebraVector acc = AlgebraVector::zero(n);
  for (const auto &l : w.letters()) {
    const GroupPoint &g = value_of(h, l);
    const AlgebraVector &ux = u.values[l.generator - 1];
    if (l.sign > 0) {
      acc += adjoint(prefix, ux);
      prefix *= g;
    } else {
      const GroupPoint g_inv = g.inverse();
      acc -= adjoint(prefix * g_inv, ux);
      prefix *= g_inv;
    }
  }
  return acc;
}

AlgebraVector relator_map(const CochainC1 &u, const RepPoint &h) {
  const int genus = h.genus();
  if (static_cast<int>(u.values.size()) != 2 * genus)
    throw std::invalid_argument("relator_map: cochain and point sizes differ");
  const Word relator = surface_relator(genus);
  AlgebraVector acc = AlgebraVector::zero(h.n());
  for (int i = 1; i <= 2 * genus; ++i) {
    const GroupRingElement d = fox_derivative(relator, i, genus);
    for (const auto &[v, c] : d.terms())
      acc += static_cast<double>(c) * adjoint(eval_word(v, h), u.values[i - 1]);
  }
  return acc;
}

RMatrix relator_map_matrix(const RepPoint &h) {
  const int n = h.n();
  const int d = algebra_dim(n);
  const int m = static_cast<int>(h.components.size()) * d;
  RMatrix out(d, m);
  for (int k = 0; k < m; ++k)
    out.col(k) = to_coords(relator_map(cochain_from(n, RVector::Unit(m, k)), h));
  return out;
}

CochainC1 cochain_of_tangent(const RepTangent &x, const RepPoint &h) {
  if (x.components.size() != h.components.size())
    throw std::invalid_argument("cochain_of_tangent: size mismatch");
  CochainC1 u;
  for (std::size_t i = 0; i < x.components.size(); ++i)
    u.values.push_back(adjoint(h.components[i], x.components[i]));
  return u;
}

RepTangent tangent_of_cochain(const CochainC1 &u, const RepPoint &h) {
  if (u.values.size() != h.components.size())
    throw std::invalid_argument("tangent_of_cochain: size mismatch");
  RepTangent x;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    x.components.push_back(adjoint(h.components[i].inverse(), u.values[i]));
  return x;
}

ComplexSummary summary(const RepPoint &h) {
  const int n = h.n();
  const int d = algebra_dim(n);
  const int m = static_cast<int>(h.components.size()) * d;
  const RMatrix delta_free = coboundary_matrix(h);
  const RMatrix restrict1 = relator_map_matrix(h);
  // (delta_Z a)(R) = a - Ad_eps a.
  const RMatrix delta_cyclic = RMatrix::Identity(d, d) - adjoint_matrix(relator_value(h));

  // Mapping cone: C0 = C0(F), C1 = C1(F) + C0(Z), C2 = C1(Z).
  const RMatrix d0 = vstack(delta_free, RMatrix::Identity(d, d));
  const RMatrix d1 = hstack(restrict1, -delta_cyclic);

  const int rank_delta_free = rank_of(delta_free);
  const int rank_delta_cyclic = rank_of(delta_cyclic);
  const int rank_d0 = rank_of(d0);
  const int rank_d1 = rank_of(d1);

  ComplexSummary s;
  s.b1_dim = rank_delta_free;
  s.h0_free = d - rank_delta_free;
  s.h1_free = m - rank_delta_free;
  s.h0_cyclic = d - rank_delta_cyclic;
  s.h1_cyclic = d - rank_delta_cyclic;
  s.h1_relative = (m + d - rank_d1) - rank_d0;
  s.h2_relative = d - rank_d1;

  const RMatrix stab = null_space(delta_free);
  const RMatrix fixed = null_space(delta_cyclic);
  const RMatrix cocycles = null_space(d1);

  auto &r = s.map_ranks;
  r[0] = rank_of(stab);
  r[1] = rank_of(hstack(d0, vstack(RMatrix::Zero(m, fixed.cols()), fixed))) - rank_d0;
  r[2] = rank_of(hstack(cocycles.topRows(m), delta_free)) - rank_delta_free;
  r[3] = rank_of(hstack(restrict1, delta_cyclic)) - rank_delta_cyclic;
  r[4] = rank_of(hstack(RMatrix::Identity(d, d), d1)) - rank_d1;

  s.euler = -s.h0_free + s.h0_cyclic - s.h1_relative + s.h1_free - s.h1_cyclic + s.h2_relative;
  s.exactness_defect = std::abs(s.h0_free - r[0]) + std::abs(s.h0_cyclic - r[0] - r[1]) +
                       std::abs(s.h1_relative - r[1] - r[2]) + std::abs(s.h1_free - r[2] - r[3]) +
                       std::abs(s.h1_cyclic - r[3] - r[4]) + std::abs(s.h2_relative - r[4]);
  s.duality_defect = std::abs(s.h1_relative - s.h1_free) + std::abs(s.h2_relative - s.h0_free);
  return s;
}

double cup_pairing(const CochainC1 &u, const CochainC1 &v, const RepPoint &h) {
  double acc = 0.0;
  for (const auto &term : relator_chain_terms(h.genus()))
    acc += term.coefficient * inner(cochain_value(u, term.first, h),
                                    adjoint(eval_word(term.first, h), cochain_value(v, term.second, h)));
  return acc;
}

PairingAnalysis pairing_analysis(const RepPoint &h) {
  const int n = h.n();
  const RMatrix restrict1 = relator_map_matrix(h);
  const RMatrix delta = coboundary_matrix(h);
  const RMatrix kernel = null_space(restrict1);
  const RMatrix exact_part = delta * null_space(restrict1 * delta);
  const RMatrix exact_basis = rank_of(exact_part) == 0 ? RMatrix(kernel.rows(), 0) : column_space(exact_part);
  const RMatrix q = exact_basis.cols() == 0 ? kernel : complement_within(kernel, exact_basis);

  PairingAnalysis out;
  out.surjective = rank_of(restrict1) == algebra_dim(n);
  out.dimension = static_cast<int>(q.cols());
  std::vector<CochainC1> us;
  for (Eigen::Index k = 0; k < q.cols(); ++k)
    us.push_back(cochain_from(n, q.col(k)));
  out.matrix = RMatrix::Zero(q.cols(), q.cols());
  for (Eigen::Index i = 0; i < q.cols(); ++i)
    for (Eigen::Index j = 0; j < q.cols(); ++j)
      out.matrix(i, j) = cup_pairing(us[i], us[j], h);
  out.rank = rank_of(out.matrix);
  out.smallest_singular_value = smallest_singular_value(out.matrix);
  return out;
}

VerificationReport verify_cup_equals_omega(int n, int genus, std::size_t samples,
                                           std::uint64_t seed, double tolerance) {
  ResidualTracker cup, exact;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const RepPoint h = random_rep_point(n, genus, rng);
    const RepTangent x = random_rep_tangent(n, genus, rng);
    const RMatrix kernel = relator_kernel(h);
    RVector c(kernel.cols());
    for (auto &v : c)
      v = normal(rng);
    const RepTangent y = rep_tangent_from(n, kernel * c.normalized());
    const CochainC1 v = cochain_of_tangent(y, h);
    cup.add(2.0 * cup_pairing(cochain_of_tangent(x, h), v, h) - omega_eval(h, x, y));
    exact.add(cup_pairing(coboundary0(random_algebra_vector(n, rng), h), v, h));
  }
  VerificationReport report;
  report.add(make_upper_check("coh.cup_omega", "2 <u cup v, c> = omega(X, Y) for v in ker(u -> u(R))",
                              "2 <u cup v, c> = omega(X, Y), v in ker", cup, tolerance, seed));
  report.add(make_upper_check("coh.coboundary_pairing", "<delta eta cup v, c> = 0 for v in ker(u -> u(R))",
                              "<delta eta cup v, c> = 0, v in ker", exact, tolerance, seed));
  return report;
}

VerificationReport verify_pairing_nondegeneracy(int n, int genus, int beta_index, double tolerance) {
  const PairingAnalysis p = pairing_analysis(witness_point(n, genus, beta_index));
  MinimumTracker t;
  t.add(p.smallest_singular_value);
  VerificationReport report;
  CheckResult c = make_lower_check("coh.pairing", "cup pairing nondegenerate on ker(u -> u(R)) / B1 at the witness",
                                   "sigma_min(cup on ker / B1) > 0", t, tolerance, 0);
  c.note = "dimension " + std::to_string(p.dimension) + ", rank " + std::to_string(p.rank) +
           (p.surjective ? "" : ", d eps_R not surjective");
  c.flagged = !p.surjective || p.rank % 2 != 0;
  c.settle();
  report.add(std::move(c));
  return report;
}

VerificationReport verify_long_exact_sequence(int n, int genus, std::size_t samples,
                                              std::uint64_t seed) {
  ResidualTracker euler, exactness, duality, b1;
  auto record = [&](const RepPoint &h) {
    const ComplexSummary s = summary(h);
    euler.add(s.euler);
    exactness.add(s.exactness_defect);
    duality.add(s.duality_defect);
    b1.add(s.b1_dim - (algebra_dim(n) - static_cast<int>(stabilizer_lie(h).cols())));
  };
  record(RepPoint::identity(n, genus));
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    record(random_rep_point(n, genus, rng));
  }
  VerificationReport report;
  report.add(make_upper_check("coh.euler", "alternating dimension sum of the six-term sequence is 0",
                              "0 -> H0(F) -> H0(Z) -> H1(F,Z) -> H1(F) -> H1(Z) -> H2(F,Z) -> 0",
                              euler, 0.0, seed));
  report.add(make_upper_check("coh.exactness", "dimension = rank in + rank out at every node",
                              "dim = rank in + rank out at each node", exactness, 0.0, seed));
  report.add(make_upper_check("coh.duality", "dim H1(F,Z) = dim H1(F), dim H2(F,Z) = dim H0(F)",
                              "H^k(F,Z) dual to H^{2-k}(F)", duality, 0.0, seed));
  report.add(make_upper_check("coh.b1_dim", "dim B1 = dim g - dim H0(F)", "dim B1 = dim g - dim stab(h)",
                              b1, 0.0, seed));
  return report;
}

} // namespace flatsym
