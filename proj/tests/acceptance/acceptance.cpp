// Acceptance suite: one PASS/FAIL line per criterion at the reference
// configuration (SU(2), genus 2, beta = -I, 100 samples).

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "flatsym/suite.hpp"

namespace {

using flatsym::CheckResult;
using flatsym::RunConfig;
using flatsym::VerificationReport;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit_seconds;
  std::function<Outcome()> run;
};

void absorb(Outcome &out, const VerificationReport &report) {
  char buf[160];
  for (const CheckResult &c : report.checks) {
    out.pass = out.pass && c.pass;
    std::snprintf(buf, sizeof buf, "%s%s=%.2e(n=%zu)", out.detail.empty() ? "" : " ", c.id.c_str(),
                  c.max_residual, c.samples);
    out.detail += buf;
  }
  if (report.checks.empty()) {
    out.pass = false;
    out.detail += " no checks ran";
  }
}

Outcome checks(const RunConfig &config, std::initializer_list<const char *> ids) {
  Outcome out;
  for (const char *id : ids)
    absorb(out, flatsym::run_check(config, id));
  return out;
}

Outcome end_to_end(const RunConfig &config) {
  Outcome out;
  const VerificationReport first = flatsym::run_all(config);
  const VerificationReport second = flatsym::run_all(config);
  const bool passed = flatsym::exit_code(first) == 0;
  const bool identical = flatsym::report_json(first, config, 0.0) ==
                         flatsym::report_json(second, config, 0.0);
  out.pass = passed && identical;
  out.detail = std::to_string(first.checks.size()) + " checks, exit " +
               std::to_string(flatsym::exit_code(first)) +
               (identical ? ", rerun identical" : ", rerun differs");
  return out;
}

} // namespace

int main() {
  RunConfig config;

  const std::vector<Criterion> criteria = {
      {"boundary of relator chain", 1.0, [&] { return checks(config, {"word.boundary"}); }},
      {"Fox fundamental identity", 5.0, [&] { return checks(config, {"word.fox_fundamental"}); }},
      {"bar-complex identities SU(2), SU(3)", 10.0,
       [&] {
         return checks(config, {"bar.d_lambda", "bar.d_Omega", "bar.contract_lambda",
                                "bar.contract_Omega", "bar.su3.d_lambda", "bar.su3.d_Omega",
                                "bar.su3.contract_lambda", "bar.su3.contract_Omega"});
       }},
      {"d omega = -eps_R^* lambda", 60.0,
       [&] { return checks(config, {"rep.d_omega", "rep.d_omega_level_set"}); }},
      {"invariance and contraction", 60.0,
       [&] { return checks(config, {"rep.invariance", "rep.contraction"}); }},
      {"homotopy operator", 60.0,
       [&] { return checks(config, {"forms.poincare", "ext.homotopy_theta"}); }},
      {"d sigma = exp^* lambda and sigma contraction", 60.0,
       [&] { return checks(config, {"ext.d_sigma", "ext.sigma_contraction"}); }},
      {"omega~ closed in constraint charts", 60.0,
       [&] { return checks(config, {"ext.closed_in_charts"}); }},
      {"moment map", 60.0, [&] { return checks(config, {"ext.moment", "ext.equivariance", "ext.invariance"}); }},
      {"regular value at witness and neighbours", 10.0,
       [&] {
         return checks(config,
                       {"ext.gram", "ext.tangent_dim", "ext.reduced_rank", "ext.surjective"});
       }},
      {"cup product = omega, pairing nondegenerate", 60.0,
       [&] { return checks(config, {"coh.cup_omega", "coh.coboundary_pairing", "coh.pairing"}); }},
      {"long exact sequence bookkeeping", 60.0,
       [&] { return checks(config, {"coh.euler", "coh.exactness", "coh.duality", "coh.b1_dim"}); }},
      {"verify-all end to end", 60.0, [&] { return end_to_end(config); }},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion &c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception &e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.time_limit_seconds;
    const bool pass = out.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s %2d %s [%.2fs < %.0fs%s] %s\n", pass ? "PASS" : "FAIL", index, c.name.c_str(),
                seconds, c.time_limit_seconds, in_time ? "" : " exceeded", out.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
