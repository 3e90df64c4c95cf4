#include "flatsym/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "flatsym/bar_forms.hpp"
#include "flatsym/extended_moduli.hpp"
#include "flatsym/word.hpp"

namespace flatsym {

using json = nlohmann::ordered_json;

void RunConfig::validate() const {
  if (group != 2 && group != 3)
    throw std::invalid_argument("group must be 2 or 3");
  if (genus < 1)
    throw std::invalid_argument("genus must be >= 1");
  if (beta_index < 0 || beta_index >= group)
    throw std::invalid_argument("beta index must lie in 0..group-1");
  if (!(fd_step > 0.0))
    throw std::invalid_argument("fd step must be positive");
  if (fd_order != 2 && fd_order != 4 && fd_order != 6)
    throw std::invalid_argument("fd order must be 2, 4 or 6");
  if (quad_order < 1)
    throw std::invalid_argument("quadrature order must be >= 1");
}

std::size_t scaled_samples(const RunConfig &config, std::size_t base) {
  if (config.samples == 0 || base == 0)
    return 0;
  const double scaled = std::round(static_cast<double>(base) * config.samples / 100.0);
  return std::max<std::size_t>(1, static_cast<std::size_t>(scaled));
}

namespace {

struct Task {
  std::vector<std::string> ids;
  std::function<VerificationReport(const RunConfig &)> run;
};

DifferenceScheme scheme_of(const RunConfig &c) { return {c.fd_step, c.fd_order}; }

ExtendedSpace space_of(const RunConfig &c) {
  return ExtendedSpace::central(c.group, c.genus, c.beta_index);
}

std::uint64_t task_seed(const RunConfig &c, std::uint64_t salt) { return derive_seed(c.seed, salt); }

VerificationReport word_checks(const RunConfig &c) {
  ResidualTracker boundary, fox;
  const std::uint64_t seed = task_seed(c, 1);
  for (int g = 1; g <= 4; ++g)
    boundary.add(verify_goldman(g) ? 0.0 : 1.0);
  const std::size_t words = scaled_samples(c, 500);
  for (std::size_t s = 0; s < words; ++s) {
    Rng rng(derive_seed(seed, s));
    const auto length = std::uniform_int_distribution<std::size_t>(0, 40)(rng);
    const Word w = random_word(rng, c.genus, length);
    fox.add(fox_fundamental_defect(w, c.genus).is_zero() ? 0.0 : 1.0);
  }
  VerificationReport r;
  r.add(make_upper_check("word.boundary", "boundary of the relator chain equals 1 - R, g = 1..4",
                         "d c = 1 - R", boundary, 0.0, seed));
  r.add(make_upper_check("word.fox_fundamental",
                         "sum_i (dw/dx_i)(x_i - 1) = w - 1 on random words of length <= 40",
                         "sum_i (dw/dx_i)(x_i - 1) = w - 1", fox, 0.0, seed));
  return r;
}

VerificationReport rename(VerificationReport r, const std::string &from, const std::string &to) {
  for (auto &check : r.checks)
    if (check.id.rfind(from, 0) == 0)
      check.id = to + check.id.substr(from.size());
  return r;
}

std::vector<Task> tasks_for(const RunConfig &config) {
  std::vector<Task> tasks;
  tasks.push_back({{"word.boundary", "word.fox_fundamental"}, word_checks});
  tasks.push_back({{"bar.d_lambda", "bar.d_Omega", "bar.contract_lambda", "bar.contract_Omega"},
                   [](const RunConfig &c) {
                     return verify_bar_identities(c.group, scaled_samples(c, 100), task_seed(c, 2),
                                                  scheme_of(c));
                   }});
  if (config.group == 2)
    tasks.push_back({{"bar.su3.d_lambda", "bar.su3.d_Omega", "bar.su3.contract_lambda",
                      "bar.su3.contract_Omega"},
                     [](const RunConfig &c) {
                       return rename(verify_bar_identities(3, scaled_samples(c, 25), task_seed(c, 3),
                                                           scheme_of(c)),
                                     "bar.", "bar.su3.");
                     }});
  tasks.push_back({{"rep.d_omega", "rep.d_omega_level_set"}, [](const RunConfig &c) {
                     return verify_d_omega(c.group, c.genus, scaled_samples(c, 100), task_seed(c, 4),
                                           scheme_of(c));
                   }});
  tasks.push_back({{"rep.invariance"}, [](const RunConfig &c) {
                     return verify_conjugation_invariance(c.group, c.genus, scaled_samples(c, 100),
                                                          task_seed(c, 5));
                   }});
  tasks.push_back({{"rep.contraction", "rep.horizontal"}, [](const RunConfig &c) {
                     return verify_contraction(c.group, c.genus, scaled_samples(c, 100), task_seed(c, 6));
                   }});
  tasks.push_back({{"forms.poincare"}, [](const RunConfig &c) {
                     return verify_poincare_lemma(scaled_samples(c, 50), task_seed(c, 7));
                   }});
  tasks.push_back({{"ext.homotopy_theta"}, [](const RunConfig &c) {
                     return verify_homotopy_theta(space_of(c), scaled_samples(c, 50), task_seed(c, 8),
                                                  c.quad_order);
                   }});
  tasks.push_back({{"ext.d_sigma"}, [](const RunConfig &c) {
                     return verify_sigma_closed(c.group, scaled_samples(c, 30), task_seed(c, 9),
                                                scheme_of(c), c.quad_order);
                   }});
  tasks.push_back({{"ext.sigma_contraction"}, [](const RunConfig &c) {
                     return verify_sigma_contraction(space_of(c), scaled_samples(c, 30),
                                                     task_seed(c, 10), c.quad_order);
                   }});
  tasks.push_back({{"ext.closed_in_charts"}, [](const RunConfig &c) {
                     return verify_closed_in_charts(space_of(c), scaled_samples(c, 10),
                                                    task_seed(c, 11), scheme_of(c), c.quad_order);
                   }});
  tasks.push_back({{"ext.moment", "ext.equivariance", "ext.invariance"}, [](const RunConfig &c) {
                     return verify_moment(space_of(c), scaled_samples(c, 50), task_seed(c, 12),
                                          c.quad_order);
                   }});
  // The witness needs a nontrivial central twist.
  if (config.beta_index != 0) {
    tasks.push_back({{"ext.gram", "ext.tangent_dim", "ext.reduced_rank", "ext.surjective"},
                     [](const RunConfig &c) {
                       return verify_nondegeneracy(space_of(c), c.beta_index, scaled_samples(c, 20),
                                                   task_seed(c, 13), c.quad_order);
                     }});
    tasks.push_back({{"coh.pairing"}, [](const RunConfig &c) {
                       return verify_pairing_nondegeneracy(c.group, c.genus, c.beta_index);
                     }});
  }
  tasks.push_back({{"coh.cup_omega", "coh.coboundary_pairing"}, [](const RunConfig &c) {
                     return verify_cup_equals_omega(c.group, c.genus, scaled_samples(c, 50),
                                                    task_seed(c, 14));
                   }});
  tasks.push_back({{"coh.euler", "coh.exactness", "coh.duality", "coh.b1_dim"}, [](const RunConfig &c) {
                     return verify_long_exact_sequence(c.group, c.genus, scaled_samples(c, 50),
                                                       task_seed(c, 15));
                   }});
  return tasks;
}

void apply_overrides(VerificationReport &report, const RunConfig &config) {
  for (auto &check : report.checks) {
    const auto it = config.tolerances.find(check.id);
    if (it == config.tolerances.end())
      continue;
    check.tolerance = it->second;
    check.settle();
  }
}

void require_known_overrides(const RunConfig &config) {
  const auto ids = check_ids(config);
  for (const auto &[id, tol] : config.tolerances)
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
      throw std::invalid_argument("tolerance override for unknown check id '" + id + "'");
}

json matrix_json(const CMatrix &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json &rows) {
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument("matrix: expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json &row = rows[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw std::invalid_argument("matrix: rows must form a square matrix");
    for (Eigen::Index j = 0; j < n; ++j) {
      const json &entry = row[j];
      if (!entry.is_array() || entry.size() != 2)
        throw std::invalid_argument("matrix: entries must be [re, im] pairs");
      m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

json config_json(const RunConfig &c) {
  json tolerances = json::object();
  for (const auto &[id, tol] : c.tolerances)
    tolerances[id] = tol;
  return json{{"group", c.group},           {"genus", c.genus},
              {"beta_index", c.beta_index}, {"seed", c.seed},
              {"samples", c.samples},       {"fd_step", c.fd_step},
              {"fd_order", c.fd_order},     {"quad_order", c.quad_order},
              {"tolerances", tolerances}};
}

json summary_json(const ComplexSummary &s) {
  return json{{"h0_free", s.h0_free},
              {"h1_free", s.h1_free},
              {"h0_cyclic", s.h0_cyclic},
              {"h1_cyclic", s.h1_cyclic},
              {"h1_relative", s.h1_relative},
              {"h2_relative", s.h2_relative},
              {"map_ranks", s.map_ranks},
              {"euler", s.euler},
              {"exactness_defect", s.exactness_defect},
              {"duality_defect", s.duality_defect},
              {"b1_dim", s.b1_dim}};
}

} // namespace

std::vector<std::string> check_ids(const RunConfig &config) {
  std::vector<std::string> ids;
  for (const auto &task : tasks_for(config))
    ids.insert(ids.end(), task.ids.begin(), task.ids.end());
  return ids;
}

VerificationReport run_all(const RunConfig &config) {
  config.validate();
  require_known_overrides(config);
  VerificationReport report;
  if (config.samples == 0)
    return report;
  for (const auto &task : tasks_for(config))
    report.append(task.run(config));
  apply_overrides(report, config);
  return report;
}

VerificationReport run_check(const RunConfig &config, const std::string &id) {
  config.validate();
  require_known_overrides(config);
  for (const auto &task : tasks_for(config)) {
    if (std::find(task.ids.begin(), task.ids.end(), id) == task.ids.end())
      continue;
    VerificationReport out;
    if (config.samples == 0)
      return out;
    for (auto &check : task.run(config).checks)
      if (check.id == id)
        out.add(std::move(check));
    apply_overrides(out, config);
    return out;
  }
  throw std::invalid_argument("unknown check id '" + id + "'");
}

int exit_code(const VerificationReport &report) { return report.all_passed() ? 0 : 2; }

std::string report_json(const VerificationReport &report, const RunConfig &config,
                        double wall_seconds) {
  json checks = json::array();
  std::size_t passed = 0;
  for (const auto &c : report.checks) {
    passed += c.pass ? 1 : 0;
    checks.push_back(json{{"id", c.id},
                          {"description", c.description},
                          {"anchor", c.anchor},
                          {"samples", c.samples},
                          {"max_residual", c.max_residual},
                          {"tolerance", c.tolerance},
                          {"bound", c.bound == Bound::upper ? "upper" : "lower"},
                          {"pass", c.pass},
                          {"seed", c.seed},
                          {"note", c.note}});
  }
  const json doc{{"schema_version", 1},
                 {"config", config_json(config)},
                 {"checks", checks},
                 {"summary",
                  {{"total", report.checks.size()},
                   {"passed", passed},
                   {"failed", report.checks.size() - passed},
                   {"all_passed", report.all_passed()}}},
                 {"wall_time_seconds", wall_seconds}};
  return doc.dump(2) + "\n";
}

std::string point_json(const RepPoint &h, const GroupPoint &target) {
  json point = json::array();
  for (const auto &g : h.components)
    point.push_back(matrix_json(g.matrix()));
  const double residual = (relator_value(h).matrix() - target.matrix()).norm();
  const json doc{{"group", h.n()},
                 {"genus", h.genus()},
                 {"target", matrix_json(target.matrix())},
                 {"residual", residual},
                 {"point", point}};
  return doc.dump(2) + "\n";
}

RepPoint parse_point_json(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw std::invalid_argument(std::string("point JSON: ") + e.what());
  }
  const json &point = doc.is_object() && doc.contains("point") ? doc["point"] : doc;
  if (!point.is_array() || point.empty() || point.size() % 2 != 0)
    throw std::invalid_argument("point JSON: expected an even, non-empty list of matrices");
  RepPoint h;
  try {
    for (const auto &m : point)
      h.components.emplace_back(matrix_from_json(m));
  } catch (const json::exception &e) {
    throw std::invalid_argument(std::string("point JSON: ") + e.what());
  }
  for (const auto &g : h.components)
    if (g.n() != h.components.front().n())
      throw std::invalid_argument("point JSON: matrices of different sizes");
  return h;
}

std::string dims_json(const std::vector<DimsRow> &rows, const RunConfig &config) {
  json out = json::array();
  for (const auto &row : rows)
    out.push_back(json{{"label", row.label}, {"dims", summary_json(row.summary)}});
  const json doc{{"group", config.group}, {"genus", config.genus}, {"rows", out}};
  return doc.dump(2) + "\n";
}

std::string dims_table(const std::vector<DimsRow> &rows) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "point" << std::right;
  for (const char *h : {"H0(F)", "H1(F)", "H0(Z)", "H1(Z)", "H1(F,Z)", "H2(F,Z)", "euler",
                        "exact", "dual"})
    out << std::setw(9) << h;
  out << "\n";
  for (const auto &row : rows) {
    const auto &s = row.summary;
    out << std::left << std::setw(12) << row.label << std::right;
    for (int v : {s.h0_free, s.h1_free, s.h0_cyclic, s.h1_cyclic, s.h1_relative, s.h2_relative,
                  s.euler, s.exactness_defect, s.duality_defect})
      out << std::setw(9) << v;
    out << "\n";
  }
  return out.str();
}

GroupPoint parse_target(const std::string &target, const RunConfig &config) {
  const auto colon = target.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("target must be central:k or word:<w>");
  const std::string kind = target.substr(0, colon);
  const std::string value = target.substr(colon + 1);
  if (kind == "central") {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(value, &used);
    } catch (const std::exception &) {
      throw std::invalid_argument("central:k needs an integer k");
    }
    if (used != value.size() || k < 0 || k >= config.group)
      throw std::invalid_argument("central:k needs 0 <= k < group");
    return center_elements(config.group)[k];
  }
  if (kind == "word") {
    Word w;
    try {
      w = parse_word(value, config.genus);
    } catch (const ParseError &e) {
      throw std::invalid_argument(std::string("word target: ") + e.what());
    } catch (const std::out_of_range &e) {
      throw std::invalid_argument(std::string("word target: ") + e.what());
    }
    // Evaluated at a seeded random point of G^{2g}.
    Rng rng(derive_seed(config.seed, 0x77));
    return eval_word(w, random_rep_point(config.group, config.genus, rng));
  }
  throw std::invalid_argument("unknown target kind '" + kind + "'");
}

} // namespace flatsym
