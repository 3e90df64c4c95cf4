// flatsym: run the verification suite, print cohomology dimensions, and find
// points on level sets of the relator map.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flatsym/extended_moduli.hpp"
#include "flatsym/suite.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;
constexpr int kExitNoConvergence = 3;

/// Pulls "--tol.<id> VALUE" and "--tol.<id>=VALUE" out of argv; CLI11 has no
/// pattern options.
std::vector<std::string> extract_tolerances(int argc, char **argv, flatsym::RunConfig &config) {
  std::vector<std::string> rest;
  const std::string prefix = "--tol.";
  for (int i = 0; i < argc; ++i) {
    std::string arg = argv[i];
    if (i == 0 || arg.rfind(prefix, 0) != 0) {
      rest.push_back(std::move(arg));
      continue;
    }
    std::string id = arg.substr(prefix.size());
    std::string value;
    if (const auto eq = id.find('='); eq != std::string::npos) {
      value = id.substr(eq + 1);
      id = id.substr(0, eq);
    } else if (i + 1 < argc) {
      value = argv[++i];
    } else {
      throw std::invalid_argument(arg + " needs a value");
    }
    std::size_t used = 0;
    double tol = 0.0;
    try {
      tol = std::stod(value, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (id.empty() || used != value.size() || !(tol >= 0.0))
      throw std::invalid_argument("bad tolerance override " + arg + " " + value);
    config.tolerances[id] = tol;
  }
  return rest;
}

void print_table(const flatsym::VerificationReport &report, std::ostream &out) {
  for (const auto &c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(28) << c.id << std::right
        << (c.bound == flatsym::Bound::upper ? " max " : " min ") << std::scientific
        << std::setprecision(3) << c.max_residual
        << (c.bound == flatsym::Bound::upper ? " <= " : " > ") << c.tolerance
        << std::defaultfloat << "  n=" << c.samples;
    if (!c.note.empty())
      out << "  [" << c.note << "]";
    out << "\n";
  }
  std::size_t passed = 0;
  for (const auto &c : report.checks)
    passed += c.pass ? 1 : 0;
  out << passed << "/" << report.checks.size() << " checks passed\n";
}

void write_text(const std::string &path, const std::string &text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

std::string read_text(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw std::invalid_argument("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int emit_report(const flatsym::VerificationReport &report, const flatsym::RunConfig &config,
                const std::string &report_path, double seconds) {
  if (report_path != "-")
    print_table(report, std::cout);
  if (!report_path.empty())
    write_text(report_path, flatsym::report_json(report, config, seconds));
  return flatsym::exit_code(report) == 0 ? 0 : kExitFailed;
}

} // namespace

int main(int argc, char **argv) {
  using namespace flatsym;
  RunConfig config;
  std::vector<std::string> args;
  try {
    args = extract_tolerances(argc, argv, config);
  } catch (const std::invalid_argument &e) {
    std::cerr << "flatsym: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Numerical verification of the symplectic structure on SU(n) surface-group "
               "representation spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string report_path;
  app.add_option("--group", config.group, "n of SU(n)")->check(CLI::IsMember({2, 3}));
  app.add_option("--genus", config.genus, "surface genus")->check(CLI::PositiveNumber);
  app.add_option("--beta", config.beta_index, "k for beta = exp(2 pi i k / n) I");
  app.add_option("--seed", config.seed, "base seed");
  app.add_option("--samples", config.samples, "sample scale; 100 = reference counts, 0 = none");
  app.add_option("--fd-step", config.fd_step, "finite-difference step");
  app.add_option("--fd-order", config.fd_order, "finite-difference order")
      ->check(CLI::IsMember({2, 4, 6}));
  app.add_option("--quad-order", config.quad_order, "Gauss-Legendre order for sigma")
      ->check(CLI::PositiveNumber);
  app.add_option("--report", report_path, "write the JSON report to PATH ('-' for stdout)");
  app.footer("Tolerance overrides: --tol.<check-id> VALUE\n"
             "Exit codes: 0 all checks passed, 1 usage error, 2 a check failed, "
             "3 solver did not converge");

  auto *verify_all = app.add_subcommand("verify-all", "run every check");
  auto *verify = app.add_subcommand("verify", "run a single check by id");
  std::string check_id;
  verify->add_option("id", check_id, "check id (see 'list')")->required();
  auto *list = app.add_subcommand("list", "list check ids for the configuration");

  auto *dims = app.add_subcommand("dims", "cohomology dimensions around the long exact sequence");
  bool dims_as_json = false;
  std::size_t random_points = 3;
  std::vector<std::string> point_files;
  dims->add_flag("--json", dims_as_json, "machine-readable output");
  dims->add_option("--random", random_points, "number of seeded random points");
  dims->add_option("--point", point_files, "point JSON file (as written by find-point)");

  auto *find_point = app.add_subcommand("find-point", "solve eps_R(h) = t");
  std::string target_spec;
  find_point->add_option("target", target_spec, "central:k or word:<w>")->required();

  std::vector<const char *> raw;
  for (const auto &a : args)
    raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    config.validate();
    if (*list) {
      for (const auto &id : check_ids(config))
        std::cout << id << "\n";
      return 0;
    }
    if (*verify_all || *verify) {
      const auto start = std::chrono::steady_clock::now();
      const VerificationReport report =
          *verify_all ? run_all(config) : run_check(config, check_id);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return emit_report(report, config, report_path, seconds);
    }
    if (*dims) {
      std::vector<DimsRow> rows;
      rows.push_back({"identity", summary(RepPoint::identity(config.group, config.genus))});
      if (config.beta_index != 0)
        rows.push_back({"witness", summary(witness_point(config.group, config.genus, config.beta_index))});
      for (std::size_t k = 0; k < random_points; ++k) {
        Rng rng(derive_seed(config.seed, 0x5000 + k));
        rows.push_back({"random" + std::to_string(k),
                        summary(random_rep_point(config.group, config.genus, rng))});
      }
      for (const auto &file : point_files) {
        const RepPoint h = parse_point_json(read_text(file));
        if (h.n() != config.group || h.genus() != config.genus)
          throw std::invalid_argument(file + ": point does not match --group/--genus");
        rows.push_back({file, summary(h)});
      }
      const std::string text = dims_as_json ? dims_json(rows, config) : dims_table(rows);
      write_text(report_path.empty() ? "-" : report_path, text);
      return 0;
    }
    if (*find_point) {
      const GroupPoint target = parse_target(target_spec, config);
      const RepPoint h = find_fiber_point(target, config.genus, config.seed);
      write_text(report_path.empty() ? "-" : report_path, point_json(h, target));
      return 0;
    }
  } catch (const ConvergenceError &e) {
    std::cerr << "flatsym: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::invalid_argument &e) {
    std::cerr << "flatsym: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
