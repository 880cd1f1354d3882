// Command-line front end: states | feasibility | optimize | simulate | boundary.
//
// Exit codes: 0 success, 2 usage error, 1 invariant or regression failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "probclone/feasibility.hpp"
#include "probclone/funcspace.hpp"
#include "probclone/gamesim.hpp"
#include "probclone/optimize.hpp"
#include "probclone/phasestate.hpp"
#include "probclone/rational.hpp"
#include "probclone/report.hpp"

using namespace probclone;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 1;

/// Raised for bad user input discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string which = "3bit";
  std::uint64_t seed = 0;
  std::uint64_t trials = 100000;
  double tol = 1e-9;
  std::string format = "json";
  std::string out;
  unsigned threads = 1;
};

std::vector<Rational> parse_list(const std::string& text, std::size_t min_n, std::size_t max_n, const char* what) {
  std::vector<Rational> values;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) values.push_back(Rational::parse(item));
  } catch (const std::exception& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
  if (values.size() < min_n || values.size() > max_n) {
    throw UsageError(std::string(what) + ": expected " + std::to_string(min_n) +
                     (min_n == max_n ? "" : "-" + std::to_string(max_n)) + " comma-separated values");
  }
  return values;
}

Efficiencies<Rational> parse_gammas(const std::string& text) {
  const auto v = parse_list(text, 3, 3, "--gammas");
  Efficiencies<Rational> eff{{v[0], v[1], v[2]}};
  try {
    eff.validate();
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("--gammas: ") + e.what());
  }
  return eff;
}

Complex<Rational> parse_overlap(const std::string& text, const char* what) {
  const auto v = parse_list(text, 1, 2, what);
  return {v[0], v.size() > 1 ? v[1] : Rational(0)};
}

Json states_doc(Case c, const std::string& basis) {
  const auto& space = FunctionSpace::get(c);
  Json doc{{"case", std::string(to_string(c))}};
  auto block = [](const FunctionSet& set) {
    const auto signs = phase_sign_vectors(set.members);
    Json states = Json::array();
    for (std::size_t i = 0; i < set.members.size(); ++i) {
      const auto state = to_state(signs[i]);
      Json entry{{"function", set.members[i].name()}, {"signs", sign_string(signs[i])}};
      entry["state"] = to_json(state);
      states.push_back(std::move(entry));
    }
    return Json{{"set", set.label}, {"states", std::move(states)}, {"gram", to_json(gram(signs))}};
  };
  if (basis == "candidates" || basis == "all") doc["candidates"] = block(space.s_f0);
  if (basis == "sf" || basis == "all") doc["sf_basis"] = block(space.s2);
  if (basis == "all") {
    doc["s1_basis"] = block(space.s1);
    Json pairs = Json::array();
    for (const auto& p : space.pair_sets) pairs.push_back(to_json(p));
    doc["pair_sets"] = std::move(pairs);
  }
  return doc;
}

Json feasibility_doc(Case c, const Efficiencies<Rational>& eff, const FlagOverlaps<Rational>& flags, double tol,
                     bool force_float) {
  try {
    flags.validate();
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("flags: ") + e.what());
  }
  const auto gram = cloned_state_gram(c);
  Json doc{{"case", std::string(to_string(c))}};
  bool exact_done = false;
  if (!force_float) {
    try {
      doc["result"] = to_json(build_matrix(gram, eff, flags));
      exact_done = true;
    } catch (const std::domain_error&) {
      // sqrt(g_i g_j) is irrational: fall back to floating point below
    }
  }
  if (!exact_done) {
    doc["result"] =
        to_json(build_matrix(gram.cast<double>(), eff.cast<double>(), flags.cast<double>()), tol);
  }
  doc["verdict"] = doc["result"]["psd"].get<bool>() ? "feasible" : "infeasible";
  return doc;
}

void write_output(const RunConfig& cfg, const Json& doc) {
  const std::string text = render(doc, parse_format(cfg.format));
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
  file << text;
}

std::string boundary_csv(const Json& doc) {
  std::ostringstream os;
  os.precision(17);
  os << "branch,parameter,v,w\n";
  for (const auto& [branch, points] : doc["branches"].items()) {
    for (const auto& p : points) {
      os << branch << ',' << p["parameter"].get<double>() << ',' << p["v"].get<double>() << ','
         << p["w"].get<double>() << '\n';
    }
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic cloning of oracle phase states: feasibility, optima and game scores"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--case", cfg.which, "Task case")->check(CLI::IsMember({"2bit", "3bit"}));
  app.add_option("--seed", cfg.seed, "Base RNG seed");
  app.add_option("--trials", cfg.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "Floating PSD / regression tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", cfg.out, "Write output to this file instead of stdout");
  app.add_option("--threads", cfg.threads, "Worker thread cap")->check(CLI::PositiveNumber);

  auto* states = app.add_subcommand("states", "Phase states and their Gram matrices");
  std::string basis = "candidates";
  states->add_option("--basis", basis, "Which states to list")->check(CLI::IsMember({"candidates", "sf", "all"}));

  auto* feas = app.add_subcommand("feasibility", "Cloning feasibility of efficiencies and flag overlaps");
  std::string gammas_text = "0,0,0", p12_text = "0", p13_text = "0", p23_text = "0";
  bool force_float = false;
  feas->add_option("--gammas", gammas_text, "g1,g2,g3 (rationals such as 7/127)");
  feas->add_option("--p12", p12_text, "Re[,Im] of P12");
  feas->add_option("--p13", p13_text, "Re[,Im] of P13");
  feas->add_option("--p23", p23_text, "Re[,Im] of P23");
  feas->add_flag("--float", force_float, "Skip exact arithmetic");

  auto* opt = app.add_subcommand("optimize", "Maximise cloning efficiencies");
  std::string objective_text = "sum23-slice", mode = "both";
  SearchOptions search;
  opt->add_option("--objective", objective_text, "sum23 | sum23-slice | gamma1 | equal")
      ->check(CLI::IsMember({"sum23", "sum23-slice", "gamma1", "equal"}));
  opt->add_option("--mode", mode, "analytic | numeric | both")->check(CLI::IsMember({"analytic", "numeric", "both"}));
  opt->add_option("--resolution", search.resolution, "Grid nodes per coordinate")->check(CLI::Range(8, 200));
  opt->add_flag("--complex-flags", search.complex_flags, "Also search imaginary flag parts");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo of the guessing game");
  std::string strategy = "noclone", sim_gammas;
  bool use_optimum = false;
  sim->add_option("--strategy", strategy, "noclone | clone")->check(CLI::IsMember({"noclone", "clone"}));
  sim->add_option("--gammas", sim_gammas, "g1,g2,g3 for the clone strategy");
  sim->add_flag("--optimum", use_optimum, "Use the analytic optimum efficiencies");

  auto* bnd = app.add_subcommand("boundary", "Region boundary curves in the (v, w) plane, for plotting");
  int points = 65;
  bnd->add_option("--points", points, "Points per branch")->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const Case c = parse_case(cfg.which);
    Json doc;
    int status = 0;

    if (*states) {
      doc = states_doc(c, basis);
    } else if (*feas) {
      FlagOverlaps<Rational> flags{parse_overlap(p12_text, "--p12"), parse_overlap(p13_text, "--p13"),
                                   parse_overlap(p23_text, "--p23")};
      doc = feasibility_doc(c, parse_gammas(gammas_text), flags, cfg.tol, force_float);
    } else if (*opt) {
      const Objective objective = parse_objective(objective_text);
      search.seed = cfg.seed;
      search.threads = cfg.threads;
      doc = Json{{"case", std::string(to_string(c))}, {"objective", objective_text}, {"mode", mode}};
      std::optional<double> analytic;
      if (mode != "numeric") {
        if (objective == Objective::Sum23 || objective == Objective::Sum23Slice) {
          auto report = analytic_optimum(c);
          report.objective = objective;
          analytic = report.analytic_value;
          doc["analytic"] = to_json(report);
        } else if (objective == Objective::Equal) {
          const auto report = equal_gamma_optimum(c, search);
          analytic = report.analytic_value;
          doc["analytic"] = Json{{"analytic_form", report.analytic_form}, {"analytic_value", *report.analytic_value}};
        } else {
          throw UsageError("objective gamma1 has no closed form; use --mode numeric");
        }
      }
      if (mode != "analytic") {
        const auto report =
            objective == Objective::Equal ? equal_gamma_optimum(c, search) : numeric_search(c, objective, search);
        doc["numeric"] = to_json(report);
        const double found = report.numeric_value.value_or(report.value());
        if (analytic && found > *analytic + cfg.tol) {
          doc["regression"] = "numeric optimum exceeds the analytic optimum";
          status = kExitFailure;
        }
        if (!report.certificate_psd) {
          doc["regression"] = "numeric optimum fails its feasibility certificate";
          status = kExitFailure;
        }
      }
    } else if (*sim) {
      SimOptions so{cfg.trials, cfg.seed, cfg.threads};
      if (strategy == "noclone") {
        doc = to_json(simulate_no_clone(c, so));
      } else {
        if (use_optimum == !sim_gammas.empty()) throw UsageError("clone strategy needs exactly one of --gammas, --optimum");
        const auto eff = use_optimum ? *analytic_optimum(c).argmax_exact : parse_gammas(sim_gammas);
        doc = to_json(simulate_clone(eff, c, so));
      }
    } else if (*bnd) {
      doc = Json{{"case", std::string(to_string(c))}, {"branches", Json::object()}};
      for (auto branch : {BoundaryBranch::MaxS, BoundaryBranch::MinS}) {
        const auto [lo, hi] = vw_parameter_range(c, branch);
        Json pts = Json::array();
        for (int k = 0; k < points; ++k) {
          const double t = lo + (hi - lo) * k / (points - 1);
          const auto p = vw_boundary(c, branch, t);
          pts.push_back(Json{{"parameter", t}, {"v", p.v}, {"w", p.w}});
        }
        doc["branches"][branch == BoundaryBranch::MaxS ? "max-s" : "min-s"] = std::move(pts);
      }
      if (cfg.format == "csv") {
        const std::string text = boundary_csv(doc);
        if (cfg.out.empty()) {
          std::cout << text;
        } else {
          std::ofstream(cfg.out, std::ios::binary) << text;
        }
        return 0;
      }
    }

    write_output(cfg, doc);
    return status;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
