// foliant: numerical probes for local uniqueness of autonomous ODE initial
// value problems via Lipschitz conditions along transversal foliations.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "foliant/checker.hpp"
#include "foliant/config.hpp"
#include "foliant/errors.hpp"
#include "foliant/modulus.hpp"
#include "foliant/ode.hpp"
#include "foliant/report.hpp"

namespace {

using namespace foliant;

void emit(const std::string& text, const std::string& out_path) {
  std::fputs(text.c_str(), stdout);
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot write report to '" + out_path + "'");
    f << text;
  }
}

int threads_cap() {
  // Sampling loops are sequential (and therefore seed-deterministic); the
  // cap is validated so misconfigured environments fail loudly.
  const char* env = std::getenv("FOLIANT_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) {
    throw ConfigError("FOLIANT_THREADS must be a positive integer");
  }
  return int(v);
}

int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::Supported: return 0;
    case Verdict::TransversalityFails: return 2;
    case Verdict::LipschitzBlowup: return 3;
    case Verdict::Inconclusive: return 4;
  }
  return 4;
}

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int budget = 0;
  double delta = 0.0;
};

int run_check(const CommonArgs& args) {
  ConfigFile cfg = ConfigFile::load(args.config_path);
  Problem prob = load_problem(cfg);
  if (args.seed_set) prob.check.seed = args.seed;
  if (args.budget > 0) prob.check.budget = args.budget;

  UniquenessReport report;
  if (prob.theorem == TheoremTag::Cid) {
    report = check_cid(prob.field, prob.p0, prob.check);
  } else {
    report = check_main(prob.field, *prob.foliation, prob.check);
  }

  ReportWriter w;
  write_header(w, "check", cfg.raw());
  w.kv("field", prob.field.name());
  if (prob.foliation) {
    w.kv("foliation", to_string(prob.foliation->provenance()));
  }
  w.kv("p0", prob.p0);
  write_uniqueness(w, report);
  emit(w.str(), args.out_path);
  return exit_code_for(report.verdict);
}

int run_modulus(const CommonArgs& args, const std::string& point_text,
                const std::string& direction_text) {
  ConfigFile cfg = ConfigFile::load(args.config_path);
  Problem prob = load_problem(cfg);

  Vector p(parse_reals(point_text));
  Vector v_raw(parse_reals(direction_text));
  if (p.dim() != prob.dimension || v_raw.dim() != prob.dimension) {
    throw ConfigError("--point/--direction must match the problem dimension");
  }
  ModulusQuery q{p, ProjectivePoint(v_raw),
                 args.delta > 0.0 ? args.delta : prob.modulus_delta,
                 args.budget > 0 ? args.budget : prob.modulus_budget,
                 args.seed_set ? args.seed : prob.check.seed};

  ModulusEstimate est = modulus_sample(prob.field, q);

  ReportWriter w;
  write_header(w, "modulus", cfg.raw());
  w.kv("field", prob.field.name());
  w.kv("p", q.p);
  w.kv("v", q.v.rep());
  write_modulus(w, "estimate", est);
  w.section("gradient_oracle");
  try {
    w.kv("value", modulus_gradient(prob.field, q.p, q.v));
  } catch (const Error& e) {
    w.kv("unavailable", e.what());
  }
  emit(w.str(), args.out_path);
  return 0;
}

int run_funnel(const CommonArgs& args, const std::string& csv_prefix) {
  ConfigFile cfg = ConfigFile::load(args.config_path);
  Problem prob = load_problem(cfg);
  std::uint64_t seed = args.seed_set ? args.seed : prob.check.seed;

  IVP ivp(prob.field, prob.p0, prob.t0);
  std::vector<FunnelReport> reports =
      funnel(ivp, prob.epsilons, prob.t_end, prob.step, prob.directions, seed);

  ReportWriter w;
  write_header(w, "funnel", cfg.raw());
  w.kv("field", prob.field.name());
  w.kv("p0", prob.p0);
  w.kv("t0", prob.t0);
  w.kv("t_end", prob.t_end);
  w.kv("step", prob.step);
  w.kv("directions", prob.directions);
  w.kv("seed", seed);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const FunnelReport& r = reports[i];
    w.section("funnel_" + std::to_string(i));
    w.kv("epsilon", r.epsilon);
    w.kv("trajectories", r.trajectories);
    w.kv("final_diameter", r.final_diameter);
    std::size_t stride = std::max<std::size_t>(1, r.times.size() / 8);
    for (std::size_t k = 0; k < r.times.size(); k += stride) {
      w.kv("diameter_at_" + format_double(r.times[k]), r.diameter[k]);
    }
    w.kv("diameter_at_" + format_double(r.times.back()), r.diameter.back());
  }
  emit(w.str(), args.out_path);

  if (!csv_prefix.empty()) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      double eps = reports[i].epsilon;
      std::vector<Trajectory> trajs;
      if (eps == 0.0) {
        trajs.push_back(integrate_rk4(ivp, prob.t_end, prob.step));
      } else {
        // Re-run the per-direction trajectories for export.
        for (const Vector& d :
             funnel_directions(prob.dimension, prob.directions, seed)) {
          IVP perturbed(prob.field, prob.p0 + eps * d, prob.t0);
          trajs.push_back(integrate_rk4(perturbed, prob.t_end, prob.step));
        }
      }
      for (std::size_t j = 0; j < trajs.size(); ++j) {
        std::string path = csv_prefix + "_e" + std::to_string(i) + "_d" +
                           std::to_string(j) + ".csv";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ConfigError("cannot write CSV to '" + path + "'");
        f << "t";
        for (std::size_t c = 1; c <= prob.dimension; ++c) f << ",z" << c;
        f << "\n";
        for (std::size_t k = 0; k < trajs[j].times.size(); ++k) {
          f << format_double(trajs[j].times[k]);
          for (std::size_t c = 0; c < prob.dimension; ++c) {
            f << "," << format_double(trajs[j].states[k][c]);
          }
          f << "\n";
        }
      }
    }
  }
  return 0;
}

int run_rotate(const std::string& u_text, const std::string& v_text,
               const std::string& out_path) {
  Vector u(parse_reals(u_text));
  Vector v(parse_reals(v_text));
  Matrix r = rotation_between(normalized(u), normalized(v));
  ReportWriter w;
  w.kv("tool", "foliant");
  w.kv("version", kToolVersion);
  w.kv("command", "rotate");
  w.kv("u", normalized(u));
  w.kv("v", normalized(v));
  w.section("rotation");
  for (std::size_t i = 0; i < r.rows(); ++i) {
    w.kv("row_" + std::to_string(i), r.row(i));
  }
  w.kv("det", mat_det(r));
  emit(w.str(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"foliant: Lipschitz-along-foliation uniqueness probes for ODE IVPs"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string point_text, direction_text, u_text, v_text, csv_prefix;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config) {
      cmd->add_option("--config", args.config_path, "problem config file")
          ->required();
    }
    cmd->add_option("--out", args.out_path, "write the report to this path");
    cmd->add_option("--seed", args.seed, "override the sampling seed")
        ->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_option("--budget", args.budget, "override the pair budget");
  };

  CLI::App* check = app.add_subcommand("check", "run the uniqueness checker");
  add_common(check, true);

  CLI::App* modulus = app.add_subcommand(
      "modulus", "sample the modulus of continuity at a point/direction");
  add_common(modulus, true);
  modulus->add_option("--point", point_text, "base point p (comma-separated)")
      ->required();
  modulus
      ->add_option("--direction", direction_text,
                   "hyperplane normal v (comma-separated)")
      ->required();
  modulus->add_option("--delta", args.delta, "ball radius");

  CLI::App* fun = app.add_subcommand("funnel", "perturbation funnel harness");
  add_common(fun, true);
  fun->add_option("--csv-prefix", csv_prefix,
                  "write per-trajectory CSV files with this prefix");

  CLI::App* rot = app.add_subcommand("rotate", "print the rotation matrix u -> v");
  rot->add_option("--u", u_text, "unit vector u (comma-separated)")->required();
  rot->add_option("--v", v_text, "unit vector v (comma-separated)")->required();
  rot->add_option("--out", args.out_path, "write the report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    threads_cap();
    if (check->parsed()) return run_check(args);
    if (modulus->parsed()) return run_modulus(args, point_text, direction_text);
    if (fun->parsed()) return run_funnel(args, csv_prefix);
    if (rot->parsed()) return run_rotate(u_text, v_text, args.out_path);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 1;
}
