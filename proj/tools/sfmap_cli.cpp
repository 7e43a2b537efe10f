#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "sfmap/io.hpp"
#include "sfmap/oracles.hpp"
#include "sfmap/projections.hpp"
#include "sfmap/solver.hpp"
#include "sfmap/spectral.hpp"
#include "sfmap/worstcase.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNotSubmodular = 3;
constexpr int kExitMaxIters = 4;
constexpr int kExitNumeric = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

std::string set_to_string(const sfmap::Subset& a) {
  std::ostringstream ss;
  ss << '{';
  for (size_t i = 0; i < a.size(); ++i) ss << (i ? "," : "") << a[i];
  ss << '}';
  return ss.str();
}

int cmd_solve(const std::string& problem_path, int max_iters, double tol_gap,
              std::optional<unsigned> seed, const std::string& trace_path, bool parallel) {
  sfmap::DecomposableProblem p = sfmap::parse_problem(read_file(problem_path));
  sfmap::SolveOptions opts;
  opts.max_iters = max_iters;
  opts.tol_discrete_gap = tol_gap;
  opts.parallel = parallel;
  opts.seed = seed;
  sfmap::SolveTrace trace;
  sfmap::SolveResult res = sfmap::run_ap(p, opts, &trace);
  if (!trace_path.empty()) write_file(trace_path, sfmap::trace_csv(trace));

  std::cout << "minimizer " << set_to_string(res.minimizer_set) << '\n'
            << "min_value " << res.min_value << '\n'
            << "discrete_gap " << res.discrete_gap << '\n'
            << "iterations " << res.iterations << '\n';
  if (res.status == sfmap::SolveStatus::NumericError) return kExitNumeric;
  if (res.discrete_gap <= tol_gap) return kExitOk;
  return kExitMaxIters;
}

int cmd_spectral(const std::string& problem_path, const std::string& faces_path) {
  sfmap::DecomposableProblem p = sfmap::parse_problem(read_file(problem_path));
  sfmap::FacePartitionSpec spec = sfmap::parse_face_spec(read_file(faces_path), p.n());
  if (spec.r() != p.r())
    throw std::invalid_argument("face spec component count does not match the problem");
  std::cout << sfmap::format_spectral_report(sfmap::spectral_report(spec));
  return kExitOk;
}

int cmd_lowerbound(int n, int r, const std::string& init, int trials, int iters,
                   unsigned seed, const std::string& out_path) {
  sfmap::LowerBoundInstance inst = sfmap::build_lb_instance(n, r);
  sfmap::LbInit mode =
      (init == "worst") ? sfmap::LbInit::WorstCase : sfmap::LbInit::Random;
  for (int t = 0; t < trials; ++t) {
    sfmap::RatioSeries series = sfmap::ratio_experiment(inst, mode, iters, seed + static_cast<unsigned>(t));
    std::string path = out_path;
    if (trials > 1) {
      size_t dot = path.rfind('.');
      std::string stem = (dot == std::string::npos) ? path : path.substr(0, dot);
      std::string ext = (dot == std::string::npos) ? "" : path.substr(dot);
      path = stem + "_trial" + std::to_string(t + 1) + ext;
    }
    write_file(path, sfmap::ratio_csv(series));
    std::cout << "trial " << t + 1 << " -> " << path
              << " (predicted_cf2 " << series.predicted << ")\n";
  }
  return kExitOk;
}

int cmd_brute(const std::string& problem_path) {
  sfmap::DecomposableProblem p = sfmap::parse_problem(read_file(problem_path));
  sfmap::BruteForceResult res = sfmap::brute_force_min(p);
  std::cout << "minimizer " << set_to_string(res.minimizer) << '\n'
            << "min_value " << res.value << '\n';
  return kExitOk;
}

int cmd_check(const std::string& problem_path) {
  sfmap::DecomposableProblem p = sfmap::parse_problem(read_file(problem_path));
  int n = p.n();
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  bool ok = true;
  for (int i = 0; i < p.r(); ++i) {
    const sfmap::SimpleComponent& c = p.components[static_cast<size_t>(i)];
    sfmap::Vec z(n);
    for (int j = 0; j < n; ++j) z[j] = u(rng);
    sfmap::Vec proj = sfmap::project_component(c, z);
    sfmap::FwResult fw = sfmap::fw_project(c, z, 20000);
    sfmap::OracleReport rep;
    rep.iterations = fw.iterations;
    rep.distance_to_reference = (proj - fw.point).lpNorm<Eigen::Infinity>();
    rep.variational_residual = sfmap::variational_check(c, z, proj, 1000);
    if (c.support_size() <= sfmap::kExhaustivePairLimit) {
      sfmap::BaseMembership mem = sfmap::check_in_base(c, proj, 1e-9);
      rep.max_violation = mem.worst_violation;
      if (!mem.ok) ok = false;
    }
    if (rep.distance_to_reference > 1e-6 || rep.variational_residual > 1e-7) ok = false;
    std::cout << "component " << i << " max_violation " << rep.max_violation
              << " variational_residual " << rep.variational_residual
              << " distance_to_reference " << rep.distance_to_reference << " iterations "
              << rep.iterations << '\n';
  }
  std::cout << (ok ? "all checks passed" : "CHECK FAILED") << '\n';
  return ok ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decomposable submodular minimization via alternating projections"};
  app.require_subcommand(1);

  std::string problem_path, trace_path, faces_path, out_path = "ratios.csv", init = "random";
  int max_iters = 20000, iters = 500, trials = 1, n = 10, r = 10;
  double tol_gap = 1e-6;
  unsigned seed_value = 0;
  bool parallel = false, seed_set = false;

  CLI::App* solve = app.add_subcommand("solve", "run the alternating-projections solver");
  solve->add_option("problem", problem_path)->required();
  solve->add_option("--max-iters", max_iters);
  solve->add_option("--tol-gap", tol_gap);
  solve->add_option("--seed", seed_value)->each([&](const std::string&) { seed_set = true; });
  solve->add_option("--trace", trace_path);
  solve->add_flag("--parallel", parallel);

  CLI::App* spectral = app.add_subcommand("spectral", "spectral report for a face partition");
  spectral->add_option("problem", problem_path)->required();
  spectral->add_option("--faces", faces_path)->required();

  CLI::App* lowerbound = app.add_subcommand("lowerbound", "cycle-cut rate experiment");
  lowerbound->add_option("--n", n)->required();
  lowerbound->add_option("--r", r)->required();
  lowerbound->add_option("--init", init)->check(CLI::IsMember({"random", "worst"}));
  lowerbound->add_option("--trials", trials);
  lowerbound->add_option("--iters", iters);
  lowerbound->add_option("--seed", seed_value);
  lowerbound->add_option("--out", out_path);

  CLI::App* brute = app.add_subcommand("brute", "exhaustive minimization");
  brute->add_option("problem", problem_path)->required();

  CLI::App* check = app.add_subcommand("check", "run the projection oracle suite");
  check->add_option("problem", problem_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(problem_path, max_iters, tol_gap,
                       seed_set ? std::optional<unsigned>(seed_value) : std::nullopt, trace_path,
                       parallel);
    if (spectral->parsed()) return cmd_spectral(problem_path, faces_path);
    if (lowerbound->parsed())
      return cmd_lowerbound(n, r, init, trials, iters, seed_value, out_path);
    if (brute->parsed()) return cmd_brute(problem_path);
    if (check->parsed()) return cmd_check(problem_path);
  } catch (const sfmap::submodularity_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNotSubmodular;
  } catch (const sfmap::numeric_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
