// sacut: command-line front end for the Sherali-Adams rounding library.
//
// Exit codes: 0 success, 1 module error or failed check, 2 usage, parse or
// parameter error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "sacut/sacut.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Raised for bad flag values detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// A file is read as Unique Games when some data line has more than three
// fields ("u v w a0 .. a(q-1)" with q >= 2); edge lists have at most three.
bool looks_like_unique_games(std::string_view text) {
  bool ug = false;
  sacut::detail::for_each_line(text, [&](std::size_t, std::string_view raw) {
    if (sacut::detail::split_ws(sacut::detail::strip_comment(raw)).size() > 3) ug = true;
  });
  return ug;
}

struct LoadedInstance {
  std::optional<sacut::CspInstance> ug;
  std::optional<sacut::Graph> graph;  // set for Max-Cut input
  const sacut::Graph& underlying() const { return ug ? ug->graph() : *graph; }
};

LoadedInstance load_instance(const std::string& path, const std::string& problem) {
  const std::string text = read_file(path);
  bool ug = false;
  if (problem == "ug") ug = true;
  else if (problem == "maxcut") ug = false;
  else if (problem == "auto") ug = looks_like_unique_games(text);
  else throw UsageError("--problem must be auto, maxcut or ug");
  LoadedInstance out;
  if (ug) out.ug = sacut::parse_unique_games(text);
  else out.graph = sacut::parse_edge_list(text);
  return out;
}

struct SolveArgs {
  std::string input, output, problem = "auto";
  sacut::PipelineOptions opts;
  std::string sampling = "stationary";
};

int cmd_solve(const SolveArgs& a) {
  sacut::PipelineOptions opts = a.opts;
  if (a.sampling == "uniform") opts.sampling = sacut::IndexSampling::Uniform;
  else if (a.sampling != "stationary") throw UsageError("--sampling must be stationary or uniform");
  const LoadedInstance inst = load_instance(a.input, a.problem);
  const sacut::RoundingTrace tr =
      inst.ug ? sacut::solve_unique_games(*inst.ug, opts) : sacut::solve_maxcut(*inst.graph, opts);
  write_output(a.output, sacut::format_trace(tr));
  return kExitOk;
}

struct VerifyArgs {
  std::string check, output;
  int trials = -1;
  std::uint64_t seed = 1;
  int threads = 0;
};

int cmd_verify(const VerifyArgs& a) {
  const auto& names = sacut::verify_check_names();
  if (std::find(names.begin(), names.end(), a.check) == names.end()) {
    throw UsageError("unknown check \"" + a.check + "\"");
  }
  const auto rows = sacut::run_verify({a.check, a.trials, a.seed, a.threads});
  write_output(a.output, sacut::to_csv(rows));
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.pass ? 0 : 1;
  std::cerr << a.check << ": " << rows.size() - failed << "/" << rows.size() << " rows pass\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

struct MaxQpArgs {
  int n = 0, k = 0;
  int trials = 32;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_maxqp(const MaxQpArgs& a) {
  sacut::MaxQpReport r;
  try {
    r = sacut::maxqp_report(a.n, a.k);
  } catch (const sacut::Error& e) {
    throw UsageError(e.what());
  }
  std::string text = sacut::format_maxqp(r);
  bool ok = r.n > 12 || r.locality.passed;
  if (r.n <= 12) {
    const auto ex = sacut::extract_assignment(sacut::negative_clique(r.n), sacut::second_moments(r.n, r.moments),
                                              r.k, a.trials, a.seed);
    std::ostringstream os;
    os.precision(12);
    os << "extraction: moment_objective=" << ex.moment_objective << " within_blocks=" << ex.within_moments
       << " achieved=" << ex.achieved << " bound=" << ex.bound << " holds=" << (ex.holds ? "yes" : "no") << '\n';
    text += os.str();
    ok = ok && ex.holds;
  }
  write_output(a.output, text);
  return ok ? kExitOk : kExitFailure;
}

struct GenerateArgs {
  std::string kind, output;
  int n = 10, q = 3;
  double p = 0.5, noise = 0.0;
  int blocks = 3, block_size = 8, edge_degree = 7, bridges = 0;
  std::uint64_t seed = 1;
};

int cmd_generate(const GenerateArgs& a) {
  std::string text;
  std::optional<std::string> planted;
  try {
    if (a.kind == "random-gnp") {
      text = sacut::to_edge_list(sacut::random_gnp(a.n, a.p, a.seed));
    } else if (a.kind == "planted-cut") {
      const auto pc = sacut::planted_cut(a.n, a.p, a.noise, a.seed);
      text = sacut::to_edge_list(pc.graph);
      planted = sacut::to_assignment_text(pc.side);
    } else if (a.kind == "planted-ug-shift") {
      const auto pu = sacut::planted_ug_shift(a.n, a.q, a.p, a.noise, a.seed);
      text = sacut::to_unique_games_text(pu.instance);
      planted = sacut::to_assignment_text(pu.planted);
    } else if (a.kind == "random-ug") {
      text = sacut::to_unique_games_text(sacut::random_unique_games(a.n, a.q, a.p, a.seed));
    } else if (a.kind == "expander-union") {
      text = sacut::to_edge_list(sacut::expander_union(a.blocks, a.block_size, a.edge_degree, a.bridges, a.seed));
    } else if (a.kind == "clique") {
      text = sacut::to_edge_list(sacut::clique(a.n));
    } else {
      throw UsageError("unknown kind \"" + a.kind + "\"");
    }
  } catch (const sacut::Error& e) {
    throw UsageError(e.what());
  }
  if (planted && (a.output.empty() || a.output == "-")) {
    throw UsageError(a.kind + " writes a .planted file next to --output; give an output path");
  }
  write_output(a.output, text);
  if (planted) write_output(a.output + ".planted", *planted);
  return kExitOk;
}

struct PartitionArgs {
  std::string input, output, problem = "auto";
  double tau = 0.2;
  double rank_target = 1;
  double c = 24;
};

int cmd_partition(const PartitionArgs& a) {
  const LoadedInstance inst = load_instance(a.input, a.problem);
  const int k = static_cast<int>(a.rank_target);
  if (k < 1) throw UsageError("--rank-target must be at least 1");
  try {
    write_output(a.output, sacut::format_partition(sacut::decompose(inst.underlying(), a.tau, k, a.c)));
  } catch (const sacut::PartitionError& e) {
    write_output(a.output, sacut::format_partition(e.partial()));
    throw;
  }
  return kExitOk;
}

struct RankArgs {
  std::string input, output, problem = "auto";
  double tau = 0.2;
};

int cmd_threshold_rank(const RankArgs& a) {
  const LoadedInstance inst = load_instance(a.input, a.problem);
  const sacut::Spectrum s = sacut::graph_spectrum(inst.underlying());
  std::ostringstream os;
  os.precision(12);
  os << "n=" << s.size() << " tau=" << a.tau << '\n' << "rank_tau=" << sacut::threshold_rank(s, a.tau) << '\n';
  os << "eigenvalues=";
  for (std::size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << s.eigenvalues[k];
  os << '\n';
  write_output(a.output, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sherali-Adams relaxations, global correlation rounding and threshold-rank partitioning"};
  app.require_subcommand(1);

  int result = kExitOk;
  std::function<int()> action;

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve a Max-Cut or Unique Games instance and print the rounding trace");
  s->add_option("--input", solve.input, "instance file")->required();
  s->add_option("--output", solve.output, "report path (default stdout)");
  s->add_option("--problem", solve.problem, "auto, maxcut or ug")->capture_default_str();
  s->add_option("--degree", solve.opts.degree, "Sherali-Adams degree t")->capture_default_str();
  s->add_option("--alpha", solve.opts.alpha, "alpha in (0, 2]")->capture_default_str();
  s->add_option("--tau", solve.opts.tau, "threshold (default from alpha)");
  s->add_option("--rank-target", solve.opts.rank_target, "threshold-rank target (default from alpha)");
  s->add_option("--c", solve.opts.c, "nibble horizon constant (default 12/alpha)");
  s->add_option("--budget", solve.opts.budget, "conditioning budget (default degree - 2)");
  s->add_option("--restarts", solve.opts.restarts, "conditioning restarts per component")->capture_default_str();
  s->add_option("--sampling", solve.sampling, "stationary or uniform")->capture_default_str();
  s->add_option("--seed", solve.opts.seed, "seed")->capture_default_str();
  s->callback([&] { action = [&] { return cmd_solve(solve); }; });

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run one inequality suite and write CSV rows");
  v->add_option("--check", verify.check, "suite name")->required();
  v->add_option("--trials", verify.trials, "trial count (default per suite)");
  v->add_option("--seed", verify.seed, "base seed")->capture_default_str();
  v->add_option("--threads", verify.threads, "worker threads (0: all cores)")->capture_default_str();
  v->add_option("--output", verify.output, "CSV path (default stdout)");
  v->callback([&] { action = [&] { return cmd_verify(verify); }; });

  MaxQpArgs maxqp;
  auto* m = app.add_subcommand("maxqp", "k-local moments of the negative clique versus its true optimum");
  m->add_option("--n", maxqp.n, "number of variables, at most 20")->required();
  m->add_option("--k", maxqp.k, "locality, even, at most n")->required();
  m->add_option("--trials", maxqp.trials, "random block partitions for the extraction check")->capture_default_str();
  m->add_option("--seed", maxqp.seed, "seed")->capture_default_str();
  m->add_option("--output", maxqp.output, "report path (default stdout)");
  m->callback([&] { action = [&] { return cmd_maxqp(maxqp); }; });

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a seeded instance");
  g->add_option("--kind", gen.kind, "random-gnp, planted-cut, planted-ug-shift, random-ug, expander-union or clique")
      ->required();
  g->add_option("--n", gen.n, "vertices")->capture_default_str();
  g->add_option("--q", gen.q, "alphabet size")->capture_default_str();
  g->add_option("--p", gen.p, "edge probability")->capture_default_str();
  g->add_option("--noise", gen.noise, "noise rate")->capture_default_str();
  g->add_option("--blocks", gen.blocks, "expander-union blocks")->capture_default_str();
  g->add_option("--block-size", gen.block_size, "expander-union block size")->capture_default_str();
  g->add_option("--edge-degree", gen.edge_degree, "expander-union degree inside a block")->capture_default_str();
  g->add_option("--bridges", gen.bridges, "expander-union edges between blocks")->capture_default_str();
  g->add_option("--seed", gen.seed, "seed")->capture_default_str();
  g->add_option("--output", gen.output, "instance path (default stdout)");
  g->callback([&] { action = [&] { return cmd_generate(gen); }; });

  PartitionArgs part;
  auto* p = app.add_subcommand("partition", "Decompose a graph into low threshold-rank pieces");
  p->add_option("--input", part.input, "instance file")->required();
  p->add_option("--problem", part.problem, "auto, maxcut or ug")->capture_default_str();
  p->add_option("--tau", part.tau, "threshold")->capture_default_str();
  p->add_option("--rank-target", part.rank_target, "largest allowed threshold rank per piece")->capture_default_str();
  p->add_option("--c", part.c, "nibble horizon constant")->capture_default_str();
  p->add_option("--output", part.output, "report path (default stdout)");
  p->callback([&] { action = [&] { return cmd_partition(part); }; });

  RankArgs rank;
  auto* r = app.add_subcommand("threshold-rank", "Spectrum of the normalized adjacency and rank_tau");
  r->add_option("--input", rank.input, "instance file")->required();
  r->add_option("--problem", rank.problem, "auto, maxcut or ug")->capture_default_str();
  r->add_option("--tau", rank.tau, "threshold")->capture_default_str();
  r->add_option("--output", rank.output, "report path (default stdout)");
  r->callback([&] { action = [&] { return cmd_threshold_rank(rank); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    result = action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sacut::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sacut::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return result;
}
