// caywalk: simulate and cross-check coined quantum walks on Cayley graphs
// of the symmetric group.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "caywalk/analytics.hpp"
#include "caywalk/config.hpp"
#include "caywalk/pathsum.hpp"
#include "caywalk/verify.hpp"
#include "caywalk/walsh.hpp"

namespace {

using namespace caywalk;

constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;

int parse_group_degree(const std::string& group) {
  if (group.rfind("sn:", 0) != 0)
    throw std::invalid_argument("group must be sn:<n>, got '" + group + "'");
  return std::stoi(group.substr(3));
}

// Writes to the named file, or stdout for "-".
class OutputTarget {
public:
  explicit OutputTarget(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

struct CommonOptions {
  std::string group = "sn:4";
  std::string gens = "gamma";
  std::string coin = "grover";
  std::string start = "0,e";
  std::string out = "-";
};

void add_group_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--group", opt.group, "group, sn:<n>")->capture_default_str();
  cmd->add_option("--gens", opt.gens,
                  "generating set: gamma | transpositions | cycles '(1 2);(1 2 3 4)'")
      ->capture_default_str();
}

void add_walk_flags(CLI::App* cmd, CommonOptions& opt) {
  add_group_flags(cmd, opt);
  cmd->add_option("--coin", opt.coin, "grover | hadamard | ix | custom:<file>")
      ->capture_default_str();
  cmd->add_option("--start", opt.start, "'<s>,<g>' or 'uniform:<g>'")->capture_default_str();
}

CayleyGraph make_graph(const CommonOptions& opt, const Caps& caps) {
  const int n = parse_group_degree(opt.group);
  return build_cayley(n, resolve_generators(opt.gens, n), caps);
}

nlohmann::json amplitude_json(const CayleyGraph& graph, int s, std::size_t g, Complex value,
                              const std::string& exact = {}) {
  nlohmann::json j{{"s", s},
                   {"g", g},
                   {"perm", cycle_string(unrank(graph.n, g))},
                   {"re", value.real()},
                   {"im", value.imag()}};
  if (!exact.empty()) j["exact"] = exact;
  return j;
}

template <typename Amp>
BasicWalkState<Amp> make_start(const CayleyGraph& graph, const StartSpec& start) {
  return start.uniform ? uniform_coin_state<Amp>(graph, start.vertex)
                       : basis_state<Amp>(graph, start.chirality, start.vertex);
}

int run_walk(const CommonOptions& opt, long long steps, const std::string& backend_name,
             const std::string& json_out, const Caps& caps);

// Runs a walk described by a canonical key=value config file.
int run_walk_from_config(const std::string& path, const std::string& out,
                         const std::string& json_out, const Caps& caps) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  const RunConfig config = RunConfig::from_canonical(text.str());
  CommonOptions opt;
  opt.group = "sn:" + std::to_string(config.n);
  opt.gens = config.gens;
  opt.coin = config.coin;
  opt.start = config.start;
  opt.out = out;
  return run_walk(opt, config.steps, config.backend, json_out, caps);
}

int run_walk(const CommonOptions& opt, long long steps, const std::string& backend_name,
             const std::string& json_out, const Caps& caps) {
  const auto graph = make_graph(opt, caps);
  const auto coin = resolve_coin(opt.coin, graph.coin_dim());
  const auto backend = validate_backend(backend_name, coin);
  const auto start = resolve_start(opt.start, graph);

  nlohmann::json amps = nlohmann::json::array();
  OutputTarget out(opt.out);
  Int radicand = 1;

  auto dump_exact = [&](const auto& state) {
    radicand = state.radicand;
    const auto exact = position_distribution(state);
    write_distribution_csv(graph, to_double(exact), out.stream(), &exact);
    if (!json_out.empty()) {
      const double scale = 1.0 / std::sqrt(to_double(state.radicand));
      for (int s = 0; s < graph.coin_dim(); ++s)
        for (std::size_t g = 0; g < graph.order; ++g)
          amps.push_back(amplitude_json(graph, s, g,
                                        Complex{to_double(state.at(s, g)) * scale},
                                        state.at(s, g).str()));
    }
  };

  if (backend == "float") {
    const auto state = evolve(make_start<Complex>(graph, start), coin, steps);
    write_distribution_csv(graph, position_distribution(state), out.stream());
    if (!json_out.empty())
      for (int s = 0; s < graph.coin_dim(); ++s)
        for (std::size_t g = 0; g < graph.order; ++g)
          amps.push_back(amplitude_json(graph, s, g, state.at(s, g)));
  } else if (backend == "rational") {
    dump_exact(evolve(make_start<Rational>(graph, start), coin, steps));
  } else {
    dump_exact(evolve(make_start<Int>(graph, start), coin, steps));
  }

  if (!json_out.empty()) {
    nlohmann::json j{{"degree", graph.n},  {"order", graph.order}, {"steps", steps},
                     {"coin", opt.coin},   {"backend", backend},
                     {"radicand", radicand.str()}, {"amplitudes", amps}};
    std::ofstream jf(json_out);
    if (!jf) throw std::invalid_argument("cannot open " + json_out);
    jf << j.dump(2) << '\n';
  }
  return 0;
}

int run_timeavg(const CommonOptions& opt, long long T, const Caps& caps) {
  const auto graph = make_graph(opt, caps);
  const auto coin = resolve_coin(opt.coin, graph.coin_dim());
  const auto start = resolve_start(opt.start, graph);
  const auto avg = time_averaged(make_start<Complex>(graph, start), coin, T);
  OutputTarget out(opt.out);
  write_distribution_csv(graph, avg, out.stream());
  return 0;
}

int run_mixing(const CommonOptions& opt, double eps, long long t_max, const Caps& caps) {
  const auto graph = make_graph(opt, caps);
  const auto coin = resolve_coin(opt.coin, graph.coin_dim());
  const auto start = resolve_start(opt.start, graph);
  const auto report = mixing_time(make_start<Complex>(graph, start), coin, eps, t_max);
  OutputTarget out(opt.out);
  write_convergence_json(report, out.stream());
  return 0;
}

int run_paths(const CommonOptions& opt, long long steps, int terminal, int start_chirality,
              const Caps& caps) {
  const auto graph = make_graph(opt, caps);
  if (terminal < 0 || terminal >= graph.coin_dim())
    throw std::invalid_argument("--terminal out of range");
  const auto table =
      start_chirality >= 0
          ? path_count_table_split(graph, static_cast<int>(steps), terminal, start_chirality, caps)
          : path_count_table(graph, static_cast<int>(steps), terminal, caps);
  OutputTarget out(opt.out);
  write_path_counts_json(graph, table, out.stream());
  return 0;
}

int run_walsh(int level, const std::string& out_path, const Caps& caps) {
  const auto w = walsh_seq(level, caps);
  OutputTarget out(out_path);
  write_walsh_signs(w, out.stream());
  return 0;
}

int run_hadamard_walk(int n, long long steps, const std::string& out_path, const Caps& caps) {
  const auto graph = build_cayley(n, gamma_generators(n), caps);
  const auto table = hadamard_amplitude_table(graph, static_cast<int>(steps), caps);
  OutputTarget out(out_path);
  write_hadamard_amplitudes_csv(graph, table, out.stream());
  return 0;
}

int run_characters(int n, const std::string& out_path, const Caps& caps) {
  const auto table = character_table(n, caps);
  OutputTarget out(out_path);
  write_character_csv(table, out.stream());
  return 0;
}

int run_graph(const CommonOptions& opt, const std::string& dot_path,
              const std::string& json_path, bool want_diameter, const Caps& caps) {
  const auto graph = make_graph(opt, caps);
  std::cout << "order " << graph.order << ", degree " << graph.coin_dim() << ", "
            << (is_conjugate_invariant(graph.n, graph.gens) ? "conjugate-invariant"
                                                            : "not conjugate-invariant")
            << " generating set\n";
  if (want_diameter) std::cout << "diameter " << diameter(graph) << '\n';
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out) throw std::invalid_argument("cannot open " + dot_path);
    write_dot(graph, out);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw std::invalid_argument("cannot open " + json_path);
    write_succ_json(graph, out);
  }
  return 0;
}

int run_spectrum(const CommonOptions& opt, const Caps& caps) {
  const auto graph = make_graph(opt, caps);
  const auto coin = resolve_coin(opt.coin, graph.coin_dim());
  const auto u = build_walk_matrix(graph, coin, std::nullopt, caps);
  const auto report = walk_spectrum(u);
  std::cerr << "dim " << u.dim << ", min pairwise gap " << report.clusters.min_pairwise
            << ", largest cluster multiplicity " << report.clusters.max_multiplicity
            << ", max | |lambda|-1 | = " << report.max_modulus_deviation << '\n';
  OutputTarget out(opt.out);
  write_spectrum_csv(report, out.stream());
  return 0;
}

int run_verify(const std::string& only, const std::string& data_dir) {
  const auto results = verify::run_checks(only, data_dir);
  if (results.empty()) {
    std::cerr << "error: no checks match --only " << only << '\n';
    return kExitValidation;
  }
  return verify::report(results, std::cout) ? 0 : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"coined quantum walks on Cayley graphs of the symmetric group"};
  app.require_subcommand(1);
  const Caps caps = caps_from_env();

  CommonOptions walk_opt;
  long long walk_steps = 1;
  std::string walk_backend = "float";
  std::string walk_json;
  auto* walk_cmd = app.add_subcommand("walk", "evolve a walk and export its distribution");
  add_walk_flags(walk_cmd, walk_opt);
  walk_cmd->add_option("--steps", walk_steps, "number of steps t")->capture_default_str();
  walk_cmd->add_option("--backend", walk_backend, "float | rational | scaledint")
      ->capture_default_str();
  walk_cmd->add_option("--out", walk_opt.out, "distribution CSV ('-' = stdout)")
      ->capture_default_str();
  walk_cmd->add_option("--json", walk_json, "also dump amplitudes as JSON to this file");
  std::string walk_config;
  walk_cmd->add_option("--config", walk_config,
                       "run from a canonical key=value config file (group/coin/start flags "
                       "are then ignored)");

  CommonOptions avg_opt;
  long long avg_T = 64;
  auto* avg_cmd = app.add_subcommand("timeavg", "time-averaged distribution over T steps");
  add_walk_flags(avg_cmd, avg_opt);
  avg_cmd->add_option("--T", avg_T, "number of averaged steps")->capture_default_str();
  avg_cmd->add_option("--out", avg_opt.out, "CSV output")->capture_default_str();

  CommonOptions mix_opt;
  mix_opt.coin = "hadamard";
  double mix_eps = 0.05;
  long long mix_tmax = 4096;
  auto* mix_cmd = app.add_subcommand("mixing", "mixing-time report against the empirical limit");
  add_walk_flags(mix_cmd, mix_opt);
  mix_cmd->add_option("--eps", mix_eps, "total-variation threshold")->capture_default_str();
  mix_cmd->add_option("--tmax", mix_tmax, "largest averaged window")->capture_default_str();
  mix_cmd->add_option("--out", mix_opt.out, "JSON report output")->capture_default_str();

  CommonOptions paths_opt;
  long long paths_steps = 2;
  int paths_terminal = 0;
  int paths_start = -1;
  auto* paths_cmd =
      app.add_subcommand("paths", "generating-sequence path counts per switch grade");
  add_group_flags(paths_cmd, paths_opt);
  paths_cmd->add_option("--steps", paths_steps, "word length t")->capture_default_str();
  paths_cmd->add_option("--terminal", paths_terminal, "index of the final generator")
      ->capture_default_str();
  paths_cmd->add_option("--start-chirality", paths_start,
                        "grade counts by first symbol (split tables)");
  paths_cmd->add_option("--out", paths_opt.out, "JSON output")->capture_default_str();

  int walsh_level = 4;
  std::string walsh_out = "-";
  auto* walsh_cmd = app.add_subcommand("walsh", "sign sequence of the halving recurrence");
  walsh_cmd->add_option("--level", walsh_level, "sequence level n (length 2^n)")
      ->capture_default_str();
  walsh_cmd->add_option("--out", walsh_out, "one sign per line")->capture_default_str();

  int hw_n = 4;
  long long hw_steps = 4;
  std::string hw_out = "-";
  auto* hw_cmd = app.add_subcommand(
      "hadamard-walk", "closed-form integer amplitudes of the hadamard walk on gamma:<n>");
  hw_cmd->add_option("--n", hw_n, "degree of the gamma generating set")->capture_default_str();
  hw_cmd->add_option("--steps", hw_steps, "number of steps t")->capture_default_str();
  hw_cmd->add_option("--out", hw_out, "CSV of integer numerators")->capture_default_str();

  int chars_n = 4;
  std::string chars_out = "-";
  auto* chars_cmd = app.add_subcommand("characters", "exact character table of S_n");
  chars_cmd->add_option("--n", chars_n, "degree")->capture_default_str();
  chars_cmd->add_option("--out", chars_out, "CSV output")->capture_default_str();

  CommonOptions graph_opt;
  std::string graph_dot, graph_json;
  bool graph_diameter = false;
  auto* graph_cmd = app.add_subcommand("graph", "build a Cayley graph and export it");
  add_group_flags(graph_cmd, graph_opt);
  graph_cmd->add_option("--dot", graph_dot, "DOT export path");
  graph_cmd->add_option("--json", graph_json, "successor-table JSON path");
  graph_cmd->add_flag("--diameter", graph_diameter, "compute the directed diameter");

  CommonOptions spec_opt;
  spec_opt.coin = "hadamard";
  spec_opt.out = "eig.csv";
  auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of the dense walk operator");
  add_walk_flags(spec_cmd, spec_opt);
  spec_cmd->add_option("--out", spec_opt.out, "CSV of eigenvalues")->capture_default_str();

  std::string verify_only, verify_dir = ".";
  auto* verify_cmd = app.add_subcommand("verify", "run the full cross-check suite");
  verify_cmd->add_option("--only", verify_only, "run only checks whose id contains this text");
  verify_cmd->add_option("--data-dir", verify_dir, "where produced data files go")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (walk_cmd->parsed())
      return walk_config.empty()
                 ? run_walk(walk_opt, walk_steps, walk_backend, walk_json, caps)
                 : run_walk_from_config(walk_config, walk_opt.out, walk_json, caps);
    if (avg_cmd->parsed()) return run_timeavg(avg_opt, avg_T, caps);
    if (mix_cmd->parsed()) return run_mixing(mix_opt, mix_eps, mix_tmax, caps);
    if (paths_cmd->parsed()) return run_paths(paths_opt, paths_steps, paths_terminal, paths_start, caps);
    if (walsh_cmd->parsed()) return run_walsh(walsh_level, walsh_out, caps);
    if (hw_cmd->parsed()) return run_hadamard_walk(hw_n, hw_steps, hw_out, caps);
    if (chars_cmd->parsed()) return run_characters(chars_n, chars_out, caps);
    if (graph_cmd->parsed())
      return run_graph(graph_opt, graph_dot, graph_json, graph_diameter, caps);
    if (spec_cmd->parsed()) return run_spectrum(spec_opt, caps);
    if (verify_cmd->parsed()) return run_verify(verify_only, verify_dir);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
