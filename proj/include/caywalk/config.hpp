#pragma once

#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "caywalk/caps.hpp"
#include "caywalk/cayley.hpp"
#include "caywalk/coin.hpp"
#include "caywalk/engine.hpp"

namespace caywalk {

// A fully-resolved run description. The canonical text form (sorted
// key=value lines) round-trips exactly, which makes runs reproducible and
// scriptable.
struct RunConfig {
  int n = 4;
  std::string gens = "gamma";   // gamma | transpositions | explicit cycles "(1 2);(1 2 3 4)"
  std::string coin = "grover";  // grover | hadamard | ix | custom:<file>
  std::string start = "0,e";    // "<s>,<g>" | "uniform:<g>"; g as cycles, "e", or rank:<k>
  long long steps = 1;
  long long t_max = 1024;
  double epsilon = 0.05;
  std::string backend = "float"; // float | rational | scaledint

  std::string canonical() const {
    char eps[32];
    std::snprintf(eps, sizeof eps, "%.17g", epsilon);
    std::ostringstream out;
    out << "backend=" << backend << '\n'
        << "coin=" << coin << '\n'
        << "epsilon=" << eps << '\n'
        << "gens=" << gens << '\n'
        << "n=" << n << '\n'
        << "start=" << start << '\n'
        << "steps=" << steps << '\n'
        << "tmax=" << t_max << '\n';
    return out.str();
  }

  static RunConfig from_canonical(const std::string& text) {
    RunConfig config;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config: expected key=value, got '" + line + "'");
      const std::string key = line.substr(0, eq);
      const std::string value = line.substr(eq + 1);
      if (key == "backend")
        config.backend = value;
      else if (key == "coin")
        config.coin = value;
      else if (key == "epsilon")
        config.epsilon = std::stod(value);
      else if (key == "gens")
        config.gens = value;
      else if (key == "n")
        config.n = std::stoi(value);
      else if (key == "start")
        config.start = value;
      else if (key == "steps")
        config.steps = std::stoll(value);
      else if (key == "tmax")
        config.t_max = std::stoll(value);
      else
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    return config;
  }
};

// "gamma" / "gamma:<n>" / "transpositions" / "transpositions:<n>" /
// explicit semicolon-separated cycle notation relative to n.
inline GeneratingSet resolve_generators(const std::string& spec, int n) {
  auto split = [&](const std::string& name) -> std::pair<std::string, int> {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return {spec, n};
    return {spec.substr(0, colon), std::stoi(spec.substr(colon + 1))};
  };
  if (spec.rfind("gamma", 0) == 0) {
    const auto [name, degree] = split(spec);
    if (name != "gamma") throw std::invalid_argument("unknown generator preset: " + spec);
    if (degree != n)
      throw std::invalid_argument("generator preset degree " + std::to_string(degree) +
                                  " conflicts with group degree " + std::to_string(n));
    return gamma_generators(n);
  }
  if (spec.rfind("transpositions", 0) == 0) {
    const auto [name, degree] = split(spec);
    if (name != "transpositions") throw std::invalid_argument("unknown generator preset: " + spec);
    if (degree != n)
      throw std::invalid_argument("generator preset degree " + std::to_string(degree) +
                                  " conflicts with group degree " + std::to_string(n));
    return transposition_generators(n);
  }
  std::vector<Permutation> gens;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ';'))
    if (!item.empty()) gens.push_back(perm_from_cycle_string(n, item));
  if (gens.empty()) throw std::invalid_argument("empty generator spec: " + spec);
  return GeneratingSet(n, std::move(gens));
}

inline CoinOperator resolve_coin(const std::string& spec, int d) {
  CoinOperator coin;
  if (spec == "grover")
    coin = grover_coin(d);
  else if (spec == "hadamard")
    coin = hadamard_coin();
  else if (spec == "ix")
    coin = ix_coin();
  else if (spec.rfind("custom:", 0) == 0)
    coin = coin_from_json_file(spec.substr(7));
  else
    throw std::invalid_argument("unknown coin spec: " + spec);
  if (coin.d != d)
    throw std::invalid_argument("coin dimension " + std::to_string(coin.d) +
                                " does not match generator count " + std::to_string(d));
  return coin;
}

struct StartSpec {
  bool uniform = false;
  int chirality = 0;
  std::size_t vertex = 0;
};

inline std::size_t resolve_vertex(const std::string& text, const CayleyGraph& graph) {
  if (text == "e" || text.empty()) return 0;
  if (text.rfind("rank:", 0) == 0) {
    const std::size_t r = std::stoull(text.substr(5));
    if (r >= graph.order) throw std::invalid_argument("vertex rank out of range: " + text);
    return r;
  }
  return rank(perm_from_cycle_string(graph.n, text));
}

inline StartSpec resolve_start(const std::string& spec, const CayleyGraph& graph) {
  StartSpec start;
  if (spec.rfind("uniform", 0) == 0) {
    start.uniform = true;
    const auto colon = spec.find(':');
    start.vertex = resolve_vertex(colon == std::string::npos ? "e" : spec.substr(colon + 1), graph);
    return start;
  }
  const auto comma = spec.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("start spec must be '<s>,<g>' or 'uniform:<g>': " + spec);
  const std::string s_text = spec.substr(0, comma);
  // chirality by index, or by generator written in cycle notation
  try {
    start.chirality = std::stoi(s_text);
  } catch (const std::exception&) {
    const Permutation p = perm_from_cycle_string(graph.n, s_text);
    start.chirality = -1;
    for (int s = 0; s < graph.coin_dim(); ++s)
      if (graph.gens.gens[s] == p) start.chirality = s;
    if (start.chirality < 0)
      throw std::invalid_argument("start chirality " + s_text + " is not a generator");
  }
  if (start.chirality < 0 || start.chirality >= graph.coin_dim())
    throw std::invalid_argument("start chirality out of range: " + s_text);
  start.vertex = resolve_vertex(spec.substr(comma + 1), graph);
  return start;
}

inline std::string validate_backend(const std::string& backend, const CoinOperator& coin) {
  if (backend == "float") return backend;
  if (backend == "rational") {
    if (!coin.exact)
      throw std::invalid_argument("rational backend requires a coin with exact rational "
                                  "entries (grover)");
    return backend;
  }
  if (backend == "scaledint") {
    if (coin.kind != CoinKind::hadamard)
      throw std::invalid_argument("scaledint backend requires the hadamard coin");
    return backend;
  }
  throw std::invalid_argument("unknown backend: " + backend);
}

} // namespace caywalk
