#pragma once

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

namespace caywalk {

// Size guards for the dense-table, desk-scale regime. Every cap can be
// overridden through the CAYWALK_CAPS environment variable, e.g.
//
//   CAYWALK_CAPS="group=9,enum=100000000"
//
// Keys: group, chars, enum, dense, walsh, hsteps.
struct Caps {
  int group_degree = 8;              // build_cayley: dense n! tables
  int char_degree = 10;              // character_table
  long long enum_limit = 10'000'000; // sequence enumeration: d^(t-1)
  long long dense_dim = 4096;        // explicit walk operator: d * n!
  int walsh_level = 26;              // walsh_seq: 2^n signs
  int walsh_steps = 24;              // hadamard closed form: 2^t words
};

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Caps caps_from_spec(const std::string& spec, Caps caps = {}) {
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("caps: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const long long value = std::stoll(item.substr(eq + 1));
    if (key == "group")
      caps.group_degree = static_cast<int>(value);
    else if (key == "chars")
      caps.char_degree = static_cast<int>(value);
    else if (key == "enum")
      caps.enum_limit = value;
    else if (key == "dense")
      caps.dense_dim = value;
    else if (key == "walsh")
      caps.walsh_level = static_cast<int>(value);
    else if (key == "hsteps")
      caps.walsh_steps = static_cast<int>(value);
    else
      throw std::invalid_argument("caps: unknown key '" + key + "'");
  }
  return caps;
}

// Default caps with any CAYWALK_CAPS overrides applied.
inline Caps caps_from_env(Caps caps = {}) {
  if (const char* spec = std::getenv("CAYWALK_CAPS")) return caps_from_spec(spec, caps);
  return caps;
}

} // namespace caywalk
