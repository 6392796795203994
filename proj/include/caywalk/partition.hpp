#pragma once

#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "caywalk/numeric.hpp"

namespace caywalk {

// Integer partition, parts weakly decreasing and positive. Doubles as a
// cycle-type label for conjugacy classes of S_n and as an irrep label.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] <= 0) throw std::invalid_argument("partition: parts must be positive");
      if (i > 0 && parts[i] > parts[i - 1])
        throw std::invalid_argument("partition: parts must be weakly decreasing");
    }
  }

  int sum() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  int size() const { return static_cast<int>(parts.size()); }
  bool empty() const { return parts.empty(); }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

inline std::string to_string(const Partition& p) {
  if (p.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(p.parts[i]);
  }
  return s;
}

// All partitions of n in reverse-lexicographic order: (n) first, (1^n) last.
inline std::vector<Partition> partitions(int n) {
  if (n < 0) throw std::invalid_argument("partitions: n must be nonnegative");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(Partition{cur});
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

// Centralizer order z_mu = prod_j j^{m_j} * m_j! over part sizes j with
// multiplicity m_j; the class size is n!/z_mu.
inline Int centralizer_order(const Partition& mu) {
  Int z = 1;
  int run = 0;
  for (std::size_t i = 0; i < mu.parts.size(); ++i) {
    ++run;
    z *= mu.parts[i];
    if (i + 1 == mu.parts.size() || mu.parts[i + 1] != mu.parts[i]) {
      z *= factorial(run);
      run = 0;
    }
  }
  return z;
}

inline Int class_size(const Partition& mu) {
  return factorial(mu.sum()) / centralizer_order(mu);
}

inline Partition conjugate_partition(const Partition& p) {
  std::vector<int> c;
  if (p.empty()) return Partition{};
  c.resize(p.parts[0], 0);
  for (int part : p.parts)
    for (int j = 0; j < part; ++j) ++c[j];
  return Partition{std::move(c)};
}

} // namespace caywalk
