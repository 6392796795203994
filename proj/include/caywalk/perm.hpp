#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "caywalk/partition.hpp"

namespace caywalk {

// An element of S_n in one-line notation: img[x] is the image of point x.
// Points are 0-based internally; cycle notation at the text boundary is
// 1-based.
struct Permutation {
  std::vector<int> img;

  Permutation() = default;
  explicit Permutation(std::vector<int> images) : img(std::move(images)) {
    std::vector<char> seen(img.size(), 0);
    for (int v : img) {
      if (v < 0 || v >= degree() || seen[v])
        throw std::invalid_argument("permutation: images are not a bijection");
      seen[v] = 1;
    }
  }

  static Permutation identity(int n) {
    Permutation p;
    p.img.resize(n);
    std::iota(p.img.begin(), p.img.end(), 0);
    return p;
  }

  int degree() const { return static_cast<int>(img.size()); }
  int operator()(int x) const { return img[x]; }

  bool is_identity() const {
    for (int x = 0; x < degree(); ++x)
      if (img[x] != x) return false;
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

// compose(p, q) applies p first, then q: (p then q)(x) = q(p(x)). Walk paths
// g -> g*s multiply on the right, so products read in application order.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("compose: degree mismatch");
  Permutation r;
  r.img.resize(p.degree());
  for (int x = 0; x < p.degree(); ++x) r.img[x] = q.img[p.img[x]];
  return r;
}

inline Permutation inverse(const Permutation& p) {
  Permutation r;
  r.img.resize(p.degree());
  for (int x = 0; x < p.degree(); ++x) r.img[p.img[x]] = x;
  return r;
}

// tau^{-1} p tau, i.e. p with points relabelled through tau.
inline Permutation conjugate(const Permutation& p, const Permutation& tau) {
  return compose(compose(inverse(tau), p), tau);
}

inline Permutation perm_from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  Permutation p = Permutation::identity(n);
  std::vector<char> used(n, 0);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int from = cycle[i];
      int to = cycle[(i + 1) % cycle.size()];
      if (from < 0 || from >= n)
        throw std::invalid_argument("perm_from_cycles: point " + std::to_string(from) +
                                    " out of range for degree " + std::to_string(n));
      if (used[from])
        throw std::invalid_argument("perm_from_cycles: repeated point " + std::to_string(from));
      used[from] = 1;
      p.img[from] = to;
    }
  }
  // re-validate: the cross-cycle "to" targets may collide with fixed points
  return Permutation(std::move(p.img));
}

// Lehmer-code rank in [0, n!), identity at 0. Mutually inverse with unrank.
inline std::size_t rank(const Permutation& p) {
  const int n = p.degree();
  std::size_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p.img[j] < p.img[i]) ++smaller;
    r = r * static_cast<std::size_t>(n - i) + static_cast<std::size_t>(smaller);
  }
  return r;
}

inline Permutation unrank(int n, std::size_t index) {
  if (n < 0 || n > 20) throw std::invalid_argument("unrank: degree outside [0, 20]");
  std::size_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= static_cast<std::size_t>(i);
  if (index >= fact) throw std::invalid_argument("unrank: index out of range");
  std::vector<int> code(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    code[i] = static_cast<int>(index % static_cast<std::size_t>(n - i));
    index /= static_cast<std::size_t>(n - i);
  }
  std::vector<int> items(n);
  std::iota(items.begin(), items.end(), 0);
  Permutation p;
  p.img.resize(n);
  for (int i = 0; i < n; ++i) {
    p.img[i] = items[code[i]];
    items.erase(items.begin() + code[i]);
  }
  return p;
}

// Sorted cycle lengths including fixed points, i.e. the conjugacy class label.
inline Partition cycle_type(const Permutation& p) {
  const int n = p.degree();
  std::vector<char> seen(n, 0);
  std::vector<int> lengths;
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    int len = 0;
    for (int y = x; !seen[y]; y = p.img[y]) {
      seen[y] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return Partition{std::move(lengths)};
}

// Cycle notation with 1-based points, fixed points omitted; "e" for identity.
inline std::string cycle_string(const Permutation& p) {
  const int n = p.degree();
  std::vector<char> seen(n, 0);
  std::string s;
  for (int x = 0; x < n; ++x) {
    if (seen[x] || p.img[x] == x) continue;
    s += '(';
    bool first = true;
    for (int y = x; !seen[y]; y = p.img[y]) {
      seen[y] = 1;
      if (!first) s += ' ';
      s += std::to_string(y + 1);
      first = false;
    }
    s += ')';
  }
  return s.empty() ? "e" : s;
}

inline std::string one_line_string(const Permutation& p) {
  std::string s;
  for (int i = 0; i < p.degree(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p.img[i]);
  }
  return s;
}

// Parses cycle notation like "(1 2)(3 4)" or "(1,2,3)". Points are 1-based
// by default, matching the usual written form; "e" is the identity.
inline Permutation perm_from_cycle_string(int n, const std::string& text, bool one_based = true) {
  std::vector<std::vector<int>> cycles;
  std::vector<int> cur;
  bool in_cycle = false;
  int num = -1;
  auto flush_num = [&] {
    if (num >= 0) {
      cur.push_back(one_based ? num - 1 : num);
      num = -1;
    }
  };
  for (char c : text) {
    if (c == '(') {
      if (in_cycle) throw std::invalid_argument("cycle string: nested '('");
      in_cycle = true;
      cur.clear();
    } else if (c == ')') {
      if (!in_cycle) throw std::invalid_argument("cycle string: unmatched ')'");
      flush_num();
      if (!cur.empty()) cycles.push_back(cur);
      in_cycle = false;
    } else if (c >= '0' && c <= '9') {
      if (!in_cycle) throw std::invalid_argument("cycle string: digit outside cycle");
      num = (num < 0 ? 0 : num * 10) + (c - '0');
    } else if (c == ' ' || c == ',' || c == '\t') {
      flush_num();
    } else if (c == 'e' && !in_cycle) {
      // identity marker
    } else {
      throw std::invalid_argument(std::string("cycle string: unexpected character '") + c + "'");
    }
  }
  if (in_cycle) throw std::invalid_argument("cycle string: missing ')'");
  return perm_from_cycles(n, cycles);
}

// One entry per partition of n, with class size n!/z_mu. Sizes sum to n!.
inline std::vector<std::pair<Partition, Int>> conjugacy_classes(int n) {
  if (n < 1) throw std::invalid_argument("conjugacy_classes: n must be >= 1");
  std::vector<std::pair<Partition, Int>> out;
  for (const Partition& mu : partitions(n)) out.emplace_back(mu, class_size(mu));
  return out;
}

} // namespace caywalk
