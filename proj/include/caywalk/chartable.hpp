#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "caywalk/caps.hpp"
#include "caywalk/numeric.hpp"
#include "caywalk/partition.hpp"
#include "caywalk/perm.hpp"

namespace caywalk {

// Memoized Murnaghan-Nakayama recursion over beta numbers (first-column
// hook lengths). Removing a rim hook of length m from lambda is the same
// as replacing some beta value b by b - m, provided b - m is nonnegative
// and not already a beta value; the hook height is the number of beta
// values strictly between b - m and b.
class MnEvaluator {
public:
  Int character(const Partition& lambda, const Partition& mu) {
    if (lambda.sum() != mu.sum())
      throw std::invalid_argument("mn_character: |lambda| != |mu|");
    return eval(lambda.parts, mu.parts, 0);
  }

private:
  // keyed on (remaining shape, remaining class parts)
  std::map<std::pair<std::vector<int>, std::vector<int>>, Int> memo_;

  Int eval(std::vector<int> lambda, const std::vector<int>& mu, std::size_t mu_pos) {
    if (lambda.empty()) return 1;
    const auto key =
        std::make_pair(lambda, std::vector<int>(mu.begin() + mu_pos, mu.end()));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int m = mu[mu_pos];
    const int r = static_cast<int>(lambda.size());
    std::vector<int> beta(r);
    for (int i = 0; i < r; ++i) beta[i] = lambda[i] + (r - 1 - i);

    Int total = 0;
    for (int i = 0; i < r; ++i) {
      const int target = beta[i] - m;
      if (target < 0) continue;
      int height = 0;
      bool occupied = false;
      for (int j = 0; j < r; ++j) {
        if (j == i) continue;
        if (beta[j] == target) occupied = true;
        if (beta[j] > target && beta[j] < beta[i]) ++height;
      }
      if (occupied) continue;

      std::vector<int> nbeta = beta;
      nbeta[i] = target;
      std::sort(nbeta.rbegin(), nbeta.rend());
      std::vector<int> nlambda;
      const int nr = static_cast<int>(nbeta.size());
      for (int j = 0; j < nr; ++j) {
        const int part = nbeta[j] - (nr - 1 - j);
        if (part > 0) nlambda.push_back(part);
      }
      const Int sub = eval(std::move(nlambda), mu, mu_pos + 1);
      total += (height % 2 == 0) ? sub : -sub;
    }
    memo_[key] = total;
    return total;
  }
};

// Exact integer character chi_lambda(mu). A fresh memo per call; use
// character_table for bulk evaluation.
inline Int mn_character(const Partition& lambda, const Partition& mu) {
  MnEvaluator ev;
  return ev.character(lambda, mu);
}

// Product of hook lengths divides n! into the irrep dimension; independent
// of the rim-hook recursion, so it cross-checks chi_lambda(e).
inline Int hook_length_dimension(const Partition& lambda) {
  const Partition conj = conjugate_partition(lambda);
  Int hooks = 1;
  for (int i = 0; i < lambda.size(); ++i)
    for (int j = 0; j < lambda.parts[i]; ++j)
      hooks *= (lambda.parts[i] - j) + (conj.parts[j] - i) - 1;
  return factorial(lambda.sum()) / hooks;
}

struct CharacterTable {
  int n = 0;
  std::vector<Partition> labels;        // irrep rows and class columns share this order
  std::vector<std::vector<Int>> values; // values[lambda][mu]
  std::vector<Int> dims;
  std::vector<Int> class_sizes;
  std::map<std::vector<int>, int> index_of;

  int class_index(const Partition& mu) const {
    auto it = index_of.find(mu.parts);
    if (it == index_of.end()) throw std::invalid_argument("character table: unknown class");
    return it->second;
  }
};

inline CharacterTable character_table(int n, const Caps& caps = {}) {
  if (n < 1) throw std::invalid_argument("character_table: n must be >= 1");
  if (n > caps.char_degree)
    throw CapExceeded("character_table: degree " + std::to_string(n) + " exceeds cap " +
                      std::to_string(caps.char_degree));
  CharacterTable table;
  table.n = n;
  table.labels = partitions(n);
  const int k = static_cast<int>(table.labels.size());
  for (int i = 0; i < k; ++i) table.index_of[table.labels[i].parts] = i;

  MnEvaluator ev;
  table.values.assign(k, std::vector<Int>(k));
  for (int l = 0; l < k; ++l)
    for (int m = 0; m < k; ++m) table.values[l][m] = ev.character(table.labels[l], table.labels[m]);

  const Partition identity_class{std::vector<int>(n, 1)};
  const int id = table.class_index(identity_class);
  for (int l = 0; l < k; ++l) table.dims.push_back(table.values[l][id]);
  for (int m = 0; m < k; ++m) table.class_sizes.push_back(class_size(table.labels[m]));
  return table;
}

// sum_rho d_rho * chi_rho(g); equals n! at the identity and 0 elsewhere.
inline Int delta_identity_sum(const CharacterTable& table, const Permutation& g) {
  if (g.degree() != table.n)
    throw std::invalid_argument("delta_identity_sum: degree mismatch");
  const int m = table.class_index(cycle_type(g));
  Int sum = 0;
  for (std::size_t l = 0; l < table.labels.size(); ++l)
    sum += table.dims[l] * table.values[l][m];
  return sum;
}

// CSV: rows = irrep labels, columns = class labels, integer cells.
inline void write_character_csv(const CharacterTable& table, std::ostream& out) {
  out << "lambda\\mu";
  for (const auto& mu : table.labels) out << ',' << to_string(mu);
  out << '\n';
  for (std::size_t l = 0; l < table.labels.size(); ++l) {
    out << to_string(table.labels[l]);
    for (const auto& v : table.values[l]) out << ',' << v;
    out << '\n';
  }
}

} // namespace caywalk
