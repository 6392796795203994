#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "caywalk/numeric.hpp"

#include "json.hpp"

namespace caywalk {

enum class CoinKind { grover, hadamard, ix, custom };

inline const char* to_string(CoinKind k) {
  switch (k) {
    case CoinKind::grover: return "grover";
    case CoinKind::hadamard: return "hadamard";
    case CoinKind::ix: return "ix";
    default: return "custom";
  }
}

// Unitary acting on the d-dimensional chirality space. Coins with rational
// entries additionally carry an exact mirror for the rational backend.
struct CoinOperator {
  int d = 0;
  std::vector<Complex> entries;                 // row-major d x d
  std::optional<std::vector<Rational>> exact;   // set when all entries are rational reals
  CoinKind kind = CoinKind::custom;

  Complex at(int row, int col) const { return entries[static_cast<std::size_t>(row) * d + col]; }
  const Rational& exact_at(int row, int col) const {
    return (*exact)[static_cast<std::size_t>(row) * d + col];
  }
};

inline double unitarity_defect(const CoinOperator& coin) {
  double defect = 0.0;
  for (int i = 0; i < coin.d; ++i)
    for (int j = 0; j < coin.d; ++j) {
      Complex dot = 0.0;
      for (int k = 0; k < coin.d; ++k) dot += std::conj(coin.at(k, i)) * coin.at(k, j);
      defect = std::max(defect, std::abs(dot - (i == j ? Complex{1.0} : Complex{0.0})));
    }
  return defect;
}

// Reflection about the mean on the chirality space: diagonal a = 2/d - 1,
// off-diagonal b = 2/d. d = 2 degenerates to the NOT operation.
inline CoinOperator grover_coin(int d) {
  if (d < 2) throw std::invalid_argument("grover_coin: d must be >= 2");
  CoinOperator coin;
  coin.d = d;
  coin.kind = CoinKind::grover;
  const Rational a = Rational(2, d) - 1;
  const Rational b = Rational(2, d);
  coin.exact.emplace();
  coin.exact->reserve(static_cast<std::size_t>(d) * d);
  coin.entries.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Rational& v = (i == j) ? a : b;
      coin.exact->push_back(v);
      coin.entries.emplace_back(to_double(v), 0.0);
    }
  return coin;
}

inline CoinOperator hadamard_coin() {
  CoinOperator coin;
  coin.d = 2;
  coin.kind = CoinKind::hadamard;
  const double h = 1.0 / std::sqrt(2.0);
  coin.entries = {Complex{h}, Complex{h}, Complex{h}, Complex{-h}};
  return coin;
}

// (I + iX)/sqrt(2); spreads symmetrically where the Hadamard walk does not.
inline CoinOperator ix_coin() {
  CoinOperator coin;
  coin.d = 2;
  coin.kind = CoinKind::ix;
  const double h = 1.0 / std::sqrt(2.0);
  coin.entries = {Complex{h, 0.0}, Complex{0.0, h}, Complex{0.0, h}, Complex{h, 0.0}};
  return coin;
}

inline CoinOperator custom_coin(std::vector<Complex> entries, int d) {
  if (d < 1 || entries.size() != static_cast<std::size_t>(d) * d)
    throw std::invalid_argument("custom_coin: expected a square d x d matrix");
  CoinOperator coin;
  coin.d = d;
  coin.kind = CoinKind::custom;
  coin.entries = std::move(entries);
  if (const double defect = unitarity_defect(coin); defect > 1e-10)
    throw std::invalid_argument("custom_coin: matrix is not unitary (defect " +
                                std::to_string(defect) + ")");
  return coin;
}

// Reads a JSON matrix of [re, im] pairs: [[[1,0],[0,0]],[[0,0],[1,0]]].
inline CoinOperator coin_from_json(const nlohmann::json& j) {
  const int d = static_cast<int>(j.size());
  std::vector<Complex> entries;
  for (const auto& row : j) {
    if (static_cast<int>(row.size()) != d)
      throw std::invalid_argument("coin json: matrix is not square");
    for (const auto& cell : row) {
      if (cell.size() != 2) throw std::invalid_argument("coin json: cell must be [re, im]");
      entries.emplace_back(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return custom_coin(std::move(entries), d);
}

inline CoinOperator coin_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("coin json: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return coin_from_json(j);
}

} // namespace caywalk
