#include "lr_oracle.hpp"

#include <functional>

namespace ckm::testing {

namespace {

int part(const Partition& p, int i) { return i < p.length() ? p.parts[i] : 0; }

}  // namespace

long lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu) {
  if (nu.size() != lambda.size() + mu.size()) return 0;
  const int rows = nu.length();
  for (int i = 0; i < std::max(rows, lambda.length()); ++i)
    if (part(lambda, i) > part(nu, i)) return 0;

  // cells of nu / lambda in reading order: rows top to bottom, each right to left
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < rows; ++i)
    for (int j = part(nu, i) - 1; j >= part(lambda, i); --j) cells.emplace_back(i, j);

  std::vector<std::vector<int>> fill(rows);
  for (int i = 0; i < rows; ++i) fill[i].assign(part(nu, i), 0);
  std::vector<int> used(mu.length() + 1, 0);
  long count = 0;

  std::function<void(std::size_t)> place = [&](std::size_t c) {
    if (c == cells.size()) {
      ++count;
      return;
    }
    auto [i, j] = cells[c];
    for (int v = 1; v <= mu.length(); ++v) {
      if (used[v] >= mu.parts[v - 1]) continue;
      // lattice word: after reading this letter, #v <= #(v-1)
      if (v > 1 && used[v] + 1 > used[v - 1]) continue;
      // rows weakly increase left to right (the cell to the right is already filled)
      if (j + 1 < part(nu, i) && fill[i][j + 1] != 0 && fill[i][j + 1] < v) continue;
      // columns strictly increase downwards
      if (i > 0 && j >= part(lambda, i - 1) && j < part(nu, i - 1) && fill[i - 1][j] >= v) continue;
      fill[i][j] = v;
      ++used[v];
      place(c + 1);
      --used[v];
      fill[i][j] = 0;
    }
  };
  place(0);
  return count;
}

SchubertExpansion lr_product(const Partition& lambda, const Partition& mu, int k, int n) {
  SchubertExpansion out;
  for (const auto& nu : partitions_in_box(k, n)) {
    long c = lr_coefficient(lambda, mu, nu);
    if (c != 0) out[nu] = c;
  }
  return out;
}

}  // namespace ckm::testing
