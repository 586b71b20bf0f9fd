#include "ckm/schubert.hpp"

#include <algorithm>
#include <numeric>

namespace ckm {

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

bool Partition::fits_box(int rows, int cols) const {
  if (length() > rows) return false;
  return parts.empty() || parts.front() <= cols;
}

std::string Partition::label() const {
  std::string s = "s[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + "]";
}

namespace {

void enumerate_box(int rows, int max_part, std::vector<int>& prefix, std::vector<Partition>& out) {
  out.push_back(Partition{prefix});
  if (static_cast<int>(prefix.size()) == rows) return;
  int bound = prefix.empty() ? max_part : prefix.back();
  for (int p = 1; p <= bound; ++p) {
    prefix.push_back(p);
    enumerate_box(rows, max_part, prefix, out);
    prefix.pop_back();
  }
}

// Distribute r extra boxes over rows so that the result is a horizontal strip.
void horizontal_strips(const std::vector<int>& lambda, int row, int remaining, int cols, std::vector<int>& mu,
                       SchubertExpansion& out) {
  const int k = static_cast<int>(lambda.size());
  if (row == k) {
    if (remaining != 0) return;
    Partition p;
    for (int x : mu)
      if (x > 0) p.parts.push_back(x);
    out[p] += 1;
    return;
  }
  int upper = row == 0 ? cols : lambda[row - 1];
  for (int add = 0; add <= remaining && lambda[row] + add <= upper; ++add) {
    mu[row] = lambda[row] + add;
    horizontal_strips(lambda, row + 1, remaining - add, cols, mu, out);
  }
}

}  // namespace

std::vector<Partition> partitions_in_box(int k, int n) {
  std::vector<Partition> out;
  std::vector<int> prefix;
  enumerate_box(k, n - k, prefix, out);
  std::stable_sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.parts > b.parts;
  });
  return out;
}

SchubertExpansion pieri(const Partition& lambda, int r, int k, int n) {
  SchubertExpansion out;
  if (r < 0 || r > n - k) return out;
  std::vector<int> padded(k, 0);
  std::copy(lambda.parts.begin(), lambda.parts.end(), padded.begin());
  std::vector<int> mu(k, 0);
  horizontal_strips(padded, 0, r, n - k, mu, out);
  return out;
}

SchubertExpansion schubert_product(const Partition& lambda, const Partition& mu, int k, int n) {
  const int len = mu.length();
  SchubertExpansion total;
  if (!lambda.fits_box(k, n - k) || !mu.fits_box(k, n - k)) return total;
  if (len == 0) {
    total[lambda] = 1;
    return total;
  }
  // sigma_mu = det[ sigma_{mu_i + w(i) - i} ]; expand over permutations w.
  std::vector<int> perm(len);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < len; ++i)
      for (int j = i + 1; j < len; ++j)
        if (perm[i] > perm[j]) ++inversions;
    SchubertExpansion term{{lambda, 1}};
    for (int i = 0; i < len && !term.empty(); ++i) {
      int r = mu.parts[i] + perm[i] - i;
      SchubertExpansion next;
      for (const auto& [p, c] : term)
        for (const auto& [q, d] : pieri(p, r, k, n)) next[q] += c * d;
      term = std::move(next);
    }
    for (const auto& [p, c] : term) total[p] += (inversions % 2 ? -c : c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::erase_if(total, [](const auto& kv) { return kv.second == 0; });
  return total;
}

}  // namespace ckm
