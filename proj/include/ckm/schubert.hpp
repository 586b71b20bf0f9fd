#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ckm {

/// Weakly decreasing positive parts; the empty partition indexes the unit class.
struct Partition {
  std::vector<int> parts;

  int size() const;
  int length() const { return static_cast<int>(parts.size()); }
  bool fits_box(int rows, int cols) const;
  std::string label() const;  // "s[2,1]", "s[]"

  auto operator<=>(const Partition&) const = default;
};

/// Schubert indexing for G(k, n): partitions in a k x (n - k) box, ordered by
/// size and then reverse lexicographically (s[2] before s[1,1]).
std::vector<Partition> partitions_in_box(int k, int n);

using SchubertExpansion = std::map<Partition, mpz_class>;

/// Pieri rule: sigma_lambda * sigma_r, truncated to the box.
SchubertExpansion pieri(const Partition& lambda, int r, int k, int n);

/// sigma_lambda * sigma_mu by expanding sigma_mu through the Jacobi-Trudi
/// determinant in special classes and applying Pieri term by term.
SchubertExpansion schubert_product(const Partition& lambda, const Partition& mu, int k, int n);

}  // namespace ckm
