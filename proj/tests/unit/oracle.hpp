#pragma once

// Brute-force reference implementations. They enumerate every cell of a
// table through decode() and never touch the library's marginalization or
// entropy code.

#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

#include "infoflow/joint_table.hpp"

namespace oracle {

inline double entropy_of(const std::map<std::vector<std::size_t>, double>& p) {
  double h = 0.0;
  for (const auto& [k, v] : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

inline double H(const infoflow::JointTable& t, const std::vector<std::size_t>& axes) {
  std::map<std::vector<std::size_t>, double> m;
  for (std::uint64_t c = 0; c < t.cell_count(); ++c) {
    const double p = t.mass_at(c);
    if (p <= 0.0) continue;
    const auto tuple = t.decode(c);
    std::vector<std::size_t> key;
    for (std::size_t a : axes) key.push_back(tuple[a]);
    m[key] += p;
  }
  return entropy_of(m);
}

inline std::vector<std::size_t> cat(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline double cond_H(const infoflow::JointTable& t, const std::vector<std::size_t>& a,
                     const std::vector<std::size_t>& g) {
  return H(t, cat(a, g)) - H(t, g);
}

inline double cmi(const infoflow::JointTable& t, const std::vector<std::size_t>& a,
                  const std::vector<std::size_t>& b, const std::vector<std::size_t>& g = {}) {
  return H(t, cat(a, g)) + H(t, cat(b, g)) - H(t, cat(cat(a, b), g)) - H(t, g);
}

// I(P1; ...; Pn | G) = sum over nonempty S of (-1)^{|S|+1} H(P_S | G).
inline double coinfo(const infoflow::JointTable& t, const std::vector<std::vector<std::size_t>>& parts,
                     const std::vector<std::size_t>& g = {}) {
  const std::size_t n = parts.size();
  double total = 0.0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> axes;
    int bits = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) {
        axes = cat(axes, parts[k]);
        ++bits;
      }
    }
    total += (bits % 2 == 1 ? 1.0 : -1.0) * cond_H(t, axes, g);
  }
  return total;
}

}  // namespace oracle
