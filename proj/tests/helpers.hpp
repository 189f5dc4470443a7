#pragma once

#include <functional>
#include <vector>

#include "aic/lattice.hpp"

namespace aic::testutil {

// All value tables [0..n)^n that describe a monotone map on lat.
inline std::vector<std::vector<elem>> all_monotone_tables(const lattice_ptr& lat) {
  const int n = lat->size();
  std::vector<std::vector<elem>> out;
  std::vector<elem> t(n, 0);
  while (true) {
    bool mono = true;
    for (int x = 0; x < n && mono; ++x)
      for (int y = 0; y < n && mono; ++y)
        if (lat->leq(x, y) && !lat->leq(t[x], t[y])) mono = false;
    if (mono) out.push_back(t);
    int i = 0;
    while (i < n && t[i] == n - 1) t[i++] = 0;
    if (i == n) break;
    ++t[i];
  }
  return out;
}

}  // namespace aic::testutil
