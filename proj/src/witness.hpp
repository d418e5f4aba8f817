#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "skein/linalg.hpp"

namespace skein::detail {

inline Subspace coordinate_subspace(int D, const std::vector<int>& coords) {
  Subspace s;
  s.coords = coords;
  s.basis = CMatrix::Zero(D, static_cast<Eigen::Index>(coords.size()));
  for (size_t j = 0; j < coords.size(); ++j) s.basis(coords[j], static_cast<Eigen::Index>(j)) = 1.0;
  return s;
}

inline std::vector<int> label_range(int lo, int hi, int offset) {
  std::vector<int> v;
  for (int l = lo; l <= hi; ++l) v.push_back(l + offset);
  return v;
}

inline std::optional<Subspace> first_invariant(const std::vector<CMatrix>& gens, int D,
                                               const std::vector<std::vector<int>>& candidates, double& defect) {
  for (const auto& c : candidates) {
    if (c.empty() || static_cast<int>(c.size()) >= D) continue;
    Subspace s = coordinate_subspace(D, c);
    double d = invariance_defect(gens, s.basis);
    if (d < 1e-8) {
      defect = d;
      return s;
    }
  }
  return std::nullopt;
}

/// Arcs (i, j] of the cyclic basis cut out by s_j = 0 and t_i = 0.
inline std::vector<std::vector<int>> arc_candidates(const std::vector<cplx>& s, const std::vector<cplx>& t) {
  const int D = static_cast<int>(s.size());
  std::vector<std::vector<int>> cands;
  for (int j = 0; j < D; ++j) {
    if (s[j] != cplx(0.0)) continue;
    for (int i = 0; i < D; ++i) {
      if (i == j || t[i] != cplx(0.0)) continue;
      std::vector<int> arc;
      for (int l = i + 1;; ++l) {
        arc.push_back(l % D);
        if (l % D == j) break;
      }
      std::sort(arc.begin(), arc.end());
      cands.push_back(arc);
    }
  }
  return cands;
}

}  // namespace skein::detail
