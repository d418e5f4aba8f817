#pragma once

#include <algorithm>
#include <vector>

#include "skein/errors.hpp"
#include "skein/scalars.hpp"

namespace skein::detail {

/// Point (s, t) on the fiber s_i t_i = r_i with prod s = x, prod t = y.
inline void fiber_from_r(const std::vector<cplx>& r, cplx x, cplx y, double tol, std::vector<cplx>& s,
                         std::vector<cplx>& t) {
  const int D = static_cast<int>(r.size());
  s.assign(D, 1.0);
  t.assign(D, 1.0);
  double rscale = 1.0;
  cplx R = 1.0;
  for (int i = 0; i < D; ++i) {
    rscale = std::max(rscale, std::abs(r[i]));
    R *= r[i];
  }
  double scale = std::max({1.0, std::abs(R), std::abs(x) * std::abs(y)});
  if (std::abs(x * y - R) > tol * scale * 1e3) throw Error(ErrorKind::NotOnCurve, "x*y differs from R");
  double zero = tol * std::max({1.0, std::abs(y), rscale});
  if (std::abs(x) > zero) {
    // balanced gauge: |s_i| close to |t_i|
    std::vector<cplx> b(D, 1.0);
    cplx B = 1.0;
    for (int i = 0; i < D; ++i) {
      if (std::abs(r[i]) > tol * rscale) b[i] = std::sqrt(r[i]);
      B *= b[i];
    }
    cplx rho = std::pow(x / B, 1.0 / D);
    for (int i = 0; i < D; ++i) s[i] = b[i] * rho;
    for (int i = 0; i < D; ++i) t[i] = r[i] / s[i];
    return;
  }
  std::vector<int> free;
  for (int i = 0; i < D; ++i) {
    if (std::abs(r[i]) <= tol * rscale) {
      s[i] = 0.0;
      t[i] = 1.0;
      free.push_back(i);
    } else {
      t[i] = r[i];
    }
  }
  if (free.empty()) throw Error(ErrorKind::Infeasible, "x = 0 but no r_i vanishes");
  cplx rest = 1.0;
  for (int i = 0; i < D; ++i)
    if (i != free.front()) rest *= t[i];
  t[free.front()] = (std::abs(y) <= zero) ? cplx(0.0) : y / rest;
}

}  // namespace skein::detail
