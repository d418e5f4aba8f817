#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

#include "skein/hsphere.hpp"

namespace skein {

namespace {

// roots of the monic polynomial x^n + c[n-1] x^(n-1) + ... + c[0]
std::vector<cplx> monic_roots(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size());
  CMatrix M = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) M(i, n - 1) = -c[i];
  Eigen::ComplexEigenSolver<CMatrix> es(M, false);
  std::vector<cplx> r(n);
  for (int i = 0; i < n; ++i) r[i] = es.eigenvalues()(i);
  return r;
}

std::vector<cplx> cluster(const std::vector<cplx>& rs, double tol = 1e-2) {
  std::vector<cplx> out(rs.size());
  std::vector<bool> used(rs.size(), false);
  for (size_t i = 0; i < rs.size(); ++i) {
    if (used[i]) continue;
    std::vector<size_t> g;
    for (size_t j = 0; j < rs.size(); ++j)
      if (!used[j] && std::abs(rs[j] - rs[i]) < tol * std::max(1.0, std::abs(rs[i]))) g.push_back(j);
    cplx m = 0.0;
    for (size_t j : g) m += rs[j];
    m /= double(g.size());
    for (size_t j : g) {
      used[j] = true;
      out[j] = m;
    }
  }
  return out;
}

std::vector<Quad> solve_W(const Pairings& C) {
  const cplx e2 = C.c0 + C.c1 + C.cinf;
  const cplx s2 = C.c0 * C.c1 + C.c0 * C.cinf + C.c1 * C.cinf;
  const cplx s3 = C.c0 * C.c1 * C.cinf;
  const cplx k = C.gamma + 2.0 * e2;
  // u (s3 - e4 (u - 4 e2)) - (s2 + 4 e4)^2 with e4 = k - u
  const cplx b = s2 + 4.0 * k;
  std::vector<cplx> us = cluster(monic_roots({-b * b, s3 + 4.0 * e2 * k + 8.0 * b, -k - 4.0 * e2 - 16.0}));
  std::vector<Quad> sols;
  for (cplx u : us) {
    const cplx e4 = k - u;
    cplx r = std::sqrt(u);
    for (cplx e1 : {r, -r}) {
      std::vector<cplx> e3s;
      if (std::abs(e1) > 1e-6) e3s = {(s2 + 4.0 * e4) / e1};
      else {
        cplx t = std::sqrt(s3 + 4.0 * e2 * e4);
        e3s = {t, -t};
      }
      for (cplx e3 : e3s) {
        std::vector<cplx> rts = cluster(monic_roots({e4, -e3, e2, -e1}));
        std::array<int, 4> p{0, 1, 2, 3};
        do {
          Quad W{rts[p[0]], rts[p[1]], rts[p[2]], rts[p[3]]};
          Pairings c = pairings(W);
          double ok = std::max({std::abs(c.c0 - C.c0), std::abs(c.c1 - C.c1), std::abs(c.cinf - C.cinf),
                                std::abs(c.gamma - C.gamma)});
          if (ok >= 1e-7) continue;
          bool dup = std::any_of(sols.begin(), sols.end(), [&](const Quad& s) {
            for (int i = 0; i < 4; ++i)
              if (std::abs(s[i] - W[i]) >= 1e-6) return false;
            return true;
          });
          if (!dup) sols.push_back(W);
        } while (std::next_permutation(p.begin(), p.end()));
      }
    }
  }
  return sols;
}

using Point = std::array<double, 7>;

bool same(const Point& a, const Point& b) {
  for (int i = 0; i < 7; ++i)
    if (std::abs(a[i] - b[i]) > 1e-6) return false;
  return true;
}

Point rotate(const Point& p) { return {p[1], p[2], p[0], p[3], p[5], p[6], p[4]}; }

Point klein(const Point& p, int k) {
  static constexpr int perm[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  Point o = p;
  for (int i = 0; i < 4; ++i) o[3 + i] = p[3 + perm[k][i]];
  return o;
}

Point sign(const Point& p, int code) {
  int d[4];
  for (int i = 0; i < 3; ++i) d[i] = (code >> i & 1) ? -1 : 1;
  d[3] = d[0] * d[1] * d[2];
  Point o = p;
  o[0] *= d[0] * d[1];
  o[1] *= d[0] * d[2];
  o[2] *= d[1] * d[2];
  for (int i = 0; i < 4; ++i) o[3 + i] *= d[i];
  return o;
}

}  // namespace

std::vector<HSExceptionalPoint> hs_search_exceptional(int den_bound) {
  std::vector<Point> pts;
  for (int zc = 0; zc < 8; ++zc)
    for (int ac = 0; ac < 8; ++ac) {
      auto pm = [](int code, int bit) { return (code >> (2 - bit) & 1) ? -2.0 : 2.0; };
      const double z0 = pm(zc, 0), z1 = pm(zc, 1), zi = pm(zc, 2);
      const double Am1 = pm(ac, 0), Ah = pm(ac, 1), A2 = pm(ac, 2);
      Pairings C;
      C.c1 = z0 * zi - z1 - Am1;
      C.cinf = z0 * z1 - zi - Ah;
      C.c0 = z1 * zi - z0 - A2;
      C.gamma = 4.0 - (z0 * z0 + z1 * z1 + zi * zi - z0 * z1 * zi + C.c0 * z0 + C.c1 * z1 + C.cinf * zi);
      for (const Quad& W : solve_W(C)) {
        bool good = true;
        for (long long b = 0; b <= den_bound && good; ++b)
          for (long long a = -3 * b - 1; a <= 3 * b + 1 && good; ++a) {
            if (std::gcd(std::llabs(a), b) != 1) continue;
            cplx v = hs_slope_A({z0, z1, zi}, C, a, b, den_bound);
            good = std::min(std::abs(v - 2.0), std::abs(v + 2.0)) <= 1e-6;
          }
        if (!good) continue;
        Point p{z0, z1, zi, W[0].real(), W[1].real(), W[2].real(), W[3].real()};
        for (double& x : p) x = std::round(x * 1e8) / 1e8 + 0.0;
        if (std::none_of(pts.begin(), pts.end(), [&](const Point& o) { return same(o, p); })) pts.push_back(p);
      }
    }

  std::vector<int> orbit(pts.size(), -1);
  int next = 0;
  auto index = [&](const Point& p) {
    for (size_t i = 0; i < pts.size(); ++i)
      if (same(pts[i], p)) return static_cast<int>(i);
    return -1;
  };
  for (size_t s = 0; s < pts.size(); ++s) {
    if (orbit[s] >= 0) continue;
    std::vector<size_t> stack{s};
    orbit[s] = next;
    while (!stack.empty()) {
      Point p = pts[stack.back()];
      stack.pop_back();
      std::vector<Point> images{rotate(p)};
      for (int k = 1; k < 4; ++k) images.push_back(klein(p, k));
      for (int c = 1; c < 8; ++c) images.push_back(sign(p, c));
      for (const Point& im : images) {
        int j = index(im);
        if (j >= 0 && orbit[j] < 0) {
          orbit[j] = next;
          stack.push_back(static_cast<size_t>(j));
        }
      }
    }
    ++next;
  }

  std::vector<HSExceptionalPoint> out;
  for (size_t i = 0; i < pts.size(); ++i) {
    HSExceptionalPoint e;
    const Point& p = pts[i];
    e.z = {p[0], p[1], p[2]};
    e.W = {p[3], p[4], p[5], p[6]};
    e.orbit = orbit[i];
    if (std::all_of(e.W.begin(), e.W.end(), [](double x) { return std::abs(x) < 1e-6; })) {
      e.family = HSFamily::Cyclic4;
    } else {
      double prod = 1;
      for (double x : e.W) prod *= x / 2;
      e.family = prod > 0 ? HSFamily::Central : HSFamily::Parabolic;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace skein
