#include <gtest/gtest.h>

#include <set>

#include "skein/errors.hpp"
#include "skein/hsphere.hpp"
#include "skein/sample.hpp"
#include "util.hpp"

using namespace skein;
using skein::test::rel;
using skein::test::Rng;

namespace {

RootContext sphere(int m) { return make_context(1, m, Surface::FourHoledSphere); }

Quad random_eta(Rng& r) { return {r.annulus(0.8, 1.25), r.annulus(0.8, 1.25), r.annulus(0.8, 1.25), r.annulus(0.8, 1.25)}; }

Quad w_of(const Quad& eta) {
  Quad w;
  for (int i = 0; i < 4; ++i) w[i] = eta[i] + 1.0 / eta[i];
  return w;
}

HSCharacter random_character(const RootContext& ctx, Rng& r) {
  HSCharacter ch{r.disk(3), r.disk(3), 0.0, w_of(random_eta(r))};
  ch.zinf = solve_zinf04(ctx, ch, r.uni() < 0.5 ? 0 : 1);
  return ch;
}

double gap(const HSCharacter& a, const HSCharacter& b) {
  double g = std::max({rel(a.z0, b.z0), rel(a.z1, b.z1), rel(a.zinf, b.zinf)});
  for (int i = 0; i < 4; ++i) g = std::max(g, rel(a.w[i], b.w[i]));
  return g;
}

cplx mu(const Quad& eta, cplx x) {
  return (x + eta[0] * eta[1]) * (x + eta[2] * eta[3]) * (eta[0] / x + eta[1]) * (eta[3] / x + eta[2]) /
         (eta[0] * eta[1] * eta[2] * eta[3]);
}

cplx z0_of(const RootContext& ctx, cplx sigma) {
  return double(ctx.eps2()) * (std::pow(sigma, ctx.N) + std::pow(sigma, -ctx.N));
}

// character of an explicit SL2 representation; curves go to minus their traces
using M2 = std::array<double, 4>;
M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}
M2 inv(const M2& a) { return {a[3], -a[1], -a[2], a[0]}; }
double tr(const M2& a) { return a[0] + a[3]; }
M2 neg(const M2& a) { return {-a[0], -a[1], -a[2], -a[3]}; }

using Pt = std::array<double, 7>;
Pt character_of(const M2& p1, const M2& p2, const M2& p3) {
  M2 p4 = inv(mul(mul(p1, p2), p3));
  Pt c{-tr(mul(p1, p2)), -tr(mul(p1, p3)), -tr(mul(p2, p3)), -tr(p1), -tr(p2), -tr(p3), -tr(p4)};
  for (double& x : c) x += 0.0;
  return c;
}

Pt rotate(const Pt& p) { return {p[1], p[2], p[0], p[3], p[5], p[6], p[4]}; }
Pt klein(const Pt& p, int a, int b) {
  Pt o = p;
  std::array<int, 4> perm{0, 1, 2, 3};
  std::swap(perm[a], perm[b]);
  int c = -1, d = -1;
  for (int i = 0; i < 4; ++i)
    if (i != a && i != b) (c < 0 ? c : d) = i;
  std::swap(perm[c], perm[d]);
  for (int i = 0; i < 4; ++i) o[3 + i] = p[3 + perm[i]];
  return o;
}
Pt flip(const Pt& p, std::array<int, 4> d) {
  return {p[0] * d[0] * d[1], p[1] * d[0] * d[2], p[2] * d[1] * d[2], p[3] * d[0], p[4] * d[1], p[5] * d[2], p[6] * d[3]};
}

std::set<Pt> close_under_group(std::set<Pt> pts) {
  std::vector<Pt> todo(pts.begin(), pts.end());
  while (!todo.empty()) {
    Pt p = todo.back();
    todo.pop_back();
    std::vector<Pt> imgs{rotate(p), klein(p, 0, 1), klein(p, 0, 2), klein(p, 0, 3)};
    for (int c = 0; c < 8; ++c) {
      std::array<int, 4> d{c & 1 ? -1 : 1, c & 2 ? -1 : 1, c & 4 ? -1 : 1, 1};
      d[3] = d[0] * d[1] * d[2];
      imgs.push_back(flip(p, d));
    }
    for (Pt q : imgs) {
      for (double& x : q) x += 0.0;
      if (pts.insert(q).second) todo.push_back(q);
    }
  }
  return pts;
}

std::set<Pt> expected_exceptional() {
  const M2 I{1, 0, 0, 1}, J{0, 1, -1, 0}, P{1, 2, 0, 1}, Q{1, 0, -2, 1};
  std::set<Pt> pts;
  std::vector<M2> pm_i{I, neg(I)}, cyc{I, neg(I), J, neg(J)};
  for (const auto& a : cyc)
    for (const auto& b : cyc)
      for (const auto& c : cyc) {
        // a cyclic image is exceptional only when every z lands on +-2
        Pt p = character_of(a, b, c);
        if (std::abs(p[0]) == 2 && std::abs(p[1]) == 2 && std::abs(p[2]) == 2) pts.insert(p);
      }
  for (const auto& a : pm_i)
    for (const auto& b : {P, neg(P)})
      for (const auto& c : {Q, neg(Q)}) pts.insert(character_of(a, b, c));
  return close_under_group(pts);
}

}  // namespace

TEST(Kappa, Examples) {
  EXPECT_EQ(kappa(2.0, 2.0, -2.0), cplx(0.0));
  Rng r(51);
  for (int trial = 0; trial < 50; ++trial) {
    cplx a = r.annulus(0.5, 2), b = r.annulus(0.5, 2), x = r.disk(3);
    cplx want = (x + a * b + 1.0 / (a * b)) * (x + a / b + b / a);
    EXPECT_LT(rel(kappa(a + 1.0 / a, b + 1.0 / b, x), want), 1e-12);
    EXPECT_LT(rel(kappa(0.0, 0.0, x), x * x - 4.0), 1e-14);
  }
  EXPECT_EQ(H_eval(1.0, 2.0, 3.0, 0.0, 0.0, 0.0, 0.0), cplx(1.0 + 4.0 + 9.0 - 6.0));
}

TEST(Identities, KappaProduct) {
  Rng r(52);
  for (int m : {3, 5, 6, 7, 10, 12, 16}) {
    auto ctx = sphere(m);
    for (int trial = 0; trial < 50; ++trial) {
      cplx sigma = r.annulus(0.7, 1.4);
      Quad w = w_of(random_eta(r));
      auto W = central_data(ctx, w).W;
      cplx P12 = 1.0, P34 = 1.0;
      for (int k = 1; k <= ctx.N; ++k) {
        P12 *= kappa(w[0], w[1], hs_lambda_prime(ctx, sigma, k));
        P34 *= kappa(w[2], w[3], hs_lambda_prime(ctx, sigma, k));
      }
      cplx z0 = z0_of(ctx, sigma);
      EXPECT_LT(rel(P12, kappa(W[0], W[1], z0)), 1e-10) << "m=" << m;
      EXPECT_LT(rel(P34, kappa(W[2], W[3], z0)), 1e-10);
    }
  }
}

TEST(Identities, MuProduct) {
  Rng r(53);
  for (int trial = 0; trial < 50; ++trial) {
    Quad eta = random_eta(r);
    Quad w = w_of(eta);
    cplx x = r.annulus(0.5, 2);
    cplx y = x + 1.0 / x;
    EXPECT_LT(rel(mu(eta, x) * mu(eta, 1.0 / x), kappa(w[0], w[1], y) * kappa(w[2], w[3], y)), 1e-10);
  }
}

TEST(Identities, LambdaProduct) {
  Rng r(54);
  for (int m : {3, 5, 6, 7, 10, 12, 16, 20}) {
    auto ctx = sphere(m);
    for (int trial = 0; trial < 50; ++trial) {
      cplx sigma = r.annulus(0.7, 1.4);
      cplx P = 1.0;
      for (int i = 1; i <= ctx.N; ++i) P *= hs_lambda_hat(ctx, sigma, i) * hs_lambda_prime_hat(ctx, sigma, i);
      cplx z0 = z0_of(ctx, sigma);
      EXPECT_LT(rel(P, ctx.qpow(2 * ctx.N) * (z0 * z0 - 4.0)), 1e-10) << "m=" << m;
    }
  }
}

TEST(RCoeff04, ZeroAndProduct) {
  Rng r(55);
  for (int m : {3, 5, 7, 12, 16}) {
    auto ctx = sphere(m);
    for (int trial = 0; trial < 50; ++trial) {
      cplx sigma = r.annulus(0.7, 1.4);
      Quad eta = random_eta(r);
      cplx P = 1.0;
      Quad w = w_of(eta);
      for (int i = 0; i < ctx.N; ++i) P *= r_coeff04(ctx, sigma, w, i);
      EXPECT_LT(rel(P, big_R04(ctx, z0_of(ctx, sigma), w)), 1e-9) << "m=" << m;
      int i = trial % ctx.N;
      eta[1] = -ctx.qpow(4 * i + 2) * sigma / eta[0];
      EXPECT_LT(std::abs(r_coeff04(ctx, sigma, w_of(eta), i)), 1e-10);
    }
  }
}

TEST(TypeZero04, RelationsAndShadow) {
  Rng r(56);
  for (int m : {3, 5, 6, 7, 10, 12, 16}) {
    auto ctx = sphere(m);
    for (int trial = 0; trial < 20; ++trial) {
      cplx sigma = r.annulus(0.8, 1.25);
      Quad w = w_of(random_eta(r));
      cplx z0 = z0_of(ctx, sigma);
      cplx x = r.annulus(0.5, 2.0);
      auto p = fiber_solve04(ctx, sigma, w, x, big_R04(ctx, z0, w) / x);
      for (int i = 0; i < ctx.N; ++i) EXPECT_LT(rel(p.s[i] * p.t[i], r_coeff04(ctx, sigma, w, i)), 1e-12);
      auto rep = build_type0_04(ctx, p);
      EXPECT_LT(verify_relations04(rep).max(), 1e-8);
      auto sh = classical_shadow04_detail(rep);
      EXPECT_LT(sh.off_scalar, 1e-8);
      EXPECT_LT(rel(sh.ch.z0, z0), 1e-9);
      EXPECT_LT(gap(sh.ch, shadow_formula04(ctx, p)), 1e-8) << "m=" << m;
      cplx Ps = 1.0, Pt = 1.0;
      for (int i = 0; i < ctx.N; ++i) {
        Ps *= p.s[i];
        Pt *= p.t[i];
      }
      auto f = f_shift04(ctx, z0, w);
      cplx sN = std::pow(sigma, ctx.N);
      EXPECT_LT(rel(sh.ch.z1, sN * Ps + Pt / sN + f.f1), 1e-8);
      EXPECT_LT(rel(sh.ch.zinf, double(ctx.eps2()) * (Ps + Pt) + f.finf), 1e-8);
    }
  }
}

TEST(Represent04, RoundTrip) {
  Rng r(57);
  int count = 0;
  for (int m : {3, 5, 6, 7, 10, 12, 14, 16}) {
    auto ctx = sphere(m);
    for (int trial = 0; trial < 70; ++trial) {
      HSCharacter ch = random_character(ctx, r);
      auto rep = represent04(ctx, ch);
      EXPECT_LT(verify_relations04(rep).max(), 1e-8);
      auto sh = classical_shadow04_detail(rep);
      EXPECT_LT(gap(sh.ch, ch), 1e-7) << "m=" << m;
      EXPECT_LT(sh.off_scalar, 1e-8);
      ++count;
    }
  }
  EXPECT_GE(count, 500);
}

TEST(Represent04, SmoothIsIrreducible) {
  Rng r(58);
  for (int m : {5, 7, 12}) {
    auto ctx = sphere(m);
    for (int trial = 0; trial < 10; ++trial) {
      auto rep = represent04(ctx, random_character(ctx, r));
      auto red = is_reducible_04(rep);
      EXPECT_FALSE(red.reducible);
      EXPECT_EQ(red.oracle_dim, ctx.N * ctx.N);
      EXPECT_FALSE(red.fast_path);
    }
  }
}

TEST(Represent04, ReducibleOmegaClass) {
  Rng r(59);
  for (int m : {5, 7, 12}) {
    auto ctx = sphere(m);
    for (int k = 1; k < ctx.N; ++k) {
      Quad eta = random_eta(r);
      eta[3] = ctx.qpow(4 * k) / (eta[0] * eta[1] * eta[2]);
      HSCharacter ch = h_map(ctx, eta);
      auto rep = represent04(ctx, ch);
      auto red = is_reducible_04(rep);
      EXPECT_TRUE(red.reducible);
      ASSERT_TRUE(red.witness.has_value());
      EXPECT_LT(red.witness_defect, 1e-6);
      auto az = azumaya_membership(ctx, ch);
      EXPECT_FALSE(az.in_azumaya);
      EXPECT_EQ(az.component, AzumayaComponent::ReducibleOmega);
      ASSERT_TRUE(az.point.has_value());
      EXPECT_LT(std::abs(std::pow(az.point->omega, ctx.N) - 1.0), 1e-8);
      EXPECT_GT(std::abs(az.point->omega - 1.0), 1e-6);
    }
  }
}

TEST(Represent04, RamifiedIsReducible) {
  Rng r(60);
  static constexpr int partner[4][3] = {{1, 2, 3}, {0, 3, 2}, {3, 0, 1}, {2, 1, 0}};
  for (int m : {5, 6, 7, 12}) {
    auto ctx = sphere(m);
    for (int i = 0; i < 4; ++i) {
      Quad w = w_of(random_eta(r));
      for (cplx l : peripheral_lifts(ctx.N, 2.0))
        if (std::abs(l - 2.0) > 1e-6 && std::abs(l + 2.0) > 1e-6) w[i] = l;
      auto W = central_data(ctx, w).W;
      HSCharacter ch{-W[partner[i][0]], -W[partner[i][1]], -W[partner[i][2]], w};
      auto s = classify_singular_04(ctx, ch);
      EXPECT_TRUE(s.variety_singular);
      ASSERT_TRUE(s.ramified.has_value());
      EXPECT_EQ(*s.ramified, i);
      auto az = azumaya_membership(ctx, ch);
      EXPECT_FALSE(az.in_azumaya);
      EXPECT_EQ(az.component, AzumayaComponent::Ramified);
      EXPECT_TRUE(is_reducible_04(represent04(ctx, ch)).reducible);
    }
  }
}

TEST(Singular04, ReducibleLocusAndSmooth) {
  Rng r(61);
  static constexpr int pairs[3][2][2] = {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
  for (int m : {5, 7, 12}) {
    auto ctx = sphere(m);
    for (int trial = 0; trial < 10; ++trial) {
      Quad eta = random_eta(r);
      eta[3] = ctx.qpow(4 * trial) / (eta[0] * eta[1] * eta[2]);
      HSCharacter ch = h_map(ctx, eta);
      auto W = central_data(ctx, ch.w).W;
      const cplx z[3] = {ch.z0, ch.z1, ch.zinf};
      for (int k = 0; k < 3; ++k)
        for (int h = 0; h < 2; ++h)
          EXPECT_LT(std::abs(kappa(W[pairs[k][h][0]], W[pairs[k][h][1]], z[k])), 1e-8);
      auto s = classify_singular_04(ctx, ch);
      EXPECT_TRUE(s.reducible);
      EXPECT_TRUE(s.variety_singular);
      auto sm = classify_singular_04(ctx, random_character(ctx, r));
      EXPECT_FALSE(sm.slice_singular);
      EXPECT_FALSE(sm.variety_singular);
      EXPECT_TRUE(azumaya_membership(ctx, random_character(ctx, r)).in_azumaya);
    }
  }
  auto ctx = sphere(5);
  EXPECT_THROW(classify_singular_04(ctx, {0.5, 0.5, 0.5, {0.1, 0.2, 0.3, 0.4}}), Error);
}

TEST(HB1, SingularYetIrreducible) {
  Rng r(62);
  for (int m : {3, 5, 7, 12, 16}) {
    auto ctx = sphere(m);
    for (int trial = 0; trial < 20; ++trial) {
      Quad eta = random_eta(r);
      eta[3] = 1.0 / (eta[0] * eta[1] * eta[2]);
      HSCharacter ch = h_map(ctx, eta);
      EXPECT_TRUE(classify_singular_04(ctx, ch).variety_singular);
      auto az = azumaya_membership(ctx, ch);
      EXPECT_TRUE(az.in_azumaya);
      EXPECT_EQ(az.component, AzumayaComponent::ReducibleB1);
      auto red = is_reducible_04(represent04(ctx, ch));
      EXPECT_FALSE(red.reducible) << "m=" << m;
      EXPECT_EQ(red.oracle_dim, ctx.N * ctx.N);
    }
  }
}

TEST(HB1, TorsionPointIsAzumaya) {
  for (int m : {5, 7}) {
    auto ctx = sphere(m);
    const int N = ctx.N;
    Quad eta;
    for (int i = 0; i < 3; ++i) eta[i] = std::polar(1.0, std::numbers::pi * (2 * i + 1) / (2 * N));
    eta[3] = 1.0 / (eta[0] * eta[1] * eta[2]);
    for (cplx e : eta) ASSERT_LT(std::abs(std::pow(e, 2 * N) + 1.0), 1e-10);
    HSCharacter ch = h_map(ctx, eta);
    auto az = azumaya_membership(ctx, ch);
    EXPECT_TRUE(az.in_azumaya);
    EXPECT_EQ(az.component, AzumayaComponent::ReducibleB1);
    auto rep = represent04(ctx, ch);
    EXPECT_EQ(rep.provenance.kind, HSKind::Exceptional);
    EXPECT_LT(verify_relations04(rep).max(), 1e-6);
    EXPECT_FALSE(is_reducible_04(rep).reducible);
  }
}

TEST(Exceptional04, LimitBuilderShadow) {
  Rng r(63);
  for (int m : {3, 5, 6, 16}) {
    auto ctx = sphere(m);
    const int N = ctx.N;
    std::vector<std::pair<int, int>> branches;
    if (ctx.N_odd()) branches = {{ctx.eps2(), 1}, {-ctx.eps2(), -1}};
    else branches = {{1, 1}, {-1, 1}};
    for (auto [zs, ss] : branches)
      for (int trial = 0; trial < 3; ++trial) {
        Quad eta = random_eta(r);
        auto rep = build_exceptional_04(ctx, eta, zs, ss);
        ASSERT_TRUE(rep.provenance.exceptional.has_value());
        EXPECT_LT(rep.provenance.exceptional->spread, 1e-5);
        EXPECT_LT(verify_relations04(rep).max(), 1e-6) << "m=" << m;
        auto sh = classical_shadow04(rep, 1e-6);
        cplx z0 = 2.0 * zs;
        cplx p = std::pow(eta[0] * eta[3], N);
        cplx W2 = std::pow(eta[1], N) + std::pow(eta[1], -N), W3 = std::pow(eta[2], N) + std::pow(eta[2], -N);
        cplx z1 = -z0 / p - std::pow(eta[3], -N) * W2 - std::pow(eta[0], -N) * W3;
        cplx zi = -p - 1.0 / p;
        EXPECT_LT(rel(sh.z0, z0), 1e-6);
        EXPECT_LT(rel(sh.z1, z1), 1e-6);
        EXPECT_LT(rel(sh.zinf, zi), 1e-6);
        for (int i = 0; i < 4; ++i) EXPECT_LT(rel(sh.w[i], eta[i] + 1.0 / eta[i]), 1e-9);
      }
  }
}

TEST(Exceptional04, ReducibilityAgainstAzumaya) {
  auto pts = hs_search_exceptional();
  std::set<int> cases;
  for (int m : {3, 5, 16}) {
    auto ctx = sphere(m);
    for (const auto& p : pts) {
      std::array<std::vector<cplx>, 4> L;
      for (int i = 0; i < 4; ++i) L[i] = peripheral_lifts(ctx.N, p.W[i]);
      // one lift per puncture plus the +-2 lifts, to keep the count small
      for (size_t j = 0; j < L[0].size(); ++j) {
        HSCharacter ch{p.z[0], p.z[1], p.z[2], {L[0][j], L[1][j % L[1].size()], L[2][0], L[3][L[3].size() - 1]}};
        auto rep = represent04(ctx, ch);
        EXPECT_LT(verify_relations04(rep).max(), 1e-6);
        auto red = is_reducible_04(rep);
        auto az = azumaya_membership(ctx, ch);
        EXPECT_NE(red.reducible, az.in_azumaya) << "m=" << m;
        EXPECT_EQ(red.fast_path, red.reducible);
        if (rep.provenance.exceptional && az.in_azumaya) cases.insert(rep.provenance.exceptional->red_case);
      }
    }
  }
  EXPECT_FALSE(cases.empty());
}

TEST(SlopeA04, Basics) {
  auto ctx = sphere(7);
  Rng r(64);
  auto ch = random_character(ctx, r);
  EXPECT_EQ(hs_slope_A(ctx, ch, 0, 1), ch.z0);
  EXPECT_EQ(hs_slope_A(ctx, ch, 1, 1), ch.z1);
  EXPECT_EQ(hs_slope_A(ctx, ch, 1, 0), ch.zinf);
  auto C = central_data(ctx, ch.w).C;
  cplx am1 = hs_slope_A(ctx, ch, -1, 1);
  EXPECT_LT(rel(ch.z0 * ch.zinf, ch.z1 + am1 + C.c1), 1e-10);
  EXPECT_THROW(hs_slope_A(ctx, ch, 1, 100, 8), Error);
}

TEST(SlopeA04, CentralCharactersStayAtTwo) {
  const M2 I{1, 0, 0, 1};
  for (int c = 0; c < 8; ++c) {
    M2 a = c & 1 ? neg(I) : I, b = c & 2 ? neg(I) : I, d = c & 4 ? neg(I) : I;
    Pt p = character_of(a, b, d);
    Pairings C = pairings({p[3], p[4], p[5], p[6]});
    for (long long den = 0; den <= 8; ++den)
      for (long long num = -3 * den - 1; num <= 3 * den + 1; ++num) {
        if (std::gcd(std::llabs(num), den) != 1) continue;
        cplx v = hs_slope_A({p[0], p[1], p[2]}, C, num, den, 8);
        EXPECT_LT(std::min(std::abs(v - 2.0), std::abs(v + 2.0)), 1e-9);
      }
  }
}

TEST(Search04, MatchesExplicitRepresentations) {
  auto pts = hs_search_exceptional();
  std::set<Pt> got;
  for (const auto& p : pts) {
    Pt q{p.z[0], p.z[1], p.z[2], p.W[0], p.W[1], p.W[2], p.W[3]};
    for (double& x : q) x = std::round(x) + 0.0;
    got.insert(q);
  }
  EXPECT_EQ(got.size(), pts.size());
  EXPECT_EQ(got, expected_exceptional());
  EXPECT_EQ(close_under_group(got), got);
  EXPECT_TRUE(got.count({-2, -2, -2, -2, -2, -2, -2}));
  EXPECT_TRUE(got.count({2, 2, 2, 0, 0, 0, 0}));
  EXPECT_TRUE(got.count({2, 2, 2, 2, -2, -2, -2}));
  std::set<HSFamily> fams;
  int orbits = 0;
  for (const auto& p : pts) {
    fams.insert(p.family);
    orbits = std::max(orbits, p.orbit + 1);
    Pairings C = pairings({p.W[0], p.W[1], p.W[2], p.W[3]});
    for (long long den = 0; den <= 8; ++den)
      for (long long num = -3 * den - 1; num <= 3 * den + 1; ++num) {
        if (std::gcd(std::llabs(num), den) != 1) continue;
        cplx v = hs_slope_A({p.z[0], p.z[1], p.z[2]}, C, num, den, 8);
        EXPECT_LT(std::min(std::abs(v - 2.0), std::abs(v + 2.0)), 1e-6);
      }
  }
  EXPECT_EQ(fams.size(), 3u);
  EXPECT_EQ(orbits, 3);
}

TEST(Dichotomy04, StructuredSample) {
  for (int m : {5, 6, 16}) {
    auto ctx = sphere(m);
    auto sample = sample_strata(ctx, {{"smooth", 40}}, 7, 12);
    for (const auto& sp : sample) {
      const auto& ch = sp.hs;
      auto rep = represent04(ctx, ch);
      auto red = is_reducible_04(rep);
      auto az = azumaya_membership(ctx, ch);
      EXPECT_NE(red.reducible, az.in_azumaya) << sp.stratum << " " << sp.index << " m=" << m;
      if (sp.stratum == "h-B1") {
        EXPECT_TRUE(classify_singular_04(ctx, ch).variety_singular);
        EXPECT_FALSE(red.reducible);
      }
      if (red.graph_reducible) EXPECT_EQ(*red.graph_reducible, red.reducible);
    }
  }
}
