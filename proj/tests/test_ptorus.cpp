#include <gtest/gtest.h>

#include "skein/errors.hpp"
#include "skein/ptorus.hpp"
#include "skein/sample.hpp"
#include "util.hpp"

using namespace skein;
using skein::test::rel;
using skein::test::Rng;

namespace {

RootContext torus(int m) { return make_context(1, m, Surface::PuncturedTorus); }

PTCharacter random_character(const RootContext& ctx, Rng& r) {
  PTCharacter ch{r.disk(3), r.disk(3), 0.0, r.annulus(0.8, 1.25)};
  ch.w += 1.0 / ch.w;
  ch.zinf = solve_zinf(ctx, ch, r.uni() < 0.5 ? 0 : 1);
  return ch;
}

double shadow_gap(const PTCharacter& a, const PTCharacter& b) {
  return std::max({rel(a.z0, b.z0), rel(a.z1, b.z1), rel(a.zinf, b.zinf), rel(a.w, b.w)});
}

cplx lift(const RootContext& ctx, cplx W, bool want_pm2) {
  for (cplx w : peripheral_lifts(ctx.N, W)) {
    bool pm2 = std::abs(w - 2.0) < 1e-9 || std::abs(w + 2.0) < 1e-9;
    if (pm2 == want_pm2) return w;
  }
  ADD_FAILURE() << "no lift";
  return 0.0;
}

PTTypeZeroParams random_params(const RootContext& ctx, Rng& r) {
  cplx sigma = r.annulus(0.7, 1.4), w = r.disk(2.5);
  cplx R = 1.0;
  for (int i = 0; i < ctx.D; ++i) R *= r_coeff(ctx, sigma, w, i);
  cplx x = r.annulus(0.5, 2.0);
  return fiber_solve(ctx, sigma, w, x, R / x);
}

}  // namespace

TEST(CentralRelation, Examples) {
  auto c6 = torus(6);
  EXPECT_LT(central_relation_residual(c6, {0.0, 0.0, 0.0, lift(c6, 2.0, false)}), 1e-10);
  auto c5 = torus(5);
  ASSERT_NEAR(std::abs(c5.epsilon - 1.0), 0, 1e-14);
  EXPECT_LT(central_relation_residual(c5, {2.0, 2.0, 2.0, lift(c5, -2.0, false)}), 1e-10);
  auto c8 = torus(8);
  Rng r(31);
  for (int k = 0; k < 5; ++k) {
    cplx zi = r.disk(3), w = r.disk(2);
    cplx s = -4.0 + zi + double(c8.eps2()) * cheb(c8.N, w) + 4.0;
    EXPECT_NEAR(central_relation_residual(c8, {-2.0, -2.0, zi, w}), std::abs(s * s), 1e-9);
  }
}

TEST(RCoeff, Examples) {
  Rng r(32);
  for (int m : {5, 6, 8, 12}) {
    auto ctx = torus(m);
    for (int i = 0; i < ctx.D; ++i) {
      cplx sigma = r.annulus(0.7, 1.4);
      cplx w = -ctx.qpow(4 * i + 2) * sigma * sigma - ctx.qpow(-4 * i - 2) / (sigma * sigma);
      EXPECT_LT(std::abs(r_coeff(ctx, sigma, w, i)), 1e-12);
    }
  }
  // independent evaluation for sigma = 2, w = 0, q = exp(pi i / 3)
  auto ctx = torus(6);
  auto qp = [](int k) { return std::exp(cplx(0, std::numbers::pi * k / 3.0)); };
  for (int i = 0; i < 3; ++i) {
    cplx lh0 = qp(2 * i) * 2.0 - qp(-2 * i) / 2.0, lh1 = qp(2 * i + 2) * 2.0 - qp(-2 * i - 2) / 2.0;
    cplx want = (qp(4 * i + 2) * 4.0 + qp(-4 * i - 2) / 4.0) / (lh0 * lh1);
    EXPECT_LT(std::abs(r_coeff(ctx, 2.0, 0.0, i) - want), 1e-12);
  }
  EXPECT_THROW(r_coeff(ctx, 1.0, 0.3, 0), Error);
}

TEST(RCoeff, ProductIsBigR) {
  Rng r(33);
  for (int m : {3, 5, 6, 7, 8, 10, 12, 16}) {
    auto ctx = torus(m);
    for (int trial = 0; trial < 50; ++trial) {
      cplx sigma = r.annulus(0.7, 1.4), w = r.disk(2.5);
      cplx z0 = std::pow(sigma, ctx.D) + std::pow(sigma, -ctx.D);
      cplx P = 1.0;
      for (int i = 0; i < ctx.D; ++i) P *= r_coeff(ctx, sigma, w, i);
      EXPECT_LT(rel(P, big_R(ctx, z0, w)), 1e-9) << "m=" << m;
    }
  }
}

TEST(RCoeff, LambdaHatSquares) {
  Rng r(34);
  for (int m : {3, 5, 6, 7, 8, 10, 12, 14, 16}) {
    auto ctx = torus(m);
    for (int trial = 0; trial < 50; ++trial) {
      cplx sigma = r.annulus(0.7, 1.4);
      cplx z0 = std::pow(sigma, ctx.D) + std::pow(sigma, -ctx.D);
      cplx P = 1.0;
      for (int i = 1; i <= ctx.D; ++i) P *= std::pow(pt_lambda_hat(ctx, sigma, i), 2);
      cplx want = ctx.n_odd() ? z0 * z0 - 4.0 : (z0 - 2.0) * (z0 - 2.0);
      EXPECT_LT(rel(P, want), 1e-10);
    }
  }
}

TEST(BigR, Examples) {
  auto c8 = torus(8);
  Rng r(35);
  for (int k = 0; k < 5; ++k) {
    cplx z0 = r.disk(3);
    cplx w = peripheral_lifts(c8.N, -double(c8.eps2()) * z0).front();
    EXPECT_LT(std::abs(big_R(c8, z0, w)), 1e-9);
    EXPECT_LT(std::abs(f_shift(c8, z0, w) + 2.0), 1e-9);
  }
  auto c6 = torus(6);
  EXPECT_LT(std::abs(big_R(c6, 0.0, lift(c6, 2.0, false))), 1e-10);
  cplx w = peripheral_lifts(c8.N, -2.0 * c8.eps2()).front();
  EXPECT_LT(std::abs(big_R(c8, -2.0, w) - 1.0), 1e-10);
  EXPECT_LT(std::abs(f_shift(c8, -2.0, w)), 1e-10);
  EXPECT_THROW(big_R(c6, 2.0, 0.0), Error);
  EXPECT_THROW(f_shift(c6, 0.5, 0.0), Error);
}

TEST(FiberSolve, GenericProducts) {
  Rng r(36);
  for (int m : {5, 6, 7, 8, 12}) {
    auto ctx = torus(m);
    for (int trial = 0; trial < 20; ++trial) {
      cplx sigma = r.annulus(0.7, 1.4), w = r.disk(2.5);
      std::vector<cplx> rr(ctx.D);
      cplx R = 1.0;
      for (int i = 0; i < ctx.D; ++i) R *= rr[i] = r_coeff(ctx, sigma, w, i);
      auto p = fiber_solve(ctx, sigma, w, R, 1.0);
      cplx S = 1.0, T = 1.0;
      for (int i = 0; i < ctx.D; ++i) {
        EXPECT_LT(rel(p.s[i] * p.t[i], rr[i]), 1e-12);
        S *= p.s[i];
        T *= p.t[i];
      }
      EXPECT_LT(rel(S, R), 1e-10);
      EXPECT_LT(rel(T, 1.0), 1e-10);
    }
  }
}

TEST(FiberSolve, ZeroBranch) {
  auto ctx = torus(7);
  cplx sigma(1.1, 0.2);
  // n even: the numerators of r_i and r_{i+N} coincide
  auto c8 = torus(8);
  const int D = c8.D;
  cplx s8(1.05, 0.3);
  cplx w8 = -c8.qpow(2) * s8 * s8 - c8.qpow(-2) / (s8 * s8);
  std::vector<cplx> rr(D);
  int zeros = 0;
  for (int i = 0; i < D; ++i) zeros += std::abs(rr[i] = r_coeff(c8, s8, w8, i)) < 1e-12;
  ASSERT_EQ(zeros, 2);
  auto p = fiber_solve(c8, s8, w8, 0.0, 0.0);
  int sz = 0, tz = 0;
  for (int i = 0; i < D; ++i) {
    sz += std::abs(p.s[i]) < 1e-14;
    tz += std::abs(p.t[i]) < 1e-14;
    EXPECT_LT(std::abs(p.s[i] * p.t[i] - rr[i]), 1e-12);
  }
  EXPECT_GE(sz, 1);
  EXPECT_GE(tz, 1);

  cplx w = -ctx.qpow(4 * 2 + 2) * sigma * sigma - ctx.qpow(-4 * 2 - 2) / (sigma * sigma);
  auto q = fiber_solve(ctx, sigma, w, 0.0, 5.0);
  cplx T = 1.0;
  for (int i = 0; i < ctx.D; ++i) {
    T *= q.t[i];
    EXPECT_LT(std::abs(q.s[i] * q.t[i] - r_coeff(ctx, sigma, w, i)), 1e-12);
  }
  EXPECT_EQ(q.s[2], cplx(0.0));
  EXPECT_LT(std::abs(T - 5.0), 1e-10);
  EXPECT_THROW(fiber_solve(ctx, sigma, 0.4, 0.0, 1.0), Error);
  EXPECT_THROW(fiber_solve(ctx, sigma, 0.4, 1.0, 1.0), Error);
}

TEST(TypeZero, RelationsAndShadowFormula) {
  Rng r(37);
  for (int m : {3, 5, 6, 7, 8, 10, 12, 16}) {
    auto ctx = torus(m);
    for (int trial = 0; trial < 20; ++trial) {
      auto p = random_params(ctx, r);
      auto rep = build_type0(ctx, p);
      EXPECT_LT(verify_relations(rep).max(), 1e-8);
      auto sh = classical_shadow_detail(rep);
      cplx z0 = std::pow(p.sigma, ctx.D) + std::pow(p.sigma, -ctx.D);
      EXPECT_LT(rel(sh.ch.z0, z0), 1e-9);
      EXPECT_LT(sh.off_scalar, 1e-8);
      EXPECT_LT(shadow_gap(sh.ch, shadow_formula(ctx, p)), 1e-8) << "m=" << m;
      EXPECT_LT(central_relation_relative(ctx, sh.ch), 1e-8);
    }
  }
}

TEST(TypeZero, RelabelingSigma) {
  Rng r(38);
  for (int m : {5, 6, 8}) {
    auto ctx = torus(m);
    const int D = ctx.D;
    auto p = random_params(ctx, r);
    PTTypeZeroParams q = p;
    q.sigma = ctx.qpow(2) * p.sigma;
    for (int i = 0; i < D; ++i) {
      q.s[i] = p.s[(i + 1) % D];
      q.t[i] = p.t[(i + 1) % D];
    }
    auto a = classical_shadow(build_type0(ctx, p)), b = classical_shadow(build_type0(ctx, q));
    EXPECT_LT(shadow_gap(a, b), 1e-9);
  }
}

TEST(TypeZero, EvenVanishingProductsGiveF) {
  auto ctx = torus(8);
  cplx sigma(1.05, 0.1);
  cplx w = -ctx.qpow(2) * sigma * sigma - ctx.qpow(-2) / (sigma * sigma);
  auto p = fiber_solve(ctx, sigma, w, 0.0, 0.0);
  auto sh = classical_shadow(build_type0(ctx, p));
  cplx f = f_shift(ctx, sh.z0, w);
  EXPECT_LT(rel(sh.z1, f), 1e-9);
  EXPECT_LT(rel(sh.zinf, f), 1e-9);
}

TEST(Represent, RoundTripOddAndEven) {
  Rng r(39);
  int odd = 0, even = 0;
  for (int m : {3, 5, 6, 7, 8, 12, 16, 20}) {
    auto ctx = torus(m);
    for (int trial = 0; trial < 130; ++trial) {
      PTCharacter ch = random_character(ctx, r);
      auto rep = represent(ctx, ch);
      EXPECT_LT(verify_relations(rep).max(), 1e-8);
      auto sh = classical_shadow_detail(rep);
      EXPECT_LT(shadow_gap(sh.ch, ch), 1e-7) << "m=" << m;
      EXPECT_LT(sh.off_scalar, 1e-8);
      (ctx.n_odd() ? odd : even)++;
    }
  }
  EXPECT_GE(odd, 500);
  EXPECT_GE(even, 500);
}

TEST(Represent, RejectsNonCharacters) {
  auto ctx = torus(6);
  try {
    represent(ctx, {1.0, 1.0, 1.0, 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotACharacter);
  }
}

TEST(Represent, ZeroFamilyIsReducible) {
  for (int m : {6, 10}) {
    auto ctx = torus(m);
    for (cplx w : peripheral_lifts(ctx.N, 2.0)) {
      PTCharacter ch{0.0, 0.0, 0.0, w};
      auto rep = represent(ctx, ch);
      EXPECT_EQ(rep.provenance.kind, PTKind::TypeZero);
      auto red = is_reducible(rep);
      bool w2 = std::abs(w - 2.0) < 1e-9;
      EXPECT_EQ(red.reducible, !w2);
      if (red.reducible) {
        ASSERT_TRUE(red.witness.has_value());
        EXPECT_LT(red.witness_defect, 1e-7);
        EXPECT_FALSE(red.witness->coords.empty());
      }
    }
  }
}

TEST(SlopeMove, Examples) {
  auto ctx = torus(6);
  cplx w = lift(ctx, 2.0, false);
  PTCharacter z{0.0, 0.0, 0.0, w};
  auto t = slope_move(ctx, z, PTSlopeMove::TwistOnce);
  EXPECT_LT(shadow_gap(t, z), 1e-14);
  Rng r(40);
  for (int m : {5, 6, 8, 12}) {
    auto c = torus(m);
    for (int trial = 0; trial < 100; ++trial) {
      PTCharacter ch = random_character(c, r);
      auto s = slope_move(c, slope_move(c, ch, PTSlopeMove::SwapZeroInf), PTSlopeMove::SwapZeroInf);
      EXPECT_EQ(s.z0, ch.z0);
      EXPECT_EQ(s.zinf, ch.zinf);
      for (auto mv : {PTSlopeMove::SwapZeroInf, PTSlopeMove::TwistOnce, PTSlopeMove::TwistInverse}) {
        auto moved = slope_move(c, ch, mv);
        EXPECT_LT(central_relation_relative(c, moved), 1e-8);
      }
      auto back = slope_move(c, slope_move(c, ch, PTSlopeMove::TwistOnce), PTSlopeMove::TwistInverse);
      EXPECT_LT(shadow_gap(back, ch), 1e-9);
    }
  }
}

TEST(SlopeMove, PreservesExceptional) {
  for (int m : {6, 10, 8, 12}) {
    auto ctx = torus(m);
    for (const auto& p : pt_search_exceptional(ctx)) {
      PTCharacter ch{p.z0, p.z1, p.zinf, peripheral_lifts(ctx.N, p.W).front()};
      ASSERT_TRUE(is_exceptional(ctx, ch));
      for (auto mv : {PTSlopeMove::SwapZeroInf, PTSlopeMove::TwistOnce, PTSlopeMove::TwistInverse})
        EXPECT_TRUE(is_exceptional(ctx, slope_move(ctx, ch, mv)));
    }
  }
}

TEST(Exceptional, OddBuilder) {
  for (int m : {6, 10, 14}) {
    auto ctx = torus(m);
    const int N = ctx.N;
    const double e = ctx.epsilon.real();
    for (int k = 0; k < 2 * N; ++k) {
      auto rep = build_exceptional_odd(ctx, k);
      EXPECT_EQ(rep.m0.rows(), N);
      EXPECT_LT(verify_relations(rep).max(), 1e-8);
      cplx w = -ctx.qpow(2 * k) - ctx.qpow(-2 * k);
      PTCharacter want{2.0, 2.0 * std::pow(e, k), 2.0 * std::pow(e, k - 1), w};
      EXPECT_LT(shadow_gap(classical_shadow(rep), want), 1e-8);
      auto red = is_reducible(rep);
      EXPECT_EQ(red.reducible, std::abs(w + 2.0) > 1e-9) << "k=" << k;
      EXPECT_EQ(red.fast_path, red.reducible);
      if (k == 1) {
        ASSERT_TRUE(red.witness.has_value());
        EXPECT_LT(red.witness_defect, 1e-8);
      }
    }
    EXPECT_EQ(is_reducible(build_exceptional_odd(ctx, 0)).oracle_dim, N * N);
  }
}

TEST(Exceptional, EvenBuilders) {
  for (int m : {8, 12, 16}) {
    auto ctx = torus(m);
    const int N = ctx.N;
    auto m2 = build_exceptional_even(ctx, PTEvenCase::AllMinus2, 0);
    EXPECT_LT(verify_relations(m2).max(), 1e-8);
    EXPECT_TRUE(is_reducible(m2).reducible);
    for (int k = 0; k < N; ++k) {
      auto mix = build_exceptional_even(ctx, PTEvenCase::MixM2P2, k);
      EXPECT_LT(verify_relations(mix).max(), 1e-8);
      auto sh = classical_shadow(mix);
      EXPECT_LT(std::abs(sh.z0 + 2.0) + std::abs(sh.z1 + 2.0) + std::abs(sh.zinf - 2.0), 1e-8);
      auto red = is_reducible(mix);
      EXPECT_TRUE(red.reducible);
      ASSERT_TRUE(red.witness.has_value());
    }
    for (int k = 0; k < 2 * N; ++k) {
      auto rep = build_exceptional_even(ctx, PTEvenCase::All2, k);
      EXPECT_EQ(rep.m0.rows(), 2 * N);
      EXPECT_LT(verify_relations(rep).max(), 1e-8);
      cplx w = -ctx.qpow(4 * k + 2) - ctx.qpow(-4 * k - 2);
      EXPECT_LT(shadow_gap(classical_shadow(rep), {2.0, 2.0, 2.0, w}), 1e-8);
      EXPECT_EQ(is_reducible(rep).reducible, std::abs(w - 2.0) > 1e-9);
    }
  }
}

TEST(Exceptional, Dispatch) {
  auto c6 = torus(6);
  for (int k = 0; k < 6; ++k) {
    cplx w = -c6.qpow(2 * k) - c6.qpow(-2 * k);
    PTCharacter ch{2.0, 2.0 * std::pow(-1.0, k), 2.0 * std::pow(-1.0, k - 1), w};
    auto rep = represent(c6, ch);
    EXPECT_EQ(rep.provenance.kind, PTKind::ExceptionalOdd);
    EXPECT_LT(shadow_gap(classical_shadow(rep), ch), 1e-8);
  }
  auto c12 = torus(12);
  cplx w = -c12.qpow(2) - c12.qpow(-2);
  auto rep = represent(c12, {2.0, 2.0, 2.0, w});
  EXPECT_EQ(rep.provenance.kind, PTKind::ExceptionalEven222);
  EXPECT_EQ(rep.m0.rows(), 2 * c12.N);
}

TEST(Singular, Examples) {
  auto c6 = torus(6);
  for (cplx w : peripheral_lifts(c6.N, 2.0)) {
    auto s = classify_singular(c6, {0.0, 0.0, 0.0, w});
    EXPECT_TRUE(s.slice_singular);
    EXPECT_EQ(s.variety_singular, std::abs(cheb_derivative(c6.N, w)) < 1e-9);
  }
  auto c8 = torus(8);
  Rng r(41);
  for (int k = 0; k < 10; ++k) {
    cplx w = r.disk(2);
    auto s = classify_singular(c8, {-2.0, -2.0, -double(c8.eps2()) * cheb(c8.N, w), w});
    EXPECT_TRUE(s.variety_singular);
  }
  for (int k = 0; k < 10; ++k) {
    auto ch = random_character(c6, r);
    auto s = classify_singular(c6, ch);
    EXPECT_FALSE(s.slice_singular);
    EXPECT_FALSE(s.variety_singular);
  }
  EXPECT_THROW(classify_singular(c6, {1.0, 1.0, 1.0, 0.5}), Error);
}

TEST(IsExceptional, Examples) {
  auto c5 = torus(5);
  EXPECT_TRUE(is_exceptional(c5, {2.0, 2.0, 2.0, lift(c5, -2.0, false)}));
  EXPECT_FALSE(is_exceptional(c5, {2.0, 2.0, -2.0, peripheral_lifts(c5.N, -18.0).front()}));
  auto c8 = torus(8);
  cplx w = peripheral_lifts(c8.N, -18.0 * c8.eps2()).front();
  PTCharacter ch{2.0, 2.0, 2.0, w};
  ASSERT_LT(central_relation_relative(c8, ch), 1e-9);
  EXPECT_FALSE(is_exceptional(c8, ch));
  EXPECT_NEAR(std::abs(pt_A_minus1(c8, ch) - 34.0), 0, 1e-8);
  EXPECT_FALSE(is_exceptional_by_orbit(c8, ch));
  EXPECT_TRUE(is_exceptional_by_orbit(c5, {2.0, 2.0, 2.0, lift(c5, -2.0, false)}));
}

TEST(SlopeA, Basics) {
  auto ctx = torus(7);
  Rng r(42);
  auto ch = random_character(ctx, r);
  EXPECT_LT(rel(pt_slope_A(ctx, ch, 0, 1), ch.z0), 1e-12);
  EXPECT_LT(rel(pt_slope_A(ctx, ch, 1, 1), ch.z1), 1e-12);
  EXPECT_LT(rel(pt_slope_A(ctx, ch, 1, 0), ch.zinf), 1e-12);
  EXPECT_LT(rel(pt_slope_A(ctx, ch, -1, 1), pt_A_minus1(ctx, ch)), 1e-9);
}

TEST(Search, OddAndEvenFamilies) {
  for (int m : {6, 10}) {
    auto ctx = torus(m);
    auto pts = pt_search_exceptional(ctx);
    EXPECT_EQ(pts.size(), 4u);
    int orbits = 0;
    for (const auto& p : pts) {
      orbits = std::max(orbits, p.orbit + 1);
      EXPECT_LT(std::abs(p.z0 * p.z1 * p.zinf - 8.0 * ctx.epsilon), 1e-9);
      EXPECT_LT(std::abs(p.W + 2.0), 1e-9);
    }
    EXPECT_EQ(orbits, 2);
  }
  auto c16 = torus(16);
  auto even = pt_search_exceptional(c16);
  EXPECT_EQ(even.size(), 5u);
  int orbits = 0;
  for (const auto& p : even) orbits = std::max(orbits, p.orbit + 1);
  EXPECT_EQ(orbits, 3);
}
