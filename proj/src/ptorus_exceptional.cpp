#include <algorithm>
#include <cmath>

#include "mp.hpp"
#include "skein/errors.hpp"
#include "skein/ptorus.hpp"

namespace skein {

namespace {

CMatrix a1_from(const RootContext& ctx, const CMatrix& a0, const CMatrix& ai) {
  const cplx q = ctx.q();
  return (q * a0 * ai - ai * a0 / q) / (ctx.qpow(2) - ctx.qpow(-2));
}

PTRepresentation finish(const RootContext& ctx, CMatrix a0, CMatrix ai, cplx w, PTKind kind, int k) {
  PTRepresentation rep;
  rep.ctx = ctx;
  rep.m0 = std::move(a0);
  rep.minf = std::move(ai);
  rep.m1 = a1_from(ctx, rep.m0, rep.minf);
  rep.w = w;
  rep.provenance.kind = kind;
  rep.provenance.k = k;
  rep.base = {rep.m0, rep.m1, rep.minf};
  return rep;
}

}  // namespace

PTRepresentation build_exceptional_odd(const RootContext& ctx, int k) {
  if (ctx.surface != Surface::PuncturedTorus || !ctx.n_odd()) throw Error(ErrorKind::BadCase, "needs the punctured torus with n odd");
  const int N = ctx.N, Nb = (N - 1) / 2;
  auto Q = [&](long long e) { return ctx.qpow(e); };
  auto idx = [&](int i) { return i + Nb; };
  auto star = [&](int i) { return idx(std::clamp(i, -Nb, Nb)); };
  auto lam = [&](int i) { return Q(2 * i) + Q(-2 * i); };
  auto den = [&](int i) { return Q(2 * i) - Q(-2 * i); };
  auto s = [&](int i) { return (Q(2 * i - k + 1) - Q(-2 * i + k - 1)) / den(i); };
  auto sp = [&](int i) { return (Q(2 * i + 2) - Q(-2 * i - 2)) / den(i) * s(i); };
  auto beta = [&](int i) { return 2.0 * (Q(k - 1) - Q(-k + 1)) / std::pow(den(i), 3); };
  CMatrix a0 = CMatrix::Zero(N, N), ai = a0;
  for (int i = -Nb; i <= Nb; ++i) {
    a0(idx(i), idx(i)) = lam(i);
    if (i > 0) a0(idx(-i), idx(i)) += 1.0;
    if (i < 0) {
      ai(idx(i + 1), idx(i)) += s(i);
      ai(star(i - 1), idx(i)) += s(-i);
    } else if (i == 0) {
      ai(idx(-1), idx(0)) += Q(k - 1) + Q(-k + 1);
      ai(idx(1), idx(0)) += (Q(2) - Q(-2)) * (Q(-k + 1) - Q(k - 1));
    } else {
      ai(star(-i - 1), idx(i)) += beta(i);
      ai(idx(-i + 1), idx(i)) -= beta(i);
      ai(idx(i - 1), idx(i)) += sp(-i);
      ai(star(i + 1), idx(i)) += sp(i);
    }
  }
  return finish(ctx, a0, ai, -Q(2 * k) - Q(-2 * k), PTKind::ExceptionalOdd, k);
}

PTRepresentation build_exceptional_even(const RootContext& ctx, PTEvenCase c, int k, std::optional<cplx> w_in) {
  if (ctx.surface != Surface::PuncturedTorus || ctx.n_odd()) throw Error(ErrorKind::BadCase, "needs the punctured torus with n even");
  const int N = ctx.N, D = ctx.D;
  auto Q = [&](long long e) { return ctx.qpow(e); };
  switch (c) {
    case PTEvenCase::AllMinus2: {
      cplx w;
      if (w_in) w = *w_in;
      else {
        auto lifts = peripheral_lifts(N, 2.0 * double(ctx.eps2()));
        if (k < 0 || k >= static_cast<int>(lifts.size())) throw Error(ErrorKind::BadCase, "lift index out of range");
        w = lifts[k];
      }
      if (std::abs(cheb(N, w) - 2.0 * double(ctx.eps2())) > 1e-8) throw Error(ErrorKind::BadCase, "w is not a lift of 2 eps^2");
      PTTypeZeroParams p = fiber_solve(ctx, sigma_from_z0(ctx, -2.0), w, 0.0, 0.0);
      PTRepresentation rep = build_type0(ctx, p);
      rep.provenance.kind = PTKind::ExceptionalEvenM2;
      rep.provenance.k = k;
      return rep;
    }
    case PTEvenCase::MixM2P2: {
      PTTypeZeroParams p;
      p.sigma = Q(-1);
      p.w = -Q(4 * k + 2) - Q(-4 * k - 2);
      p.s.resize(D);
      p.t.resize(D);
      for (int i = 0; i < D; ++i)
        p.s[i] = (Q(2 * i - 2 * k - 1) - Q(-2 * i + 2 * k + 1)) / (Q(2 * i - 1) - Q(-2 * i + 1));
      for (int i = 0; i < D; ++i) p.t[i] = p.s[(D - i) % D];
      PTRepresentation rep = build_type0(ctx, p);
      rep.provenance.kind = PTKind::ExceptionalEvenMix;
      rep.provenance.k = k;
      return rep;
    }
    case PTEvenCase::All2: {
      auto idx = [&](int i) { return i + N; };
      auto lam = [&](int i) { return Q(2 * i) + Q(-2 * i); };
      auto den = [&](int i) { return Q(2 * i) - Q(-2 * i); };
      auto s = [&](int i) { return (Q(2 * i - 2 * k) - Q(-2 * i + 2 * k)) / den(i); };
      auto sp = [&](int i) { return (Q(2 * i + 2) - Q(-2 * i - 2)) / den(i) * s(i); };
      auto beta = [&](int i) { return 2.0 * (Q(2 * k) - Q(-2 * k)) / std::pow(den(i), 3); };
      CMatrix a0 = CMatrix::Zero(D, D), ai = a0;
      for (int i = -N; i < N; ++i) {
        a0(idx(i), idx(i)) = lam(i);
        if (i > 0) a0(idx(-i), idx(i)) += 1.0;
        if (i == -N) {
          ai(idx(-N + 1), idx(i)) += Q(2 * k) + Q(-2 * k);
          ai(idx(N - 1), idx(i)) += (Q(2) - Q(-2)) * (Q(2 * k) - Q(-2 * k));
        } else if (i < 0) {
          ai(idx(i + 1), idx(i)) += s(i);
          ai(idx(i - 1), idx(i)) += s(-i);
        } else if (i == 0) {
          ai(idx(-1), idx(0)) += Q(2 * k) + Q(-2 * k);
          ai(idx(1), idx(0)) -= (Q(2) - Q(-2)) * (Q(2 * k) - Q(-2 * k));
        } else {
          ai(idx(-i - 1), idx(i)) += beta(i);
          ai(idx(-i + 1), idx(i)) -= beta(i);
          ai(idx(i - 1), idx(i)) += sp(-i);
          if (i + 1 < N) ai(idx(i + 1), idx(i)) += sp(i);
        }
      }
      return finish(ctx, a0, ai, -Q(4 * k + 2) - Q(-4 * k - 2), PTKind::ExceptionalEven222, k);
    }
  }
  throw Error(ErrorKind::BadCase, "unknown case");
}

namespace {

// Type-0 family at sigma = 1 + h over labels lo..lo+D-1, conjugated into the basis
// u_b = v_b, u_p = (v_p - v_b)/(lambda_p - lambda_b) for the given pairs (b, p).
LimitMatrices limit_family(const RootContext& ctx, int D, int lo, long long ks, long long kt,
                           const std::vector<std::pair<int, int>>& pairs) {
  using namespace mp;
  std::vector<real> hs;
  std::vector<Mat> A0, AI;
  auto Q = [&](long long e) { return unit(static_cast<long long>(ctx.a) * e, ctx.m); };
  auto pos = [&](long long l) { return static_cast<int>(((l - lo) % D + D) % D); };
  for (int j = 3; j <= 6; ++j) {
    real h = pow(real(10), -j);
    hs.push_back(h);
    cplx50 sg = cplx50(1) + cplx50(h);
    auto lh = [&](long long i) { return Q(2 * i) * sg - Q(-2 * i) / sg; };
    Mat a0(D), ai(D);
    std::vector<cplx50> lam(D);
    for (int l = lo; l < lo + D; ++l) {
      int p = pos(l);
      lam[p] = Q(2 * l) * sg + Q(-2 * l) / sg;
      a0(p, p) = lam[p];
      cplx50 s = (Q(2 * l + ks) * sg - Q(-2 * l - ks) / sg) / lh(l);
      cplx50 t = (Q(2 * l + kt) * sg - Q(-2 * l - kt) / sg) / lh(l + 1);
      ai(pos(l + 1), p) += s;
      ai(p, pos(l + 1)) += t;
    }
    Mat P(D), Pi(D);
    for (int i = 0; i < D; ++i) P(i, i) = Pi(i, i) = cplx50(1);
    for (auto [b, p] : pairs) {
      cplx50 d = lam[pos(p)] - lam[pos(b)];
      P(pos(p), pos(p)) = cplx50(1) / d;
      P(pos(b), pos(p)) = cplx50(-1) / d;
      Pi(pos(p), pos(p)) = d;
      Pi(pos(b), pos(p)) = cplx50(1);
    }
    A0.push_back(Pi * (a0 * P));
    AI.push_back(Pi * (ai * P));
  }
  Mat L0 = neville(A0, hs), LI = neville(AI, hs);
  std::vector<Mat> A03(A0.begin(), A0.begin() + 3), AI3(AI.begin(), AI.begin() + 3);
  std::vector<real> hs3(hs.begin(), hs.begin() + 3);
  LimitMatrices out;
  out.spread = std::max(max_abs_diff(L0, neville(A03, hs3)), max_abs_diff(LI, neville(AI3, hs3)));
  out.m0 = to_double(L0);
  out.minf = to_double(LI);
  return out;
}

}  // namespace

LimitMatrices limit_exceptional_odd(const RootContext& ctx, int k) {
  if (!ctx.n_odd()) throw Error(ErrorKind::BadCase, "needs n odd");
  const int N = ctx.N, Nb = (N - 1) / 2;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= Nb; ++i) pairs.emplace_back(-i, i);
  return limit_family(ctx, N, -Nb, -k + 1, k + 1, pairs);
}

LimitMatrices limit_exceptional_even(const RootContext& ctx, int k) {
  if (ctx.n_odd()) throw Error(ErrorKind::BadCase, "needs n even");
  const int N = ctx.N;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i < N; ++i) pairs.emplace_back(-i, i);
  return limit_family(ctx, 2 * N, -N, -2 * k, 2 * k + 2, pairs);
}

}  // namespace skein
