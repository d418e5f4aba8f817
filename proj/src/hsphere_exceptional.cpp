#include <algorithm>
#include <cmath>

#include "mp.hpp"
#include "skein/errors.hpp"
#include "skein/hsphere.hpp"

namespace skein {

HSCharacter exceptional_shadow04(const RootContext& ctx, const Quad& eta, cplx z0) {
  const int N = ctx.N;
  HSCharacter ch;
  Quad W;
  for (int i = 0; i < 4; ++i) {
    ch.w[i] = eta[i] + 1.0 / eta[i];
    W[i] = std::pow(eta[i], N) + std::pow(eta[i], -N);
  }
  cplx p = std::pow(eta[0] * eta[3], N);
  ch.z0 = z0;
  ch.z1 = -z0 / p - std::pow(eta[3], -N) * W[1] - std::pow(eta[0], -N) * W[2];
  ch.zinf = -p - 1.0 / p;
  return ch;
}

namespace {

struct Branch {
  std::vector<std::pair<int, int>> labels;  // (2 * label, v-index)
  std::vector<std::pair<int, int>> pairs;   // (base, partner) v-indices
  int shift = 0;
  int lo = 0, hi = 0;  // integer label range when shift = 0
};

Branch branch_data(int N, int z0_sign) {
  Branch b;
  auto md = [N](int i) { return ((i % N) + N) % N; };
  if (N % 2 == 1) {
    const int Nb = (N - 1) / 2;
    for (int l = -Nb; l <= Nb; ++l) b.labels.emplace_back(2 * l, md(l));
    for (int i = 1; i <= Nb; ++i) b.pairs.emplace_back(md(-i), md(i));
    b.lo = -Nb;
    b.hi = Nb;
  } else if (z0_sign < 0) {
    for (int i = -N / 2 + 1; i <= N / 2; ++i) b.labels.emplace_back(2 * i - 1, md(i));
    for (int i = 1; i <= N / 2; ++i) b.pairs.emplace_back(md(-i + 1), md(i));
    b.shift = -2;
  } else {
    for (int l = -N / 2; l < N / 2; ++l) b.labels.emplace_back(2 * l, md(l));
    for (int i = 1; i < N / 2; ++i) b.pairs.emplace_back(md(-i), md(i));
    b.lo = -N / 2;
    b.hi = N / 2 - 1;
  }
  return b;
}

}  // namespace

HSRepresentation build_exceptional_04(const RootContext& ctx, const Quad& eta, int z0_sign, int sigma_sign) {
  using namespace mp;
  if (ctx.surface != Surface::FourHoledSphere) throw Error(ErrorKind::BadCase, "needs the four-holed sphere");
  if (std::abs(z0_sign) != 1 || std::abs(sigma_sign) != 1) throw Error(ErrorKind::BadInput, "signs must be +-1");
  const int N = ctx.N;
  if (N % 2 == 0 && sigma_sign != 1) throw Error(ErrorKind::BadCase, "N even needs sigma sign +1");
  if (N % 2 == 1 && z0_sign != sigma_sign * ctx.eps2()) throw Error(ErrorKind::BadCase, "z0 sign disagrees with sigma");
  for (cplx e : eta)
    if (!(std::abs(e) > 0) || !std::isfinite(std::abs(e))) throw Error(ErrorKind::BadInput, "eta must be finite and nonzero");

  const Branch br = branch_data(N, z0_sign);
  auto Q = [&](long long e) { return unit(static_cast<long long>(ctx.a) * e, ctx.m); };
  std::array<cplx50, 4> et;
  for (int i = 0; i < 4; ++i) et[i] = from(eta[i]);
  std::array<cplx50, 4> w;
  for (int i = 0; i < 4; ++i) w[i] = et[i] + cplx50(1) / et[i];
  const cplx50 c1 = w[0] * w[2] + w[1] * w[3], ci = w[0] * w[3] + w[1] * w[2];
  const cplx50 Qs = Q(2) + Q(-2);
  const cplx50 e12 = et[0] * et[1], e34 = et[2] * et[3], E = e12 * e34;
  auto mu = [&](const cplx50& x) {
    return (x + e12) * (x + e34) * (et[0] / x + et[1]) * (et[3] / x + et[2]) / E;
  };

  std::vector<real> hs;
  std::array<std::vector<Mat>, 3> samples;
  for (int j = 3; j <= 6; ++j) {
    real h = pow(real(10), -j);
    hs.push_back(h);
    cplx50 sig = cplx50(real(sigma_sign)) * Q(br.shift) * (cplx50(1) + cplx50(h));
    auto L = [&](long long i) { return Q(4 * i) * sig + Q(-4 * i) / sig; };
    auto Lh = [&](long long i) { return Q(4 * i) * sig - Q(-4 * i) / sig; };
    auto Lph = [&](long long i) { return Q(4 * i + 2) * sig - Q(-4 * i - 2) / sig; };
    Mat a0(N), a1(N), ai(N);
    for (int i = 0; i < N; ++i) {
      const int up = (i + 1) % N, dn = (i + N - 1) % N;
      cplx50 s = -mu(Q(4 * i + 2) * sig) / (Lph(i) * Lh(i));
      cplx50 tp = -mu(Q(-4 * (i - 1) - 2) / sig) / (Lph(i - 1) * Lh(i));
      cplx50 den = Lph(i) * Lph(i - 1);
      cplx50 d = (L(i) * c1 + Qs * ci) / den, dp = (L(i) * ci + Qs * c1) / den;
      a0(i, i) = L(i);
      ai(up, i) += s;
      ai(i, i) += d;
      ai(dn, i) += tp;
      a1(up, i) += Q(4 * i + 2) * sig * s;
      a1(i, i) += dp;
      a1(dn, i) += Q(-4 * i + 2) / sig * tp;
    }
    Mat P(N), Pi(N);
    for (int i = 0; i < N; ++i) P(i, i) = Pi(i, i) = cplx50(1);
    for (auto [b, p] : br.pairs) {
      cplx50 d = L(p) - L(b);
      P(p, p) = cplx50(1) / d;
      P(b, p) = cplx50(-1) / d;
      Pi(p, p) = d;
      Pi(b, p) = cplx50(1);
    }
    const Mat* src[3] = {&a0, &a1, &ai};
    for (int x = 0; x < 3; ++x) {
      Mat X = Pi * (*src[x] * P), Y(N);
      for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) Y(r, c) = X(br.labels[r].second, br.labels[c].second);
      samples[x].push_back(std::move(Y));
    }
  }

  std::vector<real> hs3(hs.begin(), hs.begin() + 3);
  std::array<CMatrix, 3> lim;
  double spread = 0;
  for (int x = 0; x < 3; ++x) {
    Mat L4 = neville(samples[x], hs);
    std::vector<Mat> s3(samples[x].begin(), samples[x].begin() + 3);
    spread = std::max(spread, max_abs_diff(L4, neville(s3, hs3)));
    lim[x] = to_double(L4);
  }
  if (!(spread <= 1e-5)) throw Error(ErrorKind::LimitNotConverged, "extrapolation spread " + std::to_string(spread));

  HSExceptionalData ex;
  ex.eta = eta;
  ex.z0_sign = z0_sign;
  ex.sigma_sign = sigma_sign;
  ex.spread = spread;
  for (auto [l2, v] : br.labels) ex.labels2.push_back(l2);
  ex.k = -1;
  if (z0_sign < 0) {
    ex.red_case = 0;
  } else {
    const cplx sg0 = double(sigma_sign) * ctx.qpow(br.shift);
    auto mu_d = [&](cplx x) {
      return (x + eta[0] * eta[1]) * (x + eta[2] * eta[3]) * (eta[0] / x + eta[1]) * (eta[3] / x + eta[2]) /
             (eta[0] * eta[1] * eta[2] * eta[3]);
    };
    double scale = 1.0;
    for (cplx e : eta) scale = std::max({scale, std::abs(e), 1.0 / std::abs(e)});
    scale = std::pow(scale, 4);
    for (int l = br.lo; l <= br.hi && ex.k < 0; ++l)
      if (std::abs(mu_d(ctx.qpow(4LL * l + 2) * sg0)) <= 1e-8 * scale) ex.k = l >= 0 ? l : -l - 1;
    if (ex.k == br.hi) ex.red_case = N % 2 == 1 ? 1 : 2;
    else if (ex.k == 0) ex.red_case = 3;
    else if (ex.k > 0) ex.red_case = 4;
  }

  Quad wd;
  for (int i = 0; i < 4; ++i) wd[i] = eta[i] + 1.0 / eta[i];
  HSRepresentation rep{ctx, lim[0], lim[1], lim[2], wd, {}, lim, wd};
  rep.provenance.kind = HSKind::Exceptional;
  rep.provenance.exceptional = ex;
  return rep;
}

}  // namespace skein
