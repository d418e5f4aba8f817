#include "skein/hsphere.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "fiber.hpp"
#include "skein/errors.hpp"
#include "witness.hpp"

namespace skein {

namespace {

int wrap(long long i, int D) { return static_cast<int>(((i % D) + D) % D); }

void require_sphere(const RootContext& ctx) {
  if (ctx.surface != Surface::FourHoledSphere) throw Error(ErrorKind::BadInput, "context is not for the four-holed sphere");
}

// puncture on the same side of alpha_m as puncture i, m = 0, 1, inf
constexpr int kPartner[4][3] = {{1, 2, 3}, {0, 3, 2}, {3, 0, 1}, {2, 1, 0}};
constexpr int kKlein[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};

Quad swap01(const Quad& w) { return {w[1], w[0], w[2], w[3]}; }

}  // namespace

const char* hs_kind_name(HSKind k) { return k == HSKind::TypeZero ? "TypeZero" : "Exceptional"; }

const char* azumaya_component_name(AzumayaComponent c) {
  switch (c) {
    case AzumayaComponent::None: return "none";
    case AzumayaComponent::Ramified: return "V_ram";
    case AzumayaComponent::ReducibleOmega: return "V_red_prime";
    case AzumayaComponent::ReducibleB1: return "h_B1";
  }
  return "?";
}

const char* hs_family_name(HSFamily f) {
  switch (f) {
    case HSFamily::Central: return "central";
    case HSFamily::Cyclic4: return "cyclic4";
    case HSFamily::Parabolic: return "parabolic";
  }
  return "?";
}

double HSResiduals::max() const { return std::max({relG, rel1, relinf, rel0}); }

Pairings pairings(const Quad& v) {
  return {v[0] * v[1] + v[2] * v[3], v[0] * v[2] + v[1] * v[3], v[0] * v[3] + v[1] * v[2],
          v[0] * v[1] * v[2] * v[3] + v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]};
}

HSCentralData central_data(const RootContext& ctx, const Quad& w) {
  HSCentralData d;
  for (int i = 0; i < 4; ++i) d.W[i] = cheb(ctx.N, w[i]);
  d.C = pairings(d.W);
  return d;
}

cplx H_eval(cplx x, cplx y, cplx z, cplx a, cplx b, cplx c, cplx g) {
  return x * x + y * y + z * z - x * z * y + a * x + b * y + c * z + g;
}

cplx kappa(cplx a, cplx b, cplx c) { return a * a + b * b + c * c + a * b * c - 4.0; }

cplx central_relation_value04(const RootContext& ctx, const HSCharacter& ch) {
  const auto C = central_data(ctx, ch.w).C;
  return H_eval(ch.z0, ch.z1, ch.zinf, C.c0, C.c1, C.cinf, C.gamma) - 4.0;
}

double central_relation_residual04(const RootContext& ctx, const HSCharacter& ch) {
  return std::abs(central_relation_value04(ctx, ch));
}

double central_relation_relative04(const RootContext& ctx, const HSCharacter& ch) {
  const auto C = central_data(ctx, ch.w).C;
  double a = std::abs(ch.z0), b = std::abs(ch.z1), c = std::abs(ch.zinf);
  double scale = a * a + b * b + c * c + a * b * c + std::abs(C.c0) * a + std::abs(C.c1) * b + std::abs(C.cinf) * c +
                 std::abs(C.gamma) + 4.0;
  return central_relation_residual04(ctx, ch) / scale;
}

cplx hs_lambda(const RootContext& ctx, cplx sigma, long long i) {
  return ctx.qpow(4 * i) * sigma + ctx.qpow(-4 * i) / sigma;
}
cplx hs_lambda_hat(const RootContext& ctx, cplx sigma, long long i) {
  return ctx.qpow(4 * i) * sigma - ctx.qpow(-4 * i) / sigma;
}
cplx hs_lambda_prime(const RootContext& ctx, cplx sigma, long long i) {
  return ctx.qpow(4 * i + 2) * sigma + ctx.qpow(-4 * i - 2) / sigma;
}
cplx hs_lambda_prime_hat(const RootContext& ctx, cplx sigma, long long i) {
  return ctx.qpow(4 * i + 2) * sigma - ctx.qpow(-4 * i - 2) / sigma;
}

cplx r_coeff04(const RootContext& ctx, cplx sigma, const Quad& w, long long i) {
  cplx a = hs_lambda_hat(ctx, sigma, i), b = hs_lambda_hat(ctx, sigma, i + 1), c = hs_lambda_prime_hat(ctx, sigma, i);
  if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12 || std::abs(c) < 1e-12)
    throw Error(ErrorKind::SingularDenominator, "lambda-hat vanishes; sigma^N is +-1");
  cplx lp = hs_lambda_prime(ctx, sigma, i);
  return kappa(w[0], w[1], lp) * kappa(w[2], w[3], lp) / (a * b * c * c);
}

cplx big_R04(const RootContext& ctx, cplx z0, const Quad& w) {
  if (std::abs(z0 * z0 - 4.0) < 1e-14) throw Error(ErrorKind::SingularDenominator, "R needs z0 != +-2");
  const auto W = central_data(ctx, w).W;
  cplx d = z0 * z0 - 4.0;
  return kappa(W[0], W[1], z0) * kappa(W[2], W[3], z0) / (d * d);
}

HSShift f_shift04(const RootContext& ctx, cplx z0, const Quad& w) {
  if (std::abs(z0 * z0 - 4.0) < 1e-14) throw Error(ErrorKind::SingularDenominator, "f needs z0 != +-2");
  const auto C = central_data(ctx, w).C;
  cplx d = z0 * z0 - 4.0;
  return {(2.0 * C.c1 + C.cinf * z0) / d, (2.0 * C.cinf + C.c1 * z0) / d};
}

cplx sigma_from_z0_04(const RootContext& ctx, cplx z0) {
  cplx y = double(ctx.eps2()) * z0;
  cplx X = (y + std::sqrt(y * y - 4.0)) / 2.0;
  return std::exp(std::log(X) / double(ctx.N));
}

HSResiduals verify_relations04(const RootContext& ctx, const CMatrix& a0, const CMatrix& a1, const CMatrix& ai,
                               const Quad& w) {
  const cplx q2 = ctx.qpow(2), qm2 = ctx.qpow(-2), q4d = ctx.qpow(4) - ctx.qpow(-4), q2d = q2 - qm2;
  const auto c = pairings(w);
  const auto D = a0.rows();
  CMatrix I = CMatrix::Identity(D, D);
  CMatrix x = q2 * a0, y = q2 * a1, z = qm2 * ai;
  CMatrix H = x * x + y * y + z * z - x * z * y + c.c0 * x + c.c1 * y + c.cinf * z + c.gamma * I;
  HSResiduals r;
  r.relG = residual(H, (q2 + qm2) * (q2 + qm2) * I);
  r.rel1 = residual(q2 * a0 * ai - qm2 * ai * a0, q4d * a1 + q2d * c.c1 * I);
  r.relinf = residual(q2 * a1 * a0 - qm2 * a0 * a1, q4d * ai + q2d * c.cinf * I);
  r.rel0 = residual(q2 * ai * a1 - qm2 * a1 * ai, q4d * a0 + q2d * c.c0 * I);
  return r;
}

HSResiduals verify_relations04(const HSRepresentation& rep) {
  return verify_relations04(rep.ctx, rep.m0, rep.m1, rep.minf, rep.w);
}

HSShadow classical_shadow04_detail(const HSRepresentation& rep) {
  const RootContext& ctx = rep.ctx;
  const double e2 = ctx.eps2();
  HSShadow out;
  cplx vals[3];
  const CMatrix* mats[3] = {&rep.m0, &rep.m1, &rep.minf};
  for (int j = 0; j < 3; ++j) {
    ScalarPart sp = scalar_part(e2 * cheb_matrix(ctx.N, *mats[j]));
    vals[j] = sp.value;
    out.off_scalar = std::max(out.off_scalar, sp.off / std::max(1.0, std::abs(sp.value)));
  }
  out.ch = {vals[0], vals[1], vals[2], rep.w};
  return out;
}

HSCharacter classical_shadow04(const HSRepresentation& rep, double tol) {
  HSShadow s = classical_shadow04_detail(rep);
  if (s.off_scalar > tol) throw Error(ErrorKind::NotScalar, "central image is not scalar");
  return s.ch;
}

HSCharacter shadow_formula04(const RootContext& ctx, const HSTypeZeroParams& p) {
  const int N = ctx.N;
  const double e2 = ctx.eps2();
  cplx Ps = 1.0, Pt = 1.0;
  for (int i = 0; i < N; ++i) {
    Ps *= p.s[i];
    Pt *= p.t[i];
  }
  cplx sN = std::pow(p.sigma, N);
  HSCharacter ch;
  ch.z0 = e2 * (sN + 1.0 / sN);
  ch.w = p.w;
  auto f = f_shift04(ctx, ch.z0, p.w);
  ch.z1 = sN * Ps + Pt / sN + f.f1;
  ch.zinf = e2 * (Ps + Pt) + f.finf;
  return ch;
}

HSTypeZeroParams fiber_solve04(const RootContext& ctx, cplx sigma, const Quad& w, cplx x, cplx y, double tol) {
  HSTypeZeroParams p{sigma, w, {}, {}};
  std::vector<cplx> r(ctx.N);
  for (int i = 0; i < ctx.N; ++i) r[i] = r_coeff04(ctx, sigma, w, i);
  detail::fiber_from_r(r, x, y, tol, p.s, p.t);
  return p;
}

HSRepresentation build_type0_04(const RootContext& ctx, const HSTypeZeroParams& p) {
  require_sphere(ctx);
  const int N = ctx.N;
  if (static_cast<int>(p.s.size()) != N || static_cast<int>(p.t.size()) != N)
    throw Error(ErrorKind::BadInput, "s and t need length N");
  const auto c = pairings(p.w);
  const cplx Qs = ctx.qpow(2) + ctx.qpow(-2);
  const cplx sg = p.sigma;
  CMatrix a0 = CMatrix::Zero(N, N), a1 = CMatrix::Zero(N, N), ai = CMatrix::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    cplx lam = hs_lambda(ctx, sg, i);
    cplx den = hs_lambda_prime_hat(ctx, sg, i) * hs_lambda_prime_hat(ctx, sg, i - 1);
    if (std::abs(den) < 1e-12) throw Error(ErrorKind::SingularDenominator, "lambda'-hat vanishes");
    cplx d = (lam * c.c1 + Qs * c.cinf) / den;
    cplx dp = (lam * c.cinf + Qs * c.c1) / den;
    const int up = wrap(i + 1, N), dn = wrap(i - 1, N);
    a0(i, i) = lam;
    ai(up, i) += p.s[i];
    ai(i, i) += d;
    ai(dn, i) += p.t[dn];
    a1(up, i) += ctx.qpow(4LL * i + 2) * sg * p.s[i];
    a1(i, i) += dp;
    a1(dn, i) += ctx.qpow(-4LL * i + 2) / sg * p.t[dn];
  }
  HSRepresentation rep{ctx, a0, a1, ai, p.w, {}, {a0, a1, ai}, p.w};
  rep.provenance.kind = HSKind::TypeZero;
  rep.provenance.params = p;
  return rep;
}

HSCharacter move_character04(const RootContext& ctx, const HSCharacter& ch, const HSMove& mv) {
  const auto C = central_data(ctx, ch.w).C;
  switch (mv.kind) {
    case HSMoveKind::Rotate: return {ch.z1, ch.zinf, ch.z0, {ch.w[0], ch.w[2], ch.w[3], ch.w[1]}};
    case HSMoveKind::TwistMinus: return {ch.z0, ch.zinf, ch.z0 * ch.zinf - ch.z1 - C.c1, swap01(ch.w)};
    case HSMoveKind::TwistPlus: return {ch.z0, ch.z0 * ch.z1 - ch.zinf - C.cinf, ch.z1, swap01(ch.w)};
    case HSMoveKind::Klein: {
      const int* p = kKlein[mv.klein];
      return {ch.z0, ch.z1, ch.zinf, {ch.w[p[0]], ch.w[p[1]], ch.w[p[2]], ch.w[p[3]]}};
    }
    case HSMoveKind::Sign: {
      const auto& d = mv.delta;
      auto f = [&](int a, int b) { return std::pow(double(d[a] * d[b]), ctx.N); };
      return {ch.z0 * f(0, 1), ch.z1 * f(0, 2), ch.zinf * f(1, 2),
              {double(d[0]) * ch.w[0], double(d[1]) * ch.w[1], double(d[2]) * ch.w[2], double(d[3]) * ch.w[3]}};
    }
  }
  return ch;
}

HSRepresentation apply_move04(const HSRepresentation& rep, const HSMove& mv) {
  const RootContext& ctx = rep.ctx;
  const cplx q2 = ctx.qpow(2), qm2 = ctx.qpow(-2);
  const auto D = rep.m0.rows();
  CMatrix I = CMatrix::Identity(D, D);
  HSRepresentation out = rep;
  switch (mv.kind) {
    case HSMoveKind::Rotate:
      out.m0 = rep.m1;
      out.m1 = rep.minf;
      out.minf = rep.m0;
      out.w = {rep.w[0], rep.w[2], rep.w[3], rep.w[1]};
      break;
    case HSMoveKind::TwistMinus:
      out.m1 = rep.minf;
      out.minf = q2 * (rep.m0 * rep.minf - q2 * rep.m1 - pairings(rep.w).c1 * I);
      out.w = swap01(rep.w);
      break;
    case HSMoveKind::TwistPlus: {
      out.w = swap01(rep.w);
      cplx c1 = pairings(out.w).c1;
      out.minf = rep.m1;
      out.m1 = (q2 * rep.m0 * rep.m1 - qm2 * rep.m1 * rep.m0 - (q2 - qm2) * c1 * I) / (ctx.qpow(4) - ctx.qpow(-4));
      break;
    }
    case HSMoveKind::Klein: {
      if (mv.klein < 0 || mv.klein > 3) throw Error(ErrorKind::BadInput, "Klein index out of range");
      const int* p = kKlein[mv.klein];
      out.w = {rep.w[p[0]], rep.w[p[1]], rep.w[p[2]], rep.w[p[3]]};
      break;
    }
    case HSMoveKind::Sign: {
      const auto& d = mv.delta;
      if (d[0] * d[1] * d[2] * d[3] != 1) throw Error(ErrorKind::BadInput, "sign vector needs product 1");
      out.m0 = double(d[0] * d[1]) * rep.m0;
      out.m1 = double(d[0] * d[2]) * rep.m1;
      out.minf = double(d[1] * d[2]) * rep.minf;
      for (int i = 0; i < 4; ++i) out.w[i] = double(d[i]) * rep.w[i];
      break;
    }
  }
  out.provenance.moves.push_back(mv);
  return out;
}

HSCharacter h_map(const RootContext& ctx, const Quad& eta) {
  const int N = ctx.N;
  HSCharacter ch;
  for (int i = 0; i < 4; ++i) ch.w[i] = eta[i] + 1.0 / eta[i];
  cplx z[3];
  for (int m = 0; m < 3; ++m) {
    cplx p = std::pow(eta[0] * eta[m + 1], N);
    z[m] = -p - 1.0 / p;
  }
  ch.z0 = z[0];
  ch.z1 = z[1];
  ch.zinf = z[2];
  return ch;
}

namespace {

long long mod_inverse(long long a, long long b) {
  long long g = b, x = 0, x1 = 1, r = ((a % b) + b) % b;
  while (r != 0) {
    long long qt = g / r;
    std::tie(g, r) = std::make_pair(r, g - qt * r);
    std::tie(x, x1) = std::make_pair(x1, x - qt * x1);
  }
  return ((x % b) + b) % b;
}

int separation(long long a, long long b) {
  a = std::llabs(a);
  b = std::llabs(b);
  if (a % 2 == 1 && b % 2 == 0) return 2;
  if (a % 2 == 0 && b % 2 == 1) return 0;
  return 1;
}

}  // namespace

cplx hs_slope_A(const std::array<cplx, 3>& z, const Pairings& C, long long a, long long b, int max_den) {
  const cplx Cs[3] = {C.c0, C.c1, C.cinf};
  std::map<std::pair<long long, long long>, cplx> memo;
  std::function<cplx(long long, long long)> A = [&](long long x, long long y) -> cplx {
    if (y < 0 || (y == 0 && x < 0)) {
      x = -x;
      y = -y;
    }
    if (y > max_den) throw Error(ErrorKind::RecursionDepth, "slope denominator exceeds bound");
    auto key = std::make_pair(x, y);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    cplx v;
    if (x == 0 && y == 1) v = z[0];
    else if (x == 1 && y == 1) v = z[1];
    else if (x == 1 && y == 0) v = z[2];
    else if (y == 0) throw Error(ErrorKind::BadInput, "slope is not reduced");
    else if (y == 1 && x >= 2) v = A(x - 1, 1) * z[2] - A(x - 2, 1) - Cs[separation(x, 1)];
    else if (y == 1) v = A(x + 1, 1) * z[2] - A(x + 2, 1) - Cs[separation(x, 1)];
    else {
      long long d = mod_inverse(x, y);
      long long c = (x * d - 1) / y;
      v = A(c, d) * A(x - c, y - d) - A(2 * c - x, 2 * d - y) - Cs[separation(x, y)];
    }
    memo.emplace(key, v);
    return v;
  };
  if (std::gcd(std::llabs(a), std::llabs(b)) != 1) throw Error(ErrorKind::BadInput, "slope is not reduced");
  return A(a, b);
}

cplx hs_slope_A(const RootContext& ctx, const HSCharacter& ch, long long a, long long b, int max_den) {
  return hs_slope_A({ch.z0, ch.z1, ch.zinf}, central_data(ctx, ch.w).C, a, b, max_den);
}

namespace {

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

bool is_pm2(cplx z, double tol) { return near(z, 2.0, tol) || near(z, -2.0, tol); }

}  // namespace

bool is_exceptional04(const RootContext& ctx, const HSCharacter& ch, double tol) {
  if (!is_pm2(ch.z0, tol) || !is_pm2(ch.z1, tol) || !is_pm2(ch.zinf, tol)) return false;
  const auto cd = central_data(ctx, ch.w);
  for (auto W : cd.W)
    if (!is_pm2(W, 1e-6) && std::abs(W) > 1e-6) return false;
  std::array<cplx, 3> z{ch.z0, ch.z1, ch.zinf};
  for (long long b = 0; b <= 8; ++b)
    for (long long a = -3 * b - 1; a <= 3 * b + 1; ++a) {
      if (std::gcd(std::llabs(a), b) != 1) continue;
      if (!is_pm2(hs_slope_A(z, cd.C, a, b, 8), 1e-6)) return false;
    }
  return true;
}

HSSingular classify_singular_04(const RootContext& ctx, const HSCharacter& ch, double tol) {
  if (central_relation_relative04(ctx, ch) > tol * 10) throw Error(ErrorKind::NotACharacter, "central relation fails");
  HSSingular out;
  const auto cd = central_data(ctx, ch.w);
  const auto& W = cd.W;
  const cplx z[3] = {ch.z0, ch.z1, ch.zinf};
  const double N2 = double(ctx.N) * ctx.N;
  for (int i = 0; i < 4; ++i) {
    if (!is_pm2(W[i], tol)) continue;
    bool all = true;
    for (int m = 0; m < 3; ++m) {
      cplx target = -(W[i] / 2.0) * W[kPartner[i][m]];
      all = all && std::abs(z[m] - target) <= tol * std::max(1.0, std::abs(target)) * 10;
    }
    if (!all) continue;
    out.slice_singular = true;
    if (std::abs(cheb_derivative(ctx.N, ch.w[i])) <= 1e-6 * N2 && !out.ramified) {
      out.ramified = i;
      out.variety_singular = true;
    }
  }
  const cplx k[6] = {kappa(W[0], W[1], ch.z0), kappa(W[2], W[3], ch.z0), kappa(W[0], W[2], ch.z1),
                     kappa(W[1], W[3], ch.z1), kappa(W[0], W[3], ch.zinf), kappa(W[1], W[2], ch.zinf)};
  double scale = 4.0;
  for (cplx x : {W[0], W[1], W[2], W[3], ch.z0, ch.z1, ch.zinf}) scale = std::max(scale, std::norm(x));
  bool red = true;
  for (cplx v : k) red = red && std::abs(v) <= tol * scale * 10;
  if (red) {
    out.reducible = true;
    out.slice_singular = out.variety_singular = true;
  }
  return out;
}

AzumayaVerdict azumaya_membership(const RootContext& ctx, const HSCharacter& ch, double tol) {
  HSSingular sg = classify_singular_04(ctx, ch, 1e-7);
  AzumayaVerdict v;
  if (sg.ramified) {
    v.in_azumaya = false;
    v.component = AzumayaComponent::Ramified;
    return v;
  }
  if (!sg.reducible) return v;
  const int N = ctx.N;
  Quad e;
  for (int i = 0; i < 4; ++i) e[i] = (ch.w[i] + std::sqrt(ch.w[i] * ch.w[i] - 4.0)) / 2.0;
  const cplx z[3] = {ch.z0, ch.z1, ch.zinf};
  std::optional<ReducibleLocusPoint> b1, other;
  for (int mask = 0; mask < 16; ++mask) {
    Quad eta;
    for (int i = 0; i < 4; ++i) eta[i] = (mask >> i & 1) ? 1.0 / e[i] : e[i];
    bool ok = true;
    for (int m = 0; m < 3 && ok; ++m) {
      cplx p = std::pow(eta[0] * eta[m + 1], N);
      ok = near(-p - 1.0 / p, z[m], tol);
    }
    if (!ok) continue;
    cplx om = eta[0] * eta[1] * eta[2] * eta[3];
    if (std::abs(std::pow(om, N) - 1.0) > tol) continue;
    if (std::abs(om - 1.0) <= tol) {
      if (!b1) b1 = ReducibleLocusPoint{eta, om};
    } else if (!other) {
      other = ReducibleLocusPoint{eta, om};
    }
  }
  if (other) {
    v.in_azumaya = false;
    v.component = AzumayaComponent::ReducibleOmega;
    v.point = other;
  } else if (b1) {
    v.component = AzumayaComponent::ReducibleB1;
    v.point = b1;
  } else {
    throw Error(ErrorKind::EtaRecoveryFailed, "no eta with omega^N = 1 reproduces the character");
  }
  return v;
}

namespace {

HSRepresentation build_general04(const RootContext& ctx, const HSCharacter& c) {
  const int N = ctx.N;
  const double e2 = ctx.eps2();
  cplx sigma = sigma_from_z0_04(ctx, c.z0);
  cplx sN = std::pow(sigma, N), sNi = 1.0 / sN;
  auto f = f_shift04(ctx, c.z0, c.w);
  cplx u = c.z1 - f.f1, v = e2 * (c.zinf - f.finf);
  cplx det = sN - sNi;
  cplx x = (u - sNi * v) / det;
  cplx y = (sN * v - u) / det;
  return build_type0_04(ctx, fiber_solve04(ctx, sigma, c.w, x, y, 1e-9));
}

HSMove sign_move(int code) {
  // code in 0..7 selects (d1, d2, d3) with d4 = d1 d2 d3
  HSMove mv{HSMoveKind::Sign};
  for (int i = 0; i < 3; ++i) mv.delta[i] = (code >> i & 1) ? -1 : 1;
  mv.delta[3] = mv.delta[0] * mv.delta[1] * mv.delta[2];
  return mv;
}

HSRepresentation represent_exceptional04(const RootContext& ctx, const HSCharacter& ch) {
  const int N = ctx.N;
  const double e2 = ctx.eps2();
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 4; ++k)
      for (int sc = 0; sc < 8; ++sc) {
        HSCharacter g = ch;
        for (int j = 0; j < r; ++j) g = move_character04(ctx, g, {HSMoveKind::Rotate});
        g = move_character04(ctx, g, {HSMoveKind::Klein, k});
        HSMove sm = sign_move(sc);
        g = move_character04(ctx, g, sm);
        Quad e;
        for (int i = 0; i < 4; ++i) e[i] = (g.w[i] + std::sqrt(g.w[i] * g.w[i] - 4.0)) / 2.0;
        for (int mask = 0; mask < 16; ++mask) {
          Quad eta;
          for (int i = 0; i < 4; ++i) eta[i] = (mask >> i & 1) ? 1.0 / e[i] : e[i];
          HSCharacter pred = exceptional_shadow04(ctx, eta, g.z0);
          if (!near(pred.z1, g.z1, 1e-6) || !near(pred.zinf, g.zinf, 1e-6)) continue;
          int z0s = g.z0.real() > 0 ? 1 : -1;
          int sgn = (N % 2 == 1) ? ((g.z0.real() * e2 > 0) ? 1 : -1) : 1;
          HSRepresentation rep = build_exceptional_04(ctx, eta, z0s, sgn);
          rep.w = g.w;
          rep = apply_move04(rep, sm);
          rep = apply_move04(rep, {HSMoveKind::Klein, k});
          for (int j = 0; j < (3 - r) % 3; ++j) rep = apply_move04(rep, {HSMoveKind::Rotate});
          rep.w = ch.w;
          return rep;
        }
      }
  throw Error(ErrorKind::BadCase, "no exceptional family matches the character");
}

bool is_general04(cplx z0, double margin) { return std::abs(z0 - 2.0) > margin && std::abs(z0 + 2.0) > margin; }

}  // namespace

HSRepresentation represent04(const RootContext& ctx, const HSCharacter& ch, const HSRepresentOptions& opt) {
  require_sphere(ctx);
  double mag = std::abs(ch.z0) + std::abs(ch.z1) + std::abs(ch.zinf);
  for (cplx w : ch.w) mag += std::abs(w);
  if (!std::isfinite(mag)) throw Error(ErrorKind::NotACharacter, "non-finite coordinates");
  if (central_relation_relative04(ctx, ch) > opt.char_tol)
    throw Error(ErrorKind::NotACharacter, "central relation fails");
  if (is_exceptional04(ctx, ch, 1e-9)) return represent_exceptional04(ctx, ch);

  struct Node {
    HSCharacter c;
    std::vector<HSMoveKind> moves;  // forward moves taking ch to c
  };
  auto build = [&](const Node& node) {
    HSRepresentation rep = build_general04(ctx, node.c);
    for (auto it = node.moves.rbegin(); it != node.moves.rend(); ++it) {
      switch (*it) {
        case HSMoveKind::Rotate:
          rep = apply_move04(rep, {HSMoveKind::Rotate});
          rep = apply_move04(rep, {HSMoveKind::Rotate});
          break;
        case HSMoveKind::TwistMinus: rep = apply_move04(rep, {HSMoveKind::TwistPlus}); break;
        case HSMoveKind::TwistPlus: rep = apply_move04(rep, {HSMoveKind::TwistMinus}); break;
        default: break;
      }
    }
    rep.w = ch.w;
    return rep;
  };
  std::deque<Node> queue{{ch, {}}};
  std::optional<Node> fallback;
  while (!queue.empty()) {
    Node node = queue.front();
    queue.pop_front();
    const int depth = static_cast<int>(node.moves.size());
    if (fallback && depth > opt.comfort_depth) return build(*fallback);
    if (is_general04(node.c.z0, opt.general_margin)) {
      if (depth > opt.comfort_depth || is_general04(node.c.z0, opt.comfort_margin)) return build(node);
      if (!fallback) fallback = node;
    }
    if (depth >= opt.max_depth) continue;
    for (HSMoveKind k : {HSMoveKind::Rotate, HSMoveKind::TwistMinus, HSMoveKind::TwistPlus}) {
      Node next{move_character04(ctx, node.c, {k}), node.moves};
      next.moves.push_back(k);
      queue.push_back(std::move(next));
    }
  }
  if (fallback) return build(*fallback);
  throw Error(ErrorKind::Infeasible, "no general slope found within the search depth");
}

Reducibility is_reducible_04(const HSRepresentation& rep, double tol) {
  using namespace detail;
  const RootContext& ctx = rep.ctx;
  const int N = ctx.N;
  Reducibility out;
  std::vector<CMatrix> gens{rep.m0, rep.m1, rep.minf};
  out.oracle_dim = algebra_closure_dim(gens, tol);
  const bool oracle_red = out.oracle_dim < N * N;
  std::optional<bool> fast;
  const auto& prov = rep.provenance;

  if (prov.params) {
    const auto& p = *prov.params;
    cplx Ps = 1.0, Pt = 1.0;
    double rs = 1.0;
    std::vector<cplx> r(N);
    for (int i = 0; i < N; ++i) {
      Ps *= p.s[i];
      Pt *= p.t[i];
      r[i] = r_coeff04(ctx, p.sigma, p.w, i);
      rs = std::max(rs, std::abs(r[i]));
    }
    int zeros = 0;
    for (int i = 0; i < N; ++i) zeros += std::abs(r[i]) <= 1e-9 * rs;
    fast = Ps == cplx(0.0) && Pt == cplx(0.0) && zeros >= 2;
    if (*fast) out.witness = first_invariant(gens, N, arc_candidates(p.s, p.t), out.witness_defect);
  } else if (prov.exceptional) {
    HSShadow sh = classical_shadow04_detail(rep);
    fast = !azumaya_membership(ctx, sh.ch).in_azumaya;
  }

  const CMatrix& b0 = rep.base[0];
  if (b0.size() > 0 && is_diagonal(b0, 0.0) && diagonal_gap(b0) > 1e-6) {
    double scale = std::max({1.0, rep.base[1].cwiseAbs().maxCoeff(), rep.base[2].cwiseAbs().maxCoeff()});
    std::vector<WeightedDigraph> gs;
    for (const auto& m : rep.base) gs.push_back(associated_graph(m, 1e-12 * scale));
    out.graph_reducible = coordinate_invariant_subspace(gs).has_value();
  }

  if (oracle_red && !out.witness) {
    if (auto W = norton_invariant_subspace(gens, tol)) {
      Subspace sub;
      sub.basis = *W;
      out.witness_defect = invariance_defect(gens, sub.basis);
      out.witness = sub;
    }
  }

  out.fast_path = fast.value_or(oracle_red);
  out.reducible = oracle_red;
  return out;
}

}  // namespace skein
