#include "skein/ptorus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "fiber.hpp"
#include "witness.hpp"
#include "skein/errors.hpp"

namespace skein {

namespace {

int wrap(long long i, int D) { return static_cast<int>(((i % D) + D) % D); }

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

void require_torus(const RootContext& ctx) {
  if (ctx.surface != Surface::PuncturedTorus) throw Error(ErrorKind::BadInput, "context is not for the punctured torus");
}

}  // namespace

const char* pt_kind_name(PTKind k) {
  switch (k) {
    case PTKind::TypeZero: return "TypeZero";
    case PTKind::ExceptionalOdd: return "ExceptionalOdd";
    case PTKind::ExceptionalEvenM2: return "ExceptionalEvenM2";
    case PTKind::ExceptionalEvenMix: return "ExceptionalEvenMix";
    case PTKind::ExceptionalEven222: return "ExceptionalEven222";
  }
  return "?";
}

double PTResiduals::max() const { return std::max({rel1, relinf, rel0, boundary}); }

cplx central_relation_value(const RootContext& ctx, const PTCharacter& ch) {
  cplx W = cheb(ctx.N, ch.w);
  if (ctx.n_odd())
    return ch.z0 * ch.z0 + ch.z1 * ch.z1 + ch.zinf * ch.zinf - ctx.epsilon * ch.z0 * ch.zinf * ch.z1 + W - 2.0;
  double e2 = ctx.eps2();
  cplx s = ch.z0 + ch.z1 + ch.zinf + e2 * W + 4.0;
  return (ch.z0 + 2.0) * (ch.z1 + 2.0) * (ch.zinf + 2.0) - s * s;
}

double central_relation_residual(const RootContext& ctx, const PTCharacter& ch) {
  return std::abs(central_relation_value(ctx, ch));
}

double central_relation_relative(const RootContext& ctx, const PTCharacter& ch) {
  double W = std::abs(cheb(ctx.N, ch.w));
  double a = std::abs(ch.z0), b = std::abs(ch.z1), c = std::abs(ch.zinf);
  double scale = ctx.n_odd() ? a * a + b * b + c * c + a * b * c + W + 2.0
                             : (a + 2) * (b + 2) * (c + 2) + std::pow(a + b + c + W + 4, 2);
  return central_relation_residual(ctx, ch) / std::max(1.0, scale);
}

cplx pt_lambda(const RootContext& ctx, cplx sigma, long long i) {
  return ctx.qpow(2 * i) * sigma + ctx.qpow(-2 * i) / sigma;
}

cplx pt_lambda_hat(const RootContext& ctx, cplx sigma, long long i) {
  return ctx.qpow(2 * i) * sigma - ctx.qpow(-2 * i) / sigma;
}

cplx r_coeff(const RootContext& ctx, cplx sigma, cplx w, long long i) {
  cplx a = pt_lambda_hat(ctx, sigma, i), b = pt_lambda_hat(ctx, sigma, i + 1);
  if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12)
    throw Error(ErrorKind::SingularDenominator, "lambda-hat vanishes; sigma is not general");
  return (w + ctx.qpow(4 * i + 2) * sigma * sigma + ctx.qpow(-4 * i - 2) / (sigma * sigma)) / (a * b);
}

cplx big_R(const RootContext& ctx, cplx z0, cplx w) {
  cplx W = cheb(ctx.N, w);
  if (ctx.n_odd()) {
    if (std::abs(z0 * z0 - 4.0) < 1e-14) throw Error(ErrorKind::SingularDenominator, "R needs z0 != +-2 when n is odd");
    return (W + z0 * z0 - 2.0) / (z0 * z0 - 4.0);
  }
  if (std::abs(z0 - 2.0) < 1e-14) throw Error(ErrorKind::SingularDenominator, "R needs z0 != 2");
  cplx v = (W + double(ctx.eps2()) * z0) / (z0 - 2.0);
  return v * v;
}

cplx f_shift(const RootContext& ctx, cplx z0, cplx w) {
  if (ctx.n_odd()) throw Error(ErrorKind::BadInput, "f is only defined for n even");
  if (std::abs(z0 - 2.0) < 1e-14) throw Error(ErrorKind::SingularDenominator, "f needs z0 != 2");
  return (2.0 * double(ctx.eps2()) * cheb(ctx.N, w) + 4.0) / (z0 - 2.0);
}

cplx sigma_from_z0(const RootContext& ctx, cplx z0) {
  cplx X = (z0 + std::sqrt(z0 * z0 - 4.0)) / 2.0;
  return std::exp(std::log(X) / double(ctx.D));
}

PTTypeZeroParams fiber_solve(const RootContext& ctx, cplx sigma, cplx w, cplx x, cplx y, double tol) {
  PTTypeZeroParams p{sigma, w, {}, {}};
  std::vector<cplx> r(ctx.D);
  for (int i = 0; i < ctx.D; ++i) r[i] = r_coeff(ctx, sigma, w, i);
  detail::fiber_from_r(r, x, y, tol, p.s, p.t);
  return p;
}

PTRepresentation build_type0(const RootContext& ctx, const PTTypeZeroParams& params) {
  require_torus(ctx);
  const int D = ctx.D;
  if (static_cast<int>(params.s.size()) != D || static_cast<int>(params.t.size()) != D)
    throw Error(ErrorKind::BadInput, "s and t must have length D");
  const cplx sg = params.sigma;
  for (int i = 0; i < D; ++i)
    if (std::abs(pt_lambda_hat(ctx, sg, i)) < 1e-12)
      throw Error(ErrorKind::SingularDenominator, "sigma is not general");
  CMatrix a0 = CMatrix::Zero(D, D), a1 = a0, ai = a0;
  for (int i = 0; i < D; ++i) {
    int up = wrap(i + 1, D), dn = wrap(i - 1, D);
    a0(i, i) = pt_lambda(ctx, sg, i);
    a1(up, i) += ctx.qpow(2 * i + 1) * sg * params.s[i];
    a1(dn, i) += ctx.qpow(-2 * i + 1) / sg * params.t[dn];
    ai(up, i) += params.s[i];
    ai(dn, i) += params.t[dn];
  }
  PTRepresentation rep;
  rep.ctx = ctx;
  rep.m0 = a0;
  rep.m1 = a1;
  rep.minf = ai;
  rep.w = params.w;
  rep.provenance.kind = PTKind::TypeZero;
  rep.provenance.params = params;
  rep.base = {a0, a1, ai};
  return rep;
}

PTResiduals verify_relations(const RootContext& ctx, const CMatrix& a0, const CMatrix& a1, const CMatrix& ai, cplx w) {
  const cplx q = ctx.q(), qi = 1.0 / q, q2 = ctx.qpow(2), qm2 = ctx.qpow(-2);
  const cplx c = q2 - qm2;
  const auto D = a0.rows();
  CMatrix I = CMatrix::Identity(D, D);
  PTResiduals r;
  r.rel1 = residual(q * a0 * ai - qi * ai * a0, c * a1);
  r.relinf = residual(q * a1 * a0 - qi * a0 * a1, c * ai);
  r.rel0 = residual(q * ai * a1 - qi * a1 * ai, c * a0);
  CMatrix p = q * a0 * ai * a1 - q2 * a0 * a0 - q2 * a1 * a1 - qm2 * ai * ai + (q2 + qm2) * I;
  r.boundary = residual(p, w * I);
  return r;
}

PTResiduals verify_relations(const PTRepresentation& rep) {
  return verify_relations(rep.ctx, rep.m0, rep.m1, rep.minf, rep.w);
}

PTShadow classical_shadow_detail(const PTRepresentation& rep) {
  const RootContext& ctx = rep.ctx;
  const int D = ctx.D;
  PTShadow out;
  cplx vals[3];
  const CMatrix* mats[3] = {&rep.m0, &rep.m1, &rep.minf};
  for (int j = 0; j < 3; ++j) {
    ScalarPart sp = scalar_part(cheb_matrix(D, *mats[j]));
    vals[j] = sp.value;
    out.off_scalar = std::max(out.off_scalar, sp.off / std::max(1.0, std::abs(sp.value)));
  }
  const cplx q = ctx.q(), q2 = ctx.qpow(2), qm2 = ctx.qpow(-2);
  CMatrix I = CMatrix::Identity(D, D);
  CMatrix p = q * rep.m0 * rep.minf * rep.m1 - q2 * rep.m0 * rep.m0 - q2 * rep.m1 * rep.m1 - qm2 * rep.minf * rep.minf +
              (q2 + qm2) * I;
  ScalarPart pw = scalar_part(p);
  out.off_scalar = std::max(out.off_scalar, pw.off / std::max(1.0, std::abs(pw.value)));
  out.ch = {vals[0], vals[1], vals[2], pw.value};
  return out;
}

PTCharacter classical_shadow(const PTRepresentation& rep, double tol) {
  PTShadow s = classical_shadow_detail(rep);
  if (s.off_scalar > tol) throw Error(ErrorKind::NotScalar, "central image is not scalar");
  return s.ch;
}

PTCharacter shadow_formula(const RootContext& ctx, const PTTypeZeroParams& params) {
  const int D = ctx.D;
  cplx Ps = 1.0, Pt = 1.0;
  for (int i = 0; i < D; ++i) {
    Ps *= params.s[i];
    Pt *= params.t[i];
  }
  cplx sD = std::pow(params.sigma, D);
  PTCharacter ch;
  ch.z0 = sD + 1.0 / sD;
  ch.w = params.w;
  if (ctx.n_odd()) {
    ch.z1 = ctx.epsilon * (sD * Ps + Pt / sD);
    ch.zinf = Ps + Pt;
  } else {
    cplx f = f_shift(ctx, ch.z0, params.w);
    ch.z1 = sD * Ps + Pt / sD + f;
    ch.zinf = Ps + Pt + f;
  }
  return ch;
}

cplx pt_A_minus1(const RootContext& ctx, const PTCharacter& ch) {
  if (ctx.n_odd()) return ctx.epsilon * ch.z0 * ch.zinf - ch.z1;
  return ch.z0 * ch.zinf - ch.z1 - 2.0 * double(ctx.eps2()) * cheb(ctx.N, ch.w) - 4.0;
}

cplx pt_A_half(const RootContext& ctx, const PTCharacter& ch) {
  if (ctx.n_odd()) return ctx.epsilon * ch.z0 * ch.z1 - ch.zinf;
  return ch.z0 * ch.z1 - ch.zinf - 2.0 * double(ctx.eps2()) * cheb(ctx.N, ch.w) - 4.0;
}

PTCharacter slope_move(const RootContext& ctx, const PTCharacter& ch, PTSlopeMove move) {
  switch (move) {
    case PTSlopeMove::SwapZeroInf: return {ch.zinf, ch.z1, ch.z0, ch.w};
    case PTSlopeMove::TwistOnce: return {ch.z0, ch.zinf, pt_A_minus1(ctx, ch), ch.w};
    case PTSlopeMove::TwistInverse: return {ch.z0, pt_A_half(ctx, ch), ch.z1, ch.w};
  }
  return ch;
}

PTCharacter move_character(const RootContext& ctx, const PTCharacter& ch, const PTMove& mv) {
  switch (mv.kind) {
    case PTMoveKind::Rotate: return {ch.z1, ch.zinf, ch.z0, ch.w};
    case PTMoveKind::TwistMinus: return slope_move(ctx, ch, PTSlopeMove::TwistOnce);
    case PTMoveKind::TwistPlus: return slope_move(ctx, ch, PTSlopeMove::TwistInverse);
    case PTMoveKind::Sign:
      return {double(mv.e0) * ch.z0, double(mv.e0 * mv.einf) * ch.z1, double(mv.einf) * ch.zinf, ch.w};
  }
  return ch;
}

PTRepresentation apply_move(const PTRepresentation& rep, const PTMove& mv) {
  const RootContext& ctx = rep.ctx;
  const cplx q = ctx.q(), qi = 1.0 / q;
  PTRepresentation out = rep;
  switch (mv.kind) {
    case PTMoveKind::Rotate:
      out.m0 = rep.m1;
      out.m1 = rep.minf;
      out.minf = rep.m0;
      break;
    case PTMoveKind::TwistMinus:
      out.m1 = rep.minf;
      out.minf = q * (rep.m0 * rep.minf - q * rep.m1);
      break;
    case PTMoveKind::TwistPlus:
      out.minf = rep.m1;
      out.m1 = (q * rep.m0 * rep.m1 - qi * rep.m1 * rep.m0) / (ctx.qpow(2) - ctx.qpow(-2));
      break;
    case PTMoveKind::Sign:
      if (!ctx.n_odd()) throw Error(ErrorKind::BadInput, "sign action needs n odd");
      out.m0 = double(mv.e0) * rep.m0;
      out.m1 = double(mv.e0 * mv.einf) * rep.m1;
      out.minf = double(mv.einf) * rep.minf;
      break;
  }
  out.provenance.moves.push_back(mv);
  return out;
}

namespace {

bool is_general(const RootContext& ctx, cplx z0, double margin) {
  if (!ctx.n_odd() && std::abs(z0 + 2.0) < 1e-12) return true;
  return std::abs(z0 - 2.0) > margin && std::abs(z0 + 2.0) > margin;
}

PTRepresentation build_general(const RootContext& ctx, const PTCharacter& c) {
  const int D = ctx.D;
  cplx x, y, sigma;
  if (!ctx.n_odd() && std::abs(c.z0 + 2.0) < 1e-12) {
    sigma = sigma_from_z0(ctx, -2.0);
    cplx f = f_shift(ctx, -2.0, c.w);
    cplx R = big_R(ctx, -2.0, c.w);
    cplx u = c.zinf - f;
    cplx d = std::sqrt(u * u - 4.0 * R);
    cplx r1 = (u + d) / 2.0, r2 = (u - d) / 2.0;
    auto better = [](cplx a, cplx b) {
      bool ua = a.imag() >= 0, ub = b.imag() >= 0;
      if (std::abs(a.imag() - b.imag()) > 1e-12 && ua != ub) return ua;
      if (std::abs(a.imag() - b.imag()) > 1e-12) return a.imag() > b.imag();
      return a.real() >= b.real();
    };
    x = better(r1, r2) ? r1 : r2;
    y = u - x;
  } else {
    sigma = sigma_from_z0(ctx, c.z0);
    cplx sD = std::pow(sigma, D), sDi = 1.0 / sD;
    cplx u, v;
    if (ctx.n_odd()) {
      u = ctx.epsilon * c.z1;
      v = c.zinf;
    } else {
      cplx f = f_shift(ctx, c.z0, c.w);
      u = c.z1 - f;
      v = c.zinf - f;
    }
    cplx det = sD - sDi;
    x = (u - sDi * v) / det;
    y = (sD * v - u) / det;
  }
  PTTypeZeroParams p = fiber_solve(ctx, sigma, c.w, x, y, 1e-9);
  return build_type0(ctx, p);
}

int find_k(const RootContext& ctx, cplx w, int period, long long mult, long long shift) {
  int best = -1;
  double bd = 1e-6;
  for (int k = 0; k < period; ++k) {
    cplx wk = -ctx.qpow(mult * k + shift) - ctx.qpow(-mult * k - shift);
    double d = std::abs(wk - w);
    if (d < bd) {
      bd = d;
      best = k;
    }
  }
  return best;
}

PTRepresentation represent_exceptional(const RootContext& ctx, const PTCharacter& ch) {
  if (ctx.n_odd()) {
    int k = find_k(ctx, ch.w, ctx.N, 2, 0);
    if (k < 0) throw Error(ErrorKind::BadCase, "no exceptional builder matches w");
    PTRepresentation rep = build_exceptional_odd(ctx, k);
    double e = ctx.epsilon.real();
    double b1 = 2.0 * std::pow(e, k), bi = 2.0 * std::pow(e, k - 1);
    int e0 = ch.z0.real() > 0 ? 1 : -1;
    int ei = (ch.zinf.real() * bi) > 0 ? 1 : -1;
    if (std::abs(double(e0 * ei) * b1 - ch.z1) > 1e-6)
      throw Error(ErrorKind::BadCase, "sign pattern does not match an exceptional orbit");
    if (e0 != 1 || ei != 1) rep = apply_move(rep, {PTMoveKind::Sign, e0, ei});
    rep.w = ch.w;
    return rep;
  }
  int minus = (ch.z0.real() < 0) + (ch.z1.real() < 0) + (ch.zinf.real() < 0);
  if (minus == 3) return build_exceptional_even(ctx, PTEvenCase::AllMinus2, 0, ch.w);
  if (minus == 0) {
    int k = find_k(ctx, ch.w, ctx.N, 4, 2);
    if (k < 0) throw Error(ErrorKind::BadCase, "no exceptional builder matches w");
    return build_exceptional_even(ctx, PTEvenCase::All2, k);
  }
  if (minus != 2) throw Error(ErrorKind::BadCase, "not an exceptional sign pattern");
  int k = find_k(ctx, ch.w, ctx.N, 4, 2);
  if (k < 0) throw Error(ErrorKind::BadCase, "no exceptional builder matches w");
  PTRepresentation rep = build_exceptional_even(ctx, PTEvenCase::MixM2P2, k);
  // base shadow is (-2, -2, 2); rotate the +2 into place
  int rot = ch.zinf.real() > 0 ? 0 : (ch.z1.real() > 0 ? 1 : 2);
  for (int r = 0; r < rot; ++r) rep = apply_move(rep, {PTMoveKind::Rotate});
  return rep;
}

}  // namespace

PTRepresentation represent(const RootContext& ctx, const PTCharacter& ch, const RepresentOptions& opt) {
  require_torus(ctx);
  if (!std::isfinite(std::abs(ch.z0) + std::abs(ch.z1) + std::abs(ch.zinf) + std::abs(ch.w)))
    throw Error(ErrorKind::NotACharacter, "non-finite coordinates");
  if (central_relation_relative(ctx, ch) > opt.char_tol)
    throw Error(ErrorKind::NotACharacter, "central relation fails");
  if (is_exceptional(ctx, ch, 1e-9)) return represent_exceptional(ctx, ch);

  struct Node {
    PTCharacter c;
    std::vector<PTMoveKind> moves;  // target = moves[0](moves[1](...(c)))
  };
  auto build = [&](const Node& node) {
    PTRepresentation rep = build_general(ctx, node.c);
    for (auto it = node.moves.rbegin(); it != node.moves.rend(); ++it) rep = apply_move(rep, {*it});
    return rep;
  };
  std::deque<Node> queue{{ch, {}}};
  std::optional<Node> fallback;
  while (!queue.empty()) {
    Node node = queue.front();
    queue.pop_front();
    const int depth = static_cast<int>(node.moves.size());
    if (fallback && depth > opt.comfort_depth) return build(*fallback);
    if (is_general(ctx, node.c.z0, opt.general_margin)) {
      if (depth > opt.comfort_depth || is_general(ctx, node.c.z0, opt.comfort_margin)) return build(node);
      if (!fallback) fallback = node;
    }
    if (depth >= opt.max_depth) continue;
    const PTCharacter& c = node.c;
    Node a{{c.zinf, c.z0, c.z1, c.w}, node.moves};
    a.moves.push_back(PTMoveKind::Rotate);
    Node b{slope_move(ctx, c, PTSlopeMove::TwistInverse), node.moves};
    b.moves.push_back(PTMoveKind::TwistMinus);
    Node d{slope_move(ctx, c, PTSlopeMove::TwistOnce), node.moves};
    d.moves.push_back(PTMoveKind::TwistPlus);
    queue.push_back(std::move(a));
    queue.push_back(std::move(b));
    queue.push_back(std::move(d));
  }
  if (fallback) return build(*fallback);
  throw Error(ErrorKind::Infeasible, "no general slope found within the search depth");
}

bool is_exceptional(const RootContext& ctx, const PTCharacter& ch, double tol) {
  int sg[3];
  const cplx z[3] = {ch.z0, ch.z1, ch.zinf};
  for (int j = 0; j < 3; ++j) {
    if (std::abs(z[j] - 2.0) <= tol * 2) sg[j] = 1;
    else if (std::abs(z[j] + 2.0) <= tol * 2) sg[j] = -1;
    else return false;
  }
  if (ctx.n_odd()) return sg[0] * sg[1] * sg[2] == (ctx.epsilon.real() > 0 ? 1 : -1);
  int minus = (sg[0] < 0) + (sg[1] < 0) + (sg[2] < 0);
  if (minus >= 2) return true;
  if (minus == 0) return near(cheb(ctx.N, ch.w), -2.0 * double(ctx.eps2()), 1e-6);
  return false;
}

bool is_exceptional_by_orbit(const RootContext& ctx, const PTCharacter& ch, int depth, double tol) {
  std::vector<PTCharacter> layer{ch};
  auto pm2 = [&](cplx z) { return std::abs(z - 2.0) <= tol * 2 || std::abs(z + 2.0) <= tol * 2; };
  for (int d = 0; d <= depth; ++d) {
    std::vector<PTCharacter> next;
    for (const auto& c : layer) {
      if (!pm2(c.z0) || !pm2(c.z1) || !pm2(c.zinf)) return false;
      if (d < depth) {
        next.push_back(slope_move(ctx, c, PTSlopeMove::SwapZeroInf));
        next.push_back(slope_move(ctx, c, PTSlopeMove::TwistOnce));
        next.push_back(slope_move(ctx, c, PTSlopeMove::TwistInverse));
        next.push_back({c.z1, c.zinf, c.z0, c.w});
      }
    }
    layer.swap(next);
  }
  return true;
}

PTSingular classify_singular(const RootContext& ctx, const PTCharacter& ch, double tol) {
  if (central_relation_relative(ctx, ch) > tol * 10) throw Error(ErrorKind::NotACharacter, "central relation fails");
  PTSingular out;
  const cplx W = cheb(ctx.N, ch.w);
  const double dN = std::abs(cheb_derivative(ctx.N, ch.w));
  const bool ramified = dN <= 1e-6 * ctx.N * ctx.N;
  auto is = [&](cplx z, double v) { return std::abs(z - v) <= tol * std::max(1.0, std::abs(v)); };
  if (ctx.n_odd()) {
    if (is(ch.z0, 0) && is(ch.z1, 0) && is(ch.zinf, 0)) out.slice_singular = true;
    bool pm = (is(ch.z0, 2) || is(ch.z0, -2)) && (is(ch.z1, 2) || is(ch.z1, -2)) && (is(ch.zinf, 2) || is(ch.zinf, -2));
    if (pm && is(ch.z0 * ch.z1 * ch.zinf, 8.0 * ctx.epsilon.real())) out.slice_singular = true;
    out.variety_singular = out.slice_singular && ramified;
    return out;
  }
  const double e2 = ctx.eps2();
  const cplx z[3] = {ch.z0, ch.z1, ch.zinf};
  for (int j = 0; j < 3; ++j) {
    if (is(z[(j + 1) % 3], -2) && is(z[(j + 2) % 3], -2) && std::abs(z[j] + e2 * W) <= tol * std::max(1.0, std::abs(W))) {
      out.slice_singular = out.variety_singular = true;
      return out;
    }
  }
  if (is(ch.z0, 2) && is(ch.z1, 2) && is(ch.zinf, 2) && std::abs(W + 2.0 * e2) <= 1e-6) {
    out.slice_singular = true;
    out.variety_singular = ramified;
  }
  return out;
}

Reducibility is_reducible(const PTRepresentation& rep, double tol) {
  using namespace detail;
  const RootContext& ctx = rep.ctx;
  const int D = ctx.D;
  const int dim = static_cast<int>(rep.m0.rows());
  Reducibility out;
  std::vector<CMatrix> gens{rep.m0, rep.m1, rep.minf};
  out.oracle_dim = algebra_closure_dim(gens, tol);
  const bool oracle_red = out.oracle_dim < dim * dim;
  std::optional<bool> fast;
  const auto& prov = rep.provenance;

  if (prov.params) {
    const auto& p = *prov.params;
    cplx Ps = 1.0, Pt = 1.0;
    double rs = 1.0;
    std::vector<cplx> r(D);
    for (int i = 0; i < D; ++i) {
      Ps *= p.s[i];
      Pt *= p.t[i];
      r[i] = r_coeff(ctx, p.sigma, p.w, i);
      rs = std::max(rs, std::abs(r[i]));
    }
    int zeros = 0;
    for (int i = 0; i < D; ++i) zeros += std::abs(r[i]) <= 1e-9 * rs;
    bool crit = Ps == cplx(0.0) && Pt == cplx(0.0) && zeros >= 2;
    cplx z0 = std::pow(p.sigma, D) + std::pow(p.sigma, -D);
    if (crit) fast = true;
    else if (std::abs(z0 - 2.0) > 1e-9 && std::abs(z0 + 2.0) > 1e-9) fast = false;
    if (crit) {
      auto cands = arc_candidates(p.s, p.t);
      out.witness = first_invariant(gens, D, cands, out.witness_defect);
    }
    if (prov.kind == PTKind::ExceptionalEvenMix) {
      fast = true;
      Subspace s;
      s.basis = CMatrix::Zero(D, ctx.N);
      for (int i = 1; i <= ctx.N; ++i) {
        s.basis(wrap(i, D), i - 1) += 1.0;
        s.basis(wrap(-i + 1, D), i - 1) += 1.0;
      }
      out.witness_defect = invariance_defect(gens, s.basis);
      out.witness = s;
    }
  } else if (prov.kind == PTKind::ExceptionalOdd) {
    const int N = ctx.N, Nb = (N - 1) / 2;
    const bool irreducible = std::abs(rep.w + 2.0) < 1e-9;
    fast = !irreducible;
    if (!irreducible) {
      int kk = ((prov.k % N) + N) % N;
      if (kk > Nb) kk -= N;
      std::vector<std::vector<int>> cands;
      if (kk == 1) cands.push_back(label_range(-Nb, 0, Nb));
      else if (kk == -1) cands.push_back(label_range(-Nb, -1, Nb));
      else {
        int a = std::abs(kk);
        int l = (a % 2 == 0) ? Nb - a / 2 : (a - 1) / 2;
        cands.push_back(label_range(-Nb, l, Nb));
        cands.push_back(label_range(-Nb, -l - 1, Nb));
      }
      out.witness = first_invariant(gens, D, cands, out.witness_defect);
    }
  } else if (prov.kind == PTKind::ExceptionalEven222) {
    const int N = ctx.N;
    const bool irreducible = std::abs(rep.w - 2.0) < 1e-9;
    fast = !irreducible;
    if (!irreducible) {
      int k = ((prov.k % N) + N) % N;
      std::vector<std::vector<int>> cands;
      if (k == 0) cands.push_back(label_range(-N, 0, N));
      else if (k == N - 1) cands.push_back(label_range(-N + 1, -1, N));
      else if (2 * k < N - 1) {
        auto v = label_range(-N, k, N);
        auto u = label_range(N - k, N - 1, N);
        v.insert(v.end(), u.begin(), u.end());
        cands.push_back(v);
      } else {
        cands.push_back(label_range(-k, -N + k, N));
      }
      out.witness = first_invariant(gens, dim, cands, out.witness_defect);
    }
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

cplx pt_slope_A(const RootContext& ctx, const PTCharacter& ch, long long a, long long b, int max_den) {
  std::map<std::pair<long long, long long>, cplx> memo;
  const cplx mult = ctx.n_odd() ? ctx.epsilon : cplx(1.0);
  const cplx K = ctx.n_odd() ? cplx(0.0) : 2.0 * double(ctx.eps2()) * cheb(ctx.N, ch.w) + 4.0;
  std::function<cplx(long long, long long)> A = [&](long long x, long long y) -> cplx {
    if (y < 0 || (y == 0 && x < 0)) {
      x = -x;
      y = -y;
    }
    if (y > max_den) throw Error(ErrorKind::RecursionDepth, "slope denominator exceeds bound");
    auto key = std::make_pair(x, y);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    cplx v;
    if (x == 0 && y == 1) v = ch.z0;
    else if (x == 1 && y == 1) v = ch.z1;
    else if (x == 1 && y == 0) v = ch.zinf;
    else if (y == 1 && x >= 2) v = mult * A(x - 1, 1) * ch.zinf - A(x - 2, 1) - K;
    else if (y == 1) v = mult * A(x + 1, 1) * ch.zinf - A(x + 2, 1) - K;
    else {
      long long xm = ((x % y) + y) % y, d = 1;
      while ((xm * d) % y != 1) ++d;
      long long c = (x * d - 1) / y;
      v = mult * A(c, d) * A(x - c, y - d) - A(2 * c - x, 2 * d - y) - K;
    }
    memo[key] = v;
    return v;
  };
  if (std::gcd(std::abs(a), std::abs(b)) != 1) throw Error(ErrorKind::BadInput, "slope must be reduced");
  return A(a, b);
}

std::vector<PTExceptionalPoint> pt_search_exceptional(const RootContext& ctx, int den_bound) {
  require_torus(ctx);
  std::vector<PTExceptionalPoint> found;
  const double e = ctx.epsilon.real();
  const double e2 = ctx.eps2();
  for (int mask = 0; mask < 8; ++mask) {
    double z[3];
    for (int j = 0; j < 3; ++j) z[j] = (mask >> (2 - j) & 1) ? 2.0 : -2.0;
    std::vector<double> Ws;
    if (ctx.n_odd()) {
      Ws.push_back(2.0 - (z[0] * z[0] + z[1] * z[1] + z[2] * z[2]) + e * z[0] * z[1] * z[2]);
    } else {
      double P = (z[0] + 2) * (z[1] + 2) * (z[2] + 2);
      double S = z[0] + z[1] + z[2] + 4;
      double r = std::sqrt(P);
      Ws.push_back(e2 * (r - S));
      if (r > 0) Ws.push_back(e2 * (-r - S));
    }
    for (double W : Ws) {
      // any w with T_N(w) = W gives the same slope values
      cplx w = peripheral_lifts(ctx.N, W).front();
      PTCharacter ch{z[0], z[1], z[2], w};
      bool ok = true;
      for (int b = 0; b <= den_bound && ok; ++b)
        for (int a = -3 * b - 1; a <= 3 * b + 1 && ok; ++a) {
          if (std::gcd(std::abs(a), b) != 1) continue;
          cplx v = pt_slope_A(ctx, ch, a, b, den_bound + 1);
          ok = std::min(std::abs(v - 2.0), std::abs(v + 2.0)) < 1e-8;
        }
      if (ok) found.push_back({z[0], z[1], z[2], W, -1});
    }
  }
  // orbits under coordinate permutations
  int next = 0;
  for (size_t i = 0; i < found.size(); ++i) {
    if (found[i].orbit >= 0) continue;
    found[i].orbit = next;
    std::vector<size_t> stack{i};
    while (!stack.empty()) {
      size_t c = stack.back();
      stack.pop_back();
      const auto& p = found[c];
      std::vector<std::array<cplx, 3>> imgs;
      const cplx v[3] = {p.z0, p.z1, p.zinf};
      int perm[3] = {0, 1, 2};
      do imgs.push_back({v[perm[0]], v[perm[1]], v[perm[2]]});
      while (std::next_permutation(perm, perm + 3));
      for (const auto& g : imgs)
        for (size_t o = 0; o < found.size(); ++o)
          if (found[o].orbit < 0 && std::abs(found[o].z0 - g[0]) + std::abs(found[o].z1 - g[1]) + std::abs(found[o].zinf - g[2]) < 1e-9 &&
              std::abs(found[o].W - p.W) < 1e-9) {
            found[o].orbit = next;
            stack.push_back(o);
          }
    }
    ++next;
  }
  return found;
}

}  // namespace skein
