#include "skein/scalars.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "skein/errors.hpp"

namespace skein {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::DisallowedRoot: return "DisallowedRoot";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::NotOnCurve: return "NotOnCurve";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::NotScalar: return "NotScalar";
    case ErrorKind::NotACharacter: return "NotACharacter";
    case ErrorKind::BadCase: return "BadCase";
    case ErrorKind::LimitNotConverged: return "LimitNotConverged";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::RecursionDepth: return "RecursionDepth";
    case ErrorKind::EtaRecoveryFailed: return "EtaRecoveryFailed";
    case ErrorKind::OracleDisagreement: return "OracleDisagreement";
  }
  return "Unknown";
}

const char* surface_name(Surface s) {
  return s == Surface::PuncturedTorus ? "ptorus" : "hsphere";
}

Surface parse_surface(const char* name) {
  std::string s(name);
  if (s == "ptorus" || s == "torus" || s == "S11") return Surface::PuncturedTorus;
  if (s == "hsphere" || s == "sphere" || s == "S04") return Surface::FourHoledSphere;
  throw Error(ErrorKind::BadInput, "unknown surface '" + s + "'");
}

cplx unit_root(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  if (r == 0) return {1.0, 0.0};
  if (4 * r == den) return {0.0, 1.0};
  if (2 * r == den) return {-1.0, 0.0};
  if (4 * r == 3 * den) return {0.0, -1.0};
  double th = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(th), std::sin(th)};
}

RootContext make_context(int a, int m, Surface surface) {
  if (m < 1) throw Error(ErrorKind::BadInput, "order m must be positive");
  if (std::gcd(a, m) != 1) throw Error(ErrorKind::BadInput, "gcd(a, m) must be 1");
  RootContext c;
  c.a = ((a % m) + m) % m;
  if (m == 1) c.a = 0;
  c.m = m;
  c.surface = surface;
  c.n = m / std::gcd(m, 2);
  c.N = m / std::gcd(m, 4);
  // m divides 4N, so epsilon is a fourth root of unity
  long long quarter = (4LL * c.N / m) * ((static_cast<long long>(c.a) * c.N) % 4);
  c.eps_quarter = static_cast<int>(quarter % 4);
  static const cplx kQuarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  c.epsilon = kQuarter[c.eps_quarter];
  if (surface == Surface::PuncturedTorus) {
    if (4 % m == 0) throw Error(ErrorKind::DisallowedRoot, "q^4 = 1 is excluded for the punctured torus");
    c.D = c.n;
  } else {
    if (8 % m == 0) throw Error(ErrorKind::DisallowedRoot, "q^8 = 1 is excluded for the four-holed sphere");
    c.D = c.N;
  }
  if (c.D < 3) throw Error(ErrorKind::DisallowedRoot, "PI degree below 3");
  return c;
}

cplx cheb(int k, cplx x) {
  if (k == 0) return 2.0;
  cplx a = 2.0, b = x;
  for (int j = 1; j < k; ++j) {
    cplx c = x * b - a;
    a = b;
    b = c;
  }
  return b;
}

cplx cheb_derivative(int k, cplx x) {
  if (k == 0) return 0.0;
  cplx ta = 2.0, tb = x;
  cplx da = 0.0, db = 1.0;
  for (int j = 1; j < k; ++j) {
    cplx tc = x * tb - ta;
    cplx dc = tb + x * db - da;
    ta = tb;
    tb = tc;
    da = db;
    db = dc;
  }
  return db;
}

std::pair<cplx, cplx> cheb_product_check(int D, cplx t) {
  if (t == cplx(0.0)) throw Error(ErrorKind::BadInput, "t must be nonzero");
  if (D < 1) throw Error(ErrorKind::BadInput, "D must be positive");
  cplx lhs = 1.0;
  for (int i = 1; i <= D; ++i) {
    cplx w = unit_root(i, D);
    lhs *= w * t - 1.0 / (w * t);
  }
  cplx tD = std::pow(t, D);
  cplx rhs = (D % 2 == 1) ? tD - 1.0 / tD : 2.0 - tD - 1.0 / tD;
  return {lhs, rhs};
}

cplx principal_sqrt(cplx z) { return std::sqrt(z); }

std::vector<cplx> peripheral_lifts(int N, cplx W) {
  cplx X = (W + std::sqrt(W * W - 4.0)) / 2.0;
  cplx t0 = std::exp(std::log(X) / double(N));
  std::vector<cplx> out;
  for (int j = 0; j < N; ++j) {
    cplx t = t0 * unit_root(j, N);
    cplx v = t + 1.0 / t;
    if (std::abs(v.imag()) < 1e-13) v.imag(0.0);
    if (std::abs(v.real()) < 1e-13) v.real(0.0);
    bool dup = false;
    for (cplx u : out) dup = dup || std::abs(u - v) < 1e-9;
    if (!dup) out.push_back(v);
  }
  return out;
}

}  // namespace skein
