#include "skein/sample.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>

#include "skein/errors.hpp"

namespace skein {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

struct Draw {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> u{0.0, 1.0};

  double uni() { return u(rng); }
  int bit() { return uni() < 0.5 ? 0 : 1; }
  int below(int k) { return std::min(k - 1, static_cast<int>(uni() * k)); }
  cplx disk(double r) {
    double rad = r * std::sqrt(uni()), th = kTwoPi * uni();
    return std::polar(rad, th);
  }
  // eta on the annulus 0.8 <= |eta| <= 1.25, log-uniform in modulus
  cplx eta() {
    double lr = std::log(0.8) + (std::log(1.25) - std::log(0.8)) * uni();
    return std::polar(std::exp(lr), kTwoPi * uni());
  }
  cplx peripheral() {
    cplx e = eta();
    return e + 1.0 / e;
  }
};

// c2 x^2 + c1 x + c0 from values at -1, 0, 1
cplx quadratic_root(const std::function<cplx(cplx)>& f, int branch) {
  cplx v0 = f(0.0), vp = f(1.0), vm = f(-1.0);
  cplx a = (vp + vm) / 2.0 - v0, b = (vp - vm) / 2.0, c = v0;
  if (std::abs(a) < 1e-14) {
    if (std::abs(b) < 1e-14) throw Error(ErrorKind::Infeasible, "relation does not involve the last coordinate");
    return -c / b;
  }
  cplx d = std::sqrt(b * b - 4.0 * a * c);
  return branch == 0 ? (-b + d) / (2.0 * a) : (-b - d) / (2.0 * a);
}

std::vector<cplx> lifts_excluding_pm2(int N, cplx W) {
  std::vector<cplx> out;
  for (cplx w : peripheral_lifts(N, W))
    if (std::abs(w - 2.0) > 1e-6 && std::abs(w + 2.0) > 1e-6) out.push_back(w);
  return out;
}

std::vector<PTExceptionalPoint> pt_exceptional_table(const RootContext& ctx) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<PTExceptionalPoint>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(ctx.a, ctx.m);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, pt_search_exceptional(ctx)).first;
  return it->second;
}

const std::vector<HSExceptionalPoint>& hs_exceptional_table() {
  static const std::vector<HSExceptionalPoint> table = hs_search_exceptional();
  return table;
}

PTCharacter pt_point(const RootContext& ctx, const std::string& s, int j, Draw& d) {
  const int N = ctx.N;
  const double e2 = ctx.eps2();
  PTCharacter ch{};
  if (s == "smooth") {
    ch.z0 = d.disk(3);
    ch.z1 = d.disk(3);
    ch.w = d.peripheral();
    ch.zinf = solve_zinf(ctx, ch, d.bit());
  } else if (s == "sing-quaternion") {
    auto L = peripheral_lifts(N, 2.0);
    ch = {0.0, 0.0, 0.0, L[j % L.size()]};
  } else if (s == "sing-central" && ctx.n_odd()) {
    std::vector<std::array<double, 3>> pats;
    for (int c = 0; c < 8; ++c) {
      std::array<double, 3> z{c & 1 ? -2.0 : 2.0, c & 2 ? -2.0 : 2.0, c & 4 ? -2.0 : 2.0};
      if (std::abs(z[0] * z[1] * z[2] - 8.0 * ctx.epsilon.real()) < 1e-9) pats.push_back(z);
    }
    auto L = peripheral_lifts(N, -2.0);
    auto z = pats[j % pats.size()];
    ch = {z[0], z[1], z[2], L[(j / pats.size()) % L.size()]};
  } else if (s == "sing-central") {
    auto L = peripheral_lifts(N, -2.0 * e2);
    ch = {2.0, 2.0, 2.0, L[j % L.size()]};
  } else if (s == "sing-orbifold") {
    ch.w = d.peripheral();
    cplx z[3] = {-2.0, -2.0, -2.0};
    z[j % 3] = -e2 * cheb(N, ch.w);
    ch.z0 = z[0];
    ch.z1 = z[1];
    ch.zinf = z[2];
  } else if (s == "exceptional") {
    auto pts = pt_exceptional_table(ctx);
    const auto& p = pts[d.below(static_cast<int>(pts.size()))];
    auto L = peripheral_lifts(N, p.W);
    ch = {p.z0, p.z1, p.zinf, L[d.below(static_cast<int>(L.size()))]};
  } else {
    throw Error(ErrorKind::BadInput, "unknown stratum " + s);
  }
  return ch;
}

HSCharacter hs_point(const RootContext& ctx, const std::string& s, int j, Draw& d) {
  static constexpr int partner[4][3] = {{1, 2, 3}, {0, 3, 2}, {3, 0, 1}, {2, 1, 0}};
  const int N = ctx.N;
  HSCharacter ch{};
  if (s == "smooth") {
    ch.z0 = d.disk(3);
    ch.z1 = d.disk(3);
    for (auto& w : ch.w) w = d.peripheral();
    ch.zinf = solve_zinf04(ctx, ch, d.bit());
  } else if (s == "ramified" || s == "slice-only") {
    const int i = j % 4;
    const double sg = d.bit() ? -1.0 : 1.0;
    for (auto& w : ch.w) w = d.peripheral();
    if (s == "ramified") {
      auto L = lifts_excluding_pm2(N, 2.0 * sg);
      ch.w[i] = L[d.below(static_cast<int>(L.size()))];
    } else {
      ch.w[i] = 2.0 * sg;
    }
    Quad W = central_data(ctx, ch.w).W;
    cplx z[3];
    for (int m = 0; m < 3; ++m) z[m] = -(W[i] / 2.0) * W[partner[i][m]];
    ch.z0 = z[0];
    ch.z1 = z[1];
    ch.zinf = z[2];
  } else if (s == "red-omega" || s == "h-B1") {
    const int k = s == "h-B1" ? 0 : 1 + j % (N - 1);
    Quad eta{d.eta(), d.eta(), d.eta(), 0.0};
    eta[3] = unit_root(k, N) / (eta[0] * eta[1] * eta[2]);
    ch = h_map(ctx, eta);
  } else if (s == "exceptional") {
    const auto& pts = hs_exceptional_table();
    const auto& p = pts[d.below(static_cast<int>(pts.size()))];
    ch.z0 = p.z[0];
    ch.z1 = p.z[1];
    ch.zinf = p.z[2];
    for (int i = 0; i < 4; ++i) {
      auto L = peripheral_lifts(N, p.W[i]);
      ch.w[i] = L[d.below(static_cast<int>(L.size()))];
    }
  } else {
    throw Error(ErrorKind::BadInput, "unknown stratum " + s);
  }
  return ch;
}

}  // namespace

cplx solve_zinf(const RootContext& ctx, PTCharacter ch, int branch) {
  return quadratic_root(
      [&](cplx x) {
        ch.zinf = x;
        return central_relation_value(ctx, ch);
      },
      branch);
}

cplx solve_zinf04(const RootContext& ctx, HSCharacter ch, int branch) {
  return quadratic_root(
      [&](cplx x) {
        ch.zinf = x;
        return central_relation_value04(ctx, ch);
      },
      branch);
}

std::vector<std::string> strata_for(const RootContext& ctx) {
  if (ctx.surface == Surface::FourHoledSphere)
    return {"smooth", "slice-only", "ramified", "red-omega", "h-B1", "exceptional"};
  if (ctx.n_odd()) return {"smooth", "sing-quaternion", "sing-central", "exceptional"};
  return {"smooth", "sing-orbifold", "sing-central", "exceptional"};
}

std::vector<SamplePoint> sample_strata(const RootContext& ctx, const std::map<std::string, int>& counts,
                                       std::uint64_t seed, int default_count) {
  const auto names = strata_for(ctx);
  for (const auto& [name, c] : counts) {
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw Error(ErrorKind::BadInput, "stratum " + name + " does not apply here");
    if (c < 0) throw Error(ErrorKind::BadInput, "sample counts must be nonnegative");
  }
  std::vector<SamplePoint> out;
  for (size_t s = 0; s < names.size(); ++s) {
    auto it = counts.find(names[s]);
    const int count = it == counts.end() ? default_count : it->second;
    for (int j = 0; j < count; ++j) {
      std::uint64_t key = splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(s) << 32) | static_cast<std::uint32_t>(j)));
      Draw d{std::mt19937_64(key)};
      SamplePoint p;
      p.stratum = names[s];
      p.index = j;
      if (ctx.surface == Surface::FourHoledSphere) p.hs = hs_point(ctx, names[s], j, d);
      else p.pt = pt_point(ctx, names[s], j, d);
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace skein
