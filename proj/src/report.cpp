#include "skein/report.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "skein/errors.hpp"

namespace skein {

using ojson = nlohmann::ordered_json;

std::string format_complex(cplx z) {
  double re = z.real() + 0.0, im = z.imag() + 0.0;
  if (std::abs(re) < 1e-300) re = 0.0;
  if (std::abs(im) < 1e-300) im = 0.0;
  char buf[80];
  if (im == 0.0) std::snprintf(buf, sizeof buf, "%.12g", re);
  else std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re, im);
  return buf;
}

namespace {

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty()) throw Error(ErrorKind::BadInput, "malformed number '" + whole + "'");
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) throw Error(ErrorKind::BadInput, "malformed number '" + whole + "'");
  return v;
}

}  // namespace

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s += c;
  if (s.empty()) throw Error(ErrorKind::BadInput, "empty coordinate");
  if (s.back() != 'i') return parse_real(s, raw);
  std::string body = s.substr(0, s.size() - 1);
  size_t split = std::string::npos;
  for (size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  auto imag = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, raw);
  };
  if (split == std::string::npos) return {0.0, imag(body)};
  return {parse_real(body.substr(0, split), raw), imag(body.substr(split))};
}

std::vector<cplx> parse_coordinates(const std::string& s, int N) {
  std::vector<cplx> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.rfind("lift:", 0) == 0) {
      auto colon = tok.find(':', 5);
      if (colon == std::string::npos) throw Error(ErrorKind::BadInput, "lift needs the form lift:W:j");
      cplx W = parse_complex(tok.substr(5, colon - 5));
      std::string js = tok.substr(colon + 1);
      char* end = nullptr;
      long j = std::strtol(js.c_str(), &end, 10);
      if (js.empty() || *end != '\0') throw Error(ErrorKind::BadInput, "malformed lift index '" + js + "'");
      auto lifts = peripheral_lifts(N, W);
      if (j < 0 || j >= static_cast<long>(lifts.size())) throw Error(ErrorKind::BadInput, "lift index out of range");
      out.push_back(lifts[j]);
    } else {
      out.push_back(parse_complex(tok));
    }
  }
  if (!s.empty() && s.back() == ',') throw Error(ErrorKind::BadInput, "trailing comma");
  return out;
}

namespace {

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

void fill_reducibility(PointRecord& r, const Reducibility& R) {
  r.reducible = R.reducible;
  r.fast_reducible = R.fast_path;
  r.oracle_dim = R.oracle_dim;
  r.graph_reducible = R.graph_reducible;
  if (R.witness) r.witness_dim = static_cast<int>(R.witness->basis.cols());
  r.disagreement = R.fast_path != R.reducible || (R.graph_reducible && *R.graph_reducible != R.reducible);
}

void evaluate_pt(const RootContext& ctx, const PTCharacter& ch, PointRecord& r) {
  PTSingular S = classify_singular(ctx, ch, 1e-7);
  r.slice_singular = S.slice_singular;
  r.variety_singular = S.variety_singular;
  r.azumaya = !S.variety_singular;
  r.component = S.variety_singular ? "singular" : S.slice_singular ? "slice_singular" : "smooth";
  PTRepresentation rep = represent(ctx, ch);
  r.kind = pt_kind_name(rep.provenance.kind);
  r.moves = static_cast<int>(rep.provenance.moves.size());
  r.residual = verify_relations(rep).max();
  PTShadow sh = classical_shadow_detail(rep);
  r.off_scalar = sh.off_scalar;
  r.shadow = {sh.ch.z0, sh.ch.z1, sh.ch.zinf, sh.ch.w};
  r.shadow_error = std::max({rel_err(sh.ch.z0, ch.z0), rel_err(sh.ch.z1, ch.z1), rel_err(sh.ch.zinf, ch.zinf)});
  fill_reducibility(r, is_reducible(rep));
}

void evaluate_hs(const RootContext& ctx, const HSCharacter& ch, PointRecord& r) {
  HSSingular S = classify_singular_04(ctx, ch, 1e-7);
  r.slice_singular = S.slice_singular;
  r.variety_singular = S.variety_singular;
  AzumayaVerdict az = azumaya_membership(ctx, ch);
  r.azumaya = az.in_azumaya;
  r.component = az.component == AzumayaComponent::None
                    ? (S.slice_singular ? "slice_singular" : "smooth")
                    : azumaya_component_name(az.component);
  HSRepresentation rep = represent04(ctx, ch);
  r.kind = hs_kind_name(rep.provenance.kind);
  r.moves = static_cast<int>(rep.provenance.moves.size());
  if (rep.provenance.exceptional) r.red_case = rep.provenance.exceptional->red_case;
  r.residual = verify_relations04(rep).max();
  HSShadow sh = classical_shadow04_detail(rep);
  r.off_scalar = sh.off_scalar;
  r.shadow = {sh.ch.z0, sh.ch.z1, sh.ch.zinf};
  r.shadow.insert(r.shadow.end(), sh.ch.w.begin(), sh.ch.w.end());
  r.shadow_error = std::max({rel_err(sh.ch.z0, ch.z0), rel_err(sh.ch.z1, ch.z1), rel_err(sh.ch.zinf, ch.zinf)});
  fill_reducibility(r, is_reducible_04(rep));
}

}  // namespace

PointRecord evaluate_point(const RootContext& ctx, const SamplePoint& p) {
  PointRecord r;
  r.index = p.index;
  r.stratum = p.stratum;
  if (ctx.surface == Surface::FourHoledSphere) {
    r.character = {p.hs.z0, p.hs.z1, p.hs.zinf};
    r.character.insert(r.character.end(), p.hs.w.begin(), p.hs.w.end());
  } else {
    r.character = {p.pt.z0, p.pt.z1, p.pt.zinf, p.pt.w};
  }
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (ctx.surface == Surface::FourHoledSphere) evaluate_hs(ctx, p.hs, r);
    else evaluate_pt(ctx, p.pt, r);
    r.contradiction = r.reducible == r.azumaya;
  } catch (const Error& e) {
    r.error = e.what();
    r.error_kind = e.kind();
  }
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<PointRecord> evaluate_all(const RootContext& ctx, const std::vector<SamplePoint>& pts,
                                      int threads) {
  std::vector<PointRecord> out(pts.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next.fetch_add(1)) < pts.size();) out[i] = evaluate_point(ctx, pts[i]);
  };
  const int T = std::max(1, std::min<int>(threads, static_cast<int>(pts.size())));
  if (T <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < T; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return out;
}

namespace {

std::string cell_name(const PointRecord& r) {
  if (r.error) return "error";
  return std::string(r.reducible ? "reducible" : "irreducible") + "/" + (r.azumaya ? "azumaya" : "non_azumaya");
}

}  // namespace

Summary summarize(const std::vector<PointRecord>& recs) {
  Summary s;
  for (const auto& r : recs) {
    ++s.points;
    ++s.cells[r.stratum][cell_name(r)];
    if (r.error) {
      ++s.errors;
      continue;
    }
    s.contradictions += r.contradiction;
    s.disagreements += r.disagreement;
    s.max_residual = std::max(s.max_residual, r.residual);
    s.max_shadow_error = std::max(s.max_shadow_error, r.shadow_error);
  }
  return s;
}

namespace {

ojson coords_json(const std::vector<cplx>& c) {
  ojson o = ojson::object();
  if (c.size() < 4) return o;
  o["z0"] = format_complex(c[0]);
  o["z1"] = format_complex(c[1]);
  o["zinf"] = format_complex(c[2]);
  ojson w = ojson::array();
  for (size_t i = 3; i < c.size(); ++i) w.push_back(format_complex(c[i]));
  o["w"] = w;
  return o;
}

template <class T>
ojson opt(const std::optional<T>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

ojson config_json(const RunConfig& cfg, const RootContext& ctx, bool with_samples) {
  ojson c;
  c["command"] = cfg.command;
  c["root"] = std::to_string(cfg.a) + "/" + std::to_string(cfg.m);
  c["surface"] = surface_name(cfg.surface);
  c["N"] = ctx.N;
  c["D"] = ctx.D;
  c["tol"] = cfg.tol;
  if (with_samples) {
    c["seed"] = cfg.seed;
    ojson s;
    for (const auto& name : strata_for(ctx)) {
      auto it = cfg.samples.find(name);
      s[name] = it == cfg.samples.end() ? cfg.default_samples : it->second;
    }
    c["samples"] = s;
  }
  if (!cfg.character.empty()) c["character"] = cfg.character;
  c["shadow_convention"] = "x + y = eps^2 (z_inf - f_inf)";
  return c;
}

}  // namespace

std::string report_json(const RunConfig& cfg, const RootContext& ctx, const std::vector<PointRecord>& recs) {
  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  doc["config"] = config_json(cfg, ctx, cfg.command == "scan-azumaya");
  ojson arr = ojson::array();
  for (size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    ojson o;
    o["index"] = i;
    o["stratum"] = r.stratum;
    o["stratum_index"] = r.index;
    o["character"] = coords_json(r.character);
    o["error"] = opt(r.error);
    if (!r.error) {
      o["provenance"] = {{"kind", r.kind}, {"moves", r.moves}, {"red_case", opt(r.red_case)}};
      o["residual"] = r.residual;
      o["shadow"] = coords_json(r.shadow);
      o["shadow_error"] = r.shadow_error;
      o["off_scalar"] = r.off_scalar;
      o["reducible"] = r.reducible;
      o["fast_reducible"] = r.fast_reducible;
      o["oracle_dim"] = r.oracle_dim;
      o["graph_reducible"] = opt(r.graph_reducible);
      o["witness_dim"] = opt(r.witness_dim);
      o["slice_singular"] = r.slice_singular;
      o["variety_singular"] = r.variety_singular;
      o["azumaya"] = r.azumaya;
      o["component"] = r.component;
      o["contradiction"] = r.contradiction;
      o["disagreement"] = r.disagreement;
    }
    if (cfg.timing) o["timing_ms"] = r.millis;
    arr.push_back(o);
  }
  doc["records"] = arr;
  Summary s = summarize(recs);
  ojson sj;
  sj["points"] = s.points;
  sj["errors"] = s.errors;
  sj["contradictions"] = s.contradictions;
  sj["disagreements"] = s.disagreements;
  sj["max_residual"] = s.max_residual;
  sj["max_shadow_error"] = s.max_shadow_error;
  ojson cells = ojson::object();
  for (const auto& [stratum, m] : s.cells) {
    ojson cm;
    for (const auto& [k, v] : m) cm[k] = v;
    cells[stratum] = cm;
  }
  sj["cells"] = cells;
  doc["summary"] = sj;
  return doc.dump(2) + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

const char* tf(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string report_csv(const std::vector<PointRecord>& recs, bool timing) {
  std::ostringstream os;
  os << "index,stratum,stratum_index,z0,z1,zinf,w1,w2,w3,w4,kind,moves,red_case,residual,shadow_error,off_scalar,"
        "reducible,fast_reducible,oracle_dim,graph_reducible,witness_dim,slice_singular,variety_singular,azumaya,"
        "component,contradiction,disagreement,error";
  if (timing) os << ",timing_ms";
  os << "\n";
  for (size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    os << i << ',' << r.stratum << ',' << r.index;
    for (size_t k = 0; k < 7; ++k) os << ',' << (k < r.character.size() ? format_complex(r.character[k]) : "");
    if (r.error) {
      os << std::string(18, ',') << csv_field(*r.error);
    } else {
      os << ',' << r.kind << ',' << r.moves << ',' << (r.red_case ? std::to_string(*r.red_case) : "") << ','
         << num(r.residual) << ',' << num(r.shadow_error) << ',' << num(r.off_scalar) << ',' << tf(r.reducible) << ','
         << tf(r.fast_reducible) << ',' << r.oracle_dim << ',' << (r.graph_reducible ? tf(*r.graph_reducible) : "")
         << ',' << (r.witness_dim ? std::to_string(*r.witness_dim) : "") << ',' << tf(r.slice_singular) << ','
         << tf(r.variety_singular) << ',' << tf(r.azumaya) << ',' << r.component << ',' << tf(r.contradiction) << ','
         << tf(r.disagreement) << ',';
    }
    if (timing) os << ',' << num(r.millis);
    os << "\n";
  }
  return os.str();
}

std::vector<SearchRecord> search_records(const RootContext& ctx, int den_bound) {
  std::vector<SearchRecord> out;
  auto dev = [](cplx v) { return std::min(std::abs(v - 2.0), std::abs(v + 2.0)); };
  if (ctx.surface == Surface::FourHoledSphere) {
    auto pts = hs_search_exceptional(den_bound);
    for (size_t i = 0; i < pts.size(); ++i) {
      const auto& p = pts[i];
      SearchRecord r;
      r.index = static_cast<int>(i);
      r.z.assign(p.z.begin(), p.z.end());
      r.W.assign(p.W.begin(), p.W.end());
      r.family = hs_family_name(p.family);
      r.orbit = p.orbit;
      Pairings C = pairings({p.W[0], p.W[1], p.W[2], p.W[3]});
      for (long long b = 0; b <= den_bound; ++b)
        for (long long a = -3 * b - 1; a <= 3 * b + 1; ++a)
          if (std::gcd(std::llabs(a), b) == 1)
            r.max_deviation = std::max(r.max_deviation, dev(hs_slope_A({p.z[0], p.z[1], p.z[2]}, C, a, b, den_bound)));
      out.push_back(r);
    }
    return out;
  }
  auto pts = pt_search_exceptional(ctx, den_bound);
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    SearchRecord r;
    r.index = static_cast<int>(i);
    r.z = {p.z0.real(), p.z1.real(), p.zinf.real()};
    r.W = {p.W.real()};
    int minus = (r.z[0] < 0) + (r.z[1] < 0) + (r.z[2] < 0);
    r.family = ctx.n_odd() ? "central" : minus == 3 ? "quaternion" : minus == 2 ? "cyclic4" : "central";
    r.orbit = p.orbit;
    PTCharacter ch{p.z0, p.z1, p.zinf, peripheral_lifts(ctx.N, p.W).front()};
    for (long long b = 0; b <= den_bound; ++b)
      for (long long a = -3 * b - 1; a <= 3 * b + 1; ++a)
        if (std::gcd(std::llabs(a), b) == 1)
          r.max_deviation = std::max(r.max_deviation, dev(pt_slope_A(ctx, ch, a, b, den_bound + 1)));
    out.push_back(r);
  }
  return out;
}

std::string search_json(const RunConfig& cfg, const RootContext& ctx, const std::vector<SearchRecord>& recs) {
  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  doc["config"] = config_json(cfg, ctx, false);
  ojson arr = ojson::array();
  std::map<std::string, std::map<int, int>> fam;
  double worst = 0;
  for (const auto& r : recs) {
    ojson o;
    o["index"] = r.index;
    o["z"] = r.z;
    o["W"] = r.W;
    o["family"] = r.family;
    o["orbit"] = r.orbit;
    o["max_deviation"] = r.max_deviation;
    arr.push_back(o);
    ++fam[r.family][r.orbit];
    worst = std::max(worst, r.max_deviation);
  }
  doc["records"] = arr;
  ojson sj;
  sj["points"] = recs.size();
  int orbits = 0;
  for (const auto& r : recs) orbits = std::max(orbits, r.orbit + 1);
  sj["orbits"] = orbits;
  ojson fj = ojson::object();
  for (const auto& [f, m] : fam) fj[f] = {{"points", std::accumulate(m.begin(), m.end(), 0, [](int a, auto& kv) { return a + kv.second; })},
                                          {"orbits", m.size()}};
  sj["families"] = fj;
  sj["max_deviation"] = worst;
  doc["summary"] = sj;
  return doc.dump(2) + "\n";
}

std::string search_csv(const std::vector<SearchRecord>& recs) {
  std::ostringstream os;
  os << "index,z0,z1,zinf,W1,W2,W3,W4,family,orbit,max_deviation\n";
  for (const auto& r : recs) {
    os << r.index;
    for (double z : r.z) os << ',' << num(z);
    for (size_t k = 0; k < 4; ++k) os << ',' << (k < r.W.size() ? num(r.W[k]) : "");
    os << ',' << r.family << ',' << r.orbit << ',' << num(r.max_deviation) << "\n";
  }
  return os.str();
}

}  // namespace skein
