#include "skein/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "skein/errors.hpp"
#include "skein/report.hpp"

namespace skein {

namespace {

constexpr int kSmoothDefault = 100;
constexpr int kStratumDefault = 20;

struct Options {
  std::string root = "1/6";
  std::string surface = "ptorus";
  std::string samples;
  RunConfig cfg;
};

void add_common(CLI::App* sub, Options& o, bool sampling) {
  sub->add_option("--root", o.root, "root of unity q = exp(2 pi i a/m) as a/m")->envname("SKEINREP_ROOT");
  sub->add_option("--surface", o.surface, "ptorus or hsphere")->envname("SKEINREP_SURFACE");
  sub->add_option("--tol", o.cfg.tol, "residual tolerance")->envname("SKEINREP_TOL")->check(CLI::PositiveNumber);
  sub->add_option("--out", o.cfg.out, "output file, stdout when empty")->envname("SKEINREP_OUT");
  sub->add_option("--format", o.cfg.format, "json or csv")
      ->envname("SKEINREP_FORMAT")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threads", o.cfg.threads, "worker threads")->envname("SKEINREP_THREADS")->check(CLI::Range(1, 1024));
  sub->add_option("--seed", o.cfg.seed, "sampling seed")->envname("SKEINREP_SEED");
  sub->add_option("--samples", o.samples, "N for every stratum, or stratum=N,...")->envname("SKEINREP_SAMPLES");
  sub->add_flag("--timing", o.cfg.timing, "add wall-clock timings to records")->envname("SKEINREP_TIMING");
  if (!sampling) sub->add_option("--char", o.cfg.character, "z0,z1,zinf,w... as re+imi literals")->required();
}

void parse_root(const std::string& s, int& a, int& m) {
  auto slash = s.find('/');
  if (slash == std::string::npos) throw Error(ErrorKind::BadInput, "root must look like a/m");
  try {
    size_t p1 = 0, p2 = 0;
    a = std::stoi(s.substr(0, slash), &p1);
    m = std::stoi(s.substr(slash + 1), &p2);
    if (p1 != slash || p2 != s.size() - slash - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error(ErrorKind::BadInput, "root must look like a/m");
  }
}

void parse_samples(const std::string& s, RunConfig& cfg) {
  cfg.samples.clear();
  cfg.default_samples = kStratumDefault;
  bool bare = false;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto eq = tok.find('=');
    std::string name = eq == std::string::npos ? "" : tok.substr(0, eq);
    std::string val = eq == std::string::npos ? tok : tok.substr(eq + 1);
    char* end = nullptr;
    long v = std::strtol(val.c_str(), &end, 10);
    if (val.empty() || *end != '\0' || v < 0) throw Error(ErrorKind::BadInput, "malformed sample count '" + tok + "'");
    if (name.empty()) {
      cfg.default_samples = static_cast<int>(v);
      bare = true;
    } else {
      cfg.samples[name] = static_cast<int>(v);
    }
  }
  if (!bare && !cfg.samples.count("smooth")) cfg.samples["smooth"] = kSmoothDefault;
}

bool emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (cfg.out.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) {
    err << "cannot open " << cfg.out << "\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

bool input_error(ErrorKind k) {
  return k == ErrorKind::NotACharacter || k == ErrorKind::BadInput || k == ErrorKind::DisallowedRoot;
}

int single_point(const RunConfig& cfg, const RootContext& ctx, std::ostream& out, std::ostream& err) {
  std::vector<cplx> c = parse_coordinates(cfg.character, ctx.N);
  const size_t want = ctx.surface == Surface::FourHoledSphere ? 7 : 4;
  if (c.size() != want)
    throw Error(ErrorKind::BadInput, "expected " + std::to_string(want) + " coordinates, got " + std::to_string(c.size()));
  SamplePoint p;
  p.stratum = "input";
  if (want == 7) p.hs = {c[0], c[1], c[2], {c[3], c[4], c[5], c[6]}};
  else p.pt = {c[0], c[1], c[2], c[3]};
  PointRecord r = evaluate_point(ctx, p);
  std::vector<PointRecord> recs{r};
  std::string text = cfg.format == "csv" ? report_csv(recs, cfg.timing) : report_json(cfg, ctx, recs);
  if (!emit(cfg, text, out, err)) return kExitBadInput;
  if (r.error) {
    err << *r.error << "\n";
    return input_error(*r.error_kind) ? kExitBadInput : kExitBuilder;
  }
  bool ok = true;
  if (cfg.command == "verify") ok = r.residual <= cfg.tol;
  else if (cfg.command == "shadow") ok = r.shadow_error <= 10 * cfg.tol && r.off_scalar <= cfg.tol;
  else ok = !r.contradiction && !r.disagreement;
  return ok ? kExitOk : kExitContradiction;
}

int scan(const RunConfig& cfg, const RootContext& ctx, std::ostream& out, std::ostream& err) {
  auto pts = sample_strata(ctx, cfg.samples, cfg.seed, cfg.default_samples);
  auto recs = evaluate_all(ctx, pts, cfg.threads);
  std::string text = cfg.format == "csv" ? report_csv(recs, cfg.timing) : report_json(cfg, ctx, recs);
  if (!emit(cfg, text, out, err)) return kExitBadInput;
  Summary s = summarize(recs);
  return s.contradictions + s.disagreements + s.errors == 0 ? kExitOk : kExitContradiction;
}

int search(const RunConfig& cfg, const RootContext& ctx, std::ostream& out, std::ostream& err) {
  auto recs = search_records(ctx);
  std::string text = cfg.format == "csv" ? search_csv(recs) : search_json(cfg, ctx, recs);
  if (!emit(cfg, text, out, err)) return kExitBadInput;
  for (const auto& r : recs)
    if (r.max_deviation > 1e-6) return kExitContradiction;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit representations of skein algebras of the punctured torus and the four-holed sphere",
               "skeinrep"};
  app.require_subcommand(1, 1);
  Options o;
  struct Cmd {
    const char* name;
    const char* help;
    bool sampling;
  };
  const Cmd cmds[] = {
      {"verify", "build a representation for one character and check the relations", false},
      {"shadow", "build a representation and recompute its classical shadow", false},
      {"reduce", "decide reducibility of the representation over one character", false},
      {"scan-azumaya", "sample every stratum and tabulate reducibility against the Azumaya locus", true},
      {"search-exceptional", "list exceptional points up to symmetry", true},
  };
  for (const auto& c : cmds) add_common(app.add_subcommand(c.name, c.help), o, c.sampling);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadInput;
  }

  RunConfig& cfg = o.cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    parse_root(o.root, cfg.a, cfg.m);
    cfg.surface = parse_surface(o.surface.c_str());
    parse_samples(o.samples, cfg);
    RootContext ctx = make_context(cfg.a, cfg.m, cfg.surface);
    if (cfg.command == "scan-azumaya") return scan(cfg, ctx, out, err);
    if (cfg.command == "search-exceptional") return search(cfg, ctx, out, err);
    return single_point(cfg, ctx, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return input_error(e.kind()) ? kExitBadInput : kExitBuilder;
  }
}

}  // namespace skein
