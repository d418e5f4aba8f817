#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skein/errors.hpp"
#include "skein/sample.hpp"

namespace skein {

inline constexpr int kSchemaVersion = 1;

/// "re+imi" with 12 significant digits; "-0" is printed as "0".
std::string format_complex(cplx z);
/// Accepts "1.5", "-2i", "i", "1e-3-2.5i"; throws BadInput otherwise.
cplx parse_complex(const std::string& s);
/// Comma separated coordinates; "lift:W:j" expands to the j-th w with T_N(w) = W.
std::vector<cplx> parse_coordinates(const std::string& s, int N);

struct RunConfig {
  std::string command;
  int a = 1, m = 6;
  Surface surface = Surface::PuncturedTorus;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::map<std::string, int> samples;
  int default_samples = 20;
  std::string format = "json";
  std::string out;
  int threads = 1;
  bool timing = false;
  std::string character;
};

struct PointRecord {
  int index = 0;
  std::string stratum;
  std::vector<cplx> character;  ///< z0, z1, zinf, w...
  std::optional<std::string> error;
  std::optional<ErrorKind> error_kind;
  std::string kind;
  int moves = 0;
  std::optional<int> red_case;
  double residual = 0, shadow_error = 0, off_scalar = 0;
  std::vector<cplx> shadow;
  bool reducible = false, fast_reducible = false;
  int oracle_dim = 0;
  std::optional<bool> graph_reducible;
  std::optional<int> witness_dim;
  bool slice_singular = false, variety_singular = false;
  bool azumaya = true;
  std::string component;
  bool contradiction = false, disagreement = false;
  double millis = 0;
};

/// Build, verify, classify, and cross-check one point. Library errors land in record.error.
PointRecord evaluate_point(const RootContext& ctx, const SamplePoint& p);

/// Evaluates points on a pool of workers; the result order follows the input.
std::vector<PointRecord> evaluate_all(const RootContext& ctx, const std::vector<SamplePoint>& pts,
                                      int threads);

struct Summary {
  int points = 0, errors = 0, contradictions = 0, disagreements = 0;
  double max_residual = 0, max_shadow_error = 0;
  std::map<std::string, std::map<std::string, int>> cells;  ///< stratum -> cell -> count
};
Summary summarize(const std::vector<PointRecord>& recs);

std::string report_json(const RunConfig& cfg, const RootContext& ctx, const std::vector<PointRecord>& recs);
std::string report_csv(const std::vector<PointRecord>& recs, bool timing);

struct SearchRecord {
  int index = 0;
  std::vector<double> z, W;
  std::string family;
  int orbit = 0;
  double max_deviation = 0;  ///< worst distance of A(a/b) from {+-2} over the checked slopes
};
std::vector<SearchRecord> search_records(const RootContext& ctx, int den_bound = 8);
std::string search_json(const RunConfig& cfg, const RootContext& ctx, const std::vector<SearchRecord>& recs);
std::string search_csv(const std::vector<SearchRecord>& recs);

}  // namespace skein
