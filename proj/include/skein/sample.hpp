#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skein/hsphere.hpp"
#include "skein/ptorus.hpp"

namespace skein {

std::uint64_t splitmix64(std::uint64_t x);

/// Strata available for the context, in report order.
std::vector<std::string> strata_for(const RootContext& ctx);

struct SamplePoint {
  std::string stratum;
  int index = 0;  ///< position within the stratum
  PTCharacter pt{};
  HSCharacter hs{};
};

/// Deterministic sample: point j of stratum s depends only on (seed, s, j).
/// Strata missing from counts get default_count points; unknown names throw BadInput.
std::vector<SamplePoint> sample_strata(const RootContext& ctx, const std::map<std::string, int>& counts,
                                       std::uint64_t seed, int default_count = 0);

/// Last trace coordinate from the center relation, given the others; branch 0 or 1.
cplx solve_zinf(const RootContext& ctx, PTCharacter ch, int branch);
cplx solve_zinf04(const RootContext& ctx, HSCharacter ch, int branch);

}  // namespace skein
