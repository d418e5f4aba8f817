#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skein/linalg.hpp"
#include "skein/scalars.hpp"

namespace skein {

/// Values of A_0, A_1, A_inf and the peripheral curve p.
struct PTCharacter {
  cplx z0, z1, zinf, w;
};

struct PTTypeZeroParams {
  cplx sigma;
  cplx w;
  std::vector<cplx> s, t;
};

enum class PTKind { TypeZero, ExceptionalOdd, ExceptionalEvenM2, ExceptionalEvenMix, ExceptionalEven222 };
const char* pt_kind_name(PTKind k);

enum class PTEvenCase { AllMinus2, MixM2P2, All2 };

/// Rep-level moves: Rotate sends (a0, a1, ainf) to (a1, ainf, a0); the twists replace one
/// generator by the curve of slope -1 or 1/2; Sign multiplies by (e0, e0*einf, einf), n odd only.
enum class PTMoveKind { Rotate, TwistMinus, TwistPlus, Sign };
struct PTMove {
  PTMoveKind kind;
  int e0 = 1;
  int einf = 1;
};

struct PTProvenance {
  PTKind kind = PTKind::TypeZero;
  int k = 0;
  std::optional<PTTypeZeroParams> params;
  std::vector<PTMove> moves;  ///< applied in order to the base matrices
};

struct PTRepresentation {
  RootContext ctx;
  CMatrix m0, m1, minf;
  cplx w;
  PTProvenance provenance;
  std::array<CMatrix, 3> base;  ///< matrices before moves
};

struct PTResiduals {
  double rel1 = 0, relinf = 0, rel0 = 0, boundary = 0;
  double max() const;
};

struct PTShadow {
  PTCharacter ch;
  double off_scalar = 0;  ///< worst off-scalar deviation, relative to the central value scale
};

struct PTSingular {
  bool slice_singular = false;
  bool variety_singular = false;
};

struct RepresentOptions {
  double char_tol = 1e-7;       ///< relative tolerance on the central relation
  double general_margin = 1e-3; ///< distance from +-2 below which z0 is moved away
  double comfort_margin = 0.1;  ///< preferred distance from +-2 within comfort_depth moves
  int comfort_depth = 3;
  int max_depth = 8;
};

cplx central_relation_value(const RootContext& ctx, const PTCharacter& ch);
double central_relation_residual(const RootContext& ctx, const PTCharacter& ch);
/// Residual divided by the magnitude of the terms.
double central_relation_relative(const RootContext& ctx, const PTCharacter& ch);

cplx pt_lambda(const RootContext& ctx, cplx sigma, long long i);
cplx pt_lambda_hat(const RootContext& ctx, cplx sigma, long long i);
cplx r_coeff(const RootContext& ctx, cplx sigma, cplx w, long long i);
cplx big_R(const RootContext& ctx, cplx z0, cplx w);
cplx f_shift(const RootContext& ctx, cplx z0, cplx w);
/// Principal solution of sigma^D + sigma^-D = z0.
cplx sigma_from_z0(const RootContext& ctx, cplx z0);

PTTypeZeroParams fiber_solve(const RootContext& ctx, cplx sigma, cplx w, cplx x, cplx y, double tol = 1e-9);
PTRepresentation build_type0(const RootContext& ctx, const PTTypeZeroParams& params);

PTResiduals verify_relations(const RootContext& ctx, const CMatrix& a0, const CMatrix& a1, const CMatrix& ainf, cplx w);
PTResiduals verify_relations(const PTRepresentation& rep);

PTShadow classical_shadow_detail(const PTRepresentation& rep);
PTCharacter classical_shadow(const PTRepresentation& rep, double tol = 1e-8);
/// Closed-form shadow of a type-0 representation.
PTCharacter shadow_formula(const RootContext& ctx, const PTTypeZeroParams& params);

cplx pt_A_minus1(const RootContext& ctx, const PTCharacter& ch);
cplx pt_A_half(const RootContext& ctx, const PTCharacter& ch);

enum class PTSlopeMove { SwapZeroInf, TwistOnce, TwistInverse };
/// TwistOnce: (z0, z1, zinf) -> (z0, zinf, A_-1); TwistInverse undoes it.
PTCharacter slope_move(const RootContext& ctx, const PTCharacter& ch, PTSlopeMove move);

PTCharacter move_character(const RootContext& ctx, const PTCharacter& ch, const PTMove& move);
PTRepresentation apply_move(const PTRepresentation& rep, const PTMove& move);

PTRepresentation build_exceptional_odd(const RootContext& ctx, int k);
/// For AllMinus2, k indexes peripheral_lifts(N, 2 eps^2) unless w is given.
PTRepresentation build_exceptional_even(const RootContext& ctx, PTEvenCase c, int k, std::optional<cplx> w = std::nullopt);

PTRepresentation represent(const RootContext& ctx, const PTCharacter& ch, const RepresentOptions& opt = {});

PTSingular classify_singular(const RootContext& ctx, const PTCharacter& ch, double tol = 1e-7);
bool is_exceptional(const RootContext& ctx, const PTCharacter& ch, double tol = 1e-7);
/// Orbit scan through slope_move up to the given depth, for validation.
bool is_exceptional_by_orbit(const RootContext& ctx, const PTCharacter& ch, int depth = 6, double tol = 1e-7);

Reducibility is_reducible(const PTRepresentation& rep, double tol = 1e-7);

/// A at slope a/b from the product-to-sum rule.
cplx pt_slope_A(const RootContext& ctx, const PTCharacter& ch, long long a, long long b, int max_den = 64);

struct PTExceptionalPoint {
  cplx z0, z1, zinf;
  cplx W;  ///< T_N(w)
  int orbit = 0;
};
std::vector<PTExceptionalPoint> pt_search_exceptional(const RootContext& ctx, int den_bound = 8);

struct LimitMatrices {
  CMatrix m0, minf;
  double spread = 0;
};
/// Basis-change limits of type-0 families at sigma -> 1, extrapolated over sigma = 1 + 10^-j.
LimitMatrices limit_exceptional_odd(const RootContext& ctx, int k);
LimitMatrices limit_exceptional_even(const RootContext& ctx, int k);

}  // namespace skein
