#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skein/linalg.hpp"
#include "skein/scalars.hpp"

namespace skein {

using Quad = std::array<cplx, 4>;

/// Values of A_0, A_1, A_inf and the four peripheral curves.
struct HSCharacter {
  cplx z0, z1, zinf;
  Quad w;
};

/// The pairings (c_0, c_1, c_inf, gamma) of four values.
struct Pairings {
  cplx c0, c1, cinf, gamma;
};
Pairings pairings(const Quad& v);

/// W_i = T_N(w_i) and the pairings of W.
struct HSCentralData {
  Quad W;
  Pairings C;
};
HSCentralData central_data(const RootContext& ctx, const Quad& w);

cplx H_eval(cplx x, cplx y, cplx z, cplx a, cplx b, cplx c, cplx g);
cplx kappa(cplx a, cplx b, cplx c);

/// H(z; C) - 4.
cplx central_relation_value04(const RootContext& ctx, const HSCharacter& ch);
double central_relation_residual04(const RootContext& ctx, const HSCharacter& ch);
double central_relation_relative04(const RootContext& ctx, const HSCharacter& ch);

cplx hs_lambda(const RootContext& ctx, cplx sigma, long long i);
cplx hs_lambda_hat(const RootContext& ctx, cplx sigma, long long i);
cplx hs_lambda_prime(const RootContext& ctx, cplx sigma, long long i);
cplx hs_lambda_prime_hat(const RootContext& ctx, cplx sigma, long long i);

cplx r_coeff04(const RootContext& ctx, cplx sigma, const Quad& w, long long i);
cplx big_R04(const RootContext& ctx, cplx z0, const Quad& w);
struct HSShift {
  cplx f1, finf;
};
HSShift f_shift04(const RootContext& ctx, cplx z0, const Quad& w);
/// Principal solution of sigma^N + sigma^-N = eps^2 z0.
cplx sigma_from_z0_04(const RootContext& ctx, cplx z0);

struct HSTypeZeroParams {
  cplx sigma;
  Quad w;
  std::vector<cplx> s, t;
};

enum class HSKind { TypeZero, Exceptional };
const char* hs_kind_name(HSKind k);

/// Rep-level moves. Rotate sends (a0, a1, ainf) to (a1, ainf, a0) with w -> (w1, w3, w4, w2).
/// TwistMinus and TwistPlus replace a generator by the curve of slope -1 or 1/2 and swap w1, w2.
/// Klein permutes w by a double transposition and fixes the matrices.
/// Sign multiplies (a0, a1, ainf) by (d1 d2, d1 d3, d2 d3) and w by d, with d1 d2 d3 d4 = 1.
enum class HSMoveKind { Rotate, TwistMinus, TwistPlus, Klein, Sign };
struct HSMove {
  HSMoveKind kind;
  int klein = 0;  ///< 1, 2, 3 for (12)(34), (13)(24), (14)(23)
  std::array<int, 4> delta{1, 1, 1, 1};
};

struct HSExceptionalData {
  Quad eta;
  int z0_sign = 1;
  int sigma_sign = 1;
  int k = 0;               ///< index with mu(q^{4k+2} sigma_0) = 0, or -1
  int red_case = -1;       ///< 0 for the z0 = -2 branch, 1..4 by k, -1 when mu has no root on the labels
  std::vector<int> labels2;  ///< twice the basis labels, in basis order
  double spread = 0;
};

struct HSProvenance {
  HSKind kind = HSKind::TypeZero;
  std::optional<HSTypeZeroParams> params;
  std::optional<HSExceptionalData> exceptional;
  std::vector<HSMove> moves;
};

struct HSRepresentation {
  RootContext ctx;
  CMatrix m0, m1, minf;
  Quad w;
  HSProvenance provenance;
  std::array<CMatrix, 3> base;
  Quad base_w;
};

struct HSResiduals {
  double relG = 0, rel1 = 0, relinf = 0, rel0 = 0;
  double max() const;
};

struct HSShadow {
  HSCharacter ch;
  double off_scalar = 0;
};

struct HSSingular {
  bool slice_singular = false;
  bool variety_singular = false;
  std::optional<int> ramified;  ///< puncture index 0..3
  bool reducible = false;
};

enum class AzumayaComponent { None, Ramified, ReducibleOmega, ReducibleB1 };
const char* azumaya_component_name(AzumayaComponent c);

struct ReducibleLocusPoint {
  Quad eta;
  cplx omega;
};

struct AzumayaVerdict {
  bool in_azumaya = true;
  AzumayaComponent component = AzumayaComponent::None;
  std::optional<ReducibleLocusPoint> point;
};

struct HSRepresentOptions {
  double char_tol = 1e-7;
  double general_margin = 1e-3;
  double comfort_margin = 0.1;  ///< preferred distance from +-2 within comfort_depth moves
  int comfort_depth = 3;
  int max_depth = 8;
};

HSResiduals verify_relations04(const RootContext& ctx, const CMatrix& a0, const CMatrix& a1, const CMatrix& ainf,
                               const Quad& w);
HSResiduals verify_relations04(const HSRepresentation& rep);

HSShadow classical_shadow04_detail(const HSRepresentation& rep);
HSCharacter classical_shadow04(const HSRepresentation& rep, double tol = 1e-8);
HSCharacter shadow_formula04(const RootContext& ctx, const HSTypeZeroParams& params);

HSTypeZeroParams fiber_solve04(const RootContext& ctx, cplx sigma, const Quad& w, cplx x, cplx y, double tol = 1e-9);
HSRepresentation build_type0_04(const RootContext& ctx, const HSTypeZeroParams& params);

HSCharacter move_character04(const RootContext& ctx, const HSCharacter& ch, const HSMove& move);
HSRepresentation apply_move04(const HSRepresentation& rep, const HSMove& move);

/// h(eta): w_i = eta_i + 1/eta_i, z_m = -(eta_1 eta_j)^N - (eta_1 eta_j)^-N.
HSCharacter h_map(const RootContext& ctx, const Quad& eta);
/// Shadow of the exceptional family at the given z0.
HSCharacter exceptional_shadow04(const RootContext& ctx, const Quad& eta, cplx z0);
/// Limit construction at sigma_0 = sigma_sign (times q^-2 when N is even and z0 = -2).
HSRepresentation build_exceptional_04(const RootContext& ctx, const Quad& eta, int z0_sign, int sigma_sign);

HSRepresentation represent04(const RootContext& ctx, const HSCharacter& ch, const HSRepresentOptions& opt = {});

bool is_exceptional04(const RootContext& ctx, const HSCharacter& ch, double tol = 1e-7);
HSSingular classify_singular_04(const RootContext& ctx, const HSCharacter& ch, double tol = 1e-7);
AzumayaVerdict azumaya_membership(const RootContext& ctx, const HSCharacter& ch, double tol = 1e-6);

Reducibility is_reducible_04(const HSRepresentation& rep, double tol = 1e-7);

/// A at slope a/b from the product-to-sum rule, on W-level data.
cplx hs_slope_A(const std::array<cplx, 3>& z, const Pairings& C, long long a, long long b, int max_den = 64);
cplx hs_slope_A(const RootContext& ctx, const HSCharacter& ch, long long a, long long b, int max_den = 64);

enum class HSFamily { Central, Cyclic4, Parabolic };
const char* hs_family_name(HSFamily f);

struct HSExceptionalPoint {
  std::array<double, 3> z;
  std::array<double, 4> W;
  HSFamily family = HSFamily::Central;
  int orbit = 0;
};
/// Points of the character variety with A = +-2 at every slope, verified up to den_bound.
std::vector<HSExceptionalPoint> hs_search_exceptional(int den_bound = 8);

}  // namespace skein
