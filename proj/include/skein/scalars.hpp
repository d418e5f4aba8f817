#pragma once

#include <complex>
#include <vector>
#include <cstdint>
#include <utility>

namespace skein {

using cplx = std::complex<double>;

enum class Surface { PuncturedTorus, FourHoledSphere };

const char* surface_name(Surface s);
Surface parse_surface(const char* name);

/// exp(2 pi i num/den), exact at quarter turns.
cplx unit_root(std::int64_t num, std::int64_t den);

/// Root of unity q = exp(2 pi i a/m) with the constants derived from it.
struct RootContext {
  int a = 1;
  int m = 1;
  int n = 1;  ///< order of q^2
  int N = 1;  ///< order of q^4
  /// epsilon = q^(N^2) = i^eps_quarter
  int eps_quarter = 0;
  cplx epsilon{1.0, 0.0};
  Surface surface = Surface::PuncturedTorus;
  int D = 1;

  /// q^k recomputed from (a, m).
  cplx qpow(std::int64_t k) const { return unit_root(static_cast<std::int64_t>(a) * k, m); }
  cplx q() const { return qpow(1); }
  /// Sign of epsilon^2, +1 or -1.
  int eps2() const { return (eps_quarter % 2 == 0) ? 1 : -1; }
  bool n_odd() const { return n % 2 == 1; }
  bool N_odd() const { return N % 2 == 1; }
};

RootContext make_context(int a, int m, Surface surface);

/// Chebyshev polynomial T_k with T_0 = 2, T_1 = x.
cplx cheb(int k, cplx x);
/// Derivative T'_k.
cplx cheb_derivative(int k, cplx x);
/// Both sides of prod_{i=1}^D (w^i t - w^-i t^-1) = t^D - t^-D (D odd), 2 - t^D - t^-D (D even).
std::pair<cplx, cplx> cheb_product_check(int D, cplx t);

/// Principal square root branch fixed so results are reproducible.
cplx principal_sqrt(cplx z);

/// Peripheral values w with T_N(w) = W, deduplicated.
std::vector<cplx> peripheral_lifts(int N, cplx W);

}  // namespace skein
