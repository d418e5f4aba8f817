#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cstdint>
#include <vector>

#include "skein/linalg.hpp"

namespace skein::mp {

using real = boost::multiprecision::cpp_bin_float_50;
using cplx50 = boost::multiprecision::cpp_complex_50;

inline cplx50 unit(std::int64_t num, std::int64_t den) {
  std::int64_t r = ((num % den) + den) % den;
  real th = 2 * boost::math::constants::pi<real>() * real(r) / real(den);
  return cplx50(cos(th), sin(th));
}

inline cplx50 from(cplx z) { return cplx50(real(z.real()), real(z.imag())); }
inline cplx to_double(const cplx50& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

struct Mat {
  int n = 0;
  std::vector<cplx50> a;
  explicit Mat(int dim = 0) : n(dim), a(static_cast<size_t>(dim) * dim, cplx50(0)) {}
  cplx50& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const cplx50& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

inline Mat operator*(const Mat& x, const Mat& y) {
  Mat z(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const cplx50& xik = x(i, k);
      if (xik == cplx50(0)) continue;
      for (int j = 0; j < x.n; ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

inline CMatrix to_double(const Mat& m) {
  CMatrix out(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) out(i, j) = to_double(m(i, j));
  return out;
}

/// Neville extrapolation to h = 0 of entrywise samples f(h_r).
inline Mat neville(const std::vector<Mat>& fs, const std::vector<real>& hs) {
  std::vector<Mat> T = fs;
  const size_t n = hs.size();
  for (size_t j = 1; j < n; ++j) {
    std::vector<Mat> next;
    for (size_t i = 0; i + j < n; ++i) {
      Mat m(T[i].n);
      real den = hs[i] - hs[i + j];
      for (size_t e = 0; e < m.a.size(); ++e)
        m.a[e] = (T[i + 1].a[e] * hs[i] - T[i].a[e] * hs[i + j]) / den;
      next.push_back(std::move(m));
    }
    T.swap(next);
  }
  return T.front();
}

inline double max_abs_diff(const Mat& x, const Mat& y) {
  double w = 0;
  for (size_t e = 0; e < x.a.size(); ++e) w = std::max(w, static_cast<double>(abs(x.a[e] - y.a[e])));
  return w;
}

}  // namespace skein::mp
