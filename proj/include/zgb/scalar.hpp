#pragma once

#include <complex>
#include <numbers>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace zgb {

namespace bmp = boost::multiprecision;

using cplx = std::complex<double>;

/// Decimal digits of the extended-precision scalar used for Laurent-route quantities.
inline constexpr unsigned kExtendedDigits = 100;

using ext_real = bmp::number<bmp::mpfr_float_backend<kExtendedDigits>, bmp::et_off>;
using ext_cplx = bmp::number<bmp::complex_adaptor<bmp::mpfr_float_backend<kExtendedDigits>>, bmp::et_off>;

enum class Precision { automatic, binary64, extended };

template <class C>
struct scalar_traits;

template <>
struct scalar_traits<cplx> {
  using real = double;
  static cplx make(double re, double im) { return {re, im}; }
  static double pi() { return std::numbers::pi; }
  static constexpr double unit_roundoff = 0x1p-53;
};

template <>
struct scalar_traits<ext_cplx> {
  using real = ext_real;
  static ext_cplx make(const ext_real& re, const ext_real& im) { return ext_cplx(re, im); }
  static ext_real pi() { return boost::math::constants::pi<ext_real>(); }
  static constexpr double unit_roundoff = 1e-100;
};

template <class C>
using real_t = typename scalar_traits<C>::real;

inline cplx to_cplx(const ext_cplx& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline ext_cplx to_ext(cplx z) { return ext_cplx(ext_real(z.real()), ext_real(z.imag())); }

}  // namespace zgb
