#ifndef SUBDEBT_NORMAL_HPP
#define SUBDEBT_NORMAL_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace subdebt {

/// Standard normal density.
inline double normal_pdf(double x) {
  constexpr double inv_sqrt_2pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

/// Standard normal CDF, evaluated as erfc(-x/sqrt 2)/2.
///
/// The complementary error function keeps full relative precision in the
/// lower tail, so N(x) + N(-x) = 1 holds to within a couple of ulps and
/// there is no cancellation for large negative x (where 1 - erf would lose
/// every digit).
inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace detail {

template <std::size_t N>
constexpr double horner(const std::array<double, N>& coeffs, double x) {
  double acc = 0.0;
  for (double c : coeffs) acc = acc * x + c;
  return acc;
}

// Coefficients in descending powers.
inline constexpr std::array<double, 8> kAs241CentralNum{
    2.5090809287301226727e+3, 3.3430575583588128105e+4, 6.7265770927008700853e+4, 4.5921953931549871457e+4,
    1.3731693765509461125e+4, 1.9715909503065514427e+3, 1.3314166789178437745e+2, 3.3871328727963666080e+0};
inline constexpr std::array<double, 8> kAs241CentralDen{
    5.2264952788528545610e+3, 2.8729085735721942674e+4, 3.9307895800092710610e+4, 2.1213794301586595867e+4,
    5.3941960214247511077e+3, 6.8718700749205790830e+2, 4.2313330701600911252e+1, 1.0};
inline constexpr std::array<double, 8> kAs241NearNum{
    7.7454501427834140764e-4, 2.2723844989269184583e-2, 2.4178072517745061177e-1, 1.2704582524523683826e+0,
    3.6478483247632045605e+0, 5.7694972214606914055e+0, 4.6303378461565452959e+0, 1.4234371107496835773e+0};
inline constexpr std::array<double, 8> kAs241NearDen{
    1.0507500716444168432e-9, 5.4759380849953449460e-4, 1.5198666563616457197e-2, 1.4810397642748007459e-1,
    6.8976733498510000455e-1, 1.6763848301838038494e+0, 2.0531916266377588219e+0, 1.0};
inline constexpr std::array<double, 8> kAs241FarNum{
    2.0103343992922881327e-7, 2.7115555687434875782e-5, 1.2426609473880784386e-3, 2.6532189526576123093e-2,
    2.9656057182850489123e-1, 1.7848265399172913358e+0, 5.4637849111641143699e+0, 6.6579046435011037772e+0};
inline constexpr std::array<double, 8> kAs241FarDen{
    2.0442631033899397856e-15, 1.4215117583164458887e-7, 1.8463183175100546818e-5, 7.8686913114561325910e-4,
    1.4875361290850614853e-2, 1.3692988092273580531e-1, 5.9983220655588793769e-1, 1.0};

}  // namespace detail

/// Inverse standard normal CDF, Wichura's AS241 (PPND16).
///
/// Three rational approximations: a central one for |p - 0.5| <= 0.425 and
/// two tail ones in r = sqrt(-log(min(p, 1-p))). Relative accuracy is about
/// 1e-16 across (0, 1). Only +, *, /, log and sqrt are used, which keeps the
/// Monte-Carlo variates stable across platforms. Returns -inf / +inf at the
/// endpoints.
inline double normal_quantile(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * detail::horner(detail::kAs241CentralNum, r) / detail::horner(detail::kAs241CentralDen, r);
  }
  if (p <= 0.0) return -HUGE_VAL;
  if (p >= 1.0) return HUGE_VAL;

  const double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  const double x = r <= 5.0
                       ? detail::horner(detail::kAs241NearNum, r - 1.6) / detail::horner(detail::kAs241NearDen, r - 1.6)
                       : detail::horner(detail::kAs241FarNum, r - 5.0) / detail::horner(detail::kAs241FarDen, r - 5.0);
  return q < 0.0 ? -x : x;
}

}  // namespace subdebt

#endif
