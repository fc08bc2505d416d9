#ifndef SUBDEBT_GOLDEN_SECTION_HPP
#define SUBDEBT_GOLDEN_SECTION_HPP

#include <cmath>
#include <utility>

namespace subdebt {

/// Golden-section search for the maximizer of a unimodal `f` on [lower, upper].
/// Stops once the bracket is narrower than `tolerance`; returns its midpoint.
template <typename F>
double golden_section_maximize(F&& f, double lower, double upper, double tolerance, int max_iterations = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lower;
  double b = upper;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);

  for (int i = 0; i < max_iterations && (b - a) > tolerance; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace subdebt

#endif
