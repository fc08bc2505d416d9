#ifndef SUBDEBT_BLACK_SCHOLES_HPP
#define SUBDEBT_BLACK_SCHOLES_HPP

#include <algorithm>
#include <cmath>

#include "subdebt/errors.hpp"
#include "subdebt/normal.hpp"

namespace subdebt {

/// European option on the firm's assets. Rates and yields are continuously
/// compounded per year, maturity is the remaining life in years.
struct OptionInputs {
  double asset_value = 0.0;
  double strike = 0.0;
  double volatility = 0.0;
  double maturity = 0.0;
  double rate = 0.0;
  double dividend_yield = 0.0;

  void validate() const {
    detail::require(std::isfinite(asset_value) && asset_value > 0.0, "asset_value must be positive");
    detail::require(std::isfinite(strike) && strike > 0.0, "strike must be positive");
    detail::require(std::isfinite(maturity) && maturity > 0.0, "maturity must be positive");
    detail::require(std::isfinite(volatility) && volatility >= 0.0, "volatility must be nonnegative");
    detail::require(std::isfinite(rate), "rate must be finite");
    detail::require(std::isfinite(dividend_yield) && dividend_yield >= 0.0,
                    "dividend_yield must be nonnegative");
  }

  double discounted_asset() const { return asset_value * std::exp(-dividend_yield * maturity); }
  double discounted_strike() const { return strike * std::exp(-rate * maturity); }
};

struct DTerms {
  double d1;
  double d2;
};

inline DTerms d_terms(const OptionInputs& in) {
  in.validate();
  if (in.volatility == 0.0) {
    throw DegenerateVolatilityError("d1 is undefined at zero volatility");
  }
  const double vol_sqrt_t = in.volatility * std::sqrt(in.maturity);
  const double d1 = (std::log(in.asset_value / in.strike) +
                     (in.rate - in.dividend_yield + 0.5 * in.volatility * in.volatility) * in.maturity) /
                    vol_sqrt_t;
  return {d1, d1 - vol_sqrt_t};
}

inline double d1(const OptionInputs& in) { return d_terms(in).d1; }
inline double d2(const OptionInputs& in) { return d_terms(in).d2; }

/// Black-Scholes call; at zero volatility the deterministic forward payoff.
inline double call_price(const OptionInputs& in) {
  in.validate();
  const double fwd_asset = in.discounted_asset();
  const double fwd_strike = in.discounted_strike();
  if (in.volatility == 0.0) {
    return std::max(fwd_asset - fwd_strike, 0.0);
  }
  const auto [p1, p2] = d_terms(in);
  return fwd_asset * normal_cdf(p1) - fwd_strike * normal_cdf(p2);
}

/// Black-Scholes put. Evaluated from N(-d1), N(-d2) directly rather than by
/// parity so that deep in-the-money calls do not leak cancellation error into
/// small put values; parity is asserted in the tests.
inline double put_price(const OptionInputs& in) {
  in.validate();
  const double fwd_asset = in.discounted_asset();
  const double fwd_strike = in.discounted_strike();
  if (in.volatility == 0.0) {
    return std::max(fwd_strike - fwd_asset, 0.0);
  }
  const auto [p1, p2] = d_terms(in);
  return fwd_strike * normal_cdf(-p2) - fwd_asset * normal_cdf(-p1);
}

/// dCall/dsigma = V e^{-q tau} sqrt(tau) phi(d1). Same for puts.
inline double vega(const OptionInputs& in) {
  const double p1 = d1(in);
  return in.discounted_asset() * std::sqrt(in.maturity) * normal_pdf(p1);
}

}  // namespace subdebt

#endif
