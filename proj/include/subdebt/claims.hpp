#ifndef SUBDEBT_CLAIMS_HPP
#define SUBDEBT_CLAIMS_HPP

#include <algorithm>
#include <cmath>

#include "subdebt/black_scholes.hpp"
#include "subdebt/errors.hpp"

namespace subdebt {

/// A firm financed by zero-coupon senior debt, zero-coupon junior debt and
/// equity, all maturing together. Absolute priority at maturity; no
/// bankruptcy costs.
struct CapitalStructure {
  double asset_value = 0.0;
  double senior_face = 0.0;
  double junior_face = 0.0;
  double volatility = 0.0;
  double maturity = 0.0;
  double rate = 0.0;
  double dividend_yield = 0.0;

  void validate() const {
    detail::require(std::isfinite(asset_value) && asset_value > 0.0, "asset_value must be positive");
    detail::require(std::isfinite(senior_face) && senior_face > 0.0, "senior_face must be positive");
    detail::require(std::isfinite(junior_face) && junior_face > 0.0, "junior_face must be positive");
    detail::require(std::isfinite(volatility) && volatility >= 0.0, "volatility must be nonnegative");
    detail::require(std::isfinite(maturity) && maturity > 0.0, "maturity must be positive");
    detail::require(std::isfinite(rate), "rate must be finite");
    detail::require(std::isfinite(dividend_yield) && dividend_yield >= 0.0,
                    "dividend_yield must be nonnegative");
  }

  double total_face() const { return senior_face + junior_face; }

  CapitalStructure with_volatility(double sigma) const {
    CapitalStructure copy = *this;
    copy.volatility = sigma;
    return copy;
  }

  CapitalStructure with_asset_value(double value) const {
    CapitalStructure copy = *this;
    copy.asset_value = value;
    return copy;
  }

  /// Option on the firm's assets struck at `strike`, sharing every other parameter.
  OptionInputs option(double strike) const {
    return {asset_value, strike, volatility, maturity, rate, dividend_yield};
  }
};

struct ClaimValues {
  double senior_value = 0.0;
  double junior_value = 0.0;
  double equity_value = 0.0;
  double total = 0.0;
};

struct MaturityPayoffs {
  double senior_payoff = 0.0;
  double junior_payoff = 0.0;
  double equity_payoff = 0.0;
};

/// Absolute-priority split of the terminal asset value.
inline MaturityPayoffs payoffs_at_maturity(double terminal_value, double senior_face, double junior_face) {
  detail::require(terminal_value >= 0.0, "terminal_value must be nonnegative");
  return {
      std::min(terminal_value, senior_face),
      std::clamp(terminal_value - senior_face, 0.0, junior_face),
      std::max(terminal_value - senior_face - junior_face, 0.0),
  };
}

/// Riskless bond on F_S less a put struck at F_S.
inline double senior_debt_value(const CapitalStructure& cs) {
  cs.validate();
  const double riskless = cs.senior_face * std::exp(-cs.rate * cs.maturity);
  return riskless - put_price(cs.option(cs.senior_face));
}

/// Bull spread: long call at F_S, short call at F_S + F_J.
inline double junior_debt_value(const CapitalStructure& cs) {
  cs.validate();
  return call_price(cs.option(cs.senior_face)) - call_price(cs.option(cs.total_face()));
}

inline double equity_value(const CapitalStructure& cs) {
  cs.validate();
  return call_price(cs.option(cs.total_face()));
}

/// The three claims together. With q > 0 the total is V e^{-q tau}, not V.
inline ClaimValues value_all_claims(const CapitalStructure& cs) {
  ClaimValues out;
  out.senior_value = senior_debt_value(cs);
  out.junior_value = junior_debt_value(cs);
  out.equity_value = equity_value(cs);
  out.total = out.senior_value + out.junior_value + out.equity_value;
  return out;
}

}  // namespace subdebt

#endif
