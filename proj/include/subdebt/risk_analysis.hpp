#ifndef SUBDEBT_RISK_ANALYSIS_HPP
#define SUBDEBT_RISK_ANALYSIS_HPP

#include <cmath>
#include <optional>
#include <string_view>

#include "subdebt/black_scholes.hpp"
#include "subdebt/claims.hpp"
#include "subdebt/errors.hpp"

namespace subdebt {

enum class Regime { DecreasingInRisk, HumpShaped };

inline std::string_view to_string(Regime regime) {
  return regime == Regime::HumpShaped ? "HumpShaped" : "DecreasingInRisk";
}

/// Risk preferences of the junior debtholders at a given capital structure.
///
/// `sigma_max` is absent when no maximizer exists (V > V*), and exactly 0 on
/// the boundary V = V*. `regime` is HumpShaped iff sigma_max is present. `v_hat`
/// depends on volatility and is evaluated at `v_hat_sigma` (the initial risk).
struct RiskProfile {
  std::optional<double> sigma_max;
  double v_hat = 0.0;
  double v_hat_sigma = 0.0;
  double v_star = 0.0;
  Regime regime = Regime::DecreasingInRisk;
  bool shifts_above_initial = false;
};

/// Radicands of the closed-form maximizer within this band of zero are
/// treated as the V = V* boundary rather than as "no maximizer".
inline constexpr double kRadicandTolerance = 1e-12;

/// dB_J/dsigma: vega of the long call at F_S minus vega of the short call at F_S + F_J.
inline double junior_debt_vega(const CapitalStructure& cs) {
  cs.validate();
  return vega(cs.option(cs.senior_face)) - vega(cs.option(cs.total_face()));
}

/// Asset value at which junior debt is locally insensitive to risk at volatility `sigma`:
/// e^{-(r - q + sigma^2/2) tau} sqrt(F_S (F_S + F_J)).
inline double v_hat(double senior_face, double junior_face, double sigma, double maturity, double rate,
                    double dividend_yield = 0.0) {
  detail::require(senior_face > 0.0 && junior_face > 0.0, "face values must be positive");
  detail::require(sigma >= 0.0, "sigma must be nonnegative");
  detail::require(maturity > 0.0, "maturity must be positive");
  return std::exp(-(rate - dividend_yield + 0.5 * sigma * sigma) * maturity) *
         std::sqrt(senior_face * (senior_face + junior_face));
}

/// Largest asset value for which an interior risk maximizer exists:
/// e^{-(r - q) tau} sqrt(F_S (F_S + F_J)).
inline double v_star(double senior_face, double junior_face, double maturity, double rate,
                     double dividend_yield = 0.0) {
  detail::require(senior_face > 0.0 && junior_face > 0.0, "face values must be positive");
  detail::require(maturity > 0.0, "maturity must be positive");
  return std::exp(-(rate - dividend_yield) * maturity) * std::sqrt(senior_face * (senior_face + junior_face));
}

/// Volatility maximizing the junior debt value,
/// sqrt(ln(F_S (F_S + F_J) / V^2) / tau - 2r + 2q). The volatility field of
/// `cs` is ignored.
inline std::optional<double> sigma_max(const CapitalStructure& cs) {
  cs.validate();
  const double radicand =
      std::log(cs.senior_face * cs.total_face() / (cs.asset_value * cs.asset_value)) / cs.maturity -
      2.0 * cs.rate + 2.0 * cs.dividend_yield;
  if (radicand < -kRadicandTolerance) {
    return std::nullopt;
  }
  return radicand <= 0.0 ? 0.0 : std::sqrt(radicand);
}

inline RiskProfile classify_regime(const CapitalStructure& cs, double initial_sigma) {
  detail::require(std::isfinite(initial_sigma) && initial_sigma > 0.0, "initial_sigma must be positive");
  cs.validate();

  RiskProfile profile;
  profile.sigma_max = sigma_max(cs);
  profile.v_hat_sigma = initial_sigma;
  profile.v_hat = v_hat(cs.senior_face, cs.junior_face, initial_sigma, cs.maturity, cs.rate, cs.dividend_yield);
  profile.v_star = v_star(cs.senior_face, cs.junior_face, cs.maturity, cs.rate, cs.dividend_yield);
  profile.regime = profile.sigma_max ? Regime::HumpShaped : Regime::DecreasingInRisk;
  profile.shifts_above_initial = cs.asset_value < profile.v_hat;
  return profile;
}

/// Risk level junior debtholders would move to from `initial_sigma`: the
/// maximizer when it lies above the initial risk, otherwise no change.
inline double chosen_risk(const CapitalStructure& cs, double initial_sigma) {
  const RiskProfile profile = classify_regime(cs, initial_sigma);
  if (profile.shifts_above_initial && profile.sigma_max) {
    return *profile.sigma_max;
  }
  return initial_sigma;
}

}  // namespace subdebt

#endif
