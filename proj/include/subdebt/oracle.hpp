#ifndef SUBDEBT_ORACLE_HPP
#define SUBDEBT_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "subdebt/claims.hpp"
#include "subdebt/errors.hpp"
#include "subdebt/golden_section.hpp"
#include "subdebt/random.hpp"

namespace subdebt {

struct MCConfig {
  std::uint64_t path_count = 1'000'000;
  std::uint64_t seed = 1;
  bool antithetic = true;

  void validate() const {
    detail::require(path_count >= 2, "path_count must be at least 2");
    detail::require(!antithetic || path_count % 2 == 0, "antithetic path_count must be even");
  }
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t path_count = 0;

  /// |value - mean| in units of the standard error (infinite when SE is 0 and they differ).
  double se_multiple(double value) const {
    const double diff = std::fabs(value - mean);
    if (std_error > 0.0) return diff / std_error;
    return diff == 0.0 ? 0.0 : HUGE_VAL;
  }
};

/// Discounted Monte-Carlo claim prices plus the discounted terminal asset
/// value (whose mean should reproduce V e^{-q tau}).
struct MCClaimEstimates {
  MCEstimate senior;
  MCEstimate junior;
  MCEstimate equity;
  MCEstimate discounted_terminal;
};

struct GridSpec {
  double lower = 0.01;
  double upper = 1.5;
  double tolerance = 1e-6;

  void validate() const {
    detail::require(std::isfinite(lower) && std::isfinite(upper) && lower < upper, "grid requires lower < upper");
    detail::require(tolerance > 0.0, "grid tolerance must be positive");
  }
};

namespace detail {

/// Running mean and sum of squared deviations, mergeable across blocks.
struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double n_a = static_cast<double>(count);
    const double n_b = static_cast<double>(other.count);
    const double n = n_a + n_b;
    const double delta = other.mean - mean;
    mean += delta * n_b / n;
    m2 += other.m2 + delta * delta * n_a * n_b / n;
    count += other.count;
  }

  double std_error() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    return std::sqrt(m2 / (n - 1.0) / n);
  }
};

struct GbmTerminal {
  double start;
  double drift;
  double diffusion;

  explicit GbmTerminal(const CapitalStructure& cs)
      : start(cs.asset_value),
        drift((cs.rate - cs.dividend_yield - 0.5 * cs.volatility * cs.volatility) * cs.maturity),
        diffusion(cs.volatility * std::sqrt(cs.maturity)) {}

  double operator()(double z) const { return start * std::exp(drift + diffusion * z); }
};

// Sampling units (single paths, or antithetic pairs) are grouped into blocks
// of fixed size; block statistics are merged in block order, so the result
// does not depend on how many workers ran.
inline constexpr std::uint64_t kUnitsPerBlock = 1U << 14;

}  // namespace detail

/// Exact one-step GBM terminal values under the risk-neutral measure.
/// Antithetic paths come in consecutive pairs (Z, -Z) with Z drawn at the pair index.
inline std::vector<double> simulate_terminal_values(const CapitalStructure& cs, const MCConfig& mc) {
  cs.validate();
  mc.validate();
  const detail::GbmTerminal terminal(cs);
  std::vector<double> out(mc.path_count);
  if (mc.antithetic) {
    for (std::uint64_t pair = 0; pair < mc.path_count / 2; ++pair) {
      const double z = normal_at(mc.seed, pair);
      out[2 * pair] = terminal(z);
      out[2 * pair + 1] = terminal(-z);
    }
  } else {
    for (std::uint64_t i = 0; i < mc.path_count; ++i) {
      out[i] = terminal(normal_at(mc.seed, i));
    }
  }
  return out;
}

/// Discounted average payoff of each claim. The standard error treats each
/// antithetic pair average as one sample.
inline MCClaimEstimates mc_claim_values(const CapitalStructure& cs, const MCConfig& mc,
                                        unsigned worker_count = std::thread::hardware_concurrency()) {
  cs.validate();
  mc.validate();
  const detail::GbmTerminal terminal(cs);
  const std::uint64_t units = mc.antithetic ? mc.path_count / 2 : mc.path_count;
  const std::uint64_t blocks = (units + detail::kUnitsPerBlock - 1) / detail::kUnitsPerBlock;

  using BlockStats = std::array<detail::RunningStats, 4>;
  std::vector<BlockStats> per_block(blocks);

  auto run_block = [&](std::uint64_t block) {
    BlockStats stats{};
    const std::uint64_t begin = block * detail::kUnitsPerBlock;
    const std::uint64_t end = std::min(units, begin + detail::kUnitsPerBlock);
    for (std::uint64_t unit = begin; unit < end; ++unit) {
      const double z = normal_at(mc.seed, unit);
      const double v_up = terminal(z);
      const MaturityPayoffs up = payoffs_at_maturity(v_up, cs.senior_face, cs.junior_face);
      if (mc.antithetic) {
        const double v_down = terminal(-z);
        const MaturityPayoffs down = payoffs_at_maturity(v_down, cs.senior_face, cs.junior_face);
        stats[0].push(0.5 * (up.senior_payoff + down.senior_payoff));
        stats[1].push(0.5 * (up.junior_payoff + down.junior_payoff));
        stats[2].push(0.5 * (up.equity_payoff + down.equity_payoff));
        stats[3].push(0.5 * (v_up + v_down));
      } else {
        stats[0].push(up.senior_payoff);
        stats[1].push(up.junior_payoff);
        stats[2].push(up.equity_payoff);
        stats[3].push(v_up);
      }
    }
    per_block[block] = stats;
  };

  const auto workers = static_cast<std::uint64_t>(std::clamp<std::uint64_t>(worker_count, 1, blocks));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) run_block(b);
      });
    }
  }

  BlockStats total{};
  for (const BlockStats& block : per_block) {
    for (std::size_t k = 0; k < total.size(); ++k) total[k].merge(block[k]);
  }

  const double discount = std::exp(-cs.rate * cs.maturity);
  auto estimate = [&](const detail::RunningStats& s) {
    return MCEstimate{discount * s.mean, discount * s.std_error(), mc.path_count};
  };
  return {estimate(total[0]), estimate(total[1]), estimate(total[2]), estimate(total[3])};
}

/// Claim prices versus Monte-Carlo, in standard errors.
inline constexpr double kMcSeTolerance = 3.0;
/// Events rarer than about 3/N may never be sampled; the discounted face value
/// times that probability is added to the 3 SE band.
inline constexpr double kMcRareEventCount = 3.0;

/// |value - mean| / (SE + slack / 3), where slack covers unsampled tail
/// events; the check passes when this is at most 3.
inline double mc_error(const CapitalStructure& cs, double value, const MCEstimate& est) {
  const double slack = kMcRareEventCount * cs.total_face() * std::exp(-cs.rate * cs.maturity) /
                       static_cast<double>(est.path_count);
  const double diff = std::fabs(value - est.mean);
  const double scale = est.std_error + slack / kMcSeTolerance;
  if (scale > 0.0) return diff / scale;
  return diff == 0.0 ? 0.0 : HUGE_VAL;
}

/// Points in the coarse bracketing pass of `argmax_sigma_numeric`.
inline constexpr int kCoarseGridPoints = 64;

/// Numeric maximizer of the junior debt value over volatility.
///
/// A log-spaced coarse grid locates the best point; the neighbours on either
/// side bracket it for golden-section refinement. Returns absent when the
/// best grid point is an endpoint, i.e. no interior maximizer lies in
/// [grid.lower, grid.upper].
inline std::optional<double> argmax_sigma_numeric(const CapitalStructure& cs, const GridSpec& grid) {
  cs.validate();
  grid.validate();
  detail::require(grid.lower > 0.0, "grid lower bound must be positive");

  auto value_at = [&cs](double sigma) { return junior_debt_value(cs.with_volatility(sigma)); };

  std::array<double, kCoarseGridPoints> sigmas{};
  const double log_lo = std::log(grid.lower);
  const double log_step = (std::log(grid.upper) - log_lo) / (kCoarseGridPoints - 1);
  for (int i = 0; i < kCoarseGridPoints; ++i) {
    sigmas[i] = std::exp(log_lo + log_step * i);
  }
  sigmas.front() = grid.lower;
  sigmas.back() = grid.upper;

  // Far in the money the value is flat to the last few ulps; a rounding-level
  // gain is not a move.
  constexpr double noise = 8.0 * std::numeric_limits<double>::epsilon();
  int best = 0;
  double best_value = value_at(sigmas[0]);
  for (int i = 1; i < kCoarseGridPoints; ++i) {
    const double v = value_at(sigmas[i]);
    if (v > best_value + noise * std::fabs(best_value)) {
      best = i;
      best_value = v;
    }
  }
  if (best == 0 || best == kCoarseGridPoints - 1) {
    return std::nullopt;
  }
  return golden_section_maximize(value_at, sigmas[best - 1], sigmas[best + 1], grid.tolerance);
}

/// Central difference [B_J(sigma + h) - B_J(sigma - h)] / 2h.
inline double finite_diff_vega(const CapitalStructure& cs, double bump) {
  cs.validate();
  detail::require(bump > 0.0, "bump must be positive");
  if (cs.volatility - bump <= 0.0) {
    throw BumpTooLargeError("finite difference bump reaches non-positive volatility");
  }
  const double up = junior_debt_value(cs.with_volatility(cs.volatility + bump));
  const double down = junior_debt_value(cs.with_volatility(cs.volatility - bump));
  return (up - down) / (2.0 * bump);
}

/// Scale below which junior-vega comparisons switch from relative to absolute
/// error, as a fraction of V e^{-q tau} sqrt(tau). Far from the money the
/// vega underflows or drops below what a central difference can resolve.
inline constexpr double kVegaErrorFloor = 0.05;

/// |numeric - analytic| / max(|analytic|, kVegaErrorFloor * V e^{-q tau} sqrt(tau)).
inline double vega_error(const CapitalStructure& cs, double analytic, double numeric) {
  const double scale = kVegaErrorFloor * cs.asset_value * std::exp(-cs.dividend_yield * cs.maturity) *
                       std::sqrt(cs.maturity);
  return std::fabs(numeric - analytic) / std::max(std::fabs(analytic), scale);
}

}  // namespace subdebt

#endif
