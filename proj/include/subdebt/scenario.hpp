#ifndef SUBDEBT_SCENARIO_HPP
#define SUBDEBT_SCENARIO_HPP

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <system_error>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "subdebt/claims.hpp"
#include "subdebt/errors.hpp"
#include "subdebt/oracle.hpp"

namespace subdebt {

/// One named capital structure with its initial risk level and optional
/// Monte-Carlo settings.
///
/// File format (INI-style; whole-line '#' or ';' comments only):
///
///     [scenario]
///     name = distressed
///     asset_value = 62
///     senior_face = 60
///     junior_face = 10
///     sigma = 0.10
///     # optional, defaults to sigma
///     initial_sigma = 0.10
///     maturity = 1
///     rate = 0.01
///     # optional, defaults to 0
///     dividend_yield = 0
///
///     # optional section
///     [monte_carlo]
///     paths = 1000000
///     seed = 1
///     antithetic = true
///
/// Volatilities and rates are decimals. Unknown sections or keys are rejected.
struct Scenario {
  std::string name;
  CapitalStructure structure;
  double initial_sigma = 0.0;
  std::optional<std::uint64_t> paths;
  std::optional<std::uint64_t> seed;
  std::optional<bool> antithetic;

  void validate() const {
    structure.validate();
    detail::require(std::isfinite(initial_sigma) && initial_sigma > 0.0, "initial_sigma must be positive");
  }

  MCConfig mc_config(MCConfig defaults = {}) const {
    if (paths) defaults.path_count = *paths;
    if (seed) defaults.seed = *seed;
    if (antithetic) defaults.antithetic = *antithetic;
    return defaults;
  }
};

namespace detail {

inline double parse_real(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigParseError("'" + key + "': not a decimal number: '" + text + "'");
  }
  return value;
}

inline std::uint64_t parse_count(const std::string& key, const std::string& text) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigParseError("'" + key + "': not an unsigned integer: '" + text + "'");
  }
  return value;
}

inline bool parse_flag(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigParseError("'" + key + "': not a boolean: '" + text + "'");
}

inline void reject_unknown(const boost::property_tree::ptree& section, const std::string& section_name,
                           const std::set<std::string>& allowed) {
  for (const auto& [key, child] : section) {
    if (!allowed.contains(key)) {
      throw ConfigParseError("unknown key '" + key + "' in [" + section_name + "]");
    }
  }
}

}  // namespace detail

/// Parses a scenario. Throws ConfigParseError on malformed text and
/// InvalidInputError when the values violate the model's invariants.
inline Scenario parse_scenario(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree root;
  try {
    pt::ini_parser::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigParseError(e.what());
  }

  for (const auto& [key, child] : root) {
    if (child.empty()) {
      throw ConfigParseError("key '" + key + "' outside of a section");
    }
    if (key != "scenario" && key != "monte_carlo") {
      throw ConfigParseError("unknown section [" + key + "]");
    }
  }

  const auto section = root.get_child_optional("scenario");
  if (!section) {
    throw ConfigParseError("missing [scenario] section");
  }
  detail::reject_unknown(*section, "scenario",
                         {"name", "asset_value", "senior_face", "junior_face", "sigma", "initial_sigma", "maturity",
                          "rate", "dividend_yield"});

  auto required = [&](const std::string& key) {
    const auto text = section->get_optional<std::string>(key);
    if (!text) throw ConfigParseError("missing required key '" + key + "'");
    return detail::parse_real(key, *text);
  };
  auto optional_real = [&](const std::string& key) -> std::optional<double> {
    const auto text = section->get_optional<std::string>(key);
    if (!text) return std::nullopt;
    return detail::parse_real(key, *text);
  };

  Scenario s;
  s.name = section->get<std::string>("name", "unnamed");
  s.structure.asset_value = required("asset_value");
  s.structure.senior_face = required("senior_face");
  s.structure.junior_face = required("junior_face");
  s.structure.volatility = required("sigma");
  s.structure.maturity = required("maturity");
  s.structure.rate = required("rate");
  s.structure.dividend_yield = optional_real("dividend_yield").value_or(0.0);
  s.initial_sigma = optional_real("initial_sigma").value_or(s.structure.volatility);

  if (const auto mc = root.get_child_optional("monte_carlo")) {
    detail::reject_unknown(*mc, "monte_carlo", {"paths", "seed", "antithetic"});
    if (const auto v = mc->get_optional<std::string>("paths")) s.paths = detail::parse_count("paths", *v);
    if (const auto v = mc->get_optional<std::string>("seed")) s.seed = detail::parse_count("seed", *v);
    if (const auto v = mc->get_optional<std::string>("antithetic")) s.antithetic = detail::parse_flag("antithetic", *v);
  }

  s.validate();
  if (s.paths || s.antithetic) s.mc_config().validate();
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigParseError("cannot open scenario file '" + path + "'");
  }
  return parse_scenario(in);
}

}  // namespace subdebt

#endif
