#ifndef SUBDEBT_SUBDEBT_HPP
#define SUBDEBT_SUBDEBT_HPP

#include "subdebt/black_scholes.hpp"
#include "subdebt/claims.hpp"
#include "subdebt/errors.hpp"
#include "subdebt/golden_section.hpp"
#include "subdebt/normal.hpp"
#include "subdebt/oracle.hpp"
#include "subdebt/random.hpp"
#include "subdebt/reports.hpp"
#include "subdebt/risk_analysis.hpp"
#include "subdebt/scenario.hpp"
#include "subdebt/sweep_table.hpp"

#endif
