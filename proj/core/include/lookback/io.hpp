#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lookback/adjuster.hpp"
#include "lookback/evidence.hpp"
#include "lookback/pricing.hpp"
#include "lookback/strategy.hpp"

namespace lookback {
namespace io {

/// Decimal text format used in every emitted artifact: 12 significant
/// digits, `inf` for infinity. Identical inputs produce byte-identical files.
std::string format_number(double v);
double parse_number(const std::string& token);  // accepts "inf"

// --- adjuster specification (JSON) ---
// {"family":"power","alpha":0.5,"cash":0.0}
// {"family":"log","alpha":1.0}
// {"family":"threshold","u":2.0}
// {"family":"discrete","atoms":[[2.0,0.5],[4.0,0.25]],"mass_infinity":0.25}
// {"family":"cashmix","c":0.3,"inner":{...}}
// Violations are reported with the offending JSON path in the message.
Adjuster adjuster_from_json(const std::string& text);
Adjuster adjuster_from_file(const std::string& path);
std::string adjuster_to_json(const Adjuster& a);

// --- payoff specification (JSON) ---
// {"payoff":"constant","k":1.0}
// {"payoff":"threshold_call","u":2.0,"scale":1.0}
// {"payoff":"capped","cap":2.718}
// {"payoff":"power","beta":0.5,"scale":1.0}
// {"payoff":"tabulated","grid":[...],"values":[...],"extension":"flat|linear"}
// {"payoff":"fixed_strike","strike":1.0,"inner":{...}}
// wrappers for the two-variable pricer:
// {"payoff":"simple_lift","inner":{...}}
// {"payoff":"floating_strike_put","inner":{...}}
// {"payoff":"tabulated2d","xstar_grid":[...],"rel_grid":[...],"values":[[...]]}
struct PayoffSpec {
  bool is_general = false;
  SimplePayoff simple = SimplePayoff::constant(0.0);
  GeneralPayoff general = GeneralPayoff::custom({});
};
PayoffSpec payoff_from_json(const std::string& text);
PayoffSpec payoff_from_file(const std::string& path);

std::string price_result_to_json(const PriceResult& r);

// --- price paths and capital streams (CSV) ---
// input:  header "t,price" (or "t,capital"), integer t ascending from 0
PricePath path_from_csv(std::istream& in);
PricePath path_from_file(const std::string& path);
EvidenceStream stream_from_csv(std::istream& in);
EvidenceStream stream_from_file(const std::string& path);

// output: header "t,price,running_max,position,capital,ala_floor,strong_floor"
void write_audit_csv(std::ostream& out, const std::vector<CapitalRecord>& trail);
// output: header "t,capital,running_max,calibrated,floor"
void write_calibrated_csv(std::ostream& out, const CalibratedStream& s);

}  // namespace io
}  // namespace lookback
