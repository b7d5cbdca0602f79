#include "lookback/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "lookback/errors.hpp"

namespace lookback {
namespace io {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double parse_number(const std::string& token) {
  if (token == "inf" || token == "+inf" || token == "Inf")
    return std::numeric_limits<double>::infinity();
  if (token == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    double v = std::stod(token, &pos);
    while (pos < token.size() && std::isspace(
               static_cast<unsigned char>(token[pos])))
      ++pos;
    if (pos != token.size())
      throw ParseError("trailing characters in number '" + token + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw ParseError("not a number: '" + token + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("number out of range: '" + token + "'");
  }
}

namespace {

double require_number(const json& j, const std::string& path,
                      const std::string& field) {
  if (!j.contains(field))
    throw ParseError(path + ": missing field '" + field + "'");
  const json& v = j.at(field);
  if (!v.is_number())
    throw ParseError(path + "." + field + ": expected a number");
  return v.get<double>();
}

std::string require_string(const json& j, const std::string& path,
                           const std::string& field) {
  if (!j.contains(field))
    throw ParseError(path + ": missing field '" + field + "'");
  const json& v = j.at(field);
  if (!v.is_string())
    throw ParseError(path + "." + field + ": expected a string");
  return v.get<std::string>();
}

Adjuster adjuster_from_json_node(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  std::string family = require_string(j, path, "family");
  try {
    if (family == "power") {
      double alpha = require_number(j, path, "alpha");
      double cash = j.contains("cash") ? require_number(j, path, "cash") : 0.0;
      return Adjuster::power(alpha, cash);
    }
    if (family == "log") {
      return Adjuster::log_family(require_number(j, path, "alpha"));
    }
    if (family == "threshold") {
      return Adjuster::threshold(require_number(j, path, "u"));
    }
    if (family == "discrete") {
      if (!j.contains("atoms") || !j.at("atoms").is_array())
        throw ParseError(path + ".atoms: expected an array of [u, mass] pairs");
      std::vector<Atom> atoms;
      std::size_t idx = 0;
      for (const json& e : j.at("atoms")) {
        std::string apath = path + ".atoms[" + std::to_string(idx++) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
            !e[1].is_number())
          throw ParseError(apath + ": expected [location, mass]");
        atoms.push_back({e[0].get<double>(), e[1].get<double>()});
      }
      double mi = j.contains("mass_infinity")
                      ? require_number(j, path, "mass_infinity")
                      : 0.0;
      return Adjuster::discrete(DiscreteMeasure(std::move(atoms), mi));
    }
    if (family == "cashmix") {
      double c = require_number(j, path, "c");
      if (!j.contains("inner"))
        throw ParseError(path + ": missing field 'inner'");
      return Adjuster::cash_mix(
          c, adjuster_from_json_node(j.at("inner"), path + ".inner"));
    }
  } catch (const DomainError& e) {
    throw ParseError(path + ": " + e.what());
  }
  throw ParseError(path + ".family: unknown family '" + family + "'");
}

json adjuster_to_json_node(const Adjuster& a) {
  json j;
  std::visit(
      [&j](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerFamily>) {
          j["family"] = "power";
          j["alpha"] = f.alpha;
          j["cash"] = f.cash;
        } else if constexpr (std::is_same_v<T, LogFamily>) {
          j["family"] = "log";
          j["alpha"] = f.alpha;
        } else if constexpr (std::is_same_v<T, ThresholdFamily>) {
          j["family"] = "threshold";
          j["u"] = f.u;
        } else if constexpr (std::is_same_v<T, DiscreteFamily>) {
          j["family"] = "discrete";
          json atoms = json::array();
          for (const Atom& a2 : f.measure.atoms())
            atoms.push_back({a2.location, a2.mass});
          j["atoms"] = std::move(atoms);
          j["mass_infinity"] = f.measure.mass_infinity();
        } else {
          j["family"] = "cashmix";
          j["c"] = f.c;
          j["inner"] = adjuster_to_json_node(*f.inner);
        }
      },
      a.family());
  return j;
}

json parse_text(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw ParseError(what + ": malformed JSON");
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SimplePayoff simple_payoff_from_node(const json& j, const std::string& path) {
  std::string kind = require_string(j, path, "payoff");
  try {
    if (kind == "constant")
      return SimplePayoff::constant(require_number(j, path, "k"));
    if (kind == "threshold_call") {
      double scale =
          j.contains("scale") ? require_number(j, path, "scale") : 1.0;
      return SimplePayoff::threshold_call(require_number(j, path, "u"), scale);
    }
    if (kind == "capped")
      return SimplePayoff::capped(require_number(j, path, "cap"));
    if (kind == "power") {
      double scale =
          j.contains("scale") ? require_number(j, path, "scale") : 1.0;
      return SimplePayoff::power_law(require_number(j, path, "beta"), scale);
    }
    if (kind == "tabulated") {
      if (!j.contains("grid") || !j.contains("values"))
        throw ParseError(path + ": tabulated payoff needs grid and values");
      std::vector<double> grid = j.at("grid").get<std::vector<double>>();
      std::vector<double> values = j.at("values").get<std::vector<double>>();
      bool linear = false;
      if (j.contains("extension")) {
        std::string e = require_string(j, path, "extension");
        if (e == "linear")
          linear = true;
        else if (e != "flat")
          throw ParseError(path + ".extension: expected 'flat' or 'linear'");
      }
      return SimplePayoff::tabulated(std::move(grid), std::move(values),
                                     linear);
    }
    if (kind == "fixed_strike") {
      if (!j.contains("inner"))
        throw ParseError(path + ": missing field 'inner'");
      return SimplePayoff::fixed_strike(
          simple_payoff_from_node(j.at("inner"), path + ".inner"),
          require_number(j, path, "strike"));
    }
  } catch (const DomainError& e) {
    throw ParseError(path + ": " + e.what());
  }
  throw ParseError(path + ".payoff: unknown payoff '" + kind + "'");
}

}  // namespace

Adjuster adjuster_from_json(const std::string& text) {
  return adjuster_from_json_node(parse_text(text, "adjuster"), "$");
}

Adjuster adjuster_from_file(const std::string& path) {
  try {
    return adjuster_from_json(slurp(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string adjuster_to_json(const Adjuster& a) {
  return adjuster_to_json_node(a).dump();
}

PayoffSpec payoff_from_json(const std::string& text) {
  json j = parse_text(text, "payoff");
  if (!j.is_object()) throw ParseError("$: expected an object");
  std::string kind = require_string(j, "$", "payoff");
  PayoffSpec spec;
  if (kind == "simple_lift" || kind == "floating_strike_put") {
    if (!j.contains("inner")) throw ParseError("$: missing field 'inner'");
    SimplePayoff inner = simple_payoff_from_node(j.at("inner"), "$.inner");
    spec.is_general = true;
    spec.general = kind == "simple_lift"
                       ? GeneralPayoff::simple_lift(inner)
                       : GeneralPayoff::floating_strike_put(inner);
    spec.simple = inner;
    return spec;
  }
  if (kind == "tabulated2d") {
    Tabulated2d t;
    try {
      t.xstar_grid = j.at("xstar_grid").get<std::vector<double>>();
      t.rel_grid = j.at("rel_grid").get<std::vector<double>>();
      t.values = j.at("values").get<std::vector<std::vector<double>>>();
    } catch (const json::exception&) {
      throw ParseError("$: tabulated2d needs xstar_grid, rel_grid, values");
    }
    try {
      spec.general = GeneralPayoff::tabulated(std::move(t));
    } catch (const DomainError& e) {
      throw ParseError(std::string("$: ") + e.what());
    }
    spec.is_general = true;
    return spec;
  }
  spec.simple = simple_payoff_from_node(j, "$");
  spec.general = GeneralPayoff::simple_lift(spec.simple);
  return spec;
}

PayoffSpec payoff_from_file(const std::string& path) {
  try {
    return payoff_from_json(slurp(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string price_result_to_json(const PriceResult& r) {
  json j;
  j["value"] = std::isinf(r.value) ? json("inf") : json(r.value);
  j["grid_n"] = r.grid_n;
  j["residual"] = r.residual;
  json knots = json::array();
  if (!r.hedge_knots.empty()) {
    for (std::size_t i = 0; i < r.hedge_knots.size(); ++i)
      knots.push_back(
          {r.hedge_knots.knots()[i], r.hedge_knots.values()[i]});
  }
  j["hedge_knots"] = std::move(knots);
  return j.dump();
}

namespace {

std::vector<std::pair<std::uint64_t, double>> rows_from_csv(
    std::istream& in, const std::string& value_header) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t," + value_header)
    throw ParseError("csv: expected header 't," + value_header + "', got '" +
                     line + "'");
  std::vector<std::pair<std::uint64_t, double>> rows;
  std::uint64_t expected = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("csv line " + std::to_string(line_no) +
                       ": expected 't,value'");
    std::string t_tok = line.substr(0, comma);
    std::string v_tok = line.substr(comma + 1);
    double t = parse_number(t_tok);
    if (t != static_cast<double>(expected))
      throw ParseError("csv line " + std::to_string(line_no) +
                       ": t must ascend from 0 without gaps");
    rows.emplace_back(expected, parse_number(v_tok));
    ++expected;
  }
  if (rows.empty()) throw ParseError("csv: no data rows");
  return rows;
}

}  // namespace

PricePath path_from_csv(std::istream& in) {
  PricePath p;
  for (auto& [t, v] : rows_from_csv(in, "price")) p.prices.push_back(v);
  return p;
}

PricePath path_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return path_from_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

EvidenceStream stream_from_csv(std::istream& in) {
  EvidenceStream s;
  for (auto& [t, v] : rows_from_csv(in, "capital")) s.capitals.push_back(v);
  return s;
}

EvidenceStream stream_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return stream_from_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_audit_csv(std::ostream& out,
                     const std::vector<CapitalRecord>& trail) {
  out << "t,price,running_max,position,capital,ala_floor,strong_floor\n";
  for (const CapitalRecord& r : trail) {
    char tbuf[32];
    std::snprintf(tbuf, sizeof(tbuf), "%" PRIu64, r.t);
    out << tbuf << ',' << format_number(r.price) << ','
        << format_number(r.running_max) << ',' << format_number(r.position)
        << ',' << format_number(r.capital) << ','
        << format_number(r.ala_floor) << ',' << format_number(r.strong_floor)
        << '\n';
  }
}

void write_calibrated_csv(std::ostream& out, const CalibratedStream& s) {
  out << "t,capital,running_max,calibrated,floor\n";
  for (const CalibratedRecord& r : s.records) {
    char tbuf[32];
    std::snprintf(tbuf, sizeof(tbuf), "%" PRIu64, r.t);
    out << tbuf << ',' << format_number(r.capital) << ','
        << format_number(r.running_max) << ',' << format_number(r.calibrated)
        << ',' << format_number(r.floor) << '\n';
  }
}

}  // namespace io
}  // namespace lookback
