// Command-line surface for the lookback toolkit: transform adjusters between
// their four representations, run hedging strategies over price paths,
// compute upper prices, run the random-walk oracle, and calibrate evidence
// streams.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lookback/errors.hpp"
#include "lookback/io.hpp"
#include "lookback/quadrature.hpp"
#include "lookback/transforms.hpp"
#include "lookback/walk_oracle.hpp"

namespace {

using namespace lookback;

struct GlobalFlags {
  std::uint64_t seed = 1;
  int grid_n = 4096;
  double tol = 1e-9;
};

std::ostream& open_output(std::ofstream& file, const std::string& out_path) {
  if (out_path.empty()) return std::cout;
  file.open(out_path);
  if (!file) throw ParseError(out_path + ": cannot open for writing");
  return file;
}

int run_transform(const std::string& adjuster_path, const std::string& to,
                  std::optional<double> at, std::optional<double> at_x,
                  const GlobalFlags& flags) {
  Adjuster a = io::adjuster_from_file(adjuster_path);
  if (to == "measure") {
    DiscreteMeasure m = a.to_discrete(flags.grid_n > 0 ? flags.grid_n : 256);
    std::cout << io::adjuster_to_json(Adjuster::discrete(m)) << "\n";
    return 0;
  }
  if (!at.has_value())
    throw DomainError("transform: --at <x> is required for view evaluation");
  double x = *at;
  double v = 0.0;
  if (to == "spine")
    v = a.spine_value(x);
  else if (to == "tail")
    v = a.tail(x);
  else if (to == "asla")
    v = a.asla_value(x);
  else if (to == "ala")
    v = a.ala_value(x, at_x.value_or(x));
  else
    throw DomainError("transform: unknown target form '" + to + "'");
  std::cout << io::format_number(v) << "\n";
  return 0;
}

int run_hedge(const std::string& adjuster_path, const std::string& path_file,
              double capital, const std::string& out_path) {
  Adjuster a = io::adjuster_from_file(adjuster_path);
  PricePath path = io::path_from_file(path_file);
  auto trail = run_path(a, path, capital);
  std::ofstream file;
  io::write_audit_csv(open_output(file, out_path), trail);
  return 0;
}

int run_price(const std::string& payoff_path, double x0, std::string mode,
              double cash, std::optional<double> xstar,
              const GlobalFlags& flags) {
  io::PayoffSpec spec = io::payoff_from_file(payoff_path);
  if (mode.empty()) mode = spec.is_general ? "general" : "simple";
  PriceResult r;
  if (mode == "general") {
    MajorantConfig cfg;
    cfg.grid_n = flags.grid_n;
    r = price_general(spec.general, x0, cfg);
  } else if (mode == "simple") {
    if (spec.is_general)
      throw DomainError("price: this payoff needs --mode general");
    if (xstar.has_value())
      r = price_at_time(spec.simple, x0, *xstar);
    else if (cash > 0.0)
      r = price_with_cash(cash, spec.simple, x0);
    else
      r = price_simple(spec.simple, x0);
  } else {
    throw DomainError("price: unknown mode '" + mode + "'");
  }
  std::cout << io::price_result_to_json(r) << "\n";
  return 0;
}

int run_oracle(const std::string& family, double alpha, std::int64_t n,
               std::int64_t m, int mc_paths, const GlobalFlags& flags) {
  Adjuster a = family == "log" ? Adjuster::log_family(alpha)
                               : Adjuster::power(alpha);
  if (family != "log" && family != "power")
    throw DomainError("oracle: family must be 'power' or 'log'");
  WalkSpec spec(n, m);
  ExpectationInterval interval = expected_payoff(a, spec);
  double target = a.asla_integral();
  double tol = std::max(flags.tol, 10.0 / static_cast<double>(n));
  bool pass = std::abs(interval.midpoint() - target) <= tol;

  nlohmann::json j;
  j["family"] = family;
  j["N"] = n;
  j["M"] = m;
  j["expectation_lo"] = interval.lo;
  j["expectation_hi"] = interval.hi;
  j["target"] = target;
  j["pass"] = pass;
  if (mc_paths > 0) {
    SupermartingaleReport rep =
        supermartingale_check(a, spec, mc_paths, flags.seed);
    nlohmann::json mc;
    mc["seed"] = rep.seed;
    mc["paths"] = rep.n_paths;
    mc["horizon"] = rep.horizon;
    mc["mean_terminal"] = rep.mean_terminal;
    mc["standard_error"] = rep.standard_error;
    mc["mean_ok"] = rep.mean_ok;
    mc["floor_violations"] = rep.floor_violations;
    j["supermartingale"] = std::move(mc);
    if (!rep.mean_ok || rep.floor_violations > 0) j["pass"] = false;
  }
  std::cout << j.dump() << "\n";
  return j["pass"].get<bool>() ? 0 : 1;
}

int run_calibrate(const std::string& adjuster_path, double cash,
                  const std::string& stream_file, const std::string& out_path) {
  Adjuster a = io::adjuster_from_file(adjuster_path);
  EvidenceStream stream = io::stream_from_file(stream_file);
  CalibratedStream result = calibrate_stream(a, cash, stream);
  std::ofstream file;
  io::write_calibrated_csv(open_output(file, out_path), result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probability-free lookback hedging toolkit"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--seed", flags.seed, "PRNG seed for randomized reports");
  app.add_option("--grid-n", flags.grid_n, "grid size for solvers/discretizers");
  app.add_option("--tol", flags.tol, "tolerance for pass/fail style checks");

  auto* transform = app.add_subcommand(
      "transform", "evaluate an adjuster view or convert representations");
  std::string t_adjuster, t_to;
  std::optional<double> t_at, t_x;
  transform->add_option("--adjuster", t_adjuster, "adjuster JSON file")
      ->required();
  transform
      ->add_option("--to", t_to, "target: spine|tail|asla|ala|measure")
      ->required();
  transform->add_option("--at", t_at, "evaluation point (running max)");
  transform->add_option("--x", t_x, "current price for --to ala");

  auto* hedge = app.add_subcommand("hedge", "run the strategy over a path");
  std::string h_adjuster, h_path, h_out;
  double h_capital = 1.0;
  hedge->add_option("--adjuster", h_adjuster, "adjuster JSON file")->required();
  hedge->add_option("--path", h_path, "price path CSV (t,price)")->required();
  hedge->add_option("--capital", h_capital, "start capital");
  hedge->add_option("--out", h_out, "output CSV (default stdout)");

  auto* price = app.add_subcommand("price", "upper price of a payoff");
  std::string p_payoff, p_mode;
  double p_x0 = 1.0, p_cash = 0.0;
  std::optional<double> p_xstar;
  price->add_option("--payoff", p_payoff, "payoff JSON file")->required();
  price->add_option("--x0", p_x0, "initial price")->required();
  price->add_option("--mode", p_mode, "simple|general (default by payoff)");
  price->add_option("--cash", p_cash, "cash units added to the payoff");
  price->add_option("--xstar", p_xstar,
                    "price at an intermediate state with this running max");

  auto* oracle = app.add_subcommand("oracle", "random-walk expectation oracle");
  std::string o_family = "power";
  double o_alpha = 0.5;
  std::int64_t o_n = 1000, o_m = 0;
  int o_paths = 0;
  oracle->add_option("--family", o_family, "power|log");
  oracle->add_option("--alpha", o_alpha, "family parameter");
  oracle->add_option("--n", o_n, "walk step denominator N");
  oracle->add_option("--m", o_m, "cap level (default 10^4 N)");
  oracle->add_option("--paths", o_paths, "Monte Carlo paths (0 = skip)");

  auto* calibrate =
      app.add_subcommand("calibrate", "insure an evidence stream");
  std::string c_adjuster, c_stream, c_out;
  double c_cash = 0.0;
  calibrate->add_option("--adjuster", c_adjuster, "adjuster JSON file")
      ->required();
  calibrate->add_option("--cash", c_cash, "cash fraction in [0,1)");
  calibrate->add_option("--stream", c_stream, "capital CSV (t,capital)")
      ->required();
  calibrate->add_option("--out", c_out, "output CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (transform->parsed())
      return run_transform(t_adjuster, t_to, t_at, t_x, flags);
    if (hedge->parsed()) return run_hedge(h_adjuster, h_path, h_capital, h_out);
    if (price->parsed())
      return run_price(p_payoff, p_x0, p_mode, p_cash, p_xstar, flags);
    if (oracle->parsed()) {
      if (o_m == 0) o_m = 10000 * o_n;
      return run_oracle(o_family, o_alpha, o_n, o_m, o_paths, flags);
    }
    if (calibrate->parsed())
      return run_calibrate(c_adjuster, c_cash, c_stream, c_out);
  } catch (const ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return 2;
  } catch (const AccuracyError& e) {
    std::cerr << "error: accuracy: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
