#include "lookback/evidence.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lookback/errors.hpp"
#include "lookback/strategy.hpp"

namespace lookback {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CalibratedStream calibrate_stream(const Adjuster& adjuster, double cash,
                                  const EvidenceStream& stream) {
  if (!(cash >= 0.0) || !(cash < 1.0))
    throw DomainError("calibrate_stream: cash must lie in [0, 1)");
  if (stream.capitals.empty() || stream.capitals.front() != 1.0)
    throw DomainError("calibrate_stream: stream must start at capital 1");

  const Adjuster effective =
      cash > 0.0 ? Adjuster::cash_mix(cash, adjuster) : adjuster;

  // the scaled view F must keep F / (1 - cash) inside the unit budget
  double scaled = effective.asla_integral() / (1.0 - cash);
  if (scaled > 1.0 + 1e-9)
    throw NotAnSlaError(
        "calibrate_stream: F/(1-c) integrates to " + std::to_string(scaled) +
            " > 1",
        scaled);

  CalibratedStream out;
  StrategyState s = engine_start(effective);

  auto emit = [&](std::uint64_t t, double k, double k_star, double position,
                  double calibrated) {
    CalibratedRecord r;
    r.t = t;
    r.capital = k;
    r.running_max = k_star;
    r.position = position;
    r.calibrated = calibrated;
    double cash_leg = cash == 0.0 ? 0.0 : cash * k;  // avoid 0 * inf
    r.floor = std::isinf(k_star)
                  ? cash_leg + effective.asla_limit()
                  : cash_leg + (1.0 - cash) * adjuster.asla_value(k_star);
    out.records.push_back(r);
    return r;
  };

  emit(0, 1.0, 1.0, s.position, 1.0);
  for (std::size_t t = 1; t < stream.capitals.size(); ++t) {
    double k = stream.capitals[t];
    if (!(k >= 0.0))
      throw DomainError("calibrate_stream: capitals must be >= 0");
    if (out.infinite_branch) {
      emit(t, k, kInf, 0.0, kInf);
      continue;
    }
    if (out.frozen) {
      emit(t, k, out.records.back().running_max, 0.0,
           out.records.back().calibrated);
      continue;
    }
    if (std::isinf(k)) {
      // first infinite entry: branch on the live position
      if (s.position > 0.0) {
        out.infinite_branch = true;
        emit(t, k, kInf, s.position, kInf);
      } else {
        out.frozen = true;
        emit(t, k, s.y_star, 0.0, s.capital);
      }
      continue;
    }
    double applied = s.position;
    s = engine_step(effective, s, k);
    emit(t, k, s.y_star, applied, s.capital);
  }
  return out;
}

std::function<double(double)> bet_transform(
    const std::function<double(double)>& f_t, double k_prev,
    double k_prime_prev, double p_t) {
  if (std::isinf(k_prev))
    throw DomainError("bet_transform: previous capital must be finite");
  if (!(p_t >= 0.0) || p_t > 1.0)
    throw DomainError("bet_transform: position must lie in [0, 1]");
  if (k_prime_prev < p_t * k_prev - 1e-12 * std::max(1.0, k_prime_prev))
    throw DomainError(
        "bet_transform: K' below p*K; the bet could go negative");
  return [f_t, k_prev, k_prime_prev, p_t](double x) {
    return k_prime_prev + p_t * (f_t(x) - k_prev);
  };
}

}  // namespace lookback
