#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "apf/errors.hpp"

namespace apf {

struct SwitchEvent {
  double time;
  int from_mode;
  int to_mode;
};

/// Right-continuous piecewise-constant mode selector on [0, horizon] with a
/// dwell-time guarantee: consecutive switch times differ by at least the
/// dwell time, and a switch to the same mode is normalized away.
class SwitchingSignal {
 public:
  /// Builds from explicit data. `switch_modes` holds the post-switch mode per
  /// switch instant; the full mode sequence is {initial_mode} + switch_modes.
  /// Generated signals always start with a full dwell before the first
  /// switch; explicit data may start mid-dwell only with the override flag.
  SwitchingSignal(int num_modes, double dwell_time, double horizon,
                  int initial_mode, std::vector<double> switch_times,
                  std::vector<int> switch_modes,
                  bool allow_short_first_dwell = false)
      : num_modes_(num_modes), dwell_time_(dwell_time), horizon_(horizon) {
    if (num_modes < 1) throw ConfigError("signal: need at least one mode");
    if (!(dwell_time > 0.0)) throw ConfigError("signal: dwell time must be > 0");
    if (!(horizon > 0.0)) throw ConfigError("signal: horizon must be > 0");
    if (switch_times.size() != switch_modes.size())
      throw ConfigError("signal: one post-switch mode per switch time required");
    check_mode(initial_mode);
    for (int m : switch_modes) check_mode(m);

    // normalize: drop switches that do not change the mode
    times_.reserve(switch_times.size());
    modes_.reserve(switch_modes.size() + 1);
    modes_.push_back(initial_mode);
    for (std::size_t i = 0; i < switch_times.size(); ++i) {
      if (switch_modes[i] == modes_.back()) continue;
      times_.push_back(switch_times[i]);
      modes_.push_back(switch_modes[i]);
    }
    for (std::size_t i = 0; i < times_.size(); ++i) {
      if (!(times_[i] > 0.0) || !std::isfinite(times_[i]))
        throw ConfigError("signal: switch times must be finite and > 0");
      if (times_[i] >= horizon)
        throw ConfigError("signal: switch at t=" + std::to_string(times_[i]) +
                          " is not strictly inside (0, horizon)");
      if (i > 0 && times_[i] - times_[i - 1] < dwell_time - 1e-12)
        throw ConfigError("signal: gap " + std::to_string(times_[i] - times_[i - 1]) +
                          " below dwell time " + std::to_string(dwell_time));
    }
    if (!times_.empty() && times_[0] < dwell_time - 1e-12 && !allow_short_first_dwell)
      throw ConfigError("signal: first switch inside the initial dwell "
                        "(pass the override to allow starting mid-dwell)");
  }

  /// Seed-deterministic generator: inter-switch gaps are
  /// dwell_time + Exponential(mean_extra_dwell), the next mode is uniform
  /// over the other modes. Sampling uses raw mt19937_64 output so identical
  /// seeds give identical signals everywhere.
  static SwitchingSignal random(int num_modes, double dwell_time, double horizon,
                                std::uint64_t seed, double mean_extra_dwell) {
    if (num_modes < 1) throw ConfigError("signal: need at least one mode");
    if (!(dwell_time > 0.0) || !(horizon > 0.0))
      throw ConfigError("signal: dwell time and horizon must be > 0");
    if (!(mean_extra_dwell >= 0.0))
      throw ConfigError("signal: mean extra dwell must be >= 0");
    std::mt19937_64 gen(seed);
    auto u01 = [&gen]() { return (gen() >> 11) * 0x1.0p-53; };
    std::vector<double> times;
    std::vector<int> modes;
    int current = 0;
    double t = 0.0;
    if (num_modes > 1) {
      for (;;) {
        t += dwell_time + mean_extra_dwell * (-std::log1p(-u01()));
        if (t >= horizon) break;
        int r = static_cast<int>(u01() * (num_modes - 1));
        r = std::min(r, num_modes - 2);
        const int next = r < current ? r : r + 1;
        times.push_back(t);
        modes.push_back(next);
        current = next;
      }
    }
    return SwitchingSignal(num_modes, dwell_time, horizon, 0, std::move(times),
                           std::move(modes));
  }

  /// Round-robin 0,1,...,l,0,... with a switch every `period`; switches land
  /// strictly inside (0, horizon).
  static SwitchingSignal periodic(int num_modes, double period, double horizon,
                                  double dwell_time) {
    if (!(period > 0.0)) throw ConfigError("signal: period must be > 0");
    if (period < dwell_time - 1e-12)
      throw ConfigError("signal: period below dwell time");
    std::vector<double> times;
    std::vector<int> modes;
    int mode = 0;
    for (int k = 1; k * period < horizon; ++k) {
      mode = (mode + 1) % num_modes;
      times.push_back(k * period);
      modes.push_back(mode);
    }
    return SwitchingSignal(num_modes, dwell_time, horizon, 0, std::move(times),
                           std::move(modes));
  }

  /// Active mode at t; right-continuous, so at a switch instant this is the
  /// post-switch mode.
  int mode_at(double t) const {
    if (!(t >= 0.0) || !(t <= horizon_ + 1e-12))
      throw DomainError("signal: query at t=" + std::to_string(t) +
                        " outside [0, " + std::to_string(horizon_) + "]");
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    return modes_[static_cast<std::size_t>(it - times_.begin())];
  }

  /// Switch events with t0 < s <= t1 (open-left, closed-right), ascending.
  std::vector<SwitchEvent> switches_in(double t0, double t1) const {
    if (!(t0 >= 0.0) || !(t1 >= t0) || !(t1 <= horizon_ + 1e-12))
      throw DomainError("signal: switches_in interval outside [0, horizon]");
    const auto lo = std::upper_bound(times_.begin(), times_.end(), t0);
    const auto hi = std::upper_bound(times_.begin(), times_.end(), t1);
    std::vector<SwitchEvent> out;
    out.reserve(static_cast<std::size_t>(hi - lo));
    for (auto it = lo; it != hi; ++it) {
      const std::size_t i = static_cast<std::size_t>(it - times_.begin());
      out.push_back({*it, modes_[i], modes_[i + 1]});
    }
    return out;
  }

  int num_modes() const { return num_modes_; }
  double dwell_time() const { return dwell_time_; }
  double horizon() const { return horizon_; }
  int initial_mode() const { return modes_.front(); }
  const std::vector<double>& switch_times() const { return times_; }
  const std::vector<int>& mode_sequence() const { return modes_; }

 private:
  void check_mode(int m) const {
    if (m < 0 || m >= num_modes_)
      throw ConfigError("signal: mode index " + std::to_string(m) +
                        " outside {0,...," + std::to_string(num_modes_ - 1) + "}");
  }

  int num_modes_;
  double dwell_time_;
  double horizon_;
  std::vector<double> times_;
  std::vector<int> modes_;  // one longer than times_
};

}  // namespace apf
