#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "phasedet/io.hpp"

namespace phasedet {

enum class TrialResult : std::uint8_t { Correct = 0, Wrong = 1, Erasure = 2 };

struct TrialOutcome {
  TrialResult result = TrialResult::Correct;
  /// Successive detection only: stage that failed (0 when none).
  int stage = 0;
};

struct SimReport {
  std::string scheme_id;
  std::string channel;
  std::uint64_t trials = 0;
  /// Wrong phase or e.
  std::uint64_t errors = 0;
  /// The subset of errors where the detector answered e.
  std::uint64_t erasures = 0;
  double rate = 0.0;
  /// 1.96 sqrt(rate (1 - rate) / trials).
  double ci95 = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  /// Per-stage failure counts for successive MAC detection (u, x2, v).
  std::vector<std::uint64_t> stage_errors;

  Json to_json(bool with_time = true) const;
  static std::string csv_header();
  std::string csv_line(bool with_time = true) const;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};

WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z = 1.96);

using TrialFn = std::function<TrialOutcome(Rng& rng, std::uint64_t index)>;

/// Runs trial i with Rng(trial_seed(seed, i)) across `workers` threads
/// (0 picks the hardware count). The result vector is indexed by trial.
std::vector<TrialOutcome> run_trials(std::uint64_t trials, std::uint64_t seed, const TrialFn& trial,
                                     unsigned workers = 0);

/// Tallies outcomes into a report (seconds left at 0).
SimReport summarize(const std::vector<TrialOutcome>& outcomes, std::uint64_t seed);

/// Uniform random phase(s), one channel use per window symbol, detection,
/// comparison. The channel must match the scheme's input alphabet(s).
SimReport simulate_bundle(const SchemeBundle& bundle, const ChannelSpec& channel, std::uint64_t trials,
                          std::uint64_t seed, unsigned workers = 0);

/// Fixed-scheme point-to-point simulation with an arbitrary detector.
SimReport simulate_p2p(const Scheme& scheme, const Dmc& channel,
                       const std::function<DetectionResult(std::span<const Symbol>)>& detect, std::uint64_t trials,
                       std::uint64_t seed, unsigned workers = 0);

}  // namespace phasedet
