#include "phasedet/simulate.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "phasedet/errors.hpp"

namespace phasedet {

namespace {

TrialOutcome judge(const DetectionResult& got, Phase truth) {
  if (!got) return {TrialResult::Erasure, 0};
  return {*got == truth ? TrialResult::Correct : TrialResult::Wrong, 0};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<TrialOutcome> run_trials(std::uint64_t trials, std::uint64_t seed, const TrialFn& trial, unsigned workers) {
  std::vector<TrialOutcome> out(trials);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers > trials) workers = static_cast<unsigned>(std::max<std::uint64_t>(1, trials));
  auto body = [&](unsigned w) {
    for (std::uint64_t i = w; i < trials; i += workers) {
      Rng rng(trial_seed(seed, i));
      out[i] = trial(rng, i);
    }
  };
  if (workers == 1) {
    body(0);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  return out;
}

SimReport summarize(const std::vector<TrialOutcome>& outcomes, std::uint64_t seed) {
  SimReport r;
  r.trials = outcomes.size();
  r.seed = seed;
  for (const auto& o : outcomes) {
    if (o.result != TrialResult::Correct) ++r.errors;
    if (o.result == TrialResult::Erasure) ++r.erasures;
    if (o.stage > 0) {
      if (r.stage_errors.size() < static_cast<std::size_t>(o.stage)) r.stage_errors.resize(o.stage, 0);
      ++r.stage_errors[o.stage - 1];
    }
  }
  if (r.trials > 0) {
    r.rate = static_cast<double>(r.errors) / static_cast<double>(r.trials);
    r.ci95 = 1.96 * std::sqrt(r.rate * (1 - r.rate) / static_cast<double>(r.trials));
  }
  const auto w = wilson_interval(r.errors, r.trials);
  r.wilson_low = w.low;
  r.wilson_high = w.high;
  return r;
}

Json SimReport::to_json(bool with_time) const {
  Json j;
  j["scheme"] = scheme_id;
  j["channel"] = channel;
  j["trials"] = trials;
  j["errors"] = errors;
  j["erasures"] = erasures;
  j["rate"] = rate;
  j["ci95"] = ci95;
  j["wilson"] = {wilson_low, wilson_high};
  if (!stage_errors.empty()) j["stage_errors"] = stage_errors;
  if (with_time) j["seconds"] = seconds;
  j["seed"] = seed;
  return j;
}

std::string SimReport::csv_header() { return "scheme,channel,trials,errors,erasures,rate,ci95,wilson_low,wilson_high,seconds,seed"; }

std::string SimReport::csv_line(bool with_time) const {
  std::ostringstream os;
  os << scheme_id << ',' << channel << ',' << trials << ',' << errors << ',' << erasures << ',' << fmt(rate) << ','
     << fmt(ci95) << ',' << fmt(wilson_low) << ',' << fmt(wilson_high) << ',' << (with_time ? fmt(seconds) : "")
     << ',' << seed;
  return os.str();
}

SimReport simulate_p2p(const Scheme& scheme, const Dmc& channel,
                       const std::function<DetectionResult(std::span<const Symbol>)>& detect, std::uint64_t trials,
                       std::uint64_t seed, unsigned workers) {
  if (channel.input_size() != scheme.sequence.alphabet())
    throw DomainError("channel input alphabet does not match the scheme alphabet");
  const auto start = std::chrono::steady_clock::now();
  auto outcomes = run_trials(
      trials, seed,
      [&](Rng& rng, std::uint64_t) {
        const Phase m = rng.below(scheme.n()) + 1;
        const Word y = channel.transmit(scheme.sequence.window(m, scheme.k), rng);
        return judge(detect(y), m);
      },
      workers);
  SimReport r = summarize(outcomes, seed);
  r.scheme_id = scheme.kind;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

SimReport simulate_bundle(const SchemeBundle& bundle, const ChannelSpec& channel, std::uint64_t trials,
                          std::uint64_t seed, unsigned workers) {
  const auto start = std::chrono::steady_clock::now();
  SimReport r;
  if (bundle.is_mac()) {
    if (!channel.mac) throw DomainError("a MAC scheme needs a MAC channel");
    const Mac& mac = *channel.mac;
    const MacScheme& s = bundle.mac;
    if (mac.x1_size() != s.seq1.alphabet() || mac.x2_size() != s.seq2.alphabet())
      throw DomainError("MAC input alphabets do not match the scheme");
    std::function<std::pair<MacDetection, int>(std::span<const Symbol>)> detect;
    std::shared_ptr<const SyndromeDetector> syn;
    if (bundle.kind == "mac-mod2") {
      syn = std::make_shared<const SyndromeDetector>(s, bundle.poly1);
      detect = [syn](std::span<const Symbol> y) { return std::make_pair(syn->detect(y), 0); };
    } else {
      auto split = bundle.split;
      detect = [split](std::span<const Symbol> y) {
        auto d = split->detect(y);
        return std::make_pair(d.phases, static_cast<int>(d.failed));
      };
    }
    auto outcomes = run_trials(
        trials, seed,
        [&](Rng& rng, std::uint64_t) {
          const Phase m1 = rng.below(s.seq1.size()) + 1;
          const Phase m2 = rng.below(s.seq2.size()) + 1;
          const Word y = mac.transmit(s.seq1.window(m1, s.k), s.seq2.window(m2, s.k), rng);
          const auto [got, stage] = detect(y);
          TrialOutcome o;
          if (!got) {
            o.result = TrialResult::Erasure;
          } else if (got->first != m1 || got->second != m2) {
            o.result = TrialResult::Wrong;
          }
          o.stage = stage;
          return o;
        },
        workers);
    r = summarize(outcomes, seed);
    if (bundle.kind == "mac-split") r.stage_errors.resize(3, 0);
  } else {
    const Scheme& s = bundle.p2p;
    if (channel.adversarial) {
      if (s.sequence.alphabet() != 2) throw DomainError("the adversarial channel is binary");
      const AdversarialBudget budget(*channel.adversarial);
      const MinDistanceDetector det(s);
      auto outcomes = run_trials(
          trials, seed,
          [&](Rng& rng, std::uint64_t) {
            const Phase m = rng.below(s.n()) + 1;
            const Word y =
                transmit_adversarial(budget, s.sequence.window(m, s.k), AdversaryStrategy::RandomPositions, rng);
            return judge(det.detect(y), m);
          },
          workers);
      r = summarize(outcomes, seed);
    } else {
      if (!channel.dmc) throw DomainError("a point-to-point scheme needs a point-to-point channel");
      const Dmc& ch = *channel.dmc;
      if (bundle.kind == "concat") {
        const ConcatDetector det(bundle.concat, ch);
        r = simulate_p2p(s, ch, [&](std::span<const Symbol> y) { return det.detect(y); }, trials, seed, workers);
      } else if (bundle.kind == "zero-error") {
        const auto zs = bundle.zero_error;
        if (ch.output_size() > zs->params().channel.output_size())
          throw DomainError("channel output alphabet exceeds the scheme's channel");
        r = simulate_p2p(s, ch, [&](std::span<const Symbol> y) { return zs->detect(y); }, trials, seed, workers);
      } else {
        const MinDistanceDetector det(s);
        if (ch.output_size() != s.sequence.alphabet())
          throw DomainError("minimum-distance detection needs equal input and output alphabets");
        r = simulate_p2p(s, ch, [&](std::span<const Symbol> y) { return det.detect(y); }, trials, seed, workers);
      }
    }
  }
  r.scheme_id = bundle.kind;
  r.channel = channel.text;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace phasedet
