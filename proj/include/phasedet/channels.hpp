#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "phasedet/sequence.hpp"

namespace phasedet {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial `index` of a run with the given master seed.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

/// Explicit random source handed to every stochastic call.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

inline constexpr double kStochasticTolerance = 1e-12;

/// Discrete memoryless channel, rows indexed by input.
class Dmc {
 public:
  Dmc() = default;
  explicit Dmc(std::vector<std::vector<double>> matrix);

  static Dmc bsc(double p);
  static Dmc noiseless(int q);
  /// Input x reaches x or x+1 mod q with probability 1/2 each.
  static Dmc typewriter(int q);
  /// Input kept with probability 1-eps, otherwise uniform over the other q-1 symbols.
  static Dmc symmetric(int q, double eps);

  int input_size() const { return static_cast<int>(matrix_.size()); }
  int output_size() const { return matrix_.empty() ? 0 : static_cast<int>(matrix_[0].size()); }
  double prob(Symbol x, Symbol y) const { return matrix_[x][y]; }
  bool possible(Symbol x, Symbol y) const { return matrix_[x][y] > 0.0; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }
  bool deterministic() const;

  Symbol sample(Symbol x, Rng& rng) const;
  Word transmit(const Word& input, Rng& rng) const;

  /// Output distribution induced by the input pmf.
  std::vector<double> output_marginal(const std::vector<double>& px) const;

 private:
  std::vector<std::vector<double>> matrix_;
  std::vector<std::vector<double>> cumulative_;
};

/// Spec-level wrapper: each output symbol drawn from the input's row.
Word transmit_dmc(const Dmc& ch, const Word& input, std::uint64_t seed);

/// Two-user channel with tensor p(y | x1, x2).
class Mac {
 public:
  Mac() = default;
  Mac(int x1_size, int x2_size, int y_size, std::vector<double> tensor);

  static Mac mod2();
  static Mac push_to_talk();
  /// Deterministic Y = x1 * q2 + x2.
  static Mac collision_free(int q1, int q2);

  int x1_size() const { return x1_; }
  int x2_size() const { return x2_; }
  int y_size() const { return y_; }
  double prob(Symbol x1, Symbol x2, Symbol y) const {
    return tensor_[(static_cast<std::size_t>(x1) * x2_ + x2) * y_ + y];
  }
  bool deterministic() const;

  Symbol sample(Symbol x1, Symbol x2, Rng& rng) const;
  Word transmit(const Word& x1, const Word& x2, Rng& rng) const;

 private:
  int x1_ = 0;
  int x2_ = 0;
  int y_ = 0;
  std::vector<double> tensor_;
};

/// Inputs joined when some output is reachable from both.
class ConfusionGraph {
 public:
  ConfusionGraph() = default;
  explicit ConfusionGraph(const Dmc& ch);
  ConfusionGraph(int vertices, const std::vector<std::pair<int, int>>& edges);

  int size() const { return n_; }
  bool adjacent(Symbol u, Symbol v) const { return u != v && adj_[u * static_cast<std::size_t>(n_) + v] != 0; }
  /// Strong-product adjacency (distinct words that agree or are adjacent at every coordinate).
  bool words_confusable(std::span<const Symbol> u, std::span<const Symbol> v) const;
  int edge_count() const;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> adj_;
};

struct AdversarialBudget {
  double p = 0.0;

  explicit AdversarialBudget(double fraction);
  /// floor(p k), with a small guard so that p = 1/9, k = 9 gives 1.
  int max_flips(std::uint64_t k) const;
};

enum class AdversaryStrategy { RandomPositions, WorstCaseExhaustive };

/// Returns true when the corrupted word defeats the detector.
using AdversaryJudge = std::function<bool(const Word& corrupted)>;

inline constexpr int kWorstCaseMaxLength = 24;
inline constexpr int kWorstCaseMaxWeight = 3;

/// Random strategy flips exactly max_flips distinct positions. Worst-case
/// strategy enumerates patterns of weight 0..max_flips in lexicographic order
/// and returns the first one the judge accepts, or the input if none does.
Word transmit_adversarial(const AdversarialBudget& budget, const Word& input, AdversaryStrategy strategy, Rng& rng,
                          const AdversaryJudge& judge = {});

/// Exhaustive search for a damaging error pattern of weight <= max_flips.
std::optional<Word> find_worst_case(const AdversarialBudget& budget, const Word& input, const AdversaryJudge& judge);

/// Calls visit on every word within Hamming distance `weight_limit` of input
/// (binary), including input itself. visit returning false stops the walk.
void for_each_flip_pattern(const Word& input, int weight_limit, const std::function<bool(const Word&)>& visit);

}  // namespace phasedet
