#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "phasedet/channels.hpp"
#include "phasedet/concat.hpp"
#include "phasedet/scheme.hpp"

namespace phasedet {

using PhasePair = std::pair<Phase, Phase>;
using MacDetection = std::optional<PhasePair>;

struct MacScheme {
  CyclicSequence seq1;
  CyclicSequence seq2;
  std::uint64_t k = 0;
  std::string detector;
  Json construction = Json::object();

  double rate1() const;
  double rate2() const;
};

/// Symbol map x1 = f(u, v) given as a table indexed u * v_alphabet + v.
struct CrtMap {
  std::uint64_t n_u = 0;
  std::uint64_t n_v = 0;
  int u_alphabet = 2;
  int v_alphabet = 2;
  int out_alphabet = 2;
  std::vector<Symbol> table;

  Symbol apply(Symbol u, Symbol v) const { return table[static_cast<std::size_t>(u) * v_alphabet + v]; }
  /// m1 -> (m_u, m_v), all 1-based.
  PhasePair split(Phase m1) const;
  /// Inverse of split.
  Phase join(Phase m_u, Phase m_v) const;
};

CrtMap make_crt_map(std::uint64_t n_u, std::uint64_t n_v, int u_alphabet, int v_alphabet, std::vector<Symbol> table);

/// Symbol at phase m1 is f(u at m1, v at m1), both read cyclically.
CyclicSequence crt_combine(const CyclicSequence& u, const CyclicSequence& v, const CrtMap& f);

/// Two LFSR sequences from distinct primitive polynomials, window k >= r1 + r2.
MacScheme build_mod2_two_primitives(const Gf2Poly& a1, const Gf2Poly& a2, std::uint64_t k);

/// Syndrome detection for mod-2 schemes whose first sequence is an LFSR of a1.
class SyndromeDetector {
 public:
  SyndromeDetector(const MacScheme& scheme, const Gf2Poly& a1);

  MacDetection detect(std::span<const Symbol> y) const;
  /// H y as packed bits (row j in bit j).
  std::uint64_t syndrome(std::span<const Symbol> y) const;
  std::size_t table_size() const { return table_.size(); }

 private:
  MacScheme scheme_;
  Gf2Poly a1_;
  int r1_;
  std::unordered_map<std::uint64_t, Phase> table_;
  std::shared_ptr<const LfsrStateIndex> index1_;
};

struct UniqueSumReport {
  std::uint64_t distinct = 0;
  std::uint64_t total = 0;
  bool unique() const { return distinct == total; }
};

inline constexpr std::uint64_t kDefaultExhaustionBudget = std::uint64_t{1} << 24;

/// Counts distinct XOR sums of one window from each sequence.
UniqueSumReport unique_sum_report(const std::vector<CyclicSequence>& seqs, std::uint64_t k,
                                  std::uint64_t budget = kDefaultExhaustionBudget);
bool verify_unique_sum_decomposition(const MacScheme& s, std::uint64_t budget = kDefaultExhaustionBudget);

/// Parameters of the rate-splitting construction. x1 = f(u, v) with u, v
/// binary; three concatenated layers for U -> Y, X2 -> (Y, U), V -> (Y, U, X2).
struct RateSplitParams {
  Mac mac;
  std::vector<double> pu{0.5, 0.5};
  std::vector<double> pv{0.5, 0.5};
  std::vector<double> px2{0.5, 0.5};
  std::vector<Symbol> f;
  ConcatParams u;
  ConcatParams x2;
  ConcatParams v;
  int max_tau_increments = 64;
  std::string mac_spec;
};

/// Which stage a failed successive detection stopped at.
enum class SplitStage { None = 0, U = 1, X2 = 2, V = 3 };

struct RateSplitDetection {
  MacDetection phases;
  SplitStage failed = SplitStage::None;
  DetectionResult mu;
  DetectionResult m2;
  DetectionResult mv;
};

class RateSplitScheme {
 public:
  static RateSplitScheme build(RateSplitParams params);

  const MacScheme& scheme() const { return scheme_; }
  const RateSplitParams& params() const { return params_; }
  const CrtMap& crt() const { return crt_; }
  const ConcatScheme& u_layer() const { return *u_; }
  const ConcatScheme& x2_layer() const { return *x2_; }
  const ConcatScheme& v_layer() const { return *v_; }
  /// Number of tau_v increments applied to reach coprime lengths.
  int tau_v_increments() const { return tau_v_increments_; }

  /// Effective point-to-point channels seen by each layer.
  const Dmc& u_channel() const { return u_channel_; }
  const Dmc& x2_channel() const { return x2_channel_; }
  const Dmc& v_channel() const { return v_channel_; }

  /// Successive detection u -> x2 -> v, then CRT.
  RateSplitDetection detect(std::span<const Symbol> y) const;

 private:
  RateSplitParams params_;
  CrtMap crt_;
  std::shared_ptr<const ConcatScheme> u_;
  std::shared_ptr<const ConcatScheme> x2_;
  std::shared_ptr<const ConcatScheme> v_;
  Dmc u_channel_;
  Dmc x2_channel_;
  Dmc v_channel_;
  std::shared_ptr<const ConcatDetector> u_det_;
  std::shared_ptr<const ConcatDetector> x2_det_;
  std::shared_ptr<const ConcatDetector> v_det_;
  MacScheme scheme_;
  int tau_v_increments_ = 0;
};

/// k = max_i l_i t_i + 3 max_i tau_i + max_i max(t_i, tau_i).
std::uint64_t rate_split_window_length(const std::vector<ConcatParams>& layers);

}  // namespace phasedet
