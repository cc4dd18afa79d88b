#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "phasedet/channels.hpp"
#include "phasedet/codes.hpp"
#include "phasedet/scheme.hpp"

namespace phasedet {

enum class BaseKind { DeBruijn, MSequence };

struct ConcatParams {
  CodePtr code;
  int l = 1;
  int tau = 1;
  BaseKind base = BaseKind::DeBruijn;
  /// MSequence base only: primitive polynomial of degree <= s*l.
  Gf2Poly base_poly;
  /// Distribution the sync word is drawn from.
  std::vector<double> sync_pmf{0.5, 0.5};
  std::uint64_t seed = 0;
};

/// k = l t + 3 tau + max(t, tau).
std::uint64_t concat_window_length(int t, int l, int tau);

/// log2(2^r (l t + 3 tau) / (l s)) / (l t + 3 tau + max(t, tau)) for a de Bruijn base.
double concat_rate_formula(int r, int s, int t, int l, int tau);

/// Base bits cut into s-bit chunks, each encoded to t symbols, with a sync
/// word of 3 tau symbols after chunk 0 and then after every l further chunks.
class ConcatScheme {
 public:
  static ConcatScheme build(const ConcatParams& params);

  const Scheme& scheme() const { return scheme_; }
  const ConcatParams& params() const { return params_; }
  int s() const { return s_; }
  int t() const { return t_; }
  int l() const { return params_.l; }
  int tau() const { return params_.tau; }
  int r() const { return s_ * params_.l; }
  std::uint64_t chunks() const { return chunks_; }
  std::uint64_t groups() const { return groups_; }
  const Word& sync() const { return sync_; }
  const CyclicSequence& base() const { return base_; }
  const WindowDecoder& base_index() const { return *index_; }

  /// 0-based start of chunk w within the sequence.
  std::uint64_t chunk_start(std::uint64_t w) const;
  /// 0-based start of sync word g.
  std::uint64_t sync_start(std::uint64_t g) const;

 private:
  ConcatParams params_;
  int s_ = 0;
  int t_ = 0;
  std::uint64_t chunks_ = 0;
  std::uint64_t groups_ = 0;
  Word sync_;
  CyclicSequence base_;
  std::shared_ptr<const WindowDecoder> index_;
  Scheme scheme_;
};

struct ConcatDetection {
  DetectionResult phase;
  /// Positions in y (0-based) of the best-scoring middle sync chunk matches.
  std::vector<std::uint64_t> sync_candidates;
  /// Middle-chunk position that produced the accepted phase.
  std::optional<std::uint64_t> sync_position;
};

/// Three-stage detector: sync search by log-likelihood ratio, hard-decision
/// block decoding, base-sequence lookup.
class ConcatDetector {
 public:
  ConcatDetector(std::shared_ptr<const ConcatScheme> scheme, Dmc channel);

  std::uint64_t k() const { return scheme_->scheme().k; }
  DetectionResult detect(std::span<const Symbol> y) const { return detect_detailed(y).phase; }
  ConcatDetection detect_detailed(std::span<const Symbol> y) const;

  /// sum_i log p(y_i | x_{m+i}) over the first |y| positions.
  double window_log_likelihood(Phase m, std::span<const Symbol> y) const;

 private:
  std::optional<Phase> try_candidate(std::uint64_t w1, std::span<const Symbol> y) const;

  std::shared_ptr<const ConcatScheme> scheme_;
  Dmc channel_;
  std::vector<std::vector<double>> log_p_;  // [x][y]
  std::vector<double> log_q_;               // output marginal under the sync pmf
  std::vector<Symbol> hard_;                // y -> most likely binary input
};

}  // namespace phasedet
