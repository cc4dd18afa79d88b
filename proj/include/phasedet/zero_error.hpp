#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "phasedet/channels.hpp"
#include "phasedet/codes.hpp"
#include "phasedet/scheme.hpp"

namespace phasedet {

struct ZeroErrorParams {
  ZeroErrorCode code;
  Dmc channel;
  Symbol beta = 0;
  Symbol gamma = 0;
  int r = 1;
  /// Text forms recorded in the construction metadata.
  std::string code_spec;
  std::string channel_spec;
};

/// Three-valued answer to "is output i consistent with input x".
enum class Tri : std::uint8_t { No = 0, Yes = 1, Maybe = 2 };

struct ZeroErrorOutcome {
  /// False when some decision depended on which consistent output occurred.
  bool determinate = true;
  DetectionResult phase;
};

/// Codewords framed as (gamma, c, gamma) laid out along a de Bruijn sequence
/// over the codebook, with a sync block beta^{t+2} after block 0 and then
/// after every r further blocks. The final group may hold fewer than r blocks.
class ZeroErrorScheme {
 public:
  static ZeroErrorScheme build(const ZeroErrorParams& params);

  const Scheme& scheme() const { return scheme_; }
  const ZeroErrorParams& params() const { return params_; }
  int t() const { return params_.code.length; }
  std::uint64_t slot() const { return static_cast<std::uint64_t>(t()) + 2; }
  std::uint64_t blocks() const { return blocks_; }
  std::uint64_t groups() const { return groups_; }
  /// Blocks between the last sync and sync 0 (wrapping through block 0).
  std::uint64_t last_gap() const { return blocks_ - (groups_ - 1) * static_cast<std::uint64_t>(params_.r); }
  std::uint64_t block_slot(std::uint64_t w) const;
  std::uint64_t sync_slot(std::uint64_t g) const;

  DetectionResult detect(std::span<const Symbol> y) const;

  /// Runs the detector on the set of all outputs the channel can produce
  /// from the window at phase m. A determinate outcome holds for every one
  /// of those outputs.
  ZeroErrorOutcome detect_all_outputs(Phase m) const;

  /// Number of positions whose (t+2)-window is not a sync block yet could
  /// produce an output consistent with beta^{t+2}.
  std::uint64_t sync_confusable_positions() const;

 private:
  ZeroErrorOutcome run(std::size_t k, const std::function<Tri(std::size_t, Symbol)>& tri) const;

  ZeroErrorParams params_;
  std::uint64_t blocks_ = 0;
  std::uint64_t groups_ = 0;
  CyclicSequence base_;
  std::shared_ptr<const DeBruijnIndex> index_;
  Scheme scheme_;
};

/// The pentagon instance: typewriter(5) channel, pentagon code, beta = 0, gamma = 2.
ZeroErrorParams pentagon_params(int r);

}  // namespace phasedet
