#pragma once

#include <memory>
#include <optional>
#include <string>

#include "phasedet/concat.hpp"
#include "phasedet/mac.hpp"
#include "phasedet/scheme.hpp"
#include "phasedet/zero_error.hpp"

namespace phasedet {

/// A parsed channel spec: exactly one of the members is set.
struct ChannelSpec {
  std::string text;
  std::optional<Dmc> dmc;
  std::optional<Mac> mac;
  /// Adversarial flip fraction ("adv:p"); flips exactly floor(pk) random positions.
  std::optional<double> adversarial;
};

/// bsc:<p>, noiseless:<q>, typewriter:<q>, symmetric:<q>:<eps>, dmc:<path>,
/// adv:<p>, mod2, ptt, pair:<q1>x<q2>, mac:<path>.
ChannelSpec parse_channel_spec(const std::string& text);

Dmc dmc_from_json(const Json& j);
Mac mac_from_json(const Json& j);

Json sequence_to_json(const CyclicSequence& seq, const Json& construction);
CyclicSequence sequence_from_json(const Json& j);

/// Everything needed to run a detector for one stored scheme.
struct SchemeBundle {
  std::string kind;
  Scheme p2p;
  std::shared_ptr<const ConcatScheme> concat;
  std::shared_ptr<const ZeroErrorScheme> zero_error;
  MacScheme mac;
  std::shared_ptr<const RateSplitScheme> split;
  Gf2Poly poly1;
  /// Channel the concatenated detector is tuned for.
  std::string design_channel;

  bool is_mac() const { return kind == "mac-mod2" || kind == "mac-split"; }
};

Json bundle_to_json(const SchemeBundle& b);

/// Rebuilds a scheme from a file's construction block.
SchemeBundle rebuild_bundle(const Json& file);

struct StoredComparison {
  bool matches = true;
  std::string detail;
};

/// Compares the stored sequences and k against a fresh rebuild.
StoredComparison compare_with_rebuild(const Json& file, const SchemeBundle& rebuilt);

/// Reads "0110" (one symbol per character) or "0,3,4,1".
Word parse_observation(const std::string& text);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace phasedet
