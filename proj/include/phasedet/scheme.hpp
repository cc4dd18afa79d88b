#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "phasedet/gf2.hpp"
#include "phasedet/sequence.hpp"

namespace phasedet {

using Json = nlohmann::ordered_json;

/// Estimated phase, or nullopt for the error symbol e.
using DetectionResult = std::optional<Phase>;

/// A sequence together with its window length and how it was built.
struct Scheme {
  CyclicSequence sequence;
  std::uint64_t k = 0;
  std::string kind;
  Json construction = Json::object();

  std::uint64_t n() const { return sequence.size(); }
  double rate() const;
};

/// Checks k <= n and k >= 1.
void validate_window_length(std::uint64_t k, std::uint64_t n);

/// Minimum-distance detection over all n windows. Ties give e.
class MinDistanceDetector {
 public:
  explicit MinDistanceDetector(const Scheme& scheme);
  DetectionResult detect(std::span<const Symbol> y) const;
  const Scheme& scheme() const { return scheme_; }

 private:
  Scheme scheme_;
  bool binary_;
  std::size_t words_per_window_;
  std::vector<std::uint64_t> packed_;  // binary windows, n * words_per_window_
};

/// LFSR sequence seeded with 10...0 and window k.
Scheme build_adversarial(const Gf2Poly& a, std::uint64_t k);

/// de Bruijn sequence of order r over q symbols with window k.
Scheme build_debruijn_scheme(int q, int r, std::uint64_t k);

/// Exact minimum Hamming distance over all pairs of distinct phases.
int scheme_min_distance(const Scheme& s);

/// Same, stopping as soon as a pair at distance <= floor is seen (returns that distance).
int scheme_min_distance_until(const CyclicSequence& seq, std::uint64_t k, int floor);

struct LllSearchResult {
  std::optional<Scheme> scheme;
  std::uint64_t attempts = 0;
};

/// Draws i.i.d. uniform binary sequences of length target_n until one has
/// minimum distance > d.
LllSearchResult lll_random_search(std::uint64_t k, int d, std::uint64_t target_n, std::uint64_t max_attempts,
                                  std::uint64_t seed);

}  // namespace phasedet
