#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "phasedet/gf2.hpp"

namespace phasedet {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Phases are 1-based: valid values are 1..n.
using Phase = std::uint64_t;

/// Length-n sequence over [0, q) with cyclic indexing.
class CyclicSequence {
 public:
  CyclicSequence() = default;
  CyclicSequence(int alphabet, Word symbols);

  int alphabet() const { return alphabet_; }
  std::uint64_t size() const { return symbols_.size(); }
  const Word& symbols() const { return symbols_; }

  /// Symbol at 1-based cyclic position m (any m >= 1 is reduced mod n).
  Symbol at(std::uint64_t m) const { return symbols_[(m - 1) % symbols_.size()]; }

  /// Symbols at positions m, m+1, ..., m+k-1 taken cyclically.
  Word window(Phase m, std::uint64_t k) const;
  void window_into(Phase m, std::uint64_t k, Symbol* out) const;

  friend bool operator==(const CyclicSequence&, const CyclicSequence&) = default;

 private:
  int alphabet_ = 2;
  Word symbols_;
};

/// Maps a length-r window back to the phase at which it occurs.
class WindowDecoder {
 public:
  virtual ~WindowDecoder() = default;
  virtual int order() const = 0;
  virtual int alphabet() const = 0;
  /// nullopt when the window does not occur in the sequence.
  virtual std::optional<Phase> decode(std::span<const Symbol> window) const = 0;
};

/// Dense lookup over all q^r windows. Construction rejects repeated windows.
class TableWindowDecoder : public WindowDecoder {
 public:
  TableWindowDecoder(const CyclicSequence& seq, int order);

  int order() const override { return order_; }
  int alphabet() const override { return alphabet_; }
  std::optional<Phase> decode(std::span<const Symbol> window) const override;

  /// Number of distinct windows present.
  std::uint64_t populated() const { return populated_; }

 private:
  int alphabet_;
  int order_;
  std::uint64_t populated_ = 0;
  std::vector<std::uint32_t> table_;  // rank -> phase, 0 if absent
};

/// Index of a de Bruijn sequence: every one of the q^r windows is present.
class DeBruijnIndex : public TableWindowDecoder {
 public:
  DeBruijnIndex(const CyclicSequence& seq, int order);
};

/// Index of an m-sequence: every nonzero r-bit state is present once.
class LfsrStateIndex : public TableWindowDecoder {
 public:
  LfsrStateIndex(const CyclicSequence& seq, int order);
};

/// Window rank in base q, first symbol most significant.
std::uint64_t window_rank(std::span<const Symbol> window, int alphabet);

/// Default cap on q^r for tables and de Bruijn generation.
inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{1} << 24;

/// Fibonacci LFSR x_{r+j} = sum_i a_i x_{i+j}, seeded with init = (x_1..x_r).
/// Requires a primitive and init nonzero; output length 2^r - 1.
CyclicSequence lfsr_generate(const Gf2Poly& a, const std::vector<std::uint8_t>& init);

/// Same recursion run for an arbitrary number of symbols, no checks on a.
std::vector<std::uint8_t> lfsr_run(const Gf2Poly& a, const std::vector<std::uint8_t>& init, std::uint64_t length);

/// Cycle decomposition of the state space for irreducible, non-primitive a.
/// Cycles are ordered by their smallest starting state rank.
std::vector<CyclicSequence> lfsr_cycles(const Gf2Poly& a);

struct DeBruijn {
  CyclicSequence sequence;
  std::shared_ptr<const DeBruijnIndex> index;
};

/// Greedy prefer-largest construction starting from the all-zero window.
DeBruijn debruijn_generate(int q, int r, std::uint64_t budget = kDefaultMemoryBudget);

Phase debruijn_decode(const DeBruijnIndex& idx, std::span<const Symbol> window);

/// q^r with overflow and budget checks (ResourceError past budget).
std::uint64_t checked_power(int q, int r, std::uint64_t budget);

}  // namespace phasedet
