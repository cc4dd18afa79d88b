#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phasedet/channels.hpp"

namespace phasedet {

/// Binary block code with integer messages 0..message_count()-1.
class BlockCode {
 public:
  virtual ~BlockCode() = default;
  virtual int length() const = 0;
  virtual std::uint64_t message_count() const = 0;
  virtual Word encode(std::uint64_t message) const = 0;
  /// nullopt when the decoder cannot decide.
  virtual std::optional<std::uint64_t> decode(std::span<const Symbol> received) const = 0;
  /// Text form accepted by make_code.
  virtual std::string spec() const = 0;

  double rate() const;
  /// log2(message_count); throws unless the count is a power of two.
  int message_bits() const;
};

using CodePtr = std::shared_ptr<const BlockCode>;

/// One bit sent t times, majority decoding, ties give nullopt.
class RepetitionCode : public BlockCode {
 public:
  explicit RepetitionCode(int t);
  int length() const override { return t_; }
  std::uint64_t message_count() const override { return 2; }
  Word encode(std::uint64_t message) const override;
  std::optional<std::uint64_t> decode(std::span<const Symbol> received) const override;
  std::string spec() const override;

 private:
  int t_;
};

/// Systematic [7,4] Hamming code; message bit 0 is the most significant.
class Hamming74Code : public BlockCode {
 public:
  int length() const override { return 7; }
  std::uint64_t message_count() const override { return 16; }
  Word encode(std::uint64_t message) const override;
  std::optional<std::uint64_t> decode(std::span<const Symbol> received) const override;
  std::string spec() const override { return "hamming74"; }
};

/// Uncoded t-bit messages.
class IdentityCode : public BlockCode {
 public:
  explicit IdentityCode(int t);
  int length() const override { return t_; }
  std::uint64_t message_count() const override { return std::uint64_t{1} << t_; }
  Word encode(std::uint64_t message) const override;
  std::optional<std::uint64_t> decode(std::span<const Symbol> received) const override;
  std::string spec() const override;

 private:
  int t_;
};

CodePtr repetition(int t);
CodePtr hamming74();
CodePtr identity(int t);

/// Parses "rep:3", "hamming74", "identity:4".
CodePtr make_code(const std::string& spec);

std::vector<Word> codewords(const BlockCode& code);

/// Smallest Hamming distance between distinct codewords.
int min_distance(const BlockCode& code);

/// Bits of `value` written most significant first into `width` symbols.
Word to_bits(std::uint64_t value, int width);
std::uint64_t from_bits(std::span<const Symbol> bits);

struct ZeroErrorCode {
  ConfusionGraph graph;
  int length = 0;
  std::vector<Word> codewords;
};

/// {00, 12, 24, 31, 43} over the 5-cycle.
ZeroErrorCode pentagon_code();

/// No two words adjacent in the strong power of g.
bool is_independent_set(const ConfusionGraph& g, const std::vector<Word>& words);

/// Largest independent set of the strong power g^length, exact branch and
/// bound. Words are listed in ascending lexicographic order.
inline constexpr std::uint64_t kMaxStrongPowerVertices = std::uint64_t{1} << 15;
std::vector<Word> max_independent_set(const ConfusionGraph& g, int length);

/// "pentagon" or "identity:<t>:<q>" (noiseless alphabet q, all words of length t).
ZeroErrorCode make_zero_error_code(const std::string& spec);

}  // namespace phasedet
