#include "phasedet/codes.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <limits>

#include "phasedet/errors.hpp"

namespace phasedet {

double BlockCode::rate() const { return std::log2(static_cast<double>(message_count())) / length(); }

int BlockCode::message_bits() const {
  const std::uint64_t m = message_count();
  if (!std::has_single_bit(m)) throw DomainError("message count is not a power of two");
  return std::countr_zero(m);
}

Word to_bits(std::uint64_t value, int width) {
  Word out(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) out[static_cast<std::size_t>(i)] = (value >> (width - 1 - i)) & 1U;
  return out;
}

std::uint64_t from_bits(std::span<const Symbol> bits) {
  std::uint64_t v = 0;
  for (Symbol b : bits) {
    if (b > 1) throw DomainError("expected a binary word");
    v = (v << 1) | b;
  }
  return v;
}

namespace {

void check_binary(std::span<const Symbol> w, int length) {
  if (w.size() != static_cast<std::size_t>(length)) throw DomainError("received word has the wrong length");
  for (Symbol b : w) {
    if (b > 1) throw DomainError("received word is not binary");
  }
}

}  // namespace

RepetitionCode::RepetitionCode(int t) : t_(t) {
  if (t < 1) throw DomainError("repetition length must be >= 1");
}

Word RepetitionCode::encode(std::uint64_t message) const {
  if (message > 1) throw DomainError("repetition code carries one bit");
  return Word(static_cast<std::size_t>(t_), static_cast<Symbol>(message));
}

std::optional<std::uint64_t> RepetitionCode::decode(std::span<const Symbol> received) const {
  check_binary(received, t_);
  int ones = 0;
  for (Symbol b : received) ones += static_cast<int>(b);
  if (2 * ones == t_) return std::nullopt;
  return 2 * ones > t_ ? 1 : 0;
}

std::string RepetitionCode::spec() const { return "rep:" + std::to_string(t_); }

namespace {

// parity bits contributed by data bits d0..d3
constexpr std::uint8_t kHammingParity[4] = {0b110, 0b101, 0b011, 0b111};

}  // namespace

Word Hamming74Code::encode(std::uint64_t message) const {
  if (message > 15) throw DomainError("Hamming(7,4) message must be < 16");
  Word out = to_bits(message, 4);
  std::uint8_t parity = 0;
  for (int i = 0; i < 4; ++i) {
    if (out[static_cast<std::size_t>(i)]) parity ^= kHammingParity[i];
  }
  for (int j = 0; j < 3; ++j) out.push_back((parity >> (2 - j)) & 1U);
  return out;
}

std::optional<std::uint64_t> Hamming74Code::decode(std::span<const Symbol> received) const {
  check_binary(received, 7);
  Word y(received.begin(), received.end());
  std::uint8_t syndrome = 0;
  for (int i = 0; i < 4; ++i) {
    if (y[static_cast<std::size_t>(i)]) syndrome ^= kHammingParity[i];
  }
  for (int j = 0; j < 3; ++j) {
    if (y[static_cast<std::size_t>(4 + j)]) syndrome ^= static_cast<std::uint8_t>(1U << (2 - j));
  }
  if (syndrome != 0) {
    // every nonzero syndrome is the column of exactly one position
    for (int i = 0; i < 4; ++i) {
      if (kHammingParity[i] == syndrome) y[static_cast<std::size_t>(i)] ^= 1U;
    }
  }
  return from_bits(std::span<const Symbol>(y.data(), 4));
}

IdentityCode::IdentityCode(int t) : t_(t) {
  if (t < 1 || t > 62) throw DomainError("identity code length must be in 1..62");
}

Word IdentityCode::encode(std::uint64_t message) const {
  if (message >= message_count()) throw DomainError("identity code message out of range");
  return to_bits(message, t_);
}

std::optional<std::uint64_t> IdentityCode::decode(std::span<const Symbol> received) const {
  check_binary(received, t_);
  return from_bits(received);
}

std::string IdentityCode::spec() const { return "identity:" + std::to_string(t_); }

CodePtr repetition(int t) { return std::make_shared<RepetitionCode>(t); }
CodePtr hamming74() { return std::make_shared<Hamming74Code>(); }
CodePtr identity(int t) { return std::make_shared<IdentityCode>(t); }

namespace {

int parse_int_suffix(const std::string& spec, std::size_t colon) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw DomainError("trailing characters");
    return v;
  } catch (const std::logic_error&) {
    throw DomainError("malformed code spec: " + spec);
  }
}

}  // namespace

CodePtr make_code(const std::string& spec) {
  if (spec == "hamming74") return hamming74();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon);
    if (kind == "rep") return repetition(parse_int_suffix(spec, colon));
    if (kind == "identity") return identity(parse_int_suffix(spec, colon));
  }
  throw DomainError("unknown code spec: " + spec);
}

std::vector<Word> codewords(const BlockCode& code) {
  std::vector<Word> out;
  for (std::uint64_t m = 0; m < code.message_count(); ++m) out.push_back(code.encode(m));
  return out;
}

int min_distance(const BlockCode& code) {
  const auto words = codewords(code);
  if (words.size() < 2) throw DomainError("minimum distance needs at least two codewords");
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      int d = 0;
      for (std::size_t p = 0; p < words[i].size(); ++p) d += words[i][p] != words[j][p] ? 1 : 0;
      best = std::min(best, d);
    }
  }
  return best;
}

ZeroErrorCode pentagon_code() {
  return ZeroErrorCode{ConfusionGraph(Dmc::typewriter(5)), 2, {{0, 0}, {1, 2}, {2, 4}, {3, 1}, {4, 3}}};
}

bool is_independent_set(const ConfusionGraph& g, const std::vector<Word>& words) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (words[i] == words[j]) return false;
      if (g.words_confusable(words[i], words[j])) return false;
    }
  }
  return true;
}

namespace {

Word unrank_word(std::uint64_t rank, int q, int length) {
  Word w(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = static_cast<Symbol>(rank % static_cast<std::uint64_t>(q));
    rank /= static_cast<std::uint64_t>(q);
  }
  return w;
}

}  // namespace

std::vector<Word> max_independent_set(const ConfusionGraph& g, int length) {
  if (length < 1) throw DomainError("block length must be >= 1");
  const std::uint64_t total = checked_power(g.size(), length, kMaxStrongPowerVertices);
  std::vector<Word> words;
  for (std::uint64_t v = 0; v < total; ++v) words.push_back(unrank_word(v, g.size(), length));
  const std::size_t n = words.size();
  std::vector<std::vector<std::uint32_t>> nbr(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g.words_confusable(words[i], words[j])) {
        nbr[i].push_back(static_cast<std::uint32_t>(j));
        nbr[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
  std::vector<std::uint32_t> best;
  std::vector<std::uint32_t> current;
  std::vector<std::uint32_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<std::uint32_t>(i);
  std::function<void(std::vector<std::uint32_t>)> grow = [&](std::vector<std::uint32_t> candidates) {
    if (current.size() > best.size()) best = current;
    while (!candidates.empty()) {
      if (current.size() + candidates.size() <= best.size()) return;
      const std::uint32_t v = candidates.front();
      candidates.erase(candidates.begin());
      std::vector<std::uint32_t> next;
      for (std::uint32_t c : candidates) {
        if (std::find(nbr[v].begin(), nbr[v].end(), c) == nbr[v].end()) next.push_back(c);
      }
      current.push_back(v);
      grow(std::move(next));
      current.pop_back();
    }
  };
  grow(all);
  std::vector<Word> out;
  for (auto v : best) out.push_back(words[v]);
  return out;
}

ZeroErrorCode make_zero_error_code(const std::string& spec) {
  if (spec == "pentagon") return pentagon_code();
  if (spec.rfind("identity:", 0) == 0) {
    const auto second = spec.find(':', 9);
    if (second == std::string::npos) throw DomainError("expected identity:<t>:<q>");
    int t = 0;
    int q = 0;
    try {
      t = std::stoi(spec.substr(9, second - 9));
      q = std::stoi(spec.substr(second + 1));
    } catch (const std::logic_error&) {
      throw DomainError("malformed zero-error code spec: " + spec);
    }
    if (t < 1 || q < 2) throw DomainError("identity zero-error code needs t >= 1 and q >= 2");
    const std::uint64_t count = checked_power(q, t, kMaxStrongPowerVertices);
    ZeroErrorCode code{ConfusionGraph(Dmc::noiseless(q)), t, {}};
    for (std::uint64_t v = 0; v < count; ++v) code.codewords.push_back(unrank_word(v, q, t));
    return code;
  }
  throw DomainError("unknown zero-error code spec: " + spec);
}

}  // namespace phasedet
