#include "phasedet/sequence.hpp"

#include <string>

#include "phasedet/errors.hpp"

namespace phasedet {

CyclicSequence::CyclicSequence(int alphabet, Word symbols) : alphabet_(alphabet), symbols_(std::move(symbols)) {
  if (alphabet < 1) throw DomainError("alphabet size must be positive");
  if (symbols_.empty()) throw DomainError("sequence must be nonempty");
  for (Symbol s : symbols_) {
    if (s >= static_cast<Symbol>(alphabet)) throw DomainError("symbol " + std::to_string(s) + " outside alphabet");
  }
}

Word CyclicSequence::window(Phase m, std::uint64_t k) const {
  Word out(k);
  window_into(m, k, out.data());
  return out;
}

void CyclicSequence::window_into(Phase m, std::uint64_t k, Symbol* out) const {
  if (m == 0) throw DomainError("phases are 1-based");
  const std::uint64_t n = symbols_.size();
  std::uint64_t pos = (m - 1) % n;
  for (std::uint64_t i = 0; i < k; ++i) {
    out[i] = symbols_[pos];
    if (++pos == n) pos = 0;
  }
}

std::uint64_t checked_power(int q, int r, std::uint64_t budget) {
  if (q < 1 || r < 0) throw DomainError("invalid alphabet or order");
  std::uint64_t total = 1;
  for (int i = 0; i < r; ++i) {
    if (total > budget / static_cast<std::uint64_t>(q)) {
      throw ResourceError("q^r = " + std::to_string(q) + "^" + std::to_string(r) + " exceeds the memory budget of " +
                          std::to_string(budget));
    }
    total *= static_cast<std::uint64_t>(q);
  }
  return total;
}

std::uint64_t window_rank(std::span<const Symbol> window, int alphabet) {
  std::uint64_t rank = 0;
  for (Symbol s : window) {
    if (s >= static_cast<Symbol>(alphabet)) throw DomainError("window symbol outside alphabet");
    rank = rank * static_cast<std::uint64_t>(alphabet) + s;
  }
  return rank;
}

TableWindowDecoder::TableWindowDecoder(const CyclicSequence& seq, int order) : alphabet_(seq.alphabet()), order_(order) {
  if (order < 1) throw DomainError("window order must be >= 1");
  const std::uint64_t cells = checked_power(alphabet_, order, kDefaultMemoryBudget);
  const std::uint64_t n = seq.size();
  if (n > cells) throw DomainError("sequence longer than the number of distinct windows");
  table_.assign(cells, 0);
  const auto q = static_cast<std::uint64_t>(alphabet_);
  const std::uint64_t top = cells / q;
  std::uint64_t rank = window_rank(seq.window(1, static_cast<std::uint64_t>(order)), alphabet_);
  for (Phase m = 1; m <= n; ++m) {
    if (table_[rank] != 0) {
      throw DomainError("window at phase " + std::to_string(m) + " repeats phase " + std::to_string(table_[rank]));
    }
    table_[rank] = static_cast<std::uint32_t>(m);
    ++populated_;
    // slide: drop the leading symbol, append the one at m + order
    rank = (rank % top) * q + seq.at(m + static_cast<std::uint64_t>(order));
  }
}

std::optional<Phase> TableWindowDecoder::decode(std::span<const Symbol> window) const {
  if (window.size() != static_cast<std::size_t>(order_)) throw DomainError("window length differs from the index order");
  const std::uint32_t phase = table_[window_rank(window, alphabet_)];
  if (phase == 0) return std::nullopt;
  return phase;
}

DeBruijnIndex::DeBruijnIndex(const CyclicSequence& seq, int order) : TableWindowDecoder(seq, order) {
  if (populated() != checked_power(seq.alphabet(), order, kDefaultMemoryBudget)) {
    throw DomainError("sequence is not a de Bruijn sequence of the given order");
  }
}

LfsrStateIndex::LfsrStateIndex(const CyclicSequence& seq, int order) : TableWindowDecoder(seq, order) {
  if (seq.alphabet() != 2) throw DomainError("LFSR state index needs a binary sequence");
}

std::vector<std::uint8_t> lfsr_run(const Gf2Poly& a, const std::vector<std::uint8_t>& init, std::uint64_t length) {
  const int r = a.degree();
  if (r < 1) throw DomainError("LFSR polynomial must have degree >= 1");
  if (init.size() != static_cast<std::size_t>(r)) throw DomainError("LFSR init length must equal the degree");
  std::vector<int> taps;
  for (int i = 0; i < r; ++i) {
    if (a.coeff(i)) taps.push_back(i);
  }
  std::vector<std::uint8_t> x(init);
  x.reserve(std::max<std::uint64_t>(length, init.size()));
  for (auto b : x) {
    if (b > 1) throw DomainError("LFSR init must be binary");
  }
  while (x.size() < length) {
    const std::size_t j = x.size() - static_cast<std::size_t>(r);
    std::uint8_t next = 0;
    for (int i : taps) next ^= x[j + static_cast<std::size_t>(i)];
    x.push_back(next);
  }
  x.resize(length);
  return x;
}

CyclicSequence lfsr_generate(const Gf2Poly& a, const std::vector<std::uint8_t>& init) {
  const int r = a.degree();
  if (r < 1 || r > 30) throw DomainError("LFSR degree must be in 1..30");
  if (!is_primitive(a)) throw DomainError("LFSR polynomial is not primitive; use lfsr_cycles");
  bool nonzero = false;
  for (auto b : init) nonzero = nonzero || b != 0;
  if (!nonzero) throw DomainError("LFSR init must be nonzero");
  const std::uint64_t n = (std::uint64_t{1} << r) - 1;
  auto bits = lfsr_run(a, init, n);
  return CyclicSequence(2, Word(bits.begin(), bits.end()));
}

std::vector<CyclicSequence> lfsr_cycles(const Gf2Poly& a) {
  const int r = a.degree();
  if (r < 1 || r > 24) throw DomainError("lfsr_cycles supports degree 1..24");
  if (!a.coeff(0) || !is_irreducible(a)) throw DomainError("lfsr_cycles needs an irreducible polynomial");
  const std::uint64_t t = order(a);
  const std::uint64_t states = std::uint64_t{1} << r;
  if (t == states - 1) throw DomainError("polynomial is primitive; use lfsr_generate");
  std::vector<std::uint8_t> seen(states, 0);
  std::vector<CyclicSequence> out;
  for (std::uint64_t start = 1; start < states; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint8_t> init(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) init[static_cast<std::size_t>(i)] = (start >> (r - 1 - i)) & 1U;
    auto bits = lfsr_run(a, init, t + static_cast<std::uint64_t>(r) - 1);
    for (std::uint64_t m = 0; m < t; ++m) {
      std::uint64_t rank = 0;
      for (int i = 0; i < r; ++i) rank = (rank << 1) | bits[m + static_cast<std::uint64_t>(i)];
      seen[rank] = 1;
    }
    bits.resize(t);
    out.emplace_back(2, Word(bits.begin(), bits.end()));
  }
  return out;
}

DeBruijn debruijn_generate(int q, int r, std::uint64_t budget) {
  if (q < 2) throw DomainError("de Bruijn alphabet must be >= 2");
  if (r < 1) throw DomainError("de Bruijn order must be >= 1");
  const std::uint64_t total = checked_power(q, r, budget);
  const std::uint64_t top = total / static_cast<std::uint64_t>(q);
  std::vector<std::uint8_t> seen(total, 0);
  Word linear(static_cast<std::size_t>(r), 0);
  linear.reserve(total + static_cast<std::uint64_t>(r));
  seen[0] = 1;
  std::uint64_t rank = 0;
  for (;;) {
    const std::uint64_t base = (rank % top) * static_cast<std::uint64_t>(q);
    int chosen = -1;
    for (int s = q - 1; s >= 0; --s) {
      if (!seen[base + static_cast<std::uint64_t>(s)]) {
        chosen = s;
        break;
      }
    }
    if (chosen < 0) break;
    rank = base + static_cast<std::uint64_t>(chosen);
    seen[rank] = 1;
    linear.push_back(static_cast<Symbol>(chosen));
  }
  if (linear.size() != total + static_cast<std::uint64_t>(r) - 1) {
    throw std::logic_error("greedy de Bruijn construction stalled early");
  }
  linear.resize(total);
  CyclicSequence seq(q, std::move(linear));
  auto index = std::make_shared<const DeBruijnIndex>(seq, r);
  return DeBruijn{std::move(seq), std::move(index)};
}

Phase debruijn_decode(const DeBruijnIndex& idx, std::span<const Symbol> window) {
  auto phase = idx.decode(window);
  if (!phase) throw std::logic_error("de Bruijn index missing a window");
  return *phase;
}

}  // namespace phasedet
