#include "phasedet/scheme.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "phasedet/channels.hpp"
#include "phasedet/errors.hpp"

namespace phasedet {

double Scheme::rate() const { return std::log2(static_cast<double>(n())) / static_cast<double>(k); }

void validate_window_length(std::uint64_t k, std::uint64_t n) {
  if (k < 1) throw DomainError("window length must be >= 1");
  if (k > n) throw DomainError("window length k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
}

namespace {

std::vector<std::uint64_t> pack_windows(const CyclicSequence& seq, std::uint64_t k, std::size_t words) {
  const std::uint64_t n = seq.size();
  std::vector<std::uint64_t> packed(n * words, 0);
  for (std::uint64_t m = 0; m < n; ++m) {
    std::uint64_t* dst = packed.data() + m * words;
    std::uint64_t pos = m;
    for (std::uint64_t i = 0; i < k; ++i) {
      if (seq.symbols()[pos]) dst[i / 64] |= std::uint64_t{1} << (i % 64);
      if (++pos == n) pos = 0;
    }
  }
  return packed;
}

int packed_distance(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  int d = 0;
  for (std::size_t w = 0; w < words; ++w) d += std::popcount(a[w] ^ b[w]);
  return d;
}

}  // namespace

MinDistanceDetector::MinDistanceDetector(const Scheme& scheme)
    : scheme_(scheme), binary_(scheme.sequence.alphabet() == 2), words_per_window_((scheme.k + 63) / 64) {
  validate_window_length(scheme.k, scheme.n());
  if (binary_) packed_ = pack_windows(scheme_.sequence, scheme_.k, words_per_window_);
}

DetectionResult MinDistanceDetector::detect(std::span<const Symbol> y) const {
  if (y.size() != scheme_.k) throw DomainError("observation length differs from k");
  const std::uint64_t n = scheme_.n();
  int best = std::numeric_limits<int>::max();
  Phase best_phase = 0;
  bool tie = false;
  if (binary_) {
    std::vector<std::uint64_t> obs(words_per_window_, 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] > 1) throw DomainError("binary scheme received a non-binary symbol");
      if (y[i]) obs[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    for (std::uint64_t m = 0; m < n; ++m) {
      const int d = packed_distance(obs.data(), packed_.data() + m * words_per_window_, words_per_window_);
      if (d < best) {
        best = d;
        best_phase = m + 1;
        tie = false;
      } else if (d == best) {
        tie = true;
      }
    }
  } else {
    Word w(scheme_.k);
    for (std::uint64_t m = 1; m <= n; ++m) {
      scheme_.sequence.window_into(m, scheme_.k, w.data());
      int d = 0;
      for (std::size_t i = 0; i < y.size(); ++i) d += w[i] != y[i] ? 1 : 0;
      if (d < best) {
        best = d;
        best_phase = m;
        tie = false;
      } else if (d == best) {
        tie = true;
      }
    }
  }
  if (tie) return std::nullopt;
  return best_phase;
}

Scheme build_adversarial(const Gf2Poly& a, std::uint64_t k) {
  if (!is_primitive(a)) throw DomainError("adversarial scheme needs a primitive polynomial");
  const int r = a.degree();
  std::vector<std::uint8_t> init(static_cast<std::size_t>(r), 0);
  init[0] = 1;
  Scheme s;
  s.sequence = lfsr_generate(a, init);
  if (k < static_cast<std::uint64_t>(r)) throw DomainError("window length must be at least the degree");
  validate_window_length(k, s.n());
  s.k = k;
  s.kind = "lfsr";
  s.construction = Json{{"kind", "lfsr"}, {"poly", a.to_exponent_string()}, {"init", "1" + std::string(r - 1, '0')}};
  return s;
}

Scheme build_debruijn_scheme(int q, int r, std::uint64_t k) {
  auto db = debruijn_generate(q, r);
  Scheme s;
  s.sequence = std::move(db.sequence);
  if (k < static_cast<std::uint64_t>(r)) throw DomainError("window length must be at least the order");
  validate_window_length(k, s.n());
  s.k = k;
  s.kind = "debruijn";
  s.construction = Json{{"kind", "debruijn"}, {"q", q}, {"order", r}, {"rule", "greedy-prefer-largest"}};
  return s;
}

int scheme_min_distance_until(const CyclicSequence& seq, std::uint64_t k, int floor) {
  const std::uint64_t n = seq.size();
  if (n < 2) throw DomainError("minimum distance needs n >= 2");
  validate_window_length(k, n);
  int best = std::numeric_limits<int>::max();
  if (seq.alphabet() == 2) {
    const std::size_t words = (k + 63) / 64;
    const auto packed = pack_windows(seq, k, words);
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = a + 1; b < n; ++b) {
        const int d = packed_distance(packed.data() + a * words, packed.data() + b * words, words);
        if (d < best) {
          best = d;
          if (best <= floor) return best;
        }
      }
    }
    return best;
  }
  for (std::uint64_t a = 1; a <= n; ++a) {
    for (std::uint64_t b = a + 1; b <= n; ++b) {
      int d = 0;
      for (std::uint64_t i = 0; i < k; ++i) d += seq.at(a + i) != seq.at(b + i) ? 1 : 0;
      if (d < best) {
        best = d;
        if (best <= floor) return best;
      }
    }
  }
  return best;
}

int scheme_min_distance(const Scheme& s) { return scheme_min_distance_until(s.sequence, s.k, -1); }

LllSearchResult lll_random_search(std::uint64_t k, int d, std::uint64_t target_n, std::uint64_t max_attempts,
                                  std::uint64_t seed) {
  if (target_n < 2) throw DomainError("target length must be >= 2");
  validate_window_length(k, target_n);
  LllSearchResult out;
  if (d < 0) throw DomainError("distance threshold must be >= 0");
  if (static_cast<std::uint64_t>(d) >= k) return out;
  Rng rng(seed);
  while (out.attempts < max_attempts) {
    ++out.attempts;
    Word bits(target_n);
    for (auto& b : bits) b = static_cast<Symbol>(rng.next() >> 63);
    CyclicSequence seq(2, std::move(bits));
    if (scheme_min_distance_until(seq, k, d) > d) {
      Scheme s;
      s.sequence = std::move(seq);
      s.k = k;
      s.kind = "lll";
      s.construction = Json{{"kind", "lll"}, {"d", d}, {"seed", seed}, {"attempts", out.attempts}};
      out.scheme = std::move(s);
      return out;
    }
  }
  return out;
}

}  // namespace phasedet
