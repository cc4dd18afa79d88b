#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "phasedet/codes.hpp"
#include "phasedet/errors.hpp"

using namespace phasedet;

namespace {

struct OneWord : BlockCode {
  int length() const override { return 3; }
  std::uint64_t message_count() const override { return 1; }
  Word encode(std::uint64_t) const override { return {0, 0, 0}; }
  std::optional<std::uint64_t> decode(std::span<const Symbol>) const override { return 0; }
  std::string spec() const override { return "one"; }
};

// C5 adjacency written out by hand
bool c5_adj(Symbol a, Symbol b) { return (a + 1) % 5 == b || (b + 1) % 5 == a; }

}  // namespace

TEST_CASE("encode then decode is the identity") {
  for (const auto& spec : {"rep:1", "rep:3", "rep:8", "hamming74", "identity:1", "identity:4"}) {
    const auto c = make_code(spec);
    REQUIRE(c->spec() == spec);
    for (std::uint64_t m = 0; m < c->message_count(); ++m) {
      const Word w = c->encode(m);
      REQUIRE(w.size() == static_cast<std::size_t>(c->length()));
      REQUIRE(c->decode(w) == m);
    }
  }
  REQUIRE_THROWS_AS(make_code("rep:0"), DomainError);
  REQUIRE_THROWS_AS(make_code("golay"), DomainError);
}

TEST_CASE("code parameters") {
  REQUIRE(identity(4)->rate() == 1.0);
  REQUIRE(repetition(5)->rate() == doctest::Approx(0.2));
  REQUIRE(hamming74()->message_bits() == 4);
  REQUIRE(min_distance(*repetition(5)) == 5);
  REQUIRE(min_distance(*hamming74()) == 3);
  REQUIRE(min_distance(*identity(4)) == 1);
  REQUIRE_THROWS_AS(min_distance(OneWord{}), DomainError);
}

TEST_CASE("repetition corrects every pattern below half the length") {
  for (int t = 1; t <= 9; ++t) {
    const auto c = repetition(t);
    for (std::uint64_t m = 0; m < 2; ++m) {
      const Word x = c->encode(m);
      for (std::uint32_t e = 0; e < (1u << t); ++e) {
        const int w = __builtin_popcount(e);
        Word y = x;
        for (int i = 0; i < t; ++i) y[static_cast<std::size_t>(i)] ^= (e >> i) & 1u;
        if (2 * w < t) REQUIRE(c->decode(y) == m);
        if (2 * w == t) REQUIRE(c->decode(y) == std::nullopt);
      }
    }
  }
}

TEST_CASE("hamming corrects every single error") {
  const auto c = hamming74();
  for (std::uint64_t m = 0; m < 16; ++m) {
    const Word x = c->encode(m);
    for (std::size_t i = 0; i < 7; ++i) {
      Word y = x;
      y[i] ^= 1;
      REQUIRE(c->decode(y) == m);
    }
  }
}

TEST_CASE("bit helpers") {
  REQUIRE(to_bits(6, 4) == Word{0, 1, 1, 0});
  REQUIRE(from_bits(Word{1, 0, 1}) == 5);
}

TEST_CASE("pentagon code") {
  const auto pc = pentagon_code();
  REQUIRE(pc.codewords.size() == 5);
  REQUIRE(pc.length == 2);
  for (const auto& u : pc.codewords)
    for (const auto& v : pc.codewords) {
      if (u == v) continue;
      const bool confusable = (u[0] == v[0] || c5_adj(u[0], v[0])) && (u[1] == v[1] || c5_adj(u[1], v[1]));
      REQUIRE_FALSE(confusable);
    }
  REQUIRE(is_independent_set(pc.graph, pc.codewords));
  REQUIRE(is_independent_set(pc.graph, {{0, 0}, {1, 2}, {2, 4}, {3, 1}, {4, 3}}));
  REQUIRE_FALSE(is_independent_set(pc.graph, {{0}, {1}}));
  REQUIRE(is_independent_set(pc.graph, {{3}}));
}

TEST_CASE("maximum independent sets") {
  const ConfusionGraph c5(Dmc::typewriter(5));
  REQUIRE(max_independent_set(c5, 1).size() == 2);
  const auto best = max_independent_set(c5, 2);
  REQUIRE(best.size() == 5);
  REQUIRE(is_independent_set(c5, best));
  const ConfusionGraph k2(Dmc::bsc(0.1));
  REQUIRE(max_independent_set(k2, 3).size() == 1);
  REQUIRE(max_independent_set(ConfusionGraph(Dmc::noiseless(3)), 2).size() == 9);
  REQUIRE_THROWS_AS(max_independent_set(c5, 7), ResourceError);
}

TEST_CASE("zero-error code specs") {
  REQUIRE(make_zero_error_code("pentagon").codewords.size() == 5);
  const auto id = make_zero_error_code("identity:2:3");
  REQUIRE(id.codewords.size() == 9);
  REQUIRE(is_independent_set(id.graph, id.codewords));
}
