#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "phasedet/channels.hpp"
#include "phasedet/errors.hpp"
#include "phasedet/gf2.hpp"

using namespace phasedet;

namespace {

Gf2Poly P(const char* s) { return Gf2Poly::parse(s); }
const Gf2Poly kOne = Gf2Poly::from_mask(1);

// brute-force order: linear scan of t
std::uint64_t scan_order(const Gf2Poly& p) {
  const int r = p.degree();
  for (std::uint64_t t = 1; t <= (std::uint64_t{1} << r); ++t) {
    if (mod(Gf2Poly::monomial(static_cast<int>(t)) + Gf2Poly::from_mask(1), p).is_zero()) return t;
  }
  return 0;
}

}  // namespace

TEST_CASE("multiply examples") {
  REQUIRE(multiply(P("0,1"), P("0,1")) == P("0,2"));
  REQUIRE(multiply(P("0,2,4,5"), kOne) == P("0,2,4,5"));
  REQUIRE(multiply(P("0,1,3"), P("0,1,4")) == P("0,2,3,5,7"));
  REQUIRE(multiply(P("0,1"), Gf2Poly()).is_zero());
}

TEST_CASE("parse accepts bit strings and exponent lists") {
  REQUIRE(P("110101") == P("0,1,3,5"));
  REQUIRE(P("110101").to_bit_string() == "110101");
  REQUIRE(P("0,2,4,5").to_exponent_string() == "0,2,4,5");
  REQUIRE(kOne.degree() == 0);
  REQUIRE(P("0").is_zero());
  REQUIRE(P("1") == kOne);
  REQUIRE(Gf2Poly().degree() == Gf2Poly::kZeroDegree);
  REQUIRE_THROWS_AS(P("01x"), DomainError);
  REQUIRE_THROWS_AS(P(""), DomainError);
}

TEST_CASE("irreducibility examples") {
  REQUIRE_FALSE(is_irreducible(P("0,2")));
  REQUIRE(is_irreducible(P("0,1,3")));
  REQUIRE(is_irreducible(P("0,1,2,3,4")));
  REQUIRE_THROWS_AS(is_irreducible(kOne), DomainError);
}

TEST_CASE("order examples") {
  REQUIRE(order(P("0,1,3")) == 7);
  REQUIRE(order(P("0,1,2,3,4")) == 5);
  REQUIRE(order(P("0,1")) == 1);
  REQUIRE_THROWS_AS(order(P("0,2")), DomainError);
  REQUIRE_THROWS_AS(order(P("1,2")), DomainError);
}

TEST_CASE("primitivity examples") {
  REQUIRE(is_primitive(P("0,1,2,4,5")));
  REQUIRE_FALSE(is_primitive(P("0,1,2,3,4")));
  REQUIRE(is_primitive(P("0,1,3")));
  REQUIRE_FALSE(is_primitive(P("0,2")));
}

TEST_CASE("irreducibility matches a product sieve up to degree 10") {
  std::set<std::uint64_t> reducible;
  for (std::uint64_t a = 2; a < (1u << 6); ++a)
    for (std::uint64_t b = 2; b < (1u << 10); ++b) {
      const auto prod = multiply(Gf2Poly::from_mask(a), Gf2Poly::from_mask(b));
      if (prod.degree() <= 10) reducible.insert(prod.to_mask());
    }
  for (std::uint64_t m = 2; m < (1u << 11); ++m) {
    const auto p = Gf2Poly::from_mask(m);
    CHECK(is_irreducible(p) == (reducible.count(m) == 0));
  }
}

TEST_CASE("order divides 2^r - 1 and matches a linear scan") {
  for (std::uint64_t m = 3; m < (1u << 13); m += 2) {
    const auto p = Gf2Poly::from_mask(m);
    if (!is_irreducible(p)) continue;
    const int r = p.degree();
    const std::uint64_t o = order(p);
    REQUIRE(((std::uint64_t{1} << r) - 1) % o == 0);
    if (r <= 9) REQUIRE(o == scan_order(p));
    if (is_primitive(p)) REQUIRE(o == (std::uint64_t{1} << r) - 1);
  }
}

TEST_CASE("primitive polynomial counts are phi(2^r - 1)/r") {
  const std::vector<std::size_t> want{1, 1, 2, 2, 6, 6, 18, 16, 48, 60, 176, 144};
  for (int r = 1; r <= 12; ++r) {
    const auto list = primitive_polynomials(r);
    CHECK(list.size() == want[static_cast<std::size_t>(r - 1)]);
    for (const auto& p : list) REQUIRE(is_irreducible(p));
  }
}

TEST_CASE("large degree tests take the gcd path") {
  REQUIRE(is_primitive(P("0,3,17")));
  REQUIRE(is_primitive(P("0,3,31")));
  const auto prod = multiply(P("0,4,9"), P("0,1,9"));
  REQUIRE_FALSE(is_irreducible(prod));
  REQUIRE_THROWS_AS(order(P("0,1,63")), DomainError);
}

TEST_CASE("ring laws on random polynomials") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto rnd = [&] {
      Gf2Poly p;
      const int deg = static_cast<int>(rng.below(65));
      for (int i = 0; i <= deg; ++i)
        if (rng.below(2)) p.set_coeff(i, true);
      return p;
    };
    const auto a = rnd(), b = rnd(), c = rnd();
    REQUIRE(multiply(a, b) == multiply(b, a));
    REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    REQUIRE(multiply(a, b + c) == multiply(a, b) + multiply(a, c));
    if (!b.is_zero()) {
      const auto qr = divmod(a, b);
      REQUIRE(multiply(qr.quotient, b) + qr.remainder == a);
      REQUIRE(qr.remainder.degree() < b.degree());
    }
  }
}

TEST_CASE("gcd and powers") {
  REQUIRE(gcd(P("0,2"), P("0,1")) == P("0,1"));
  REQUIRE(gcd(P("0,1,3"), P("0,1,4")) == kOne);
  // z^7 = 1 mod z^3+z+1
  REQUIRE(pow_z_mod(7, P("0,1,3")) == kOne);
  REQUIRE(prime_factors(2u * 2 * 3 * 7 * 31) == std::vector<std::uint64_t>{2, 2, 3, 7, 31});
}
