#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "phasedet/bounds.hpp"
#include "phasedet/errors.hpp"

using namespace phasedet;

namespace {

double log2_big(const BigInt& x) { return std::log2(x.convert_to<double>()); }

double ptt_sum_closed_form(double a, double b) {
  const double y1 = a * (1 - b) + b * (1 - a) + a * b / 2;
  return binary_entropy(y1) - a * b;
}

}  // namespace

TEST_CASE("binary entropy") {
  REQUIRE(binary_entropy(0.0) == 0.0);
  REQUIRE(binary_entropy(1.0) == 0.0);
  REQUIRE(binary_entropy(0.5) == 1.0);
  REQUIRE(binary_entropy(0.11) == doctest::Approx(0.49992).epsilon(1e-4));
  REQUIRE(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)));
  REQUIRE_THROWS_AS(binary_entropy(1.5), DomainError);
}

TEST_CASE("lll bound") {
  REQUIRE(lll_max_n(20, 0) == 3276);
  REQUIRE(lll_max_n(20, 20) == 0);
  REQUIRE(lll_max_n(4, 0) == 0);
  for (int d = 0; d < 40; ++d) REQUIRE(lll_max_n(80, d + 1) <= lll_max_n(80, d));
  REQUIRE_THROWS_AS(lll_max_n(0, 0), DomainError);
  REQUIRE_THROWS_AS(lll_max_n(10, -1), DomainError);
}

TEST_CASE("lll rate against its closed form at k=200") {
  const int k = 200;
  for (double p : {0.01, 0.03, 0.05, 0.1}) {
    const int d = static_cast<int>(std::floor(2 * p * k));
    BigInt sum = 0;
    for (int i = 0; i <= d; ++i) sum += binomial(k, i);
    const BigInt n = lll_max_n(k, d);
    REQUIRE(n == (BigInt(1) << k) / (16 * k * sum));
    const double rate = log2_big(n) / k;
    const double exact = 1.0 - std::log2(16.0 * k) / k - log2_big(sum) / k;
    REQUIRE(rate == doctest::Approx(exact).epsilon(1e-9));
    REQUIRE(rate >= 1.0 - binary_entropy(2 * p) - std::log2(16.0 * k) / k - 1e-12);
  }
}

TEST_CASE("gv rate") {
  REQUIRE(gv_rate(0.0).value == 1.0);
  REQUIRE_FALSE(gv_rate(0.0).clamped);
  REQUIRE(gv_rate(0.05).value == doctest::Approx(0.531).epsilon(1e-3));
  REQUIRE(gv_rate(0.25).value == 0.0);
  REQUIRE(gv_rate(0.25).clamped);
  REQUIRE(gv_rate(0.4).clamped);
}

TEST_CASE("binomials") {
  REQUIRE(binomial(10, 3) == 120);
  REQUIRE(binomial(3, 5) == 0);
  REQUIRE(binomial(100, 50) == BigInt("100891344545564193334812497256"));
  REQUIRE(generalized_binomial(RationalBig(5, 2), 2) == RationalBig(15, 8));
  REQUIRE(generalized_binomial(RationalBig(7), 3) == 35);
  REQUIRE(generalized_binomial(RationalBig(2), 3) == 0);
  REQUIRE(generalized_binomial(RationalBig(4), 0) == 1);
}

TEST_CASE("krawtchouk values and orthogonality") {
  REQUIRE(krawtchouk(7, 2, 3) == -3);
  REQUIRE(krawtchouk(7, 0, 5) == 1);
  REQUIRE(krawtchouk(7, 1, 2) == 3);
  for (int k : {5, 8, 11})
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) {
        RationalBig acc = 0;
        for (int z = 0; z <= k; ++z) acc += RationalBig(binomial(k, z)) * krawtchouk(k, i, z) * krawtchouk(k, j, z);
        REQUIRE(acc == (i == j ? RationalBig((BigInt(1) << k) * binomial(k, i)) : RationalBig(0)));
      }
}

TEST_CASE("linear scheme length threshold") {
  REQUIRE(thm4_min_k(20, 5, 3) == 42);
  REQUIRE(thm4_feasible(20, 5, 3, 42));
  REQUIRE_FALSE(thm4_feasible(20, 5, 3, 41));
  std::mt19937 gen(7);
  for (int k = 36; k <= 60; ++k) {
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), gen);
    REQUIRE(thm4_feasible_ordered(20, 5, 3, k, order) == thm4_feasible(20, 5, 3, k));
  }
  for (int k = 42; k <= 60; ++k) REQUIRE(thm4_feasible(20, 5, 3, k));
  REQUIRE_THROWS_AS(thm4_feasible(20, 5, 0, 42), DomainError);
}

TEST_CASE("Int(p, lambda)") {
  REQUIRE(int_p_lambda(0.05, 0.0) == 0.0);
  for (double lam : {0.01, 0.05, 0.09, 0.2})
    REQUIRE(int_p_lambda(0.05, lam) <= 0.0);
  REQUIRE(int_p_lambda(0.05, 0.09) < int_p_lambda(0.05, 0.05));
  // midpoint rule with 10^6 cells
  for (auto [p, lam] : {std::pair{0.05, 0.09}, std::pair{0.1, 0.05}, std::pair{0.01, 0.2}}) {
    const int cells = 1000000;
    const double a = 1 - 2 * p;
    const double h = lam / cells;
    double acc = 0;
    for (int i = 0; i < cells; ++i) {
      const double y = (i + 0.5) * h;
      acc += std::log2((a + std::sqrt(std::max(0.0, a * a - 4 * (1 - y) * y))) / (2 * (1 - y)));
    }
    REQUIRE(std::abs(acc * h - int_p_lambda(p, lam)) < 1e-6);
  }
  REQUIRE(int_domain_ok(0.05, 0.2));
  REQUIRE_FALSE(int_domain_ok(0.05, 0.3));
  REQUIRE_THROWS_AS(int_p_lambda(0.05, 0.3), DomainError);
  REQUIRE_THROWS_AS(int_p_lambda(0.05, -0.1), DomainError);
}

TEST_CASE("new upper-bound condition") {
  REQUIRE(newub_violated(0.05, 0.6927, 0.03073));
  REQUIRE_FALSE(newub_violated(0.05, 0.6927, 0.0));
  REQUIRE_FALSE(newub_violated(0.05, 0.5, 0.03073));
  const auto t = newub_terms(0.05, 0.6927, 0.03073);
  REQUIRE(t.rhs == doctest::Approx(1 - binary_entropy(0.05) - 0.6927));
  REQUIRE_THROWS_AS(newub_terms(0.05, 0.6927, 0.04), DomainError);
  REQUIRE_THROWS_AS(newub_terms(0.05, 0.6927, -0.001), DomainError);

  const auto scan = newub_scan(0.05, 0.6927, 1e-4);
  REQUIRE(scan.violated());
  const auto nearest = std::min_element(scan.violating_mu.begin(), scan.violating_mu.end(), [](double x, double y) {
    return std::abs(x - 0.03073) < std::abs(y - 0.03073);
  });
  REQUIRE(std::abs(*nearest - 0.03073) <= 2e-4);
  REQUIRE(scan.max_gap > 0);
  REQUIRE_FALSE(newub_scan(0.05, 0.5, 1e-3).violated());
}

TEST_CASE("mutual information and capacity") {
  REQUIRE(mutual_information({0.5, 0.5}, Dmc::bsc(0.0)) == doctest::Approx(1.0));
  REQUIRE(mutual_information({1.0, 0.0}, Dmc::bsc(0.1)) == doctest::Approx(0.0));
  REQUIRE_THROWS_AS(mutual_information({0.5, 0.4}, Dmc::bsc(0.1)), DomainError);
  for (int i = 1; i <= 49; ++i) {
    const double p = i / 100.0;
    REQUIRE(std::abs(dmc_capacity(Dmc::bsc(p)).capacity - (1 - binary_entropy(p))) < 1e-6);
  }
  REQUIRE(dmc_capacity(Dmc::noiseless(4)).capacity == doctest::Approx(2.0));
  REQUIRE(dmc_capacity(Dmc({{0.3, 0.7}, {0.3, 0.7}})).capacity == doctest::Approx(0.0).epsilon(1e-9));
  REQUIRE(dmc_capacity(Dmc::typewriter(5)).capacity == doctest::Approx(std::log2(2.5)).epsilon(1e-6));
  // Z channel: input 1 arrives as 0 half the time
  const auto z = dmc_capacity(Dmc({{1.0, 0.0}, {0.5, 0.5}}));
  REQUIRE(z.capacity == doctest::Approx(std::log2(1.25)).epsilon(1e-6));
  REQUIRE(z.input[1] == doctest::Approx(0.4).epsilon(1e-4));
}

TEST_CASE("mac informations") {
  const auto m = mac_informations(Mac::mod2(), {0.5, 0.5}, {0.5, 0.5});
  REQUIRE(m.i1 == doctest::Approx(1.0));
  REQUIRE(m.i2 == doctest::Approx(1.0));
  REQUIRE(m.sum == doctest::Approx(1.0));
  const auto c = mac_informations(Mac::collision_free(4, 2), {0.25, 0.25, 0.25, 0.25}, {0.5, 0.5});
  REQUIRE(c.sum == doctest::Approx(3.0));
  for (double a : {0.1, 0.5, 0.9})
    for (double b : {0.2, 0.5, 0.7}) {
      const auto t = mac_informations(Mac::push_to_talk(), {1 - a, a}, {1 - b, b});
      REQUIRE(t.sum == doctest::Approx(ptt_sum_closed_form(a, b)));
    }
}

TEST_CASE("mac vanishing-error region") {
  REQUIRE(mac_ve_region_contains(Mac::mod2(), {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}));
  REQUIRE_FALSE(mac_ve_region_contains(Mac::mod2(), {0.5, 0.5}, {0.5, 0.5}, {0.6, 0.5}));
  REQUIRE(mac_ve_region_contains_any(Mac::push_to_talk(), {0.0, 0.0}, 10));
  REQUIRE_FALSE(mac_ve_region_contains_any(Mac::push_to_talk(), {0.5, 0.5}, 20));
  REQUIRE(simplex_grid(2, 4).size() == 5);
  REQUIRE(simplex_grid(3, 4).size() == 15);
}

TEST_CASE("push-to-talk sum rate stays below 1 once both users can send 1") {
  double best = 0;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      const double a = i / 100.0, b = j / 100.0;
      const double s = mac_informations(Mac::push_to_talk(), {1 - a, a}, {1 - b, b}).sum;
      REQUIRE(s <= 1 - a * b + 1e-12);
      if (i > 0 && j > 0) best = std::max(best, s);
    }
  REQUIRE(best < 1.0);
  MESSAGE("best interior sum rate " << best);
}
