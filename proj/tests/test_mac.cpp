#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <set>

#include "phasedet/errors.hpp"
#include "phasedet/io.hpp"
#include "phasedet/mac.hpp"
#include "phasedet/simulate.hpp"

using namespace phasedet;

namespace {

Gf2Poly P(const char* s) { return Gf2Poly::parse(s); }

std::vector<std::uint8_t> unit_init(int r) {
  std::vector<std::uint8_t> v(static_cast<std::size_t>(r), 0);
  v[0] = 1;
  return v;
}

ConcatParams layer(const char* code, int l, int tau, const char* poly, std::uint64_t seed) {
  ConcatParams p;
  p.code = make_code(code);
  p.l = l;
  p.tau = tau;
  if (poly[0] != '\0') {
    p.base = BaseKind::MSequence;
    p.base_poly = P(poly);
  }
  p.seed = seed;
  return p;
}

RateSplitParams pair_instance() {
  RateSplitParams rp;
  rp.mac = Mac::collision_free(4, 2);
  rp.mac_spec = "pair:4x2";
  rp.f = {0, 1, 2, 3};
  rp.u = layer("identity:1", 5, 2, "0,1,4", 0);
  rp.x2 = layer("identity:1", 4, 1, "", 1);
  rp.v = layer("identity:1", 4, 1, "", 2);
  return rp;
}

// collision-free 4x2 MAC whose output is replaced by a uniform other symbol with probability eps
Mac noisy_pair(double eps) {
  std::vector<double> t(4 * 2 * 8, 0.0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 2; ++b)
      for (int y = 0; y < 8; ++y) t[static_cast<std::size_t>((a * 2 + b) * 8 + y)] = y == a * 2 + b ? 1 - eps : eps / 7;
  return Mac(4, 2, 8, t);
}

}  // namespace

TEST_CASE("crt map is a bijection") {
  for (auto [nu, nv] : {std::pair{7, 15}, std::pair{31, 8}, std::pair{63, 32}, std::pair{1, 5}}) {
    const CrtMap f = make_crt_map(nu, nv, 2, 2, {0, 1, 1, 0});
    std::set<PhasePair> seen;
    for (Phase m = 1; m <= static_cast<Phase>(nu * nv); ++m) {
      const auto pr = f.split(m);
      REQUIRE(pr.first >= 1);
      REQUIRE(pr.first <= static_cast<Phase>(nu));
      REQUIRE(pr.second <= static_cast<Phase>(nv));
      REQUIRE(f.join(pr.first, pr.second) == m);
      seen.insert(pr);
    }
    REQUIRE(seen.size() == static_cast<std::size_t>(nu * nv));
  }
  REQUIRE_THROWS_AS(make_crt_map(6, 15, 2, 2, {0, 1, 1, 0}), DomainError);
}

TEST_CASE("combined windows are built from layer windows") {
  const auto u = lfsr_generate(P("0,1,3"), unit_init(3));
  const auto v = lfsr_generate(P("0,1,4"), unit_init(4));
  const CrtMap f = make_crt_map(7, 15, 2, 2, {0, 1, 1, 0});
  const auto x = crt_combine(u, v, f);
  REQUIRE(x.size() == 105);
  for (Phase m = 1; m <= 105; ++m) {
    const auto [mu, mv] = f.split(m);
    for (std::uint64_t i = 0; i < 9; ++i) REQUIRE(x.at(m + i) == (u.at(mu + i) ^ v.at(mv + i)));
  }
  // a length-1 constant u just relabels v
  const auto flip = crt_combine(CyclicSequence(2, {1}), CyclicSequence(2, {0, 1, 1}), make_crt_map(1, 3, 2, 2, {0, 1, 1, 0}));
  REQUIRE(flip.symbols() == Word{1, 0, 0});
  REQUIRE(std::log2(105.0) / 9 == doctest::Approx(std::log2(7.0) / 9 + std::log2(15.0) / 9));
}

TEST_CASE("two-primitive scheme examples") {
  const auto s = build_mod2_two_primitives(P("0,1,3"), P("0,1,4"), 7);
  REQUIRE(s.seq1.size() == 7);
  REQUIRE(s.seq2.size() == 15);
  REQUIRE(s.detector == "syndrome");
  REQUIRE(s.rate1() == doctest::Approx(std::log2(7.0) / 7));
  const auto rep = unique_sum_report({s.seq1, s.seq2}, 7);
  REQUIRE(rep.total == 105);
  REQUIRE(rep.distinct == 105);
  REQUIRE(verify_unique_sum_decomposition(build_mod2_two_primitives(P("0,1,4"), P("0,1,3"), 7)));
  REQUIRE_THROWS_AS(build_mod2_two_primitives(P("0,1,3"), P("0,1,3"), 7), DomainError);
  REQUIRE_THROWS_AS(build_mod2_two_primitives(P("0,1,3"), P("0,1,4"), 6), DomainError);
  REQUIRE_THROWS_AS(build_mod2_two_primitives(P("0,1,2,3,4"), P("0,1,3"), 7), DomainError);
}

TEST_CASE("syndrome detector recovers every pair") {
  for (auto [a1, a2, k] : {std::tuple{"0,1,3", "0,1,4", 7}, std::tuple{"0,1,4", "0,2,5", 9}, std::tuple{"0,1,4", "0,1,3", 8}}) {
    const auto s = build_mod2_two_primitives(P(a1), P(a2), static_cast<std::uint64_t>(k));
    const SyndromeDetector det(s, P(a1));
    const auto kk = static_cast<std::uint64_t>(k);
    for (Phase m1 = 1; m1 <= s.seq1.size(); ++m1) REQUIRE(det.syndrome(s.seq1.window(m1, kk)) == 0);
    std::set<std::uint64_t> syn;
    for (Phase m2 = 1; m2 <= s.seq2.size(); ++m2) syn.insert(det.syndrome(s.seq2.window(m2, kk)));
    REQUIRE(syn.size() == s.seq2.size());
    REQUIRE(syn.count(0) == 0);
    Word y(kk);
    for (Phase m1 = 1; m1 <= s.seq1.size(); ++m1)
      for (Phase m2 = 1; m2 <= s.seq2.size(); ++m2) {
        for (std::uint64_t i = 0; i < kk; ++i) y[i] = s.seq1.at(m1 + i) ^ s.seq2.at(m2 + i);
        REQUIRE(det.detect(y) == MacDetection(PhasePair{m1, m2}));
      }
    REQUIRE(det.detect(s.seq1.window(1, kk)) == std::nullopt);
  }
}

TEST_CASE("unique sums edge cases") {
  const auto a = lfsr_generate(P("0,1,4"), unit_init(4));
  REQUIRE_FALSE(unique_sum_report({a, a}, 8).unique());
  REQUIRE(unique_sum_report({CyclicSequence(2, {1}), a}, 8).unique());
  REQUIRE_THROWS_AS(unique_sum_report({a, a}, 8, 100), ResourceError);
}

TEST_CASE("distinct primitive pairs give disjoint codebooks") {
  for (int r1 = 2; r1 <= 7; ++r1)
    for (int r2 = r1; r1 + r2 <= 14; ++r2) {
      const auto p1 = primitive_polynomials(r1);
      const auto p2 = primitive_polynomials(r2);
      const Gf2Poly a1 = p1.front();
      const Gf2Poly a2 = r1 == r2 ? (p2.size() > 1 ? p2[1] : Gf2Poly()) : p2.back();
      if (a2.is_zero()) continue;
      const auto k = static_cast<std::uint64_t>(r1 + r2);
      const auto s = build_mod2_two_primitives(a1, a2, k);
      std::set<Word> c1;
      for (Phase m = 1; m <= s.seq1.size(); ++m) c1.insert(s.seq1.window(m, k));
      for (Phase m = 1; m <= s.seq2.size(); ++m) REQUIRE(c1.count(s.seq2.window(m, k)) == 0);
      REQUIRE(verify_unique_sum_decomposition(s));
      const SyndromeDetector det(s, a1);
      std::set<std::uint64_t> syn;
      for (Phase m = 1; m <= s.seq2.size(); ++m) syn.insert(det.syndrome(s.seq2.window(m, k)));
      REQUIRE(syn.size() == s.seq2.size());
    }
}

TEST_CASE("three users decompose uniquely") {
  const auto s1 = lfsr_generate(P("0,1,3"), unit_init(3));
  const auto s2 = lfsr_generate(P("0,1,4"), unit_init(4));
  const auto s3 = lfsr_generate(P("0,2,5"), unit_init(5));
  const auto rep = unique_sum_report({s1, s2, s3}, 12);
  REQUIRE(rep.total == 7 * 15 * 31);
  REQUIRE(rep.unique());
}

TEST_CASE("rate splitting over a collision-free MAC recovers every pair") {
  const auto rs = RateSplitScheme::build(pair_instance());
  const auto& s = rs.scheme();
  REQUIRE(rs.u_layer().scheme().n() == 33);
  REQUIRE(rs.v_layer().scheme().n() == 28);
  REQUIRE(rs.x2_layer().scheme().n() == 28);
  REQUIRE(s.seq1.size() == 33 * 28);
  REQUIRE(s.k == 13);
  REQUIRE(s.k == rate_split_window_length({rs.params().u, rs.params().x2, rs.params().v}));
  REQUIRE(rs.tau_v_increments() == 0);
  REQUIRE(s.rate1() == doctest::Approx(std::log2(33.0) / 13 + std::log2(28.0) / 13));
  Rng rng(0);
  for (Phase m1 = 1; m1 <= s.seq1.size(); ++m1)
    for (Phase m2 = 1; m2 <= s.seq2.size(); ++m2) {
      const Word y = rs.params().mac.transmit(s.seq1.window(m1, s.k), s.seq2.window(m2, s.k), rng);
      const auto d = rs.detect(y);
      REQUIRE(d.phases == MacDetection(PhasePair{m1, m2}));
      REQUIRE(d.failed == SplitStage::None);
    }
}

TEST_CASE("tau_v grows until the layer lengths are coprime") {
  auto rp = pair_instance();
  rp.u = layer("identity:1", 4, 1, "", 0);            // 28
  rp.v = layer("identity:1", 5, 1, "0,1,4", 2);       // 24, then 33
  const auto rs = RateSplitScheme::build(rp);
  REQUIRE(rs.tau_v_increments() == 1);
  REQUIRE(rs.v_layer().scheme().n() == 33);
  REQUIRE(std::gcd(rs.u_layer().scheme().n(), rs.v_layer().scheme().n()) == 1);
  rp.max_tau_increments = 0;
  REQUIRE_THROWS_AS(RateSplitScheme::build(rp), DomainError);
  auto even = pair_instance();
  even.u = layer("identity:1", 4, 1, "", 0);
  even.max_tau_increments = 6;
  REQUIRE_THROWS_AS(RateSplitScheme::build(even), DomainError);
}

TEST_CASE("successive detection errors are covered by stage errors") {
  const auto rs = RateSplitScheme::build(pair_instance());
  const auto& s = rs.scheme();
  const Mac mac = noisy_pair(0.02);
  Rng rng(17);
  int e = 0, e1 = 0, e2 = 0, e3 = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const Phase m1 = rng.below(s.seq1.size()) + 1;
    const Phase m2 = rng.below(s.seq2.size()) + 1;
    const auto [mu, mv] = rs.crt().split(m1);
    const auto d = rs.detect(mac.transmit(s.seq1.window(m1, s.k), s.seq2.window(m2, s.k), rng));
    const bool bad = d.phases != MacDetection(PhasePair{m1, m2});
    const bool b1 = d.mu != DetectionResult(mu);
    const bool b2 = !b1 && d.m2 != DetectionResult(m2);
    const bool b3 = !b1 && !b2 && d.mv != DetectionResult(mv);
    e += bad;
    e1 += b1;
    e2 += b2;
    e3 += b3;
    REQUIRE((!bad || b1 || b2 || b3));
  }
  REQUIRE(e <= e1 + e2 + e3);
  MESSAGE("errors " << e << " stages " << e1 << "/" << e2 << "/" << e3);
}

TEST_CASE("mac scheme files round-trip") {
  SchemeBundle a;
  a.kind = "mac-mod2";
  a.poly1 = P("0,1,3");
  a.mac = build_mod2_two_primitives(a.poly1, P("0,1,4"), 7);
  SchemeBundle b;
  b.kind = "mac-split";
  b.split = std::make_shared<const RateSplitScheme>(RateSplitScheme::build(pair_instance()));
  b.mac = b.split->scheme();
  for (const auto& x : {a, b}) {
    const Json j = Json::parse(bundle_to_json(x).dump());
    REQUIRE(j.at("detector") == x.mac.detector);
    const auto again = rebuild_bundle(j);
    REQUIRE(again.mac.seq1 == x.mac.seq1);
    REQUIRE(again.mac.seq2 == x.mac.seq2);
    REQUIRE(compare_with_rebuild(j, again).matches);
  }
}

TEST_CASE("mac simulation over a noiseless channel has no errors") {
  SchemeBundle a;
  a.kind = "mac-mod2";
  a.poly1 = P("0,1,3");
  a.mac = build_mod2_two_primitives(a.poly1, P("0,1,4"), 7);
  const auto rep = simulate_bundle(a, parse_channel_spec("mod2"), 2000, 3);
  REQUIRE(rep.errors == 0);
  REQUIRE_THROWS_AS(simulate_bundle(a, parse_channel_spec("bsc:0.1"), 10, 3), DomainError);
  REQUIRE_THROWS_AS(simulate_bundle(a, parse_channel_spec("pair:4x2"), 10, 3), DomainError);
}
