#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "phasedet/bounds.hpp"
#include "phasedet/concat.hpp"
#include "phasedet/mac.hpp"
#include "phasedet/scheme.hpp"
#include "phasedet/simulate.hpp"
#include "phasedet/zero_error.hpp"

using namespace phasedet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

Gf2Poly P(const char* s) { return Gf2Poly::parse(s); }

std::vector<std::uint8_t> unit_init(int r) {
  std::vector<std::uint8_t> v(static_cast<std::size_t>(r), 0);
  v[0] = 1;
  return v;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome card_trick() {
  const Scheme s = build_adversarial(P("0,1,2,4,5"), 9);
  const MinDistanceDetector det(s);
  const int d = scheme_min_distance(s);
  std::uint64_t patterns = 0, failures = 0;
  for (Phase m = 1; m <= s.n(); ++m)
    for_each_flip_pattern(s.sequence.window(m, 9), 1, [&](const Word& y) {
      ++patterns;
      failures += det.detect(y) != DetectionResult(m);
      return true;
    });
  return {s.n() == 31 && d == 3 && patterns == 310 && failures == 0,
          fmt("n=%llu d=%d patterns=%llu failures=%llu", (unsigned long long)s.n(), d, (unsigned long long)patterns,
              (unsigned long long)failures)};
}

Outcome length_threshold() {
  const int k = thm4_min_k(20, 5, 3);
  const bool at41 = thm4_feasible(20, 5, 3, 41);
  return {k == 42 && !at41, fmt("min_k=%d feasible(41)=%d", k, at41 ? 1 : 0)};
}

Outcome new_ub() {
  const bool at = newub_violated(0.05, 0.6927, 0.03073);
  const auto scan = newub_scan(0.05, 0.6927, 1e-4);
  double nearest = -1;
  for (double mu : scan.violating_mu)
    if (nearest < 0 || std::abs(mu - 0.03073) < std::abs(nearest - 0.03073)) nearest = mu;
  const bool close = nearest >= 0 && std::abs(nearest - 0.03073) <= 2e-4;
  return {at && close, fmt("violated at 0.03073=%d nearest grid mu=%.4f", at ? 1 : 0, nearest)};
}

Outcome debruijn_property() {
  std::uint64_t bad = 0, phases = 0;
  for (int r = 1; r <= 16; ++r) {
    const auto db = debruijn_generate(2, r);
    const auto& s = db.sequence;
    if (s.size() != (std::uint64_t{1} << r)) ++bad;
    std::vector<std::uint32_t> count(std::uint64_t{1} << r, 0);
    Word w(static_cast<std::size_t>(r));
    for (Phase m = 1; m <= s.size(); ++m) {
      s.window_into(m, static_cast<std::uint64_t>(r), w.data());
      ++count[window_rank(w, 2)];
      bad += debruijn_decode(*db.index, w) != m;
      ++phases;
    }
    for (auto c : count) bad += c != 1;
  }
  return {bad == 0, fmt("orders 1..16, %llu phases, %llu defects", (unsigned long long)phases, (unsigned long long)bad)};
}

// packed k-bit windows of a binary sequence
std::vector<std::string> packed_windows(const CyclicSequence& s, std::uint64_t k) {
  std::vector<std::string> out;
  out.reserve(s.size());
  Word w(k);
  for (Phase m = 1; m <= s.size(); ++m) {
    s.window_into(m, k, w.data());
    std::string b((k + 7) / 8, '\0');
    for (std::uint64_t i = 0; i < k; ++i)
      if (w[i]) b[i / 8] = static_cast<char>(b[i / 8] | (1 << (i % 8)));
    out.push_back(std::move(b));
  }
  return out;
}

bool xor_closed(const CyclicSequence& s, std::uint64_t k) {
  auto words = packed_windows(s, k);
  std::unordered_set<std::string> code(words.begin(), words.end());
  code.insert(std::string((k + 7) / 8, '\0'));
  std::vector<std::string> all(code.begin(), code.end());
  std::string x;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      x = all[i];
      for (std::size_t b = 0; b < x.size(); ++b) x[b] = static_cast<char>(x[b] ^ all[j][b]);
      if (!code.count(x)) return false;
    }
  return true;
}

Outcome linearity() {
  int polys = 0, open = 0;
  for (int r = 1; r <= 10; ++r)
    for (const auto& a : primitive_polynomials(r)) {
      ++polys;
      const auto s = lfsr_generate(a, unit_init(r));
      for (std::uint64_t k : {static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(2 * r), s.size()})
        open += !xor_closed(s, k);
    }
  // flip one bit of an m-sequence
  const auto base = lfsr_generate(P("0,3,7"), unit_init(7));
  Word sym = base.symbols();
  sym[10] ^= 1;
  const CyclicSequence control(2, sym);
  int control_closed = 0;
  for (std::uint64_t k : {7u, 14u, 127u}) control_closed += xor_closed(control, k);
  return {open == 0 && control_closed == 0,
          fmt("%d polynomials, %d not closed; control closed at %d of 3 lengths", polys, open, control_closed)};
}

Outcome weight_concentration() {
  int polys = 0;
  std::uint64_t checks = 0, violations = 0;
  for (int r = 1; r <= 14; ++r)
    for (const auto& a : primitive_polynomials(r)) {
      ++polys;
      const auto s = lfsr_generate(a, unit_init(r));
      const std::uint64_t n = s.size();
      std::vector<std::uint64_t> pre(2 * n + 1, 0);
      for (std::uint64_t i = 0; i < 2 * n; ++i) pre[i + 1] = pre[i] + s.symbols()[i % n];
      const double nn = static_cast<double>(n);
      const double bound = std::sqrt(nn) * (std::log2(nn) / M_PI + 1);
      for (std::uint64_t k : {static_cast<std::uint64_t>(r), (n + 1) / 2, n})
        for (std::uint64_t m = 0; m < n; ++m) {
          const double wt = static_cast<double>(pre[m + k] - pre[m]);
          violations += std::abs(wt - static_cast<double>(k) / 2) > bound;
          ++checks;
        }
    }
  return {violations == 0, fmt("%d polynomials, %llu windows, %llu violations", polys, (unsigned long long)checks,
                               (unsigned long long)violations)};
}

Outcome zero_error() {
  const auto zs = ZeroErrorScheme::build(pentagon_params(3));
  const auto& s = zs.scheme();
  std::uint64_t undetermined = 0;
  for (Phase m = 1; m <= s.n(); ++m) {
    const auto o = zs.detect_all_outputs(m);
    undetermined += !(o.determinate && o.phase == m);
  }
  const Dmc ch = Dmc::typewriter(5);
  Rng rng(2024);
  std::uint64_t sampled_wrong = 0;
  const std::uint64_t samples = 1000000;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Phase m = rng.below(s.n()) + 1;
    sampled_wrong += zs.detect(ch.transmit(s.sequence.window(m, s.k), rng)) != DetectionResult(m);
  }
  const auto confusable = zs.sync_confusable_positions();
  return {s.k == 20 && undetermined == 0 && sampled_wrong == 0 && confusable == 0,
          fmt("n=%llu k=%llu; all outputs of %llu phases resolved by set proof with %llu failures; %llu sampled outputs, "
              "%llu wrong; sync confusable at %llu positions; full 2^20 output enumeration per phase not run",
              (unsigned long long)s.n(), (unsigned long long)s.k, (unsigned long long)s.n(),
              (unsigned long long)undetermined, (unsigned long long)samples, (unsigned long long)sampled_wrong,
              (unsigned long long)confusable)};
}

std::uint64_t mod2_failures(const MacScheme& s, const Gf2Poly& a1, std::uint64_t& pairs) {
  const SyndromeDetector det(s, a1);
  std::uint64_t bad = 0;
  Word y(s.k);
  for (Phase m1 = 1; m1 <= s.seq1.size(); ++m1)
    for (Phase m2 = 1; m2 <= s.seq2.size(); ++m2) {
      for (std::uint64_t i = 0; i < s.k; ++i) y[i] = s.seq1.at(m1 + i) ^ s.seq2.at(m2 + i);
      bad += det.detect(y) != MacDetection(PhasePair{m1, m2});
      ++pairs;
    }
  return bad;
}

Outcome mod2_mac() {
  std::string detail;
  bool ok = true;
  for (auto [a1, a2, k, expect] : {std::tuple{"0,1,3", "0,1,4", 7, 105}, std::tuple{"0,1,4", "0,2,5", 9, 465}}) {
    const auto s = build_mod2_two_primitives(P(a1), P(a2), static_cast<std::uint64_t>(k));
    const auto rep = unique_sum_report({s.seq1, s.seq2}, s.k);
    std::uint64_t pairs = 0;
    const auto bad = mod2_failures(s, P(a1), pairs);
    ok = ok && rep.unique() && rep.total == static_cast<std::uint64_t>(expect) && bad == 0;
    detail += fmt("%s%llu/%llu distinct, %llu/%llu detected", detail.empty() ? "" : "; ",
                  (unsigned long long)rep.distinct, (unsigned long long)rep.total,
                  (unsigned long long)(pairs - bad), (unsigned long long)pairs);
  }
  return {ok, detail};
}

Outcome rate_frontier() {
  const auto polys = primitive_polynomials(10);
  const auto s = build_mod2_two_primitives(polys[0], polys[1], 20);
  const double sum = s.rate1() + s.rate2();
  const double expect = 2 * std::log2(1023.0) / 20;
  const auto rep = unique_sum_report({s.seq1, s.seq2}, 20);
  std::uint64_t pairs = 0;
  const auto bad = mod2_failures(s, polys[0], pairs);
  return {sum >= 0.95 && std::abs(sum - expect) < 1e-12 && sum <= 1 && rep.unique() && bad == 0,
          fmt("R1+R2=%.5f over %llu pairs, sums distinct=%d, detection failures=%llu", sum,
              (unsigned long long)pairs, rep.unique() ? 1 : 0, (unsigned long long)bad)};
}

Outcome vanishing_error() {
  std::vector<SimReport> reps;
  std::uint64_t noiseless_bad = 0, noiseless_phases = 0;
  for (int t : {5, 15}) {
    ConcatParams p;
    p.code = repetition(t);
    p.l = 8;
    p.tau = t;
    p.seed = 1;
    const auto cs = std::make_shared<const ConcatScheme>(ConcatScheme::build(p));
    const ConcatDetector det(cs, Dmc::bsc(0.05));
    reps.push_back(simulate_p2p(cs->scheme(), Dmc::bsc(0.05), [&](std::span<const Symbol> y) { return det.detect(y); },
                                10000, 5));
    const auto& s = cs->scheme();
    for (Phase m = 1; m <= s.n(); ++m) {
      noiseless_bad += det.detect(transmit_dmc(Dmc::bsc(0.0), s.sequence.window(m, s.k), m)) != DetectionResult(m);
      ++noiseless_phases;
    }
  }
  const bool lower = reps[1].rate < reps[0].rate;
  const bool disjoint = reps[1].wilson_high < reps[0].wilson_low;
  return {lower && disjoint && noiseless_bad == 0,
          fmt("t=5 rate %.4f [%.4f,%.4f]; t=15 rate %.4f [%.4f,%.4f]; BSC(0) %llu/%llu phases wrong", reps[0].rate,
              reps[0].wilson_low, reps[0].wilson_high, reps[1].rate, reps[1].wilson_low, reps[1].wilson_high,
              (unsigned long long)noiseless_bad, (unsigned long long)noiseless_phases)};
}

Outcome capacity() {
  double worst = 0;
  for (int i = 1; i <= 49; ++i) {
    const double p = i / 100.0;
    worst = std::max(worst, std::abs(dmc_capacity(Dmc::bsc(p)).capacity - (1 - binary_entropy(p))));
  }
  // points with sum rate 1 may only be the corners (1,0) and (0,1)
  const Mac ptt = Mac::push_to_talk();
  double best_off_corner = 0;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      const double a = i / 100.0, b = j / 100.0;
      const auto mi = mac_informations(ptt, {1 - a, a}, {1 - b, b});
      const bool corner = (std::abs(mi.i1 - 1) < 1e-9 && mi.i2 < 1e-9) || (std::abs(mi.i2 - 1) < 1e-9 && mi.i1 < 1e-9);
      if (!corner) best_off_corner = std::max(best_off_corner, mi.sum);
    }
  return {worst <= 1e-6 && best_off_corner < 1.0,
          fmt("max BSC deviation %.2e; push-to-talk best off-corner sum rate %.6f", worst, best_off_corner)};
}

Outcome crt() {
  struct Case {
    CyclicSequence u, v;
  };
  const std::vector<Case> cases = {
      {lfsr_generate(P("0,1,3"), unit_init(3)), lfsr_generate(P("0,1,4"), unit_init(4))},
      {lfsr_generate(P("0,2,5"), unit_init(5)), debruijn_generate(2, 3).sequence},
      {lfsr_generate(P("0,1,6"), unit_init(6)), debruijn_generate(2, 5).sequence},
  };
  std::uint64_t bad = 0, windows = 0;
  for (const auto& c : cases) {
    const auto nu = c.u.size(), nv = c.v.size();
    const CrtMap f = make_crt_map(nu, nv, 2, 2, {0, 1, 1, 0});
    const auto x = crt_combine(c.u, c.v, f);
    bad += x.size() != nu * nv;
    std::set<PhasePair> seen;
    for (Phase m = 1; m <= x.size(); ++m) {
      const auto pr = f.split(m);
      bad += f.join(pr.first, pr.second) != m;
      seen.insert(pr);
      for (std::uint64_t k : {std::uint64_t{1}, std::uint64_t{12}, nu + nv}) {
        const Word w = x.window(m, k);
        for (std::uint64_t i = 0; i < k; ++i) bad += w[i] != f.apply(c.u.at(pr.first + i), c.v.at(pr.second + i));
        ++windows;
      }
    }
    bad += seen.size() != nu * nv;
  }
  return {bad == 0, fmt("(7,15) (31,8) (63,32): %llu windows, %llu mismatches", (unsigned long long)windows,
                        (unsigned long long)bad)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "card-trick scheme 31/9", 1, card_trick},
      {2, "linear scheme length threshold", 5, length_threshold},
      {3, "weight-3 linear bound violation", 10, new_ub},
      {4, "de Bruijn property", 30, debruijn_property},
      {5, "m-sequence codebooks are linear", 60, linearity},
      {6, "weight concentration", 60, weight_concentration},
      {7, "pentagon zero-error detection", 300, zero_error},
      {8, "mod-2 MAC zero error", 1, mod2_mac},
      {9, "mod-2 MAC rate frontier", 60, rate_frontier},
      {10, "concatenated scheme error trend", 300, vanishing_error},
      {11, "capacity calculators", 60, capacity},
      {12, "CRT combination", 10, crt},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s limit", c.limit_seconds);
    }
    failed += !o.pass;
    std::printf("[%s] %d %s (%.2f s) %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
