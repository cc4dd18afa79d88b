#include "phasedet/mac.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phasedet/errors.hpp"

namespace phasedet {

double MacScheme::rate1() const { return std::log2(static_cast<double>(seq1.size())) / static_cast<double>(k); }
double MacScheme::rate2() const { return std::log2(static_cast<double>(seq2.size())) / static_cast<double>(k); }

namespace {

// inverse of a modulo m, assuming gcd(a, m) = 1
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  __int128 t = 0;
  __int128 new_t = 1;
  __int128 r = m;
  __int128 new_r = a % m;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    t = t - q * new_t;
    std::swap(t, new_t);
    r = r - q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t pack_bits(const CyclicSequence& seq, Phase m, std::uint64_t k) {
  std::uint64_t v = 0;
  for (std::uint64_t i = 0; i < k; ++i) v |= static_cast<std::uint64_t>(seq.at(m + i) & 1U) << i;
  return v;
}

}  // namespace

PhasePair CrtMap::split(Phase m1) const {
  if (m1 == 0 || m1 > n_u * n_v) throw DomainError("phase outside [n_u n_v]");
  return {(m1 - 1) % n_u + 1, (m1 - 1) % n_v + 1};
}

Phase CrtMap::join(Phase m_u, Phase m_v) const {
  if (m_u == 0 || m_u > n_u || m_v == 0 || m_v > n_v) throw DomainError("layer phase out of range");
  const std::uint64_t a = m_u - 1;
  const std::uint64_t b = m_v - 1;
  const std::uint64_t inv = mod_inverse(n_u % n_v, n_v);
  const auto diff = static_cast<unsigned __int128>((b + n_v - a % n_v) % n_v);
  const auto step = static_cast<std::uint64_t>(diff * inv % n_v);
  return a + n_u * step + 1;
}

CrtMap make_crt_map(std::uint64_t n_u, std::uint64_t n_v, int u_alphabet, int v_alphabet, std::vector<Symbol> table) {
  if (n_u == 0 || n_v == 0) throw DomainError("layer lengths must be positive");
  if (std::gcd(n_u, n_v) != 1) {
    throw DomainError("layer lengths " + std::to_string(n_u) + " and " + std::to_string(n_v) + " are not coprime");
  }
  if (table.size() != static_cast<std::size_t>(u_alphabet) * v_alphabet) throw DomainError("symbol map has the wrong size");
  CrtMap map;
  map.n_u = n_u;
  map.n_v = n_v;
  map.u_alphabet = u_alphabet;
  map.v_alphabet = v_alphabet;
  map.table = std::move(table);
  map.out_alphabet = static_cast<int>(*std::max_element(map.table.begin(), map.table.end())) + 1;
  return map;
}

CyclicSequence crt_combine(const CyclicSequence& u, const CyclicSequence& v, const CrtMap& f) {
  if (u.size() != f.n_u || v.size() != f.n_v) throw DomainError("sequence lengths differ from the CRT map");
  if (std::gcd(u.size(), v.size()) != 1) throw DomainError("sequence lengths are not coprime");
  if (u.alphabet() > f.u_alphabet || v.alphabet() > f.v_alphabet) throw DomainError("symbol map alphabet too small");
  const std::uint64_t n = u.size() * v.size();
  Word out(n);
  for (std::uint64_t i = 0; i < n; ++i) out[i] = f.apply(u.symbols()[i % u.size()], v.symbols()[i % v.size()]);
  return CyclicSequence(f.out_alphabet, std::move(out));
}

MacScheme build_mod2_two_primitives(const Gf2Poly& a1, const Gf2Poly& a2, std::uint64_t k) {
  if (a1 == a2) throw DomainError("the two polynomials must differ");
  if (!is_primitive(a1) || !is_primitive(a2)) throw DomainError("both polynomials must be primitive");
  const int r1 = a1.degree();
  const int r2 = a2.degree();
  if (k < static_cast<std::uint64_t>(r1 + r2)) throw DomainError("window length must be at least r1 + r2");
  auto seed = [](int r) {
    std::vector<std::uint8_t> init(static_cast<std::size_t>(r), 0);
    init[0] = 1;
    return init;
  };
  MacScheme s;
  s.seq1 = lfsr_generate(a1, seed(r1));
  s.seq2 = lfsr_generate(a2, seed(r2));
  validate_window_length(k, std::max(s.seq1.size(), s.seq2.size()));
  s.k = k;
  s.detector = "syndrome";
  s.construction = Json{{"kind", "mac-mod2"}, {"poly1", a1.to_exponent_string()}, {"poly2", a2.to_exponent_string()}};
  return s;
}

SyndromeDetector::SyndromeDetector(const MacScheme& scheme, const Gf2Poly& a1)
    : scheme_(scheme), a1_(a1), r1_(a1.degree()) {
  if (scheme.seq1.alphabet() != 2 || scheme.seq2.alphabet() != 2) throw DomainError("syndrome detection needs binary sequences");
  if (scheme.k > 64 + static_cast<std::uint64_t>(r1_) || scheme.k > 64) throw DomainError("syndrome detector supports k <= 64");
  if (scheme.k < static_cast<std::uint64_t>(r1_)) throw DomainError("window shorter than the degree of a1");
  index1_ = std::make_shared<const LfsrStateIndex>(scheme.seq1, r1_);
  for (Phase m2 = 1; m2 <= scheme.seq2.size(); ++m2) {
    const Word w = scheme.seq2.window(m2, scheme.k);
    const std::uint64_t s = syndrome(w);
    if (s == 0) throw DomainError("a window of the second sequence lies in the null space of H");
    if (!table_.emplace(s, m2).second) throw DomainError("syndrome map is not injective on the second codebook");
  }
}

std::uint64_t SyndromeDetector::syndrome(std::span<const Symbol> y) const {
  if (y.size() != scheme_.k) throw DomainError("observation length differs from k");
  const std::size_t rows = y.size() - static_cast<std::size_t>(r1_);
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < rows; ++j) {
    Symbol bit = 0;
    for (int i = 0; i <= r1_; ++i) {
      if (a1_.coeff(i)) bit ^= y[j + static_cast<std::size_t>(i)] & 1U;
    }
    s |= static_cast<std::uint64_t>(bit) << j;
  }
  return s;
}

MacDetection SyndromeDetector::detect(std::span<const Symbol> y) const {
  for (Symbol b : y) {
    if (b > 1) throw DomainError("syndrome detector needs binary observations");
  }
  const std::uint64_t s = syndrome(y);
  if (s == 0) return std::nullopt;
  auto it = table_.find(s);
  if (it == table_.end()) return std::nullopt;
  const Phase m2 = it->second;
  const Word phi2 = scheme_.seq2.window(m2, scheme_.k);
  Word phi1(y.begin(), y.end());
  for (std::size_t i = 0; i < phi1.size(); ++i) phi1[i] ^= phi2[i];
  auto m1 = index1_->decode(std::span<const Symbol>(phi1.data(), static_cast<std::size_t>(r1_)));
  if (!m1) return std::nullopt;
  if (scheme_.seq1.window(*m1, scheme_.k) != phi1) return std::nullopt;
  return PhasePair{*m1, m2};
}

UniqueSumReport unique_sum_report(const std::vector<CyclicSequence>& seqs, std::uint64_t k, std::uint64_t budget) {
  if (seqs.empty()) throw DomainError("need at least one sequence");
  if (k > 64) throw DomainError("unique-sum check supports k <= 64");
  UniqueSumReport report;
  report.total = 1;
  for (const auto& s : seqs) {
    if (s.alphabet() != 2) throw DomainError("unique-sum check needs binary sequences");
    if (report.total > budget / s.size()) throw ResourceError("product of sequence lengths exceeds the exhaustion budget");
    report.total *= s.size();
  }
  std::vector<std::vector<std::uint64_t>> packed(seqs.size());
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (Phase m = 1; m <= seqs[i].size(); ++m) packed[i].push_back(pack_bits(seqs[i], m, k));
  }
  std::vector<std::uint64_t> sums;
  sums.reserve(report.total);
  std::vector<std::size_t> idx(seqs.size(), 0);
  // odometer over all index tuples
  for (;;) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < seqs.size(); ++i) acc ^= packed[i][idx[i]];
    sums.push_back(acc);
    std::size_t d = seqs.size();
    while (d > 0) {
      --d;
      if (++idx[d] < packed[d].size()) break;
      idx[d] = 0;
      if (d == 0) {
        d = seqs.size() + 1;
        break;
      }
    }
    if (d == seqs.size() + 1) break;
  }
  std::sort(sums.begin(), sums.end());
  report.distinct = static_cast<std::uint64_t>(std::unique(sums.begin(), sums.end()) - sums.begin());
  return report;
}

bool verify_unique_sum_decomposition(const MacScheme& s, std::uint64_t budget) {
  return unique_sum_report({s.seq1, s.seq2}, s.k, budget).unique();
}

std::uint64_t rate_split_window_length(const std::vector<ConcatParams>& layers) {
  std::uint64_t lt = 0;
  std::uint64_t tau = 0;
  std::uint64_t margin = 0;
  for (const auto& p : layers) {
    if (!p.code) throw DomainError("layer is missing its code");
    const auto t = static_cast<std::uint64_t>(p.code->length());
    lt = std::max(lt, static_cast<std::uint64_t>(p.l) * t);
    tau = std::max(tau, static_cast<std::uint64_t>(p.tau));
    margin = std::max({margin, t, static_cast<std::uint64_t>(p.tau)});
  }
  return lt + 3 * tau + margin;
}

namespace {

void check_pmf(const std::vector<double>& p, const char* what) {
  if (p.size() != 2) throw DomainError(std::string(what) + " pmf must be binary");
  if (p[0] < 0 || p[1] < 0 || std::abs(p[0] + p[1] - 1.0) > kStochasticTolerance) {
    throw DomainError(std::string(what) + " pmf must be a probability vector");
  }
}

}  // namespace

RateSplitScheme RateSplitScheme::build(RateSplitParams params) {
  check_pmf(params.pu, "u");
  check_pmf(params.pv, "v");
  check_pmf(params.px2, "x2");
  const Mac& mac = params.mac;
  if (mac.x2_size() != 2) throw DomainError("rate splitting needs a binary second user");
  if (params.f.size() != 4) throw DomainError("symbol map f(u, v) must have four entries");
  for (Symbol x : params.f) {
    if (x >= static_cast<Symbol>(mac.x1_size())) throw DomainError("symbol map leaves the first user's alphabet");
  }
  RateSplitScheme rs;
  const int ny = mac.y_size();
  auto x1_of = [&](int u, int v) { return params.f[static_cast<std::size_t>(u * 2 + v)]; };

  // U -> Y
  std::vector<std::vector<double>> mu(2, std::vector<double>(static_cast<std::size_t>(ny), 0.0));
  // X2 -> (Y, U), output y + |Y| u
  std::vector<std::vector<double>> m2(2, std::vector<double>(static_cast<std::size_t>(2 * ny), 0.0));
  // V -> (Y, U, X2), output y + |Y| (u + 2 x2)
  std::vector<std::vector<double>> mv(2, std::vector<double>(static_cast<std::size_t>(4 * ny), 0.0));
  for (int u = 0; u < 2; ++u) {
    for (int v = 0; v < 2; ++v) {
      for (int x2 = 0; x2 < 2; ++x2) {
        for (int y = 0; y < ny; ++y) {
          const double p = mac.prob(x1_of(u, v), static_cast<Symbol>(x2), static_cast<Symbol>(y));
          const auto yu = static_cast<std::size_t>(y);
          mu[static_cast<std::size_t>(u)][yu] += params.pv[static_cast<std::size_t>(v)] * params.px2[static_cast<std::size_t>(x2)] * p;
          m2[static_cast<std::size_t>(x2)][yu + static_cast<std::size_t>(ny * u)] +=
              params.pu[static_cast<std::size_t>(u)] * params.pv[static_cast<std::size_t>(v)] * p;
          mv[static_cast<std::size_t>(v)][yu + static_cast<std::size_t>(ny * (u + 2 * x2))] +=
              params.pu[static_cast<std::size_t>(u)] * params.px2[static_cast<std::size_t>(x2)] * p;
        }
      }
    }
  }
  rs.u_channel_ = Dmc(mu);
  rs.x2_channel_ = Dmc(m2);
  rs.v_channel_ = Dmc(mv);

  params.u.sync_pmf = params.pu;
  params.x2.sync_pmf = params.px2;
  params.v.sync_pmf = params.pv;
  auto u_layer = ConcatScheme::build(params.u);
  auto x2_layer = ConcatScheme::build(params.x2);
  const std::uint64_t n_u = u_layer.scheme().n();
  int increments = 0;
  ConcatScheme v_layer = ConcatScheme::build(params.v);
  while (std::gcd(n_u, v_layer.scheme().n()) != 1) {
    if (increments >= params.max_tau_increments) {
      throw DomainError("could not make the u and v layer lengths coprime by raising tau_v");
    }
    ++increments;
    ++params.v.tau;
    v_layer = ConcatScheme::build(params.v);
  }
  rs.tau_v_increments_ = increments;
  rs.params_ = params;
  rs.u_ = std::make_shared<const ConcatScheme>(std::move(u_layer));
  rs.x2_ = std::make_shared<const ConcatScheme>(std::move(x2_layer));
  rs.v_ = std::make_shared<const ConcatScheme>(std::move(v_layer));
  rs.crt_ = make_crt_map(n_u, rs.v_->scheme().n(), 2, 2, params.f);
  rs.crt_.out_alphabet = mac.x1_size();

  rs.scheme_.seq1 = crt_combine(rs.u_->scheme().sequence, rs.v_->scheme().sequence, rs.crt_);
  rs.scheme_.seq2 = rs.x2_->scheme().sequence;
  rs.scheme_.k = rate_split_window_length({params.u, params.x2, params.v});
  validate_window_length(rs.scheme_.k, std::min(rs.scheme_.seq1.size(), rs.scheme_.seq2.size()));
  rs.scheme_.detector = "successive";
  rs.scheme_.construction = Json{{"kind", "mac-split"},
                                 {"mac", params.mac_spec},
                                 {"f", params.f},
                                 {"pu", params.pu},
                                 {"pv", params.pv},
                                 {"px2", params.px2},
                                 {"u", rs.u_->scheme().construction},
                                 {"x2", rs.x2_->scheme().construction},
                                 {"v", rs.v_->scheme().construction},
                                 {"tau_v_increments", increments}};

  rs.u_det_ = std::make_shared<const ConcatDetector>(rs.u_, rs.u_channel_);
  rs.x2_det_ = std::make_shared<const ConcatDetector>(rs.x2_, rs.x2_channel_);
  rs.v_det_ = std::make_shared<const ConcatDetector>(rs.v_, rs.v_channel_);
  return rs;
}

RateSplitDetection RateSplitScheme::detect(std::span<const Symbol> y) const {
  RateSplitDetection out;
  if (y.size() != scheme_.k) throw DomainError("observation length differs from k");
  const auto ny = static_cast<Symbol>(params_.mac.y_size());
  for (Symbol v : y) {
    if (v >= ny) throw DomainError("observation symbol outside the MAC output");
  }
  const auto mu = u_det_->detect(y.first(u_det_->k()));
  out.mu = mu;
  if (!mu) {
    out.failed = SplitStage::U;
    return out;
  }
  const Word u = u_->scheme().sequence.window(*mu, y.size());
  Word y2(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) y2[i] = y[i] + ny * u[i];
  const auto m2 = x2_det_->detect(std::span<const Symbol>(y2.data(), x2_det_->k()));
  out.m2 = m2;
  if (!m2) {
    out.failed = SplitStage::X2;
    return out;
  }
  const Word x2 = x2_->scheme().sequence.window(*m2, y.size());
  Word yv(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) yv[i] = y[i] + ny * (u[i] + 2 * x2[i]);
  const auto mv = v_det_->detect(std::span<const Symbol>(yv.data(), v_det_->k()));
  out.mv = mv;
  if (!mv) {
    out.failed = SplitStage::V;
    return out;
  }
  out.phases = PhasePair{crt_.join(*mu, *mv), *m2};
  return out;
}

}  // namespace phasedet
