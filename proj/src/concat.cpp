#include "phasedet/concat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phasedet/errors.hpp"

namespace phasedet {

std::uint64_t concat_window_length(int t, int l, int tau) {
  return static_cast<std::uint64_t>(l) * t + 3ULL * tau + static_cast<std::uint64_t>(std::max(t, tau));
}

double concat_rate_formula(int r, int s, int t, int l, int tau) {
  const double n = std::ldexp(1.0, r) * static_cast<double>(l * t + 3 * tau) / static_cast<double>(l * s);
  return std::log2(n) / static_cast<double>(concat_window_length(t, l, tau));
}

std::uint64_t ConcatScheme::chunk_start(std::uint64_t w) const {
  const auto l = static_cast<std::uint64_t>(params_.l);
  return w * static_cast<std::uint64_t>(t_) + ((w + l - 1) / l) * 3ULL * static_cast<std::uint64_t>(params_.tau);
}

std::uint64_t ConcatScheme::sync_start(std::uint64_t g) const {
  return chunk_start(g * static_cast<std::uint64_t>(params_.l)) + static_cast<std::uint64_t>(t_);
}

ConcatScheme ConcatScheme::build(const ConcatParams& params) {
  if (!params.code) throw DomainError("concatenated scheme needs a channel code");
  if (params.l < 1) throw DomainError("l must be >= 1");
  if (params.tau < 1) throw DomainError("tau must be >= 1");
  if (params.sync_pmf.size() != 2) throw DomainError("sync pmf must be binary");
  {
    const double total = params.sync_pmf[0] + params.sync_pmf[1];
    if (params.sync_pmf[0] < 0 || params.sync_pmf[1] < 0 || std::abs(total - 1.0) > kStochasticTolerance) {
      throw DomainError("sync pmf must be a probability vector");
    }
  }
  ConcatScheme cs;
  cs.params_ = params;
  cs.s_ = params.code->message_bits();
  cs.t_ = params.code->length();
  if (cs.s_ < 1) throw DomainError("code must carry at least one bit");
  const int r = cs.s_ * params.l;
  Json base_json;
  if (params.base == BaseKind::DeBruijn) {
    auto db = debruijn_generate(2, r);
    cs.base_ = std::move(db.sequence);
    cs.index_ = db.index;
    base_json = Json{{"kind", "debruijn"}, {"order", r}};
  } else {
    const int d = params.base_poly.degree();
    if (d < 1 || d > r) throw DomainError("m-sequence base degree must lie in 1..s*l");
    std::vector<std::uint8_t> init(static_cast<std::size_t>(d), 0);
    init[0] = 1;
    cs.base_ = lfsr_generate(params.base_poly, init);
    cs.index_ = std::make_shared<const LfsrStateIndex>(cs.base_, d);
    base_json = Json{{"kind", "msequence"}, {"poly", params.base_poly.to_exponent_string()}};
  }
  const std::uint64_t base_len = cs.base_.size();
  if (base_len % static_cast<std::uint64_t>(cs.s_) != 0) {
    throw DomainError("base length " + std::to_string(base_len) + " is not a multiple of s = " + std::to_string(cs.s_));
  }
  cs.chunks_ = base_len / static_cast<std::uint64_t>(cs.s_);
  if (cs.chunks_ % static_cast<std::uint64_t>(params.l) != 0) {
    throw DomainError("chunk count " + std::to_string(cs.chunks_) + " is not a multiple of l = " +
                      std::to_string(params.l) + "; sequence length would not be an integer");
  }
  cs.groups_ = cs.chunks_ / static_cast<std::uint64_t>(params.l);

  Rng rng(params.seed);
  cs.sync_.resize(3ULL * static_cast<std::uint64_t>(params.tau));
  for (auto& b : cs.sync_) b = rng.uniform() < params.sync_pmf[0] ? 0 : 1;

  const auto t = static_cast<std::uint64_t>(cs.t_);
  const std::uint64_t n = cs.groups_ * (static_cast<std::uint64_t>(params.l) * t + 3ULL * params.tau);
  Word x;
  x.reserve(n);
  auto emit_chunk = [&](std::uint64_t w) {
    const auto bits = cs.base_.window(w * static_cast<std::uint64_t>(cs.s_) + 1, static_cast<std::uint64_t>(cs.s_));
    const Word cw = params.code->encode(from_bits(bits));
    x.insert(x.end(), cw.begin(), cw.end());
  };
  emit_chunk(0);
  for (std::uint64_t g = 0; g < cs.groups_; ++g) {
    x.insert(x.end(), cs.sync_.begin(), cs.sync_.end());
    for (int i = 1; i <= params.l; ++i) {
      const std::uint64_t w = g * static_cast<std::uint64_t>(params.l) + static_cast<std::uint64_t>(i);
      if (w >= cs.chunks_) break;
      emit_chunk(w);
    }
  }
  if (x.size() != n) throw std::logic_error("concatenated layout length mismatch");

  cs.scheme_.sequence = CyclicSequence(2, std::move(x));
  cs.scheme_.k = concat_window_length(cs.t_, params.l, params.tau);
  validate_window_length(cs.scheme_.k, n);
  cs.scheme_.kind = "concat";
  cs.scheme_.construction = Json{{"kind", "concat"},
                                 {"code", params.code->spec()},
                                 {"l", params.l},
                                 {"tau", params.tau},
                                 {"base", base_json},
                                 {"sync_pmf", params.sync_pmf},
                                 {"seed", params.seed}};
  return cs;
}

namespace {

double safe_log(double p) { return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity(); }

}  // namespace

ConcatDetector::ConcatDetector(std::shared_ptr<const ConcatScheme> scheme, Dmc channel)
    : scheme_(std::move(scheme)), channel_(std::move(channel)) {
  if (!scheme_) throw DomainError("detector needs a scheme");
  if (channel_.input_size() != 2) throw DomainError("concatenated scheme needs a binary-input channel");
  const int ny = channel_.output_size();
  log_p_.assign(2, std::vector<double>(static_cast<std::size_t>(ny)));
  for (Symbol x = 0; x < 2; ++x) {
    for (int y = 0; y < ny; ++y) log_p_[x][static_cast<std::size_t>(y)] = safe_log(channel_.prob(x, static_cast<Symbol>(y)));
  }
  const auto q = channel_.output_marginal(scheme_->params().sync_pmf);
  log_q_.resize(q.size());
  hard_.resize(q.size());
  for (std::size_t y = 0; y < q.size(); ++y) {
    log_q_[y] = safe_log(q[y]);
    hard_[y] = channel_.prob(1, static_cast<Symbol>(y)) > channel_.prob(0, static_cast<Symbol>(y)) ? 1 : 0;
  }
}

double ConcatDetector::window_log_likelihood(Phase m, std::span<const Symbol> y) const {
  const auto& seq = scheme_->scheme().sequence;
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) total += log_p_[seq.at(m + i)][y[i]];
  return total;
}

std::optional<Phase> ConcatDetector::try_candidate(std::uint64_t w1, std::span<const Symbol> y) const {
  const ConcatScheme& cs = *scheme_;
  const auto k = static_cast<std::int64_t>(y.size());
  const std::int64_t t = cs.t();
  const std::int64_t l = cs.l();
  const std::int64_t tau = cs.tau();
  const std::int64_t s0 = static_cast<std::int64_t>(w1) - tau;
  // block starts: l before the sync, then l after it
  std::vector<std::int64_t> starts;
  for (std::int64_t i = 0; i < l; ++i) starts.push_back(s0 - (l - i) * t);
  for (std::int64_t i = 0; i < l; ++i) starts.push_back(s0 + 3 * tau + i * t);
  std::int64_t first = -1;
  for (std::int64_t j = 0; j <= l; ++j) {
    const std::int64_t a = starts[static_cast<std::size_t>(j)];
    const std::int64_t b = starts[static_cast<std::size_t>(j + l - 1)];
    if (a >= 0 && b + t <= k) {
      first = j;
      break;
    }
  }
  if (first < 0) return std::nullopt;

  Word bits;
  bits.reserve(static_cast<std::size_t>(cs.r()));
  Word hard(static_cast<std::size_t>(t));
  for (std::int64_t j = first; j < first + l; ++j) {
    const std::int64_t a = starts[static_cast<std::size_t>(j)];
    for (std::int64_t i = 0; i < t; ++i) hard[static_cast<std::size_t>(i)] = hard_[y[static_cast<std::size_t>(a + i)]];
    auto msg = cs.params().code->decode(hard);
    if (!msg) return std::nullopt;
    const Word chunk = to_bits(*msg, cs.s());
    bits.insert(bits.end(), chunk.begin(), chunk.end());
  }

  const WindowDecoder& index = cs.base_index();
  auto pos = index.decode(std::span<const Symbol>(bits.data(), static_cast<std::size_t>(index.order())));
  if (!pos) return std::nullopt;
  // the decoded prefix fixes the position; the rest of the bits must agree
  const Word expect = cs.base().window(*pos, bits.size());
  if (expect != bits) return std::nullopt;
  if ((*pos - 1) % static_cast<std::uint64_t>(cs.s()) != 0) return std::nullopt;
  const std::uint64_t w = (*pos - 1) / static_cast<std::uint64_t>(cs.s());
  // the first selected block sits at a fixed offset from the sync
  if (w % static_cast<std::uint64_t>(l) != static_cast<std::uint64_t>((first % l + 1) % l)) return std::nullopt;

  const std::uint64_t n = cs.scheme().n();
  const auto off = static_cast<std::uint64_t>(starts[static_cast<std::size_t>(first)]);
  const std::uint64_t start = cs.chunk_start(w);
  return (start + n - off % n) % n + 1;
}

ConcatDetection ConcatDetector::detect_detailed(std::span<const Symbol> y) const {
  const ConcatScheme& cs = *scheme_;
  if (y.size() < static_cast<std::size_t>(3 * cs.tau())) throw DomainError("observation shorter than the sync word");
  for (Symbol v : y) {
    if (v >= static_cast<Symbol>(channel_.output_size())) throw DomainError("observation symbol outside channel output");
  }
  ConcatDetection out;
  const auto tau = static_cast<std::size_t>(cs.tau());
  const Symbol* middle = cs.sync().data() + tau;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t w1 = 0; w1 + tau <= y.size(); ++w1) {
    double score = 0.0;
    for (std::size_t i = 0; i < tau; ++i) {
      const Symbol obs = y[w1 + i];
      const double lp = log_p_[middle[i]][obs];
      score += std::isinf(lp) ? lp : lp - log_q_[obs];
    }
    if (score > best) {
      best = score;
      out.sync_candidates.assign(1, w1);
    } else if (score == best && std::isfinite(best)) {
      out.sync_candidates.push_back(w1);
    }
  }
  if (!std::isfinite(best)) {
    out.sync_candidates.clear();
    return out;
  }
  double best_ll = -std::numeric_limits<double>::infinity();
  for (std::uint64_t w1 : out.sync_candidates) {
    auto m = try_candidate(w1, y);
    if (!m) continue;
    const double ll = window_log_likelihood(*m, y);
    if (!out.phase || ll > best_ll) {
      out.phase = m;
      out.sync_position = w1;
      best_ll = ll;
    }
  }
  return out;
}

}  // namespace phasedet
