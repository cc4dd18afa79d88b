#include "phasedet/zero_error.hpp"

#include "phasedet/errors.hpp"

namespace phasedet {

namespace {

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::No || b == Tri::No) return Tri::No;
  if (a == Tri::Maybe || b == Tri::Maybe) return Tri::Maybe;
  return Tri::Yes;
}

}  // namespace

std::uint64_t ZeroErrorScheme::block_slot(std::uint64_t w) const {
  const auto r = static_cast<std::uint64_t>(params_.r);
  return w + (w + r - 1) / r;
}

std::uint64_t ZeroErrorScheme::sync_slot(std::uint64_t g) const { return block_slot(g * params_.r) + 1; }

ZeroErrorScheme ZeroErrorScheme::build(const ZeroErrorParams& params) {
  const auto& code = params.code;
  if (params.r < 1) throw DomainError("de Bruijn order r must be >= 1");
  if (code.length < 1 || code.codewords.empty()) throw DomainError("zero-error code is empty");
  const int q = params.channel.input_size();
  if (code.graph.size() != q) throw DomainError("code graph and channel differ in alphabet");
  const ConfusionGraph channel_graph(params.channel);
  for (int u = 0; u < q; ++u) {
    for (int v = 0; v < q; ++v) {
      if (channel_graph.adjacent(static_cast<Symbol>(u), static_cast<Symbol>(v)) &&
          !code.graph.adjacent(static_cast<Symbol>(u), static_cast<Symbol>(v))) {
        throw DomainError("channel confuses inputs the code graph treats as distinguishable");
      }
    }
  }
  if (params.beta >= static_cast<Symbol>(q) || params.gamma >= static_cast<Symbol>(q)) {
    throw DomainError("beta and gamma must be channel inputs");
  }
  if (params.beta == params.gamma || channel_graph.adjacent(params.beta, params.gamma)) {
    throw DomainError("beta and gamma must be distinct and not adjacent");
  }
  for (const auto& c : code.codewords) {
    if (c.size() != static_cast<std::size_t>(code.length)) throw DomainError("codeword has the wrong length");
  }
  if (!is_independent_set(channel_graph, code.codewords)) throw DomainError("codewords are not an independent set");
  const int alphabet = static_cast<int>(code.codewords.size());

  ZeroErrorScheme zs;
  zs.params_ = params;
  if (alphabet == 1) throw DomainError("zero-error code needs at least two codewords");
  auto db = debruijn_generate(alphabet, params.r);
  zs.base_ = std::move(db.sequence);
  zs.index_ = db.index;
  zs.blocks_ = zs.base_.size();
  const auto r = static_cast<std::uint64_t>(params.r);
  zs.groups_ = (zs.blocks_ + r - 1) / r;

  const std::uint64_t slot = zs.slot();
  const std::uint64_t n = (zs.blocks_ + zs.groups_) * slot;
  Word x;
  x.reserve(n);
  auto emit_block = [&](std::uint64_t w) {
    x.push_back(params.gamma);
    const Word& c = code.codewords[zs.base_.symbols()[w]];
    x.insert(x.end(), c.begin(), c.end());
    x.push_back(params.gamma);
  };
  auto emit_sync = [&]() { x.insert(x.end(), slot, params.beta); };
  emit_block(0);
  for (std::uint64_t g = 0; g < zs.groups_; ++g) {
    emit_sync();
    for (std::uint64_t i = 1; i <= r; ++i) {
      const std::uint64_t w = g * r + i;
      if (w >= zs.blocks_) break;
      emit_block(w);
    }
  }
  if (x.size() != n) throw std::logic_error("zero-error layout length mismatch");
  zs.scheme_.sequence = CyclicSequence(q, std::move(x));
  zs.scheme_.k = (r + 2) * slot;
  validate_window_length(zs.scheme_.k, n);
  zs.scheme_.kind = "zero-error";
  zs.scheme_.construction = Json{{"kind", "zero-error"},
                                 {"code", params.code_spec},
                                 {"channel", params.channel_spec},
                                 {"beta", params.beta},
                                 {"gamma", params.gamma},
                                 {"r", params.r}};
  return zs;
}

ZeroErrorOutcome ZeroErrorScheme::run(std::size_t k, const std::function<Tri(std::size_t, Symbol)>& tri) const {
  ZeroErrorOutcome out;
  if (k != scheme_.k) throw DomainError("observation length differs from k");
  const std::size_t slot = this->slot();
  const std::size_t t = static_cast<std::size_t>(this->t());
  const std::size_t r = static_cast<std::size_t>(params_.r);
  auto sync_at = [&](std::size_t j) {
    Tri v = Tri::Yes;
    for (std::size_t i = 0; i < slot && v != Tri::No; ++i) v = tri_and(v, tri(j + i, params_.beta));
    return v;
  };

  std::optional<std::size_t> w1;
  for (std::size_t j = 0; j + slot <= k; ++j) {
    const Tri v = sync_at(j);
    if (v == Tri::Maybe) {
      out.determinate = false;
      return out;
    }
    if (v == Tri::Yes) {
      w1 = j;
      break;
    }
  }
  if (!w1) return out;

  const std::size_t offset = *w1 % slot;
  std::vector<std::size_t> sync_slots;
  std::vector<std::pair<std::size_t, Symbol>> words;  // (position in y, codeword index)
  for (std::size_t a = 0; offset + (a + 1) * slot <= k; ++a) {
    const std::size_t pos = offset + a * slot;
    const Tri v = sync_at(pos);
    if (v == Tri::Maybe) {
      out.determinate = false;
      return out;
    }
    if (v == Tri::Yes) {
      sync_slots.push_back(a);
      continue;
    }
    std::optional<Symbol> found;
    bool ambiguous = false;
    for (std::size_t c = 0; c < params_.code.codewords.size(); ++c) {
      const Word& cw = params_.code.codewords[c];
      Tri fit = Tri::Yes;
      for (std::size_t i = 0; i < t && fit != Tri::No; ++i) fit = tri_and(fit, tri(pos + 1 + i, cw[i]));
      if (fit == Tri::Maybe) {
        out.determinate = false;
        return out;
      }
      if (fit == Tri::Yes) {
        if (found) ambiguous = true;
        found = static_cast<Symbol>(c);
      }
    }
    if (!found || ambiguous) return out;
    words.emplace_back(pos, *found);
  }

  const std::uint64_t n = scheme_.n();
  if (words.size() >= r) {
    Word symbols;
    for (std::size_t i = 0; i < r; ++i) symbols.push_back(words[i].second);
    auto block = index_->decode(symbols);
    if (!block) return out;
    const std::uint64_t w = *block - 1;
    const std::uint64_t seq_pos = block_slot(w) * slot;
    out.phase = (seq_pos + n - words[0].first % n) % n + 1;
    return out;
  }
  const std::uint64_t gap = last_gap();
  if (gap < r && sync_slots.size() >= 2 && sync_slots[1] - sync_slots[0] == gap + 1) {
    const std::uint64_t seq_pos = sync_slot(groups_ - 1) * slot;
    const std::uint64_t y_pos = offset + sync_slots[0] * slot;
    out.phase = (seq_pos + n - y_pos % n) % n + 1;
  }
  return out;
}

DetectionResult ZeroErrorScheme::detect(std::span<const Symbol> y) const {
  const Dmc& ch = params_.channel;
  for (Symbol v : y) {
    if (v >= static_cast<Symbol>(ch.output_size())) throw DomainError("observation symbol outside channel output");
  }
  return run(y.size(), [&](std::size_t i, Symbol x) { return ch.possible(x, y[i]) ? Tri::Yes : Tri::No; }).phase;
}

ZeroErrorOutcome ZeroErrorScheme::detect_all_outputs(Phase m) const {
  const Dmc& ch = params_.channel;
  const Word x = scheme_.sequence.window(m, scheme_.k);
  const int ny = ch.output_size();
  return run(x.size(), [&](std::size_t i, Symbol cand) {
    bool all = true;
    bool any = false;
    for (int y = 0; y < ny; ++y) {
      if (!ch.possible(x[i], static_cast<Symbol>(y))) continue;
      if (ch.possible(cand, static_cast<Symbol>(y))) {
        any = true;
      } else {
        all = false;
      }
    }
    if (all) return Tri::Yes;
    return any ? Tri::Maybe : Tri::No;
  });
}

std::uint64_t ZeroErrorScheme::sync_confusable_positions() const {
  const Dmc& ch = params_.channel;
  const ConfusionGraph g(ch);
  const std::uint64_t n = scheme_.n();
  const std::uint64_t slot = this->slot();
  std::vector<std::uint8_t> is_sync_start(n, 0);
  for (std::uint64_t gi = 0; gi < groups_; ++gi) is_sync_start[sync_slot(gi) * slot] = 1;
  std::uint64_t bad = 0;
  for (std::uint64_t j = 0; j < n; ++j) {
    bool confusable = true;
    bool equal = true;
    for (std::uint64_t i = 0; i < slot; ++i) {
      const Symbol x = scheme_.sequence.at(j + i + 1);
      if (x != params_.beta) equal = false;
      if (x != params_.beta && !g.adjacent(x, params_.beta)) {
        confusable = false;
        break;
      }
    }
    if (is_sync_start[j]) {
      if (!equal) ++bad;
    } else if (confusable) {
      ++bad;
    }
  }
  return bad;
}

ZeroErrorParams pentagon_params(int r) {
  ZeroErrorParams p;
  p.code = pentagon_code();
  p.channel = Dmc::typewriter(5);
  p.beta = 0;
  p.gamma = 2;
  p.r = r;
  p.code_spec = "pentagon";
  p.channel_spec = "typewriter:5";
  return p;
}

}  // namespace phasedet
