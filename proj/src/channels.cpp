#include "phasedet/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "phasedet/errors.hpp"

namespace phasedet {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) { return splitmix64(master ^ splitmix64(index)); }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below needs a positive bound");
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
}

namespace {

void check_row(const std::vector<double>& row, const std::string& what) {
  double total = 0.0;
  for (double v : row) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError(what + ": probability outside [0,1]");
    total += v;
  }
  if (std::abs(total - 1.0) > kStochasticTolerance) throw DomainError(what + ": row does not sum to 1");
}

std::vector<double> cumulate(const std::vector<double>& row) {
  std::vector<double> c(row.size());
  std::partial_sum(row.begin(), row.end(), c.begin());
  return c;
}

Symbol sample_row(const std::vector<double>& row, const std::vector<double>& cumulative, Rng& rng) {
  const double u = rng.uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  auto idx = static_cast<std::size_t>(it - cumulative.begin());
  if (idx >= row.size()) idx = row.size() - 1;
  // never land on a zero-probability output through rounding
  while (row[idx] == 0.0 && idx > 0) --idx;
  while (row[idx] == 0.0 && idx + 1 < row.size()) ++idx;
  return static_cast<Symbol>(idx);
}

}  // namespace

Dmc::Dmc(std::vector<std::vector<double>> matrix) : matrix_(std::move(matrix)) {
  if (matrix_.empty() || matrix_[0].empty()) throw DomainError("channel matrix must be nonempty");
  for (std::size_t x = 0; x < matrix_.size(); ++x) {
    if (matrix_[x].size() != matrix_[0].size()) throw DomainError("channel matrix rows differ in length");
    check_row(matrix_[x], "channel row " + std::to_string(x));
    cumulative_.push_back(cumulate(matrix_[x]));
  }
}

Dmc Dmc::bsc(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("BSC crossover must lie in [0,1]");
  return Dmc({{1.0 - p, p}, {p, 1.0 - p}});
}

Dmc Dmc::noiseless(int q) {
  if (q < 1) throw DomainError("alphabet must be positive");
  std::vector<std::vector<double>> m(static_cast<std::size_t>(q), std::vector<double>(static_cast<std::size_t>(q), 0.0));
  for (int i = 0; i < q; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  return Dmc(std::move(m));
}

Dmc Dmc::typewriter(int q) {
  if (q < 2) throw DomainError("typewriter channel needs q >= 2");
  std::vector<std::vector<double>> m(static_cast<std::size_t>(q), std::vector<double>(static_cast<std::size_t>(q), 0.0));
  for (int i = 0; i < q; ++i) {
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.5;
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>((i + 1) % q)] += 0.5;
  }
  return Dmc(std::move(m));
}

Dmc Dmc::symmetric(int q, double eps) {
  if (q < 2) throw DomainError("symmetric channel needs q >= 2");
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("symmetric channel error must lie in [0,1]");
  const double off = eps / (q - 1);
  std::vector<std::vector<double>> m(static_cast<std::size_t>(q), std::vector<double>(static_cast<std::size_t>(q), off));
  for (int i = 0; i < q; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0 - eps;
  return Dmc(std::move(m));
}

bool Dmc::deterministic() const {
  for (const auto& row : matrix_) {
    for (double v : row) {
      if (v != 0.0 && v != 1.0) return false;
    }
  }
  return true;
}

Symbol Dmc::sample(Symbol x, Rng& rng) const {
  if (x >= matrix_.size()) throw DomainError("channel input outside alphabet");
  return sample_row(matrix_[x], cumulative_[x], rng);
}

Word Dmc::transmit(const Word& input, Rng& rng) const {
  Word out(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) out[i] = sample(input[i], rng);
  return out;
}

std::vector<double> Dmc::output_marginal(const std::vector<double>& px) const {
  if (px.size() != matrix_.size()) throw DomainError("input pmf size differs from channel input size");
  std::vector<double> py(static_cast<std::size_t>(output_size()), 0.0);
  for (std::size_t x = 0; x < px.size(); ++x) {
    for (std::size_t y = 0; y < py.size(); ++y) py[y] += px[x] * matrix_[x][y];
  }
  return py;
}

Word transmit_dmc(const Dmc& ch, const Word& input, std::uint64_t seed) {
  Rng rng(seed);
  return ch.transmit(input, rng);
}

Mac::Mac(int x1_size, int x2_size, int y_size, std::vector<double> tensor)
    : x1_(x1_size), x2_(x2_size), y_(y_size), tensor_(std::move(tensor)) {
  if (x1_ < 1 || x2_ < 1 || y_ < 1) throw DomainError("MAC alphabets must be nonempty");
  if (tensor_.size() != static_cast<std::size_t>(x1_) * x2_ * y_) throw DomainError("MAC tensor has the wrong size");
  for (int a = 0; a < x1_; ++a) {
    for (int b = 0; b < x2_; ++b) {
      auto first = tensor_.begin() + (static_cast<std::ptrdiff_t>(a) * x2_ + b) * y_;
      check_row(std::vector<double>(first, first + y_), "MAC slice");
    }
  }
}

Mac Mac::mod2() { return Mac(2, 2, 2, {1, 0, 0, 1, 0, 1, 1, 0}); }

Mac Mac::push_to_talk() { return Mac(2, 2, 2, {1, 0, 0, 1, 0, 1, 0.5, 0.5}); }

Mac Mac::collision_free(int q1, int q2) {
  if (q1 < 1 || q2 < 1) throw DomainError("alphabets must be positive");
  const int qy = q1 * q2;
  std::vector<double> t(static_cast<std::size_t>(q1) * q2 * qy, 0.0);
  for (int a = 0; a < q1; ++a) {
    for (int b = 0; b < q2; ++b) t[(static_cast<std::size_t>(a) * q2 + b) * qy + static_cast<std::size_t>(a * q2 + b)] = 1.0;
  }
  return Mac(q1, q2, qy, std::move(t));
}

bool Mac::deterministic() const {
  return std::all_of(tensor_.begin(), tensor_.end(), [](double v) { return v == 0.0 || v == 1.0; });
}

Symbol Mac::sample(Symbol x1, Symbol x2, Rng& rng) const {
  if (x1 >= static_cast<Symbol>(x1_) || x2 >= static_cast<Symbol>(x2_)) throw DomainError("MAC input outside alphabet");
  const double u = rng.uniform();
  double acc = 0.0;
  Symbol last = 0;
  for (int y = 0; y < y_; ++y) {
    const double pr = prob(x1, x2, static_cast<Symbol>(y));
    if (pr == 0.0) continue;
    acc += pr;
    last = static_cast<Symbol>(y);
    if (u < acc) return last;
  }
  return last;
}

Word Mac::transmit(const Word& x1, const Word& x2, Rng& rng) const {
  if (x1.size() != x2.size()) throw DomainError("MAC inputs differ in length");
  Word out(x1.size());
  for (std::size_t i = 0; i < x1.size(); ++i) out[i] = sample(x1[i], x2[i], rng);
  return out;
}

ConfusionGraph::ConfusionGraph(const Dmc& ch) : n_(ch.input_size()) {
  adj_.assign(static_cast<std::size_t>(n_) * n_, 0);
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      for (int y = 0; y < ch.output_size(); ++y) {
        if (ch.possible(static_cast<Symbol>(u), static_cast<Symbol>(y)) &&
            ch.possible(static_cast<Symbol>(v), static_cast<Symbol>(y))) {
          adj_[static_cast<std::size_t>(u) * n_ + v] = 1;
          adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
          break;
        }
      }
    }
  }
}

ConfusionGraph::ConfusionGraph(int vertices, const std::vector<std::pair<int, int>>& edges) : n_(vertices) {
  if (vertices < 1) throw DomainError("graph needs at least one vertex");
  adj_.assign(static_cast<std::size_t>(n_) * n_, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw DomainError("edge endpoint outside the vertex set");
    if (u == v) throw DomainError("self-loops are not allowed");
    adj_[static_cast<std::size_t>(u) * n_ + v] = 1;
    adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
  }
}

bool ConfusionGraph::words_confusable(std::span<const Symbol> u, std::span<const Symbol> v) const {
  if (u.size() != v.size()) throw DomainError("words differ in length");
  bool distinct = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == v[i]) continue;
    distinct = true;
    if (!adjacent(u[i], v[i])) return false;
  }
  return distinct;
}

int ConfusionGraph::edge_count() const {
  int e = 0;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) e += adjacent(static_cast<Symbol>(u), static_cast<Symbol>(v)) ? 1 : 0;
  }
  return e;
}

AdversarialBudget::AdversarialBudget(double fraction) : p(fraction) {
  if (!(fraction >= 0.0 && fraction < 0.5)) throw DomainError("adversarial fraction must lie in [0, 1/2)");
}

int AdversarialBudget::max_flips(std::uint64_t k) const {
  return static_cast<int>(std::floor(p * static_cast<double>(k) + 1e-9));
}

namespace {

bool walk_exact(Word& word, std::size_t start, int remaining, const std::function<bool(const Word&)>& visit) {
  if (remaining == 0) return visit(word);
  for (std::size_t i = start; i + static_cast<std::size_t>(remaining) <= word.size(); ++i) {
    word[i] ^= 1U;
    const bool keep_going = walk_exact(word, i + 1, remaining - 1, visit);
    word[i] ^= 1U;
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

void for_each_flip_pattern(const Word& input, int weight_limit, const std::function<bool(const Word&)>& visit) {
  Word word = input;
  for (int w = 0; w <= weight_limit; ++w) {
    if (!walk_exact(word, 0, w, visit)) return;
  }
}

std::optional<Word> find_worst_case(const AdversarialBudget& budget, const Word& input, const AdversaryJudge& judge) {
  if (!judge) throw DomainError("worst-case adversary needs a judge");
  const int flips = budget.max_flips(input.size());
  if (input.size() > static_cast<std::size_t>(kWorstCaseMaxLength) || flips > kWorstCaseMaxWeight) {
    throw ResourceError("worst-case adversary limited to k <= 24 and at most 3 flips");
  }
  for (Symbol s : input) {
    if (s > 1) throw DomainError("adversarial channel needs binary input");
  }
  std::optional<Word> found;
  for_each_flip_pattern(input, flips, [&](const Word& w) {
    if (judge(w)) {
      found = w;
      return false;
    }
    return true;
  });
  return found;
}

Word transmit_adversarial(const AdversarialBudget& budget, const Word& input, AdversaryStrategy strategy, Rng& rng,
                          const AdversaryJudge& judge) {
  if (strategy == AdversaryStrategy::WorstCaseExhaustive) {
    auto hit = find_worst_case(budget, input, judge);
    return hit ? *hit : input;
  }
  for (Symbol s : input) {
    if (s > 1) throw DomainError("adversarial channel needs binary input");
  }
  const int flips = budget.max_flips(input.size());
  std::vector<std::size_t> positions(input.size());
  std::iota(positions.begin(), positions.end(), 0);
  Word out = input;
  for (int i = 0; i < flips; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.below(positions.size() - static_cast<std::size_t>(i));
    std::swap(positions[static_cast<std::size_t>(i)], positions[j]);
    out[positions[static_cast<std::size_t>(i)]] ^= 1U;
  }
  return out;
}

}  // namespace phasedet
