#include "phasedet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "phasedet/errors.hpp"

namespace phasedet {

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("entropy argument must lie in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

BigInt lll_max_n(int k, int d) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (d < 0 || d > k) throw DomainError("d must lie in [0, k]");
  BigInt ball = 0;
  for (int i = 0; i <= d; ++i) ball += binomial(k, i);
  const BigInt numerator = BigInt(1) << k;
  return numerator / (16 * BigInt(k) * ball);
}

GvRate gv_rate(double p) {
  if (!(p >= 0.0)) throw DomainError("p must be nonnegative");
  if (p >= 0.25) return GvRate{0.0, true};
  return GvRate{1.0 - binary_entropy(2.0 * p), false};
}

RationalBig generalized_binomial(const RationalBig& z, int i) {
  if (i < 0) return 0;
  RationalBig out = 1;
  for (int j = 0; j < i; ++j) out *= (z - j);
  for (int j = 2; j <= i; ++j) out /= j;
  return out;
}

RationalBig krawtchouk(int k, int t, const RationalBig& z) {
  if (t < 0 || t > k) throw DomainError("Krawtchouk degree must lie in [0, k]");
  RationalBig sum = 0;
  const RationalBig rest = RationalBig(k) - z;
  for (int j = 0; j <= t; ++j) {
    RationalBig term = generalized_binomial(z, j) * generalized_binomial(rest, t - j);
    if (j % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

namespace {

bool thm4_term_ok(int r, int t, int c, int k, int i) {
  const RationalBig z = RationalBig(i) * c;
  const RationalBig kt = krawtchouk(k, t, z);
  const RationalBig point(BigInt(k - r), BigInt(c) * c);
  const RationalBig lhs = RationalBig(BigInt(1) << r) * kt * kt * generalized_binomial(point, i) *
                          RationalBig(boost::multiprecision::pow(BigInt(c), 2 * i)) / RationalBig(binomial(k, t));
  return lhs <= RationalBig(BigInt(1) << k);
}

void check_thm4_args(int r, int t, int c, int k) {
  if (r < 1 || c < 1 || t < 0) throw DomainError("need r >= 1, c >= 1, t >= 0");
  if (k < r) throw DomainError("need k >= r");
  if (t > k) throw DomainError("need t <= k");
}

}  // namespace

bool thm4_feasible_ordered(int r, int t, int c, int k, const std::vector<int>& order) {
  check_thm4_args(r, t, c, k);
  for (int i : order) {
    if (i < 1 || i > k || static_cast<long long>(i) * c * c > k - r) continue;
    if (!thm4_term_ok(r, t, c, k, i)) return false;
  }
  return true;
}

bool thm4_feasible(int r, int t, int c, int k) {
  check_thm4_args(r, t, c, k);
  std::vector<int> order;
  for (int i = 1; i <= k && static_cast<long long>(i) * c * c <= k - r; ++i) order.push_back(i);
  return thm4_feasible_ordered(r, t, c, k, order);
}

int thm4_min_k(int r, int t, int c, int kmax) {
  if (kmax < 0) kmax = 3 * r;
  if (kmax < r) throw DomainError("kmax must be >= r");
  int answer = -1;
  for (int k = kmax; k >= r; --k) {
    if (t > k || !thm4_feasible(r, t, c, k)) break;
    answer = k;
  }
  return answer;
}

bool int_domain_ok(double p, double lambda) {
  if (!(p > 0.0 && p < 0.5)) return false;
  if (!(lambda >= 0.0 && lambda < 1.0)) return false;
  // 4(1-y)y is increasing on [0, 1/2], so checking the endpoint suffices there
  const double a = (1.0 - 2.0 * p) * (1.0 - 2.0 * p);
  const double y = std::min(lambda, 0.5);
  return a >= 4.0 * (1.0 - y) * y - 1e-15;
}

double int_p_lambda(double p, double lambda) {
  if (!(p > 0.0 && p < 0.5)) throw DomainError("Int(p, lambda) needs 0 < p < 1/2");
  if (!(lambda >= 0.0)) throw DomainError("Int(p, lambda) needs lambda >= 0");
  if (!int_domain_ok(p, lambda)) throw DomainError("integrand is not real on [0, lambda]");
  if (lambda == 0.0) return 0.0;
  const double a = 1.0 - 2.0 * p;
  auto f = [a](double y) {
    const double disc = std::max(0.0, a * a - 4.0 * (1.0 - y) * y);
    return std::log2((a + std::sqrt(disc)) / (2.0 * (1.0 - y)));
  };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, lambda, 20, 1e-12, &error);
  if (error > 1e-9) throw std::runtime_error("quadrature did not reach 1e-9");
  return value;
}

NewUbTerms newub_terms(double p, double rate, double mu) {
  if (!(rate < 1.0)) throw DomainError("rate must be below 1");
  const double mu_max = (1.0 - rate) / 9.0;
  if (!(mu >= 0.0 && mu <= mu_max * (1.0 + 1e-12))) throw DomainError("mu must lie in [0, (1-R)/9]");
  const double frac = std::min(1.0, 9.0 * mu / (1.0 - rate));
  NewUbTerms out;
  out.lhs = 2.0 * mu * std::log2(3.0) + binary_entropy(frac) * (1.0 - rate) / 9.0 + 2.0 * int_p_lambda(p, 3.0 * mu);
  out.rhs = 1.0 - binary_entropy(p) - rate;
  return out;
}

bool newub_violated(double p, double rate, double mu) { return newub_terms(p, rate, mu).violated(); }

NewUbScan newub_scan(double p, double rate, double step) {
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  NewUbScan scan;
  scan.step = step;
  scan.mu_max = (1.0 - rate) / 9.0;
  scan.max_gap = -std::numeric_limits<double>::infinity();
  const auto count = static_cast<long long>(std::floor(scan.mu_max / step + 1e-9));
  for (long long i = 0; i <= count; ++i) {
    const double mu = static_cast<double>(i) * step;
    const auto terms = newub_terms(p, rate, mu);
    const double gap = terms.lhs - terms.rhs;
    if (gap > scan.max_gap) {
      scan.max_gap = gap;
      scan.argmax_mu = mu;
    }
    if (terms.violated()) scan.violating_mu.push_back(mu);
  }
  return scan;
}

double mutual_information(const std::vector<double>& px, const Dmc& ch) {
  if (px.size() != static_cast<std::size_t>(ch.input_size())) throw DomainError("pmf size differs from channel input");
  double total = 0.0;
  for (double v : px) {
    if (v < 0.0) throw DomainError("pmf entries must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("pmf must sum to 1");
  const auto py = ch.output_marginal(px);
  double info = 0.0;
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] == 0.0) continue;
    for (std::size_t y = 0; y < py.size(); ++y) {
      const double p = ch.prob(static_cast<Symbol>(x), static_cast<Symbol>(y));
      if (p == 0.0) continue;
      info += px[x] * p * std::log2(p / py[y]);
    }
  }
  return std::max(0.0, info);
}

CapacityResult dmc_capacity(const Dmc& ch, double tol, int max_iterations) {
  const auto nx = static_cast<std::size_t>(ch.input_size());
  const auto ny = static_cast<std::size_t>(ch.output_size());
  CapacityResult res;
  std::vector<double> r(nx, 1.0 / static_cast<double>(nx));
  std::vector<double> d(nx);
  for (int it = 0; it < max_iterations; ++it) {
    res.iterations = it + 1;
    const auto q = ch.output_marginal(r);
    for (std::size_t x = 0; x < nx; ++x) {
      double v = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        const double p = ch.prob(static_cast<Symbol>(x), static_cast<Symbol>(y));
        if (p > 0.0) v += p * std::log2(p / q[y]);
      }
      d[x] = v;
    }
    double z = 0.0;
    for (std::size_t x = 0; x < nx; ++x) z += r[x] * std::exp2(d[x]);
    const double lower = std::log2(z);
    const double upper = *std::max_element(d.begin(), d.end());
    res.gap = upper - lower;
    if (res.gap < tol) break;
    for (std::size_t x = 0; x < nx; ++x) r[x] = r[x] * std::exp2(d[x]) / z;
  }
  res.input = r;
  res.capacity = mutual_information(r, ch);
  return res;
}

MacInformation mac_informations(const Mac& mac, const std::vector<double>& p1, const std::vector<double>& p2) {
  const auto n1 = static_cast<std::size_t>(mac.x1_size());
  const auto n2 = static_cast<std::size_t>(mac.x2_size());
  const auto ny = static_cast<std::size_t>(mac.y_size());
  if (p1.size() != n1 || p2.size() != n2) throw DomainError("pmf sizes differ from the MAC alphabets");
  auto prob = [&](std::size_t a, std::size_t b, std::size_t y) {
    return mac.prob(static_cast<Symbol>(a), static_cast<Symbol>(b), static_cast<Symbol>(y));
  };
  // p(y), p(y|x2), p(y|x1)
  std::vector<double> py(ny, 0.0);
  std::vector<std::vector<double>> py_x2(n2, std::vector<double>(ny, 0.0));
  std::vector<std::vector<double>> py_x1(n1, std::vector<double>(ny, 0.0));
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      for (std::size_t y = 0; y < ny; ++y) {
        const double p = prob(a, b, y);
        py[y] += p1[a] * p2[b] * p;
        py_x2[b][y] += p1[a] * p;
        py_x1[a][y] += p2[b] * p;
      }
    }
  }
  MacInformation out;
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      const double w = p1[a] * p2[b];
      if (w == 0.0) continue;
      for (std::size_t y = 0; y < ny; ++y) {
        const double p = prob(a, b, y);
        if (p == 0.0) continue;
        out.sum += w * p * std::log2(p / py[y]);
        out.i1 += w * p * std::log2(p / py_x2[b][y]);
        out.i2 += w * p * std::log2(p / py_x1[a][y]);
      }
    }
  }
  out.i1 = std::max(0.0, out.i1);
  out.i2 = std::max(0.0, out.i2);
  out.sum = std::max(0.0, out.sum);
  return out;
}

bool mac_ve_region_contains(const Mac& mac, const std::vector<double>& p1, const std::vector<double>& p2,
                            const RegionPoint& pt) {
  if (pt.r1 < 0.0 || pt.r2 < 0.0) throw DomainError("rates must be nonnegative");
  const auto info = mac_informations(mac, p1, p2);
  constexpr double slack = 1e-12;
  return pt.r1 <= info.i1 + slack && pt.r2 <= info.i2 + slack && pt.r1 + pt.r2 <= info.sum + slack;
}

std::vector<std::vector<double>> simplex_grid(int size, int resolution) {
  if (size < 1 || resolution < 1) throw DomainError("grid needs positive size and resolution");
  std::vector<std::vector<double>> out;
  std::vector<int> parts(static_cast<std::size_t>(size), 0);
  std::function<void(int, int)> fill = [&](int pos, int left) {
    if (pos == size - 1) {
      parts[static_cast<std::size_t>(pos)] = left;
      std::vector<double> pmf(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) pmf[static_cast<std::size_t>(i)] = static_cast<double>(parts[static_cast<std::size_t>(i)]) / resolution;
      out.push_back(std::move(pmf));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      parts[static_cast<std::size_t>(pos)] = v;
      fill(pos + 1, left - v);
    }
  };
  fill(0, resolution);
  return out;
}

bool mac_ve_region_contains_any(const Mac& mac, const RegionPoint& pt, int resolution) {
  const auto g1 = simplex_grid(mac.x1_size(), resolution);
  const auto g2 = simplex_grid(mac.x2_size(), resolution);
  for (const auto& p1 : g1) {
    for (const auto& p2 : g2) {
      if (mac_ve_region_contains(mac, p1, p2, pt)) return true;
    }
  }
  return false;
}

}  // namespace phasedet
