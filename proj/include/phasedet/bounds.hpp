#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "phasedet/channels.hpp"

namespace phasedet {

using BigInt = boost::multiprecision::cpp_int;
using RationalBig = boost::multiprecision::cpp_rational;

/// -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
double binary_entropy(double p);

/// floor(2^k / (16 k sum_{i<=d} C(k, i))).
BigInt lll_max_n(int k, int d);

struct GvRate {
  double value = 0.0;
  /// Set when p >= 1/4 and the value was clamped to 0.
  bool clamped = false;
};

/// 1 - h(2p).
GvRate gv_rate(double p);

BigInt binomial(int n, int k);

/// z (z-1) ... (z-i+1) / i! for rational z.
RationalBig generalized_binomial(const RationalBig& z, int i);

/// K_t(z) = sum_j (-1)^j C(z, j) C(k - z, t - j).
RationalBig krawtchouk(int k, int t, const RationalBig& z);

/// Whether 2^r K_t(ic)^2 C((k-r)/c^2, i) c^{2i} / C(k, t) <= 2^k for every
/// i in [k] with i c^2 <= k - r.
bool thm4_feasible(int r, int t, int c, int k);

/// Same check, visiting the i values in the given order.
bool thm4_feasible_ordered(int r, int t, int c, int k, const std::vector<int>& order);

/// Smallest k in [r, kmax] such that every k' in [k, kmax] is feasible;
/// kmax defaults to 3r. Returns -1 when kmax itself is infeasible.
int thm4_min_k(int r, int t, int c, int kmax = -1);

/// Whether the integrand of Int(p, .) is real on [0, lambda].
bool int_domain_ok(double p, double lambda);

/// Integral over [0, lambda] of log2((1-2p + sqrt((1-2p)^2 - 4(1-y)y)) / (2(1-y))).
double int_p_lambda(double p, double lambda);

struct NewUbTerms {
  double lhs = 0.0;
  double rhs = 0.0;
  bool violated() const { return lhs > rhs; }
};

/// LHS and RHS of the weight-3 linear-scheme condition at mu.
NewUbTerms newub_terms(double p, double rate, double mu);
bool newub_violated(double p, double rate, double mu);

struct NewUbScan {
  double step = 0.0;
  double mu_max = 0.0;
  std::vector<double> violating_mu;
  double argmax_mu = 0.0;
  double max_gap = 0.0;  // max of lhs - rhs over the grid
  bool violated() const { return !violating_mu.empty(); }
};

/// Evaluates the condition on mu = 0, step, 2 step, ... <= (1-R)/9.
NewUbScan newub_scan(double p, double rate, double step);

/// I(X;Y) in bits.
double mutual_information(const std::vector<double>& px, const Dmc& ch);

struct CapacityResult {
  double capacity = 0.0;
  std::vector<double> input;
  int iterations = 0;
  double gap = 0.0;
};

/// Blahut-Arimoto, stopping when the upper and lower estimates differ by < tol.
CapacityResult dmc_capacity(const Dmc& ch, double tol = 1e-12, int max_iterations = 100000);

struct MacInformation {
  double i1 = 0.0;   // I(X1;Y|X2)
  double i2 = 0.0;   // I(X2;Y|X1)
  double sum = 0.0;  // I(X1,X2;Y)
};

MacInformation mac_informations(const Mac& mac, const std::vector<double>& p1, const std::vector<double>& p2);

struct RegionPoint {
  double r1 = 0.0;
  double r2 = 0.0;
};

bool mac_ve_region_contains(const Mac& mac, const std::vector<double>& p1, const std::vector<double>& p2,
                            const RegionPoint& pt);

/// All pmfs on `size` symbols with probabilities in multiples of 1/resolution.
std::vector<std::vector<double>> simplex_grid(int size, int resolution);

bool mac_ve_region_contains_any(const Mac& mac, const RegionPoint& pt, int resolution);

}  // namespace phasedet
