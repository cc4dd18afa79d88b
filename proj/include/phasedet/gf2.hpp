#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace phasedet {

/// Polynomial over GF(2). Coefficients are packed little-endian: bit i of the
/// storage is the coefficient of z^i. The storage never carries trailing zero
/// words, so the highest stored bit is the leading coefficient.
class Gf2Poly {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  Gf2Poly() = default;

  /// Low 64 coefficients given as a mask (bit i <-> z^i).
  static Gf2Poly from_mask(std::uint64_t mask);
  static Gf2Poly from_exponents(const std::vector<int>& exponents);
  static Gf2Poly monomial(int exponent);

  /// Accepts an ascending bit string ("1101" = 1 + z + z^3) or a
  /// comma-separated exponent list ("0,1,3"). A lone integer other than 0/1
  /// digits is read as an exponent list.
  static Gf2Poly parse(std::string_view text);

  int degree() const;
  bool is_zero() const { return words_.empty(); }
  bool coeff(int i) const;
  void set_coeff(int i, bool value);

  /// Number of nonzero coefficients.
  int weight() const;

  /// Coefficients a_0..a_deg, lowest power first.
  std::vector<std::uint8_t> coefficients() const;

  /// Only valid when degree() < 64.
  std::uint64_t to_mask() const;

  std::string to_bit_string() const;
  std::string to_exponent_string() const;

  Gf2Poly& operator+=(const Gf2Poly& other);
  friend Gf2Poly operator+(Gf2Poly a, const Gf2Poly& b) { return a += b; }
  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b);
  friend bool operator==(const Gf2Poly& a, const Gf2Poly& b) = default;

  Gf2Poly shifted(int amount) const;

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

struct Gf2DivMod {
  Gf2Poly quotient;
  Gf2Poly remainder;
};

Gf2Poly multiply(const Gf2Poly& p, const Gf2Poly& q);
Gf2DivMod divmod(const Gf2Poly& dividend, const Gf2Poly& divisor);
Gf2Poly mod(const Gf2Poly& dividend, const Gf2Poly& divisor);
Gf2Poly gcd(Gf2Poly a, Gf2Poly b);

/// z^exponent mod modulus, by square-and-multiply.
Gf2Poly pow_z_mod(std::uint64_t exponent, const Gf2Poly& modulus);

/// Trial division by every polynomial of degree <= r/2 for r <= 16
/// (cost O(2^{r/2}) divisions); Ben-Or's gcd test above that.
bool is_irreducible(const Gf2Poly& p);

/// Multiplicative order of z modulo an irreducible p with p(0) = 1: the
/// smallest t >= 1 such that p divides z^t + 1. Computed by factoring
/// 2^r - 1 and stripping prime factors; requires degree <= 62.
std::uint64_t order(const Gf2Poly& p);

bool is_primitive(const Gf2Poly& p);

/// All primitive polynomials of the given degree, ordered by coefficient mask.
std::vector<Gf2Poly> primitive_polynomials(int degree);

/// Prime factorisation by trial division, ascending, with multiplicity.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace phasedet
