#include "phasedet/gf2.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

#include "phasedet/errors.hpp"

namespace phasedet {

namespace {

constexpr int kWordBits = 64;

// words ^= other << shift, growing words as needed.
void xor_shifted(std::vector<std::uint64_t>& words, const std::vector<std::uint64_t>& other, int shift) {
  if (other.empty()) return;
  const int word_shift = shift / kWordBits;
  const int bit_shift = shift % kWordBits;
  const std::size_t needed = other.size() + static_cast<std::size_t>(word_shift) + 1;
  if (words.size() < needed) words.resize(needed, 0);
  for (std::size_t i = 0; i < other.size(); ++i) {
    const std::uint64_t w = other[i];
    words[i + word_shift] ^= w << bit_shift;
    if (bit_shift != 0) words[i + word_shift + 1] ^= w >> (kWordBits - bit_shift);
  }
}

int top_bit(const std::vector<std::uint64_t>& words) {
  for (std::size_t i = words.size(); i-- > 0;) {
    if (words[i] != 0) return static_cast<int>(i) * kWordBits + (kWordBits - 1 - std::countl_zero(words[i]));
  }
  return Gf2Poly::kZeroDegree;
}

}  // namespace

Gf2Poly Gf2Poly::from_mask(std::uint64_t mask) {
  Gf2Poly p;
  if (mask != 0) p.words_.push_back(mask);
  return p;
}

Gf2Poly Gf2Poly::from_exponents(const std::vector<int>& exponents) {
  Gf2Poly p;
  for (int e : exponents) {
    if (e < 0) throw DomainError("negative exponent in polynomial");
    p.set_coeff(e, !p.coeff(e));
  }
  return p;
}

Gf2Poly Gf2Poly::monomial(int exponent) { return from_exponents({exponent}); }

Gf2Poly Gf2Poly::parse(std::string_view text) {
  if (text.empty()) throw DomainError("empty polynomial string");
  const bool has_comma = text.find(',') != std::string_view::npos;
  const bool only_bits = std::all_of(text.begin(), text.end(), [](char c) { return c == '0' || c == '1'; });
  if (!has_comma && only_bits) {
    Gf2Poly p;
    for (std::size_t i = 0; i < text.size(); ++i) p.set_coeff(static_cast<int>(i), text[i] == '1');
    return p;
  }
  std::vector<int> exps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view item = text.substr(pos, next - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw DomainError("malformed polynomial exponent list: " + std::string(text));
    }
    exps.push_back(value);
    pos = next + 1;
  }
  return from_exponents(exps);
}

int Gf2Poly::degree() const { return top_bit(words_); }

bool Gf2Poly::coeff(int i) const {
  if (i < 0) return false;
  const std::size_t w = static_cast<std::size_t>(i) / kWordBits;
  if (w >= words_.size()) return false;
  return (words_[w] >> (i % kWordBits)) & 1U;
}

void Gf2Poly::set_coeff(int i, bool value) {
  if (i < 0) throw DomainError("negative coefficient index");
  const std::size_t w = static_cast<std::size_t>(i) / kWordBits;
  if (w >= words_.size()) {
    if (!value) return;
    words_.resize(w + 1, 0);
  }
  const std::uint64_t bit = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[w] |= bit;
  } else {
    words_[w] &= ~bit;
  }
  trim();
}

int Gf2Poly::weight() const {
  int total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

std::vector<std::uint8_t> Gf2Poly::coefficients() const {
  std::vector<std::uint8_t> out;
  const int d = degree();
  if (d == kZeroDegree) return out;
  out.resize(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) out[static_cast<std::size_t>(i)] = coeff(i) ? 1 : 0;
  return out;
}

std::uint64_t Gf2Poly::to_mask() const {
  if (words_.size() > 1) throw DomainError("polynomial degree exceeds 63");
  return words_.empty() ? 0 : words_[0];
}

std::string Gf2Poly::to_bit_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = 0; i <= degree(); ++i) s.push_back(coeff(i) ? '1' : '0');
  return s;
}

std::string Gf2Poly::to_exponent_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= degree(); ++i) {
    if (!coeff(i)) continue;
    if (!first) os << ',';
    os << i;
    first = false;
  }
  return os.str();
}

Gf2Poly& Gf2Poly::operator+=(const Gf2Poly& other) {
  if (words_.size() < other.words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
  trim();
  return *this;
}

Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  const int db = b.degree();
  for (int i = 0; i <= db; ++i) {
    if (b.coeff(i)) xor_shifted(out.words_, a.words_, i);
  }
  out.trim();
  return out;
}

Gf2Poly Gf2Poly::shifted(int amount) const {
  Gf2Poly out;
  xor_shifted(out.words_, words_, amount);
  out.trim();
  return out;
}

void Gf2Poly::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

Gf2Poly multiply(const Gf2Poly& p, const Gf2Poly& q) { return p * q; }

Gf2DivMod divmod(const Gf2Poly& dividend, const Gf2Poly& divisor) {
  if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
  Gf2DivMod out{Gf2Poly{}, dividend};
  const int dd = divisor.degree();
  int dr = out.remainder.degree();
  while (dr != Gf2Poly::kZeroDegree && dr >= dd) {
    const int shift = dr - dd;
    out.quotient.set_coeff(shift, true);
    out.remainder += divisor.shifted(shift);
    dr = out.remainder.degree();
  }
  return out;
}

Gf2Poly mod(const Gf2Poly& dividend, const Gf2Poly& divisor) { return divmod(dividend, divisor).remainder; }

Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    Gf2Poly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Gf2Poly pow_z_mod(std::uint64_t exponent, const Gf2Poly& modulus) {
  if (modulus.degree() < 1) throw DomainError("modulus must have degree >= 1");
  Gf2Poly result = Gf2Poly::from_mask(1);
  Gf2Poly base = mod(Gf2Poly::monomial(1), modulus);
  while (exponent != 0) {
    if (exponent & 1U) result = mod(result * base, modulus);
    base = mod(base * base, modulus);
    exponent >>= 1;
  }
  return mod(result, modulus);
}

bool is_irreducible(const Gf2Poly& p) {
  const int r = p.degree();
  if (r < 1) throw DomainError("irreducibility is undefined for constants");
  if (r == 1) return true;
  if (!p.coeff(0)) return false;  // divisible by z
  if (r <= 16) {
    const std::uint64_t limit = std::uint64_t{1} << (r / 2 + 1);
    for (std::uint64_t mask = 2; mask < limit; ++mask) {
      if (mod(p, Gf2Poly::from_mask(mask)).is_zero()) return false;
    }
    return true;
  }
  // Ben-Or: p is irreducible iff gcd(z^{2^i} - z, p) = 1 for i = 1..r/2.
  const Gf2Poly z = Gf2Poly::monomial(1);
  Gf2Poly power = z;
  for (int i = 1; i <= r / 2; ++i) {
    power = mod(power * power, p);
    if (gcd(p, power + z).degree() != 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
    while (n % f == 0) {
      out.push_back(f);
      n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t order(const Gf2Poly& p) {
  const int r = p.degree();
  if (r < 1) throw DomainError("order requires degree >= 1");
  if (r > 62) throw DomainError("order supports degree <= 62");
  if (!p.coeff(0)) throw DomainError("order undefined when z divides the polynomial");
  if (!is_irreducible(p)) throw DomainError("order requires an irreducible polynomial");
  const std::uint64_t group = (std::uint64_t{1} << r) - 1;
  std::uint64_t t = group;
  auto factors = prime_factors(group);
  factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
  const Gf2Poly one = Gf2Poly::from_mask(1);
  for (std::uint64_t q : factors) {
    while (t % q == 0 && pow_z_mod(t / q, p) == one) t /= q;
  }
  return t;
}

bool is_primitive(const Gf2Poly& p) {
  const int r = p.degree();
  if (r < 1) return false;
  if (!p.coeff(0)) return false;
  if (!is_irreducible(p)) return false;
  return order(p) == (std::uint64_t{1} << r) - 1;
}

std::vector<Gf2Poly> primitive_polynomials(int degree) {
  if (degree < 1 || degree > 32) throw DomainError("primitive polynomial enumeration supports degree 1..32");
  std::vector<Gf2Poly> out;
  const std::uint64_t top = std::uint64_t{1} << degree;
  if (degree == 1) {
    out.push_back(Gf2Poly::from_mask(0b11));
    return out;
  }
  // constant term must be 1, so step through odd masks only
  for (std::uint64_t low = 1; low < top; low += 2) {
    Gf2Poly p = Gf2Poly::from_mask(top | low);
    if (is_primitive(p)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace phasedet
