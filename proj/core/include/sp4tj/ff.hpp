#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sp4tj {

using Complex = std::complex<double>;

/// Largest characteristic the packed matrix encoding can hold (4 bits per entry).
inline constexpr int kMaxModulus = 13;

bool is_odd_prime(int q);

/// Odd primes up to kMaxModulus; the hot-path validity check.
constexpr bool supported_modulus(int q) {
  return q == 3 || q == 5 || q == 7 || q == 11 || q == 13;
}

/// e^{2 pi i k / n}, with k reduced mod n first so large k stay exact.
Complex root_of_unity(long long k, long long n);

/// An element of F_q for an odd prime q.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long long v, int q);

  int value() const { return value_; }
  int modulus() const { return q_; }
  bool is_zero() const { return value_ == 0; }

  FieldElem operator+(FieldElem o) const;
  FieldElem operator-(FieldElem o) const;
  FieldElem operator*(FieldElem o) const;
  FieldElem operator/(FieldElem o) const;  // throws on division by zero
  FieldElem operator-() const;

  std::optional<FieldElem> try_inv() const;
  FieldElem inv() const;  // throws on zero
  FieldElem pow(long long e) const;

  friend bool operator==(FieldElem a, FieldElem b) = default;

 private:
  void check_same(FieldElem o) const;
  std::uint8_t value_ = 0;
  std::uint8_t q_ = 0;
};

enum class ArithOp { add, sub, mul, div, neg, inv };

/// Total arithmetic entry point: division by zero yields std::nullopt.
std::optional<FieldElem> field_arith(FieldElem a, FieldElem b, ArithOp op);

/// Legendre symbol (a/q) in {-1, 0, 1}.
int legendre(FieldElem a);

/// The fixed additive character x -> e^{2 pi i x / q}.
Complex psi0(FieldElem x);

/// a + b*sqrt(delta) in F_{q^2} = F_q(sqrt(delta)).
class ExtFieldElem {
 public:
  ExtFieldElem() = default;
  ExtFieldElem(FieldElem a, FieldElem b, FieldElem delta);

  FieldElem a() const { return a_; }
  FieldElem b() const { return b_; }
  FieldElem delta() const { return delta_; }
  int modulus() const { return a_.modulus(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool in_base() const { return b_.is_zero(); }

  ExtFieldElem operator+(const ExtFieldElem& o) const;
  ExtFieldElem operator-(const ExtFieldElem& o) const;
  ExtFieldElem operator*(const ExtFieldElem& o) const;
  ExtFieldElem inv() const;  // throws on zero
  ExtFieldElem pow(long long e) const;
  ExtFieldElem frobenius() const;  // x -> x^q
  FieldElem norm() const;          // x * x^q
  FieldElem trace() const;         // x + x^q

  /// Dense index a + q*b, in [0, q^2).
  int index() const { return a_.value() + a_.modulus() * b_.value(); }

  friend bool operator==(const ExtFieldElem& x, const ExtFieldElem& y) = default;

 private:
  FieldElem a_, b_, delta_;
};

/// Immutable per-q context: non-square, generators, discrete logs, Gauss sum.
class Field {
 public:
  static std::shared_ptr<const Field> make(int q);

  int q() const { return q_; }
  FieldElem operator()(long long v) const { return FieldElem(v, q_); }
  FieldElem delta() const { return delta_; }
  FieldElem generator() const { return gen_; }
  ExtFieldElem ext_generator() const { return ext_gen_; }
  ExtFieldElem ext(FieldElem a, FieldElem b) const { return ExtFieldElem(a, b, delta_); }
  ExtFieldElem ext(long long a, long long b = 0) const;

  /// Discrete logarithms to the chosen generators; both throw on zero.
  int log(FieldElem x) const;
  int log(const ExtFieldElem& x) const;

  std::vector<FieldElem> elements() const;
  std::vector<FieldElem> units() const;
  std::vector<ExtFieldElem> ext_units() const;

  /// sum_x psi0(x^2): sqrt(q) when q = 1 mod 4, i*sqrt(q) when q = 3 mod 4.
  Complex gauss_sum() const { return gauss_; }
  /// Some y with y^2 = x, if x is a square.
  std::optional<FieldElem> sqrt(FieldElem x) const;

 private:
  explicit Field(int q);
  int q_;
  FieldElem delta_, gen_;
  ExtFieldElem ext_gen_;
  std::vector<int> log_;      // indexed by value, -1 at 0
  std::vector<int> ext_log_;  // indexed by ExtFieldElem::index, -1 at 0
  Complex gauss_;
};

using FieldPtr = std::shared_ptr<const Field>;

enum class CharDomain { base, extension };

/// A multiplicative character of F_q^x or F_{q^2}^x, g^k -> e^{2 pi i e k / order}.
class MultChar {
 public:
  MultChar(FieldPtr field, CharDomain domain, int exponent);

  CharDomain domain() const { return domain_; }
  int exponent() const { return exponent_; }
  int group_order() const;
  bool is_trivial() const { return exponent_ == 0; }
  const FieldPtr& field() const { return field_; }

  Complex operator()(FieldElem x) const;  // extension characters see x embedded
  Complex operator()(const ExtFieldElem& x) const;

  MultChar operator*(const MultChar& o) const;
  MultChar inverse() const;
  /// chi o Frobenius, only for extension characters.
  MultChar frobenius() const;
  /// Restriction of an extension character to F_q^x.
  MultChar restrict_to_base() const;

  friend bool operator==(const MultChar& x, const MultChar& y) {
    return x.domain_ == y.domain_ && x.exponent_ == y.exponent_ &&
           x.field_->q() == y.field_->q();
  }

 private:
  FieldPtr field_;
  CharDomain domain_;
  int exponent_;
};

/// All characters of the given group, ordered by exponent.
std::vector<MultChar> mult_char_table(const FieldPtr& field, CharDomain domain);

}  // namespace sp4tj
