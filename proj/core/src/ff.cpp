#include "sp4tj/ff.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sp4tj {

bool is_odd_prime(int q) {
  if (q < 3 || q % 2 == 0) return false;
  for (int d = 3; d * d <= q; d += 2)
    if (q % d == 0) return false;
  return true;
}

Complex root_of_unity(long long k, long long n) {
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == n) return {-1.0, 0.0};
  if (4 * k == n) return {0.0, 1.0};
  if (4 * k == 3 * n) return {0.0, -1.0};
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(theta), std::sin(theta)};
}

// ---------------------------------------------------------------- FieldElem

FieldElem::FieldElem(long long v, int q) {
  if (!supported_modulus(q))
    throw std::invalid_argument("unsupported field modulus " + std::to_string(q));
  long long r = v % q;
  if (r < 0) r += q;
  value_ = static_cast<std::uint8_t>(r);
  q_ = static_cast<std::uint8_t>(q);
}

void FieldElem::check_same(FieldElem o) const {
  if (q_ != o.q_) throw std::invalid_argument("field elements from different fields");
}

FieldElem FieldElem::operator+(FieldElem o) const {
  check_same(o);
  return FieldElem(value_ + o.value_, q_);
}
FieldElem FieldElem::operator-(FieldElem o) const {
  check_same(o);
  return FieldElem(value_ - o.value_, q_);
}
FieldElem FieldElem::operator*(FieldElem o) const {
  check_same(o);
  return FieldElem(value_ * o.value_, q_);
}
FieldElem FieldElem::operator/(FieldElem o) const { return *this * o.inv(); }
FieldElem FieldElem::operator-() const { return FieldElem(-static_cast<int>(value_), q_); }

std::optional<FieldElem> FieldElem::try_inv() const {
  if (value_ == 0) return std::nullopt;
  return pow(q_ - 2);
}

FieldElem FieldElem::inv() const {
  auto r = try_inv();
  if (!r) throw std::domain_error("division by zero in F_" + std::to_string(q_));
  return *r;
}

FieldElem FieldElem::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  long long base = value_, acc = 1;
  while (e > 0) {
    if (e & 1) acc = acc * base % q_;
    base = base * base % q_;
    e >>= 1;
  }
  return FieldElem(acc, q_);
}

std::optional<FieldElem> field_arith(FieldElem a, FieldElem b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::neg: return -a;
    case ArithOp::inv: return a.try_inv();
    case ArithOp::div: {
      auto bi = b.try_inv();
      if (!bi) return std::nullopt;
      return a * *bi;
    }
  }
  return std::nullopt;
}

int legendre(FieldElem a) {
  if (a.is_zero()) return 0;
  return a.pow((a.modulus() - 1) / 2).value() == 1 ? 1 : -1;
}

Complex psi0(FieldElem x) { return root_of_unity(x.value(), x.modulus()); }

// ------------------------------------------------------------- ExtFieldElem

ExtFieldElem::ExtFieldElem(FieldElem a, FieldElem b, FieldElem delta) : a_(a), b_(b), delta_(delta) {
  if (a.modulus() != b.modulus() || a.modulus() != delta.modulus())
    throw std::invalid_argument("extension element components from different fields");
}

ExtFieldElem ExtFieldElem::operator+(const ExtFieldElem& o) const {
  return {a_ + o.a_, b_ + o.b_, delta_};
}
ExtFieldElem ExtFieldElem::operator-(const ExtFieldElem& o) const {
  return {a_ - o.a_, b_ - o.b_, delta_};
}
ExtFieldElem ExtFieldElem::operator*(const ExtFieldElem& o) const {
  return {a_ * o.a_ + delta_ * b_ * o.b_, a_ * o.b_ + b_ * o.a_, delta_};
}

FieldElem ExtFieldElem::norm() const { return a_ * a_ - delta_ * b_ * b_; }
FieldElem ExtFieldElem::trace() const { return a_ + a_; }
ExtFieldElem ExtFieldElem::frobenius() const { return {a_, -b_, delta_}; }

ExtFieldElem ExtFieldElem::inv() const {
  const FieldElem n = norm();
  if (n.is_zero()) throw std::domain_error("division by zero in F_{q^2}");
  const FieldElem ni = n.inv();
  return {a_ * ni, -b_ * ni, delta_};
}

ExtFieldElem ExtFieldElem::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  const int q = modulus();
  ExtFieldElem acc(FieldElem(1, q), FieldElem(0, q), delta_), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

// -------------------------------------------------------------------- Field

std::shared_ptr<const Field> Field::make(int q) {
  return std::shared_ptr<const Field>(new Field(q));
}

Field::Field(int q) : q_(q) {
  if (!is_odd_prime(q) || q > kMaxModulus)
    throw std::invalid_argument("unsupported field modulus " + std::to_string(q));
  for (int v = 2; v < q; ++v)
    if (legendre(FieldElem(v, q)) == -1) {
      delta_ = FieldElem(v, q);
      break;
    }
  // Generators by exhaustive order test.
  auto order_of = [](auto x, auto one, long long group_order) {
    auto y = x;
    long long k = 1;
    while (!(y == one)) {
      y = y * x;
      if (++k > group_order) break;
    }
    return k;
  };
  const FieldElem one(1, q);
  for (int v = 1; v < q; ++v)
    if (order_of(FieldElem(v, q), one, q - 1) == q - 1) {
      gen_ = FieldElem(v, q);
      break;
    }
  const ExtFieldElem ext_one(one, FieldElem(0, q), delta_);
  const long long ext_order = static_cast<long long>(q) * q - 1;
  for (int i = 1; i < q * q; ++i) {
    ExtFieldElem x(FieldElem(i % q, q), FieldElem(i / q, q), delta_);
    if (order_of(x, ext_one, ext_order) == ext_order) {
      ext_gen_ = x;
      break;
    }
  }
  log_.assign(q, -1);
  FieldElem x = one;
  for (int k = 0; k < q - 1; ++k, x = x * gen_) log_[x.value()] = k;
  ext_log_.assign(q * q, -1);
  ExtFieldElem y = ext_one;
  for (int k = 0; k < ext_order; ++k, y = y * ext_gen_) ext_log_[y.index()] = k;
  gauss_ = 0.0;
  for (int v = 0; v < q; ++v) gauss_ += psi0(FieldElem(static_cast<long long>(v) * v, q));
}

ExtFieldElem Field::ext(long long a, long long b) const {
  return ExtFieldElem(FieldElem(a, q_), FieldElem(b, q_), delta_);
}

int Field::log(FieldElem x) const {
  if (x.modulus() != q_) throw std::invalid_argument("element from a different field");
  if (x.is_zero()) throw std::domain_error("logarithm of zero");
  return log_[x.value()];
}

int Field::log(const ExtFieldElem& x) const {
  if (x.modulus() != q_) throw std::invalid_argument("element from a different field");
  if (x.is_zero()) throw std::domain_error("logarithm of zero");
  return ext_log_[x.index()];
}

std::vector<FieldElem> Field::elements() const {
  std::vector<FieldElem> out;
  for (int v = 0; v < q_; ++v) out.emplace_back(v, q_);
  return out;
}

std::vector<FieldElem> Field::units() const {
  std::vector<FieldElem> out;
  for (int v = 1; v < q_; ++v) out.emplace_back(v, q_);
  return out;
}

std::vector<ExtFieldElem> Field::ext_units() const {
  std::vector<ExtFieldElem> out;
  for (int i = 1; i < q_ * q_; ++i) out.push_back(ext(i % q_, i / q_));
  return out;
}

std::optional<FieldElem> Field::sqrt(FieldElem x) const {
  for (int v = 0; v < q_; ++v) {
    FieldElem y(v, q_);
    if (y * y == x) return y;
  }
  return std::nullopt;
}

// ----------------------------------------------------------------- MultChar

MultChar::MultChar(FieldPtr field, CharDomain domain, int exponent)
    : field_(std::move(field)), domain_(domain), exponent_(0) {
  const int n = group_order();
  exponent_ = ((exponent % n) + n) % n;
}

int MultChar::group_order() const {
  const int q = field_->q();
  return domain_ == CharDomain::base ? q - 1 : q * q - 1;
}

Complex MultChar::operator()(FieldElem x) const {
  if (domain_ == CharDomain::extension) return (*this)(field_->ext(x, (*field_)(0)));
  return root_of_unity(static_cast<long long>(exponent_) * field_->log(x), group_order());
}

Complex MultChar::operator()(const ExtFieldElem& x) const {
  if (domain_ == CharDomain::base) {
    if (!x.in_base()) throw std::invalid_argument("base-field character applied outside F_q");
    return (*this)(x.a());
  }
  return root_of_unity(static_cast<long long>(exponent_) * field_->log(x), group_order());
}

MultChar MultChar::operator*(const MultChar& o) const {
  if (o.domain_ != domain_ || o.field_->q() != field_->q())
    throw std::invalid_argument("multiplying characters of different groups");
  return MultChar(field_, domain_, exponent_ + o.exponent_);
}

MultChar MultChar::inverse() const { return MultChar(field_, domain_, -exponent_); }

MultChar MultChar::frobenius() const {
  if (domain_ != CharDomain::extension) throw std::logic_error("frobenius of a base character");
  return MultChar(field_, domain_, exponent_ * field_->q());
}

MultChar MultChar::restrict_to_base() const {
  if (domain_ == CharDomain::base) return *this;
  // The base generator is ext_gen^{q+1} only up to a power; go through logs.
  const FieldElem g = field_->generator();
  const long long k = field_->log(field_->ext(g, (*field_)(0)));
  // chi(g) = zeta_{q^2-1}^{e k} = zeta_{q-1}^{e k / (q+1)}
  const int q = field_->q();
  return MultChar(field_, CharDomain::base, static_cast<int>((exponent_ * k / (q + 1)) % (q - 1)));
}

std::vector<MultChar> mult_char_table(const FieldPtr& field, CharDomain domain) {
  std::vector<MultChar> out;
  const int q = field->q();
  const int n = domain == CharDomain::base ? q - 1 : q * q - 1;
  for (int e = 0; e < n; ++e) out.emplace_back(field, domain, e);
  return out;
}

}  // namespace sp4tj
