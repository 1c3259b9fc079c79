#include "sp4tj/mat.hpp"

#include <stdexcept>

namespace sp4tj {

namespace {
std::uint8_t reduce(long long v, int q) {
  long long r = v % q;
  return static_cast<std::uint8_t>(r < 0 ? r + q : r);
}
}  // namespace

Mat::Mat(int n, int q) : n_(static_cast<std::uint8_t>(n)), q_(static_cast<std::uint8_t>(q)) {
  if (n != 2 && n != 4) throw std::invalid_argument("matrix size must be 2 or 4");
  if (!supported_modulus(q)) throw std::invalid_argument("unsupported modulus");
}

Mat::Mat(int n, int q, std::initializer_list<long long> row_major) : Mat(n, q) {
  if (row_major.size() != static_cast<std::size_t>(n * n))
    throw std::invalid_argument("wrong number of matrix entries");
  std::size_t i = 0;
  for (long long v : row_major) e_[i++] = reduce(v, q);
}

Mat Mat::identity(int n, int q) {
  Mat m(n, q);
  for (int i = 0; i < n; ++i) m.e_[static_cast<std::size_t>(i * n + i)] = 1;
  return m;
}

Mat Mat::diag(int q, std::initializer_list<long long> d) {
  Mat m(static_cast<int>(d.size()), q);
  int i = 0;
  for (long long v : d) {
    m.set(i, i, v);
    ++i;
  }
  return m;
}

void Mat::set(int r, int c, long long v) {
  if (r < 0 || c < 0 || r >= n_ || c >= n_) throw std::out_of_range("matrix index");
  e_[static_cast<std::size_t>(r * n_ + c)] = reduce(v, q_);
}

void Mat::check_compatible(const Mat& o) const {
  if (n_ != o.n_ || q_ != o.q_) throw std::invalid_argument("incompatible matrices");
}

Mat Mat::operator*(const Mat& o) const {
  check_compatible(o);
  Mat r(n_, q_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      int s = 0;
      for (int k = 0; k < n_; ++k) s += e_[i * n_ + k] * o.e_[k * n_ + j];
      r.e_[i * n_ + j] = static_cast<std::uint8_t>(s % q_);
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  check_compatible(o);
  Mat r(n_, q_);
  for (int i = 0; i < n_ * n_; ++i) r.e_[i] = static_cast<std::uint8_t>((e_[i] + o.e_[i]) % q_);
  return r;
}

Mat Mat::operator-(const Mat& o) const { return *this + (-o); }

Mat Mat::operator-() const {
  Mat r(n_, q_);
  for (int i = 0; i < n_ * n_; ++i) r.e_[i] = static_cast<std::uint8_t>((q_ - e_[i]) % q_);
  return r;
}

Mat Mat::scaled(FieldElem s) const {
  Mat r(n_, q_);
  for (int i = 0; i < n_ * n_; ++i) r.e_[i] = static_cast<std::uint8_t>(e_[i] * s.value() % q_);
  return r;
}

Mat Mat::transpose() const {
  Mat r(n_, q_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.e_[j * n_ + i] = e_[i * n_ + j];
  return r;
}

FieldElem Mat::trace() const {
  long long s = 0;
  for (int i = 0; i < n_; ++i) s += at(i, i);
  return FieldElem(s, q_);
}

FieldElem Mat::det() const {
  if (n_ == 2) return FieldElem(at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0), q_);
  std::array<std::array<FieldElem, 4>, 4> a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = (*this)(i, j);
  FieldElem d(1, q_);
  for (int c = 0; c < 4; ++c) {
    int p = c;
    while (p < 4 && a[p][c].is_zero()) ++p;
    if (p == 4) return FieldElem(0, q_);
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d = d * a[c][c];
    const FieldElem inv = a[c][c].inv();
    for (int r = c + 1; r < 4; ++r) {
      const FieldElem f = a[r][c] * inv;
      for (int k = c; k < 4; ++k) a[r][k] = a[r][k] - f * a[c][k];
    }
  }
  return d;
}

std::optional<Mat> Mat::try_inverse() const {
  if (n_ == 2) {
    const auto di = det().try_inv();
    if (!di) return std::nullopt;
    Mat r(2, q_);
    r.set(0, 0, at(1, 1));
    r.set(0, 1, -at(0, 1));
    r.set(1, 0, -at(1, 0));
    r.set(1, 1, at(0, 0));
    return r.scaled(*di);
  }
  std::array<std::array<FieldElem, 8>, 4> a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 8; ++j)
      a[i][j] = j < 4 ? (*this)(i, j) : FieldElem(j - 4 == i ? 1 : 0, q_);
  for (int c = 0; c < 4; ++c) {
    int p = c;
    while (p < 4 && a[p][c].is_zero()) ++p;
    if (p == 4) return std::nullopt;
    std::swap(a[p], a[c]);
    const FieldElem inv = a[c][c].inv();
    for (auto& x : a[c]) x = x * inv;
    for (int r = 0; r < 4; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const FieldElem f = a[r][c];
      for (int k = 0; k < 8; ++k) a[r][k] = a[r][k] - f * a[c][k];
    }
  }
  Mat r(4, q_);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.set(i, j, a[i][j + 4]);
  return r;
}

Mat Mat::inverse() const {
  auto r = try_inverse();
  if (!r) throw std::domain_error("singular matrix");
  return *r;
}

Mat Mat::block(int r0, int c0) const {
  if (n_ != 4) throw std::invalid_argument("block() needs a 4x4 matrix");
  return Mat(2, q_, {at(r0, c0), at(r0, c0 + 1), at(r0 + 1, c0), at(r0 + 1, c0 + 1)});
}

Mat Mat::from_blocks(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
  const int q = a.q();
  Mat r(4, q);
  const Mat* blocks[2][2] = {{&a, &b}, {&c, &d}};
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj) {
      const Mat& m = *blocks[bi][bj];
      if (m.n() != 2 || m.q() != q) throw std::invalid_argument("blocks must be 2x2 over one field");
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.set(2 * bi + i, 2 * bj + j, m.at(i, j));
    }
  return r;
}

bool Mat::is_identity() const { return *this == identity(n_, q_); }

bool Mat::is_symmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

std::uint64_t Mat::key() const {
  std::uint64_t k = 0;
  for (int i = 0; i < n_ * n_; ++i) k = (k << 4) | e_[i];
  return k;
}

Mat Mat::from_key(std::uint64_t key, int n, int q) {
  Mat m(n, q);
  for (int i = n * n - 1; i >= 0; --i) {
    const auto v = static_cast<std::uint8_t>(key & 0xF);
    if (v >= q) throw std::invalid_argument("key entry out of range");
    m.e_[i] = v;
    key >>= 4;
  }
  return m;
}

std::string Mat::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  for (int i = 0; i < n_ * n_; ++i) s.push_back(digits[e_[i]]);
  return s;
}

}  // namespace sp4tj
