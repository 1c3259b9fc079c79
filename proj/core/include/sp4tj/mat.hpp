#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>

#include "sp4tj/ff.hpp"

namespace sp4tj {

/// Square matrix over F_q of size 2 or 4, stored densely in row-major order.
class Mat {
 public:
  Mat() = default;
  Mat(int n, int q);  // zero matrix
  Mat(int n, int q, std::initializer_list<long long> row_major);

  static Mat identity(int n, int q);
  static Mat diag(int q, std::initializer_list<long long> d);

  int n() const { return n_; }
  int q() const { return q_; }

  int at(int r, int c) const { return e_[static_cast<std::size_t>(r * n_ + c)]; }
  FieldElem operator()(int r, int c) const { return FieldElem(at(r, c), q_); }
  void set(int r, int c, long long v);
  void set(int r, int c, FieldElem v) { set(r, c, v.value()); }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat scaled(FieldElem s) const;
  Mat transpose() const;

  FieldElem det() const;
  FieldElem trace() const;
  std::optional<Mat> try_inverse() const;
  Mat inverse() const;  // throws if singular

  /// 2x2 block with top-left corner (r0, c0); requires n == 4.
  Mat block(int r0, int c0) const;
  /// 4x4 matrix from 2x2 blocks [[a, b], [c, d]].
  static Mat from_blocks(const Mat& a, const Mat& b, const Mat& c, const Mat& d);

  bool is_identity() const;
  bool is_symmetric() const;

  /// Entries packed four bits apiece, row-major, first entry most significant.
  std::uint64_t key() const;
  static Mat from_key(std::uint64_t key, int n, int q);
  /// Lowercase hex of key(), zero-padded to n*n digits.
  std::string hex() const;

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.n_ == b.n_ && a.q_ == b.q_ && a.e_ == b.e_;
  }
  friend bool operator<(const Mat& a, const Mat& b) { return a.key() < b.key(); }

 private:
  void check_compatible(const Mat& o) const;
  std::uint8_t n_ = 0;
  std::uint8_t q_ = 0;
  std::array<std::uint8_t, 16> e_{};
};

struct MatHash {
  std::size_t operator()(const Mat& m) const noexcept { return std::hash<std::uint64_t>{}(m.key()); }
};

}  // namespace sp4tj
