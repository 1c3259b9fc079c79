#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "sp4tj/ff.hpp"
#include "sp4tj/groups.hpp"
#include "sp4tj/mat.hpp"

namespace sp4tj {

inline constexpr double kOrthogonalityTol = 1e-9;
inline constexpr double kIntegralityTol = 1e-6;

/// A character, multiplicity or dimension that should be integral was not.
class IntegralityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conjugacy classes of an enumerated group. Classes are ordered by their
/// representative, which is the class member with the least key.
struct ClassData {
  std::shared_ptr<const GroupSet> group;
  std::vector<Mat> reps;
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint32_t> class_of;  // indexed like group->elements()
  std::size_t identity_class = 0;

  std::size_t count() const { return reps.size(); }
  std::uint64_t order() const { return group->size(); }
  std::uint64_t centralizer_order(std::size_t c) const { return order() / sizes[c]; }
  /// Throws std::invalid_argument for elements outside the group.
  std::size_t class_of_elem(const Mat& g) const;
};
using ClassDataPtr = std::shared_ptr<const ClassData>;

/// Classes by conjugation orbits under the group's generators (or all
/// elements when it has none).
ClassDataPtr conjugacy_classes(std::shared_ptr<const GroupSet> group);

class ClassFunction {
 public:
  ClassFunction(ClassDataPtr classes, std::vector<Complex> values);

  const ClassDataPtr& classes() const { return classes_; }
  const std::vector<Complex>& values() const { return values_; }
  Complex operator[](std::size_t c) const { return values_[c]; }
  Complex at(const Mat& g) const { return values_[classes_->class_of_elem(g)]; }
  Complex degree() const { return values_[classes_->identity_class]; }

  ClassFunction conj() const;
  ClassFunction operator+(const ClassFunction& o) const;
  ClassFunction operator-(const ClassFunction& o) const;
  ClassFunction operator*(const ClassFunction& o) const;  // tensor product
  ClassFunction scaled(Complex s) const;
  double max_abs_diff(const ClassFunction& o) const;

 private:
  void check_same(const ClassFunction& o) const;
  ClassDataPtr classes_;
  std::vector<Complex> values_;
};

ClassFunction zero_function(const ClassDataPtr& classes);
/// Class function from a formula evaluated on representatives.
ClassFunction tabulate(const ClassDataPtr& classes, const std::function<Complex(const Mat&)>& f);

/// <f, g> = |G|^{-1} sum_g f(g) conj(g(g)).
Complex inner_product(const ClassFunction& f, const ClassFunction& g);
ClassFunction restrict_to(const ClassFunction& f, const ClassDataPtr& sub);
ClassFunction inflate(const ClassFunction& f, const ClassDataPtr& big,
                      const std::function<Mat(const Mat&)>& quotient);
/// Ind_H^G via a left transversal T of G/H; T is validated.
ClassFunction induce(const ClassFunction& chi, const ClassDataPtr& g, const std::vector<Mat>& transversal);
std::vector<Mat> left_transversal(const GroupSet& g, const GroupSet& h);

enum class IrrFamily {
  gl2_linear,
  gl2_steinberg,
  gl2_principal,
  gl2_cuspidal,
  sl2_trivial,
  sl2_steinberg,
  sl2_principal,
  sl2_cuspidal,
  sl2_tau1,
  sl2_tau2,
  sl2_tau1p,
  sl2_tau2p,
  o2_linear,
  o2_induced,
  t2_linear,
  l_product,
};

struct IrrepLabel {
  IrrFamily family;
  std::vector<int> params;
  std::string name;
  /// Cuspidal families of GL2 and SL2; for L, decided by the SL2 factor.
  bool cuspidal = false;
};

struct IrrRow {
  IrrepLabel label;
  ClassFunction character;
};

struct IrrTable {
  std::string group_name;
  ClassDataPtr classes;
  std::vector<IrrRow> rows;

  std::size_t size() const { return rows.size(); }
  /// Row index by label name; throws std::out_of_range.
  std::size_t find(const std::string& name) const;
};

struct OrthogonalityResult {
  bool ok = false;
  double max_row_error = 0;
  double max_column_error = 0;
  bool degrees_integral = false;
  std::uint64_t degree_square_sum = 0;
  std::string detail;
};

OrthogonalityResult verify_orthogonality(const IrrTable& table, double tol = kOrthogonalityTol);

/// Multiplicities of the irreducible rows in f. Throws IntegralityError if
/// any is not within tol of a nonnegative integer.
std::vector<long> decompose(const ClassFunction& f, const IrrTable& table, double tol = kIntegralityTol);
/// Sum of multiplicity * row.
ClassFunction compose(const std::vector<long>& multiplicities, const IrrTable& table);

/// One line per row; columns are class representatives in packed hex.
std::string to_csv(const IrrTable& table);
std::string format_complex(Complex z);

}  // namespace sp4tj
