#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sp4tj/ff.hpp"
#include "sp4tj/mat.hpp"

namespace sp4tj {

// ------------------------------------------------------------ symplectic basics

/// J = [[0, I], [-I, 0]]; Sp4 = { g : g^T J g = J }.
Mat form_J(int q);
bool is_symplectic(const Mat& g);
/// g^{-1} = -J g^T J for symplectic g.
Mat symplectic_inverse(const Mat& g);
/// B(u, v) = u^T J v.
FieldElem symplectic_form(const std::array<FieldElem, 4>& u, const std::array<FieldElem, 4>& v);

/// beta(g) = diag(g, g^{-T}).
Mat embed_beta(const Mat& g);
/// alpha(t, A) on e1, e2, e1v, e2v; A must lie in SL2.
Mat embed_alpha(FieldElem t, const Mat& a);
/// [[I, X], [0, I]] for symmetric X.
Mat n_of(const Mat& x);
/// Element of the Klingen unipotent radical.
Mat u_of(FieldElem x, FieldElem y, FieldElem z);

enum class Parabolic { siegel, klingen };
const char* to_string(Parabolic p);

/// Levi coordinates: Siegel gives the GL2 block g, Klingen gives (t, A).
struct LeviPart {
  Parabolic parabolic;
  Mat g;        // Siegel block or Klingen A
  FieldElem t;  // Klingen only
  /// Levi element as a 4x4 matrix (beta(g) or alpha(t, A)).
  Mat embedded() const;
};

bool in_siegel(const Mat& g);
bool in_klingen(const Mat& g);
/// Throws std::invalid_argument when p is outside the parabolic.
LeviPart levi_part(const Mat& p, Parabolic parabolic);

// --------------------------------------------------------------- named elements

Mat sigma(int j, int q);  // j in {0, 1, 2}: I, sigma_1, sigma_2
Mat h_elem(int j, int q);  // j in {0, 1}: I2 and [[0,1],[1,0]]
Mat tau1(int q);          // beta(h_1)
Mat klingen_weyl(int j, int q);  // j in {0, 1}: I, sigma_1
Mat unipotent_upper(FieldElem x);  // [[1,x],[0,1]]
Mat unipotent_lower(FieldElem x);  // [[1,0],[x,1]]

// --------------------------------------------------------------- subgroup models

struct SubgroupParams {
  int gamma = 1;             // C = diag(gamma, 0)
  bool oracle_mode = false;  // permits enumerating all of Sp4(F_3)
};

/// A subgroup described by coordinates: membership test, parametrized
/// enumeration, order, and a generating set.
struct SubgroupModel {
  std::string name;
  int n = 4;
  int q = 0;
  std::uint64_t order = 0;
  std::function<bool(const Mat&)> contains;
  std::function<void(const std::function<void(const Mat&)>&)> for_each;
  std::vector<Mat> generators;
};

/// Names: Sp4 P M N Q L U Spsi Mpsi O2C T2C B Bbar N11 N11bar N0..N4
/// M1 M2 M3 D0 D1 H1 GL2 SL2. Unknown names throw std::invalid_argument.
SubgroupModel subgroup_model(const std::string& name, const FieldPtr& field,
                             const SubgroupParams& params = {});
const std::vector<std::string>& subgroup_catalog();

/// w H w^{-1}.
SubgroupModel conjugate(const SubgroupModel& h, const Mat& w);

// ------------------------------------------------------------------ GroupSet

/// An explicitly enumerated finite matrix group, elements sorted by key.
class GroupSet {
 public:
  GroupSet(std::string name, std::vector<Mat> elements, std::vector<Mat> generators = {});

  const std::string& name() const { return name_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Mat>& elements() const { return elements_; }
  const Mat& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Mat>& generators() const { return generators_; }
  int n() const { return elements_.front().n(); }
  int q() const { return elements_.front().q(); }

  std::optional<std::size_t> index_of(const Mat& g) const;
  bool contains(const Mat& g) const { return index_of(g).has_value(); }

 private:
  std::string name_;
  std::vector<Mat> elements_;
  std::vector<Mat> generators_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

/// Enumerates a named subgroup by its parametrization. Sp4 is produced by
/// closure and only in oracle mode at q = 3.
GroupSet named_subgroup(const std::string& name, const FieldPtr& field,
                        const SubgroupParams& params = {});
GroupSet enumerate(const SubgroupModel& model);
/// Breadth-first closure of a generating set.
GroupSet closure(const std::string& name, const std::vector<Mat>& generators,
                 std::size_t limit = 20'000'000);

/// Order of Sp4(F_q).
std::uint64_t sp4_order(int q);

}  // namespace sp4tj
