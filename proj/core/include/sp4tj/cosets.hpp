#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sp4tj/ff.hpp"
#include "sp4tj/groups.hpp"
#include "sp4tj/mat.hpp"

namespace sp4tj {

using Vec = std::array<std::uint8_t, 4>;

/// A k-dimensional subspace of F_q^dim (dim 2 or 4), stored as its reduced
/// row echelon basis. Two subspaces are equal iff their bases are.
class Subspace {
 public:
  /// Row space of the given vectors; throws if they are linearly dependent.
  Subspace(int dim, int q, const std::vector<Vec>& rows);

  int dim() const { return dim_; }
  int k() const { return k_; }
  int q() const { return q_; }
  const std::vector<Vec>& basis() const { return rows_; }

  bool is_isotropic() const;
  /// g(Y) for g acting on column vectors.
  Subspace apply(const Mat& g) const;
  int intersection_dim(const Subspace& other) const;
  std::uint64_t key() const;
  std::string to_string() const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.key() == b.key(); }

 private:
  int dim_, k_, q_;
  std::vector<Vec> rows_;
};

/// Isotropic subspaces of the symplectic space F_q^4.
using IsotropicSubspace = Subspace;

/// Rank of a list of vectors of length dim.
int vector_rank(const std::vector<Vec>& rows, int dim, int q);

/// All k-dimensional isotropic subspaces (k = 1, 2), in key order.
std::vector<IsotropicSubspace> isotropic_spaces(const FieldPtr& field, int k);
/// <e1> for k = 1 and <e1, e2> for k = 2.
IsotropicSubspace standard_isotropic(const FieldPtr& field, int k);

/// Some g in Sp4 with g(X0) = X; the first completion in the order that
/// compares coordinates from the last one backwards. Gives I4 at X = X0.
Mat symplectic_section(const IsotropicSubspace& x);

/// A finite set with a left matrix action, a base point and a section:
/// Lambda(k) under Sp4, or the projective line under GL2.
class PointSpace {
 public:
  static PointSpace isotropic(const FieldPtr& field, int k);
  static PointSpace projective_line(const FieldPtr& field);

  const std::string& name() const { return name_; }
  std::size_t size() const { return points_.size(); }
  const Subspace& point(std::size_t i) const { return points_[i]; }
  std::size_t base_point() const { return base_; }
  std::size_t index_of(const Subspace& s) const;
  std::size_t act(const Mat& g, std::size_t i) const;
  const Mat& section(std::size_t i) const { return sections_[i]; }
  /// Order of the stabilizer of the base point (P_k or the lower Borel).
  std::uint64_t base_stabilizer_order() const { return stabilizer_order_; }
  int q() const { return q_; }

 private:
  PointSpace() = default;
  std::string name_;
  int q_ = 0;
  std::vector<Subspace> points_;
  std::vector<Mat> sections_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::size_t base_ = 0;
  std::uint64_t stabilizer_order_ = 0;
};

struct OrbitDecomposition {
  std::vector<std::size_t> orbit_of;             // point -> orbit id
  std::vector<std::vector<std::size_t>> orbits;  // ordered by least point
  std::vector<std::size_t> representatives;      // least point of each orbit
  std::vector<Mat> witness;                      // witness[x] * rep = x
  std::size_t count() const { return orbits.size(); }
};

/// Union-find over the generators, then a BFS per orbit for witnesses.
OrbitDecomposition orbit_decompose(const PointSpace& space, const std::vector<Mat>& generators);
OrbitDecomposition orbit_decompose(const PointSpace& space, const SubgroupModel& actors);
/// Uses every element when the group has at most 10^4 of them.
OrbitDecomposition orbit_decompose(const PointSpace& space, const GroupSet& actors);

/// Double cosets G0 \ G / K with G0 the base-point stabilizer, read off as
/// K-orbits through G0 g -> g^{-1}(base).
struct DoubleCosetReport {
  std::string space;
  std::string right_group;
  std::vector<Mat> representatives;  // section(orbit rep)^{-1}
  std::vector<std::size_t> orbit_points;
  std::vector<std::size_t> orbit_sizes;
  std::vector<std::uint64_t> sizes;  // |G0| * orbit size
  OrbitDecomposition orbits;
  std::size_t count() const { return representatives.size(); }
  /// Orbit id of the double coset containing g.
  std::size_t locate(const PointSpace& space, const Mat& g) const;
};

DoubleCosetReport double_coset_reps(const PointSpace& space, const SubgroupModel& right_group);

/// Representatives g_j h_{ji}^{-1} built from outer orbit reps and inner
/// orbits inside each outer orbit. ok is false unless they form a complete
/// irredundant system for the inner group.
struct TwoStepResult {
  std::vector<Mat> representatives;
  std::vector<std::pair<std::size_t, std::size_t>> outer_inner;  // (outer orbit, inner orbit)
  bool ok = false;
};
TwoStepResult two_step_representatives(const PointSpace& space, const SubgroupModel& outer,
                                       const SubgroupModel& inner);

struct DecompositionResult {
  bool decomposable = false;
  std::optional<Mat> witness;  // in H and H1 H2 but not in (H^H1)(H^H2)
  std::uint64_t intersection_size = 0;  // |H ^ H1 H2|
};

/// Set-level check of H ^ (H1 H2) == (H ^ H1)(H ^ H2).
DecompositionResult decomposability_check(const GroupSet& h, const GroupSet& h1, const GroupSet& h2);

/// H1 H2 with unique factorization x = h1 h2.
struct Factorization {
  std::string first, second;
  SubgroupModel product;
  std::function<std::pair<Mat, Mat>(const Mat&)> split;
};
/// (Mpsi, N), (M, N) or (L, U).
Factorization standard_factorization(const std::string& first, const FieldPtr& field,
                                     const SubgroupParams& params = {});

/// Streaming variant: scans the smaller of H and H1 H2 and tests each
/// element's factors for membership in H. Needs H1 ^ H2 = 1.
DecompositionResult decomposability_check(const SubgroupModel& h, const Factorization& pair);

/// Stabilizer descriptions inside the Siegel parabolic.
enum class StabilizerKind { siegel, klingen };
struct StabilizerCheck {
  bool ok = false;
  std::uint64_t explicit_size = 0;
  std::uint64_t expected_size = 0;  // |P| / |P-orbit|
  std::string detail;
};
/// Siegel j in {0,1,2}: sigma_j P sigma_j^{-1} ^ P. Klingen j in {0,1}:
/// w_j Q w_j^{-1} ^ P. Compares against the coordinate description.
StabilizerCheck verify_stabilizer(int j, StabilizerKind kind, const FieldPtr& field);
/// The coordinate description itself as a model (used by the check).
SubgroupModel stabilizer_display(int j, StabilizerKind kind, const FieldPtr& field);

}  // namespace sp4tj
