#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sp4tj/chars.hpp"
#include "sp4tj/cosets.hpp"
#include "sp4tj/groups.hpp"
#include "sp4tj/tables.hpp"

namespace sp4tj {

/// The character n(X) -> psi0(tr(A X)) of N. rank_one(gamma) has A = diag(gamma, 0).
struct PsiSpec {
  Mat a;
  int gamma = 1;
  int square_class = 1;  // Legendre symbol of gamma
  static PsiSpec rank_one(const Field& field, int gamma);
};

/// Throws std::invalid_argument when n is not in N.
Complex psi_of(const Mat& n, const PsiSpec& psi);

enum class WhittakerVariant { psi, psi_prime };  // gamma = 1 and gamma = smallest non-square

/// Character of the psi0(gamma x)-twisted Jacquet module of an SL2
/// irreducible, on the centre {+-1}.
struct WhittakerChar {
  Complex at_one, at_minus_one;
  double dimension() const { return at_one.real(); }
  bool nonzero() const { return dimension() > 0.5; }
  Complex at(int sign) const { return sign > 0 ? at_one : at_minus_one; }
};
WhittakerChar whittaker_char_sl2(const Tables& t, std::size_t sl2_row, int gamma);
WhittakerChar whittaker_char_sl2(const Tables& t, std::size_t sl2_row, WhittakerVariant v);

/// Ordinary Jacquet modules on tori: SL2 along the upper unipotent group at
/// diag(d, 1/d); GL2 along the lower unipotent group at a diagonal t.
Complex sl2_jacquet_value(const Tables& t, std::size_t sl2_row, FieldElem d);
Complex gl2_lower_jacquet_value(const Tables& t, std::size_t gl2_row, const Mat& diag);

/// Character of Ind_{P_k}^{Sp4} of an irreducible of the Levi, evaluated via
/// the sections of Lambda(k). The Levi-class profile of each element (which
/// Levi classes its fixed points contribute, and how often) is independent
/// of the inducing character and is memoized under a mutex.
class InducedCharacter {
 public:
  using Profile = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

  InducedCharacter(std::shared_ptr<const Tables> tables, Parabolic parabolic);

  Parabolic parabolic() const { return parabolic_; }
  /// GL2 for Siegel, L for Klingen.
  const IrrTable& inducing_table() const;
  const PointSpace& space() const { return space_; }

  /// Sorted (Levi class, count) pairs over the fixed points of g.
  Profile compute_profile(const Mat& g) const;
  /// Memoized compute_profile.
  const Profile& profile(const Mat& g) const;
  Complex eval(const ClassFunction& inducing, const Mat& g) const;
  Complex eval(std::size_t inducing_row, const Mat& g) const;

 private:
  std::shared_ptr<const Tables> tables_;
  Parabolic parabolic_;
  PointSpace space_;
  std::vector<Mat> sections_inv_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, Profile> memo_;
};

/// Brute-force induced character over an enumerated ambient group:
/// |P|^{-1} sum over x with x^{-1} g x in P of chi(levi(x^{-1} g x)).
Complex induced_char_bruteforce(const GroupSet& ambient, const Tables& t, Parabolic parabolic,
                                std::size_t inducing_row, const Mat& g);

/// r_{N,psi}(pi) as a class function on O2 (identified with M_psi via beta).
struct JacquetCharacter {
  Parabolic parabolic;
  std::string inducing;
  int gamma = 1;
  ClassFunction chi;
  std::vector<long> multiplicities;  // against the O2 table
  long dimension = 0;
};

/// Precomputes, for each O2 class m, the weights
/// |N|^{-1} sum_n conj(psi(n)) [profile of beta(m) n] over Levi classes; the
/// Jacquet character of any inducing datum is then a dot product.
class JacquetEngine {
 public:
  JacquetEngine(std::shared_ptr<const Tables> tables, Parabolic parabolic, const PsiSpec& psi);

  const Tables& tables() const { return *tables_; }
  const InducedCharacter& induced() const { return induced_; }
  const PsiSpec& psi() const { return psi_; }
  /// Throws IntegralityError if the result is not a genuine character.
  JacquetCharacter compute(std::size_t inducing_row) const;
  ClassFunction compute_raw(const ClassFunction& inducing) const;

 private:
  std::shared_ptr<const Tables> tables_;
  Parabolic parabolic_;
  PsiSpec psi_;
  InducedCharacter induced_;
  std::vector<std::vector<Complex>> weights_;  // [O2 class][Levi class]
};

JacquetCharacter twisted_jacquet_character(std::shared_ptr<const Tables> tables, Parabolic parabolic,
                                           std::size_t inducing_row, const PsiSpec& psi);

/// Predicted module as a class function on O2 with the summands it uses.
struct Prediction {
  ClassFunction chi;
  std::vector<std::string> summands;
  std::string case_tag;
  /// For Klingen: summands the case list prescribes, from the family of tau
  /// and the square class of gamma. Equals `summands` when the Whittaker
  /// recipe and the case list agree.
  std::vector<std::string> case_summands;
};

Prediction predicted_siegel(const Tables& t, std::size_t gl2_row);
Prediction predicted_klingen(const Tables& t, std::size_t l_row, int gamma);

struct VerificationReport {
  int q = 0;
  int gamma = 1;
  Parabolic parabolic = Parabolic::siegel;
  std::string inducing;
  std::string case_tag;
  std::vector<std::string> irrep_labels;  // O2 rows
  std::vector<long> computed;
  std::vector<long> predicted;
  std::vector<std::string> summands;
  bool case_consistent = true;
  double max_pointwise_diff = 0;
  long dimension = 0;
  std::string detail;  // why a failing check failed
  bool pass = false;
  double wall_ms = 0;
};

/// All Siegel (|Irr GL2|) and Klingen (|Irr L|) checks for one (q, gamma).
/// Integrality failures propagate as IntegralityError naming the datum.
std::vector<VerificationReport> verify_siegel(int q, int gamma);
std::vector<VerificationReport> verify_klingen(int q, int gamma);
std::vector<VerificationReport> verify_theorems(int q, int gamma);

}  // namespace sp4tj
