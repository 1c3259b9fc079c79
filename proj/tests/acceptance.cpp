// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "cli.hpp"
#include "sp4tj/cosets.hpp"
#include "sp4tj/jacquet.hpp"

using namespace sp4tj;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

bool sweep(Outcome& o, const std::vector<VerificationReport>& reports, std::size_t expected) {
  o.require(reports.size() == expected, "expected " + std::to_string(expected) + " data, got " + std::to_string(reports.size()));
  for (const auto& r : reports)
    o.require(r.pass && r.computed == r.predicted, to_string(r.parabolic) + std::string(" ") + r.inducing + " at gamma=" +
                                                       std::to_string(r.gamma) + ": " + r.detail);
  return o.pass;
}

Outcome theorem_siegel_q3() {
  Outcome o;
  for (int gamma : {1, 2}) sweep(o, verify_siegel(3, gamma), 8);
  return o;
}

Outcome theorem_klingen_q3() {
  Outcome o;
  std::map<std::string, std::vector<std::string>> split[2];
  for (int gamma : {1, 2}) {
    const auto reports = verify_klingen(3, gamma);
    sweep(o, reports, 14);
    const auto t = tables_for(3);
    for (std::size_t r = 0; r < t->l.size(); ++r) {
      const IrrFamily fam = t->sl2.rows[std::size_t(t->l.rows[r].label.params[1])].label.family;
      if (fam >= IrrFamily::sl2_tau1) split[gamma - 1][t->l.rows[r].label.name] = predicted_klingen(*t, r, gamma).case_summands;
    }
  }
  o.require(split[0].size() == 8, "expected 8 tau data");
  for (const auto& [name, summands] : split[0])
    o.require(summands != split[1][name], name + " does not branch with the square class of gamma");
  return o;
}

Outcome theorems_q5() {
  Outcome o;
  for (int gamma : {1, 2}) {
    sweep(o, verify_siegel(5, gamma), 24);
    sweep(o, verify_klingen(5, gamma), 36);
  }
  return o;
}

Outcome double_cosets() {
  Outcome o;
  for (int q : {3, 5, 7}) {
    const cli::Json j = cli::orbits_section(q, false);
    for (const auto& e : j["double_cosets"])
      o.require(e["pass"] == true, "q=" + std::to_string(q) + " " + e["name"].get<std::string>());
    o.require(j["double_cosets"].size() == 5, "five double coset families at q=" + std::to_string(q));
    for (const char* k : {"two_step", "stabilizers"})
      for (const auto& e : j[k]) o.require(e["pass"] == true, "q=" + std::to_string(q) + " " + e["name"].get<std::string>());
  }
  return o;
}

Outcome decomposability() {
  Outcome o;
  for (int q : {3, 5}) {
    const cli::Json j = cli::decomposability_section(q);
    o.require(j["conditions"].size() == 48, "48 conditions");
    for (const auto& e : j["conditions"]) o.require(e["pass"] == true, e.dump());
    const auto& neg = j["negative_control"];
    o.require(neg["pass"] == true && neg["decomposable"] == false && !neg["witness"].get<std::string>().empty(),
              "negative control");
  }
  return o;
}

Outcome orthogonality() {
  Outcome o;
  for (int q : {3, 5, 7}) {
    const auto t = tables_for(q);
    for (const IrrTable* table : {&t->gl2, &t->sl2, &t->o2, &t->t2, &t->l}) {
      const OrthogonalityResult r = verify_orthogonality(*table);
      o.require(r.ok && r.degrees_integral && r.degree_square_sum == table->classes->order(),
                table->group_name + " at q=" + std::to_string(q) + ": " + r.detail);
    }
  }
  return o;
}

Outcome classification() {
  Outcome o;
  for (int q : {3, 5, 7}) {
    const auto t = tables_for(q);
    int both = 0, principal_both = 0;
    for (std::size_t r = 0; r < t->sl2.size(); ++r) {
      const IrrFamily fam = t->sl2.rows[r].label.family;
      const long a = std::lround(whittaker_char_sl2(*t, r, WhittakerVariant::psi).dimension());
      const long b = std::lround(whittaker_char_sl2(*t, r, WhittakerVariant::psi_prime).dimension());
      std::string expect = "11";
      if (fam == IrrFamily::sl2_trivial) expect = "00";
      if (fam == IrrFamily::sl2_tau1 || fam == IrrFamily::sl2_tau1p) expect = "10";
      if (fam == IrrFamily::sl2_tau2 || fam == IrrFamily::sl2_tau2p) expect = "01";
      const std::string got = std::to_string(a) + std::to_string(b);
      o.require(got == expect, t->sl2.rows[r].label.name + " at q=" + std::to_string(q) + " has pattern " + got);
      if (got == "11") ++both;
      if (got == "11" && fam == IrrFamily::sl2_principal) ++principal_both;
    }
    o.require(principal_both == (q - 3) / 2, "principal series count at q=" + std::to_string(q));
    o.require(both == (q - 3) / 2 + (q - 1) / 2 + 1, "generic count at q=" + std::to_string(q));
  }
  return o;
}

/// Frobenius sum over all of Sp4(F_3): Ind(chi)(g) = |P|^-1 sum_x chi(levi(x^-1 g x)).
Outcome oracle_q3() {
  Outcome o;
  const int q = 3;
  const auto t = tables_for(q);
  SubgroupParams params;
  params.oracle_mode = true;
  const GroupSet sp4 = named_subgroup("Sp4", t->field, params);
  o.require(sp4.size() == 51840, "Sp4(F_3) has " + std::to_string(sp4.size()) + " elements");
  const InducedCharacter siegel(t, Parabolic::siegel), klingen(t, Parabolic::klingen);
  const double p_order = double(subgroup_model("P", t->field).order);
  const double q_order = double(subgroup_model("Q", t->field).order);

  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick(0, sp4.size() - 1);
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    const Mat& g = sp4[pick(rng)];
    std::map<std::size_t, int> sieg, kling;
    for (const Mat& x : sp4.elements()) {
      const Mat y = symplectic_inverse(x) * g * x;
      if (in_siegel(y)) ++sieg[t->gl2.classes->class_of_elem(levi_part(y, Parabolic::siegel).g)];
      if (in_klingen(y)) ++kling[t->l.classes->class_of_elem(levi_part(y, Parabolic::klingen).embedded())];
    }
    for (std::size_t r = 0; r < t->gl2.size(); ++r) {
      Complex v = 0;
      for (const auto& [c, n] : sieg) v += double(n) * t->gl2.rows[r].character[c];
      worst = std::max(worst, std::abs(v / p_order - siegel.eval(r, g)));
    }
    for (std::size_t r = 0; r < t->l.size(); ++r) {
      Complex v = 0;
      for (const auto& [c, n] : kling) v += double(n) * t->l.rows[r].character[c];
      worst = std::max(worst, std::abs(v / q_order - klingen.eval(r, g)));
    }
  }
  o.require(worst <= 1e-9, "max deviation " + std::to_string(worst));
  return o;
}

Outcome properties() {
  Outcome o;
  for (int q : {3, 5, 7}) {
    const auto t = tables_for(q);
    std::map<int, std::map<std::string, std::vector<long>>> by_class;
    for (int gamma = 1; gamma < q; ++gamma) {
      std::map<std::string, std::vector<long>> got;
      for (Parabolic par : {Parabolic::siegel, Parabolic::klingen}) {
        const JacquetEngine engine(t, par, PsiSpec::rank_one(*t->field, gamma));
        const IrrTable& inducing = engine.induced().inducing_table();
        for (std::size_t r = 0; r < inducing.size(); ++r) {
          const std::string name = std::string(to_string(par)) + " " + inducing.rows[r].label.name;
          const JacquetCharacter j = engine.compute(r);  // throws IntegralityError on non-integral data
          for (long m : j.multiplicities) o.require(m >= 0, name + " has a negative multiplicity");
          const Prediction p = par == Parabolic::siegel ? predicted_siegel(*t, r) : predicted_klingen(*t, r, gamma);
          const long predicted_dim = std::lround(p.chi.degree().real());
          o.require(j.dimension == predicted_dim && std::abs(j.chi.degree().real() - double(j.dimension)) < kIntegralityTol,
                    name + " dimension bookkeeping at gamma=" + std::to_string(gamma));
          got[name] = j.multiplicities;
        }
      }
      const int cls = legendre(FieldElem(gamma, q));
      if (by_class.count(cls))
        o.require(by_class[cls] == got, "gamma=" + std::to_string(gamma) + " differs from its square class at q=" + std::to_string(q));
      else
        by_class[cls] = got;

      SubgroupParams sp;
      sp.gamma = gamma;
      std::set<std::uint64_t> a, b;
      subgroup_model("Spsi", t->field, sp).for_each([&](const Mat& m) { a.insert(m.key()); });
      subgroup_model("Spsi", t->field).for_each([&](const Mat& m) { b.insert(m.key()); });
      o.require(a == b, "S_psi depends on gamma at q=" + std::to_string(q));
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Siegel sweep q=3, gamma in {1,2}", theorem_siegel_q3},
      {"Klingen sweep q=3, gamma in {1,2}, tau cases branch", theorem_klingen_q3},
      {"Siegel and Klingen sweeps q=5", theorems_q5},
      {"double coset counts and named representatives, q in {3,5,7}", double_cosets},
      {"decomposability conditions q in {3,5} with negative control", decomposability},
      {"character table orthogonality q in {3,5,7}", orthogonality},
      {"SL2 Whittaker classification q in {3,5,7}", classification},
      {"induced characters vs Frobenius sum over Sp4(F_3), 50 elements", oracle_q3},
      {"gamma invariance, S_psi independence, integrality, dimensions", properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s  %s (%.2fs)%s%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), s,
                o.pass ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
