#include <cmath>
#include <map>

#include "doctest.h"
#include "sp4tj/jacquet.hpp"

using namespace sp4tj;

namespace {

long family_jacquet_dim(IrrFamily f) {
  switch (f) {
    case IrrFamily::gl2_linear:
    case IrrFamily::gl2_steinberg:
    case IrrFamily::sl2_trivial:
    case IrrFamily::sl2_steinberg:
    case IrrFamily::sl2_tau1:
    case IrrFamily::sl2_tau2: return 1;
    case IrrFamily::gl2_principal:
    case IrrFamily::sl2_principal: return 2;
    default: return 0;
  }
}

std::map<std::string, std::vector<long>> computed_by_inducing(const std::vector<VerificationReport>& rs) {
  std::map<std::string, std::vector<long>> m;
  for (const auto& r : rs) m[std::string(to_string(r.parabolic)) + "/" + r.inducing] = r.computed;
  return m;
}

}  // namespace

TEST_CASE("psi on N") {
  const auto f = Field::make(5);
  const PsiSpec psi = PsiSpec::rank_one(*f, 2);
  CHECK(psi.square_class == -1);
  CHECK(PsiSpec::rank_one(*f, 4).square_class == 1);
  CHECK(std::abs(psi_of(n_of(Mat(2, 5, {1, 0, 0, 0})), psi) - psi0(FieldElem(2, 5))) < 1e-12);
  CHECK(std::abs(psi_of(n_of(Mat(2, 5, {0, 3, 3, 4})), psi) - 1.0) < 1e-12);
  CHECK(std::abs(psi_of(n_of(Mat(2, 5, {3, 1, 1, 2})), psi) - psi0(FieldElem(1, 5))) < 1e-12);
  CHECK_THROWS_AS(psi_of(form_J(5), psi), std::invalid_argument);
  CHECK_THROWS(PsiSpec::rank_one(*f, 0));
}

TEST_CASE("Whittaker characters of SL2") {
  for (int q : {3, 5, 7, 11}) {
    const auto t = tables_for(q);
    for (std::size_t r = 0; r < t->sl2.size(); ++r) {
      const IrrFamily fam = t->sl2.rows[r].label.family;
      const WhittakerChar a = whittaker_char_sl2(*t, r, 1);
      const WhittakerChar b = whittaker_char_sl2(*t, r, WhittakerVariant::psi_prime);
      const int da = int(std::lround(a.dimension())), db = int(std::lround(b.dimension()));
      int ea = 1, eb = 1;
      if (fam == IrrFamily::sl2_trivial) ea = eb = 0;
      if (fam == IrrFamily::sl2_tau1 || fam == IrrFamily::sl2_tau1p) eb = 0;
      if (fam == IrrFamily::sl2_tau2 || fam == IrrFamily::sl2_tau2p) ea = 0;
      CHECK(da == ea);
      CHECK(db == eb);
      // Depends on gamma only through its square class.
      for (int g = 1; g < q; ++g) {
        const WhittakerChar c = whittaker_char_sl2(*t, r, g);
        const WhittakerChar& ref = legendre(FieldElem(g, q)) == 1 ? a : b;
        CHECK(std::abs(c.at_one - ref.at_one) < 1e-9);
        CHECK(std::abs(c.at_minus_one - ref.at_minus_one) < 1e-9);
      }
    }
  }
}

TEST_CASE("ordinary Jacquet modules on tori") {
  const int q = 7;
  const auto t = tables_for(q);
  const auto& f = *t->field;
  for (std::size_t r = 0; r < t->sl2.size(); ++r) {
    const IrrFamily fam = t->sl2.rows[r].label.family;
    CHECK(std::abs(sl2_jacquet_value(*t, r, f(1)) - double(family_jacquet_dim(fam))) < 1e-9);
    if (fam == IrrFamily::sl2_trivial || fam == IrrFamily::sl2_steinberg)
      for (FieldElem d : f.units()) CHECK(std::abs(sl2_jacquet_value(*t, r, d) - 1.0) < 1e-9);
    if (t->sl2.rows[r].label.cuspidal)
      for (FieldElem d : f.units()) CHECK(std::abs(sl2_jacquet_value(*t, r, d)) < 1e-9);
  }
  for (std::size_t r = 0; r < t->gl2.size(); ++r)
    CHECK(std::abs(gl2_lower_jacquet_value(*t, r, Mat::identity(2, q)) - double(family_jacquet_dim(t->gl2.rows[r].label.family))) <
          1e-9);
}

TEST_CASE("induced characters at the identity and against brute force") {
  const int q = 3;
  const auto t = tables_for(q);
  const InducedCharacter siegel(t, Parabolic::siegel), klingen(t, Parabolic::klingen);
  const Mat id = Mat::identity(4, q);
  CHECK(std::abs(siegel.eval(t->gl2.find("st(0)"), id) - 120.0) < 1e-9);
  CHECK(std::abs(klingen.eval(t->l.find("eta(0)*triv"), id) - 40.0) < 1e-9);
  CHECK_THROWS_AS(siegel.profile(Mat::diag(q, {1, 1, 1, 2})), std::invalid_argument);

  SubgroupParams oracle;
  oracle.oracle_mode = true;
  const GroupSet sp4 = named_subgroup("Sp4", t->field, oracle);
  const std::vector<Mat> probes = {id, form_J(q), sigma(1, q) * n_of(Mat(2, q, {1, 0, 0, 2})),
                                   embed_alpha(t->field->generator(), Mat(2, q, {0, 1, 2, 0})), sp4[12345], sp4[40000]};
  for (const Mat& g : probes) {
    for (const char* row : {"lin(1)", "st(0)", "cusp(1)"})
      CHECK(std::abs(siegel.eval(t->gl2.find(row), g) - induced_char_bruteforce(sp4, *t, Parabolic::siegel, t->gl2.find(row), g)) < 1e-9);
    for (const char* row : {"eta(1)*st", "eta(0)*tau1'", "eta(1)*tau2"})
      CHECK(std::abs(klingen.eval(t->l.find(row), g) - induced_char_bruteforce(sp4, *t, Parabolic::klingen, t->l.find(row), g)) < 1e-9);
  }
}

TEST_CASE("Jacquet characters against a brute-force projector on Sp4(F_3)") {
  const int q = 3;
  const auto t = tables_for(q);
  SubgroupParams oracle;
  oracle.oracle_mode = true;
  const GroupSet sp4 = named_subgroup("Sp4", t->field, oracle);
  const GroupSet n = named_subgroup("N", t->field);
  for (Parabolic par : {Parabolic::siegel, Parabolic::klingen}) {
    const IrrTable& inducing = par == Parabolic::siegel ? t->gl2 : t->l;
    const double order = double(subgroup_model(par == Parabolic::siegel ? "P" : "Q", t->field).order);
    // Fixed-point profile of every beta(m) n, by conjugating with all of Sp4.
    std::vector<std::vector<std::pair<const Mat*, std::map<std::size_t, int>>>> profiles;
    for (const Mat& m : t->o2.classes->reps) {
      profiles.emplace_back();
      for (const Mat& x : n.elements()) {
        const Mat g = embed_beta(m) * x;
        std::map<std::size_t, int> counts;
        for (const Mat& y : sp4.elements()) {
          const Mat c = symplectic_inverse(y) * g * y;
          if (par == Parabolic::siegel ? in_siegel(c) : in_klingen(c)) {
            const LeviPart lp = levi_part(c, par);
            ++counts[inducing.classes->class_of_elem(par == Parabolic::siegel ? lp.g : lp.embedded())];
          }
        }
        profiles.back().emplace_back(&x, std::move(counts));
      }
    }
    for (int gamma : {1, 2}) {
      const PsiSpec psi = PsiSpec::rank_one(*t->field, gamma);
      const JacquetEngine engine(t, par, psi);
      for (std::size_t r = 0; r < inducing.size(); ++r) {
        CAPTURE(inducing.rows[r].label.name);
        CAPTURE(gamma);
        const JacquetCharacter j = engine.compute(r);
        for (std::size_t c = 0; c < t->o2.classes->count(); ++c) {
          Complex v = 0;
          for (const auto& [x, counts] : profiles[c]) {
            Complex ind = 0;
            for (const auto& [cls, k] : counts) ind += double(k) * inducing.rows[r].character[cls];
            v += std::conj(psi_of(*x, psi)) * ind / order;
          }
          v /= double(n.size());
          CHECK(std::abs(v - j.chi.at(t->o2.classes->reps[c])) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("frozen multiplicities at q = 3") {
  const auto t = tables_for(3);
  const PsiSpec psi = PsiSpec::rank_one(*t->field, 1);
  const JacquetEngine siegel(t, Parabolic::siegel, psi);
  // O2 row order: lin(0,0) lin(0,1) lin(1,0) lin(1,1) ind(0) ind(1)
  CHECK(siegel.compute(t->gl2.find("lin(0)")).multiplicities == std::vector<long>{2, 0, 0, 0, 0, 0});
  CHECK(siegel.compute(t->gl2.find("lin(1)")).multiplicities == std::vector<long>{0, 0, 0, 2, 0, 0});
  CHECK(siegel.compute(t->gl2.find("st(0)")).multiplicities == std::vector<long>{2, 0, 0, 0, 1, 0});
  CHECK(siegel.compute(t->gl2.find("st(0)")).dimension == 4);
}

TEST_CASE("all reports pass at q = 3 and q = 5") {
  for (int q : {3, 5}) {
    const auto t = tables_for(q);
    for (int gamma = 1; gamma < q; ++gamma) {
      const auto reports = verify_theorems(q, gamma);
      CHECK(reports.size() == t->gl2.size() + t->l.size());
      for (const auto& r : reports) {
        CAPTURE(r.inducing);
        CHECK(r.pass);
        CHECK(r.case_consistent);
        CHECK(r.computed == r.predicted);
        CHECK(r.max_pointwise_diff < 1e-9);
      }
    }
  }
  CHECK(verify_theorems(3, 1).size() == 22);
  CHECK(verify_theorems(5, 1).size() == 60);
}

TEST_CASE("predicted dimensions") {
  for (int q : {3, 5, 7}) {
    const auto t = tables_for(q);
    for (std::size_t r = 0; r < t->gl2.size(); ++r) {
      const IrrRow& rho = t->gl2.rows[r];
      const long expect = std::lround(rho.character.degree().real()) + family_jacquet_dim(rho.label.family);
      CHECK(std::lround(predicted_siegel(*t, r).chi.degree().real()) == expect);
    }
    for (int gamma : {1, int(t->field->delta().value())}) {
      for (std::size_t r = 0; r < t->l.size(); ++r) {
        const IrrFamily fam = t->sl2.rows[std::size_t(t->l.rows[r].label.params[1])].label.family;
        const long w = std::lround(whittaker_char_sl2(*t, std::size_t(t->l.rows[r].label.params[1]), gamma).dimension());
        const Prediction p = predicted_klingen(*t, r, gamma);
        CHECK(std::lround(p.chi.degree().real()) == w + family_jacquet_dim(fam) + q * w);
        CHECK(p.summands == p.case_summands);
      }
    }
  }
}

TEST_CASE("results depend on gamma only through its square class") {
  for (int q : {5, 7}) {
    std::map<int, std::map<std::string, std::vector<long>>> by_class;
    for (int gamma = 1; gamma < q; ++gamma) {
      const auto m = computed_by_inducing(verify_theorems(q, gamma));
      const int cls = legendre(FieldElem(gamma, q));
      if (by_class.count(cls))
        CHECK(by_class[cls] == m);
      else
        by_class[cls] = m;
    }
  }
}

TEST_CASE("tau1 and tau2 trade places across square classes") {
  const int q = 5;
  const auto t = tables_for(q);
  const int nonsquare = t->field->delta().value();
  for (int eta = 0; eta < q - 1; ++eta) {
    const std::string e = "eta(" + std::to_string(eta) + ")*";
    for (auto [a, b] : {std::pair<const char*, const char*>{"tau1", "tau2"}, {"tau1'", "tau2'"}}) {
      const Prediction pa = predicted_klingen(*t, t->l.find(e + a), 1);
      const Prediction pb = predicted_klingen(*t, t->l.find(e + b), nonsquare);
      CHECK(pa.summands == pb.summands);
      CHECK(std::lround(pa.chi.degree().real()) == std::lround(pb.chi.degree().real()));
    }
  }
}

TEST_CASE("cuspidal Siegel data give the contragredient restricted to O2") {
  for (int q : {3, 5, 7}) {
    const auto t = tables_for(q);
    const JacquetEngine engine(t, Parabolic::siegel, PsiSpec::rank_one(*t->field, 1));
    for (std::size_t r = 0; r < t->gl2.size(); ++r) {
      if (!t->gl2.rows[r].label.cuspidal) continue;
      const ClassFunction dual = restrict_to(t->gl2.rows[r].character.conj(), t->o2.classes);
      CHECK(engine.compute(r).chi.max_abs_diff(dual) < 1e-9);
    }
  }
}

TEST_CASE("compute_raw is linear in the inducing character") {
  const auto t = tables_for(5);
  const JacquetEngine engine(t, Parabolic::klingen, PsiSpec::rank_one(*t->field, 2));
  const ClassFunction a = t->l.rows[3].character, b = t->l.rows[11].character;
  const ClassFunction lhs = engine.compute_raw(a + b.scaled(2.0));
  const ClassFunction rhs = engine.compute(3).chi + engine.compute(11).chi.scaled(2.0);
  CHECK(lhs.max_abs_diff(rhs) < 1e-9);
  CHECK_THROWS_AS(decompose(engine.compute_raw(a.scaled(0.5)), t->o2), IntegralityError);
}
