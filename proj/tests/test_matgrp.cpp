#include <random>
#include <set>

#include "doctest.h"
#include "sp4tj/cosets.hpp"
#include "sp4tj/groups.hpp"
#include "sp4tj/jacquet.hpp"

using namespace sp4tj;

namespace {

std::set<std::uint64_t> keys_of(const GroupSet& g) {
  std::set<std::uint64_t> s;
  for (const Mat& x : g.elements()) s.insert(x.key());
  return s;
}

std::set<std::uint64_t> keys_of(const SubgroupModel& m) {
  std::set<std::uint64_t> s;
  m.for_each([&](const Mat& x) { s.insert(x.key()); });
  return s;
}

}  // namespace

TEST_CASE("is_symplectic examples") {
  CHECK(is_symplectic(Mat::identity(4, 3)));
  CHECK(is_symplectic(form_J(3)));
  CHECK_FALSE(is_symplectic(Mat::diag(3, {1, 1, 1, 2})));
  for (int q : {3, 5, 7}) {
    const Mat g = embed_beta(Mat(2, q, {1, 2, 0, 1})) * n_of(Mat(2, q, {1, 1, 1, 0})) * form_J(q);
    CHECK(is_symplectic(g));
    CHECK(symplectic_inverse(g) * g == Mat::identity(4, q));
  }
}

TEST_CASE("catalog orders at q = 3") {
  const auto f = Field::make(3);
  CHECK(named_subgroup("N", f).size() == 27);
  CHECK(named_subgroup("O2C", f).size() == 12);
  CHECK(named_subgroup("Spsi", f).size() == 324);
  CHECK_THROWS_AS(named_subgroup("Nope", f), std::invalid_argument);
  CHECK_THROWS(named_subgroup("Sp4", f));
}

TEST_CASE("Sp4(F_3) by closure in oracle mode") {
  const auto f = Field::make(3);
  SubgroupParams oracle;
  oracle.oracle_mode = true;
  const GroupSet sp4 = named_subgroup("Sp4", f, oracle);
  CHECK(sp4.size() == 51840);
  CHECK(sp4.size() == sp4_order(3));
  for (const Mat& g : sp4.elements()) REQUIRE(is_symplectic(g));
}

TEST_CASE("parametrized subgroups equal the closure of their generators") {
  for (int q : {3, 5}) {
    const auto f = Field::make(q);
    for (const std::string& name : subgroup_catalog()) {
      if (name == "Sp4") continue;
      CAPTURE(name);
      CAPTURE(q);
      const SubgroupModel m = subgroup_model(name, f);
      const GroupSet g = enumerate(m);
      CHECK(g.size() == m.order);
      CHECK(keys_of(closure(name, m.generators)) == keys_of(g));
      for (const Mat& x : g.elements()) {
        REQUIRE(m.contains(x));
        if (m.n == 4) REQUIRE(is_symplectic(x));
      }
    }
  }
}

TEST_CASE("group axioms") {
  std::mt19937_64 rng(7);
  for (int q : {3, 5}) {
    const auto f = Field::make(q);
    for (const std::string& name : subgroup_catalog()) {
      if (name == "Sp4") continue;
      const GroupSet g = named_subgroup(name, f);
      CAPTURE(name);
      CHECK(g.contains(Mat::identity(g.n(), q)));
      const bool exhaustive = q == 3 && g.size() <= 400;
      std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
      const std::size_t pairs = exhaustive ? g.size() * g.size() : 10'000;
      bool ok = true;
      for (std::size_t k = 0; k < pairs && ok; ++k) {
        const Mat& a = exhaustive ? g[k / g.size()] : g[pick(rng)];
        const Mat& b = exhaustive ? g[k % g.size()] : g[pick(rng)];
        ok = g.contains(a * b) && g.contains(a.inverse());
      }
      CHECK(ok);
    }
  }
}

TEST_CASE("embeddings") {
  for (int q : {3, 5}) {
    const auto f = Field::make(q);
    CHECK(embed_alpha((*f)(1), Mat::identity(2, q)) == Mat::identity(4, q));
    CHECK(embed_beta(Mat::identity(2, q)) == Mat::identity(4, q));
    CHECK_THROWS(embed_alpha((*f)(1), Mat::diag(q, {2, 1})));
    const SubgroupModel n0 = subgroup_model("N0", f), m1 = subgroup_model("M1", f);
    for (FieldElem x : f->elements()) {
      CHECK(n0.contains(embed_alpha((*f)(1), unipotent_upper(x))));
      CHECK(m1.contains(embed_beta(unipotent_lower(x))));
    }
    const GroupSet sl2 = named_subgroup("SL2", f);
    std::mt19937_64 rng(q);
    std::uniform_int_distribution<std::size_t> pick(0, sl2.size() - 1);
    for (int i = 0; i < 200; ++i) {
      const FieldElem t = f->units()[i % (q - 1)], s = f->units()[(3 * i) % (q - 1)];
      const Mat& a = sl2[pick(rng)];
      const Mat& b = sl2[pick(rng)];
      CHECK(embed_alpha(t, a) * embed_alpha(s, b) == embed_alpha(t * s, a * b));
      CHECK(is_symplectic(embed_alpha(t, a)));
      CHECK(embed_beta(a) * embed_beta(b) == embed_beta(a * b));
    }
    // beta(O2(C)) = M_psi as sets.
    std::set<std::uint64_t> image;
    const GroupSet o2 = named_subgroup("O2C", f);
    for (const Mat& g : o2.elements()) image.insert(embed_beta(g).key());
    CHECK(image == keys_of(named_subgroup("Mpsi", f)));
  }
}

TEST_CASE("Levi factorization reassembles") {
  const auto f = Field::make(3);
  const GroupSet qgrp = named_subgroup("Q", f), pgrp = named_subgroup("P", f);
  for (const Mat& p : qgrp.elements()) {
    const LeviPart lp = levi_part(p, Parabolic::klingen);
    const Mat u = symplectic_inverse(lp.embedded()) * p;
    REQUIRE(subgroup_model("U", f).contains(u));
    REQUIRE(lp.embedded() * u == p);
  }
  for (const Mat& p : pgrp.elements()) {
    const LeviPart lp = levi_part(p, Parabolic::siegel);
    const Mat n = symplectic_inverse(embed_beta(lp.g)) * p;
    REQUIRE(subgroup_model("N", f).contains(n));
  }
  CHECK(levi_part(n_of(Mat(2, 3, {1, 2, 2, 0})), Parabolic::siegel).g.is_identity());
  CHECK_THROWS(levi_part(form_J(3), Parabolic::siegel));
  CHECK_THROWS(levi_part(form_J(3), Parabolic::klingen));
}

TEST_CASE("S_psi = M_psi N with unique factorization") {
  const auto f = Field::make(3);
  const GroupSet spsi = named_subgroup("Spsi", f), mpsi = named_subgroup("Mpsi", f);
  const SubgroupModel n = subgroup_model("N", f);
  for (const Mat& s : spsi.elements()) {
    int count = 0;
    for (const Mat& m : mpsi.elements())
      if (n.contains(symplectic_inverse(m) * s)) ++count;
    REQUIRE(count == 1);
  }
}

TEST_CASE("O2(C) = T2(C) semidirect the lower unipotent group") {
  for (int q : {3, 5}) {
    const auto f = Field::make(q);
    const GroupSet o2 = named_subgroup("O2C", f), t2 = named_subgroup("T2C", f), nbar = named_subgroup("N11bar", f);
    for (const Mat& g : o2.elements()) {
      int count = 0;
      for (const Mat& t : t2.elements())
        if (nbar.contains(t.inverse() * g)) ++count;
      REQUIRE(count == 1);
    }
    for (const Mat& t : t2.elements())
      for (const Mat& x : nbar.elements()) CHECK(nbar.contains(t * x * t.inverse()));
  }
}

TEST_CASE("psi on the N^i and M^2 fixing N^2") {
  for (int q : {3, 5}) {
    const auto f = Field::make(q);
    const PsiSpec psi = PsiSpec::rank_one(*f, 1);
    auto trivial_on = [&](const std::string& name) {
      bool trivial = true;
      subgroup_model(name, f).for_each([&](const Mat& n) { trivial = trivial && std::abs(psi_of(n, psi) - 1.0) < 1e-12; });
      return trivial;
    };
    CHECK_FALSE(trivial_on("N"));
    CHECK_FALSE(trivial_on("N2"));
    CHECK_FALSE(trivial_on("N3"));
    CHECK(trivial_on("N0"));
    CHECK(trivial_on("N1"));
    const GroupSet m2 = named_subgroup("M2", f);
    const GroupSet n2 = named_subgroup("N2", f);
    for (const Mat& m : m2.elements())
      for (const Mat& n : n2.elements()) CHECK(m * n * m.inverse() == n);
    for (const char* name : {"N0", "N1", "N4"}) {
      const GroupSet h = named_subgroup(name, f);
      for (const Mat& m : m2.elements())
        for (const Mat& n : h.elements()) CHECK(h.contains(m * n * m.inverse()));
    }
  }
}

TEST_CASE("S_psi does not depend on gamma") {
  for (int q : {3, 5, 7}) {
    const auto f = Field::make(q);
    const auto base = keys_of(subgroup_model("Spsi", f));
    for (int gamma = 2; gamma < q; ++gamma) {
      SubgroupParams p;
      p.gamma = gamma;
      CHECK(keys_of(subgroup_model("Spsi", f, p)) == base);
    }
  }
}

TEST_CASE("symplectic section") {
  const auto f = Field::make(3);
  for (int k : {1, 2}) {
    CHECK(symplectic_section(standard_isotropic(f, k)) == Mat::identity(4, 3));
    const IsotropicSubspace x0 = standard_isotropic(f, k);
    for (const IsotropicSubspace& x : isotropic_spaces(f, k)) {
      const Mat g = symplectic_section(x);
      REQUIRE(is_symplectic(g));
      REQUIRE(x0.apply(g) == x);
    }
  }
  const IsotropicSubspace dual(4, 3, {Vec{0, 0, 1, 0}, Vec{0, 0, 0, 1}});
  CHECK(standard_isotropic(f, 2).apply(symplectic_section(dual)) == dual);
  CHECK_THROWS(symplectic_section(IsotropicSubspace(4, 3, {Vec{1, 0, 0, 0}, Vec{0, 0, 1, 0}})));
}
