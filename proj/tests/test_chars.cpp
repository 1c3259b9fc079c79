#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "sp4tj/chars.hpp"
#include "sp4tj/tables.hpp"

using namespace sp4tj;

namespace {

/// Conjugacy classes by conjugating with every element.
std::size_t brute_class_count(const GroupSet& g) {
  std::set<std::uint64_t> seen;
  std::size_t classes = 0;
  for (const Mat& x : g.elements()) {
    if (seen.count(x.key())) continue;
    ++classes;
    for (const Mat& y : g.elements()) seen.insert((y * x * y.inverse()).key());
  }
  return classes;
}

/// (1/|H|) sum over x in G with x^-1 g x in H of f(x^-1 g x).
Complex brute_induce(const GroupSet& g, const GroupSet& h, const std::function<Complex(const Mat&)>& f, const Mat& at) {
  Complex s = 0;
  for (const Mat& x : g.elements()) {
    const Mat y = x.inverse() * at * x;
    if (h.contains(y)) s += f(y);
  }
  return s / double(h.size());
}

std::map<IrrFamily, int> family_counts(const IrrTable& t) {
  std::map<IrrFamily, int> m;
  for (const IrrRow& r : t.rows) ++m[r.label.family];
  return m;
}

double degree(const IrrRow& r) { return r.character.degree().real(); }

}  // namespace

TEST_CASE("class counts against full conjugation") {
  for (int q : {3, 5}) {
    const auto f = Field::make(q);
    const auto t = tables_for(q);
    CHECK(t->gl2.classes->count() == std::size_t(q * q - 1));
    CHECK(t->sl2.classes->count() == std::size_t(q + 4));
    CHECK(brute_class_count(named_subgroup("GL2", f)) == t->gl2.classes->count());
    CHECK(brute_class_count(named_subgroup("SL2", f)) == t->sl2.classes->count());
    CHECK(brute_class_count(named_subgroup("O2C", f)) == t->o2.classes->count());
    CHECK(t->l.classes->count() == std::size_t((q - 1) * (q + 4)));
  }
  const auto t3 = tables_for(3);
  CHECK(t3->gl2.classes->count() == 8);
  CHECK(t3->sl2.classes->count() == 7);
}

TEST_CASE("class data is consistent") {
  const auto t = tables_for(5);
  for (const IrrTable* table : {&t->gl2, &t->sl2, &t->o2, &t->t2, &t->l}) {
    const ClassData& c = *table->classes;
    std::uint64_t total = 0;
    for (auto s : c.sizes) total += s;
    CHECK(total == c.order());
    CHECK(c.reps[c.identity_class].is_identity());
    for (std::size_t i = 0; i < c.count(); ++i) CHECK(c.class_of_elem(c.reps[i]) == i);
  }
  CHECK_THROWS_AS(t->sl2.classes->class_of_elem(Mat::diag(5, {2, 1})), std::invalid_argument);
}

TEST_CASE("orthogonality of all tables") {
  for (int q : {3, 5, 7}) {
    const auto t = tables_for(q);
    for (const IrrTable* table : {&t->gl2, &t->sl2, &t->o2, &t->t2, &t->l}) {
      CAPTURE(table->group_name);
      CAPTURE(q);
      const OrthogonalityResult r = verify_orthogonality(*table);
      CHECK(r.ok);
      CHECK(r.degrees_integral);
      CHECK(r.degree_square_sum == table->classes->order());
      CHECK(table->size() == table->classes->count());
    }
  }
}

TEST_CASE("family counts and degrees") {
  for (int q : {3, 5, 7, 11}) {
    const auto t = tables_for(q);
    auto g = family_counts(t->gl2);
    CHECK(g[IrrFamily::gl2_linear] == q - 1);
    CHECK(g[IrrFamily::gl2_steinberg] == q - 1);
    CHECK(g[IrrFamily::gl2_principal] == (q - 1) * (q - 2) / 2);
    CHECK(g[IrrFamily::gl2_cuspidal] == q * (q - 1) / 2);
    auto s = family_counts(t->sl2);
    CHECK(s[IrrFamily::sl2_principal] == (q - 3) / 2);
    CHECK(s[IrrFamily::sl2_cuspidal] == (q - 1) / 2);
    auto o = family_counts(t->o2);
    CHECK(o[IrrFamily::o2_linear] == 2 * (q - 1));
    CHECK(o[IrrFamily::o2_induced] == 2);
    const std::map<IrrFamily, double> dims = {
        {IrrFamily::gl2_linear, 1},         {IrrFamily::gl2_steinberg, q},
        {IrrFamily::gl2_principal, q + 1},  {IrrFamily::gl2_cuspidal, q - 1},
        {IrrFamily::sl2_trivial, 1},        {IrrFamily::sl2_steinberg, q},
        {IrrFamily::sl2_principal, q + 1},  {IrrFamily::sl2_cuspidal, q - 1},
        {IrrFamily::sl2_tau1, (q + 1) / 2}, {IrrFamily::sl2_tau2, (q + 1) / 2},
        {IrrFamily::sl2_tau1p, (q - 1) / 2}, {IrrFamily::sl2_tau2p, (q - 1) / 2},
        {IrrFamily::o2_linear, 1},          {IrrFamily::o2_induced, q - 1}};
    for (const IrrTable* table : {&t->gl2, &t->sl2, &t->o2})
      for (const IrrRow& r : table->rows) CHECK(std::abs(degree(r) - dims.at(r.label.family)) < 1e-9);
    CHECK(t->sl2.rows[t->sl2.find("triv")].label.family == IrrFamily::sl2_trivial);
    CHECK_THROWS_AS(t->sl2.find("nope"), std::out_of_range);
  }
}

TEST_CASE("|chi(g)| <= chi(1)") {
  const auto t = tables_for(7);
  for (const IrrTable* table : {&t->gl2, &t->sl2, &t->o2, &t->l})
    for (const IrrRow& r : table->rows)
      for (Complex v : r.character.values()) CHECK(std::abs(v) <= degree(r) + 1e-9);
}

TEST_CASE("Ind from the upper Borel of SL2 is trivial plus Steinberg") {
  for (int q : {3, 5, 7}) {
    const auto f = Field::make(q);
    const auto t = tables_for(q);
    const GroupSet& sl2 = *t->sl2.classes->group;
    std::vector<Mat> b;
    for (const Mat& g : sl2.elements())
      if (g.at(1, 0) == 0) b.push_back(g);
    auto bset = std::make_shared<const GroupSet>("B1", b);
    auto bcd = conjugacy_classes(bset);
    const ClassFunction one = tabulate(bcd, [](const Mat&) { return Complex(1.0); });
    const ClassFunction ind = induce(one, t->sl2.classes, left_transversal(sl2, *bset));
    const auto mult = decompose(ind, t->sl2);
    for (std::size_t i = 0; i < mult.size(); ++i) {
      const auto fam = t->sl2.rows[i].label.family;
      CHECK(mult[i] == ((fam == IrrFamily::sl2_trivial || fam == IrrFamily::sl2_steinberg) ? 1 : 0));
    }
    // Frobenius reciprocity for every row.
    for (const IrrRow& r : t->sl2.rows)
      CHECK(std::abs(inner_product(ind, r.character) - inner_product(one, restrict_to(r.character, bcd))) < 1e-9);
  }
}

TEST_CASE("induced O2 rows agree with brute-force induction") {
  for (int q : {3, 5}) {
    const auto f = Field::make(q);
    const auto t = tables_for(q);
    const GroupSet& o2 = *t->o2.classes->group;
    std::vector<Mat> h;
    for (int a : {1, q - 1})
      for (int y = 0; y < q; ++y) h.push_back(Mat(2, q, {a, 0, y, a}));
    const GroupSet hs("H", h);
    for (int e = 0; e < 2; ++e) {
      const IrrRow& row = t->o2.rows[t->o2.find("ind(" + std::to_string(e) + ")")];
      auto lambda = [&](const Mat& x) {
        const double s = (e == 1 && x.at(0, 0) == q - 1) ? -1.0 : 1.0;
        return s * psi0(x(1, 0) * x(0, 0));
      };
      for (const Mat& g : t->o2.classes->reps) CHECK(std::abs(row.character.at(g) - brute_induce(o2, hs, lambda, g)) < 1e-9);
    }
  }
}

TEST_CASE("restriction and inflation") {
  const int q = 5;
  const auto t = tables_for(q);
  for (const IrrRow& r : t->gl2.rows) {
    const ClassFunction res = restrict_to(r.character, t->sl2.classes);
    const auto mult = decompose(res, t->sl2);
    long total = 0;
    for (std::size_t i = 0; i < mult.size(); ++i) total += mult[i] * long(std::lround(degree(t->sl2.rows[i])));
    CHECK(total == std::lround(degree(r)));
    if (r.label.family == IrrFamily::gl2_linear) CHECK(mult[t->sl2.find("triv")] == 1);
    if (r.label.family == IrrFamily::gl2_steinberg) CHECK(mult[t->sl2.find("st")] == 1);
  }
  for (const IrrRow& r : t->t2.rows) {
    const ClassFunction inf = inflate(r.character, t->o2.classes, o2_to_t2);
    const std::string name = "lin(" + std::to_string(r.label.params[0]) + "," + std::to_string(r.label.params[1]) + ")";
    CHECK(inf.max_abs_diff(t->o2.rows[t->o2.find(name)].character) < 1e-12);
  }
  const ClassFunction& x = t->gl2.rows.back().character;
  CHECK(x.conj().conj().max_abs_diff(x) < 1e-12);
  CHECK(std::abs(inner_product(x * x.conj(), t->gl2.rows.front().character) - 1.0) < 1e-9);
  CHECK((x + x - x.scaled(2.0)).max_abs_diff(zero_function(t->gl2.classes)) < 1e-12);
}

TEST_CASE("decompose and compose") {
  const auto t = tables_for(5);
  std::vector<long> m(t->o2.size(), 0);
  m[0] = 2;
  m.back() = 1;
  const ClassFunction f = compose(m, t->o2);
  CHECK(decompose(f, t->o2) == m);
  CHECK_THROWS_AS(decompose(f.scaled(0.5), t->o2), IntegralityError);
  CHECK_THROWS_AS(decompose(f.scaled(-1.0), t->o2), IntegralityError);
  CHECK_THROWS(f + t->gl2.rows[0].character);
}

TEST_CASE("orthogonality catches a bad table") {
  const auto t = tables_for(3);
  IrrTable bad = t->sl2;
  bad.rows[1] = bad.rows[0];
  CHECK_FALSE(verify_orthogonality(bad).ok);
  IrrTable short_table = t->o2;
  short_table.rows.pop_back();
  CHECK_FALSE(verify_orthogonality(short_table).ok);
}

TEST_CASE("csv output") {
  const auto t = tables_for(3);
  const std::string csv = to_csv(t->sl2);
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == t->sl2.size() + 1);
  CHECK(lines[0].rfind("label,", 0) == 0);
  CHECK(lines[1].rfind("\"triv\",1.000000000+0.000000000i", 0) == 0);
  for (const auto& l : lines) CHECK(std::count(l.begin(), l.end(), ',') == long(t->sl2.classes->count()));
  CHECK(format_complex(Complex(2.0, -1e-12)) == "2.000000000+0.000000000i");
}
