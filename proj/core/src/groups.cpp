#include "sp4tj/groups.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace sp4tj {

using Visit = std::function<void(const Mat&)>;

// ------------------------------------------------------------ symplectic basics

Mat form_J(int q) {
  return Mat(4, q, {0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, -1, 0, 0});
}

bool is_symplectic(const Mat& g) {
  if (g.n() != 4) return false;
  const Mat j = form_J(g.q());
  return g.transpose() * j * g == j;
}

Mat symplectic_inverse(const Mat& g) {
  const Mat j = form_J(g.q());
  return -(j * g.transpose() * j);
}

FieldElem symplectic_form(const std::array<FieldElem, 4>& u, const std::array<FieldElem, 4>& v) {
  return u[0] * v[2] + u[1] * v[3] - u[2] * v[0] - u[3] * v[1];
}

Mat embed_beta(const Mat& g) {
  if (g.n() != 2) throw std::invalid_argument("beta expects a 2x2 matrix");
  const int q = g.q();
  return Mat::from_blocks(g, Mat(2, q), Mat(2, q), g.inverse().transpose());
}

Mat embed_alpha(FieldElem t, const Mat& a) {
  if (a.n() != 2) throw std::invalid_argument("alpha expects a 2x2 matrix");
  if (a.det().value() != 1) throw std::invalid_argument("alpha expects A in SL2");
  const FieldElem ti = t.inv();
  const int q = a.q();
  Mat r(4, q);
  r.set(0, 0, t);
  r.set(1, 1, a.at(0, 0));
  r.set(1, 3, a.at(0, 1));
  r.set(2, 2, ti);
  r.set(3, 1, a.at(1, 0));
  r.set(3, 3, a.at(1, 1));
  return r;
}

Mat n_of(const Mat& x) {
  if (x.n() != 2 || !x.is_symmetric()) throw std::invalid_argument("n_of expects a symmetric 2x2");
  const int q = x.q();
  return Mat::from_blocks(Mat::identity(2, q), x, Mat(2, q), Mat::identity(2, q));
}

Mat u_of(FieldElem x, FieldElem y, FieldElem z) {
  const int q = x.modulus();
  return Mat(4, q,
             {1, x.value(), y.value(), z.value(), 0, 1, z.value(), 0, 0, 0, 1, 0, 0, 0,
              -x.value(), 1});
}

const char* to_string(Parabolic p) { return p == Parabolic::siegel ? "siegel" : "klingen"; }

Mat LeviPart::embedded() const {
  return parabolic == Parabolic::siegel ? embed_beta(g) : embed_alpha(t, g);
}

bool in_siegel(const Mat& g) {
  if (g.n() != 4) return false;
  for (int i = 2; i < 4; ++i)
    for (int j = 0; j < 2; ++j)
      if (g.at(i, j) != 0) return false;
  return is_symplectic(g);
}

bool in_klingen(const Mat& g) {
  if (g.n() != 4) return false;
  for (int i = 1; i < 4; ++i)
    if (g.at(i, 0) != 0) return false;
  return is_symplectic(g);
}

LeviPart levi_part(const Mat& p, Parabolic parabolic) {
  const int q = p.q();
  if (parabolic == Parabolic::siegel) {
    if (!in_siegel(p)) throw std::invalid_argument("element not in the Siegel parabolic");
    return {parabolic, p.block(0, 0), FieldElem(1, q)};
  }
  if (!in_klingen(p)) throw std::invalid_argument("element not in the Klingen parabolic");
  return {parabolic, Mat(2, q, {p.at(1, 1), p.at(1, 3), p.at(3, 1), p.at(3, 3)}), p(0, 0)};
}

// --------------------------------------------------------------- named elements

Mat sigma(int j, int q) {
  switch (j) {
    case 0: return Mat::identity(4, q);
    case 1: return Mat(4, q, {0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1});
    case 2: return Mat(4, q, {0, 0, -1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, 0});
    default: throw std::invalid_argument("sigma index must be 0, 1 or 2");
  }
}

Mat h_elem(int j, int q) {
  if (j == 0) return Mat::identity(2, q);
  if (j == 1) return Mat(2, q, {0, 1, 1, 0});
  throw std::invalid_argument("h index must be 0 or 1");
}

Mat tau1(int q) { return embed_beta(h_elem(1, q)); }

Mat klingen_weyl(int j, int q) {
  if (j != 0 && j != 1) throw std::invalid_argument("Klingen Weyl index must be 0 or 1");
  return sigma(j, q);
}

Mat unipotent_upper(FieldElem x) { return Mat(2, x.modulus(), {1, x.value(), 0, 1}); }
Mat unipotent_lower(FieldElem x) { return Mat(2, x.modulus(), {1, 0, x.value(), 1}); }

// --------------------------------------------------------------- subgroup models

namespace {

void for_each_2x2(int q, const std::function<bool(const Mat&)>& keep, const Visit& f) {
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) {
          Mat m(2, q, {a, b, c, d});
          if (keep(m)) f(m);
        }
}

void for_each_sym(int q, const std::function<bool(int, int, int)>& keep, const Visit& f) {
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z)
        if (keep(x, y, z)) f(Mat(2, q, {x, y, y, z}));
}

bool all_sym(int, int, int) { return true; }

bool is_unit_matrix(const Mat& g) { return !g.det().is_zero(); }

/// g^T C g == C for C = diag(gamma, 0).
bool preserves_form(const Mat& g, int gamma) {
  const int q = g.q();
  const Mat c = Mat::diag(q, {gamma, 0});
  return is_unit_matrix(g) && g.transpose() * c * g == c;
}

bool is_lower(const Mat& g) { return g.at(0, 1) == 0; }
bool is_upper(const Mat& g) { return g.at(1, 0) == 0; }
bool is_diagonal(const Mat& g) { return is_lower(g) && is_upper(g); }

bool in_n(const Mat& g) {
  if (!in_siegel(g)) return false;
  return g.block(0, 0).is_identity() && g.block(2, 2).is_identity();
}

bool in_m(const Mat& g) {
  if (!in_siegel(g)) return false;
  const Mat b = g.block(0, 2);
  return b == Mat(2, g.q());
}

/// For p in P, the symmetric S with p = beta(g) n(S).
Mat siegel_s(const Mat& p) { return p.block(0, 0).inverse() * p.block(0, 2); }

bool in_l(const Mat& g) {
  if (!in_klingen(g)) return false;
  static constexpr bool allowed[4][4] = {
      {true, false, false, false},
      {false, true, false, true},
      {false, false, true, false},
      {false, true, false, true}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!allowed[i][j] && g.at(i, j) != 0) return false;
  return true;
}

bool in_u(const Mat& g) {
  if (!in_klingen(g)) return false;
  const LeviPart l = levi_part(g, Parabolic::klingen);
  return l.t.value() == 1 && l.g.is_identity();
}

std::uint64_t gl2_order(std::uint64_t q) { return (q * q - 1) * (q * q - q); }
std::uint64_t sl2_order(std::uint64_t q) { return q * (q * q - 1); }

}  // namespace

std::uint64_t sp4_order(int qi) {
  const std::uint64_t q = static_cast<std::uint64_t>(qi);
  return q * q * q * q * (q * q - 1) * (q * q * q * q - 1);
}

const std::vector<std::string>& subgroup_catalog() {
  static const std::vector<std::string> names = {
      "Sp4", "P",  "M",  "N",  "Q",  "L",  "U",  "Spsi", "Mpsi", "O2C", "T2C", "B",   "Bbar",
      "N11", "N11bar", "N0", "N1", "N2", "N3", "N4", "M1", "M2",  "M3",  "D0",  "D1", "H1",
      "GL2", "SL2"};
  return names;
}

SubgroupModel subgroup_model(const std::string& name, const FieldPtr& field,
                             const SubgroupParams& params) {
  const int q = field->q();
  const std::uint64_t uq = static_cast<std::uint64_t>(q);
  const int gamma = params.gamma;
  if (gamma % q == 0) throw std::invalid_argument("gamma must be a unit");
  const FieldElem nu = field->generator();
  const FieldElem one = (*field)(1), zero = (*field)(0);
  const Mat i2 = Mat::identity(2, q);

  SubgroupModel m;
  m.name = name;
  m.q = q;

  auto two = [&](std::uint64_t order, std::function<bool(const Mat&)> pred, std::vector<Mat> gens) {
    m.n = 2;
    m.order = order;
    m.contains = [pred, q](const Mat& g) { return g.n() == 2 && g.q() == q && pred(g); };
    m.for_each = [pred, q](const Visit& f) { for_each_2x2(q, pred, f); };
    m.generators = std::move(gens);
  };
  const std::vector<Mat> gl2_gens = {Mat::diag(q, {nu.value(), 1}), unipotent_upper(one),
                                     unipotent_lower(one)};
  const std::vector<Mat> sl2_gens = {unipotent_upper(one), unipotent_lower(one)};
  const std::vector<Mat> o2_gens = {Mat::diag(q, {-1, 1}), Mat::diag(q, {1, nu.value()}),
                                    unipotent_lower(one)};

  if (name == "GL2") {
    two(gl2_order(uq), is_unit_matrix, gl2_gens);
  } else if (name == "SL2") {
    two(sl2_order(uq), [](const Mat& g) { return g.det().value() == 1; }, sl2_gens);
  } else if (name == "B") {
    two((uq - 1) * (uq - 1) * uq, [](const Mat& g) { return is_upper(g) && is_unit_matrix(g); },
        {Mat::diag(q, {nu.value(), 1}), Mat::diag(q, {1, nu.value()}), unipotent_upper(one)});
  } else if (name == "Bbar") {
    two((uq - 1) * (uq - 1) * uq, [](const Mat& g) { return is_lower(g) && is_unit_matrix(g); },
        {Mat::diag(q, {nu.value(), 1}), Mat::diag(q, {1, nu.value()}), unipotent_lower(one)});
  } else if (name == "N11") {
    two(uq, [](const Mat& g) { return g.at(0, 0) == 1 && g.at(1, 0) == 0 && g.at(1, 1) == 1; },
        {unipotent_upper(one)});
  } else if (name == "N11bar") {
    two(uq, [](const Mat& g) { return g.at(0, 0) == 1 && g.at(0, 1) == 0 && g.at(1, 1) == 1; },
        {unipotent_lower(one)});
  } else if (name == "O2C") {
    two(2 * uq * (uq - 1), [gamma](const Mat& g) { return preserves_form(g, gamma); }, o2_gens);
  } else if (name == "T2C") {
    two(2 * (uq - 1),
        [gamma](const Mat& g) { return is_diagonal(g) && preserves_form(g, gamma); },
        {Mat::diag(q, {-1, 1}), Mat::diag(q, {1, nu.value()})});
  } else {
    // Four-dimensional subgroups.
    m.n = 4;
    auto beta_all = [](const std::vector<Mat>& gs) {
      std::vector<Mat> out;
      for (const Mat& g : gs) out.push_back(embed_beta(g));
      return out;
    };
    auto cat = [](std::vector<Mat> a, const std::vector<Mat>& b) {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    };
    const std::vector<Mat> n_gens = {n_of(Mat(2, q, {1, 0, 0, 0})), n_of(Mat(2, q, {0, 1, 1, 0})),
                                     n_of(Mat(2, q, {0, 0, 0, 1}))};
    std::vector<Mat> l_gens = {embed_alpha(nu, i2)};
    for (const Mat& a : sl2_gens) l_gens.push_back(embed_alpha(one, a));
    const std::vector<Mat> u_gens = {u_of(one, zero, zero), u_of(zero, one, zero),
                                     u_of(zero, zero, one)};

    // beta(g) n(S) over g in a 2x2 family and S in a symmetric pattern.
    auto levi_times_n = [q](std::function<bool(const Mat&)> gpred,
                            std::function<bool(int, int, int)> spred) {
      return [q, gpred, spred](const Visit& f) {
        for_each_2x2(q, gpred, [&](const Mat& g) {
          const Mat b = embed_beta(g);
          for_each_sym(q, spred, [&](const Mat& s) { f(b * n_of(s)); });
        });
      };
    };
    auto pattern_of = [](std::function<bool(int, int, int)> spred) {
      return [spred](const Mat& g) {
        const Mat s = siegel_s(g);
        return spred(s.at(0, 0), s.at(0, 1), s.at(1, 1));
      };
    };

    std::function<bool(const Mat&)> contains;
    if (name == "Sp4") {
      m.order = sp4_order(q);
      contains = is_symplectic;
      m.generators = cat(cat(beta_all(gl2_gens), n_gens), {form_J(q)});
      const bool allowed = params.oracle_mode && q == 3;
      const auto gens = m.generators;
      m.for_each = [allowed, gens](const Visit& f) {
        if (!allowed) throw std::invalid_argument("enumerating Sp4 requires oracle mode at q = 3");
        const GroupSet all = closure("Sp4", gens);
        for (const Mat& g : all.elements()) f(g);
      };
    } else if (name == "P") {
      m.order = gl2_order(uq) * uq * uq * uq;
      contains = in_siegel;
      m.for_each = levi_times_n(is_unit_matrix, all_sym);
      m.generators = cat(beta_all(gl2_gens), n_gens);
    } else if (name == "M") {
      m.order = gl2_order(uq);
      contains = in_m;
      m.for_each = levi_times_n(is_unit_matrix, [](int x, int y, int z) { return !x && !y && !z; });
      m.generators = beta_all(gl2_gens);
    } else if (name == "N" || (name.size() == 2 && name[0] == 'N' && name[1] >= '0' && name[1] <= '4')) {
      std::function<bool(int, int, int)> spred = all_sym;
      std::uint64_t order = uq * uq * uq;
      std::vector<Mat> gens = n_gens;
      if (name == "N0") {
        spred = [](int x, int y, int) { return !x && !y; };
        order = uq;
        gens = {n_gens[2]};
      } else if (name == "N1") {
        spred = [](int x, int, int) { return !x; };
        order = uq * uq;
        gens = {n_gens[1], n_gens[2]};
      } else if (name == "N2") {
        spred = [](int, int y, int z) { return !y && !z; };
        order = uq;
        gens = {n_gens[0]};
      } else if (name == "N3") {
        spred = [](int, int, int z) { return !z; };
        order = uq * uq;
        gens = {n_gens[0], n_gens[1]};
      } else if (name == "N4") {
        spred = [](int x, int, int z) { return !x && !z; };
        order = uq;
        gens = {n_gens[1]};
      }
      m.order = order;
      const auto pat = pattern_of(spred);
      contains = [pat](const Mat& g) { return in_n(g) && pat(g); };
      m.for_each = levi_times_n([](const Mat& g) { return g.is_identity(); }, spred);
      m.generators = gens;
    } else if (name == "Q" || name == "L" || name == "U") {
      const bool with_levi = name != "U", with_u = name != "L";
      m.order = (with_levi ? (uq - 1) * sl2_order(uq) : 1) * (with_u ? uq * uq * uq : 1);
      contains = name == "Q" ? std::function<bool(const Mat&)>(in_klingen)
                 : name == "L" ? std::function<bool(const Mat&)>(in_l)
                               : std::function<bool(const Mat&)>(in_u);
      m.for_each = [q, with_levi, with_u](const Visit& f) {
        std::vector<Mat> levis, us;
        if (with_levi) {
          for (int t = 1; t < q; ++t)
            for_each_2x2(q, [](const Mat& a) { return a.det().value() == 1; },
                         [&](const Mat& a) { levis.push_back(embed_alpha(FieldElem(t, q), a)); });
        } else {
          levis.push_back(Mat::identity(4, q));
        }
        if (with_u) {
          for (int x = 0; x < q; ++x)
            for (int y = 0; y < q; ++y)
              for (int z = 0; z < q; ++z)
                us.push_back(u_of(FieldElem(x, q), FieldElem(y, q), FieldElem(z, q)));
        } else {
          us.push_back(Mat::identity(4, q));
        }
        for (const Mat& l : levis)
          for (const Mat& u : us) f(l * u);
      };
      m.generators = with_levi && with_u ? cat(l_gens, u_gens) : with_levi ? l_gens : u_gens;
    } else if (name == "Spsi" || name == "Mpsi") {
      const bool with_n = name == "Spsi";
      m.order = 2 * uq * (uq - 1) * (with_n ? uq * uq * uq : 1);
      auto form = [gamma](const Mat& g) { return preserves_form(g, gamma); };
      contains = [form, with_n](const Mat& g) {
        return (with_n ? in_siegel(g) : in_m(g)) && form(g.block(0, 0));
      };
      m.for_each = levi_times_n(form, [with_n](int x, int y, int z) { return with_n || (!x && !y && !z); });
      m.generators = with_n ? cat(beta_all(o2_gens), n_gens) : beta_all(o2_gens);
    } else if (name == "M1") {
      m.order = uq;
      contains = [](const Mat& g) {
        if (!in_m(g)) return false;
        const Mat b = g.block(0, 0);
        return b.at(0, 0) == 1 && b.at(0, 1) == 0 && b.at(1, 1) == 1;
      };
      m.for_each = levi_times_n(
          [](const Mat& g) { return g.at(0, 0) == 1 && g.at(0, 1) == 0 && g.at(1, 1) == 1; },
          [](int x, int y, int z) { return !x && !y && !z; });
      m.generators = {embed_beta(unipotent_lower(one))};
    } else if (name == "M2" || name == "M3") {
      const int fixed = name == "M2" ? 0 : 1;
      m.order = 2 * (uq - 1);
      auto gpred = [fixed](const Mat& g) {
        if (!is_diagonal(g) || !is_unit_matrix(g)) return false;
        const int v = g.at(fixed, fixed);
        return v == 1 || v == g.q() - 1;
      };
      contains = [gpred](const Mat& g) { return in_m(g) && gpred(g.block(0, 0)); };
      m.for_each = levi_times_n(gpred, [](int x, int y, int z) { return !x && !y && !z; });
      m.generators = fixed == 0
                         ? std::vector<Mat>{embed_beta(Mat::diag(q, {-1, 1})),
                                            embed_beta(Mat::diag(q, {1, nu.value()}))}
                         : std::vector<Mat>{embed_beta(Mat::diag(q, {1, -1})),
                                            embed_beta(Mat::diag(q, {nu.value(), 1}))};
    } else if (name == "D0") {
      m.order = (uq - 1) * (uq - 1) * uq * uq * uq * uq;
      contains = [](const Mat& g) { return in_siegel(g) && in_klingen(g); };
      m.for_each = levi_times_n([](const Mat& g) { return is_upper(g) && is_unit_matrix(g); }, all_sym);
      m.generators = cat(beta_all({Mat::diag(q, {nu.value(), 1}), Mat::diag(q, {1, nu.value()}),
                                   unipotent_upper(one)}),
                         n_gens);
    } else if (name == "D1" || name == "H1") {
      const bool d1 = name == "D1";
      m.order = (uq - 1) * (uq - 1) * uq * (d1 ? uq : uq * uq);
      std::function<bool(int, int, int)> spred =
          d1 ? std::function<bool(int, int, int)>([](int x, int y, int) { return !x && !y; })
             : std::function<bool(int, int, int)>([](int x, int, int) { return !x; });
      const auto pat = pattern_of(spred);
      contains = [pat](const Mat& g) { return in_siegel(g) && is_lower(g.block(0, 0)) && pat(g); };
      m.for_each = levi_times_n([](const Mat& g) { return is_lower(g) && is_unit_matrix(g); }, spred);
      const auto bbar = beta_all({Mat::diag(q, {nu.value(), 1}), Mat::diag(q, {1, nu.value()}),
                                  unipotent_lower(one)});
      m.generators = d1 ? cat(bbar, {n_gens[2]}) : cat(bbar, {n_gens[1], n_gens[2]});
    } else {
      throw std::invalid_argument("unknown subgroup name: " + name);
    }
    m.contains = [contains, q](const Mat& g) { return g.n() == 4 && g.q() == q && contains(g); };
  }
  return m;
}

SubgroupModel conjugate(const SubgroupModel& h, const Mat& w) {
  SubgroupModel c = h;
  const Mat wi = w.inverse();
  c.name = "w(" + h.name + ")";
  const auto contains = h.contains;
  c.contains = [contains, w, wi](const Mat& g) { return contains(wi * g * w); };
  const auto for_each = h.for_each;
  c.for_each = [for_each, w, wi](const Visit& f) { for_each([&](const Mat& g) { f(w * g * wi); }); };
  for (Mat& g : c.generators) g = w * g * wi;
  return c;
}

// ------------------------------------------------------------------ GroupSet

GroupSet::GroupSet(std::string name, std::vector<Mat> elements, std::vector<Mat> generators)
    : name_(std::move(name)), elements_(std::move(elements)), generators_(std::move(generators)) {
  if (elements_.empty()) throw std::invalid_argument("empty group");
  std::sort(elements_.begin(), elements_.end());
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(elements_[i].key(), static_cast<std::uint32_t>(i)).second)
      throw std::invalid_argument("duplicate element in group " + name_);
  }
}

std::optional<std::size_t> GroupSet::index_of(const Mat& g) const {
  if (g.n() != n() || g.q() != q()) return std::nullopt;
  auto it = index_.find(g.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GroupSet enumerate(const SubgroupModel& model) {
  std::vector<Mat> elems;
  elems.reserve(model.order);
  model.for_each([&](const Mat& g) { elems.push_back(g); });
  if (elems.size() != model.order)
    throw std::logic_error("parametrization of " + model.name + " has the wrong size");
  return GroupSet(model.name, std::move(elems), model.generators);
}

GroupSet named_subgroup(const std::string& name, const FieldPtr& field, const SubgroupParams& params) {
  if (name == "Sp4") {
    if (!params.oracle_mode || field->q() != 3)
      throw std::invalid_argument("enumerating Sp4 requires oracle mode at q = 3");
    const SubgroupModel m = subgroup_model(name, field, params);
    return closure("Sp4", m.generators);
  }
  return enumerate(subgroup_model(name, field, params));
}

GroupSet closure(const std::string& name, const std::vector<Mat>& generators, std::size_t limit) {
  if (generators.empty()) throw std::invalid_argument("closure needs at least one generator");
  const Mat id = Mat::identity(generators.front().n(), generators.front().q());
  std::unordered_set<std::uint64_t> seen{id.key()};
  std::vector<Mat> elems{id};
  std::deque<Mat> queue{id};
  while (!queue.empty()) {
    const Mat x = queue.front();
    queue.pop_front();
    for (const Mat& s : generators) {
      Mat y = x * s;
      if (seen.insert(y.key()).second) {
        if (elems.size() >= limit) throw std::length_error("closure exceeded size limit");
        elems.push_back(y);
        queue.push_back(std::move(y));
      }
    }
  }
  return GroupSet(name, std::move(elems), generators);
}

}  // namespace sp4tj
