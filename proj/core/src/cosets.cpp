#include "sp4tj/cosets.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace sp4tj {

namespace {

int inv_mod(int a, int q) { return FieldElem(a, q).inv().value(); }

/// In-place reduced row echelon form; returns the rank and drops zero rows.
int rref(std::vector<Vec>& rows, int dim, int q) {
  int r = 0;
  for (int c = 0; c < dim && r < static_cast<int>(rows.size()); ++c) {
    int p = r;
    while (p < static_cast<int>(rows.size()) && rows[p][c] == 0) ++p;
    if (p == static_cast<int>(rows.size())) continue;
    std::swap(rows[p], rows[r]);
    const int inv = inv_mod(rows[r][c], q);
    for (int j = 0; j < dim; ++j) rows[r][j] = static_cast<std::uint8_t>(rows[r][j] * inv % q);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const int f = rows[i][c];
      for (int j = 0; j < dim; ++j)
        rows[i][j] = static_cast<std::uint8_t>(((rows[i][j] - f * rows[r][j]) % q + q) % q);
    }
    ++r;
  }
  rows.resize(static_cast<std::size_t>(r));
  return r;
}

/// u^T J v as an integer in [0, q).
int form(const Vec& u, const Vec& v, int q) {
  const int s = u[0] * v[2] + u[1] * v[3] - u[2] * v[0] - u[3] * v[1];
  return ((s % q) + q) % q;
}

/// Vector number idx with the first coordinate least significant.
Vec decode(long idx, int dim, int q) {
  Vec v{};
  for (int i = 0; i < dim; ++i) {
    v[i] = static_cast<std::uint8_t>(idx % q);
    idx /= q;
  }
  return v;
}

long power(int q, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

Vec first_vector(int q, const std::function<bool(const Vec&)>& pred) {
  const long n = power(q, 4);
  for (long idx = 1; idx < n; ++idx) {
    Vec v = decode(idx, 4, q);
    if (pred(v)) return v;
  }
  throw std::logic_error("no vector satisfies the section constraints");
}

Mat from_columns(const std::vector<Vec>& cols, int q) {
  const int n = static_cast<int>(cols.size());
  Mat m(n, q);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) m.set(r, c, cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]);
  return m;
}

}  // namespace

// ------------------------------------------------------------------ Subspace

int vector_rank(const std::vector<Vec>& rows, int dim, int q) {
  std::vector<Vec> copy = rows;
  return rref(copy, dim, q);
}

Subspace::Subspace(int dim, int q, const std::vector<Vec>& rows) : dim_(dim), k_(0), q_(q), rows_(rows) {
  if (dim != 2 && dim != 4) throw std::invalid_argument("ambient dimension must be 2 or 4");
  for (auto& r : rows_)
    for (int j = 0; j < 4; ++j) {
      if (j >= dim) r[j] = 0;
      r[j] = static_cast<std::uint8_t>(r[j] % q);
    }
  k_ = rref(rows_, dim, q);
  if (k_ != static_cast<int>(rows.size())) throw std::invalid_argument("spanning vectors are dependent");
}

bool Subspace::is_isotropic() const {
  if (dim_ != 4) return false;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = i + 1; j < rows_.size(); ++j)
      if (form(rows_[i], rows_[j], q_) != 0) return false;
  return true;
}

Subspace Subspace::apply(const Mat& g) const {
  if (g.n() != dim_ || g.q() != q_) throw std::invalid_argument("matrix does not act on this space");
  std::vector<Vec> out;
  for (const Vec& b : rows_) {
    Vec v{};
    for (int i = 0; i < dim_; ++i) {
      int s = 0;
      for (int j = 0; j < dim_; ++j) s += g.at(i, j) * b[j];
      v[i] = static_cast<std::uint8_t>(s % q_);
    }
    out.push_back(v);
  }
  return Subspace(dim_, q_, out);
}

int Subspace::intersection_dim(const Subspace& other) const {
  std::vector<Vec> all = rows_;
  all.insert(all.end(), other.rows_.begin(), other.rows_.end());
  return k_ + other.k_ - vector_rank(all, dim_, q_);
}

std::uint64_t Subspace::key() const {
  std::uint64_t key = static_cast<std::uint64_t>(dim_) << 56 | static_cast<std::uint64_t>(k_) << 48;
  int shift = 0;
  for (const Vec& r : rows_)
    for (int j = 0; j < dim_; ++j, shift += 4) key |= static_cast<std::uint64_t>(r[j]) << shift;
  return key;
}

std::string Subspace::to_string() const {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) os << ", ";
    os << '(';
    for (int j = 0; j < dim_; ++j) os << (j ? "," : "") << static_cast<int>(rows_[i][j]);
    os << ')';
  }
  os << '>';
  return os.str();
}

std::vector<IsotropicSubspace> isotropic_spaces(const FieldPtr& field, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
  const int q = field->q();
  // Projective points: normalized nonzero vectors.
  std::vector<Vec> pts;
  for (long idx = 1; idx < power(q, 4); ++idx) {
    Vec v = decode(idx, 4, q);
    int first = 0;
    while (v[first] == 0) ++first;
    if (v[first] == 1) pts.push_back(v);
  }
  std::map<std::uint64_t, Subspace> found;
  if (k == 1) {
    for (const Vec& v : pts) {
      Subspace s(4, q, {v});
      found.emplace(s.key(), s);
    }
  } else {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (form(pts[i], pts[j], q) != 0) continue;
        Subspace s(4, q, {pts[i], pts[j]});
        found.emplace(s.key(), s);
      }
  }
  std::vector<IsotropicSubspace> out;
  for (auto& [key, s] : found) out.push_back(s);
  return out;
}

IsotropicSubspace standard_isotropic(const FieldPtr& field, int k) {
  const int q = field->q();
  if (k == 1) return Subspace(4, q, {Vec{1, 0, 0, 0}});
  if (k == 2) return Subspace(4, q, {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}});
  throw std::invalid_argument("k must be 1 or 2");
}

Mat symplectic_section(const IsotropicSubspace& x) {
  if (!x.is_isotropic()) throw std::invalid_argument("section of a non-isotropic subspace");
  const int q = x.q();
  const auto& b = x.basis();
  std::vector<Vec> cols;
  if (x.k() == 2) {
    const Vec v1 = b[0], v2 = b[1];
    const Vec f1 = first_vector(q, [&](const Vec& f) { return form(v1, f, q) == 1 && form(v2, f, q) == 0; });
    const Vec f2 = first_vector(q, [&](const Vec& f) {
      return form(v1, f, q) == 0 && form(v2, f, q) == 1 && form(f1, f, q) == 0;
    });
    cols = {v1, v2, f1, f2};
  } else if (x.k() == 1) {
    const Vec v1 = b[0];
    const Vec f1 = first_vector(q, [&](const Vec& f) { return form(v1, f, q) == 1; });
    const Vec v2 = first_vector(q, [&](const Vec& v) { return form(v1, v, q) == 0 && form(f1, v, q) == 0; });
    const Vec f2 = first_vector(q, [&](const Vec& f) {
      return form(v1, f, q) == 0 && form(f1, f, q) == 0 && form(v2, f, q) == 1;
    });
    cols = {v1, v2, f1, f2};
  } else {
    throw std::invalid_argument("sections exist for k = 1, 2 only");
  }
  Mat g = from_columns(cols, q);
  if (!is_symplectic(g)) throw std::logic_error("section construction produced a non-symplectic matrix");
  return g;
}

// ---------------------------------------------------------------- PointSpace

PointSpace PointSpace::isotropic(const FieldPtr& field, int k) {
  PointSpace s;
  s.name_ = k == 1 ? "Lambda(1)" : "Lambda(2)";
  s.q_ = field->q();
  s.points_ = isotropic_spaces(field, k);
  for (std::size_t i = 0; i < s.points_.size(); ++i) {
    s.index_.emplace(s.points_[i].key(), i);
    s.sections_.push_back(symplectic_section(s.points_[i]));
  }
  s.base_ = s.index_of(standard_isotropic(field, k));
  s.stabilizer_order_ = sp4_order(s.q_) / s.points_.size();
  return s;
}

PointSpace PointSpace::projective_line(const FieldPtr& field) {
  PointSpace s;
  const int q = field->q();
  s.name_ = "P1";
  s.q_ = q;
  std::map<std::uint64_t, Subspace> found;
  for (long idx = 1; idx < power(q, 2); ++idx) {
    Subspace l(2, q, {decode(idx, 2, q)});
    found.emplace(l.key(), l);
  }
  for (auto& [key, l] : found) {
    s.index_.emplace(key, s.points_.size());
    s.points_.push_back(l);
    const Vec v = l.basis()[0];
    // g e2 = v; first column is the first vector completing a basis.
    for (long idx = 1; idx < power(q, 2); ++idx) {
      const Vec w = decode(idx, 2, q);
      if ((w[0] * v[1] - w[1] * v[0]) % q != 0) {
        s.sections_.push_back(Mat(2, q, {w[0], v[0], w[1], v[1]}));
        break;
      }
    }
  }
  s.base_ = s.index_of(Subspace(2, q, {Vec{0, 1, 0, 0}}));
  const std::uint64_t uq = static_cast<std::uint64_t>(q);
  s.stabilizer_order_ = (uq * uq - 1) * (uq * uq - uq) / (uq + 1);
  return s;
}

std::size_t PointSpace::index_of(const Subspace& s) const {
  auto it = index_.find(s.key());
  if (it == index_.end()) throw std::invalid_argument("subspace not in " + name_);
  return it->second;
}

std::size_t PointSpace::act(const Mat& g, std::size_t i) const { return index_of(points_[i].apply(g)); }

// -------------------------------------------------------------------- orbits

OrbitDecomposition orbit_decompose(const PointSpace& space, const std::vector<Mat>& generators) {
  const std::size_t n = space.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<std::size_t>> image(generators.size(), std::vector<std::size_t>(n));
  for (std::size_t s = 0; s < generators.size(); ++s)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = space.act(generators[s], i);
      image[s][i] = j;
      const std::size_t a = find(i), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  OrbitDecomposition d;
  d.orbit_of.assign(n, 0);
  std::map<std::size_t, std::size_t> root_to_orbit;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    auto [it, fresh] = root_to_orbit.emplace(r, d.orbits.size());
    if (fresh) {
      d.orbits.emplace_back();
      d.representatives.push_back(i);
    }
    d.orbit_of[i] = it->second;
    d.orbits[it->second].push_back(i);
  }
  const Mat id = Mat::identity(space.point(0).dim(), space.q());
  d.witness.assign(n, id);
  std::vector<bool> seen(n, false);
  for (std::size_t rep : d.representatives) {
    std::deque<std::size_t> queue{rep};
    seen[rep] = true;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t s = 0; s < generators.size(); ++s) {
        const std::size_t y = image[s][x];
        if (seen[y]) continue;
        seen[y] = true;
        d.witness[y] = generators[s] * d.witness[x];
        queue.push_back(y);
      }
    }
  }
  return d;
}

OrbitDecomposition orbit_decompose(const PointSpace& space, const SubgroupModel& actors) {
  return orbit_decompose(space, actors.generators);
}

OrbitDecomposition orbit_decompose(const PointSpace& space, const GroupSet& actors) {
  if (actors.size() <= 10'000) return orbit_decompose(space, actors.elements());
  if (actors.generators().empty()) throw std::invalid_argument("large actor group without generators");
  return orbit_decompose(space, actors.generators());
}

std::size_t DoubleCosetReport::locate(const PointSpace& space, const Mat& g) const {
  return orbits.orbit_of[space.act(g.inverse(), space.base_point())];
}

DoubleCosetReport double_coset_reps(const PointSpace& space, const SubgroupModel& right_group) {
  DoubleCosetReport r;
  r.space = space.name();
  r.right_group = right_group.name;
  r.orbits = orbit_decompose(space, right_group);
  for (std::size_t o = 0; o < r.orbits.count(); ++o) {
    const std::size_t p = r.orbits.representatives[o];
    r.representatives.push_back(space.section(p).inverse());
    r.orbit_points.push_back(p);
    r.orbit_sizes.push_back(r.orbits.orbits[o].size());
    r.sizes.push_back(space.base_stabilizer_order() * r.orbits.orbits[o].size());
  }
  return r;
}

TwoStepResult two_step_representatives(const PointSpace& space, const SubgroupModel& outer,
                                       const SubgroupModel& inner) {
  TwoStepResult res;
  const OrbitDecomposition out = orbit_decompose(space, outer);
  const OrbitDecomposition in = orbit_decompose(space, inner);
  for (const Mat& g : inner.generators)
    if (!outer.contains(g)) return res;  // inner must sit inside outer
  std::vector<int> hits(in.count(), 0);
  bool ok = true;
  for (std::size_t j = 0; j < out.count(); ++j) {
    const std::size_t xj = out.representatives[j];
    const Mat gj = space.section(xj).inverse();
    std::vector<std::size_t> inner_ids;
    for (std::size_t x : out.orbits[j]) inner_ids.push_back(in.orbit_of[x]);
    std::sort(inner_ids.begin(), inner_ids.end());
    inner_ids.erase(std::unique(inner_ids.begin(), inner_ids.end()), inner_ids.end());
    for (std::size_t i : inner_ids) {
      const std::size_t xji = in.representatives[i];
      const Mat& hji = out.witness[xji];
      ok = ok && outer.contains(hji) && space.act(hji, xj) == xji;
      const Mat rep = gj * hji.inverse();
      ++hits[in.orbit_of[space.act(rep.inverse(), space.base_point())]];
      res.representatives.push_back(rep);
      res.outer_inner.emplace_back(j, i);
    }
  }
  for (int h : hits) ok = ok && h == 1;
  res.ok = ok;
  return res;
}

// --------------------------------------------------------- decomposability

DecompositionResult decomposability_check(const GroupSet& h, const GroupSet& h1, const GroupSet& h2) {
  std::unordered_set<std::uint64_t> prod;
  prod.reserve(h1.size() * h2.size());
  for (const Mat& a : h1.elements())
    for (const Mat& b : h2.elements()) prod.insert((a * b).key());
  std::vector<Mat> lhs;
  for (const Mat& x : h.elements())
    if (prod.count(x.key())) lhs.push_back(x);
  std::vector<Mat> a_part, b_part;
  for (const Mat& x : h1.elements())
    if (h.contains(x)) a_part.push_back(x);
  for (const Mat& x : h2.elements())
    if (h.contains(x)) b_part.push_back(x);
  std::unordered_set<std::uint64_t> rhs;
  for (const Mat& a : a_part)
    for (const Mat& b : b_part) rhs.insert((a * b).key());

  DecompositionResult r;
  r.intersection_size = lhs.size();
  std::vector<Mat> diff;
  for (const Mat& x : lhs)
    if (!rhs.count(x.key())) diff.push_back(x);
  std::unordered_set<std::uint64_t> lhs_keys;
  for (const Mat& x : lhs) lhs_keys.insert(x.key());
  for (const Mat& a : a_part)
    for (const Mat& b : b_part) {
      const Mat x = a * b;
      if (!lhs_keys.count(x.key())) diff.push_back(x);
    }
  r.decomposable = diff.empty();
  if (!diff.empty()) r.witness = *std::min_element(diff.begin(), diff.end());
  return r;
}

Factorization standard_factorization(const std::string& first, const FieldPtr& field,
                                     const SubgroupParams& params) {
  Factorization f;
  f.first = first;
  if (first == "Mpsi" || first == "M") {
    f.second = "N";
    f.product = subgroup_model(first == "Mpsi" ? "Spsi" : "P", field, params);
    f.split = [](const Mat& x) {
      const Mat m = embed_beta(x.block(0, 0));
      return std::make_pair(m, symplectic_inverse(m) * x);
    };
  } else if (first == "L") {
    f.second = "U";
    f.product = subgroup_model("Q", field, params);
    f.split = [](const Mat& x) {
      const Mat l = levi_part(x, Parabolic::klingen).embedded();
      return std::make_pair(l, symplectic_inverse(l) * x);
    };
  } else {
    throw std::invalid_argument("no standard factorization starting with " + first);
  }
  return f;
}

DecompositionResult decomposability_check(const SubgroupModel& h, const Factorization& pair) {
  DecompositionResult r;
  r.decomposable = true;
  const bool scan_h = h.order <= pair.product.order;
  const SubgroupModel& scan = scan_h ? h : pair.product;
  const SubgroupModel& other = scan_h ? pair.product : h;
  scan.for_each([&](const Mat& x) {
    if (!other.contains(x)) return;
    ++r.intersection_size;
    if (!r.decomposable) return;
    const auto [a, b] = pair.split(x);
    if (!h.contains(a) || !h.contains(b)) {
      r.decomposable = false;
      r.witness = x;
    }
  });
  return r;
}

// ---------------------------------------------------------------- stabilizers

SubgroupModel stabilizer_display(int j, StabilizerKind kind, const FieldPtr& field) {
  const int q = field->q();
  const std::uint64_t uq = static_cast<std::uint64_t>(q);
  if (kind == StabilizerKind::siegel) {
    if (j == 0) return subgroup_model("P", field);
    if (j == 2) return subgroup_model("M", field);
    if (j != 1) throw std::invalid_argument("Siegel stabilizer index must be 0, 1 or 2");
  } else {
    if (j == 0) return subgroup_model("D0", field);
    if (j != 1) throw std::invalid_argument("Klingen stabilizer index must be 0 or 1");
  }
  const bool h1 = kind == StabilizerKind::siegel;
  SubgroupModel m;
  m.name = h1 ? "H1-display" : "D1-display";
  m.q = q;
  m.order = (uq - 1) * (uq - 1) * uq * (h1 ? uq * uq : uq);
  m.for_each = [q, h1](const std::function<void(const Mat&)>& f) {
    for (int b = 1; b < q; ++b)
      for (int d = 1; d < q; ++d)
        for (int c = 0; c < q; ++c)
          for (int y = 0; y < q; ++y)
            for (int w = 0; w < (h1 ? q : 1); ++w) {
              const FieldElem B(b, q), C(c, q), D(d, q), Y(y, q);
              const FieldElem bi = B.inv(), di = D.inv();
              const FieldElem corner = -(C * bi * di);
              if (h1) {
                f(Mat(4, q, {b, 0, 0, y, c, d, (D * Y * bi).value(), w, 0, 0, bi.value(), corner.value(),
                             0, 0, 0, di.value()}));
              } else {
                f(Mat(4, q, {b, 0, 0, 0, c, d, 0, y, 0, 0, bi.value(), corner.value(), 0, 0, 0,
                             di.value()}));
              }
            }
  };
  auto keys = std::make_shared<std::unordered_set<std::uint64_t>>();
  m.for_each([&](const Mat& g) { keys->insert(g.key()); });
  m.contains = [keys, q](const Mat& g) { return g.n() == 4 && g.q() == q && keys->count(g.key()) > 0; };
  return m;
}

StabilizerCheck verify_stabilizer(int j, StabilizerKind kind, const FieldPtr& field) {
  StabilizerCheck r;
  const int q = field->q();
  const bool siegel = kind == StabilizerKind::siegel;
  const SubgroupModel p = subgroup_model("P", field);
  const SubgroupModel outer = subgroup_model(siegel ? "P" : "Q", field);
  const Mat w = siegel ? sigma(j, q) : klingen_weyl(j, q);
  const SubgroupModel conj = conjugate(outer, w);
  const SubgroupModel display = stabilizer_display(j, kind, field);

  const PointSpace space = PointSpace::isotropic(field, siegel ? 2 : 1);
  const OrbitDecomposition orbits = orbit_decompose(space, p);
  const std::size_t point = space.act(w, space.base_point());
  const std::uint64_t orbit_size = orbits.orbits[orbits.orbit_of[point]].size();
  r.expected_size = p.order / orbit_size;

  bool inside = true;
  std::uint64_t count = 0;
  display.for_each([&](const Mat& g) {
    ++count;
    if (inside && (!p.contains(g) || !conj.contains(g))) {
      inside = false;
      r.detail = "element " + g.hex() + " of the description is not in the intersection";
    }
  });
  r.explicit_size = count;
  r.ok = inside && count == r.expected_size && count == display.order;
  if (inside && !r.ok) {
    std::ostringstream os;
    os << "description has " << count << " elements, orbit-stabilizer gives " << r.expected_size;
    r.detail = os.str();
  }
  return r;
}

}  // namespace sp4tj
