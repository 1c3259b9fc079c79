#include "sp4tj/chars.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace sp4tj {

std::size_t ClassData::class_of_elem(const Mat& g) const {
  const auto idx = group->index_of(g);
  if (!idx) throw std::invalid_argument("element " + g.hex() + " not in " + group->name());
  return class_of[*idx];
}

ClassDataPtr conjugacy_classes(std::shared_ptr<const GroupSet> group) {
  auto cd = std::make_shared<ClassData>();
  cd->group = group;
  const auto& elems = group->elements();
  const std::vector<Mat>& gens = group->generators().empty() ? elems : group->generators();
  std::vector<Mat> gens_inv;
  for (const Mat& s : gens) gens_inv.push_back(s.inverse());

  constexpr std::uint32_t unset = ~std::uint32_t{0};
  cd->class_of.assign(elems.size(), unset);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (cd->class_of[i] != unset) continue;
    const auto c = static_cast<std::uint32_t>(cd->reps.size());
    cd->reps.push_back(elems[i]);  // elements are key-sorted, so this is the least member
    std::uint64_t size = 1;
    cd->class_of[i] = c;
    std::deque<std::size_t> queue{i};
    while (!queue.empty()) {
      const Mat x = elems[queue.front()];
      queue.pop_front();
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const std::size_t j = *group->index_of(gens[s] * x * gens_inv[s]);
        if (cd->class_of[j] == unset) {
          cd->class_of[j] = c;
          ++size;
          queue.push_back(j);
        }
      }
    }
    cd->sizes.push_back(size);
  }
  const Mat id = Mat::identity(group->n(), group->q());
  cd->identity_class = cd->class_of_elem(id);
  return cd;
}

// ------------------------------------------------------------- ClassFunction

ClassFunction::ClassFunction(ClassDataPtr classes, std::vector<Complex> values)
    : classes_(std::move(classes)), values_(std::move(values)) {
  if (!classes_ || values_.size() != classes_->count())
    throw std::invalid_argument("class function size does not match its classes");
}

void ClassFunction::check_same(const ClassFunction& o) const {
  if (classes_ != o.classes_) throw std::invalid_argument("class functions on different groups");
}

ClassFunction ClassFunction::conj() const {
  std::vector<Complex> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), [](Complex z) { return std::conj(z); });
  return {classes_, v};
}

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
  check_same(o);
  std::vector<Complex> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + o.values_[i];
  return {classes_, v};
}

ClassFunction ClassFunction::operator-(const ClassFunction& o) const { return *this + o.scaled(-1.0); }

ClassFunction ClassFunction::operator*(const ClassFunction& o) const {
  check_same(o);
  std::vector<Complex> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * o.values_[i];
  return {classes_, v};
}

ClassFunction ClassFunction::scaled(Complex s) const {
  std::vector<Complex> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * s;
  return {classes_, v};
}

double ClassFunction::max_abs_diff(const ClassFunction& o) const {
  check_same(o);
  double m = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i] - o.values_[i]));
  return m;
}

ClassFunction zero_function(const ClassDataPtr& classes) {
  return {classes, std::vector<Complex>(classes->count(), 0.0)};
}

ClassFunction tabulate(const ClassDataPtr& classes, const std::function<Complex(const Mat&)>& f) {
  std::vector<Complex> v;
  v.reserve(classes->count());
  for (const Mat& r : classes->reps) v.push_back(f(r));
  return {classes, v};
}

Complex inner_product(const ClassFunction& f, const ClassFunction& g) {
  if (f.classes() != g.classes()) throw std::invalid_argument("inner product across different groups");
  const ClassData& cd = *f.classes();
  Complex s = 0;
  for (std::size_t c = 0; c < cd.count(); ++c)
    s += static_cast<double>(cd.sizes[c]) * f[c] * std::conj(g[c]);
  return s / static_cast<double>(cd.order());
}

ClassFunction restrict_to(const ClassFunction& f, const ClassDataPtr& sub) {
  return tabulate(sub, [&](const Mat& h) { return f.at(h); });
}

ClassFunction inflate(const ClassFunction& f, const ClassDataPtr& big,
                      const std::function<Mat(const Mat&)>& quotient) {
  return tabulate(big, [&](const Mat& g) { return f.at(quotient(g)); });
}

std::vector<Mat> left_transversal(const GroupSet& g, const GroupSet& h) {
  std::vector<Mat> t;
  std::vector<bool> covered(g.size(), false);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (covered[i]) continue;
    t.push_back(g[i]);
    for (const Mat& x : h.elements()) {
      const auto j = g.index_of(g[i] * x);
      if (!j) throw std::invalid_argument(h.name() + " is not a subgroup of " + g.name());
      covered[*j] = true;
    }
  }
  return t;
}

ClassFunction induce(const ClassFunction& chi, const ClassDataPtr& g, const std::vector<Mat>& transversal) {
  const GroupSet& h = *chi.classes()->group;
  if (transversal.size() * h.size() != g->order())
    throw std::invalid_argument("transversal has the wrong size for induction");
  for (std::size_t i = 0; i < transversal.size(); ++i)
    for (std::size_t j = i + 1; j < transversal.size(); ++j)
      if (h.contains(transversal[i].inverse() * transversal[j]))
        throw std::invalid_argument("transversal has two elements in one coset");
  std::vector<Mat> inv;
  for (const Mat& x : transversal) inv.push_back(x.inverse());
  return tabulate(g, [&](const Mat& y) {
    Complex s = 0;
    for (std::size_t i = 0; i < transversal.size(); ++i) {
      const Mat c = inv[i] * y * transversal[i];
      if (h.contains(c)) s += chi.at(c);
    }
    return s;
  });
}

// ------------------------------------------------------------------ tables

std::size_t IrrTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].label.name == name) return i;
  throw std::out_of_range("no irreducible labelled " + name + " in " + group_name);
}

OrthogonalityResult verify_orthogonality(const IrrTable& table, double tol) {
  OrthogonalityResult r;
  const ClassData& cd = *table.classes;
  const std::size_t n = table.rows.size();
  std::ostringstream detail;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex ip = inner_product(table.rows[i].character, table.rows[j].character);
      const double err = std::abs(ip - Complex(i == j ? 1.0 : 0.0));
      if (err > r.max_row_error) {
        r.max_row_error = err;
        if (err > tol && detail.str().empty())
          detail << "rows " << table.rows[i].label.name << " and " << table.rows[j].label.name;
      }
    }
  for (std::size_t a = 0; a < cd.count(); ++a)
    for (std::size_t b = 0; b < cd.count(); ++b) {
      Complex s = 0;
      for (const IrrRow& row : table.rows) s += row.character[a] * std::conj(row.character[b]);
      const double expect = a == b ? static_cast<double>(cd.centralizer_order(a)) : 0.0;
      const double err = std::abs(s - expect);
      if (err > r.max_column_error) {
        r.max_column_error = err;
        if (err > tol && detail.str().empty())
          detail << "columns " << cd.reps[a].hex() << " and " << cd.reps[b].hex();
      }
    }
  r.degrees_integral = true;
  for (const IrrRow& row : table.rows) {
    const Complex d = row.character.degree();
    const double rd = std::round(d.real());
    if (std::abs(d - Complex(rd, 0)) > kIntegralityTol || rd < 1) r.degrees_integral = false;
    r.degree_square_sum += static_cast<std::uint64_t>(rd * rd);
  }
  const bool count_ok = n == cd.count();
  r.ok = r.max_row_error <= tol && r.max_column_error <= tol && r.degrees_integral && count_ok &&
         r.degree_square_sum == cd.order();
  if (!count_ok) detail << (detail.str().empty() ? "" : "; ") << n << " rows for " << cd.count() << " classes";
  if (r.degree_square_sum != cd.order())
    detail << (detail.str().empty() ? "" : "; ") << "degree squares sum to " << r.degree_square_sum;
  r.detail = detail.str();
  return r;
}

std::vector<long> decompose(const ClassFunction& f, const IrrTable& table, double tol) {
  std::vector<long> out;
  for (const IrrRow& row : table.rows) {
    if (row.character.classes() != f.classes())
      throw std::invalid_argument("decomposing against a table of another group");
    const Complex m = inner_product(f, row.character);
    const double r = std::round(m.real());
    if (std::abs(m - Complex(r, 0)) > tol || r < 0) {
      std::ostringstream os;
      os << "multiplicity of " << row.label.name << " is " << format_complex(m);
      throw IntegralityError(os.str());
    }
    out.push_back(static_cast<long>(r));
  }
  return out;
}

ClassFunction compose(const std::vector<long>& multiplicities, const IrrTable& table) {
  if (multiplicities.size() != table.rows.size()) throw std::invalid_argument("multiplicity vector size");
  ClassFunction f = zero_function(table.classes);
  for (std::size_t i = 0; i < multiplicities.size(); ++i)
    if (multiplicities[i]) f = f + table.rows[i].character.scaled(static_cast<double>(multiplicities[i]));
  return f;
}

std::string format_complex(Complex z) {
  auto clean = [](double x) { return std::abs(x) < 5e-10 ? 0.0 : x; };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f%+.9fi", clean(z.real()), clean(z.imag()));
  return buf;
}

std::string to_csv(const IrrTable& table) {
  std::ostringstream os;
  os << "label";
  for (const Mat& r : table.classes->reps) os << ',' << r.hex();
  os << '\n';
  for (const IrrRow& row : table.rows) {
    os << '"' << row.label.name << '"';
    for (const Complex& v : row.character.values()) os << ',' << format_complex(v);
    os << '\n';
  }
  return os.str();
}

}  // namespace sp4tj
