#include "sp4tj/jacquet.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <map>
#include <stdexcept>
#include <thread>

namespace sp4tj {

namespace {

int sign_of(const Mat& g, int r, int c) { return g.at(r, c) == 1 ? 1 : -1; }

Complex eta_value(int exponent, const Field& f, FieldElem t) {
  return root_of_unity(static_cast<long long>(exponent) * f.log(t), f.q() - 1);
}

const char* sl2_family_tag(IrrFamily fam) {
  switch (fam) {
    case IrrFamily::sl2_trivial: return "trivial";
    case IrrFamily::sl2_steinberg:
    case IrrFamily::sl2_principal: return "principal-or-steinberg";
    case IrrFamily::sl2_cuspidal: return "cuspidal";
    case IrrFamily::sl2_tau1: return "tau1";
    case IrrFamily::sl2_tau2: return "tau2";
    case IrrFamily::sl2_tau1p: return "tau1'";
    case IrrFamily::sl2_tau2p: return "tau2'";
    default: throw std::invalid_argument("not an SL2 family");
  }
}

const std::vector<std::string> kMu1{"rho0", "rho1", "ind(rho2)"};
const std::vector<std::string> kMu2{"rho0", "ind(rho2)"};
const std::vector<std::string> kRho1{"rho1"};

}  // namespace

PsiSpec PsiSpec::rank_one(const Field& field, int gamma) {
  const FieldElem g = field(gamma);
  if (g.is_zero()) throw std::invalid_argument("gamma must be a unit");
  return PsiSpec{Mat::diag(field.q(), {g.value(), 0}), g.value(), legendre(g)};
}

Complex psi_of(const Mat& n, const PsiSpec& psi) {
  if (n.n() != 4 || !n.block(0, 0).is_identity() || !n.block(2, 2).is_identity() || !(n.block(2, 0) == Mat(2, n.q())))
    throw std::invalid_argument("element " + n.hex() + " is not in N");
  return psi0((psi.a * n.block(0, 2)).trace());
}

// ---------------------------------------------------------------- SL2 pieces

WhittakerChar whittaker_char_sl2(const Tables& t, std::size_t row, int gamma) {
  const Field& f = *t.field;
  const ClassFunction& chi = t.sl2.rows.at(row).character;
  WhittakerChar w{0.0, 0.0};
  for (FieldElem x : f.elements()) {
    const Complex c = std::conj(psi0(x * f(gamma)));
    const Mat u = unipotent_upper(x);
    w.at_one += c * chi.at(u);
    w.at_minus_one += c * chi.at(u.scaled(f(-1)));
  }
  w.at_one /= static_cast<double>(f.q());
  w.at_minus_one /= static_cast<double>(f.q());
  return w;
}

WhittakerChar whittaker_char_sl2(const Tables& t, std::size_t row, WhittakerVariant v) {
  return whittaker_char_sl2(t, row, v == WhittakerVariant::psi ? 1 : t.field->delta().value());
}

Complex sl2_jacquet_value(const Tables& t, std::size_t row, FieldElem d) {
  const Field& f = *t.field;
  const ClassFunction& chi = t.sl2.rows.at(row).character;
  const Mat m = Mat::diag(f.q(), {d.value(), d.inv().value()});
  Complex s = 0;
  for (FieldElem x : f.elements()) s += chi.at(m * unipotent_upper(x));
  return s / static_cast<double>(f.q());
}

Complex gl2_lower_jacquet_value(const Tables& t, std::size_t row, const Mat& diag) {
  const Field& f = *t.field;
  const ClassFunction& chi = t.gl2.rows.at(row).character;
  Complex s = 0;
  for (FieldElem y : f.elements()) s += chi.at(diag * unipotent_lower(y));
  return s / static_cast<double>(f.q());
}

// ---------------------------------------------------------- InducedCharacter

InducedCharacter::InducedCharacter(std::shared_ptr<const Tables> tables, Parabolic parabolic)
    : tables_(std::move(tables)),
      parabolic_(parabolic),
      space_(PointSpace::isotropic(tables_->field, parabolic == Parabolic::siegel ? 2 : 1)) {
  sections_inv_.reserve(space_.size());
  for (std::size_t i = 0; i < space_.size(); ++i) sections_inv_.push_back(symplectic_inverse(space_.section(i)));
}

const IrrTable& InducedCharacter::inducing_table() const {
  return parabolic_ == Parabolic::siegel ? tables_->gl2 : tables_->l;
}

InducedCharacter::Profile InducedCharacter::compute_profile(const Mat& g) const {
  if (g.n() != 4 || g.q() != tables_->field->q() || !is_symplectic(g))
    throw std::invalid_argument("element " + g.hex() + " is not in Sp4");
  const ClassData& levi = *inducing_table().classes;
  std::map<std::uint32_t, std::uint32_t> counts;
  for (std::size_t i = 0; i < space_.size(); ++i) {
    if (space_.act(g, i) != i) continue;
    const Mat p = sections_inv_[i] * g * space_.section(i);
    const LeviPart lp = levi_part(p, parabolic_);
    const std::size_t c = parabolic_ == Parabolic::siegel ? levi.class_of_elem(lp.g)
                                                          : levi.class_of_elem(lp.embedded());
    ++counts[static_cast<std::uint32_t>(c)];
  }
  return Profile(counts.begin(), counts.end());
}

const InducedCharacter::Profile& InducedCharacter::profile(const Mat& g) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(g.key());
    if (it != memo_.end()) return it->second;
  }
  Profile p = compute_profile(g);
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.try_emplace(g.key(), std::move(p)).first->second;
}

Complex InducedCharacter::eval(const ClassFunction& inducing, const Mat& g) const {
  if (inducing.classes() != inducing_table().classes)
    throw std::invalid_argument("inducing character lives on another group");
  Complex s = 0;
  for (const auto& [c, n] : profile(g)) s += static_cast<double>(n) * inducing[c];
  return s;
}

Complex InducedCharacter::eval(std::size_t row, const Mat& g) const {
  return eval(inducing_table().rows.at(row).character, g);
}

Complex induced_char_bruteforce(const GroupSet& ambient, const Tables& t, Parabolic parabolic, std::size_t row,
                                const Mat& g) {
  const IrrTable& table = parabolic == Parabolic::siegel ? t.gl2 : t.l;
  const ClassFunction& chi = table.rows.at(row).character;
  const bool siegel = parabolic == Parabolic::siegel;
  Complex s = 0;
  std::uint64_t parabolic_order = 0;
  for (const Mat& x : ambient.elements()) {
    if (siegel ? in_siegel(x) : in_klingen(x)) ++parabolic_order;
    const Mat c = symplectic_inverse(x) * g * x;
    if (!(siegel ? in_siegel(c) : in_klingen(c))) continue;
    const LeviPart lp = levi_part(c, parabolic);
    s += siegel ? chi.at(lp.g) : chi.at(lp.embedded());
  }
  return s / static_cast<double>(parabolic_order);
}

// -------------------------------------------------------------- JacquetEngine

JacquetEngine::JacquetEngine(std::shared_ptr<const Tables> tables, Parabolic parabolic, const PsiSpec& psi)
    : tables_(tables), parabolic_(parabolic), psi_(psi), induced_(tables, parabolic) {
  const Field& f = *tables_->field;
  const int q = f.q();
  const ClassData& o2 = *tables_->o2.classes;
  const std::size_t levi_classes = induced_.inducing_table().classes->count();

  std::vector<std::pair<Mat, Complex>> ns;  // n and conj(psi(n))
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int d = 0; d < q; ++d) {
        const Mat n = n_of(Mat(2, q, {a, b, b, d}));
        ns.emplace_back(n, std::conj(psi_of(n, psi_)));
      }
  const double inv_n = 1.0 / static_cast<double>(ns.size());

  auto weights_for = [&](std::size_t c) {
    std::vector<Complex> w(levi_classes, 0.0);
    const Mat m = embed_beta(o2.reps[c]);
    for (const auto& [n, coeff] : ns)
      for (const auto& [lc, cnt] : induced_.compute_profile(m * n)) w[lc] += coeff * static_cast<double>(cnt);
    for (Complex& z : w) z *= inv_n;
    return w;
  };

  weights_.resize(o2.count());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), o2.count()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t c = w; c < o2.count(); c += workers) weights_[c] = weights_for(c);
    }));
  for (auto& j : jobs) j.get();
}

ClassFunction JacquetEngine::compute_raw(const ClassFunction& inducing) const {
  if (inducing.classes() != induced_.inducing_table().classes)
    throw std::invalid_argument("inducing character lives on another group");
  std::vector<Complex> v(weights_.size(), 0.0);
  for (std::size_t m = 0; m < weights_.size(); ++m)
    for (std::size_t c = 0; c < weights_[m].size(); ++c) v[m] += weights_[m][c] * inducing[c];
  return {tables_->o2.classes, v};
}

JacquetCharacter JacquetEngine::compute(std::size_t row) const {
  const IrrRow& r = induced_.inducing_table().rows.at(row);
  JacquetCharacter j{parabolic_, r.label.name, psi_.gamma, compute_raw(r.character), {}, 0};
  j.multiplicities = decompose(j.chi, tables_->o2);
  const Complex d = j.chi.degree();
  const double rd = std::round(d.real());
  if (std::abs(d - Complex(rd, 0)) > kIntegralityTol)
    throw IntegralityError("Jacquet module dimension " + format_complex(d));
  j.dimension = static_cast<long>(rd);
  return j;
}

JacquetCharacter twisted_jacquet_character(std::shared_ptr<const Tables> tables, Parabolic parabolic,
                                           std::size_t row, const PsiSpec& psi) {
  return JacquetEngine(std::move(tables), parabolic, psi).compute(row);
}

// ---------------------------------------------------------------- predictions

Prediction predicted_siegel(const Tables& t, std::size_t row) {
  const IrrRow& rho = t.gl2.rows.at(row);
  const ClassDataPtr& o2 = t.o2.classes;
  Prediction p{tabulate(o2, [&](const Mat& g) { return std::conj(rho.character.at(g)); }), {"dual-restriction"},
               rho.label.cuspidal ? "siegel:cuspidal" : "siegel:non-cuspidal", {}};
  if (!rho.label.cuspidal) {
    p.chi = p.chi + tabulate(o2, [&](const Mat& g) { return gl2_lower_jacquet_value(t, row, o2_to_t2(g)); });
    p.summands.push_back("rho0");
  }
  p.case_summands = p.summands;
  return p;
}

Prediction predicted_klingen(const Tables& t, std::size_t row, int gamma) {
  const Field& f = *t.field;
  const IrrRow& rho = t.l.rows.at(row);
  const int eta = rho.label.params.at(0);
  const auto tau_row = static_cast<std::size_t>(rho.label.params.at(1));
  const IrrFamily fam = t.sl2.rows.at(tau_row).label.family;
  const WhittakerChar whit = whittaker_char_sl2(t, tau_row, gamma);
  const ClassDataPtr& o2 = t.o2.classes;

  Prediction p{zero_function(o2), {}, std::string("klingen:") + sl2_family_tag(fam), {}};
  if (whit.nonzero())
    p.chi = p.chi + tabulate(o2, [&](const Mat& g) { return whit.at(sign_of(g, 0, 0)) * eta_value(eta, f, g(1, 1)); });
  if (whit.nonzero()) p.summands.push_back("rho0");
  if (!rho.label.cuspidal) {
    p.chi = p.chi + tabulate(o2, [&](const Mat& g) {
      return eta_value(eta, f, g(0, 0)) * sl2_jacquet_value(t, tau_row, g(1, 1));
    });
    p.summands.push_back("rho1");
  }
  if (whit.nonzero()) {
    const ClassDataPtr& t2 = t.t2.classes;
    const ClassFunction rho2 = tabulate(t2, [&](const Mat& g) {
      return whit.at(sign_of(g, 0, 0)) * std::conj(eta_value(eta, f, g(1, 1)));
    });
    p.chi = p.chi + induce(rho2, o2, left_transversal(*o2->group, *t2->group));
    p.summands.push_back("ind(rho2)");
  }

  const bool square = legendre(f(gamma)) == 1;
  switch (fam) {
    case IrrFamily::sl2_trivial: p.case_summands = kRho1; break;
    case IrrFamily::sl2_steinberg:
    case IrrFamily::sl2_principal: p.case_summands = kMu1; break;
    case IrrFamily::sl2_cuspidal: p.case_summands = kMu2; break;
    case IrrFamily::sl2_tau1: p.case_summands = square ? kMu1 : kRho1; break;
    case IrrFamily::sl2_tau2: p.case_summands = square ? kRho1 : kMu1; break;
    case IrrFamily::sl2_tau1p: p.case_summands = square ? kMu2 : std::vector<std::string>{}; break;
    case IrrFamily::sl2_tau2p: p.case_summands = square ? std::vector<std::string>{} : kMu2; break;
    default: throw std::logic_error("unexpected family in the L table");
  }
  if (fam >= IrrFamily::sl2_tau1) p.case_tag += square ? "/square" : "/non-square";
  return p;
}

// --------------------------------------------------------------- verification

namespace {

std::vector<VerificationReport> verify(int q, int gamma, Parabolic parabolic) {
  auto t = tables_for(q);
  const PsiSpec psi = PsiSpec::rank_one(*t->field, gamma);
  const JacquetEngine engine(t, parabolic, psi);
  const IrrTable& inducing = engine.induced().inducing_table();
  std::vector<std::string> labels;
  for (const IrrRow& r : t->o2.rows) labels.push_back(r.label.name);

  std::vector<VerificationReport> out;
  for (std::size_t row = 0; row < inducing.size(); ++row) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport r;
    r.q = q;
    r.gamma = psi.gamma;
    r.parabolic = parabolic;
    r.inducing = inducing.rows[row].label.name;
    r.irrep_labels = labels;
    try {
      const Prediction pred = parabolic == Parabolic::siegel ? predicted_siegel(*t, row)
                                                             : predicted_klingen(*t, row, psi.gamma);
      r.case_tag = pred.case_tag;
      r.summands = pred.summands;
      r.case_consistent = pred.summands == pred.case_summands;
      r.predicted = decompose(pred.chi, t->o2);
      const JacquetCharacter j = engine.compute(row);
      r.computed = j.multiplicities;
      r.dimension = j.dimension;
      r.max_pointwise_diff = j.chi.max_abs_diff(pred.chi);
    } catch (const IntegralityError& e) {
      throw IntegralityError(std::string(to_string(parabolic)) + " " + r.inducing + " q=" + std::to_string(q) +
                             " gamma=" + std::to_string(psi.gamma) + ": " + e.what());
    }
    r.pass = r.computed == r.predicted && r.case_consistent && r.max_pointwise_diff <= kOrthogonalityTol;
    if (!r.case_consistent) r.detail = "Whittaker recipe and case list disagree";
    else if (r.computed == r.predicted && !r.pass) r.detail = "characters differ pointwise";
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<VerificationReport> verify_siegel(int q, int gamma) { return verify(q, gamma, Parabolic::siegel); }
std::vector<VerificationReport> verify_klingen(int q, int gamma) { return verify(q, gamma, Parabolic::klingen); }

std::vector<VerificationReport> verify_theorems(int q, int gamma) {
  auto out = verify_siegel(q, gamma);
  auto k = verify_klingen(q, gamma);
  out.insert(out.end(), std::make_move_iterator(k.begin()), std::make_move_iterator(k.end()));
  return out;
}

}  // namespace sp4tj
