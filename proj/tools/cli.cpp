#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

namespace sp4tj::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

const char* to_string(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::tables: return "tables";
    case Command::orbits: return "orbits";
  }
  return "?";
}

bool theorem_suite(const std::string& s) { return s == "siegel" || s == "klingen"; }

Json subspace_points(const PointSpace& space, const std::vector<std::size_t>& pts) {
  Json out = Json::array();
  for (std::size_t p : pts) out.push_back(space.point(p).to_string());
  return out;
}

struct NamedElement {
  std::string name;
  Mat g;
};

Json double_coset_entry(const std::string& name, const PointSpace& space, const SubgroupModel& right,
                        std::size_t expected, const std::vector<NamedElement>& named, bool with_points) {
  const auto t0 = Clock::now();
  const DoubleCosetReport rep = double_coset_reps(space, right);
  Json e;
  e["name"] = name;
  e["space"] = space.name();
  e["right_group"] = right.name;
  e["expected"] = expected;
  e["count"] = rep.count();
  Json reps = Json::array();
  for (std::size_t i = 0; i < rep.count(); ++i) {
    Json r;
    r["matrix"] = rep.representatives[i].hex();
    r["orbit_size"] = rep.orbit_sizes[i];
    r["double_coset_size"] = rep.sizes[i];
    if (with_points) r["points"] = subspace_points(space, rep.orbits.orbits[i]);
    reps.push_back(r);
  }
  e["representatives"] = reps;

  // Each named element must land in its own double coset and together they
  // must cover all of them.
  std::vector<int> hit(rep.count(), 0);
  Json members = Json::array();
  for (const NamedElement& ne : named) {
    const std::size_t c = rep.locate(space, ne.g);
    ++hit[c];
    members.push_back(Json{{"element", ne.name}, {"double_coset", c}});
  }
  e["named_elements"] = members;
  bool distinct = named.size() == rep.count();
  for (int h : hit) distinct = distinct && h == 1;
  e["named_elements_distinct"] = distinct;
  e["pass"] = rep.count() == expected && distinct;
  e["elapsed_ms"] = ms_since(t0);
  return e;
}

Json subgroup_samples(const FieldPtr& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Json out = Json::array();
  constexpr int kPairs = 2000;
  for (const std::string& name : subgroup_catalog()) {
    if (name == "Sp4") continue;
    const SubgroupModel m = subgroup_model(name, field);
    std::vector<Mat> pool;
    if (m.order <= 200'000) {
      m.for_each([&](const Mat& g) { pool.push_back(g); });
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, m.generators.size() - 1);
      for (int i = 0; i < 512; ++i) {
        Mat g = Mat::identity(m.n, m.q);
        for (int k = 0; k < 24; ++k) g = g * m.generators[pick(rng)];
        pool.push_back(g);
      }
    }
    bool ok = m.order > 200'000 || pool.size() == m.order;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < kPairs && ok; ++i) {
      const Mat& a = pool[pick(rng)];
      const Mat& b = pool[pick(rng)];
      ok = m.contains(a) && m.contains(a * b) && m.contains(a.inverse()) && (m.n == 2 || is_symplectic(a));
    }
    for (const Mat& g : m.generators) ok = ok && m.contains(g);
    out.push_back(Json{{"name", name}, {"order", m.order}, {"sampled_pairs", kPairs}, {"pass", ok}});
  }
  return out;
}

std::string sl2_pattern(const IrrFamily fam) {
  switch (fam) {
    case IrrFamily::sl2_trivial: return "00";
    case IrrFamily::sl2_tau1:
    case IrrFamily::sl2_tau1p: return "10";
    case IrrFamily::sl2_tau2:
    case IrrFamily::sl2_tau2p: return "01";
    default: return "11";
  }
}

Json classification(const Tables& t) {
  const int q = t.field->q();
  Json rows = Json::array();
  bool ok = true;
  int generic = 0, principal = 0, cuspidal = 0;
  for (std::size_t r = 0; r < t.sl2.size(); ++r) {
    const IrrepLabel& label = t.sl2.rows[r].label;
    const WhittakerChar a = whittaker_char_sl2(t, r, WhittakerVariant::psi);
    const WhittakerChar b = whittaker_char_sl2(t, r, WhittakerVariant::psi_prime);
    const long da = std::lround(a.dimension()), db = std::lround(b.dimension());
    const std::string pattern = std::to_string(da) + std::to_string(db);
    const long dim = std::lround(t.sl2.rows[r].character.degree().real());
    // A nonzero Whittaker space is one-dimensional and carries the central character.
    bool row_ok = pattern == sl2_pattern(label.family) && da <= 1 && db <= 1;
    const Complex central = t.sl2.rows[r].character.at(Mat::diag(q, {-1, -1})) / static_cast<double>(dim);
    if (da == 1) row_ok = row_ok && std::abs(a.at_minus_one - central) < kIntegralityTol;
    if (db == 1) row_ok = row_ok && std::abs(b.at_minus_one - central) < kIntegralityTol;
    if (pattern == "11") ++generic;
    if (label.family == IrrFamily::sl2_principal) {
      ++principal;
      row_ok = row_ok && dim == q + 1;
    }
    if (label.family == IrrFamily::sl2_cuspidal) {
      ++cuspidal;
      row_ok = row_ok && dim == q - 1;
    }
    if (label.family == IrrFamily::sl2_tau1 || label.family == IrrFamily::sl2_tau2) row_ok = row_ok && dim == (q + 1) / 2;
    if (label.family == IrrFamily::sl2_tau1p || label.family == IrrFamily::sl2_tau2p) row_ok = row_ok && dim == (q - 1) / 2;
    ok = ok && row_ok;
    rows.push_back(Json{{"label", label.name}, {"dimension", dim}, {"psi", da}, {"psi_prime", db}, {"pass", row_ok}});
  }
  const bool counts = generic == q - 1 && principal == (q - 3) / 2 && cuspidal == (q - 1) / 2;
  return Json{{"rows", rows},
              {"both_nonzero", generic},
              {"principal_series", principal},
              {"cuspidal", cuspidal},
              {"pass", ok && counts}};
}

Json report_json(const VerificationReport& r, bool timings) {
  Json computed = Json::object(), predicted = Json::object();
  for (std::size_t i = 0; i < r.irrep_labels.size(); ++i) {
    computed[r.irrep_labels[i]] = r.computed.at(i);
    predicted[r.irrep_labels[i]] = r.predicted.at(i);
  }
  Json j{{"q", r.q},
         {"gamma", r.gamma},
         {"parabolic", to_string(r.parabolic)},
         {"inducing", r.inducing},
         {"case", r.case_tag},
         {"summands", r.summands},
         {"dimension", r.dimension},
         {"computed", computed},
         {"predicted", predicted},
         {"case_consistent", r.case_consistent},
         {"max_pointwise_diff", r.max_pointwise_diff < 1e-12 ? 0.0 : r.max_pointwise_diff},
         {"verdict", r.pass ? "pass" : "fail"}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (timings) j["wall_ms"] = r.wall_ms;
  return j;
}

bool all_pass(const Json& section) {
  if (section.is_null()) return true;
  if (section.is_array()) {
    for (const Json& e : section)
      if (!all_pass(e)) return false;
    return true;
  }
  if (section.is_object()) {
    if (section.contains("verdict") && section["verdict"] != "pass") return false;
    if (section.contains("pass") && section["pass"] == false) return false;
    for (const auto& [k, v] : section.items())
      if ((v.is_array() || v.is_object()) && !all_pass(v)) return false;
  }
  return true;
}

void strip_timings(Json& j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    j.erase("wall_ms");
    for (auto& [k, v] : j.items()) strip_timings(v);
  } else if (j.is_array()) {
    for (Json& v : j) strip_timings(v);
  }
}

// ---------------------------------------------------------------- rendering

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

std::string multiplicities(const Json& m) {
  std::string s;
  for (const auto& [k, v] : m.items())
    if (v.get<long>() != 0) s += (s.empty() ? "" : ";") + k + "=" + std::to_string(v.get<long>());
  return s.empty() ? "0" : s;
}

std::string render_csv(const Json& report) {
  std::ostringstream os;
  os << "section,item,pass,detail\n";
  const std::string q = std::to_string(report["meta"]["q"].get<int>());
  if (report["orbits"].is_object()) {
    for (const Json& e : report["orbits"]["double_cosets"])
      os << "orbits," << csv_escape(e["name"]) << ',' << e["pass"] << ",count=" << e["count"] << '\n';
    for (const Json& e : report["orbits"]["stabilizers"])
      os << "orbits," << csv_escape(e["name"]) << ',' << e["pass"] << ",size=" << e["explicit_size"] << '\n';
    for (const Json& e : report["orbits"]["two_step"])
      os << "orbits," << csv_escape(e["name"]) << ',' << e["pass"] << ",count=" << e["count"] << '\n';
  }
  if (report["decomposability"].is_object()) {
    for (const Json& e : report["decomposability"]["conditions"])
      os << "decomposability," << csv_escape(e["parabolic"].get<std::string>() + " w=" + e["w"].get<std::string>() + " " +
                                              e["subgroup"].get<std::string>() + " vs " + e["pair"].get<std::string>())
         << ',' << e["pass"] << ",|H^H1H2|=" << e["intersection_size"] << '\n';
    const Json& n = report["decomposability"]["negative_control"];
    os << "decomposability,negative control," << n["pass"] << ','
       << csv_escape("witness=" + n["witness"].get<std::string>()) << '\n';
  }
  if (report["tables"].is_object()) {
    for (const Json& e : report["tables"]["orthogonality"])
      os << "tables," << csv_escape(e["group"]) << ',' << e["pass"] << ",rows=" << e["rows"] << '\n';
    os << "tables,classification," << report["tables"]["classification"]["pass"] << ",\n";
    for (const Json& e : report["tables"]["subgroups"])
      os << "tables," << csv_escape("subgroup " + e["name"].get<std::string>()) << ',' << e["pass"] << ",order="
         << e["order"] << '\n';
  }
  for (const char* s : {"siegel", "klingen"}) {
    if (!report[s].is_array()) continue;
    for (const Json& r : report[s])
      os << s << ',' << csv_escape(r["inducing"]) << ',' << (r["verdict"] == "pass" ? "true" : "false") << ','
         << csv_escape(r["case"].get<std::string>() + " computed=" + multiplicities(r["computed"]) +
                       " predicted=" + multiplicities(r["predicted"]))
         << '\n';
  }
  return os.str();
}

std::string render_text(const Json& report) {
  std::ostringstream os;
  const Json& meta = report["meta"];
  os << "sp4tj " << meta["version"].get<std::string>() << "  q=" << meta["q"] << " gamma=" << meta["gamma"]
     << " suite=" << meta["suite"].get<std::string>() << '\n';
  auto mark = [](bool b) { return b ? "ok  " : "FAIL"; };
  if (report["orbits"].is_object()) {
    os << "\ndouble cosets\n";
    for (const Json& e : report["orbits"]["double_cosets"])
      os << "  " << mark(e["pass"]) << ' ' << e["name"].get<std::string>() << ": " << e["count"] << " (expected "
         << e["expected"] << ")\n";
    for (const Json& e : report["orbits"]["two_step"])
      os << "  " << mark(e["pass"]) << ' ' << e["name"].get<std::string>() << ": " << e["count"] << '\n';
    for (const Json& e : report["orbits"]["stabilizers"])
      os << "  " << mark(e["pass"]) << ' ' << e["name"].get<std::string>() << ": order " << e["explicit_size"] << '\n';
  }
  if (report["decomposability"].is_object()) {
    int n = 0, good = 0;
    for (const Json& e : report["decomposability"]["conditions"]) {
      ++n;
      if (e["pass"] == true) ++good;
      else
        os << "  FAIL " << e["parabolic"].get<std::string>() << " w=" << e["w"].get<std::string>() << ' '
           << e["subgroup"].get<std::string>() << " witness " << e.value("witness", "") << '\n';
    }
    os << "\ndecomposability: " << good << '/' << n << " conditions hold\n";
    const Json& neg = report["decomposability"]["negative_control"];
    os << "  " << mark(neg["pass"]) << " negative control, witness " << neg["witness"].get<std::string>() << '\n';
  }
  if (report["tables"].is_object()) {
    os << "\ncharacter tables\n";
    for (const Json& e : report["tables"]["orthogonality"])
      os << "  " << mark(e["pass"]) << ' ' << e["group"].get<std::string>() << ": " << e["rows"] << " rows\n";
    const Json& c = report["tables"]["classification"];
    os << "  " << mark(c["pass"]) << " SL2 Whittaker classification\n";
    bool sub = true;
    for (const Json& e : report["tables"]["subgroups"]) sub = sub && e["pass"] == true;
    os << "  " << mark(sub) << " sampled subgroup axioms\n";
  }
  for (const char* s : {"siegel", "klingen"}) {
    if (!report[s].is_array()) continue;
    os << '\n' << s << '\n';
    for (const Json& r : report[s])
      os << "  " << mark(r["verdict"] == "pass") << ' ' << r["inducing"].get<std::string>() << "  ["
         << r["case"].get<std::string>() << "]  dim " << r["dimension"] << "  " << multiplicities(r["computed"]) << '\n';
  }
  for (const Json& note : meta["notes"]) os << "\nnote: " << note.get<std::string>() << '\n';
  os << "\nresult: " << (meta["pass"] == true ? "pass" : "FAIL") << '\n';
  return os.str();
}

}  // namespace

// ------------------------------------------------------------------- public

std::optional<std::string> validate(const RunConfig& c) {
  if (c.q != 3 && c.q != 5 && c.q != 7 && c.q != 11) return "q must be one of 3, 5, 7, 11";
  if (c.gamma < 1 || c.gamma >= c.q) return "gamma must lie in [1, q)";
  static const std::vector<std::string> suites{"orbits", "decomposability", "tables", "siegel", "klingen", "all"};
  if (std::find(suites.begin(), suites.end(), c.suite) == suites.end()) return "unknown suite " + c.suite;
  static const std::vector<std::string> groups{"gl2", "sl2", "o2", "t2", "l", "all"};
  if (std::find(groups.begin(), groups.end(), c.group) == groups.end()) return "unknown group " + c.group;
  if (c.command == Command::verify && c.q == 11 && theorem_suite(c.suite) && !c.deep)
    return "theorem suites at q = 11 need --deep (expect about a minute per suite)";
  if (c.command == Command::tables && c.format == Format::text) return "tables supports json and csv output";
  return std::nullopt;
}

Json orbits_section(int q, bool with_points) {
  const auto t0 = Clock::now();
  const FieldPtr f = Field::make(q);
  const PointSpace l2 = PointSpace::isotropic(f, 2), l1 = PointSpace::isotropic(f, 1);
  const PointSpace line = PointSpace::projective_line(f);
  const SubgroupModel p = subgroup_model("P", f), spsi = subgroup_model("Spsi", f);
  const SubgroupModel o2 = subgroup_model("O2C", f);
  const Mat s1 = sigma(1, q), s2 = sigma(2, q), t1 = tau1(q);
  const Mat t1s1 = t1 * s1;

  Json dc = Json::array();
  dc.push_back(double_coset_entry("P\\Sp4/P", l2, p, 3,
                                  {{"I", sigma(0, q)}, {"sigma1", s1}, {"sigma2", s2}}, with_points));
  dc.push_back(double_coset_entry("Q\\Sp4/P", l1, p, 2, {{"I", klingen_weyl(0, q)}, {"w1", klingen_weyl(1, q)}},
                                  with_points));
  dc.push_back(double_coset_entry("P\\Sp4/Spsi", l2, spsi, 4,
                                  {{"I", sigma(0, q)},
                                   {"sigma1^-1", s1.inverse()},
                                   {"(tau1 sigma1)^-1", t1s1.inverse()},
                                   {"sigma2^-1", s2.inverse()}},
                                  with_points));
  dc.push_back(double_coset_entry("Q\\Sp4/Spsi", l1, spsi, 4,
                                  {{"I", sigma(0, q)},
                                   {"tau1^-1", t1.inverse()},
                                   {"sigma1^-1", s1.inverse()},
                                   {"(tau1 sigma1)^-1", t1s1.inverse()}},
                                  with_points));
  dc.push_back(double_coset_entry("Bbar\\GL2/O2", line, o2, 2, {{"h0", h_elem(0, q)}, {"h1", h_elem(1, q)}},
                                  with_points));

  Json two = Json::array();
  for (const auto& [name, space] : {std::pair<std::string, const PointSpace*>{"P\\Sp4/Spsi via P-orbits", &l2},
                                    std::pair<std::string, const PointSpace*>{"Q\\Sp4/Spsi via P-orbits", &l1}}) {
    const TwoStepResult r = two_step_representatives(*space, p, spsi);
    two.push_back(Json{{"name", name}, {"count", r.representatives.size()}, {"pass", r.ok && r.representatives.size() == 4}});
  }

  Json stab = Json::array();
  for (int j = 0; j <= 2; ++j) {
    const StabilizerCheck c = verify_stabilizer(j, StabilizerKind::siegel, f);
    stab.push_back(Json{{"name", "H" + std::to_string(j)},
                        {"explicit_size", c.explicit_size},
                        {"expected_size", c.expected_size},
                        {"pass", c.ok}});
  }
  for (int j = 0; j <= 1; ++j) {
    const StabilizerCheck c = verify_stabilizer(j, StabilizerKind::klingen, f);
    stab.push_back(Json{{"name", "D" + std::to_string(j)},
                        {"explicit_size", c.explicit_size},
                        {"expected_size", c.expected_size},
                        {"pass", c.ok}});
  }
  return Json{{"double_cosets", dc}, {"two_step", two}, {"stabilizers", stab}, {"elapsed_ms", ms_since(t0)}};
}

Json decomposability_section(int q) {
  const auto t0 = Clock::now();
  const FieldPtr f = Field::make(q);
  const Factorization mpsi_n = standard_factorization("Mpsi", f);
  const Factorization m_n = standard_factorization("M", f);
  const Factorization l_u = standard_factorization("L", f);
  const Mat s1 = sigma(1, q), s2 = sigma(2, q), t1 = tau1(q), id = Mat::identity(4, q);

  Json conds = Json::array();
  auto check = [&](const std::string& parabolic, const std::string& wname, const Mat& w, const std::string& group,
                   bool inverse, const Factorization& pair) {
    const SubgroupModel h = conjugate(subgroup_model(group, f), inverse ? w.inverse() : w);
    const DecompositionResult r = decomposability_check(h, pair);
    Json e{{"parabolic", parabolic},
           {"w", wname},
           {"subgroup", (inverse ? "w^-1(" : "w(") + group + ")"},
           {"pair", "(" + pair.first + "," + pair.second + ")"},
           {"intersection_size", r.intersection_size},
           {"pass", r.decomposable}};
    if (r.witness) e["witness"] = r.witness->hex();
    conds.push_back(e);
  };
  const std::vector<std::pair<std::string, Mat>> siegel_w{
      {"I", id}, {"sigma1", s1}, {"tau1 sigma1", t1 * s1}, {"sigma2", s2}};
  const std::vector<std::pair<std::string, Mat>> klingen_w{
      {"I", id}, {"tau1", t1}, {"sigma1", s1}, {"tau1 sigma1", t1 * s1}};
  for (const auto& [name, w] : siegel_w) {
    for (const char* g : {"P", "M", "N"}) check("siegel", name, w, g, false, mpsi_n);
    for (const char* g : {"Spsi", "Mpsi", "N"}) check("siegel", name, w, g, true, m_n);
  }
  for (const auto& [name, w] : klingen_w) {
    for (const char* g : {"Q", "L", "U"}) check("klingen", name, w, g, false, mpsi_n);
    for (const char* g : {"Spsi", "Mpsi", "N"}) check("klingen", name, w, g, true, l_u);
  }

  // H = {1, h} with h = beta(diag(-1, 1)) n([[0,1],[1,0]]): h lies in M_psi N
  // but neither factor lies in H.
  const Mat h = embed_beta(Mat::diag(q, {-1, 1})) * n_of(Mat(2, q, {0, 1, 1, 0}));
  const GroupSet hs("H-negative", {id, h});
  const DecompositionResult neg =
      decomposability_check(hs, named_subgroup("Mpsi", f), named_subgroup("N", f));
  Json negative{{"subgroup", "{I, beta(diag(-1,1)) n([[0,1],[1,0]])}"},
                {"pair", "(Mpsi,N)"},
                {"decomposable", neg.decomposable},
                {"witness", neg.witness ? neg.witness->hex() : std::string()},
                {"pass", !neg.decomposable && neg.witness.has_value()}};
  return Json{{"conditions", conds}, {"negative_control", negative}, {"elapsed_ms", ms_since(t0)}};
}

Json tables_section(int q, std::uint64_t seed) {
  const auto t0 = Clock::now();
  const auto t = tables_for(q);
  Json orth = Json::array();
  for (const IrrTable* table : {&t->gl2, &t->sl2, &t->o2, &t->t2, &t->l}) {
    const OrthogonalityResult r = verify_orthogonality(*table);
    Json e{{"group", table->group_name},
           {"rows", table->size()},
           {"classes", table->classes->count()},
           {"order", table->classes->order()},
           {"max_row_error", r.max_row_error < 1e-12 ? 0.0 : r.max_row_error},
           {"max_column_error", r.max_column_error < 1e-12 ? 0.0 : r.max_column_error},
           {"degree_square_sum", r.degree_square_sum},
           {"pass", r.ok}};
    if (!r.detail.empty()) e["detail"] = r.detail;
    orth.push_back(e);
  }
  return Json{{"orthogonality", orth},
              {"classification", classification(*t)},
              {"subgroups", subgroup_samples(t->field, seed)},
              {"elapsed_ms", ms_since(t0)}};
}

Json theorem_section(const std::vector<VerificationReport>& reports, bool timings) {
  Json out = Json::array();
  for (const VerificationReport& r : reports) out.push_back(report_json(r, timings));
  return out;
}

RunResult run(const RunConfig& c) {
  if (auto err = validate(c)) throw std::invalid_argument(*err);
  RunResult res;
  Json& rep = res.report;
  rep["meta"] = Json{{"tool", "sp4tj"},
                     {"version", kVersion},
                     {"command", to_string(c.command)},
                     {"q", c.q},
                     {"gamma", c.gamma},
                     {"square_class", legendre(FieldElem(c.gamma, c.q))},
                     {"suite", c.command == Command::verify ? c.suite : std::string(to_string(c.command))},
                     {"deep", c.deep},
                     {"seed", c.seed},
                     {"notes", Json::array()}};
  for (const char* k : {"orbits", "decomposability", "tables", "siegel", "klingen"}) rep[k] = nullptr;

  const auto t0 = Clock::now();
  auto want = [&](const char* s) { return c.command == Command::verify && (c.suite == s || c.suite == "all"); };
  if (c.command == Command::orbits) rep["orbits"] = orbits_section(c.q, true);
  if (c.command == Command::tables) {
    const auto t = tables_for(c.q);
    Json tables = Json::object();
    for (const IrrTable* table : {&t->gl2, &t->sl2, &t->o2, &t->t2, &t->l}) {
      std::string key = table->group_name;
      std::transform(key.begin(), key.end(), key.begin(), [](unsigned char ch) { return std::tolower(ch); });
      if (c.group != "all" && c.group != key) continue;
      Json rows = Json::array();
      for (const IrrRow& r : table->rows) {
        Json values = Json::array();
        for (const Complex& v : r.character.values()) values.push_back(format_complex(v));
        rows.push_back(Json{{"label", r.label.name}, {"cuspidal", r.label.cuspidal}, {"values", values}});
      }
      Json classes = Json::array();
      for (std::size_t i = 0; i < table->classes->count(); ++i)
        classes.push_back(Json{{"representative", table->classes->reps[i].hex()}, {"size", table->classes->sizes[i]}});
      tables[key] = Json{{"classes", classes}, {"rows", rows}, {"csv", to_csv(*table)}};
    }
    rep["tables"] = tables;
  }
  if (want("orbits")) rep["orbits"] = orbits_section(c.q, false);
  if (want("decomposability")) rep["decomposability"] = decomposability_section(c.q);
  if (want("tables")) rep["tables"] = tables_section(c.q, c.seed);
  const bool theorems_allowed = c.q != 11 || c.deep;
  if (!theorems_allowed && c.suite == "all")
    rep["meta"]["notes"].push_back("theorem suites skipped at q = 11; pass --deep to run them");
  if (theorems_allowed && want("siegel")) rep["siegel"] = theorem_section(verify_siegel(c.q, c.gamma), c.timings);
  if (theorems_allowed && want("klingen")) rep["klingen"] = theorem_section(verify_klingen(c.q, c.gamma), c.timings);

  res.pass = all_pass(rep["orbits"]) && all_pass(rep["decomposability"]) && all_pass(rep["siegel"]) &&
             all_pass(rep["klingen"]) && (c.command == Command::tables || all_pass(rep["tables"]));
  rep["meta"]["pass"] = res.pass;
  if (c.timings) rep["meta"]["elapsed_ms"] = ms_since(t0);
  else strip_timings(rep);
  return res;
}

std::string render(const RunResult& result, const RunConfig& c) {
  if (c.command == Command::tables && c.format == Format::csv) {
    std::string out;
    for (const auto& [k, v] : result.report["tables"].items()) out += "# " + k + "\n" + v["csv"].get<std::string>();
    return out;
  }
  switch (c.format) {
    case Format::json: return result.report.dump(2) + "\n";
    case Format::csv: return render_csv(result.report);
    case Format::text: return render_text(result.report);
  }
  return {};
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
  }
}

bool revalidate(const Json& report, std::string* why) {
  for (const char* s : {"siegel", "klingen"}) {
    if (!report.contains(s) || !report[s].is_array()) continue;
    for (const Json& r : report[s]) {
      const bool equal = r["computed"] == r["predicted"];
      const bool pass = r["verdict"] == "pass";
      if (pass && !equal) {
        if (why) *why = std::string(s) + " " + r["inducing"].get<std::string>() + " passes with unequal vectors";
        return false;
      }
      if (!pass && equal && r.value("case_consistent", true) && !r.contains("detail")) {
        if (why) *why = std::string(s) + " " + r["inducing"].get<std::string>() + " fails with equal vectors";
        return false;
      }
    }
  }
  return true;
}

}  // namespace sp4tj::cli
