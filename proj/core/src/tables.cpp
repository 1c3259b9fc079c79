#include "sp4tj/tables.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace sp4tj {

namespace {

std::shared_ptr<const GroupSet> shared_group(GroupSet g) {
  return std::make_shared<const GroupSet>(std::move(g));
}

std::string str(int v) { return std::to_string(v); }

/// sqrt(x / delta) for a non-square x.
FieldElem root_over_delta(FieldElem x, const Field& f) {
  const auto s = f.sqrt(x * f.delta().inv());
  if (!s) throw std::logic_error("quotient of non-squares is not a square");
  return *s;
}

bool is_scalar(const Mat& g) { return g.at(0, 1) == 0 && g.at(1, 0) == 0 && g.at(0, 0) == g.at(1, 1); }

IrrRow make_row(IrrFamily fam, std::vector<int> params, std::string name, bool cusp, ClassFunction chi) {
  return IrrRow{IrrepLabel{fam, std::move(params), std::move(name), cusp}, std::move(chi)};
}

/// Dimension of the psi0(gamma x)-eigenspace of the upper unipotent group.
double whittaker_dim(const ClassFunction& chi, const ClassData& sl2, const Field& f, int gamma) {
  Complex s = 0;
  for (FieldElem x : f.elements())
    s += std::conj(psi0(x * f(gamma))) * chi[sl2.class_of_elem(unipotent_upper(x))];
  return (s / static_cast<double>(f.q())).real();
}

}  // namespace

Gl2Type classify_gl2(const Mat& g, const Field& f) {
  Gl2Type t{Gl2Type::central, f(0), f(0), f.ext(0, 0)};
  if (is_scalar(g)) {
    t.a = g(0, 0);
    return t;
  }
  const FieldElem half = f(2).inv();
  const FieldElem tr = g.trace(), disc = tr * tr - f(4) * g.det();
  if (disc.is_zero()) {
    t.kind = Gl2Type::nonsemisimple;
    t.a = tr * half;
  } else if (legendre(disc) == 1) {
    const FieldElem s = *f.sqrt(disc);
    t.kind = Gl2Type::split;
    t.a = (tr + s) * half;
    t.b = (tr - s) * half;
  } else {
    t.kind = Gl2Type::elliptic;
    t.z = f.ext(tr * half, root_over_delta(disc, f) * half);
  }
  return t;
}

Sl2Type classify_sl2(const Mat& g, const Field& f) {
  Sl2Type t{Sl2Type::central, f(1), 0, f.ext(0, 0)};
  if (g.det().value() != 1) throw std::invalid_argument("not an element of SL2");
  if (is_scalar(g)) {
    t.z = g(0, 0);
    return t;
  }
  const FieldElem half = f(2).inv();
  const FieldElem tr = g.trace();
  if (tr == f(2) || tr == f(-2)) {
    t.kind = Sl2Type::unipotent;
    t.z = tr * half;
    const Mat u = g.scaled(t.z);
    t.square_class = u.at(0, 1) != 0 ? legendre(u(0, 1)) : legendre(-u(1, 0));
    return t;
  }
  const FieldElem disc = tr * tr - f(4);
  if (legendre(disc) == 1) {
    t.kind = Sl2Type::split;
    t.z = (tr + *f.sqrt(disc)) * half;
  } else {
    t.kind = Sl2Type::elliptic;
    t.w = f.ext(tr * half, root_over_delta(disc, f) * half);
  }
  return t;
}

Mat o2_to_t2(const Mat& g) { return Mat(2, g.q(), {g.at(0, 0), 0, 0, g.at(1, 1)}); }

IrrTable gl2_irr_table(const FieldPtr& fp) {
  const Field& f = *fp;
  const int q = f.q();
  const double dq = q;
  auto cd = conjugacy_classes(shared_group(named_subgroup("GL2", fp)));
  std::vector<Gl2Type> types;
  for (const Mat& r : cd->reps) types.push_back(classify_gl2(r, f));
  const auto alpha = mult_char_table(fp, CharDomain::base);
  const auto theta = mult_char_table(fp, CharDomain::extension);

  auto row = [&](auto value) {
    std::vector<Complex> v;
    for (const Gl2Type& t : types) v.push_back(value(t));
    return ClassFunction(cd, v);
  };

  IrrTable table{"GL2", cd, {}};
  for (int i = 0; i < q - 1; ++i) {
    const MultChar& a = alpha[i];
    table.rows.push_back(make_row(IrrFamily::gl2_linear, {i}, "lin(" + str(i) + ")", false, row([&](const Gl2Type& t) -> Complex {
      switch (t.kind) {
        case Gl2Type::central: return a(t.a * t.a);
        case Gl2Type::nonsemisimple: return a(t.a * t.a);
        case Gl2Type::split: return a(t.a * t.b);
        case Gl2Type::elliptic: return a(t.z.norm());
      }
      return 0.0;
    })));
  }
  for (int i = 0; i < q - 1; ++i) {
    const MultChar& a = alpha[i];
    table.rows.push_back(make_row(IrrFamily::gl2_steinberg, {i}, "st(" + str(i) + ")", false, row([&](const Gl2Type& t) -> Complex {
      switch (t.kind) {
        case Gl2Type::central: return dq * a(t.a * t.a);
        case Gl2Type::nonsemisimple: return 0.0;
        case Gl2Type::split: return a(t.a * t.b);
        case Gl2Type::elliptic: return -a(t.z.norm());
      }
      return 0.0;
    })));
  }
  for (int i = 0; i < q - 1; ++i)
    for (int j = i + 1; j < q - 1; ++j) {
      const MultChar &a = alpha[i], &b = alpha[j];
      table.rows.push_back(make_row(IrrFamily::gl2_principal, {i, j}, "ps(" + str(i) + "," + str(j) + ")", false,
                                    row([&](const Gl2Type& t) -> Complex {
                                      switch (t.kind) {
                                        case Gl2Type::central: return (dq + 1) * a(t.a) * b(t.a);
                                        case Gl2Type::nonsemisimple: return a(t.a) * b(t.a);
                                        case Gl2Type::split: return a(t.a) * b(t.b) + a(t.b) * b(t.a);
                                        case Gl2Type::elliptic: return 0.0;
                                      }
                                      return 0.0;
                                    })));
    }
  const int n2 = q * q - 1;
  for (int k = 1; k < n2; ++k) {
    const int kq = k * q % n2;
    if (k % (q + 1) == 0 || kq < k) continue;  // theta = theta^q, or not the orbit's least exponent
    const MultChar& th = theta[k];
    table.rows.push_back(make_row(IrrFamily::gl2_cuspidal, {k}, "cusp(" + str(k) + ")", true, row([&](const Gl2Type& t) -> Complex {
      switch (t.kind) {
        case Gl2Type::central: return (dq - 1) * th(t.a);
        case Gl2Type::nonsemisimple: return -th(t.a);
        case Gl2Type::split: return 0.0;
        case Gl2Type::elliptic: return -(th(t.z) + th(t.z.frobenius()));
      }
      return 0.0;
    })));
  }
  return table;
}

IrrTable sl2_irr_table(const FieldPtr& fp) {
  const Field& f = *fp;
  const int q = f.q();
  const double dq = q;
  auto cd = conjugacy_classes(shared_group(named_subgroup("SL2", fp)));
  std::vector<Sl2Type> types;
  for (const Mat& r : cd->reps) types.push_back(classify_sl2(r, f));
  const auto alpha = mult_char_table(fp, CharDomain::base);
  const auto theta = mult_char_table(fp, CharDomain::extension);  // theta_j restricts to phi_j on norm-one elements
  const Complex gauss = f.gauss_sum();

  auto row = [&](auto value) {
    std::vector<Complex> v;
    for (const Sl2Type& t : types) v.push_back(value(t));
    return ClassFunction(cd, v);
  };
  auto zext = [&](FieldElem z) { return f.ext(z, f(0)); };

  IrrTable table{"SL2", cd, {}};
  table.rows.push_back(make_row(IrrFamily::sl2_trivial, {}, "triv", false, row([](const Sl2Type&) { return Complex(1.0); })));
  table.rows.push_back(make_row(IrrFamily::sl2_steinberg, {}, "st", false, row([&](const Sl2Type& t) -> Complex {
    switch (t.kind) {
      case Sl2Type::central: return dq;
      case Sl2Type::unipotent: return 0.0;
      case Sl2Type::split: return 1.0;
      case Sl2Type::elliptic: return -1.0;
    }
    return 0.0;
  })));
  for (int i = 1; 2 * i < q - 1; ++i) {
    const MultChar& a = alpha[i];
    table.rows.push_back(make_row(IrrFamily::sl2_principal, {i}, "ps(" + str(i) + ")", false, row([&](const Sl2Type& t) -> Complex {
      switch (t.kind) {
        case Sl2Type::central: return (dq + 1) * a(t.z);
        case Sl2Type::unipotent: return a(t.z);
        case Sl2Type::split: return a(t.z) + a(t.z.inv());
        case Sl2Type::elliptic: return 0.0;
      }
      return 0.0;
    })));
  }
  for (int j = 1; 2 * j < q + 1; ++j) {
    const MultChar& ph = theta[j];
    table.rows.push_back(make_row(IrrFamily::sl2_cuspidal, {j}, "cusp(" + str(j) + ")", true, row([&](const Sl2Type& t) -> Complex {
      switch (t.kind) {
        case Sl2Type::central: return (dq - 1) * ph(zext(t.z));
        case Sl2Type::unipotent: return -ph(zext(t.z));
        case Sl2Type::split: return 0.0;
        case Sl2Type::elliptic: return -(ph(t.w) + ph(t.w.inv()));
      }
      return 0.0;
    })));
  }

  // The four half representations; sign picks the Gauss-sum branch.
  const MultChar& sgn = alpha[(q - 1) / 2];
  const MultChar& ph0 = theta[(q + 1) / 2];
  auto half_ps = [&](int sign) {
    return row([&, sign](const Sl2Type& t) -> Complex {
      switch (t.kind) {
        case Sl2Type::central: return (dq + 1) / 2 * sgn(t.z);
        case Sl2Type::unipotent: return sgn(t.z) * (1.0 + double(sign * t.square_class) * gauss) / 2.0;
        case Sl2Type::split: return sgn(t.z);
        case Sl2Type::elliptic: return 0.0;
      }
      return 0.0;
    });
  };
  auto half_cusp = [&](int sign) {
    return row([&, sign](const Sl2Type& t) -> Complex {
      switch (t.kind) {
        case Sl2Type::central: return (dq - 1) / 2 * ph0(zext(t.z));
        case Sl2Type::unipotent: return ph0(zext(t.z)) * (-1.0 + double(sign * t.square_class) * gauss) / 2.0;
        case Sl2Type::split: return 0.0;
        case Sl2Type::elliptic: return -ph0(t.w);
      }
      return 0.0;
    });
  };
  // Label each pair by which member has a vector fixed by psi0(x) on the
  // upper unipotent group.
  auto ordered_pair = [&](ClassFunction plus, ClassFunction minus) {
    if (whittaker_dim(plus, *cd, f, 1) > 0.5) return std::make_pair(plus, minus);
    return std::make_pair(minus, plus);
  };
  auto [t1, t2] = ordered_pair(half_ps(1), half_ps(-1));
  auto [t1p, t2p] = ordered_pair(half_cusp(1), half_cusp(-1));
  table.rows.push_back(make_row(IrrFamily::sl2_tau1, {}, "tau1", false, t1));
  table.rows.push_back(make_row(IrrFamily::sl2_tau2, {}, "tau2", false, t2));
  table.rows.push_back(make_row(IrrFamily::sl2_tau1p, {}, "tau1'", true, t1p));
  table.rows.push_back(make_row(IrrFamily::sl2_tau2p, {}, "tau2'", true, t2p));
  return table;
}

IrrTable o2_irr_table(const FieldPtr& fp) {
  const Field& f = *fp;
  const int q = f.q();
  auto group = shared_group(named_subgroup("O2C", fp));
  auto cd = conjugacy_classes(group);
  const auto alpha = mult_char_table(fp, CharDomain::base);
  IrrTable table{"O2", cd, {}};
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < q - 1; ++i) {
      const MultChar& mu = alpha[i];
      table.rows.push_back(make_row(IrrFamily::o2_linear, {e, i}, "lin(" + str(e) + "," + str(i) + ")", false,
                                    tabulate(cd, [&](const Mat& g) {
                                      const double s = (e == 1 && g.at(0, 0) == q - 1) ? -1.0 : 1.0;
                                      return s * mu(g(1, 1));
                                    })));
    }
  // Little-group construction: extend psi0 on the lower unipotent part by a
  // sign of the scalars +-1 and induce to O2.
  std::vector<Mat> h_elems;
  for (int a : {1, q - 1})
    for (int y = 0; y < q; ++y) h_elems.push_back(Mat(2, q, {a, 0, y, a}));
  auto h = shared_group(GroupSet("O2-stab", h_elems));
  auto hcd = conjugacy_classes(h);
  const auto transversal = left_transversal(*group, *h);
  for (int e = 0; e < 2; ++e) {
    const ClassFunction lambda = tabulate(hcd, [&](const Mat& x) {
      const double s = (e == 1 && x.at(0, 0) == q - 1) ? -1.0 : 1.0;
      return s * psi0(x(1, 0) * x(0, 0));
    });
    table.rows.push_back(make_row(IrrFamily::o2_induced, {e}, "ind(" + str(e) + ")", false,
                                  induce(lambda, cd, transversal)));
  }
  return table;
}

IrrTable t2_irr_table(const FieldPtr& fp) {
  const Field& f = *fp;
  const int q = f.q();
  auto cd = conjugacy_classes(shared_group(named_subgroup("T2C", fp)));
  const auto alpha = mult_char_table(fp, CharDomain::base);
  IrrTable table{"T2", cd, {}};
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < q - 1; ++i) {
      const MultChar& mu = alpha[i];
      table.rows.push_back(make_row(IrrFamily::t2_linear, {e, i}, "t2(" + str(e) + "," + str(i) + ")", false,
                                    tabulate(cd, [&](const Mat& g) {
                                      const double s = (e == 1 && g.at(0, 0) == q - 1) ? -1.0 : 1.0;
                                      return s * mu(g(1, 1));
                                    })));
    }
  return table;
}

IrrTable l_irr_table(const FieldPtr& fp, const IrrTable& sl2) {
  const Field& f = *fp;
  const int q = f.q();
  auto group = shared_group(named_subgroup("L", fp));
  const ClassData& s = *sl2.classes;
  const std::size_t ns = s.count();
  auto cd = std::make_shared<ClassData>();
  cd->group = group;
  cd->reps.resize((q - 1) * ns, Mat::identity(4, q));
  cd->sizes.resize((q - 1) * ns);
  for (int k = 0; k < q - 1; ++k)
    for (std::size_t c = 0; c < ns; ++c) {
      cd->reps[k * ns + c] = embed_alpha(f.generator().pow(k), s.reps[c]);
      cd->sizes[k * ns + c] = s.sizes[c];
    }
  cd->class_of.resize(group->size());
  for (std::size_t i = 0; i < group->size(); ++i) {
    const LeviPart lp = levi_part((*group)[i], Parabolic::klingen);
    cd->class_of[i] = static_cast<std::uint32_t>(f.log(lp.t) * ns + s.class_of_elem(lp.g));
  }
  cd->identity_class = s.identity_class;
  ClassDataPtr classes = cd;

  IrrTable table{"L", classes, {}};
  for (int i = 0; i < q - 1; ++i)
    for (std::size_t j = 0; j < sl2.rows.size(); ++j) {
      const IrrRow& tau = sl2.rows[j];
      std::vector<Complex> v(classes->count());
      for (int k = 0; k < q - 1; ++k)
        for (std::size_t c = 0; c < ns; ++c) v[k * ns + c] = root_of_unity(static_cast<long long>(i) * k, q - 1) * tau.character[c];
      table.rows.push_back(make_row(IrrFamily::l_product, {i, static_cast<int>(j)}, "eta(" + str(i) + ")*" + tau.label.name,
                                    tau.label.cuspidal, ClassFunction(classes, v)));
    }
  return table;
}

std::shared_ptr<const Tables> tables_for(int q) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Tables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<Tables>();
  t->field = Field::make(q);
  t->gl2 = gl2_irr_table(t->field);
  t->sl2 = sl2_irr_table(t->field);
  t->o2 = o2_irr_table(t->field);
  t->t2 = t2_irr_table(t->field);
  t->l = l_irr_table(t->field, t->sl2);
  cache.emplace(q, t);
  return t;
}

}  // namespace sp4tj
