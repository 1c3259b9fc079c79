#pragma once

#include <memory>

#include "sp4tj/chars.hpp"
#include "sp4tj/ff.hpp"
#include "sp4tj/mat.hpp"

namespace sp4tj {

/// Rational canonical type of an element of GL2(F_q).
struct Gl2Type {
  enum Kind { central, nonsemisimple, split, elliptic } kind;
  FieldElem a, b;  // eigenvalues in F_q (b only for split)
  ExtFieldElem z;  // one eigenvalue for elliptic elements
};
Gl2Type classify_gl2(const Mat& g, const Field& field);

/// Type of an element of SL2(F_q). Unipotent elements carry the sign z and
/// the square class (+1 or -1) of x in z * [[1, x], [0, 1]].
struct Sl2Type {
  enum Kind { central, unipotent, split, elliptic } kind;
  FieldElem z;     // +-1 for central and unipotent, an eigenvalue for split
  int square_class = 0;
  ExtFieldElem w;  // one eigenvalue for elliptic elements
};
Sl2Type classify_sl2(const Mat& g, const Field& field);

IrrTable gl2_irr_table(const FieldPtr& field);
IrrTable sl2_irr_table(const FieldPtr& field);
IrrTable o2_irr_table(const FieldPtr& field);
IrrTable t2_irr_table(const FieldPtr& field);
/// Irr(F_q^x x SL2) as outer products; classes are products of classes.
IrrTable l_irr_table(const FieldPtr& field, const IrrTable& sl2);

/// [[a, 0], [y, d]] -> diag(a, d).
Mat o2_to_t2(const Mat& g);

/// All tables for one q.
struct Tables {
  FieldPtr field;
  IrrTable gl2, sl2, o2, t2, l;
};
/// Built once per q and shared; safe to call from several threads.
std::shared_ptr<const Tables> tables_for(int q);

}  // namespace sp4tj
