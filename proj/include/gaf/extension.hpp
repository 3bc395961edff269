#pragma once

#include <functional>

#include "gaf/group.hpp"

namespace gaf {

// (A, X, Y) with law (A, X, Y)(B, P, Q) = (A + Y B, X P, Y Q). Y acts on the translation slot.
struct AuxiliaryElement {
  Vec A;
  Mat X;
  Mat Y;
};

AuxiliaryElement compose(const AuxiliaryElement& p, const AuxiliaryElement& q);
AuxiliaryElement invert(const AuxiliaryElement& p);
// (b, h) -> (b, I, h)
AuxiliaryElement embed_affine(const GroupElement& g);

// Solvable analogue (n, a, b) on N x A x A, law (x, a, b)(y, c, d) = (x * b y b^-1, a c, b d).
struct SolvableAuxElement {
  Mat n;  // unipotent
  Vec a;  // positive diagonal entries
  Vec b;
};

SolvableAuxElement compose(const SolvableAuxElement& p, const SolvableAuxElement& q);
SolvableAuxElement invert(const SolvableAuxElement& p);

// b n b^-1 for unipotent n and positive diagonal b.
Mat conjugate_by_diagonal(const Mat& n, const Vec& b);

using AuxiliaryFunction = std::function<cplx(const AuxiliaryElement&)>;
// f on S given as f(n, a) for the element n * a.
using SolvableFunction = std::function<cplx(const Mat& n, const Vec& a)>;
using SolvableAuxFunction = std::function<cplx(const SolvableAuxElement&)>;
// f on G x K
using UpsilonFunction = std::function<cplx(const GroupElement& g, const GroupElement& k)>;

// f~(A, X, Y) = f(X A, X Y), f given on affine elements.
AuxiliaryFunction tilde_extend(GroupFunction f);
// f~(n, a, b) = f(a n a^-1, a b)
SolvableAuxFunction tilde_extend_solvable(SolvableFunction f);
// Y(f)(g, k) = f(g k)
UpsilonFunction upsilon_extend(GroupFunction f);

}  // namespace gaf
