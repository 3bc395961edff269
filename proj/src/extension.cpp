#include "gaf/extension.hpp"

#include "gaf/errors.hpp"

namespace gaf {

AuxiliaryElement compose(const AuxiliaryElement& p, const AuxiliaryElement& q) {
  if (p.A.size() != q.A.size()) throw ContractViolation("compose: dimension mismatch");
  return AuxiliaryElement{p.A + p.Y * q.A, p.X * q.X, p.Y * q.Y};
}

AuxiliaryElement invert(const AuxiliaryElement& p) {
  Mat yi = p.Y.inverse();
  return AuxiliaryElement{-(yi * p.A), p.X.inverse(), yi};
}

AuxiliaryElement embed_affine(const GroupElement& g) {
  if (g.tag() != GroupTag::Affine) throw ContractViolation("embed_affine: element is not affine");
  return AuxiliaryElement{g.translation(), Mat::Identity(g.dim(), g.dim()), g.matrix()};
}

Mat conjugate_by_diagonal(const Mat& n, const Vec& b) {
  Mat out = n;
  for (int i = 0; i < n.rows(); ++i)
    for (int j = i + 1; j < n.cols(); ++j) out(i, j) = n(i, j) * b(i) / b(j);
  return out;
}

SolvableAuxElement compose(const SolvableAuxElement& p, const SolvableAuxElement& q) {
  if (p.n.rows() != q.n.rows()) throw ContractViolation("compose: dimension mismatch");
  return SolvableAuxElement{p.n * conjugate_by_diagonal(q.n, p.b), p.a.cwiseProduct(q.a), p.b.cwiseProduct(q.b)};
}

SolvableAuxElement invert(const SolvableAuxElement& p) {
  Vec bi = p.b.cwiseInverse();
  return SolvableAuxElement{conjugate_by_diagonal(detail::unipotent_inverse(p.n), bi), p.a.cwiseInverse(), bi};
}

AuxiliaryFunction tilde_extend(GroupFunction f) {
  return [f = std::move(f)](const AuxiliaryElement& e) {
    return f(GroupElement::trusted(GroupTag::Affine, e.X * e.Y, e.X * e.A));
  };
}

SolvableAuxFunction tilde_extend_solvable(SolvableFunction f) {
  return [f = std::move(f)](const SolvableAuxElement& e) {
    return f(conjugate_by_diagonal(e.n, e.a), e.a.cwiseProduct(e.b));
  };
}

UpsilonFunction upsilon_extend(GroupFunction f) {
  return [f = std::move(f)](const GroupElement& g, const GroupElement& k) {
    return f(GroupElement::trusted(g.tag(), g.matrix() * k.matrix()));
  };
}

}  // namespace gaf
