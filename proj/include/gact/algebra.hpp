#pragma once

#include <complex>
#include <memory>
#include <optional>

#include "gact/actor.hpp"
#include "gact/linalg.hpp"
#include "gact/twist.hpp"

namespace gact {

using SparseVec = std::vector<std::pair<int, Cyc>>;

/// Finite-dimensional *-algebra over a cyclotomic field, given by structure
/// constants. Elements are dense coordinate vectors in the given basis.
/// `distinguished` lists the basis indices spanning the canonical
/// subalgebra (unit arrows for groupoid algebras).
struct StarAlgebra {
  FieldPtr field;
  int dim = 0;
  std::vector<std::vector<SparseVec>> prod;  // [a][b] -> combination
  std::vector<SparseVec> star;               // conjugate-linear on coeffs
  std::vector<int> distinguished;
  GroupoidPtr base;               // set for groupoid/section algebras
  std::vector<int> arrow_offset;  // with base: basis index of (arrow, 0)
  std::vector<int> fibre_dim;     // with base: fibre dimension per arrow

  CVec zero() const { return cvec_zero(field, dim); }
  CVec basis(int i) const;
  CVec mul(const CVec& x, const CVec& y) const;
  CVec star_of(const CVec& x) const;
  /// Two-sided unit, when one exists.
  std::optional<CVec> unit() const;
  bool same_structure(const StarAlgebra& o) const;
};

using AlgebraPtr = std::shared_ptr<const StarAlgebra>;

/// Associativity, involution axioms, and the distinguished-subalgebra
/// axioms (commuting self-adjoint idempotents summing to the unit).
Report validate_star_algebra(const StarAlgebra& a);

/// Linear map between star algebras; column j is the image of basis j.
/// Multiplicativity and *-preservation are checkable, never assumed.
struct AlgebraHom {
  AlgebraPtr src;
  AlgebraPtr tgt;
  CMat matrix;  // tgt.dim rows x src.dim cols

  CVec apply(const CVec& x) const { return cmat_apply(matrix, x); }
};

/// (Twisted) convolution algebra of a finite groupoid: basis = arrows,
/// d_a d_b = sigma(a,b) d_{ab} for composable pairs, d_g^* =
/// conj(sigma(g, g^{-1})) d_{g^{-1}}.
AlgebraPtr convolution_algebra(const GroupoidPtr& g, const FieldPtr& field,
                               const std::optional<Twist>& twist = {});

/// phi_h(d_g) = sum over units t with anchor t = src(g) of d_{g.t}.
AlgebraHom induced_hom(const Actor& h, const FieldPtr& field);

/// Exhaustive check phi(ab) = phi(a)phi(b), phi(a*) = phi(a)* on the basis.
Report verify_star_hom(const AlgebraHom& phi);

AlgebraHom compose_homs(const AlgebraHom& phi2, const AlgebraHom& phi1);

/// induced_hom(compose_actors(k, h)) == compose_homs(...), exact.
bool functoriality_check(const Actor& k, const Actor& h,
                         const FieldPtr& field);

/// E(d_g) = d_g for distinguished g, else 0 (restriction to the unit space).
AlgebraHom expectation(const AlgebraPtr& a);

/// E_tgt(phi(d)) == phi(E_src(d)) for every basis element, exact.
bool entwines_expectations(const AlgebraHom& phi);

/// Basis of ker(phi) by exact elimination.
std::vector<CVec> kernel(const AlgebraHom& phi);

/// Free actor with surjective anchor gives an injective induced hom.
bool injectivity_check(const Actor& h, const FieldPtr& field);

/// n normalises the distinguished subalgebra: n* d n and n d n* stay inside.
bool is_normaliser(const StarAlgebra& a, const CVec& n);

/// Partial bijection alpha_n on distinguished points with the defining
/// identity n* d_x n = (n*n)(x) d_{alpha(x)} summed over the domain;
/// throws on a non-normaliser.
PartialBij alpha_of(const StarAlgebra& a, const CVec& n);

/// Operator norm of left convolution by f on l2(basis); numeric surface
/// (double-precision embedding).
double regular_norm(const StarAlgebra& a, const CVec& f);

/// Dimension of the centre, by exact linear algebra.
int centre_dimension(const StarAlgebra& a);

}  // namespace gact
