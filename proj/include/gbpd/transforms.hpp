#pragma once

#include <functional>

#include "gbpd/field.hpp"

namespace gbpd {

/// Zeta transform on degree 0: U_a = Σ_{b∈Λ^a} [u_b]_a.
Field zeta0(const Complex& C, const Field& u);

/// Möbius transform on degree 0, inverse of zeta0:
/// u_a = Σ_{b∈Λ^a} μ_{ab} [U_b]_a.
Field mobius0(const Complex& C, const Field& U);

/// Extended zeta transform on degree 1 (X must be ∩-closed):
/// ζ(φ)_{ab} = Σ_{b'∈Λ^a∖Λ^b} Σ_{c'∈Λ^b} [φ_{b'c'}]_b.
Field zeta1(const Complex& C, const Field& phi);

/// Extended Möbius transform on degree 1, inverse of zeta1, evaluated by
/// the two-stage ν recursion.
Field mobius1(const Complex& C, const Field& Phi);

/// Conjugation combinators for operators between fields of fixed degrees.
using FieldOp = std::function<Field(const Complex&, const Field&)>;

/// T^ζ = ζ ∘ T ∘ μ with degree-matching transforms (degrees 0 and 1 only).
FieldOp zeta_conjugate(FieldOp T, int in_degree, int out_degree);
/// T^μ = μ ∘ T ∘ ζ.
FieldOp mu_conjugate(FieldOp T, int in_degree, int out_degree);

namespace ref {
/// Direct-sum serial forms of the four transforms, kept as references.
Field zeta0(const Complex& C, const Field& u);
Field mobius0(const Complex& C, const Field& U);
Field zeta1(const Complex& C, const Field& phi);
/// Closed-form extended Möbius transform (double loop over cone pairs);
/// validates the ν recursion on small fixtures.
Field mobius1(const Complex& C, const Field& Phi);
} // namespace ref

} // namespace gbpd
