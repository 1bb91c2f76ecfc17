#pragma once

#include <utility>

#include "gbpd/field.hpp"

namespace gbpd {

/// Boundary δ: Field(p+1) -> Field(p). Degree 1→0 is the discrete
/// divergence (incoming minus departing fluxes); higher degrees follow the
/// alternating-face formula, the last face being extended to the new
/// terminal region.
Field boundary(const Complex& C, const Field& phi);

/// Differential d on density fields, adjoint of δ under the counting
/// pairing: degree 0→1 is (dq)_{ab} = q_b − Σ^{ba}(q_a).
Field differential(const Complex& C, const Field& q);

/// Linearised gradient ∇(f)_{ab} = f_b − E^{ba}[f_a], conditional
/// expectations taken in gibbs(H_a).
Field nabla(const Complex& C, const Field& H, const Field& f);

/// δ̊: boundary restricted to interior members, zero on the rest.
Field interior_divergence(const Complex& C, const Field& phi, const BoundarySplit& split);

/// δ′: boundary with the ∅-component zeroed (identity on δ when ∅ ∉ X).
Field truncated_divergence(const Complex& C, const Field& phi);

/// φ = φ_int + φ_out; φ_out carries the components whose terminal region is
/// a boundary member.
std::pair<Field, Field> flux_split(const Complex& C, const Field& phi,
                                   const BoundarySplit& split);

/// Both sides of the Gauss formula on the cone Λ^a, as observables on a:
/// Σ_{b'∈Λ^a} (δφ)_{b'} = Σ_{(a'b')∈dΛ^a} φ_{a'b'}.
std::pair<Tensor, Tensor> gauss_cone(const Complex& C, const Field& phi, const Region& a);

namespace ref {
/// Serial scatter-form boundary kept as a reference for the gather kernel.
Field boundary(const Complex& C, const Field& phi);
} // namespace ref

} // namespace gbpd
