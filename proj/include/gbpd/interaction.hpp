#pragma once

#include <map>
#include <vector>

#include "gbpd/field.hpp"

namespace gbpd {

/// Partition of the wave vectors of E_a among the members of Λ^a: k goes to
/// the smallest member containing its support.
struct CharacterPartition {
    int region;                                   // member index of a
    std::map<int, std::vector<std::size_t>> groups; // member index -> linear k's
};

CharacterPartition character_partition(const Complex& C, const Region& a);

/// Component of u in the interaction subspace Z_b ⊆ A_a: discrete Fourier
/// transform, keep the modes of group(b), transform back. The group is
/// stable under negation so the result is real; the imaginary residue is
/// checked against 1e-10.
Tensor project_interaction(const Complex& C, const Tensor& u, const Region& b);

/// All components at once (one forward transform, one inverse per group).
std::map<int, Tensor> interaction_components(const Complex& C, const Tensor& u);

/// P(u)_b = Σ_{a⊇b} P^{ba}(u_a), each component restricted back to b.
/// Projects degree-0 fields onto Z_0(X); vanishes on boundaries.
Field interaction_projection(const Complex& C, const Field& u);

/// ζ_Ω(u) = Σ_a [u_a]_Ω, the global sum on the full configuration space.
Tensor global_sum(const Complex& C, const Field& u);

/// Two degree-0 fields are homologous iff their global sums agree.
bool homologous(const Complex& C, const Field& u, const Field& v, double tol = 1e-9);

} // namespace gbpd
