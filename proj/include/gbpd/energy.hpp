#pragma once

#include <map>

#include "gbpd/field.hpp"

namespace gbpd {

/// F_θ(H) = -θ^{-1} ln Σ e^{-θH}, shifted so extreme energies cannot
/// overflow.
double free_energy(const Tensor& H, double theta = 1.0);

/// Effective energy F^{ba}(H) = -ln Σ^{ba}(e^{-H}), shifted per output cell.
Tensor effective_energy(const Tensor& H, const Shape& target);

/// D(H)_{ab} = H_b - F^{ba}(H_a); vanishes exactly on effectively
/// consistent hamiltonians.
Field effective_gradient(const Complex& C, const Field& H);

double shannon_entropy(const Belief& p);
/// S(p_a | b) = Σ_{x_b} p_b(x_b) S(p_{a|x_b}); chain rule S_a = S_b + S(a|b).
double conditional_entropy(const Belief& p, const Shape& target);

/// I_a = Σ_{∅≠b⊆a} (-1)^{|b|+1} S_b(p_b); needs the marginal on every
/// nonempty subset of a, and is gated to |a| <= 4.
double mutual_information(const std::map<Region, Belief>& marginals, const Region& a);
/// Power-set marginals of a joint density, for feeding mutual_information.
std::map<Region, Belief> power_set_marginals(const Space& space, const Belief& joint);

/// Bethe entropy Š = Σ_b c_b S_b(p_b).
double bethe_entropy(const Complex& C, const BeliefField& p);

/// Bethe free energy F_B(p, H) = Σ_b c_b (⟨p_b, H_b⟩ - S_b(p_b)).
double bethe_free_energy(const Complex& C, const BeliefField& p, const Field& H);

/// Least-squares distance of (-ln p) - H to the span of ζ∘δ′; a residual
/// near zero certifies a critical point of the constrained Bethe free
/// energy. Requires ∅ ∈ X, H_∅ = 0 and consistent p.
double criticality_residual(const Complex& C, const BeliefField& p, const Field& H,
                            double consistency_tol = 1e-6);

/// cov(f,g) = E[fg] - E[f]E[g] under gibbs(H); the negated free-energy
/// Hessian.
double covariance(const Tensor& H, const Tensor& f, const Tensor& g);

} // namespace gbpd
