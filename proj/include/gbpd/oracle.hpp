#pragma once

#include "gbpd/field.hpp"

namespace gbpd {

/// Brute-force global model; guarded so acceptance runs stay fast.
struct GlobalModel {
    Shape omega;
    Tensor H; // hamiltonian on the full configuration space
};

inline constexpr std::size_t kGlobalSizeGuard = std::size_t{1} << 22;

GlobalModel globalize(const Complex& C, const Field& h);

/// Exact marginals p_a = Σ^{aΩ} gibbs(H_Ω) for every member.
BeliefField exact_marginals(const Complex& C, const GlobalModel& M);

/// True effective potentials: U*_a = F^{aΩ}(H_Ω) and u* = μ·U*.
struct GlobalPass {
    Field U; // consistent hamiltonians
    Field u; // their interaction potentials
};
GlobalPass global_pass(const Complex& C, const GlobalModel& M);

struct VariationalReport {
    bool minimum_ok = false;     // F_G(p, H) >= F(H) on random densities
    double worst_violation = 0;  // most negative slack seen
    double gibbs_gap = 0;        // |F_G(gibbs, H) - F(H)|
    bool monotone_ok = false;    // E_θ[H] decreasing along the θ grid
};

/// Checks the free-energy minimum principle on random densities and the
/// monotonicity of mean energy along the temperature path.
VariationalReport variational_check(const Complex& C, const GlobalModel& M,
                                    int n_random = 100, unsigned seed = 7);

} // namespace gbpd
