#include "gbpd/oracle.hpp"

#include <cmath>
#include <random>

#include "gbpd/energy.hpp"
#include "gbpd/interaction.hpp"
#include "gbpd/transforms.hpp"

namespace gbpd {

GlobalModel globalize(const Complex& C, const Field& h) {
    Shape omega = C.space().shape(C.X().omega());
    if (omega.size() > kGlobalSizeGuard)
        throw GuardError("global state space exceeds the 2^22 guard");
    return GlobalModel{omega, global_sum(C, h)};
}

BeliefField exact_marginals(const Complex& C, const GlobalModel& M) {
    Belief p = gibbs(M.H);
    BeliefField out;
    out.reserve(static_cast<std::size_t>(C.X().size()));
    for (int a = 0; a < C.X().size(); ++a)
        out.emplace_back(partial_sum(p.density(), C.member_shape(a)));
    return out;
}

GlobalPass global_pass(const Complex& C, const GlobalModel& M) {
    if (!C.X().closed())
        throw PreconditionError("global_pass requires an intersection-closed hypergraph");
    GlobalPass out;
    out.U = make_field(C, 0);
    for (int a = 0; a < C.X().size(); ++a)
        out.U.values[static_cast<std::size_t>(a)] =
            effective_energy(M.H, C.member_shape(a));
    out.u = mobius0(C, out.U);
    return out;
}

VariationalReport variational_check(const Complex& C, const GlobalModel& M, int n_random,
                                    unsigned seed) {
    (void)C;
    VariationalReport rep;
    const double F = free_energy(M.H);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    rep.minimum_ok = true;
    for (int t = 0; t < n_random; ++t) {
        Tensor G(M.omega);
        for (std::size_t i = 0; i < G.size(); ++i) G[i] = dist(rng);
        Belief p = gibbs(G);
        double fg = inner(p.density(), M.H) - shannon_entropy(p);
        double slack = fg - F;
        rep.worst_violation = std::min(rep.worst_violation, slack);
        if (slack < -1e-10) rep.minimum_ok = false;
    }
    Belief pstar = gibbs(M.H);
    rep.gibbs_gap =
        std::abs(inner(pstar.density(), M.H) - shannon_entropy(pstar) - F);

    // mean energy decreases with the inverse temperature
    rep.monotone_ok = true;
    double prev = std::numeric_limits<double>::infinity();
    Shape scalar{{}, {}};
    for (double theta = 0.25; theta <= 4.0 + 1e-9; theta += 0.25) {
        Tensor Ht = M.H;
        Ht *= theta;
        double e = conditional_expectation(Ht, M.H, scalar)[0];
        if (e > prev + 1e-9) rep.monotone_ok = false;
        prev = e;
    }
    return rep;
}

} // namespace gbpd
