#include "gbpd/props.hpp"

#include <cmath>

#include "gbpd/complex.hpp"
#include "gbpd/energy.hpp"
#include "gbpd/interaction.hpp"
#include "gbpd/oracle.hpp"
#include "gbpd/transforms.hpp"

namespace gbpd {

namespace {

struct Suite {
    std::vector<PropertyResult> results;
    void record(const std::string& name, double err, double tol) {
        results.push_back({name, err <= tol, err, tol});
    }
};

} // namespace

std::vector<PropertyResult> run_property_suite(const Complex& C, const Field& h,
                                               unsigned seed, int n_random) {
    Suite s;
    std::mt19937_64 rng(seed);
    const auto& X = C.X();

    // --- chain complex identities ---
    {
        double e_dd = 0, e_adj = 0, e_gauss = 0, e_dd_dual = 0, e_adj2 = 0;
        const bool has_deg2 = !C.chains(2).empty();
        for (int t = 0; t < n_random; ++t) {
            if (has_deg2) {
                Field psi = random_field(C, 2, rng);
                e_dd = std::max(e_dd, boundary(C, boundary(C, psi)).sup_norm());
                Field q1 = random_field(C, 1, rng);
                e_dd_dual =
                    std::max(e_dd_dual, differential(C, differential(C, q1)).sup_norm());
                Field rho = random_field(C, 2, rng);
                e_adj2 = std::max(e_adj2, std::abs(pairing(C, differential(C, q1), rho) -
                                                   pairing(C, q1, boundary(C, rho))));
            }
            Field phi = random_field(C, 1, rng);
            Field q = random_field(C, 0, rng);
            e_adj = std::max(e_adj, std::abs(pairing(C, differential(C, q), phi) -
                                             pairing(C, q, boundary(C, phi))));
            for (int a = 0; a < X.size(); ++a) {
                auto [lhs, rhs] = gauss_cone(C, phi, X.member(a));
                e_gauss = std::max(e_gauss, (lhs - rhs).sup_norm());
            }
        }
        s.record("boundary squares to zero", e_dd, 1e-12);
        s.record("differential squares to zero", e_dd_dual, 1e-12);
        s.record("⟨dq,φ⟩ = ⟨q,δφ⟩", e_adj, 1e-12);
        s.record("⟨dψ,ρ⟩ = ⟨ψ,δρ⟩ (degree 2)", e_adj2, 1e-12);
        s.record("gauss formula per cone", e_gauss, 1e-12);
    }

    // --- Möbius machinery ---
    {
        IncidenceFn mu = C.mu();
        IncidenceFn conv = convolve(X, mu, zeta_fn(X));
        double e_inv = 0;
        for (int a = 0; a < X.size(); ++a)
            for (int b : X.cone(a))
                e_inv = std::max(e_inv, std::abs(static_cast<double>(conv(a, b)) -
                                                 (a == b ? 1.0 : 0.0)));
        s.record("μ * ζ = 1 (integers)", e_inv, 0.0);

        double e_rt0 = 0, e_rt1 = 0, e_loc = 0, e_hi = 0;
        for (int t = 0; t < n_random; ++t) {
            Field u = random_field(C, 0, rng);
            e_rt0 = std::max(e_rt0, (mobius0(C, zeta0(C, u)) - u).sup_norm());
            e_rt0 = std::max(e_rt0, (zeta0(C, mobius0(C, u)) - u).sup_norm());
            if (X.closed()) {
                Field phi = random_field(C, 1, rng);
                e_rt1 = std::max(e_rt1, (mobius1(C, zeta1(C, phi)) - phi).sup_norm());
                e_rt1 = std::max(e_rt1, (zeta1(C, mobius1(C, phi)) - phi).sup_norm());
            }
            // local cocycle: φ supported in Λ^a ⇒ ζ(δφ)_a = 0
            for (int a = 0; a < X.size(); ++a) {
                Field phi = random_field(C, 1, rng);
                const auto& chains1 = C.chains(1);
                for (std::size_t i = 0; i < chains1.size(); ++i)
                    if (!X.geq(a, chains1[i].idx[0]))
                        phi.values[i] = Tensor(C.member_shape(chains1[i].terminal()));
                e_loc = std::max(
                    e_loc,
                    zeta0(C, boundary(C, phi)).values[static_cast<std::size_t>(a)].sup_norm());
            }
            // higher cocycle: ψ of degree 2 supported in Λ^{a0}
            if (X.closed() && !C.chains(2).empty()) {
                for (int a = 0; a < X.size(); ++a) {
                    Field psi = random_field(C, 2, rng);
                    const auto& chains2 = C.chains(2);
                    for (std::size_t i = 0; i < chains2.size(); ++i)
                        if (!X.geq(a, chains2[i].idx[0]))
                            psi.values[i] = Tensor(C.member_shape(chains2[i].terminal()));
                    Field z = zeta1(C, boundary(C, psi));
                    const auto& chains1 = C.chains(1);
                    for (std::size_t i = 0; i < chains1.size(); ++i)
                        if (chains1[i].idx[0] == a)
                            e_hi = std::max(e_hi, z.values[i].sup_norm());
                }
            }
        }
        s.record("zeta0/mobius0 round trip", e_rt0, 1e-10);
        if (X.closed()) s.record("zeta1/mobius1 round trip", e_rt1, 1e-10);
        s.record("local cocycle property", e_loc, 1e-12);
        if (X.closed()) s.record("higher cocycle property", e_hi, 1e-12);
    }

    // --- interaction decomposition ---
    if (X.closed()) {
        double e_dim = 0;
        for (int a = 0; a < X.size(); ++a) {
            CharacterPartition part = character_partition(C, X.member(a));
            std::size_t total = 0;
            for (const auto& [b, g] : part.groups) total += g.size();
            e_dim = std::max(e_dim, std::abs(static_cast<double>(total) -
                                             static_cast<double>(C.member_shape(a).size())));
        }
        s.record("character groups partition E_a", e_dim, 0.0);

        double e_idem = 0, e_pd = 0, e_homot = 0, e_hom = 0;
        const auto& c = C.mobius_nums().c;
        for (int t = 0; t < n_random; ++t) {
            Field u = random_field(C, 0, rng);
            Field Pu = interaction_projection(C, u);
            e_idem = std::max(e_idem, (interaction_projection(C, Pu) - Pu).sup_norm());
            Field phi = random_field(C, 1, rng);
            e_pd = std::max(
                e_pd, interaction_projection(C, boundary(C, phi)).sup_norm());
            // homotopy identity on degree 0: δ(η u) = u - C(u)
            Field eta = make_field(C, 1);
            const auto& chains1 = C.chains(1);
            for (std::size_t i = 0; i < chains1.size(); ++i) {
                Tensor v = u.values[static_cast<std::size_t>(chains1[i].terminal())];
                v *= static_cast<double>(c[static_cast<std::size_t>(chains1[i].idx[0])]);
                eta.values[i] = std::move(v);
            }
            Field Zu = zeta0(C, u);
            Field Cu = make_field(C, 0);
            for (int a = 0; a < X.size(); ++a) {
                Tensor v = Zu.values[static_cast<std::size_t>(a)];
                v *= static_cast<double>(c[static_cast<std::size_t>(a)]);
                Cu.values[static_cast<std::size_t>(a)] = std::move(v);
            }
            e_homot =
                std::max(e_homot, (boundary(C, eta) - (u - Cu)).sup_norm());
            // homologous pairs share the global sum
            Field v = u + boundary(C, phi);
            e_hom = std::max(e_hom, (global_sum(C, u) - global_sum(C, v)).sup_norm());
            e_hom = std::max(
                e_hom, (interaction_projection(C, v) - Pu).sup_norm());
        }
        s.record("interaction projection idempotent", e_idem, 1e-10);
        s.record("P vanishes on boundaries", e_pd, 1e-10);
        s.record("homotopy identity ηδ+δη = 1−C", e_homot, 1e-12);
        s.record("homologous fields share global sums", e_hom, 1e-9);
    }

    // --- energy functionals ---
    {
        double e_fun = 0, e_marg = 0, e_chain = 0;
        for (int t = 0; t < n_random; ++t) {
            for (const Chain& ch : C.chains(1)) {
                // functoriality along a ⊇ b ⊇ ∅ and marginalisation
                const Shape& sa = C.member_shape(ch.idx[0]);
                const Shape& sb = C.member_shape(ch.idx[1]);
                Field r = random_field(C, 0, rng);
                const Tensor& Ha = r.values[static_cast<std::size_t>(ch.idx[0])];
                Tensor Fb = effective_energy(Ha, sb);
                Shape scalar{{}, {}};
                e_fun = std::max(e_fun,
                                 std::abs(effective_energy(Fb, scalar)[0] -
                                          effective_energy(Ha, scalar)[0]));
                Tensor lhs = partial_sum(gibbs(Ha).density(), sb);
                Tensor rhs = gibbs(Fb).density();
                e_marg = std::max(e_marg, (lhs - rhs).sup_norm());
                Belief pa = gibbs(Ha);
                e_chain = std::max(
                    e_chain,
                    std::abs(shannon_entropy(pa) -
                             (shannon_entropy(Belief(partial_sum(pa.density(), sb))) +
                              conditional_entropy(pa, sb))));
                (void)sa;
            }
        }
        s.record("effective energy functoriality", e_fun, 1e-10);
        s.record("effective energy marginalisation", e_marg, 1e-12);
        s.record("entropy chain rule", e_chain, 1e-12);

        // Bethe entropy of the uniform field
        BeliefField unif;
        for (int a = 0; a < X.size(); ++a)
            unif.push_back(gibbs(Tensor(C.member_shape(a))));
        double target = 0;
        for (std::size_t j = 0; j < C.space().vars.size(); ++j)
            target += std::log(static_cast<double>(C.space().cards[j]));
        s.record("bethe entropy at uniform",
                 std::abs(bethe_entropy(C, unif) - target), 1e-12);
    }

    // --- oracle self-consistency ---
    {
        GlobalModel M = globalize(C, h);
        BeliefField p = exact_marginals(C, M);
        double e_cons = differential(C, density_field(C, p)).sup_norm();
        s.record("exact marginals are consistent", e_cons, 1e-12);
        if (X.closed()) {
            GlobalPass gp = global_pass(C, M);
            s.record("global pass effective consistency",
                     effective_gradient(C, gp.U).sup_norm(), 1e-10);
            double e_g = 0;
            for (int a = 0; a < X.size(); ++a)
                e_g = std::max(
                    e_g, (gibbs(gp.U.values[static_cast<std::size_t>(a)]).density() -
                          p[static_cast<std::size_t>(a)].density())
                             .sup_norm());
            s.record("global pass reproduces marginals", e_g, 1e-12);
        }
        VariationalReport vr = variational_check(C, M);
        s.record("free energy minimum principle",
                 vr.minimum_ok ? 0.0 : -vr.worst_violation, 1e-10);
        s.record("equality at the Gibbs state", vr.gibbs_gap, 1e-10);
        s.record("mean energy monotone in θ", vr.monotone_ok ? 0.0 : 1.0, 0.0);
    }

    return s.results;
}

} // namespace gbpd
