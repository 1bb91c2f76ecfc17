#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "gbpd/complex.hpp"
#include "gbpd/energy.hpp"
#include "gbpd/interaction.hpp"
#include "gbpd/oracle.hpp"
#include "gbpd/transforms.hpp"

using namespace gbpd;
using namespace fixtures;

namespace {

Tensor random_tensor(const Shape& s, std::mt19937_64& rng, double lo = -1, double hi = 1) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Tensor t(s);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = dist(rng);
    return t;
}

} // namespace

TEST_CASE("free energy closed forms") {
    Space sp = binary_space(3);
    CHECK(free_energy(Tensor(sp.shape(Region{0}))) ==
          doctest::Approx(-std::log(2.0)).epsilon(1e-12));
    // constant energy on a size-n space
    Tensor H(sp.shape(Region{0, 1}), 3.25);
    CHECK(free_energy(H) == doctest::Approx(3.25 - std::log(4.0)).epsilon(1e-12));
    // temperature scaling F_θ(H) = θ^{-1} F(θH)
    std::mt19937_64 rng(3);
    Tensor G = random_tensor(sp.shape(Region{0, 1}), rng);
    double theta = 1.7;
    Tensor Gt = G;
    Gt *= theta;
    CHECK(free_energy(G, theta) ==
          doctest::Approx(free_energy(Gt) / theta).epsilon(1e-12));
}

TEST_CASE("free energy is additive along disjoint systems") {
    Space sp = binary_space(3);
    std::mt19937_64 rng(5);
    Tensor Hb = random_tensor(sp.shape(Region{0}), rng);
    Tensor Hc = random_tensor(sp.shape(Region{1, 2}), rng);
    Shape sa = sp.shape(Region{0, 1, 2});
    Tensor H = extend(Hb, sa) + extend(Hc, sa);
    CHECK(std::abs(free_energy(H) - free_energy(Hb) - free_energy(Hc)) < 1e-12);
}

TEST_CASE("free energy is concave") {
    Space sp = binary_space(2);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        Tensor U = random_tensor(sp.shape(Region{0, 1}), rng);
        Tensor V = random_tensor(sp.shape(Region{0, 1}), rng);
        for (double t : {0.25, 0.5, 0.75}) {
            Tensor W = U;
            W *= t;
            Tensor V2 = V;
            V2 *= (1 - t);
            W += V2;
            CHECK(free_energy(W) >= t * free_energy(U) + (1 - t) * free_energy(V) - 1e-12);
        }
    }
}

TEST_CASE("free energy differential is the Gibbs expectation") {
    Space sp = binary_space(2);
    std::mt19937_64 rng(11);
    Shape s = sp.shape(Region{0, 1});
    Shape scalar{{}, {}};
    for (int k = 0; k < 10; ++k) {
        Tensor H = random_tensor(s, rng);
        Tensor f = random_tensor(s, rng);
        double eps = 1e-6;
        Tensor fp = f;
        fp *= eps;
        double fd = (free_energy(H + fp) - free_energy(H - fp)) / (2 * eps);
        double expect = conditional_expectation(H, f, scalar)[0];
        CHECK(std::abs(fd - expect) < 1e-8);
    }
}

TEST_CASE("effective energy") {
    Space sp = binary_space(3);
    std::mt19937_64 rng(13);
    Shape sa = sp.shape(Region{0, 1, 2});
    Shape sb = sp.shape(Region{1, 2});
    Shape sc = sp.shape(Region{2});

    SUBCASE("functoriality") {
        for (int k = 0; k < 20; ++k) {
            Tensor H = random_tensor(sa, rng);
            Tensor one = effective_energy(effective_energy(H, sb), sc);
            Tensor two = effective_energy(H, sc);
            CHECK((one - two).sup_norm() < 1e-10);
        }
    }
    SUBCASE("marginalisation") {
        for (int k = 0; k < 20; ++k) {
            Tensor H = random_tensor(sa, rng);
            Tensor lhs = partial_sum(gibbs(H).density(), sb);
            Tensor rhs = gibbs(effective_energy(H, sb)).density();
            CHECK((lhs - rhs).sup_norm() < 1e-12);
        }
    }
    SUBCASE("additivity along the target algebra") {
        Tensor H = random_tensor(sa, rng);
        Tensor g = random_tensor(sb, rng);
        Tensor one = effective_energy(H + extend(g, sa), sb);
        Tensor two = effective_energy(H, sb) + g;
        CHECK((one - two).sup_norm() < 1e-12);
    }
    SUBCASE("pairwise conditional additivity on a two-lobe system") {
        // a = {0,1} ∪ {1,2} with intersection {1}
        Tensor Hb = random_tensor(sp.shape(Region{0, 1}), rng);
        Tensor Hb2 = random_tensor(sp.shape(Region{1, 2}), rng);
        Tensor H = extend(Hb, sa) + extend(Hb2, sa);
        Shape s1 = sp.shape(Region{1});
        Tensor lhs = effective_energy(H, s1);
        Tensor rhs = effective_energy(Hb, s1) + effective_energy(Hb2, s1);
        CHECK((lhs - rhs).sup_norm() < 1e-12);
    }
    SUBCASE("per-cell shift survives extreme energies") {
        Tensor H(sa, 0.0);
        H[0] = 900.0;
        Tensor F = effective_energy(H, sb);
        CHECK(F.finite());
    }
}

TEST_CASE("effective gradient") {
    SUBCASE("zero energy gives the fiber volumes") {
        // D(0)_{ab} = ln|E_{a∖b}|, so that ln|E| is the consistent constant
        Complex C = t1_chain();
        Field H = make_field(C, 0);
        Field D = effective_gradient(C, H);
        const auto& chains = C.chains(1);
        for (std::size_t i = 0; i < chains.size(); ++i) {
            double expect =
                std::log(static_cast<double>(C.member_shape(chains[i].idx[0]).size())) -
                std::log(static_cast<double>(C.member_shape(chains[i].idx[1]).size()));
            for (std::size_t k = 0; k < D.values[i].size(); ++k)
                CHECK(D.values[i][k] == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("ln|E| is the consistent constant field") {
        Complex C = t1_chain();
        Field U = make_field(C, 0);
        for (int a = 0; a < C.X().size(); ++a)
            U.values[static_cast<std::size_t>(a)] = Tensor(
                C.member_shape(a),
                std::log(static_cast<double>(C.member_shape(a).size())));
        CHECK(effective_gradient(C, U).sup_norm() < 1e-12);
    }
    SUBCASE("vanishes on the global pass field") {
        std::mt19937_64 rng(17);
        for (auto C : {t1_chain(), triangle(), random_closed5(23)}) {
            Field h = random_field(C, 0, rng);
            GlobalPass gp = global_pass(C, globalize(C, h));
            CHECK(effective_gradient(C, gp.U).sup_norm() < 1e-10);
        }
    }
    SUBCASE("directional derivative matches nabla") {
        Complex C = triangle();
        std::mt19937_64 rng(19);
        Field H = random_field(C, 0, rng);
        Field v = random_field(C, 0, rng);
        double eps = 1e-5;
        Field Dp = effective_gradient(C, H + eps * v);
        Field Dm = effective_gradient(C, H - eps * v);
        Field fd = (1.0 / (2 * eps)) * (Dp - Dm);
        Field lin = nabla(C, H, v);
        double scale = std::max(1.0, lin.sup_norm());
        CHECK((fd - lin).sup_norm() / scale < 1e-6);
    }
}

TEST_CASE("entropies") {
    Space sp = binary_space(3);
    std::mt19937_64 rng(23);
    SUBCASE("uniform binary") {
        Belief p = gibbs(Tensor(sp.shape(Region{0})));
        CHECK(shannon_entropy(p) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
    SUBCASE("product density has marginal conditional entropy") {
        Tensor Ha = random_tensor(sp.shape(Region{0}), rng);
        Tensor Hb = random_tensor(sp.shape(Region{1}), rng);
        Shape sab = sp.shape(Region{0, 1});
        Belief joint = gibbs(extend(Ha, sab) + extend(Hb, sab));
        double cond = conditional_entropy(joint, sp.shape(Region{1}));
        Belief pa = gibbs(Ha);
        CHECK(cond == doctest::Approx(shannon_entropy(pa)).epsilon(1e-10));
    }
    SUBCASE("chain rule") {
        Shape sab = sp.shape(Region{0, 1, 2});
        Shape sb = sp.shape(Region{2});
        for (int k = 0; k < 20; ++k) {
            Belief p = gibbs(random_tensor(sab, rng));
            Belief pb = Belief(partial_sum(p.density(), sb));
            CHECK(std::abs(shannon_entropy(p) - shannon_entropy(pb) -
                           conditional_entropy(p, sb)) < 1e-12);
        }
    }
}

TEST_CASE("mutual information") {
    Space sp = binary_space(2);
    Shape sab = sp.shape(Region{0, 1});
    SUBCASE("independent pair") {
        std::mt19937_64 rng(29);
        Tensor Ha = random_tensor(sp.shape(Region{0}), rng);
        Tensor Hb = random_tensor(sp.shape(Region{1}), rng);
        Belief joint = gibbs(extend(Ha, sab) + extend(Hb, sab));
        auto marg = power_set_marginals(sp, joint);
        CHECK(std::abs(mutual_information(marg, Region{0, 1})) < 1e-12);
    }
    SUBCASE("perfectly correlated pair") {
        // joint ≈ [.5, 0, 0, .5]
        Tensor H(sab, {0.0, 40.0, 40.0, 0.0});
        Belief joint = gibbs(H);
        auto marg = power_set_marginals(sp, joint);
        CHECK(mutual_information(marg, Region{0, 1}) ==
              doctest::Approx(std::log(2.0)).epsilon(1e-8));
    }
    SUBCASE("single variable reduces to entropy") {
        std::mt19937_64 rng(31);
        Belief p = gibbs(random_tensor(sp.shape(Region{0}), rng));
        std::map<Region, Belief> marg;
        marg.emplace(Region{0}, p);
        CHECK(mutual_information(marg, Region{0}) ==
              doctest::Approx(shannon_entropy(p)).epsilon(1e-12));
    }
    SUBCASE("gate on region size") {
        std::map<Region, Belief> empty;
        CHECK_THROWS_AS(mutual_information(empty, Region{0, 1, 2, 3, 4}),
                        PreconditionError);
    }
}

TEST_CASE("bethe entropy") {
    SUBCASE("uniform beliefs give the Boltzmann entropy") {
        for (auto C : {t1_chain(), triangle(), c1_cone(), random_closed5(37)}) {
            BeliefField unif;
            for (int a = 0; a < C.X().size(); ++a)
                unif.push_back(gibbs(Tensor(C.member_shape(a))));
            double target = 0;
            for (int card : C.space().cards) target += std::log(card);
            CHECK(std::abs(bethe_entropy(C, unif) - target) < 1e-12);
        }
    }
    SUBCASE("exact on retractable fixtures") {
        std::mt19937_64 rng(41);
        Complex C = t1_chain();
        Field h = random_field(C, 0, rng);
        GlobalModel M = globalize(C, h);
        BeliefField p = exact_marginals(C, M);
        CHECK(std::abs(bethe_entropy(C, p) - shannon_entropy(gibbs(M.H))) < 1e-10);
    }
    SUBCASE("approximation gap on the triangle") {
        Complex C = triangle();
        // strongly coupled edges
        Field h = make_field(C, 0);
        for (int a = 0; a < 3; ++a)
            h.values[static_cast<std::size_t>(a)] =
                Tensor(C.member_shape(a), {-2.0, 2.0, 2.0, -2.0});
        GlobalModel M = globalize(C, h);
        BeliefField p = exact_marginals(C, M);
        CHECK(std::abs(bethe_entropy(C, p) - shannon_entropy(gibbs(M.H))) > 1e-3);
    }
}

TEST_CASE("bethe free energy") {
    std::mt19937_64 rng(43);
    SUBCASE("energy is measured exactly on global marginals") {
        for (auto C : {t1_chain(), triangle()}) {
            Field h = random_field(C, 0, rng);
            Field H = zeta0(C, h);
            GlobalModel M = globalize(C, h);
            BeliefField p = exact_marginals(C, M);
            Belief pOm = gibbs(M.H);
            double expect = inner(pOm.density(), M.H) - bethe_entropy(C, p);
            CHECK(std::abs(bethe_free_energy(C, p, H) - expect) < 1e-10);
        }
    }
    SUBCASE("homological invariance for consistent beliefs") {
        Complex C = triangle();
        Field h = random_field(C, 0, rng);
        GlobalModel M = globalize(C, h);
        BeliefField p = exact_marginals(C, M);
        Field H = zeta0(C, h);
        for (int k = 0; k < 10; ++k) {
            Field phi = random_field(C, 1, rng);
            Field H2 = H + zeta0(C, boundary(C, phi));
            CHECK(std::abs(bethe_free_energy(C, p, H) - bethe_free_energy(C, p, H2)) <
                  1e-10);
        }
    }
    SUBCASE("uniform state, zero energy") {
        Complex C = c1_cone();
        BeliefField unif;
        for (int a = 0; a < C.X().size(); ++a)
            unif.push_back(gibbs(Tensor(C.member_shape(a))));
        CHECK(bethe_free_energy(C, unif, make_field(C, 0)) ==
              doctest::Approx(-std::log(4.0)).epsilon(1e-12));
    }
}

TEST_CASE("zeta-bord identity for consistent densities") {
    // ⟨q, μ·H⟩ = ⟨q, c·H⟩ when dq = 0
    std::mt19937_64 rng(47);
    for (auto C : {triangle(), t1_chain(), random_closed5(43)}) {
        Field h = random_field(C, 0, rng);
        BeliefField p = exact_marginals(C, globalize(C, h));
        const auto& cnum = C.mobius_nums().c;
        for (int k = 0; k < 10; ++k) {
            Field H = random_field(C, 0, rng);
            Field muH = mobius0(C, H);
            double lhs = 0, rhs = 0;
            for (int a = 0; a < C.X().size(); ++a) {
                lhs += inner(p[static_cast<std::size_t>(a)].density(),
                             muH.values[static_cast<std::size_t>(a)]);
                rhs += static_cast<double>(cnum[static_cast<std::size_t>(a)]) *
                       inner(p[static_cast<std::size_t>(a)].density(),
                             H.values[static_cast<std::size_t>(a)]);
            }
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("criticality residual") {
    Complex C = triangle();
    std::mt19937_64 rng(53);
    SUBCASE("vanishes by construction") {
        // beliefs of U = H + ζ·δ′φ are critical for F_B(−, H)
        Field h = random_field(C, 0, rng);
        int e = C.X().require_member(Region{});
        h.values[static_cast<std::size_t>(e)] = Tensor(C.member_shape(e));
        Field H = zeta0(C, h);
        GlobalPass gp = global_pass(C, globalize(C, h));
        // gp.U is consistent; write it as H + ζ(δ′ φ) + constants is not
        // generally possible, so instead construct p from the flux form
        Field phi0 = random_field(C, 1, rng);
        Field U = H + zeta0(C, truncated_divergence(C, phi0));
        BeliefField q;
        bool consistent = true;
        for (const Tensor& t : U.values) q.push_back(gibbs(t));
        Field dq = differential(C, density_field(C, q));
        consistent = dq.sup_norm() < 1e-6;
        if (consistent) {
            CHECK(criticality_residual(C, q, h) < 1e-8);
        }
        (void)gp;
    }
    SUBCASE("uniform beliefs with an off-span perturbation have positive residual") {
        // H chosen so that -ln p - H is a pure top-region interaction, which
        // the flux span cannot reach
        Field H = make_field(C, 0);
        Tensor bump = project_interaction(
            C, Tensor(C.member_shape(0), {2.0, -1.0, 0.5, -1.5}), C.X().member(0));
        H.values[0] -= bump;
        BeliefField unif;
        for (int a = 0; a < C.X().size(); ++a)
            unif.push_back(gibbs(Tensor(C.member_shape(a))));
        CHECK(criticality_residual(C, unif, H) > 0.1);
    }
    SUBCASE("inconsistent beliefs are rejected") {
        BeliefField q;
        std::uniform_real_distribution<double> dist(0.5, 2.0);
        for (int a = 0; a < C.X().size(); ++a) {
            Tensor t(C.member_shape(a));
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = dist(rng);
            double s = t.sum();
            t *= 1.0 / s;
            q.push_back(Belief(t));
        }
        CHECK_THROWS_AS(criticality_residual(C, q, make_field(C, 0)),
                        PreconditionError);
    }
    SUBCASE("requires the empty region") {
        Complex C2 = t1_chain(false);
        BeliefField unif;
        for (int a = 0; a < C2.X().size(); ++a)
            unif.push_back(gibbs(Tensor(C2.member_shape(a))));
        CHECK_THROWS_AS(criticality_residual(C2, unif, make_field(C2, 0)),
                        PreconditionError);
    }
}

TEST_CASE("covariance") {
    Space sp = binary_space(2);
    std::mt19937_64 rng(59);
    Shape s = sp.shape(Region{0});
    SUBCASE("constants have zero covariance") {
        Tensor H = random_tensor(s, rng);
        Tensor f(s, 3.0);
        Tensor g = random_tensor(s, rng);
        CHECK(std::abs(covariance(H, f, g)) < 1e-12);
    }
    SUBCASE("symmetric binary") {
        Tensor H(s);
        Tensor f(s, {1.0, -1.0});
        CHECK(covariance(H, f, f) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("matches the finite-difference Hessian of free energy") {
        Shape s2 = sp.shape(Region{0, 1});
        for (int k = 0; k < 10; ++k) {
            Tensor H = random_tensor(s2, rng);
            Tensor f = random_tensor(s2, rng);
            Tensor g = random_tensor(s2, rng);
            double eps = 1e-4;
            auto F = [&](double sf, double sg) {
                Tensor W = H;
                Tensor fp = f;
                fp *= sf * eps;
                Tensor gp = g;
                gp *= sg * eps;
                W += fp;
                W += gp;
                return free_energy(W);
            };
            double hess =
                (F(1, 1) - F(1, -1) - F(-1, 1) + F(-1, -1)) / (4 * eps * eps);
            CHECK(std::abs(-hess - covariance(H, f, g)) < 1e-5);
        }
    }
}
