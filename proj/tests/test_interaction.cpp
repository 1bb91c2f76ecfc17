#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "fixtures.hpp"
#include "gbpd/complex.hpp"
#include "gbpd/interaction.hpp"

using namespace gbpd;
using namespace fixtures;

TEST_CASE("character partition sizes") {
    SUBCASE("full power set of two points") {
        Complex C = c1_cone();
        CharacterPartition part = character_partition(C, Region{0, 1});
        for (const auto& [b, g] : part.groups) CHECK(g.size() == 1);
        CHECK(part.groups.size() == 4);
    }
    SUBCASE("missing vertex absorbs its modes upward") {
        Complex C(build({Region{0, 1}, Region{1}}, true, true), binary_space(2));
        CharacterPartition part = character_partition(C, Region{0, 1});
        const auto& X = C.X();
        CHECK(part.groups.at(X.require_member(Region{})).size() == 1);
        CHECK(part.groups.at(X.require_member(Region{1})).size() == 1);
        CHECK(part.groups.at(X.require_member(Region{0, 1})).size() == 2);
    }
    SUBCASE("empty region has the trivial character") {
        Complex C = c1_cone();
        CharacterPartition part = character_partition(C, Region{});
        CHECK(part.groups.size() == 1);
        CHECK(part.groups.begin()->second.size() == 1);
    }
    SUBCASE("groups always partition E_a") {
        for (auto C : {triangle(), random_closed5(3)}) {
            for (int a = 0; a < C.X().size(); ++a) {
                CharacterPartition part = character_partition(C, C.X().member(a));
                std::size_t total = 0;
                for (const auto& [b, g] : part.groups) total += g.size();
                CHECK(total == C.member_shape(a).size());
            }
        }
    }
}

TEST_CASE("projection onto interaction subspaces") {
    Complex C = c1_cone();
    std::mt19937_64 rng(3);
    Shape sab = C.space().shape(Region{0, 1});

    SUBCASE("constants live in the vacuum component") {
        Tensor u(sab, 2.5);
        Tensor p0 = project_interaction(C, u, Region{});
        CHECK((p0 - u).sup_norm() < 1e-12);
        CHECK(project_interaction(C, u, Region{0, 1}).sup_norm() < 1e-12);
    }
    SUBCASE("components sum back to the observable") {
        std::uniform_real_distribution<double> dist(-1, 1);
        for (int t = 0; t < 20; ++t) {
            Tensor u(sab);
            for (std::size_t i = 0; i < u.size(); ++i) u[i] = dist(rng);
            Tensor sum(sab);
            for (const auto& [b, comp] : interaction_components(C, u)) sum += comp;
            CHECK((sum - u).sup_norm() < 1e-10);
        }
    }
    SUBCASE("2x2 interaction term matches the ANOVA formula") {
        std::uniform_real_distribution<double> dist(-1, 1);
        Tensor u(sab);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = dist(rng);
        Tensor p = project_interaction(C, u, Region{0, 1});
        // remove row and column means, add back the grand mean
        Tensor row = extend(restrict_mean(u, C.space().shape(Region{0})), sab);
        Tensor col = extend(restrict_mean(u, C.space().shape(Region{1})), sab);
        Tensor grand = extend(restrict_mean(u, Shape{{}, {}}), sab);
        Tensor expect = u - row - col + grand;
        CHECK((p - expect).sup_norm() < 1e-12);
    }
}

TEST_CASE("interaction projection on fields") {
    std::mt19937_64 rng(7);
    for (auto C : {c1_cone(), triangle(), random_closed5(5)}) {
        SUBCASE("vanishes on boundaries") {
            for (int t = 0; t < 20; ++t) {
                Field phi = random_field(C, 1, rng);
                CHECK(interaction_projection(C, boundary(C, phi)).sup_norm() < 1e-10);
            }
        }
        SUBCASE("idempotent") {
            for (int t = 0; t < 10; ++t) {
                Field u = random_field(C, 0, rng);
                Field Pu = interaction_projection(C, u);
                CHECK((interaction_projection(C, Pu) - Pu).sup_norm() < 1e-10);
            }
        }
        SUBCASE("constant on homology classes") {
            Field u = random_field(C, 0, rng);
            Field phi = random_field(C, 1, rng);
            Field v = u + boundary(C, phi);
            CHECK((interaction_projection(C, u) - interaction_projection(C, v))
                      .sup_norm() < 1e-10);
        }
    }
}

TEST_CASE("projection fixes pure interactions on minimal regions") {
    Complex C = triangle();
    int is = C.X().require_member(Region{1});
    Field u = make_field(C, 0);
    // zero-sum tensor on a singleton region: all strict marginals vanish
    u.values[static_cast<std::size_t>(is)] = Tensor(C.member_shape(is), {0.7, -0.7});
    Field Pu = interaction_projection(C, u);
    CHECK((Pu - u).sup_norm() < 1e-12);
}

TEST_CASE("global sums") {
    Complex C = t1_chain();
    std::mt19937_64 rng(11);
    SUBCASE("zero field") {
        CHECK(global_sum(C, make_field(C, 0)).sup_norm() == 0.0);
    }
    SUBCASE("invariant along homology classes") {
        Field u = random_field(C, 0, rng);
        Field phi = random_field(C, 1, rng);
        Field v = u + boundary(C, phi);
        CHECK((global_sum(C, u) - global_sum(C, v)).sup_norm() < 1e-12);
    }
    SUBCASE("hand-added two-factor case") {
        Field u = make_field(C, 0);
        int i01 = C.X().require_member(Region{0, 1});
        int i12 = C.X().require_member(Region{1, 2});
        u.values[static_cast<std::size_t>(i01)] =
            Tensor(C.member_shape(i01), {1, 2, 3, 4});
        u.values[static_cast<std::size_t>(i12)] =
            Tensor(C.member_shape(i12), {10, 20, 30, 40});
        Tensor g = global_sum(C, u);
        // layout: var 0 slowest, var 2 fastest
        std::vector<double> expect = {11, 21, 32, 42, 13, 23, 34, 44};
        CHECK(g.values() == expect);
    }
}

TEST_CASE("homologous predicate") {
    Complex C = triangle();
    std::mt19937_64 rng(13);
    Field u = random_field(C, 0, rng);
    SUBCASE("boundary shifts are homologous") {
        Field phi = random_field(C, 1, rng);
        CHECK(homologous(C, u, u + boundary(C, phi)));
        CHECK(homologous(C, u, u));
    }
    SUBCASE("a top-region interaction breaks the class") {
        Field v = u;
        int a = 0; // a maximal member (edges come first)
        Tensor bump = project_interaction(
            C, Tensor(C.member_shape(a), {1.0, -0.5, 0.25, 2.0}), C.X().member(a));
        REQUIRE(bump.sup_norm() > 1e-6);
        v.values[static_cast<std::size_t>(a)] += bump;
        CHECK_FALSE(homologous(C, u, v));
    }
}

TEST_CASE("kernel of P is the image of the boundary") {
    // least-squares solve of u = -δφ certifies Ker(P) = Img(δ)
    Complex C = triangle();
    std::mt19937_64 rng(17);
    const std::size_t rows = field_dim(C, 0);
    const std::size_t cols = field_dim(C, 1);
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::vector<double> unit(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
        unit[j] = 1.0;
        Field phi = unflatten(C, 1, unit);
        unit[j] = 0.0;
        auto col = flatten(boundary(C, phi));
        for (std::size_t i = 0; i < rows; ++i)
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }
    auto solver = A.colPivHouseholderQr();
    int agree = 0;
    for (int t = 0; t < 50; ++t) {
        Field u = random_field(C, 0, rng);
        // half the samples are boundaries
        if (t % 2 == 0) u = boundary(C, random_field(C, 1, rng));
        auto uv = flatten(u);
        Eigen::VectorXd b(static_cast<Eigen::Index>(rows));
        for (std::size_t i = 0; i < rows; ++i) b(static_cast<Eigen::Index>(i)) = uv[i];
        double ls_resid = (A * solver.solve(b) - b).norm();
        double p_norm = interaction_projection(C, u).sup_norm();
        bool in_image = ls_resid < 1e-8;
        bool p_zero = p_norm < 1e-8;
        CHECK(in_image == p_zero);
        agree += (in_image == p_zero);
    }
    CHECK(agree == 50);
}
