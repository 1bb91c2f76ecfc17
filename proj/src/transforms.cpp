#include "gbpd/transforms.hpp"

#include "gbpd/parallel.hpp"

namespace gbpd {

namespace {

void check_deg(const Field& f, int d, const char* who) {
    if (f.degree != d)
        throw PreconditionError(std::string(who) + ": wrong field degree");
}

void check_closed(const Complex& C, const char* who) {
    if (!C.X().closed())
        throw PreconditionError(std::string(who) +
                                " requires an intersection-closed hypergraph");
}

} // namespace

Field zeta0(const Complex& C, const Field& u) {
    check_deg(u, 0, "zeta0");
    const auto& X = C.X();
    Field out = make_field(C, 0);
    par::for_each(static_cast<std::size_t>(X.size()), [&](std::size_t a) {
        const Shape& sa = C.member_shape(static_cast<int>(a));
        Tensor acc(sa);
        for (int b : X.cone(static_cast<int>(a)))
            acc += extend(u.values[static_cast<std::size_t>(b)], sa);
        out.values[a] = std::move(acc);
    });
    return out;
}

Field mobius0(const Complex& C, const Field& U) {
    check_deg(U, 0, "mobius0");
    const auto& X = C.X();
    const IncidenceFn& mu = C.mu();
    Field out = make_field(C, 0);
    par::for_each(static_cast<std::size_t>(X.size()), [&](std::size_t a) {
        const Shape& sa = C.member_shape(static_cast<int>(a));
        Tensor acc(sa);
        for (int b : X.cone(static_cast<int>(a))) {
            auto coef = mu(static_cast<int>(a), b);
            if (coef == 0) continue;
            Tensor e = extend(U.values[static_cast<std::size_t>(b)], sa);
            e *= static_cast<double>(coef);
            acc += e;
        }
        out.values[a] = std::move(acc);
    });
    return out;
}

Field zeta1(const Complex& C, const Field& phi) {
    check_deg(phi, 1, "zeta1");
    check_closed(C, "zeta1");
    const auto& X = C.X();
    const auto& chains = C.chains(1);
    Field out = make_field(C, 1);
    par::for_each(chains.size(), [&](std::size_t i) {
        const int a = chains[i].idx[0];
        const int b = chains[i].idx[1];
        const Shape& sb = C.member_shape(b);
        Tensor acc(sb);
        // flux through the interspace Λ^a ∖ Λ^b into Λ^b
        for (int bp : X.cone(a)) {
            if (X.geq(b, bp)) continue;
            for (int cp : X.cone(b)) {
                if (!X.geq(bp, cp) || bp == cp) continue;
                int ci = C.chain_index(1, Chain{{bp, cp}});
                acc += extend(phi.values[static_cast<std::size_t>(ci)], sb);
            }
        }
        out.values[i] = std::move(acc);
    });
    return out;
}

Field mobius1(const Complex& C, const Field& Phi) {
    check_deg(Phi, 1, "mobius1");
    check_closed(C, "mobius1");
    const auto& X = C.X();
    const IncidenceFn& mu = C.mu();
    const auto& chains = C.chains(1);
    const std::size_t n = static_cast<std::size_t>(X.size());

    // stage one: ν_{a0}(Φ)_{b1} = Σ_{b0∈Λ^{a0}∖Λ^{b1}} μ_{a0 b0} [Φ_{b0, b0∩b1}]_{b1},
    // computed for every initial member a0 of a chain and every member b1
    std::vector<bool> is_initial(n, false);
    for (const Chain& c : chains) is_initial[static_cast<std::size_t>(c.idx[0])] = true;
    std::vector<std::vector<Tensor>> nu(n);
    par::for_each(n, [&](std::size_t a0) {
        if (!is_initial[a0]) return;
        auto& row = nu[a0];
        row.reserve(n);
        for (int b1 = 0; b1 < X.size(); ++b1) {
            const Shape& sb1 = C.member_shape(b1);
            Tensor acc(sb1);
            for (int b0 : X.cone(static_cast<int>(a0))) {
                if (X.geq(b1, b0)) continue; // b0 ∈ Λ^{b1} excluded
                auto coef = mu(static_cast<int>(a0), b0);
                if (coef == 0) continue;
                int m = X.intersect(b0, b1); // strict subregion of b0 here
                int ci = C.chain_index(1, Chain{{b0, m}});
                Tensor e = extend(Phi.values[static_cast<std::size_t>(ci)], sb1);
                e *= static_cast<double>(coef);
                acc += e;
            }
            row.push_back(std::move(acc));
        }
    });

    // stage two: μ(Φ)_{a0 a1} = Σ_{b1∈Λ^{a1}} μ_{a1 b1} [ν_{a0}(Φ)_{b1}]_{a1}
    Field out = make_field(C, 1);
    par::for_each(chains.size(), [&](std::size_t i) {
        const int a0 = chains[i].idx[0];
        const int a1 = chains[i].idx[1];
        const Shape& sa1 = C.member_shape(a1);
        Tensor acc(sa1);
        for (int b1 : X.cone(a1)) {
            auto coef = mu(a1, b1);
            if (coef == 0) continue;
            Tensor e = extend(nu[static_cast<std::size_t>(a0)][static_cast<std::size_t>(b1)], sa1);
            e *= static_cast<double>(coef);
            acc += e;
        }
        out.values[i] = std::move(acc);
    });
    return out;
}

namespace {

Field apply_zeta(const Complex& C, const Field& f) {
    if (f.degree == 0) return zeta0(C, f);
    if (f.degree == 1) return zeta1(C, f);
    throw PreconditionError("zeta transform only implemented in degrees 0 and 1");
}

Field apply_mu(const Complex& C, const Field& f) {
    if (f.degree == 0) return mobius0(C, f);
    if (f.degree == 1) return mobius1(C, f);
    throw PreconditionError("Moebius transform only implemented in degrees 0 and 1");
}

} // namespace

FieldOp zeta_conjugate(FieldOp T, int in_degree, int out_degree) {
    return [T = std::move(T), in_degree, out_degree](const Complex& C,
                                                     const Field& f) -> Field {
        if (f.degree != in_degree)
            throw PreconditionError("conjugated operator: wrong input degree");
        Field g = apply_mu(C, f);
        Field h = T(C, g);
        if (h.degree != out_degree)
            throw PreconditionError("conjugated operator: wrong output degree");
        return apply_zeta(C, h);
    };
}

FieldOp mu_conjugate(FieldOp T, int in_degree, int out_degree) {
    return [T = std::move(T), in_degree, out_degree](const Complex& C,
                                                     const Field& f) -> Field {
        if (f.degree != in_degree)
            throw PreconditionError("conjugated operator: wrong input degree");
        Field g = apply_zeta(C, f);
        Field h = T(C, g);
        if (h.degree != out_degree)
            throw PreconditionError("conjugated operator: wrong output degree");
        return apply_mu(C, h);
    };
}

namespace ref {

Field zeta0(const Complex& C, const Field& u) {
    const auto& X = C.X();
    Field out = make_field(C, 0);
    for (int a = 0; a < X.size(); ++a) {
        const Shape& sa = C.member_shape(a);
        for (int b : X.cone(a))
            out.values[static_cast<std::size_t>(a)] +=
                extend(u.values[static_cast<std::size_t>(b)], sa);
    }
    return out;
}

Field mobius0(const Complex& C, const Field& U) {
    const auto& X = C.X();
    const IncidenceFn& mu = C.mu();
    Field out = make_field(C, 0);
    for (int a = 0; a < X.size(); ++a) {
        const Shape& sa = C.member_shape(a);
        for (int b : X.cone(a)) {
            Tensor e = extend(U.values[static_cast<std::size_t>(b)], sa);
            e *= static_cast<double>(mu(a, b));
            out.values[static_cast<std::size_t>(a)] += e;
        }
    }
    return out;
}

Field zeta1(const Complex& C, const Field& phi) {
    const auto& X = C.X();
    const auto& chains = C.chains(1);
    Field out = make_field(C, 1);
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const int a = chains[i].idx[0];
        const int b = chains[i].idx[1];
        const Shape& sb = C.member_shape(b);
        for (std::size_t j = 0; j < chains.size(); ++j) {
            const int bp = chains[j].idx[0];
            const int cp = chains[j].idx[1];
            if (!X.geq(a, bp) || X.geq(b, bp)) continue; // bp ∈ Λ^a ∖ Λ^b
            if (!X.geq(b, cp)) continue;                 // cp ∈ Λ^b
            out.values[i] += extend(phi.values[j], sb);
        }
    }
    return out;
}

Field mobius1(const Complex& C, const Field& Phi) {
    const auto& X = C.X();
    const IncidenceFn& mu = C.mu();
    const auto& chains = C.chains(1);
    Field out = make_field(C, 1);
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const int a0 = chains[i].idx[0];
        const int a1 = chains[i].idx[1];
        const Shape& sa1 = C.member_shape(a1);
        Tensor acc(sa1);
        for (int b1 : X.cone(a1)) {
            auto c1 = mu(a1, b1);
            if (c1 == 0) continue;
            for (int b0 : X.cone(a0)) {
                if (X.geq(b1, b0)) continue;
                auto c0 = mu(a0, b0);
                if (c0 == 0) continue;
                int m = X.intersect(b0, b1);
                int ci = C.chain_index(1, Chain{{b0, m}});
                Tensor e = extend(Phi.values[static_cast<std::size_t>(ci)], sa1);
                e *= static_cast<double>(c1 * c0);
                acc += e;
            }
        }
        out.values[i] = std::move(acc);
    }
    return out;
}

} // namespace ref

} // namespace gbpd
