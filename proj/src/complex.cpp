#include "gbpd/complex.hpp"

#include "gbpd/parallel.hpp"

namespace gbpd {

Field boundary(const Complex& C, const Field& phi) {
    if (phi.degree < 1) throw PreconditionError("boundary needs degree >= 1");
    const int p = phi.degree - 1;
    const auto& out_chains = C.chains(p);
    const auto& X = C.X();
    Field out = make_field(C, p);

    // gather form of the face formula: each output chain collects the
    // chains obtained by inserting one member
    par::for_each(out_chains.size(), [&](std::size_t oi) {
        const Chain& f = out_chains[oi];
        Tensor acc(C.member_shape(f.terminal()));
        Chain c;
        c.idx.resize(f.idx.size() + 1);
        for (int k = 0; k <= p + 1; ++k) {
            // insert a member at position k
            for (int j = 0; j < k; ++j) c.idx[static_cast<std::size_t>(j)] = f.idx[static_cast<std::size_t>(j)];
            for (int j = k; j <= p; ++j) c.idx[static_cast<std::size_t>(j) + 1] = f.idx[static_cast<std::size_t>(j)];
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            for (int x = 0; x < X.size(); ++x) {
                if (k > 0 && !(X.geq(f.idx[static_cast<std::size_t>(k - 1)], x) &&
                               f.idx[static_cast<std::size_t>(k - 1)] != x))
                    continue;
                if (k <= p && !(X.geq(x, f.idx[static_cast<std::size_t>(k)]) &&
                                x != f.idx[static_cast<std::size_t>(k)]))
                    continue;
                c.idx[static_cast<std::size_t>(k)] = x;
                int ci = C.chain_index(phi.degree, c);
                if (ci < 0) continue;
                const Tensor& v = phi.values[static_cast<std::size_t>(ci)];
                if (k == p + 1) {
                    // the inserted member is the new terminal; its value is
                    // extended back to the output terminal
                    Tensor e = extend(v, C.member_shape(f.terminal()));
                    e *= sign;
                    acc += e;
                } else {
                    Tensor w = v;
                    w *= sign;
                    acc += w;
                }
            }
        }
        out.values[oi] = std::move(acc);
    });
    return out;
}

namespace ref {
Field boundary(const Complex& C, const Field& phi) {
    if (phi.degree < 1) throw PreconditionError("boundary needs degree >= 1");
    const int p = phi.degree - 1;
    Field out = make_field(C, p);
    const auto& in_chains = C.chains(phi.degree);
    for (std::size_t ci = 0; ci < in_chains.size(); ++ci) {
        const Chain& c = in_chains[ci];
        const Tensor& v = phi.values[ci];
        for (int k = 0; k <= p + 1; ++k) {
            Chain f;
            f.idx.reserve(static_cast<std::size_t>(p) + 1);
            for (int j = 0; j <= p + 1; ++j)
                if (j != k) f.idx.push_back(c.idx[static_cast<std::size_t>(j)]);
            int fi = C.chain_index(p, f);
            if (fi < 0) continue;
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            if (k == p + 1) {
                Tensor e = extend(v, C.member_shape(f.terminal()));
                e *= sign;
                out.values[static_cast<std::size_t>(fi)] += e;
            } else {
                Tensor w = v;
                w *= sign;
                out.values[static_cast<std::size_t>(fi)] += w;
            }
        }
    }
    return out;
}
} // namespace ref

Field differential(const Complex& C, const Field& q) {
    const int n = q.degree;
    const auto& out_chains = C.chains(n + 1);
    Field out = make_field(C, n + 1);
    par::for_each(out_chains.size(), [&](std::size_t oi) {
        const Chain& c = out_chains[oi];
        const Shape& tshape = C.member_shape(c.terminal());
        Tensor acc(tshape);
        for (int k = 0; k <= n + 1; ++k) {
            Chain f;
            f.idx.reserve(static_cast<std::size_t>(n) + 1);
            for (int j = 0; j <= n + 1; ++j)
                if (j != k) f.idx.push_back(c.idx[static_cast<std::size_t>(j)]);
            int fi = C.chain_index(n, f);
            if (fi < 0) continue; // cannot happen: faces of a chain are chains
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            if (k == n + 1) {
                // face lives on the previous region; push it forward
                Tensor s = partial_sum(q.values[static_cast<std::size_t>(fi)], tshape);
                s *= sign;
                acc += s;
            } else {
                Tensor w = q.values[static_cast<std::size_t>(fi)];
                w *= sign;
                acc += w;
            }
        }
        out.values[oi] = std::move(acc);
    });
    return out;
}

Field nabla(const Complex& C, const Field& H, const Field& f) {
    if (H.degree != 0 || f.degree != 0)
        throw PreconditionError("nabla expects degree-0 fields");
    const auto& chains = C.chains(1);
    Field out = make_field(C, 1);
    par::for_each(chains.size(), [&](std::size_t i) {
        const int a = chains[i].idx[0];
        const int b = chains[i].idx[1];
        Tensor e = conditional_expectation(H.values[static_cast<std::size_t>(a)],
                                           f.values[static_cast<std::size_t>(a)],
                                           C.member_shape(b));
        out.values[i] = f.values[static_cast<std::size_t>(b)] - e;
    });
    return out;
}

Field interior_divergence(const Complex& C, const Field& phi, const BoundarySplit& split) {
    Field d = boundary(C, phi);
    for (int b : split.boundary)
        d.values[static_cast<std::size_t>(b)] = Tensor(C.member_shape(b));
    return d;
}

Field truncated_divergence(const Complex& C, const Field& phi) {
    Field d = boundary(C, phi);
    int e = C.X().index_of(Region{});
    if (e >= 0) d.values[static_cast<std::size_t>(e)] = Tensor(C.member_shape(e));
    return d;
}

std::pair<Field, Field> flux_split(const Complex& C, const Field& phi,
                                   const BoundarySplit& split) {
    if (phi.degree != 1) throw PreconditionError("flux_split expects a degree-1 field");
    Field interior = make_field(C, 1);
    Field outbound = make_field(C, 1);
    const auto& chains = C.chains(1);
    for (std::size_t i = 0; i < chains.size(); ++i) {
        if (split.is_boundary[static_cast<std::size_t>(chains[i].terminal())])
            outbound.values[i] = phi.values[i];
        else
            interior.values[i] = phi.values[i];
    }
    return {std::move(interior), std::move(outbound)};
}

std::pair<Tensor, Tensor> gauss_cone(const Complex& C, const Field& phi, const Region& a) {
    if (phi.degree != 1) throw PreconditionError("gauss_cone expects a degree-1 field");
    const auto& X = C.X();
    int ia = X.require_member(a);
    const Shape& sa = C.member_shape(ia);

    Field d = boundary(C, phi);
    Tensor lhs(sa);
    for (int b : X.cone(ia)) lhs += extend(d.values[static_cast<std::size_t>(b)], sa);

    Tensor rhs(sa);
    const auto& chains = C.chains(1);
    for (std::size_t i = 0; i < chains.size(); ++i) {
        if (X.geq(ia, chains[i].idx[0]) || !X.geq(ia, chains[i].idx[1])) continue;
        rhs += extend(phi.values[i], sa);
    }
    return {std::move(lhs), std::move(rhs)};
}

} // namespace gbpd
