#include "gbpd/interaction.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace gbpd {

namespace {

// coordinates of a linear index in the row-major layout (slowest first)
std::vector<int> decode(const Shape& s, std::size_t idx) {
    std::vector<int> coord(s.cards.size(), 0);
    for (std::size_t k = s.cards.size(); k-- > 0;) {
        coord[k] = static_cast<int>(idx % static_cast<std::size_t>(s.cards[k]));
        idx /= static_cast<std::size_t>(s.cards[k]);
    }
    return coord;
}

using cplx = std::complex<double>;

// naive per-axis DFT; region tables are small by construction
std::vector<cplx> dft(const Shape& s, const std::vector<cplx>& in, int dir) {
    std::vector<cplx> cur = in;
    std::size_t outer_block = 1; // product of cards before the axis
    for (std::size_t ax = 0; ax < s.cards.size(); ++ax) {
        const std::size_t n = static_cast<std::size_t>(s.cards[ax]);
        std::size_t inner = cur.size() / (outer_block * n);
        std::vector<cplx> next(cur.size());
        for (std::size_t o = 0; o < outer_block; ++o)
            for (std::size_t i = 0; i < inner; ++i)
                for (std::size_t k = 0; k < n; ++k) {
                    cplx acc = 0;
                    for (std::size_t x = 0; x < n; ++x) {
                        double ang = 2.0 * std::numbers::pi * static_cast<double>(dir) *
                                     static_cast<double>(k * x) / static_cast<double>(n);
                        acc += cur[(o * n + x) * inner + i] * std::polar(1.0, ang);
                    }
                    next[(o * n + k) * inner + i] = acc;
                }
        cur = std::move(next);
        outer_block *= n;
    }
    return cur;
}

} // namespace

CharacterPartition character_partition(const Complex& C, const Region& a) {
    const auto& X = C.X();
    int ia = X.require_member(a);
    if (!X.closed())
        throw PreconditionError("character_partition requires a closed hypergraph");
    const Shape& sa = C.member_shape(ia);
    CharacterPartition out;
    out.region = ia;
    for (std::size_t k = 0; k < sa.size(); ++k) {
        std::vector<int> coord = decode(sa, k);
        std::vector<Var> supp;
        for (std::size_t j = 0; j < coord.size(); ++j)
            if (coord[j] != 0) supp.push_back(sa.vars[j]);
        int b = x_closure(X, Region(supp)); // smallest member containing the support
        if (!X.geq(ia, b))
            throw PreconditionError("decomposition unavailable: support " +
                                    Region(supp).str() + " closes outside " + a.str());
        out.groups[b].push_back(k);
    }
    return out;
}

std::map<int, Tensor> interaction_components(const Complex& C, const Tensor& u) {
    const Shape& sa = u.shape();
    int ia = C.X().require_member(sa.region());
    CharacterPartition part = character_partition(C, sa.region());

    std::vector<cplx> in(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) in[i] = u[i];
    std::vector<cplx> hat = dft(sa, in, -1);

    std::map<int, Tensor> out;
    const double scale = 1.0 / static_cast<double>(sa.size());
    for (const auto& [b, modes] : part.groups) {
        std::vector<cplx> masked(hat.size(), cplx(0, 0));
        for (std::size_t k : modes) masked[k] = hat[k];
        std::vector<cplx> back = dft(sa, masked, +1);
        Tensor comp(sa);
        double resid = 0;
        for (std::size_t i = 0; i < back.size(); ++i) {
            comp[i] = back[i].real() * scale;
            resid = std::max(resid, std::abs(back[i].imag()) * scale);
        }
        if (resid > 1e-10)
            throw NumericError("imaginary residue " + std::to_string(resid) +
                               " in interaction component of " + sa.region().str());
        out.emplace(b, std::move(comp));
    }
    (void)ia;
    return out;
}

Tensor project_interaction(const Complex& C, const Tensor& u, const Region& b) {
    int ib = C.X().require_member(b);
    auto comps = interaction_components(C, u);
    auto it = comps.find(ib);
    if (it == comps.end()) return Tensor(u.shape()); // empty group
    return it->second;
}

Field interaction_projection(const Complex& C, const Field& u) {
    if (u.degree != 0) throw PreconditionError("interaction_projection needs degree 0");
    const auto& X = C.X();
    Field out = make_field(C, 0);
    for (int a = 0; a < X.size(); ++a) {
        auto comps = interaction_components(C, u.values[static_cast<std::size_t>(a)]);
        for (const auto& [b, comp] : comps) {
            // the Z_b component is a function of x_b; bring it down to b
            out.values[static_cast<std::size_t>(b)] +=
                restrict_mean(comp, C.member_shape(b));
        }
    }
    return out;
}

Tensor global_sum(const Complex& C, const Field& u) {
    if (u.degree != 0) throw PreconditionError("global_sum needs a degree-0 field");
    Shape omega = C.space().shape(C.X().omega());
    Tensor out(omega);
    for (const Tensor& t : u.values) out += extend(t, omega);
    return out;
}

bool homologous(const Complex& C, const Field& u, const Field& v, double tol) {
    Tensor d = global_sum(C, u) - global_sum(C, v);
    return d.sup_norm() < tol;
}

} // namespace gbpd
