#include "gbpd/energy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gbpd/complex.hpp"
#include "gbpd/parallel.hpp"
#include "gbpd/transforms.hpp"

namespace gbpd {

double free_energy(const Tensor& H, double theta) {
    if (!(theta > 0)) throw PreconditionError("temperature parameter must be positive");
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < H.size(); ++i) m = std::min(m, theta * H[i]);
    double z = 0;
    for (std::size_t i = 0; i < H.size(); ++i) z += std::exp(-(theta * H[i] - m));
    return (m - std::log(z)) / theta;
}

Tensor effective_energy(const Tensor& H, const Shape& target) {
    FiberIndexer ix(H.shape(), target);
    Tensor m(target, std::numeric_limits<double>::infinity());
    ix.for_each([&](std::size_t ia, std::size_t ib) { m[ib] = std::min(m[ib], H[ia]); });
    Tensor z(target);
    ix.for_each([&](std::size_t ia, std::size_t ib) { z[ib] += std::exp(-(H[ia] - m[ib])); });
    Tensor out(target);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = m[i] - std::log(z[i]);
    return out;
}

Field effective_gradient(const Complex& C, const Field& H) {
    if (H.degree != 0) throw PreconditionError("effective_gradient needs degree 0");
    const auto& chains = C.chains(1);
    Field out = make_field(C, 1);
    par::for_each(chains.size(), [&](std::size_t i) {
        const int a = chains[i].idx[0];
        const int b = chains[i].idx[1];
        out.values[i] = H.values[static_cast<std::size_t>(b)] -
                        effective_energy(H.values[static_cast<std::size_t>(a)],
                                         C.member_shape(b));
    });
    return out;
}

double shannon_entropy(const Belief& p) {
    double s = 0;
    const Tensor& d = p.density();
    for (std::size_t i = 0; i < d.size(); ++i) s -= d[i] * std::log(d[i]);
    return s;
}

double conditional_entropy(const Belief& p, const Shape& target) {
    Tensor pb = partial_sum(p.density(), target);
    Tensor pbe = extend(pb, p.shape());
    double s = 0;
    const Tensor& d = p.density();
    for (std::size_t i = 0; i < d.size(); ++i) s -= d[i] * std::log(d[i] / pbe[i]);
    return s;
}

double mutual_information(const std::map<Region, Belief>& marginals, const Region& a) {
    if (a.size() > 4)
        throw PreconditionError("mutual_information gated to regions of at most 4 variables");
    if (a.empty()) return 0.0;
    const auto& vars = a.vars();
    double acc = 0;
    for (unsigned mask = 1; mask < (1u << vars.size()); ++mask) {
        std::vector<Var> sub;
        for (std::size_t j = 0; j < vars.size(); ++j)
            if (mask & (1u << j)) sub.push_back(vars[j]);
        Region b(sub);
        auto it = marginals.find(b);
        if (it == marginals.end())
            throw PreconditionError("missing marginal for subset " + b.str());
        double sign = (b.size() % 2 == 1) ? 1.0 : -1.0;
        acc += sign * shannon_entropy(it->second);
    }
    return acc;
}

std::map<Region, Belief> power_set_marginals(const Space& space, const Belief& joint) {
    const Region a = joint.shape().region();
    const auto& vars = a.vars();
    std::map<Region, Belief> out;
    for (unsigned mask = 1; mask < (1u << vars.size()); ++mask) {
        std::vector<Var> sub;
        for (std::size_t j = 0; j < vars.size(); ++j)
            if (mask & (1u << j)) sub.push_back(vars[j]);
        Region b(sub);
        out.emplace(b, Belief(partial_sum(joint.density(), space.shape(b))));
    }
    return out;
}

double bethe_entropy(const Complex& C, const BeliefField& p) {
    const auto& c = C.mobius_nums().c;
    double s = 0;
    for (std::size_t b = 0; b < p.size(); ++b)
        s += static_cast<double>(c[b]) * shannon_entropy(p[b]);
    return s;
}

double bethe_free_energy(const Complex& C, const BeliefField& p, const Field& H) {
    if (H.degree != 0) throw PreconditionError("bethe_free_energy needs degree 0");
    const auto& c = C.mobius_nums().c;
    double s = 0;
    for (std::size_t b = 0; b < p.size(); ++b)
        s += static_cast<double>(c[b]) *
             (inner(p[b].density(), H.values[b]) - shannon_entropy(p[b]));
    return s;
}

double criticality_residual(const Complex& C, const BeliefField& p, const Field& H,
                            double consistency_tol) {
    if (C.X().index_of(Region{}) < 0)
        throw PreconditionError("criticality_residual requires ∅ ∈ X");
    int e = C.X().index_of(Region{});
    if (H.values[static_cast<std::size_t>(e)].sup_norm() > 1e-12)
        throw PreconditionError("criticality_residual assumes H_∅ = 0");
    Field q = density_field(C, p);
    double gap = differential(C, q).sup_norm();
    if (gap > consistency_tol)
        throw PreconditionError("beliefs are not consistent: ‖dq‖ = " +
                                std::to_string(gap));

    // target r = (-ln p) - H in A_0(X)
    Field r = make_field(C, 0);
    for (std::size_t b = 0; b < p.size(); ++b) {
        Tensor t = safe_log(p[b].density());
        t *= -1.0;
        r.values[b] = t - H.values[b];
    }
    std::vector<double> rv = flatten(r);

    // columns: φ-basis -> ζ(δ′ φ)
    const std::size_t rows = field_dim(C, 0);
    const std::size_t cols = field_dim(C, 1);
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::vector<double> unit(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
        unit[j] = 1.0;
        Field phi = unflatten(C, 1, unit);
        unit[j] = 0.0;
        std::vector<double> col = flatten(zeta0(C, truncated_divergence(C, phi)));
        for (std::size_t i = 0; i < rows; ++i)
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }
    Eigen::VectorXd b(static_cast<Eigen::Index>(rows));
    for (std::size_t i = 0; i < rows; ++i) b(static_cast<Eigen::Index>(i)) = rv[i];

    // normal equations with a small ridge; the flux kernel is large
    Eigen::MatrixXd G = A.transpose() * A;
    G.diagonal().array() += 1e-12;
    Eigen::VectorXd x = G.ldlt().solve(A.transpose() * b);
    return (A * x - b).norm();
}

double covariance(const Tensor& H, const Tensor& f, const Tensor& g) {
    if (!(f.shape() == g.shape()) || !(f.shape() == H.shape()))
        throw PreconditionError("covariance expects matching shapes");
    Belief p = gibbs(H);
    double efg = inner(f, g, p);
    Shape scalar{{}, {}};
    double ef = conditional_expectation(H, f, scalar)[0];
    double eg = conditional_expectation(H, g, scalar)[0];
    return efg - ef * eg;
}

} // namespace gbpd
