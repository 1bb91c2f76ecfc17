#include "gbpd/diffusion.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "gbpd/complex.hpp"
#include "gbpd/energy.hpp"
#include "gbpd/interaction.hpp"
#include "gbpd/parallel.hpp"
#include "gbpd/transforms.hpp"

namespace gbpd {

namespace {
constexpr double kDivergenceThreshold = 1e6;
}

void RunConfig::validate() const {
    if (!(step > 0.0 && step <= 1.0))
        throw PreconditionError("step must lie in (0, 1]");
    if (!(tol > 0)) throw PreconditionError("tolerance must be positive");
    if (max_iters < 0) throw PreconditionError("max_iters must be non-negative");
}

Field flux(const Complex& C, const Field& u, FluxKind kind) {
    if (u.degree != 0) throw PreconditionError("flux expects a degree-0 field");
    Field Phi = -1.0 * effective_gradient(C, zeta0(C, u));
    switch (kind) {
        case FluxKind::Standard:
            return Phi;
        case FluxKind::Normalized: {
            int e = C.X().index_of(Region{});
            if (e < 0)
                throw PreconditionError("normalized flux requires ∅ ∈ X");
            // Möbius inversion on the components outbound to ∅
            const auto& chains = C.chains(1);
            Field out = Phi;
            const IncidenceFn& mu = C.mu();
            for (std::size_t i = 0; i < chains.size(); ++i) {
                if (chains[i].terminal() != e) continue;
                const int a = chains[i].idx[0];
                Tensor acc(C.member_shape(e));
                for (int b : C.X().cone(a)) {
                    if (b == e) continue; // (∅,∅) is degenerate
                    auto coef = mu(a, b);
                    if (coef == 0) continue;
                    int ci = C.chain_index(1, Chain{{b, e}});
                    Tensor t = Phi.values[static_cast<std::size_t>(ci)];
                    t *= static_cast<double>(coef);
                    acc += t;
                }
                out.values[i] = std::move(acc);
            }
            return out;
        }
        case FluxKind::Canonical:
            if (!C.X().closed())
                throw PreconditionError("canonical flux requires an ∩-closed hypergraph");
            return mobius1(C, Phi);
    }
    throw PreconditionError("unknown flux kind");
}

namespace {

Field apply_mode(const Complex& C, const Field& phi, DivergenceMode mode,
                 const BoundaryClamp* clamp) {
    switch (mode) {
        case DivergenceMode::Full:
            return boundary(C, phi);
        case DivergenceMode::Truncated:
            return truncated_divergence(C, phi);
        case DivergenceMode::Interior:
            if (!clamp)
                throw PreconditionError("interior mode needs boundary clamp data");
            return interior_divergence(C, phi, clamp->split);
    }
    throw PreconditionError("unknown divergence mode");
}

// shift u along constants so every local free energy of ζ·u vanishes
void normalize_potentials(const Complex& C, Field& u) {
    Field U = zeta0(C, u);
    Field lambda = make_field(C, 0);
    for (std::size_t a = 0; a < U.values.size(); ++a) {
        double f = free_energy(U.values[a]);
        for (std::size_t i = 0; i < lambda.values[a].size(); ++i)
            lambda.values[a][i] = f;
    }
    u -= mobius0(C, lambda);
}

double residual_norm(const Complex& C, const Field& u, const RunConfig& cfg,
                     FluxKind kind, const BoundaryClamp* clamp) {
    Field d = apply_mode(C, flux(C, u, kind), cfg.mode, clamp);
    return d.sup_norm();
}

} // namespace

Field euler_step(const Complex& C, const Field& u, const RunConfig& cfg, FluxKind kind,
                 const BoundaryClamp* clamp) {
    cfg.validate();
    if (cfg.mode == DivergenceMode::Interior && !clamp)
        throw PreconditionError("interior mode needs boundary clamp data");
    Field d = apply_mode(C, flux(C, u, kind), cfg.mode, clamp);
    Field next = u + cfg.step * d;
    if (clamp) // pinned trace on ∂X
        for (int b : clamp->split.boundary)
            next.values[static_cast<std::size_t>(b)] =
                clamp->values.values[static_cast<std::size_t>(b)];
    if (cfg.normalize_each_step) {
        if (cfg.mode == DivergenceMode::Interior)
            throw PreconditionError("per-step normalization is not defined under clamping");
        normalize_potentials(C, next);
    }
    if (!next.finite())
        throw DivergenceError("non-finite potentials after Euler step");
    return next;
}

std::pair<Equilibrium, Trace> run(const Complex& C, const Field& h, const RunConfig& cfg,
                                  FluxKind kind, const BoundaryClamp* clamp) {
    cfg.validate();
    if (!h.finite()) throw PreconditionError("initial potentials must be finite");

    Field u = h;
    if (clamp)
        for (int b : clamp->split.boundary)
            u.values[static_cast<std::size_t>(b)] =
                clamp->values.values[static_cast<std::size_t>(b)];

    Trace trace;
    auto snapshot = [&](int it, double res) {
        if (!cfg.record_trace) return;
        TraceEntry e;
        e.iter = it;
        e.residual = res;
        e.global_sum = global_sum(C, u);
        // centered Σ_a c_a ln q_a on the full space, stable readout of the
        // multiplicative invariant of BP
        Shape omega = C.space().shape(C.X().omega());
        Tensor acc(omega);
        Field U = zeta0(C, u);
        const auto& c = C.mobius_nums().c;
        for (std::size_t a = 0; a < U.values.size(); ++a) {
            Tensor lnq = safe_log(gibbs(U.values[a]).density());
            lnq *= static_cast<double>(c[a]);
            acc += extend(lnq, omega);
        }
        double mean = acc.sum() / static_cast<double>(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] -= mean;
        e.bethe_log_state = std::move(acc);
        trace.push_back(std::move(e));
    };

    Equilibrium eq;
    double res = residual_norm(C, u, cfg, kind, clamp);
    snapshot(0, res);
    int it = 0;
    while (res > cfg.tol && it < cfg.max_iters) {
        Field next;
        try {
            next = euler_step(C, u, cfg, kind, clamp);
        } catch (const DivergenceError&) {
            eq.diverged = true;
            break;
        }
        u = std::move(next);
        ++it;
        res = residual_norm(C, u, cfg, kind, clamp);
        snapshot(it, res);
        if (!std::isfinite(res) || res > kDivergenceThreshold) {
            eq.diverged = true;
            break;
        }
    }

    eq.u = u;
    eq.q = beliefs_of(C, zeta0(C, u));
    eq.iters = it;
    eq.residual = res;
    eq.converged = !eq.diverged && res <= cfg.tol;
    eq.consistency = differential(C, density_field(C, eq.q)).sup_norm();
    return {std::move(eq), std::move(trace)};
}

BpState bp_messages(const Complex& C, const Field& factors, const Field& m0, double step,
                    int iters) {
    if (factors.degree != 0 || m0.degree != 1)
        throw PreconditionError("bp_messages expects factors of degree 0, messages of degree 1");
    for (const Tensor& t : factors.values)
        for (std::size_t i = 0; i < t.size(); ++i)
            if (!(t[i] > 0)) throw NumericError("factors must be strictly positive");
    for (const Tensor& t : m0.values)
        for (std::size_t i = 0; i < t.size(); ++i)
            if (!(t[i] > 0)) throw NumericError("messages must be strictly positive");

    const auto& X = C.X();
    const auto& chains = C.chains(1);

    // work with energies: h = -ln f, φ = -ln m; beliefs stay normalized
    Field h = make_field(C, 0);
    for (std::size_t a = 0; a < h.values.size(); ++a) {
        h.values[a] = safe_log(factors.values[a]);
        h.values[a] *= -1.0;
    }
    Field phi = make_field(C, 1);
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
        phi.values[i] = safe_log(m0.values[i]);
        phi.values[i] *= -1.0;
    }

    auto beliefs = [&](const Field& lm) {
        // q_a = [ Π_{b∈Λ^a} f_b · Π_{(a'b')∈dΛ^a} m_{a'b'} ]
        BeliefField q;
        for (int a = 0; a < X.size(); ++a) {
            const Shape& sa = C.member_shape(a);
            Tensor E(sa);
            for (int b : X.cone(a))
                E += extend(h.values[static_cast<std::size_t>(b)], sa);
            for (std::size_t i = 0; i < chains.size(); ++i)
                if (!X.geq(a, chains[i].idx[0]) && X.geq(a, chains[i].terminal()))
                    E += extend(lm.values[i], sa);
            q.push_back(gibbs(E));
        }
        return q;
    };

    BpState st;
    st.q = beliefs(phi);
    for (int t = 0; t < iters; ++t) {
        // synchronous sweep: m_{ab} ← m_{ab} (Σ^{ba} q_a / q_b)^λ
        Field next = phi;
        for (std::size_t i = 0; i < chains.size(); ++i) {
            const int a = chains[i].idx[0];
            const int b = chains[i].idx[1];
            Tensor sum = partial_sum(st.q[static_cast<std::size_t>(a)].density(),
                                     C.member_shape(b));
            Tensor ratio(C.member_shape(b));
            const Tensor& qb = st.q[static_cast<std::size_t>(b)].density();
            for (std::size_t k = 0; k < ratio.size(); ++k) {
                if (!(sum[k] > 0)) throw NumericError("non-positive marginal in message update");
                ratio[k] = -std::log(sum[k] / qb[k]);
            }
            ratio *= step;
            next.values[i] += ratio;
        }
        phi = std::move(next);
        st.q = beliefs(phi);
    }
    st.log_messages = std::move(phi);
    return st;
}

ConservationReport conservation_check(const Trace& trace) {
    ConservationReport rep;
    if (trace.empty()) return rep;
    for (const TraceEntry& e : trace) {
        rep.global_sum_drift =
            std::max(rep.global_sum_drift, (e.global_sum - trace.front().global_sum).sup_norm());
        rep.bethe_log_drift = std::max(
            rep.bethe_log_drift, (e.bethe_log_state - trace.front().bethe_log_state).sup_norm());
    }
    return rep;
}

std::pair<double, double> faithfulness_probe(const Complex& C, const Field& u,
                                             FluxKind kind) {
    Field Phi = flux(C, u, kind);
    double div_norm = boundary(C, Phi).sup_norm();
    double grad_norm = effective_gradient(C, zeta0(C, u)).sup_norm();
    return {div_norm, grad_norm};
}

Eigen::MatrixXd twisted_laplacian(const Complex& C, const Field& u_star) {
    Field U = zeta0(C, u_star);
    const std::size_t n = field_dim(C, 0);
    Eigen::MatrixXd L(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<std::vector<double>> cols(n);
    par::for_each(n, [&](std::size_t j) {
        std::vector<double> unit(n, 0.0);
        unit[j] = 1.0;
        Field v = unflatten(C, 0, unit);
        Field w = mobius1(C, nabla(C, U, zeta0(C, v)));
        cols[j] = flatten(boundary(C, w));
    });
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cols[j][i];
    return L;
}

Spectrum spectrum(const Eigen::MatrixXd& L) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(L);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigensolver failed on the twisted laplacian");
    Spectrum out;
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    Eigen::MatrixXcd Lc = L.cast<std::complex<double>>();
    for (Eigen::Index k = 0; k < vals.size(); ++k) {
        out.eigenvalues.push_back(vals(k));
        Eigen::VectorXcd v = vecs.col(k);
        double res = (Lc * v - vals(k) * v).norm();
        out.max_residual = std::max(out.max_residual, res);
    }
    return out;
}

} // namespace gbpd
