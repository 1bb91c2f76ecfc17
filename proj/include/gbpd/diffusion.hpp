#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gbpd/field.hpp"

namespace gbpd {

enum class FluxKind { Standard, Normalized, Canonical };

enum class DivergenceMode { Full, Truncated, Interior };

struct RunConfig {
    double step = 1.0;   // λ ∈ (0,1]
    double tol = 1e-10;  // residual threshold
    int max_iters = 100;
    DivergenceMode mode = DivergenceMode::Truncated;
    bool normalize_each_step = true;
    bool record_trace = true;

    void validate() const;
};

struct TraceEntry {
    int iter = 0;
    double residual = 0;
    Tensor global_sum;      // conserved under full δ
    Tensor bethe_log_state; // centered Σ_a c_a ln q_a, conserved by BP
};

using Trace = std::vector<TraceEntry>;

struct Equilibrium {
    Field u;       // interaction potentials
    BeliefField q; // beliefs of ζ·u
    bool converged = false;
    bool diverged = false;
    int iters = 0;
    double residual = 0;
    double consistency = 0; // ‖dq‖∞
};

/// Dirichlet data: boundary split plus pinned potentials on ∂X.
struct BoundaryClamp {
    BoundarySplit split;
    Field values; // degree 0; only boundary entries are read
};

/// Energy flux of the potentials u. Standard: Φ = -D∘ζ. Normalized: Φ with
/// the flux to ∅ Möbius-inverted. Canonical: φ = μ·Φ.
Field flux(const Complex& C, const Field& u, FluxKind kind);

/// One explicit Euler step u' = u + λ·Δ(flux(u)) with Δ per mode; the
/// optional normalization shifts u along constants so every local free
/// energy vanishes.
Field euler_step(const Complex& C, const Field& u, const RunConfig& cfg, FluxKind kind,
                 const BoundaryClamp* clamp = nullptr);

/// Iterates euler_step from u(0) = h until the residual meets cfg.tol.
/// Divergence (residual above 1e6 or non-finite) is reported, not thrown.
std::pair<Equilibrium, Trace> run(const Complex& C, const Field& h, const RunConfig& cfg,
                                  FluxKind kind, const BoundaryClamp* clamp = nullptr);

/// Classical multiplicative GBP; cross-validation oracle for euler_step.
struct BpState {
    BeliefField q;
    Field log_messages; // -ln m on every 1-chain
};
BpState bp_messages(const Complex& C, const Field& factors, const Field& m0, double step,
                    int iters);

struct ConservationReport {
    double global_sum_drift = 0;
    double bethe_log_drift = 0;
};
ConservationReport conservation_check(const Trace& trace);

/// (‖δΦ(u)‖∞, ‖D(ζ·u)‖∞): at a stationary point of a faithful flux both
/// vanish together.
std::pair<double, double> faithfulness_probe(const Complex& C, const Field& u,
                                             FluxKind kind = FluxKind::Standard);

/// Matrix of v ↦ δ(∇^μ v) on the degree-0 basis, ∇ linearised at the
/// beliefs of u*; the canonical flow linearises to its negative.
Eigen::MatrixXd twisted_laplacian(const Complex& C, const Field& u_star);

struct Spectrum {
    std::vector<std::complex<double>> eigenvalues;
    double max_residual = 0; // max ‖Lv - λv‖ over eigenpairs
};
Spectrum spectrum(const Eigen::MatrixXd& L);

} // namespace gbpd
