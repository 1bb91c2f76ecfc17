// Command-line front end: model ingestion, inference runs, brute-force
// oracles and machine-readable JSON reports.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gbpd/complex.hpp"
#include "gbpd/diffusion.hpp"
#include "gbpd/energy.hpp"
#include "gbpd/interaction.hpp"
#include "gbpd/model.hpp"
#include "gbpd/oracle.hpp"
#include "gbpd/props.hpp"
#include "gbpd/transforms.hpp"

using nlohmann::json;
using namespace gbpd;

namespace {

struct FluxOptions {
    std::string flux = "canonical";
    double step = 1.0;
    double tol = 1e-10;
    int max_iters = 100;
    std::string mode; // empty -> default per clamp
    bool no_normalize = false;
    bool use_clamp = false;
    std::string trace_file;
};

void add_flux_options(CLI::App* cmd, FluxOptions& opt) {
    cmd->add_option("--flux", opt.flux, "standard|normalized|canonical")
        ->check(CLI::IsMember({"standard", "normalized", "canonical"}));
    cmd->add_option("--step", opt.step, "Euler step λ in (0,1]");
    cmd->add_option("--tol", opt.tol, "residual threshold");
    cmd->add_option("--max-iters", opt.max_iters, "iteration cap");
    cmd->add_option("--mode", opt.mode, "full|truncated|interior")
        ->check(CLI::IsMember({"", "full", "truncated", "interior"}));
    cmd->add_flag("--no-normalize", opt.no_normalize, "skip per-step constant shifts");
    cmd->add_flag("--clamp", opt.use_clamp, "enforce the model's Dirichlet boundary");
    cmd->add_option("--trace", opt.trace_file, "write a JSON-lines iteration log");
}

FluxKind flux_kind(const std::string& s) {
    if (s == "standard") return FluxKind::Standard;
    if (s == "normalized") return FluxKind::Normalized;
    return FluxKind::Canonical;
}

RunConfig make_config(const FluxOptions& opt) {
    RunConfig cfg;
    cfg.step = opt.step;
    cfg.tol = opt.tol;
    cfg.max_iters = opt.max_iters;
    if (opt.use_clamp)
        cfg.mode = DivergenceMode::Interior;
    else if (opt.mode == "full")
        cfg.mode = DivergenceMode::Full;
    else if (opt.mode == "interior")
        cfg.mode = DivergenceMode::Interior;
    else
        cfg.mode = DivergenceMode::Truncated;
    cfg.normalize_each_step =
        !opt.no_normalize && cfg.mode != DivergenceMode::Interior &&
        cfg.mode != DivergenceMode::Full;
    return cfg;
}

json marginals_json(const Complex& C, const BeliefField& q) {
    json out = json::array();
    for (int a = 0; a < C.X().size(); ++a) {
        json m;
        m["vars"] = C.X().member(a).vars();
        m["table"] = q[static_cast<std::size_t>(a)].density().values();
        out.push_back(std::move(m));
    }
    return out;
}

std::pair<Equilibrium, Trace> run_model(const Model& model, const FluxOptions& opt) {
    RunConfig cfg = make_config(opt);
    const BoundaryClamp* clamp = nullptr;
    if (opt.use_clamp) {
        if (!model.clamp)
            throw PreconditionError("--clamp given but the model declares no boundary");
        clamp = &*model.clamp;
    }
    auto result = run(*model.complex, model.h, cfg, flux_kind(opt.flux), clamp);
    if (!opt.trace_file.empty()) {
        std::ofstream tf(opt.trace_file);
        for (const TraceEntry& e : result.second) {
            json line;
            line["iter"] = e.iter;
            line["residual"] = e.residual;
            tf << line.dump() << "\n";
        }
    }
    return result;
}

int cmd_infer(const Model& model, const FluxOptions& opt) {
    auto [eq, trace] = run_model(model, opt);
    ConservationReport cons = conservation_check(trace);
    json out;
    out["converged"] = eq.converged;
    out["diverged"] = eq.diverged;
    out["iterations"] = eq.iters;
    out["residual"] = eq.residual;
    out["consistency"] = eq.consistency;
    out["flux"] = opt.flux;
    out["step"] = opt.step;
    out["conservation"] = {{"global_sum_drift", cons.global_sum_drift},
                           {"bethe_log_drift", cons.bethe_log_drift}};
    out["marginals"] = marginals_json(*model.complex, eq.q);
    std::cout << out.dump(2) << "\n";
    return eq.diverged ? 4 : 0;
}

int cmd_exact(const Model& model) {
    const Complex& C = *model.complex;
    GlobalModel M = globalize(C, model.h);
    BeliefField p = exact_marginals(C, M);
    json out;
    out["global_free_energy"] = free_energy(M.H);
    out["global_entropy"] = shannon_entropy(gibbs(M.H));
    out["marginals"] = marginals_json(C, p);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_check(const Model& model) {
    auto results = run_property_suite(*model.complex, model.h);
    bool all = true;
    json out = json::array();
    for (const auto& r : results) {
        json line;
        line["name"] = r.name;
        line["pass"] = r.pass;
        line["error"] = r.value;
        line["tol"] = r.tol;
        out.push_back(std::move(line));
        all = all && r.pass;
        std::cerr << (r.pass ? "[pass] " : "[FAIL] ") << r.name << " (err " << r.value
                  << ", tol " << r.tol << ")\n";
    }
    std::cout << out.dump(2) << "\n";
    return all ? 0 : 1;
}

int cmd_compare(const Model& model, const FluxOptions& opt) {
    const Complex& C = *model.complex;
    auto [eq, trace] = run_model(model, opt);
    GlobalModel M = globalize(C, model.h);
    BeliefField p = exact_marginals(C, M);
    json out;
    out["converged"] = eq.converged;
    out["iterations"] = eq.iters;
    double max_tv = 0;
    json per_region = json::array();
    for (int a = 0; a < C.X().size(); ++a) {
        const Tensor& qa = eq.q[static_cast<std::size_t>(a)].density();
        const Tensor& pa = p[static_cast<std::size_t>(a)].density();
        double tv = 0;
        for (std::size_t i = 0; i < qa.size(); ++i) tv += std::abs(qa[i] - pa[i]);
        tv *= 0.5;
        max_tv = std::max(max_tv, tv);
        per_region.push_back({{"vars", C.X().member(a).vars()}, {"tv", tv}});
    }
    out["per_region_tv"] = per_region;
    out["max_tv"] = max_tv;
    double fb = bethe_free_energy(C, eq.q, zeta0(C, model.h));
    double fg = free_energy(M.H);
    out["bethe_free_energy"] = fb;
    out["global_free_energy"] = fg;
    out["free_energy_gap"] = fb - fg;
    std::cout << out.dump(2) << "\n";
    return eq.diverged ? 4 : 0;
}

int cmd_spectrum(const Model& model, const FluxOptions& opt) {
    auto [eq, trace] = run_model(model, opt);
    if (!eq.converged)
        throw PreconditionError("spectrum needs a converged equilibrium; residual " +
                                std::to_string(eq.residual));
    Eigen::MatrixXd L = twisted_laplacian(*model.complex, eq.u);
    Spectrum sp = spectrum(L);
    json out;
    out["iterations"] = eq.iters;
    out["residual"] = eq.residual;
    out["eigensolver_residual"] = sp.max_residual;
    json eig = json::array();
    for (const auto& z : sp.eigenvalues)
        eig.push_back({{"re", z.real()}, {"im", z.imag()}});
    out["eigenvalues"] = eig;
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized belief propagation as homological diffusion"};
    app.require_subcommand(1);

    std::string model_path;
    FluxOptions opt;

    auto* infer = app.add_subcommand("infer", "run the diffusion to equilibrium");
    infer->add_option("model", model_path, "model JSON file")->required();
    add_flux_options(infer, opt);

    auto* exact = app.add_subcommand("exact", "brute-force marginals and free energy");
    exact->add_option("model", model_path, "model JSON file")->required();

    auto* check = app.add_subcommand("check", "run the property suite");
    check->add_option("model", model_path, "model JSON file")->required();

    auto* compare = app.add_subcommand("compare", "inference vs. brute force");
    compare->add_option("model", model_path, "model JSON file")->required();
    add_flux_options(compare, opt);

    auto* spec = app.add_subcommand("spectrum", "twisted-laplacian eigenvalues");
    spec->add_option("model", model_path, "model JSON file")->required();
    add_flux_options(spec, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        Model model = parse_model(model_path);
        if (infer->parsed()) return cmd_infer(model, opt);
        if (exact->parsed()) return cmd_exact(model);
        if (check->parsed()) return cmd_check(model);
        if (compare->parsed()) return cmd_compare(model, opt);
        if (spec->parsed()) return cmd_spectrum(model, opt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const GuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 5;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return 4;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
