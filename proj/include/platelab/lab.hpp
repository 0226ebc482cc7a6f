#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "platelab/assembly.hpp"
#include "platelab/bounds.hpp"
#include "platelab/catalogue.hpp"
#include "platelab/config.hpp"
#include "platelab/eigensolve.hpp"
#include "platelab/report.hpp"

namespace platelab {

namespace detail {

inline std::vector<int> default_constants_grid(const ExperimentConfig& cfg, int dim) {
    if (!cfg.constants_grid.empty()) return cfg.constants_grid;
    // quadrature-density sampling with both faces included
    std::vector<int> grid(dim);
    for (int c = 0; c < dim; ++c)
        grid[c] = std::max(33, 2 * cfg.elements[c] + 1);
    return grid;
}

}  // namespace detail

/// Full pipeline: geometry -> assembly -> eigensolve -> bounds/identities.
inline RunReport run_experiment(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.config = cfg;

    const ParametricImmersion imm = make_geometry(cfg.geometry_name, cfg.geometry_params);
    const int k = validate_config(cfg, imm);
    rep.n = imm.intrinsic_dim;
    rep.ambient = imm.ambient_dim;

    VectorXd nu(imm.ambient_dim);
    for (int i = 0; i < imm.ambient_dim; ++i) nu(i) = cfg.drift[i];
    const DriftSpec drift = cfg.drift_unit ? DriftSpec::unit(nu) : DriftSpec{nu, false};

    const DomainSpec domain = DomainSpec::full(imm);
    MeshC1 mesh{domain, cfg.elements, cfg.quadrature_order};
    const AssembledForms forms = assemble(imm, drift, domain, mesh);
    const Spectrum spec = smallest_eigenpairs(forms, k, cfg.residual_tol);
    rep.eigenvalues.assign(spec.eigenvalues.data(), spec.eigenvalues.data() + spec.count());
    rep.residuals.assign(spec.residuals.data(), spec.residuals.data() + spec.count());

    rep.constants = constants(imm, drift, domain, detail::default_constants_grid(cfg, rep.n));

    const EigenfunctionFunctionals fn =
        eigenfunction_functionals(forms, spec.eigenvectors.col(0), rep.n);
    rep.dirichlet_energy = fn.dirichlet;
    rep.phi_hat = fn.phi_hat;
    const double root_l1 = std::sqrt(spec.eigenvalues(0));
    rep.functionals_pass = fn.dirichlet <= root_l1 * (1.0 + 1e-6) &&
                           fn.phi_hat >= -rep.n * root_l1 * (1.0 + 1e-6);

    double trans_res = -1.0;
    const bool wants_translator =
        std::any_of(cfg.theorems.begin(), cfg.theorems.end(), [](const std::string& id) {
            return id.rfind("thm5", 0) == 0 || id.rfind("cor5", 0) == 0;
        });
    if (wants_translator) {
        trans_res = translator_residual(imm, drift, interior_sample_points(imm, 1000, 7u));
        rep.translator_residual = trans_res;
    }

    for (const std::string& id : cfg.theorems) {
        if (id == "thm1.1") rep.bounds.push_back(thm11_check(spec, rep.constants, rep.n));
        else if (id == "cor1.1") rep.bounds.push_back(cor11_check(spec, rep.constants, rep.n));
        else if (id == "cor1.2") rep.bounds.push_back(cor12_check(spec, rep.constants, rep.n));
        else if (id == "cor1.3") rep.bounds.push_back(cor13_check(spec, rep.constants, rep.n));
        else if (id == "thm5.1")
            rep.bounds.push_back(thm51_check(spec, rep.n, trans_res, drift.unit_flag));
        else if (id == "cor5.1")
            rep.bounds.push_back(cor51_check(spec, rep.n, trans_res, drift.unit_flag));
        else if (id == "cor5.2")
            rep.bounds.push_back(cor52_check(spec, rep.n, trans_res, drift.unit_flag));
        else if (id == "cor5.3")
            rep.bounds.push_back(cor53_check(spec, rep.n, trans_res, drift.unit_flag));
        else if (id == "cor6.1")
            rep.bounds.push_back(
                cor6x_check(spec, rep.constants, rep.n, Corollary6Variant::Minimal));
        else if (id == "cor6.2")
            rep.bounds.push_back(
                cor6x_check(spec, rep.constants, rep.n, Corollary6Variant::Sphere));
        else if (id == "cor6.3")
            rep.bounds.push_back(
                cor6x_check(spec, rep.constants, rep.n, Corollary6Variant::UnitSphere));
    }

    if (cfg.run_identities) {
        const auto pts = interior_sample_points(imm, 1000, 11u);
        const auto probes = polynomial_probes(rep.n, 6, 13u);
        rep.identity_violation = identity_suite(imm, drift, pts, probes).max_violation();
    }

    if (cfg.run_general_formula) {
        const TrialFunctions tf = gram_schmidt_trial_functions(imm, drift, forms, spec);
        std::vector<double> deltas = {0.25, 0.5, 1.0, 2.0, 4.0};
        deltas.push_back(closed_form_delta(spec.eigenvalues(0), rep.n, rep.constants));
        rep.general = general_formula_check(imm, drift, forms, spec, tf, deltas);
    }

    rep.aggregate();
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

struct ConvergenceLevel {
    int elements = 0;
    std::vector<double> eigenvalues;
};

struct ConvergenceStudy {
    std::vector<ConvergenceLevel> levels;
    std::vector<double> richardson;       // per-eigenvalue extrapolated limits
    std::vector<double> observed_order;   // per-eigenvalue; HUGE_VAL = "converged" sentinel
    bool monotone = true;                 // nonincreasing to 1e-9 under refinement
};

/// Refine the first coordinate through `level_elements` (all coordinates are
/// scaled by the same factor); levels must be nested (each a multiple of the
/// previous).
inline ConvergenceStudy convergence_study(const ExperimentConfig& cfg,
                                          const std::vector<int>& level_elements) {
    if (level_elements.size() < 3)
        throw ConfigError("convergence study needs at least 3 levels");
    for (size_t i = 1; i < level_elements.size(); ++i)
        if (level_elements[i] <= level_elements[i - 1] ||
            level_elements[i] % level_elements[i - 1] != 0)
            throw ConfigError("refinement levels must be increasing and nested");

    const ParametricImmersion imm = make_geometry(cfg.geometry_name, cfg.geometry_params);
    const int k = validate_config(cfg, imm);
    VectorXd nu(imm.ambient_dim);
    for (int i = 0; i < imm.ambient_dim; ++i) nu(i) = cfg.drift[i];
    const DriftSpec drift = cfg.drift_unit ? DriftSpec::unit(nu) : DriftSpec{nu, false};
    const DomainSpec domain = DomainSpec::full(imm);

    ConvergenceStudy st;
    for (int m : level_elements) {
        std::vector<int> elems = cfg.elements;
        const double factor = static_cast<double>(m) / cfg.elements[0];
        for (size_t c = 0; c < elems.size(); ++c)
            elems[c] = std::max(3, static_cast<int>(std::lround(cfg.elements[c] * factor)));
        elems[0] = m;
        MeshC1 mesh{domain, elems, cfg.quadrature_order};
        const Spectrum spec = smallest_eigenpairs(assemble(imm, drift, domain, mesh), k,
                                                  cfg.residual_tol);
        ConvergenceLevel lvl;
        lvl.elements = m;
        lvl.eigenvalues.assign(spec.eigenvalues.data(),
                               spec.eigenvalues.data() + spec.count());
        st.levels.push_back(lvl);
    }

    const size_t L = st.levels.size();
    const size_t K = st.levels[0].eigenvalues.size();
    for (size_t i = 0; i < K; ++i) {
        for (size_t l = 1; l < L; ++l)
            if (st.levels[l].eigenvalues[i] >
                st.levels[l - 1].eigenvalues[i] + 1e-9 * st.levels[l - 1].eigenvalues[i])
                st.monotone = false;
        const double a = st.levels[L - 3].eigenvalues[i];
        const double b = st.levels[L - 2].eigenvalues[i];
        const double c = st.levels[L - 1].eigenvalues[i];
        const double e1 = a - b, e2 = b - c;
        const double scale = std::abs(c);
        if (std::abs(e1) <= 1e-13 * scale || std::abs(e2) <= 1e-13 * scale) {
            st.observed_order.push_back(HUGE_VAL);  // converged sentinel
            st.richardson.push_back(c);
            continue;
        }
        const double ratio =
            static_cast<double>(st.levels[L - 1].elements) / st.levels[L - 2].elements;
        const double order = std::log(std::abs(e1 / e2)) / std::log(ratio);
        st.observed_order.push_back(order);
        const double q = std::pow(ratio, order);
        st.richardson.push_back(c + (c - b) / (q - 1.0));
    }
    return st;
}

struct IdentityRun {
    IdentityReport report;
    double translator_residual = -1;  // < 0 when drift is not a unit direction
};

inline IdentityRun run_identity_suite(const ExperimentConfig& cfg, int sample_count = 1000) {
    const ParametricImmersion imm = make_geometry(cfg.geometry_name, cfg.geometry_params);
    if (static_cast<int>(cfg.drift.size()) != imm.ambient_dim)
        throw ConfigError("drift dimension does not match ambient dimension");
    VectorXd nu(imm.ambient_dim);
    for (int i = 0; i < imm.ambient_dim; ++i) nu(i) = cfg.drift[i];
    const DriftSpec drift = cfg.drift_unit ? DriftSpec::unit(nu) : DriftSpec{nu, false};
    const auto pts = interior_sample_points(imm, sample_count, 11u);
    IdentityRun out;
    out.report = identity_suite(imm, drift, pts,
                                polynomial_probes(imm.intrinsic_dim, 6, 13u));
    if (drift.unit_flag) out.translator_residual = translator_residual(imm, drift, pts);
    return out;
}

}  // namespace platelab
