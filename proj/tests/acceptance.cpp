// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "platelab/lab.hpp"
#include "platelab/oracles.hpp"

using namespace platelab;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

void run_criterion(int id, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        const auto [pass, detail] = body();
        report(id, pass, detail);
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct PipelineRun {
    ParametricImmersion imm;
    DriftSpec drift;
    AssembledForms forms;
    Spectrum spec;
};

PipelineRun run_pipeline(const std::string& name, const ParamMap& params,
                         const std::vector<double>& nu, bool unit,
                         const std::vector<int>& elements, int k) {
    PipelineRun out;
    out.imm = make_geometry(name, params);
    VectorXd v(out.imm.ambient_dim);
    for (size_t i = 0; i < nu.size(); ++i) v(static_cast<int>(i)) = nu[i];
    out.drift = unit ? DriftSpec::unit(v) : DriftSpec{v, false};
    const DomainSpec domain = DomainSpec::full(out.imm);
    MeshC1 mesh{domain, elements, 8};
    out.forms = assemble(out.imm, out.drift, domain, mesh);
    out.spec = smallest_eigenpairs(out.forms, k);
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

struct BatteryEntry {
    std::string name;
    ParamMap params;
    std::vector<double> nu;
    bool unit;
    std::vector<int> elements;
    int k;
};

const std::vector<BatteryEntry>& battery() {
    static const std::vector<BatteryEntry> entries = {
        {"interval", {}, {0.0}, false, {60}, 2},
        {"interval", {}, {2.0}, false, {60}, 2},
        {"rectangle", {}, {0.8, -0.5, 0.3}, false, {9, 9}, 3},
        {"annulus", {}, {0.4, 0.7}, false, {8, 16}, 3},
        {"sphere_band", {}, {0.0, 0.0, 0.5}, false, {9, 16}, 3},
        {"grim_reaper_arc", {}, {0.0, 1.0}, true, {60}, 2},
        {"grim_reaper_plane", {}, {0.0, 0.0, 1.0}, true, {9, 9}, 3},
    };
    return entries;
}

GeometricConstants battery_constants(const PipelineRun& run) {
    std::vector<int> grid(run.imm.intrinsic_dim, 65);
    return constants(run.imm, run.drift, DomainSpec::full(run.imm), grid);
}

}  // namespace

int main() {
    // 1: classical clamped beam against the transcendental roots
    run_criterion(1, [] {
        const auto t0 = std::chrono::steady_clock::now();
        const PipelineRun run = run_pipeline("interval", {}, {0.0}, false, {100}, 2);
        const double secs = seconds_since(t0);
        const std::vector<double> ref = oracles::beam_reference(2);
        const double e1 = std::abs(run.spec.eigenvalues(0) - ref[0]) / ref[0];
        const double e2 = std::abs(run.spec.eigenvalues(1) - ref[1]) / ref[1];
        const bool pass = e1 <= 5e-4 && e2 <= 5e-4 && secs < 1.0;
        return std::make_pair(pass, "rel err " + fmt(e1) + ", " + fmt(e2) + "; " +
                                        fmt(secs) + " s");
    });

    // 2: gauge-conjugation equivalence for b in {0.5, 1, 2}
    run_criterion(2, [] {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (double b : {0.5, 1.0, 2.0}) {
            const PipelineRun run = run_pipeline("interval", {}, {b}, false, {150}, 4);
            const std::vector<double> ref = oracles::conjugation_oracle(1.0, b, 4);
            for (int i = 0; i < 4; ++i)
                worst = std::max(worst,
                                 std::abs(run.spec.eigenvalues(i) - ref[i]) / ref[i]);
        }
        const double secs = seconds_since(t0);
        const bool pass = worst <= 1e-6 && secs < 10.0;
        return std::make_pair(pass,
                              "worst rel err " + fmt(worst) + "; " + fmt(secs) + " s");
    });

    // 3: pointwise identity suites and translator residuals
    run_criterion(3, [] {
        double worst = 0.0;
        for (const CatalogueEntry& entry : geometry_catalogue()) {
            const ParametricImmersion imm = entry.factory({});
            VectorXd nu = VectorXd::Zero(imm.ambient_dim);
            nu(imm.ambient_dim - 1) = 0.8;
            if (imm.ambient_dim > 1) nu(0) = 0.4;
            const auto rep = identity_suite(imm, DriftSpec{nu, false},
                                            interior_sample_points(imm, 1000, 17u),
                                            polynomial_probes(imm.intrinsic_dim, 4, 19u));
            worst = std::max(worst, rep.max_violation());
        }
        double trans = 0.0;
        {
            const ParametricImmersion arc = make_grim_reaper_arc();
            VectorXd nu(2);
            nu << 0.0, 1.0;
            trans = std::max(trans,
                             translator_residual(arc, DriftSpec::unit(nu),
                                                 interior_sample_points(arc, 1000, 23u)));
            const ParametricImmersion plane = make_grim_reaper_plane();
            VectorXd nu3(3);
            nu3 << 0.0, 0.0, 1.0;
            trans = std::max(trans,
                             translator_residual(plane, DriftSpec::unit(nu3),
                                                 interior_sample_points(plane, 1000, 23u)));
        }
        const bool pass = worst <= 1e-9 && trans <= 1e-9;
        return std::make_pair(pass, "identity max " + fmt(worst) + ", translator max " +
                                        fmt(trans));
    });

    // 4 and 8 share the experiment battery
    static std::vector<std::pair<PipelineRun, GeometricConstants>> battery_runs;
    run_criterion(4, [] {
        const auto t0 = std::chrono::steady_clock::now();
        double worst_scaled_margin = 1e300;
        for (const BatteryEntry& e : battery()) {
            PipelineRun run =
                run_pipeline(e.name, e.params, e.nu, e.unit, e.elements, e.k);
            const GeometricConstants gc = battery_constants(run);
            const int n = run.imm.intrinsic_dim;
            for (const BoundReport& rep :
                 {thm11_check(run.spec, gc, n), cor11_check(run.spec, gc, n),
                  cor12_check(run.spec, gc, n), cor13_check(run.spec, gc, n)}) {
                worst_scaled_margin =
                    std::min(worst_scaled_margin, rep.margin / rep.rhs);
                if (!rep.pass)
                    return std::make_pair(false, e.name + " " + rep.theorem_id +
                                                     " margin " + fmt(rep.margin));
            }
            battery_runs.emplace_back(std::move(run), gc);
        }
        const double secs = seconds_since(t0);
        const bool pass = worst_scaled_margin >= -1e-8 && secs < 300.0;
        return std::make_pair(pass, "worst margin/RHS " + fmt(worst_scaled_margin) +
                                        "; " + fmt(secs) + " s");
    });

    // 5: translator bounds on the grim reaper family, gate on the sphere band
    run_criterion(5, [] {
        for (double x0 : {0.6, 1.0, 1.4}) {
            const PipelineRun run = run_pipeline("grim_reaper_arc", {{"x0", x0}},
                                                 {0.0, 1.0}, true, {60}, 2);
            const double res = translator_residual(
                run.imm, run.drift, interior_sample_points(run.imm, 500, 29u));
            for (const BoundReport& rep :
                 {thm51_check(run.spec, 1, res, true), cor51_check(run.spec, 1, res, true),
                  cor52_check(run.spec, 1, res, true),
                  cor53_check(run.spec, 1, res, true)})
                if (!rep.pass)
                    return std::make_pair(false, "x0 " + fmt(x0) + " " + rep.theorem_id +
                                                     " margin " + fmt(rep.margin));
        }
        const PipelineRun plane = run_pipeline("grim_reaper_plane", {}, {0.0, 0.0, 1.0},
                                               true, {9, 9}, 3);
        const double plane_res = translator_residual(
            plane.imm, plane.drift, interior_sample_points(plane.imm, 500, 29u));
        for (const BoundReport& rep :
             {thm51_check(plane.spec, 2, plane_res, true),
              cor51_check(plane.spec, 2, plane_res, true),
              cor52_check(plane.spec, 2, plane_res, true),
              cor53_check(plane.spec, 2, plane_res, true)})
            if (!rep.pass)
                return std::make_pair(false,
                                      "plane " + rep.theorem_id + " margin " +
                                          fmt(rep.margin));
        // the sphere band must be rejected by the gate
        const PipelineRun band = run_pipeline("sphere_band", {}, {0.0, 0.0, 1.0}, true,
                                              {9, 16}, 3);
        const double band_res = translator_residual(
            band.imm, band.drift, interior_sample_points(band.imm, 200, 29u));
        bool rejected = false;
        try {
            thm51_check(band.spec, 2, band_res, true);
        } catch (const NotATranslator&) {
            rejected = true;
        }
        return std::make_pair(rejected,
                              std::string(rejected
                                              ? "all margins positive, gate rejects sphere band"
                                              : "sphere band was not rejected"));
    });

    // 6: algebraic reduction of the quartic bound at zero constants
    run_criterion(6, [] {
        const GeometricConstants zero;
        double worst = 0.0;
        for (double l1 : {1.0, 31.285, 500.5639, 14617.63}) {
            for (int n : {1, 2, 3, 4}) {
                Spectrum s;
                s.eigenvalues = VectorXd::Constant(n + 1, l1);
                const double rhs = thm11_check(s, zero, n).rhs;
                const double closed = minimal_reduction_rhs(l1, n);
                worst = std::max(worst, std::abs(rhs - closed) / closed);
            }
        }
        return std::make_pair(worst <= 1e-12, "worst rel deviation " + fmt(worst));
    });

    // 7: general formula over the full delta grid and all trial functions
    run_criterion(7, [] {
        double worst_ortho = 0.0;
        bool all_pass = true;
        std::string detail;
        struct Instance {
            std::string name;
            ParamMap params;
            std::vector<double> nu;
            bool unit;
            std::vector<int> elements;
            int k;
        };
        const std::vector<Instance> instances = {
            {"interval", {}, {2.0}, false, {80}, 2},
            {"grim_reaper_arc", {{"x0", 1.0}}, {0.0, 1.0}, true, {80}, 3},
            {"grim_reaper_plane", {}, {0.0, 0.0, 1.0}, true, {8, 8}, 4},
        };
        for (const Instance& inst : instances) {
            const PipelineRun run = run_pipeline(inst.name, inst.params, inst.nu,
                                                 inst.unit, inst.elements, inst.k);
            const TrialFunctions tf =
                gram_schmidt_trial_functions(run.imm, run.drift, run.forms, run.spec);
            worst_ortho = std::max(worst_ortho, tf.ortho_residual);
            const GeometricConstants gc = battery_constants(run);
            std::vector<double> deltas = {0.25, 0.5, 1.0, 2.0, 4.0};
            deltas.push_back(closed_form_delta(run.spec.eigenvalues(0),
                                               run.imm.intrinsic_dim, gc));
            const GeneralFormulaReport rep = general_formula_check(
                run.imm, run.drift, run.forms, run.spec, tf, deltas);
            if (!rep.pass) all_pass = false;
            detail += inst.name + " margin " + fmt(rep.worst_margin) + "; ";
        }
        const bool pass = all_pass && worst_ortho <= 1e-8;
        return std::make_pair(pass, detail + "ortho " + fmt(worst_ortho));
    });

    // 8: proof-step functionals on every battery run
    run_criterion(8, [] {
        if (battery_runs.empty())
            return std::make_pair(false,
                                  std::string("battery unavailable (criterion 4 failed)"));
        double worst_dirichlet = -1e300, worst_phi = 1e300;
        for (const auto& [run, gc] : battery_runs) {
            const int n = run.imm.intrinsic_dim;
            const auto fn =
                eigenfunction_functionals(run.forms, run.spec.eigenvectors.col(0), n);
            const double root = std::sqrt(run.spec.eigenvalues(0));
            if (fn.dirichlet > root * (1.0 + 1e-6))
                return std::make_pair(false, run.imm.name + " dirichlet " +
                                                 fmt(fn.dirichlet) + " > sqrt(lambda1) " +
                                                 fmt(root));
            if (fn.phi_hat < -n * root * (1.0 + 1e-6))
                return std::make_pair(false, run.imm.name + " phi_hat below -n sqrt(lambda1)");
            worst_dirichlet = std::max(worst_dirichlet, fn.dirichlet - root);
            worst_phi = std::min(worst_phi, fn.phi_hat + n * root);
        }
        return std::make_pair(true, "max(dirichlet - sqrt) " + fmt(worst_dirichlet) +
                                        ", min(phi_hat + n sqrt) " + fmt(worst_phi));
    });

    // 9: 1D refinement ladder
    run_criterion(9, [] {
        ExperimentConfig cfg;
        cfg.geometry_name = "interval";
        cfg.drift = {0.0};
        cfg.elements = {25};
        cfg.eigenpair_count = 2;
        const ConvergenceStudy st = convergence_study(cfg, {25, 50, 100, 200});
        double min_order = 1e300;
        for (double o : st.observed_order) min_order = std::min(min_order, o);
        const bool pass = st.monotone && min_order >= 3.5;
        return std::make_pair(pass, "observed order " + fmt(min_order) + ", monotone " +
                                        (st.monotone ? "yes" : "no"));
    });

    // 10: independent 2D discretization cross-check
    run_criterion(10, [] {
        double worst = 0.0;
        for (const std::vector<double> nu : {std::vector<double>{0.0, 0.0, 0.0},
                                             std::vector<double>{3.0, 0.0, 0.0}}) {
            const PipelineRun run = run_pipeline("rectangle", {}, nu, false, {12, 12}, 3);
            Eigen::VectorXd tang(2);
            tang << nu[0], nu[1];
            const std::vector<double> ref = oracles::fd_plate_oracle(1.0, 1.0, tang, 3);
            for (int i = 0; i < 3; ++i)
                worst = std::max(worst,
                                 std::abs(run.spec.eigenvalues(i) - ref[i]) / ref[i]);
        }
        return std::make_pair(worst <= 5e-3, "worst rel deviation " + fmt(worst));
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
