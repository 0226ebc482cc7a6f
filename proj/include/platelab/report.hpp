#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "platelab/bounds.hpp"
#include "platelab/config.hpp"
#include "platelab/eigensolve.hpp"

namespace platelab {

constexpr int kReportSchemaVersion = 1;

struct RunReport {
    ExperimentConfig config;
    int n = 0;
    int ambient = 0;
    std::vector<double> eigenvalues;
    std::vector<double> residuals;
    GeometricConstants constants;
    std::vector<BoundReport> bounds;
    double identity_violation = -1;   // < 0 when the suite was not run
    double translator_residual = -1;  // < 0 when not applicable
    double dirichlet_energy = 0;      // int |grad u1|^2 e^w dv
    double phi_hat = 0;
    bool functionals_pass = false;
    GeneralFormulaReport general;     // entries empty when not run
    double wall_seconds = 0;
    bool pass = false;

    void aggregate() {
        pass = functionals_pass;
        for (const BoundReport& b : bounds) pass = pass && b.pass;
        if (identity_violation >= 0) pass = pass && identity_violation <= 1e-9;
        if (!general.entries.empty()) pass = pass && general.pass;
    }
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace detail

inline nlohmann::json report_to_json(const RunReport& rep) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["config"] = rep.config.echo;
    j["n"] = rep.n;
    j["ambient_dim"] = rep.ambient;
    j["spectrum"] = {{"eigenvalues", rep.eigenvalues}, {"residuals", rep.residuals}};
    j["constants"] = {
        {"c1_hat", rep.constants.c1_hat},     {"c1_tilde", rep.constants.c1_tilde},
        {"c2_hat", rep.constants.c2_hat},     {"c3", rep.constants.c3},
        {"c4_hat", rep.constants.c4_hat},     {"c4_tilde", rep.constants.c4_tilde},
        {"c5", rep.constants.c5},             {"max_nsq_hsq", rep.constants.max_nsq_hsq},
        {"max_unit_sphere_dist", rep.constants.max_unit_sphere_dist},
        {"sample_grid", rep.constants.grid},
    };
    j["bounds"] = nlohmann::json::array();
    for (const BoundReport& b : rep.bounds) {
        j["bounds"].push_back({{"theorem", b.theorem_id},
                               {"n", b.n},
                               {"eigenvalues", b.eigenvalues},
                               {"lhs", b.lhs},
                               {"rhs", b.rhs},
                               {"margin", b.margin},
                               {"pass", b.pass}});
    }
    if (rep.identity_violation >= 0) j["identity_violation"] = rep.identity_violation;
    if (rep.translator_residual >= 0) j["translator_residual"] = rep.translator_residual;
    j["functionals"] = {{"dirichlet_energy", rep.dirichlet_energy},
                        {"phi_hat", rep.phi_hat},
                        {"pass", rep.functionals_pass}};
    if (!rep.general.entries.empty()) {
        nlohmann::json g;
        g["worst_margin"] = rep.general.worst_margin;
        g["pass"] = rep.general.pass;
        g["upsilon_hat"] = rep.general.upsilon_hat;
        g["upsilon_hat_bound"] = rep.general.upsilon_hat_bound;
        g["entries"] = nlohmann::json::array();
        for (const auto& e : rep.general.entries)
            g["entries"].push_back({{"i", e.i},
                                    {"delta", e.delta},
                                    {"lhs", e.lhs},
                                    {"rhs", e.rhs},
                                    {"margin", e.margin}});
        j["general_formula"] = g;
    }
    j["wall_seconds"] = rep.config.deterministic ? 0.0 : rep.wall_seconds;
    j["pass"] = rep.pass;
    return j;
}

inline std::string report_to_csv(const RunReport& rep) {
    std::ostringstream os;
    os << "table,key,value\n";
    for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
        os << "eigenvalues,lambda_" << (i + 1) << "," << detail::fmt(rep.eigenvalues[i])
           << "\n";
    for (size_t i = 0; i < rep.residuals.size(); ++i)
        os << "residuals,r_" << (i + 1) << "," << detail::fmt(rep.residuals[i]) << "\n";
    os << "bounds,theorem,lhs,rhs,margin,pass\n";
    for (const BoundReport& b : rep.bounds)
        os << "bounds," << b.theorem_id << "," << detail::fmt(b.lhs) << ","
           << detail::fmt(b.rhs) << "," << detail::fmt(b.margin) << ","
           << (b.pass ? "1" : "0") << "\n";
    return os.str();
}

inline void print_report_table(std::ostream& os, const RunReport& rep) {
    os << "geometry: " << rep.config.geometry_name << "  (n = " << rep.n
       << ", ambient = " << rep.ambient << ")\n";
    os << "eigenvalues:\n";
    for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
        os << "  lambda_" << (i + 1) << " = " << std::setprecision(12)
           << rep.eigenvalues[i] << "   (residual " << std::setprecision(3)
           << rep.residuals[i] << ")\n";
    if (!rep.bounds.empty()) {
        os << "bounds:\n";
        for (const BoundReport& b : rep.bounds)
            os << "  " << std::left << std::setw(8) << b.theorem_id << " lhs = "
               << std::setprecision(8) << std::setw(14) << b.lhs << " rhs = "
               << std::setw(14) << b.rhs << " margin = " << std::setw(14) << b.margin
               << (b.pass ? " pass" : " FAIL") << "\n";
    }
    if (rep.identity_violation >= 0)
        os << "identity suite max violation: " << std::setprecision(3)
           << rep.identity_violation << "\n";
    os << "dirichlet energy = " << std::setprecision(10) << rep.dirichlet_energy
       << ", phi_hat = " << rep.phi_hat << (rep.functionals_pass ? " (pass)" : " (FAIL)")
       << "\n";
    if (!rep.general.entries.empty())
        os << "general formula worst margin = " << rep.general.worst_margin
           << (rep.general.pass ? " (pass)" : " (FAIL)") << "\n";
    os << "overall: " << (rep.pass ? "PASS" : "FAIL") << "\n";
}

}  // namespace platelab
