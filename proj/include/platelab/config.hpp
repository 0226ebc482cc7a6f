#pragma once

#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "platelab/catalogue.hpp"
#include "platelab/errors.hpp"
#include "platelab/geometry.hpp"

namespace platelab {

inline const std::set<std::string>& known_theorem_ids() {
    static const std::set<std::string> ids = {
        "thm1.1", "cor1.1", "cor1.2", "cor1.3",
        "thm5.1", "cor5.1", "cor5.2", "cor5.3",
        "cor6.1", "cor6.2", "cor6.3",
    };
    return ids;
}

struct ExperimentConfig {
    int schema_version = 1;
    std::string geometry_name;
    ParamMap geometry_params;
    std::vector<double> drift;          // ambient components
    bool drift_unit = false;            // assert |nu| = 1 (translator statements)
    std::vector<int> elements;          // per coordinate
    int quadrature_order = 8;
    int eigenpair_count = 0;            // 0 -> derived from requested checks
    double residual_tol = 1e-6;
    std::vector<std::string> theorems;
    bool run_identities = false;
    bool run_general_formula = false;
    std::vector<int> constants_grid;    // empty -> default per coordinate
    bool deterministic = false;
    std::string report_path;            // empty -> stdout only
    std::string csv_path;

    nlohmann::json echo;  // parsed document, re-emitted in reports
};

namespace detail {

inline void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <typename T>
T fetch(const nlohmann::json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad value for '" + key + "' in " + where + ": " + e.what());
    }
}

template <typename T>
T fetch_or(const nlohmann::json& obj, const std::string& key, const std::string& where,
           const T& fallback) {
    if (!obj.contains(key)) return fallback;
    return fetch<T>(obj, key, where);
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& doc) {
    ExperimentConfig cfg;
    cfg.echo = doc;
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    detail::reject_unknown(doc, {"schema_version", "geometry", "drift", "mesh", "eigensolve",
                                 "checks", "deterministic", "output"},
                           "config root");
    cfg.schema_version = detail::fetch<int>(doc, "schema_version", "config root");
    if (cfg.schema_version != 1)
        throw ConfigError("unsupported schema_version " + std::to_string(cfg.schema_version));

    const auto& geo = doc.at("geometry");
    detail::reject_unknown(geo, {"name", "params"}, "geometry");
    cfg.geometry_name = detail::fetch<std::string>(geo, "name", "geometry");
    if (geo.contains("params")) {
        for (auto it = geo.at("params").begin(); it != geo.at("params").end(); ++it) {
            if (!it.value().is_number())
                throw ConfigError("geometry.params." + it.key() + " must be a number");
            cfg.geometry_params[it.key()] = it.value().get<double>();
        }
    }

    const auto& drift = doc.at("drift");
    detail::reject_unknown(drift, {"components", "unit"}, "drift");
    cfg.drift = detail::fetch<std::vector<double>>(drift, "components", "drift");
    cfg.drift_unit = detail::fetch_or<bool>(drift, "unit", "drift", false);

    const auto& mesh = doc.at("mesh");
    detail::reject_unknown(mesh, {"elements", "quadrature_order"}, "mesh");
    cfg.elements = detail::fetch<std::vector<int>>(mesh, "elements", "mesh");
    cfg.quadrature_order = detail::fetch_or<int>(mesh, "quadrature_order", "mesh", 8);

    if (doc.contains("eigensolve")) {
        const auto& eig = doc.at("eigensolve");
        detail::reject_unknown(eig, {"k", "residual_tol"}, "eigensolve");
        cfg.eigenpair_count = detail::fetch_or<int>(eig, "k", "eigensolve", 0);
        cfg.residual_tol = detail::fetch_or<double>(eig, "residual_tol", "eigensolve", 1e-6);
    }

    if (doc.contains("checks")) {
        const auto& chk = doc.at("checks");
        detail::reject_unknown(chk, {"theorems", "identities", "general_formula",
                                     "constants_grid"},
                               "checks");
        cfg.theorems =
            detail::fetch_or<std::vector<std::string>>(chk, "theorems", "checks", {});
        cfg.run_identities = detail::fetch_or<bool>(chk, "identities", "checks", false);
        cfg.run_general_formula =
            detail::fetch_or<bool>(chk, "general_formula", "checks", false);
        cfg.constants_grid =
            detail::fetch_or<std::vector<int>>(chk, "constants_grid", "checks", {});
    }

    cfg.deterministic = detail::fetch_or<bool>(doc, "deterministic", "config root", false);
    if (doc.contains("output")) {
        const auto& out = doc.at("output");
        detail::reject_unknown(out, {"report", "csv"}, "output");
        cfg.report_path = detail::fetch_or<std::string>(out, "report", "output", "");
        cfg.csv_path = detail::fetch_or<std::string>(out, "csv", "output", "");
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_config(doc);
}

/// Cross-field validation against the instantiated geometry.  Returns the
/// effective eigenpair count.
inline int validate_config(const ExperimentConfig& cfg, const ParametricImmersion& imm) {
    if (static_cast<int>(cfg.drift.size()) != imm.ambient_dim)
        throw ConfigError("drift dimension " + std::to_string(cfg.drift.size()) +
                          " does not match ambient dimension " +
                          std::to_string(imm.ambient_dim));
    if (static_cast<int>(cfg.elements.size()) != imm.intrinsic_dim)
        throw ConfigError("mesh.elements must list one count per intrinsic coordinate");
    for (int m : cfg.elements)
        if (m < 3) throw ConfigError("mesh.elements entries must be >= 3");
    if (cfg.quadrature_order < 6)
        throw ConfigError("quadrature_order must be >= 6");
    for (const std::string& id : cfg.theorems)
        if (!known_theorem_ids().count(id))
            throw ConfigError("unknown theorem id '" + id + "'");
    int k = cfg.eigenpair_count;
    const int n = imm.intrinsic_dim;
    if (!cfg.theorems.empty() || cfg.run_general_formula) {
        const int needed = cfg.run_general_formula ? imm.ambient_dim + 1 : n + 1;
        if (k == 0) k = needed;
        if (k < n + 1)
            throw ConfigError("k >= n+1 eigenpairs are required when any eigenvalue "
                              "inequality is requested (n = " + std::to_string(n) +
                              ", k = " + std::to_string(k) + ")");
        if (cfg.run_general_formula && k < imm.ambient_dim + 1)
            throw ConfigError("general formula needs k >= n+p+1 eigenpairs");
    }
    if (k == 0) k = std::max(1, n + 1);
    if (!cfg.constants_grid.empty() &&
        static_cast<int>(cfg.constants_grid.size()) != n)
        throw ConfigError("checks.constants_grid must list one resolution per coordinate");
    for (int g : cfg.constants_grid)
        if (g < 2) throw ConfigError("constants_grid entries must be >= 2");
    return k;
}

}  // namespace platelab
