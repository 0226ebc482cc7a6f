#pragma once

#include <map>
#include <string>
#include <vector>

#include "platelab/geometry.hpp"

namespace platelab {

/// Parameters for catalogue geometries, by name with defaults.
using ParamMap = std::map<std::string, double>;

namespace detail {

inline double param_or(const ParamMap& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace detail

/// Flat interval [a, b] in R^1.
inline ParametricImmersion make_interval(const ParamMap& params = {}) {
    ParametricImmersion imm;
    imm.name = "interval";
    imm.intrinsic_dim = 1;
    imm.ambient_dim = 1;
    const double a = detail::param_or(params, "a", 0.0);
    const double b = detail::param_or(params, "b", 1.0);
    imm.param_box = {{a, b}};
    imm.periodic = {false};
    imm.position = [](const VectorXd& u) { return u; };
    imm.jacobian = [](const VectorXd&) { return MatrixXd::Ones(1, 1); };
    imm.hessian = [](const VectorXd&) { return std::vector<MatrixXd>{MatrixXd::Zero(1, 1)}; };
    return imm;
}

/// Straight line segment in R^2 at a fixed angle.
inline ParametricImmersion make_line_segment(const ParamMap& params = {}) {
    ParametricImmersion imm;
    imm.name = "line_segment";
    imm.intrinsic_dim = 1;
    imm.ambient_dim = 2;
    const double angle = detail::param_or(params, "angle", 0.6);
    const double length = detail::param_or(params, "length", 1.0);
    const double c = std::cos(angle), s = std::sin(angle);
    imm.param_box = {{0.0, length}};
    imm.periodic = {false};
    imm.position = [c, s](const VectorXd& u) {
        VectorXd x(2);
        x << c * u(0), s * u(0);
        return x;
    };
    imm.jacobian = [c, s](const VectorXd&) {
        MatrixXd j(2, 1);
        j << c, s;
        return j;
    };
    imm.hessian = [](const VectorXd&) {
        return std::vector<MatrixXd>{MatrixXd::Zero(1, 1), MatrixXd::Zero(1, 1)};
    };
    return imm;
}

/// Flat rectangle [0,Lx] x [0,Ly] x {0} in R^3 (minimal, H = 0).
inline ParametricImmersion make_rectangle(const ParamMap& params = {}) {
    ParametricImmersion imm;
    imm.name = "rectangle";
    imm.intrinsic_dim = 2;
    imm.ambient_dim = 3;
    const double lx = detail::param_or(params, "lx", 1.0);
    const double ly = detail::param_or(params, "ly", 1.0);
    imm.param_box = {{0.0, lx}, {0.0, ly}};
    imm.periodic = {false, false};
    imm.position = [](const VectorXd& u) {
        VectorXd x(3);
        x << u(0), u(1), 0.0;
        return x;
    };
    imm.jacobian = [](const VectorXd&) {
        MatrixXd j = MatrixXd::Zero(3, 2);
        j(0, 0) = 1.0;
        j(1, 1) = 1.0;
        return j;
    };
    imm.hessian = [](const VectorXd&) {
        return std::vector<MatrixXd>(3, MatrixXd::Zero(2, 2));
    };
    return imm;
}

/// Annulus r in [r0, r1] in R^2 via the polar chart; the angle is periodic.
inline ParametricImmersion make_annulus(const ParamMap& params = {}) {
    ParametricImmersion imm;
    imm.name = "annulus";
    imm.intrinsic_dim = 2;
    imm.ambient_dim = 2;
    const double r0 = detail::param_or(params, "r0", 0.5);
    const double r1 = detail::param_or(params, "r1", 1.5);
    imm.param_box = {{r0, r1}, {0.0, 2.0 * M_PI}};
    imm.periodic = {false, true};
    imm.position = [](const VectorXd& u) {
        VectorXd x(2);
        x << u(0) * std::cos(u(1)), u(0) * std::sin(u(1));
        return x;
    };
    imm.jacobian = [](const VectorXd& u) {
        const double r = u(0), c = std::cos(u(1)), s = std::sin(u(1));
        MatrixXd j(2, 2);
        j << c, -r * s, s, r * c;
        return j;
    };
    imm.hessian = [](const VectorXd& u) {
        const double r = u(0), c = std::cos(u(1)), s = std::sin(u(1));
        MatrixXd hx(2, 2), hy(2, 2);
        hx << 0.0, -s, -s, -r * c;
        hy << 0.0, c, c, -r * s;
        return std::vector<MatrixXd>{hx, hy};
    };
    return imm;
}

/// Spherical band theta in [theta1, theta2] on the unit sphere S^2 in R^3.
inline ParametricImmersion make_sphere_band(const ParamMap& params = {}) {
    ParametricImmersion imm;
    imm.name = "sphere_band";
    imm.intrinsic_dim = 2;
    imm.ambient_dim = 3;
    const double t1 = detail::param_or(params, "theta1", 0.6);
    const double t2 = detail::param_or(params, "theta2", 2.2);
    if (t1 <= 0.0 || t2 >= M_PI || t1 >= t2)
        throw ConfigError("sphere_band requires 0 < theta1 < theta2 < pi");
    imm.param_box = {{t1, t2}, {0.0, 2.0 * M_PI}};
    imm.periodic = {false, true};
    imm.position = [](const VectorXd& u) {
        const double st = std::sin(u(0)), ct = std::cos(u(0));
        VectorXd x(3);
        x << st * std::cos(u(1)), st * std::sin(u(1)), ct;
        return x;
    };
    imm.jacobian = [](const VectorXd& u) {
        const double st = std::sin(u(0)), ct = std::cos(u(0));
        const double cp = std::cos(u(1)), sp = std::sin(u(1));
        MatrixXd j(3, 2);
        j << ct * cp, -st * sp, ct * sp, st * cp, -st, 0.0;
        return j;
    };
    imm.hessian = [](const VectorXd& u) {
        const double st = std::sin(u(0)), ct = std::cos(u(0));
        const double cp = std::cos(u(1)), sp = std::sin(u(1));
        MatrixXd hx(2, 2), hy(2, 2), hz(2, 2);
        hx << -st * cp, -ct * sp, -ct * sp, -st * cp;
        hy << -st * sp, ct * cp, ct * cp, -st * sp;
        hz << -ct, 0.0, 0.0, 0.0;
        return std::vector<MatrixXd>{hx, hy, hz};
    };
    return imm;
}

/// Grim reaper arc (x, -ln cos x) in R^2, x in [-x0, x0], x0 < pi/2.
/// Translator for the unit drift (0, 1).
inline ParametricImmersion make_grim_reaper_arc(const ParamMap& params = {}) {
    ParametricImmersion imm;
    imm.name = "grim_reaper_arc";
    imm.intrinsic_dim = 1;
    imm.ambient_dim = 2;
    const double x0 = detail::param_or(params, "x0", 1.0);
    if (x0 <= 0.0 || x0 >= M_PI / 2.0)
        throw ConfigError("grim_reaper_arc requires 0 < x0 < pi/2");
    imm.param_box = {{-x0, x0}};
    imm.periodic = {false};
    imm.position = [](const VectorXd& u) {
        VectorXd x(2);
        x << u(0), -std::log(std::cos(u(0)));
        return x;
    };
    imm.jacobian = [](const VectorXd& u) {
        MatrixXd j(2, 1);
        j << 1.0, std::tan(u(0));
        return j;
    };
    imm.hessian = [](const VectorXd& u) {
        const double sec = 1.0 / std::cos(u(0));
        MatrixXd h0 = MatrixXd::Zero(1, 1), h1(1, 1);
        h1 << sec * sec;
        return std::vector<MatrixXd>{h0, h1};
    };
    return imm;
}

/// Grim reaper plane (x, t, -ln cos x) in R^3 on a rectangle in (x, t).
/// Translator for the unit drift (0, 0, 1).
inline ParametricImmersion make_grim_reaper_plane(const ParamMap& params = {}) {
    ParametricImmersion imm;
    imm.name = "grim_reaper_plane";
    imm.intrinsic_dim = 2;
    imm.ambient_dim = 3;
    const double x0 = detail::param_or(params, "x0", 1.0);
    const double t0 = detail::param_or(params, "t0", 1.0);
    if (x0 <= 0.0 || x0 >= M_PI / 2.0)
        throw ConfigError("grim_reaper_plane requires 0 < x0 < pi/2");
    imm.param_box = {{-x0, x0}, {0.0, t0}};
    imm.periodic = {false, false};
    imm.position = [](const VectorXd& u) {
        VectorXd x(3);
        x << u(0), u(1), -std::log(std::cos(u(0)));
        return x;
    };
    imm.jacobian = [](const VectorXd& u) {
        MatrixXd j = MatrixXd::Zero(3, 2);
        j(0, 0) = 1.0;
        j(1, 1) = 1.0;
        j(2, 0) = std::tan(u(0));
        return j;
    };
    imm.hessian = [](const VectorXd& u) {
        const double sec = 1.0 / std::cos(u(0));
        std::vector<MatrixXd> h(3, MatrixXd::Zero(2, 2));
        h[2](0, 0) = sec * sec;
        return h;
    };
    return imm;
}

struct CatalogueEntry {
    std::string name;
    std::string description;
    ParametricImmersion (*factory)(const ParamMap&);
};

inline const std::vector<CatalogueEntry>& geometry_catalogue() {
    static const std::vector<CatalogueEntry> entries = {
        {"interval", "flat interval [a,b] in R^1", &make_interval},
        {"line_segment", "straight segment in R^2 (params: angle, length)", &make_line_segment},
        {"rectangle", "flat rectangle in R^3, H = 0 (params: lx, ly)", &make_rectangle},
        {"annulus", "annulus in R^2, polar chart, periodic angle (params: r0, r1)", &make_annulus},
        {"sphere_band", "band theta1 <= theta <= theta2 on S^2 (params: theta1, theta2)",
         &make_sphere_band},
        {"grim_reaper_arc", "grim reaper curve (x, -ln cos x), x in [-x0, x0] (param: x0)",
         &make_grim_reaper_arc},
        {"grim_reaper_plane", "grim reaper surface (x, t, -ln cos x) (params: x0, t0)",
         &make_grim_reaper_plane},
    };
    return entries;
}

inline ParametricImmersion make_geometry(const std::string& name, const ParamMap& params = {}) {
    for (const CatalogueEntry& e : geometry_catalogue())
        if (e.name == name) return e.factory(params);
    throw ConfigError("unknown geometry: " + name);
}

}  // namespace platelab
