#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "platelab/errors.hpp"

namespace platelab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Analytic chart X : parameter box -> R^{ambient_dim}.  The caller supplies
/// exact first and second parameter derivatives; all curvature data is
/// evaluated pointwise from them.
struct ParametricImmersion {
    std::string name;
    int intrinsic_dim = 0;  // n
    int ambient_dim = 0;    // n + p
    std::vector<std::array<double, 2>> param_box;
    std::vector<bool> periodic;
    std::function<VectorXd(const VectorXd&)> position;                // ambient_dim
    std::function<MatrixXd(const VectorXd&)> jacobian;                // ambient_dim x n
    std::function<std::vector<MatrixXd>(const VectorXd&)> hessian;    // ambient_dim matrices, n x n

    double extent(int i) const { return param_box[i][1] - param_box[i][0]; }
};

struct DriftSpec {
    VectorXd nu;             // constant ambient vector
    bool unit_flag = false;  // translator case: |nu| = 1

    static DriftSpec zero(int ambient_dim) {
        DriftSpec d;
        d.nu = VectorXd::Zero(ambient_dim);
        return d;
    }
    static DriftSpec unit(VectorXd v) {
        DriftSpec d;
        d.nu = std::move(v);
        d.unit_flag = true;
        if (std::abs(d.nu.norm() - 1.0) > 1e-14)
            throw Error("DriftSpec::unit: |nu| - 1 exceeds 1e-14");
        return d;
    }
};

/// Pointwise geometric data consumed by assembly and the bound constants.
struct PointGeometry {
    MatrixXd metric;       // g_ij, n x n
    MatrixXd metric_inv;   // g^ij
    double sqrt_det_g = 0;
    MatrixXd jac;          // ambient x n, cached dX/du
    VectorXd laplace_y;    // Delta y^alpha, ambient_dim
    double mean_curvature = 0;        // H = (1/n)|Delta y|
    VectorXd drift_tangent_param;     // (nu^T)^i in the parameter basis, n
    double drift_tangent_norm = 0;    // |nu^T| (ambient norm)
    double weight = 0;                // w = <nu, X>
    VectorXd divergence_coeff;        // b^j = (1/sqrt g) d_i(sqrt g g^{ij}), n
};

namespace detail {

// sqrt(det g) * g^{-1} from the chart jacobian alone; used for the central
// finite difference of the divergence coefficients.
inline MatrixXd weighted_cometric(const ParametricImmersion& imm, const VectorXd& u) {
    MatrixXd jac = imm.jacobian(u);
    MatrixXd g = jac.transpose() * jac;
    double det = g.determinant();
    if (det <= 0.0) throw SingularMetric("det g <= 0 during finite difference");
    return std::sqrt(det) * g.inverse();
}

}  // namespace detail

inline PointGeometry point_geometry(const ParametricImmersion& imm, const DriftSpec& drift,
                                    const VectorXd& u) {
    const int n = imm.intrinsic_dim;
    PointGeometry pg;
    pg.jac = imm.jacobian(u);
    pg.metric = pg.jac.transpose() * pg.jac;
    const double det = pg.metric.determinant();
    if (det <= 0.0) throw SingularMetric(imm.name + ": det g <= 0");
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(pg.metric, Eigen::EigenvaluesOnly);
    const double emin = es.eigenvalues()(0), emax = es.eigenvalues()(n - 1);
    if (emin <= 0.0 || emax / emin > 1e12)
        throw SingularMetric(imm.name + ": metric condition number exceeds 1e12");
    pg.metric_inv = pg.metric.inverse();
    pg.sqrt_det_g = std::sqrt(det);

    // b^j = (1/sqrt g) d_i(sqrt g g^{ij}), one central difference per direction
    pg.divergence_coeff = VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const double h = 1e-5 * imm.extent(i);
        VectorXd up = u, um = u;
        up(i) += h;
        um(i) -= h;
        MatrixXd sp = detail::weighted_cometric(imm, up);
        MatrixXd sm = detail::weighted_cometric(imm, um);
        pg.divergence_coeff += (sp.row(i) - sm.row(i)).transpose() / (2.0 * h);
    }
    pg.divergence_coeff /= pg.sqrt_det_g;

    // Delta y^alpha = g^{ij} d2X^alpha/du_i du_j + b^j dX^alpha/du_j
    const std::vector<MatrixXd> hess = imm.hessian(u);
    pg.laplace_y = VectorXd::Zero(imm.ambient_dim);
    for (int a = 0; a < imm.ambient_dim; ++a)
        pg.laplace_y(a) = (pg.metric_inv.array() * hess[a].array()).sum() +
                          pg.divergence_coeff.dot(pg.jac.row(a));
    pg.mean_curvature = pg.laplace_y.norm() / static_cast<double>(n);

    const VectorXd jtn = pg.jac.transpose() * drift.nu;  // <nu, dX/du_j>
    pg.drift_tangent_param = pg.metric_inv * jtn;
    const double nt2 = pg.drift_tangent_param.dot(jtn);
    pg.drift_tangent_norm = nt2 > 0.0 ? std::sqrt(nt2) : 0.0;
    pg.weight = drift.nu.dot(imm.position(u));
    return pg;
}

/// Smooth scalar probe on the chart with analytic parameter gradient.
struct ProbeFunction {
    std::function<double(const VectorXd&)> value;
    std::function<VectorXd(const VectorXd&)> grad;  // parameter-space gradient
};

/// Random polynomial probes (degree <= 3), reproducible from the seed.
inline std::vector<ProbeFunction> polynomial_probes(int dim, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<ProbeFunction> probes;
    for (int k = 0; k < count; ++k) {
        // c0 + sum_i (a_i u_i + b_i u_i^2 + c_i u_i^3) + sum_{i<j} d_ij u_i u_j
        double c0 = coef(rng);
        VectorXd a(dim), b(dim), c(dim);
        MatrixXd d = MatrixXd::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) { a(i) = coef(rng); b(i) = coef(rng); c(i) = coef(rng); }
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) d(i, j) = coef(rng);
        ProbeFunction p;
        p.value = [=](const VectorXd& u) {
            double v = c0;
            for (int i = 0; i < dim; ++i)
                v += a(i) * u(i) + b(i) * u(i) * u(i) + c(i) * u(i) * u(i) * u(i);
            for (int i = 0; i < dim; ++i)
                for (int j = i + 1; j < dim; ++j) v += d(i, j) * u(i) * u(j);
            return v;
        };
        p.grad = [=](const VectorXd& u) {
            VectorXd g(dim);
            for (int i = 0; i < dim; ++i)
                g(i) = a(i) + 2.0 * b(i) * u(i) + 3.0 * c(i) * u(i) * u(i);
            for (int i = 0; i < dim; ++i)
                for (int j = i + 1; j < dim; ++j) { g(i) += d(i, j) * u(j); g(j) += d(i, j) * u(i); }
            return g;
        };
        probes.push_back(std::move(p));
    }
    return probes;
}

/// Maximum violations of the coordinate-function identities over a point set.
struct IdentityReport {
    double grad_y_trace = 0;      // |sum_a <grad y^a, grad y^a> - n|
    double laplace_norm = 0;      // |sum_a (Delta y^a)^2 - n^2 H^2|
    double laplace_grad_sum = 0;  // |sum_a Delta y^a grad y^a|
    double drift_projection = 0;  // |sum_a <grad y^a, nu>^2 - |nu^T|^2|
    double probe_pairing = 0;     // |sum_a <grad y^a,grad u><grad y^a,grad w> - <grad u,grad w>|
    double cauchy_schwarz = 0;    // violation of sum_a <grad y^a,grad u><grad y^a,nu> <= |grad u||nu^T|

    double max_violation() const {
        return std::max({grad_y_trace, laplace_norm, laplace_grad_sum, drift_projection,
                         probe_pairing, cauchy_schwarz});
    }
};

inline std::vector<VectorXd> interior_sample_points(const ParametricImmersion& imm, int count,
                                                    unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<VectorXd> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        VectorXd u(imm.intrinsic_dim);
        for (int i = 0; i < imm.intrinsic_dim; ++i) {
            // keep a small margin away from non-periodic faces
            const double margin = imm.periodic[i] ? 0.0 : 1e-3;
            std::uniform_real_distribution<double> dist(margin, 1.0 - margin);
            u(i) = imm.param_box[i][0] + dist(rng) * imm.extent(i);
        }
        pts.push_back(std::move(u));
    }
    return pts;
}

inline IdentityReport identity_suite(const ParametricImmersion& imm, const DriftSpec& drift,
                                     const std::vector<VectorXd>& points,
                                     const std::vector<ProbeFunction>& probes) {
    const int n = imm.intrinsic_dim;
    IdentityReport rep;
    for (const VectorXd& u : points) {
        PointGeometry pg = point_geometry(imm, drift, u);
        const MatrixXd& gi = pg.metric_inv;
        const MatrixXd& jac = pg.jac;

        rep.grad_y_trace = std::max(rep.grad_y_trace,
                                    std::abs((gi * pg.metric).trace() - n));
        const double n2H2 = pg.laplace_y.squaredNorm();
        rep.laplace_norm = std::max(rep.laplace_norm,
                                    std::abs(n2H2 - n * n * pg.mean_curvature * pg.mean_curvature));

        // sum_a Delta y^a grad y^a, ambient components
        VectorXd comp = gi * (jac.transpose() * pg.laplace_y);
        rep.laplace_grad_sum = std::max(rep.laplace_grad_sum, (jac * comp).norm());

        // s_a = <grad y^a, nu>; s is the ambient tangential projection of nu
        VectorXd s = jac * (gi * (jac.transpose() * drift.nu));
        rep.drift_projection = std::max(
            rep.drift_projection,
            std::abs(s.squaredNorm() - pg.drift_tangent_norm * pg.drift_tangent_norm));

        for (size_t pu = 0; pu < probes.size(); ++pu) {
            VectorXd du = probes[pu].grad(u);
            VectorXd au = jac * (gi * du);  // a_alpha = <grad y^a, grad u>
            const double gu = std::sqrt(du.dot(gi * du));
            rep.cauchy_schwarz = std::max(
                rep.cauchy_schwarz, au.dot(s) - gu * pg.drift_tangent_norm);
            for (size_t pw = pu; pw < probes.size(); ++pw) {
                VectorXd dw = probes[pw].grad(u);
                VectorXd aw = jac * (gi * dw);
                rep.probe_pairing = std::max(rep.probe_pairing,
                                             std::abs(au.dot(aw) - du.dot(gi * dw)));
            }
        }
    }
    return rep;
}

/// max over points of |H_vec - nu0^N| for the translator identity H_vec = nu0^N,
/// with H_vec = Delta y the (unnormalised) mean curvature vector.
inline double translator_residual(const ParametricImmersion& imm, const DriftSpec& drift,
                                  const std::vector<VectorXd>& points) {
    if (!drift.unit_flag) throw NotATranslator("drift.unit_flag is false");
    double worst = 0.0;
    for (const VectorXd& u : points) {
        PointGeometry pg = point_geometry(imm, drift, u);
        VectorXd h_vec = pg.laplace_y;
        VectorXd nu_tan = pg.jac * pg.drift_tangent_param;
        worst = std::max(worst, (h_vec - (drift.nu - nu_tan)).norm());
    }
    return worst;
}

/// Ambient rotation of both chart and drift; spectra are invariant under it.
inline ParametricImmersion rotate_immersion(const ParametricImmersion& imm, const MatrixXd& q) {
    ParametricImmersion out = imm;
    out.name = imm.name + "_rotated";
    auto pos = imm.position;
    auto jac = imm.jacobian;
    auto hes = imm.hessian;
    out.position = [pos, q](const VectorXd& u) { return VectorXd(q * pos(u)); };
    out.jacobian = [jac, q](const VectorXd& u) { return MatrixXd(q * jac(u)); };
    out.hessian = [hes, q](const VectorXd& u) {
        std::vector<MatrixXd> h = hes(u);
        std::vector<MatrixXd> rotated(h.size());
        for (size_t a = 0; a < h.size(); ++a) {
            rotated[a] = MatrixXd::Zero(h[a].rows(), h[a].cols());
            for (size_t b = 0; b < h.size(); ++b) rotated[a] += q(a, b) * h[b];
        }
        return rotated;
    };
    return out;
}

inline ParametricImmersion scale_immersion(const ParametricImmersion& imm, double t) {
    ParametricImmersion out = imm;
    out.name = imm.name + "_scaled";
    auto pos = imm.position;
    auto jac = imm.jacobian;
    auto hes = imm.hessian;
    out.position = [pos, t](const VectorXd& u) { return VectorXd(t * pos(u)); };
    out.jacobian = [jac, t](const VectorXd& u) { return MatrixXd(t * jac(u)); };
    out.hessian = [hes, t](const VectorXd& u) {
        std::vector<MatrixXd> h = hes(u);
        for (auto& m : h) m *= t;
        return h;
    };
    return out;
}

inline ParametricImmersion translate_immersion(const ParametricImmersion& imm, const VectorXd& c) {
    ParametricImmersion out = imm;
    out.name = imm.name + "_translated";
    auto pos = imm.position;
    out.position = [pos, c](const VectorXd& u) { return VectorXd(pos(u) + c); };
    return out;
}

}  // namespace platelab
