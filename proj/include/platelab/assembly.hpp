#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <ostream>
#include <vector>

#include "platelab/errors.hpp"
#include "platelab/geometry.hpp"
#include "platelab/mesh.hpp"
#include "platelab/quadrature.hpp"

namespace platelab {

/// Scalar function on the chart with analytic parameter derivatives to order 2.
struct SmoothFn {
    std::function<double(const VectorXd&)> value;
    std::function<VectorXd(const VectorXd&)> grad;
    std::function<MatrixXd(const VectorXd&)> hess;
};

/// L_nu u = Delta_g u + <nu, grad u> at one point, divergence-form Laplacian.
inline double lnu_apply(const ParametricImmersion& imm, const DriftSpec& drift,
                        const SmoothFn& fn, const VectorXd& u) {
    PointGeometry pg = point_geometry(imm, drift, u);
    const VectorXd du = fn.grad(u);
    const MatrixXd d2u = fn.hess(u);
    const double lap = (pg.metric_inv.array() * d2u.array()).sum() +
                       pg.divergence_coeff.dot(du);
    return lap + pg.drift_tangent_param.dot(du);
}

/// Symmetric discrete forms on the clamped C1 space:
///   a(u,v) = int (L_nu u)(L_nu v) e^w dv     (matrix a)
///   m(u,v) = int u v e^w dv                  (matrix m)
///   g(u,v) = int <grad u, grad v>_g e^w dv   (matrix g)
struct AssembledForms {
    MatrixXd a, m, g;
    std::vector<int> free_to_global;
    std::vector<int> global_to_free;  // -1 for clamped dofs
    MeshC1 mesh;

    int free_count() const { return static_cast<int>(free_to_global.size()); }
};

namespace detail {

struct QuadPoint {
    VectorXd xi;      // reference coordinates
    double weight;    // product Gauss weight
    int basis_index;  // into the precomputed reference basis table
};

inline std::vector<QuadPoint> tensor_rule(int dim, const QuadratureRule& rule) {
    std::vector<QuadPoint> pts;
    const int q = static_cast<int>(rule.points.size());
    int total = 1;
    for (int c = 0; c < dim; ++c) total *= q;
    pts.reserve(total);
    for (int k = 0; k < total; ++k) {
        QuadPoint qp;
        qp.xi = VectorXd(dim);
        qp.weight = 1.0;
        int rem = k;
        for (int c = 0; c < dim; ++c) {
            const int i = rem % q;
            rem /= q;
            qp.xi(c) = rule.points[i];
            qp.weight *= rule.weights[i];
        }
        qp.basis_index = k;
        pts.push_back(std::move(qp));
    }
    return pts;
}

}  // namespace detail

inline AssembledForms assemble(const ParametricImmersion& imm, const DriftSpec& drift,
                               const DomainSpec& domain, MeshC1 mesh) {
    domain.validate(imm);
    mesh.domain = domain;
    if (drift.nu.size() != imm.ambient_dim)
        throw ConfigError("drift dimension does not match the ambient dimension");
    if (mesh.quadrature_order < 6)
        throw ConfigError("quadrature order must be >= 6");

    const int d = mesh.dim();
    const int nloc = mesh.local_dofs();

    AssembledForms forms;
    forms.mesh = mesh;
    const std::vector<bool> clamped = mesh.clamped_mask();
    forms.global_to_free.assign(mesh.total_dofs(), -1);
    for (int i = 0; i < mesh.total_dofs(); ++i)
        if (!clamped[i]) {
            forms.global_to_free[i] = static_cast<int>(forms.free_to_global.size());
            forms.free_to_global.push_back(i);
        }
    const int nfree = forms.free_count();
    if (nfree == 0) throw EmptyInterior("clamping removed every dof");

    forms.a = MatrixXd::Zero(nfree, nfree);
    forms.m = MatrixXd::Zero(nfree, nfree);
    forms.g = MatrixXd::Zero(nfree, nfree);

    const QuadratureRule rule = gauss_legendre(mesh.quadrature_order);
    const std::vector<detail::QuadPoint> qpts = detail::tensor_rule(d, rule);
    // uniform tensor mesh: the reference basis table is shared by all elements
    std::vector<BasisEval> basis;
    basis.reserve(qpts.size());
    for (const auto& qp : qpts) basis.push_back(evaluate_basis(mesh, qp.xi));

    double cell = 1.0;
    for (int c = 0; c < d; ++c) cell *= mesh.width(c);

    MatrixXd ae(nloc, nloc), me(nloc, nloc), ge(nloc, nloc);
    VectorXd lphi(nloc);
    for (int e = 0; e < mesh.total_elements(); ++e) {
        ae.setZero();
        me.setZero();
        ge.setZero();
        for (size_t k = 0; k < qpts.size(); ++k) {
            const VectorXd u = mesh.map_to_param(e, qpts[k].xi);
            const PointGeometry pg = point_geometry(imm, drift, u);
            const BasisEval& b = basis[k];
            const VectorXd coeff = pg.divergence_coeff + pg.drift_tangent_param;
            for (int r = 0; r < nloc; ++r)
                lphi(r) = (pg.metric_inv.array() * b.hess[r].array()).sum() +
                          coeff.dot(b.grad.row(r));
            const double w = qpts[k].weight * cell * pg.sqrt_det_g * std::exp(pg.weight);
            ae.noalias() += w * (lphi * lphi.transpose());
            me.noalias() += w * (b.value * b.value.transpose());
            ge.noalias() += w * (b.grad * pg.metric_inv * b.grad.transpose());
        }
        // scalar-weighted outer products pick up 1-ulp asymmetry from Eigen's
        // product folding; re-symmetrise so the pencil is bitwise symmetric
        ae = 0.5 * (ae + ae.transpose()).eval();
        me = 0.5 * (me + me.transpose()).eval();
        ge = 0.5 * (ge + ge.transpose()).eval();
        const std::vector<int> dofs = mesh.element_dofs(e);
        for (int r = 0; r < nloc; ++r) {
            const int fr = forms.global_to_free[dofs[r]];
            if (fr < 0) continue;
            for (int s = 0; s < nloc; ++s) {
                const int fs = forms.global_to_free[dofs[s]];
                if (fs < 0) continue;
                forms.a(fr, fs) += ae(r, s);
                forms.m(fr, fs) += me(r, s);
                forms.g(fr, fs) += ge(r, s);
            }
        }
    }
    return forms;
}

/// Residuals of the weighted self-adjointness identity on compactly supported
/// bumps: |int (Lu)w - int (Lw)u| and |int (Lu)w + int <grad u, grad w>|,
/// all against e^w dv, by tensor Gauss quadrature on a fine override grid.
struct SelfAdjointnessResult {
    double symmetry = 0;
    double green = 0;
};

inline SelfAdjointnessResult self_adjointness_check(const ParametricImmersion& imm,
                                                    const DriftSpec& drift,
                                                    const DomainSpec& domain,
                                                    const SmoothFn& u, const SmoothFn& w,
                                                    int panels = 32, int order = 10) {
    const int d = static_cast<int>(domain.box.size());
    const QuadratureRule rule = gauss_legendre(order);
    const std::vector<detail::QuadPoint> qpts = detail::tensor_rule(d, rule);

    double luw = 0.0, lwu = 0.0, grad_pair = 0.0;
    std::vector<int> panel_idx(d, 0);
    int total_panels = 1;
    for (int c = 0; c < d; ++c) total_panels *= panels;
    double cell = 1.0;
    for (int c = 0; c < d; ++c) cell *= (domain.box[c][1] - domain.box[c][0]) / panels;

    for (int p = 0; p < total_panels; ++p) {
        int rem = p;
        VectorXd lo(d);
        for (int c = 0; c < d; ++c) {
            const int i = rem % panels;
            rem /= panels;
            lo(c) = domain.box[c][0] +
                    i * (domain.box[c][1] - domain.box[c][0]) / panels;
        }
        for (const auto& qp : qpts) {
            VectorXd x(d);
            for (int c = 0; c < d; ++c)
                x(c) = lo(c) + qp.xi(c) * (domain.box[c][1] - domain.box[c][0]) / panels;
            const PointGeometry pg = point_geometry(imm, drift, x);
            const double meas = qp.weight * cell * pg.sqrt_det_g * std::exp(pg.weight);
            const VectorXd du = u.grad(x), dw = w.grad(x);
            const VectorXd coeff = pg.divergence_coeff + pg.drift_tangent_param;
            const double lu = (pg.metric_inv.array() * u.hess(x).array()).sum() + coeff.dot(du);
            const double lw = (pg.metric_inv.array() * w.hess(x).array()).sum() + coeff.dot(dw);
            luw += meas * lu * w.value(x);
            lwu += meas * lw * u.value(x);
            grad_pair += meas * du.dot(pg.metric_inv * dw);
        }
    }
    return {std::abs(luw - lwu), std::abs(luw + grad_pair)};
}

/// Proof-step functionals of the certified first eigenvector:
/// dirichlet = int |grad u1|^2 e^w dv and phi_hat = -n * dirichlet.
struct EigenfunctionFunctionals {
    double dirichlet = 0;
    double phi_hat = 0;
};

inline EigenfunctionFunctionals eigenfunction_functionals(const AssembledForms& forms,
                                                          const VectorXd& v1, int n) {
    EigenfunctionFunctionals out;
    out.dirichlet = v1.dot(forms.g * v1);
    out.phi_hat = -static_cast<double>(n) * out.dirichlet;
    return out;
}

/// A finite-element field over the mesh, evaluated from a free-dof vector.
struct FemField {
    const AssembledForms* forms;
    VectorXd full;  // full dof vector with clamped entries zero

    FemField(const AssembledForms& f, const VectorXd& free_vec) : forms(&f) {
        full = VectorXd::Zero(f.mesh.total_dofs());
        for (int i = 0; i < f.free_count(); ++i) full(f.free_to_global[i]) = free_vec(i);
    }

    void evaluate(int element, const BasisEval& basis, double* value, VectorXd* grad,
                  MatrixXd* hess) const {
        const std::vector<int> dofs = forms->mesh.element_dofs(element);
        const int nloc = forms->mesh.local_dofs();
        const int d = forms->mesh.dim();
        if (value) *value = 0.0;
        if (grad) *grad = VectorXd::Zero(d);
        if (hess) *hess = MatrixXd::Zero(d, d);
        for (int r = 0; r < nloc; ++r) {
            const double c = full(dofs[r]);
            if (c == 0.0) continue;
            if (value) *value += c * basis.value(r);
            if (grad) *grad += c * basis.grad.row(r).transpose();
            if (hess) *hess += c * basis.hess[r];
        }
    }
};

/// Plain-text triplet dump: one "row col value" line per entry, row-major.
inline void write_matrix_triplets(std::ostream& os, const std::string& name,
                                  const MatrixXd& mat) {
    os << "# matrix " << name << " rows " << mat.rows() << " cols " << mat.cols() << "\n";
    os.precision(17);
    for (int r = 0; r < mat.rows(); ++r)
        for (int c = 0; c < mat.cols(); ++c)
            if (mat(r, c) != 0.0) os << r << " " << c << " " << mat(r, c) << "\n";
}

}  // namespace platelab
