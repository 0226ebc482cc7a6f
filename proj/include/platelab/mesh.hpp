#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <vector>

#include "platelab/errors.hpp"
#include "platelab/geometry.hpp"
#include "platelab/quadrature.hpp"

namespace platelab {

enum class FaceBC { Clamped, Periodic };

/// Sub-box of the parameter box with per-coordinate boundary treatment.
/// A periodic coordinate must match the immersion's periodicity and span the
/// full periodic extent; every other coordinate is clamped on both faces.
struct DomainSpec {
    std::vector<std::array<double, 2>> box;
    std::vector<FaceBC> bc;  // per coordinate

    static DomainSpec full(const ParametricImmersion& imm) {
        DomainSpec d;
        d.box = imm.param_box;
        for (bool p : imm.periodic) d.bc.push_back(p ? FaceBC::Periodic : FaceBC::Clamped);
        return d;
    }

    void validate(const ParametricImmersion& imm) const {
        if (static_cast<int>(box.size()) != imm.intrinsic_dim ||
            bc.size() != box.size())
            throw ConfigError("domain dimension does not match the chart");
        for (size_t c = 0; c < box.size(); ++c) {
            if (box[c][0] >= box[c][1]) throw ConfigError("empty domain coordinate range");
            if (box[c][0] < imm.param_box[c][0] - 1e-12 ||
                box[c][1] > imm.param_box[c][1] + 1e-12)
                throw ConfigError("domain box exceeds the parameter box");
            if (bc[c] == FaceBC::Periodic) {
                if (!imm.periodic[c])
                    throw ConfigError("periodic face on a non-periodic chart coordinate");
                if (std::abs((box[c][1] - box[c][0]) - imm.extent(c)) > 1e-12)
                    throw ConfigError("periodic coordinate must span the full period");
            }
        }
    }
};

/// Tensor-product C1 Hermite mesh: cubic Hermite in 1D (value + derivative
/// per node), bicubic Hermite in 2D (value, d/dx, d/dy, d2/dxdy per node).
struct MeshC1 {
    DomainSpec domain;
    std::vector<int> elements;  // per coordinate
    int quadrature_order = 8;

    int dim() const { return static_cast<int>(elements.size()); }
    int dofs_per_node() const { return 1 << dim(); }
    int local_dofs() const { return dofs_per_node() * (1 << dim()); }

    int nodes_along(int c) const {
        return domain.bc[c] == FaceBC::Periodic ? elements[c] : elements[c] + 1;
    }
    double width(int c) const {
        return (domain.box[c][1] - domain.box[c][0]) / elements[c];
    }
    int total_elements() const {
        int t = 1;
        for (int m : elements) t *= m;
        return t;
    }
    int total_nodes() const {
        int t = 1;
        for (int c = 0; c < dim(); ++c) t *= nodes_along(c);
        return t;
    }
    int total_dofs() const { return total_nodes() * dofs_per_node(); }

    std::vector<int> element_multi_index(int e) const {
        std::vector<int> idx(dim());
        for (int c = 0; c < dim(); ++c) {
            idx[c] = e % elements[c];
            e /= elements[c];
        }
        return idx;
    }

    int node_id(const std::vector<int>& node_idx) const {
        int id = 0, stride = 1;
        for (int c = 0; c < dim(); ++c) {
            id += (node_idx[c] % nodes_along(c)) * stride;
            stride *= nodes_along(c);
        }
        return id;
    }

    /// Global dof ids for the local dofs of element `e`.
    /// Local order: corner-major, then dof type; 2D types (v, vx, vy, vxy).
    std::vector<int> element_dofs(int e) const {
        const std::vector<int> ei = element_multi_index(e);
        const int corners = 1 << dim();
        std::vector<int> dofs;
        dofs.reserve(local_dofs());
        for (int cn = 0; cn < corners; ++cn) {
            std::vector<int> node(dim());
            for (int c = 0; c < dim(); ++c) node[c] = ei[c] + ((cn >> c) & 1);
            const int base = node_id(node) * dofs_per_node();
            for (int t = 0; t < dofs_per_node(); ++t) dofs.push_back(base + t);
        }
        return dofs;
    }

    /// True for dofs eliminated by the clamped boundary condition: every dof
    /// of every node on a clamped face.
    std::vector<bool> clamped_mask() const {
        std::vector<bool> mask(total_dofs(), false);
        const int nn = total_nodes();
        for (int id = 0; id < nn; ++id) {
            int rem = id;
            bool on_clamped_face = false;
            for (int c = 0; c < dim(); ++c) {
                const int i = rem % nodes_along(c);
                rem /= nodes_along(c);
                if (domain.bc[c] == FaceBC::Clamped && (i == 0 || i == nodes_along(c) - 1))
                    on_clamped_face = true;
            }
            if (on_clamped_face)
                for (int t = 0; t < dofs_per_node(); ++t) mask[id * dofs_per_node() + t] = true;
        }
        return mask;
    }

    VectorXd map_to_param(int e, const VectorXd& xi) const {
        const std::vector<int> ei = element_multi_index(e);
        VectorXd u(dim());
        for (int c = 0; c < dim(); ++c)
            u(c) = domain.box[c][0] + (ei[c] + xi(c)) * width(c);
        return u;
    }
};

namespace hermite {

// Cubic Hermite shape functions on [0, 1]: index (node, type) with
// type 0 = value, type 1 = derivative.
inline double shape(int node, int type, double x) {
    const double x2 = x * x, x3 = x2 * x;
    if (node == 0) return type == 0 ? 1.0 - 3.0 * x2 + 2.0 * x3 : x - 2.0 * x2 + x3;
    return type == 0 ? 3.0 * x2 - 2.0 * x3 : -x2 + x3;
}
inline double shape_d1(int node, int type, double x) {
    const double x2 = x * x;
    if (node == 0) return type == 0 ? -6.0 * x + 6.0 * x2 : 1.0 - 4.0 * x + 3.0 * x2;
    return type == 0 ? 6.0 * x - 6.0 * x2 : -2.0 * x + 3.0 * x2;
}
inline double shape_d2(int node, int type, double x) {
    if (node == 0) return type == 0 ? -6.0 + 12.0 * x : -4.0 + 6.0 * x;
    return type == 0 ? 6.0 - 12.0 * x : -2.0 + 6.0 * x;
}

}  // namespace hermite

/// Basis values and parameter-space derivatives at a reference point of one
/// element; rows follow MeshC1::element_dofs local order.
struct BasisEval {
    VectorXd value;               // local_dofs
    MatrixXd grad;                // local_dofs x dim
    std::vector<MatrixXd> hess;   // local_dofs entries, dim x dim
};

inline BasisEval evaluate_basis(const MeshC1& mesh, const VectorXd& xi) {
    const int d = mesh.dim();
    const int nloc = mesh.local_dofs();
    BasisEval out;
    out.value = VectorXd::Zero(nloc);
    out.grad = MatrixXd::Zero(nloc, d);
    out.hess.assign(nloc, MatrixXd::Zero(d, d));

    // per coordinate c, node a, type t: value/d1/d2 in parameter units
    // derivative-type dofs carry the element width so they are d/du dofs
    auto s0 = [&](int c, int a, int t) {
        const double h = mesh.width(c);
        const double v = hermite::shape(a, t, xi(c));
        return t == 1 ? h * v : v;
    };
    auto s1 = [&](int c, int a, int t) {
        const double h = mesh.width(c);
        const double v = hermite::shape_d1(a, t, xi(c));
        return (t == 1 ? h * v : v) / h;
    };
    auto s2 = [&](int c, int a, int t) {
        const double h = mesh.width(c);
        const double v = hermite::shape_d2(a, t, xi(c));
        return (t == 1 ? h * v : v) / (h * h);
    };

    const int corners = 1 << d;
    for (int cn = 0; cn < corners; ++cn) {
        for (int t = 0; t < mesh.dofs_per_node(); ++t) {
            const int local = cn * mesh.dofs_per_node() + t;
            double val = 1.0;
            VectorXd g = VectorXd::Ones(d);
            MatrixXd h = MatrixXd::Ones(d, d);
            for (int c = 0; c < d; ++c) {
                const int node = (cn >> c) & 1;
                const int type = (t >> c) & 1;
                const double f0 = s0(c, node, type);
                const double f1 = s1(c, node, type);
                const double f2 = s2(c, node, type);
                val *= f0;
                for (int gc = 0; gc < d; ++gc) g(gc) *= (gc == c ? f1 : f0);
                for (int hr = 0; hr < d; ++hr)
                    for (int hc = 0; hc < d; ++hc) {
                        int count = (hr == c ? 1 : 0) + (hc == c ? 1 : 0);
                        h(hr, hc) *= (count == 2 ? f2 : (count == 1 ? f1 : f0));
                    }
            }
            out.value(local) = val;
            out.grad.row(local) = g.transpose();
            out.hess[local] = h;
        }
    }
    return out;
}

}  // namespace platelab
