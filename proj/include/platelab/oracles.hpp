#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <vector>

#include "platelab/errors.hpp"

namespace platelab {
namespace oracles {

/// First `count` clamped-beam eigenvalues kappa^4 on [0, 1], from the roots
/// of cos(k) cosh(k) = 1 by bracketed bisection (written as cos k = sech k to
/// dodge cosh overflow).
inline std::vector<double> beam_reference(int count) {
    if (count < 1 || count > 10) throw Error("beam_reference: count must be in [1, 10]");
    auto f = [](double k) { return std::cos(k) - 1.0 / std::cosh(k); };
    std::vector<double> out;
    for (int m = 1; m <= count; ++m) {
        // the m-th positive root interlaces the (m + 1/2) pi bracket
        double lo = (m + 0.5) * M_PI - 0.5;
        double hi = (m + 0.5) * M_PI + 0.5;
        if (f(lo) * f(hi) > 0.0) throw Error("beam_reference: bracket failed");
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (f(lo) * f(mid) <= 0.0)
                hi = mid;
            else
                lo = mid;
            if (hi - lo < 1e-13) break;
        }
        const double kappa = 0.5 * (lo + hi);
        out.push_back(kappa * kappa * kappa * kappa);
    }
    return out;
}

namespace detail {

// Lowest eigenvalues of an SPD operator given only the action of its inverse,
// by subspace iteration.  Ritz values are taken on the inverse: Rayleigh
// quotients against an h^-4-scaled stencil are polluted by eps*lambda_max,
// which drowns the leading eigenvalues, while the inverse operator has norm
// 1/lambda_min so its Ritz values are clean to machine precision.
template <typename ApplyInv>
inline Eigen::VectorXd inverse_ritz(const ApplyInv& apply_inv, int n, int count) {
    const int block = std::min(n, count + 4);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, block);
    // deterministic pseudo-random start
    unsigned state = 12345u;
    for (int j = 0; j < block; ++j)
        for (int i = 0; i < n; ++i) {
            state = state * 1664525u + 1013904223u;
            v(i, j) = (state >> 8) * (1.0 / (1 << 24)) - 0.5;
        }
    Eigen::VectorXd prev = Eigen::VectorXd::Constant(count, 1e300);
    for (int it = 0; it < 500; ++it) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(apply_inv(v));
        v = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);
        const Eigen::MatrixXd small = v.transpose() * apply_inv(v);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small);
        Eigen::VectorXd ritz(count);
        for (int i = 0; i < count; ++i) ritz(i) = 1.0 / es.eigenvalues()(block - 1 - i);
        Eigen::MatrixXd rot(block, block);
        for (int j = 0; j < block; ++j) rot.col(j) = es.eigenvectors().col(block - 1 - j);
        v = v * rot;
        if (((ritz - prev).cwiseAbs().array() <= 1e-10 * ritz.cwiseAbs().array()).all())
            return ritz;
        prev = ritz;
    }
    throw NoConvergence("inverse subspace iteration stalled");
}

// LDL^T of an SPD Toeplitz tridiagonal (constant diagonal/off-diagonal).
struct TridiagonalSolver {
    Eigen::VectorXd d;
    double off = 0.0;

    TridiagonalSolver(int m, double diag, double off_) : d(m), off(off_) {
        d(0) = diag;
        for (int i = 1; i < m; ++i) d(i) = diag - off * off / d(i - 1);
    }
    Eigen::VectorXd solve(Eigen::VectorXd b) const {
        const int m = static_cast<int>(d.size());
        for (int i = 1; i < m; ++i) b(i) -= (off / d(i - 1)) * b(i - 1);
        b.array() /= d.array();
        for (int i = m - 2; i >= 0; --i) b(i) -= (off / d(i)) * b(i + 1);
        return b;
    }
};

// Clamped ((d/dx)^2 - c)^2 on [0, L] by second-order finite differences:
// five-point fourth difference with ghost reflection for u'(0)=u'(L)=0,
// Dirichlet three-point second difference.  The pentadiagonal matrix is
// exactly T_c^2 + (2/h^4)(e_1 e_1^T + e_m e_m^T) with T_c the shifted
// Dirichlet Laplacian, so its inverse is applied through two tridiagonal
// solves and a rank-2 Woodbury correction.  That keeps the conditioning at
// the h^-2 of T_c instead of the h^-4 of the assembled stencil, which a
// direct factorization cannot deliver in double precision on fine grids.
inline Eigen::VectorXd fd_beam_shifted(double length, double c, int n, int count) {
    const double h = length / n;
    const int m = n - 1;
    const TridiagonalSolver tri(m, 2.0 / (h * h) + c, -1.0 / (h * h));
    const auto s_inv = [&](Eigen::MatrixXd b) {
        for (int j = 0; j < b.cols(); ++j) b.col(j) = tri.solve(tri.solve(b.col(j)));
        return b;
    };
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(m, 2);
    u(0, 0) = 1.0;
    u(m - 1, 1) = 1.0;
    const Eigen::MatrixXd w = s_inv(u);
    Eigen::Matrix2d cap = (h * h * h * h / 2.0) * Eigen::Matrix2d::Identity();
    cap += u.transpose() * w;
    const Eigen::Matrix2d cap_inv = cap.inverse();
    const auto a_inv = [&](const Eigen::MatrixXd& b) {
        Eigen::MatrixXd y = s_inv(b);
        return (y - w * (cap_inv * u.transpose() * y)).eval();
    };
    return inverse_ritz(a_inv, m, count);
}

}  // namespace detail

/// Reference spectrum of L_nu^2 on a flat interval with constant drift b via
/// the unitary gauge v = e^{bx/2} u, under which L_nu becomes d^2/dx^2 - b^2/4
/// with clamped traces preserved.  Richardson extrapolation over a doubled
/// grid ladder.
inline std::vector<double> conjugation_oracle(double length, double b, int count,
                                              int base_grid = 240) {
    if (length <= 0.0 || b < 0.0) throw Error("conjugation_oracle: bad arguments");
    const double c = b * b / 4.0;
    const Eigen::VectorXd e1 = detail::fd_beam_shifted(length, c, base_grid, count);
    const Eigen::VectorXd e2 = detail::fd_beam_shifted(length, c, 2 * base_grid, count);
    const Eigen::VectorXd e3 = detail::fd_beam_shifted(length, c, 4 * base_grid, count);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        const double r1 = (4.0 * e2(i) - e1(i)) / 3.0;
        const double r2 = (4.0 * e3(i) - e2(i)) / 3.0;
        const double r3 = (16.0 * r2 - r1) / 15.0;
        if (std::abs(r3 - r2) > 1e-8 * std::abs(r3))
            throw NoConvergence("conjugation_oracle: extrapolation stalled");
        out.push_back(r3);
    }
    return out;
}

namespace detail {

// Lowest eigenvalues of a sparse SPD matrix by shift-free inverse subspace
// iteration with a simplicial LDLT factorization.
inline Eigen::VectorXd sparse_smallest(const Eigen::SparseMatrix<double>& mat, int count) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(mat);
    if (ldlt.info() != Eigen::Success) throw NoConvergence("sparse factorization failed");
    return inverse_ritz([&](const Eigen::MatrixXd& b) { return ldlt.solve(b).eval(); },
                        static_cast<int>(mat.rows()), count);
}

// Clamped (Delta - c)^2 on [0,Lx] x [0,Ly]: 13-point biharmonic stencil with
// ghost reflection plus 5-point Dirichlet Laplacian.
inline Eigen::VectorXd fd_plate_shifted(double lx, double ly, double c, int n, int count) {
    const int mx = n - 1, my = static_cast<int>(std::lround(n * ly / lx)) - 1;
    const double hx = lx / n, hy = ly / (my + 1);
    if (std::abs(hx - hy) > 1e-12) throw Error("fd_plate_shifted: anisotropic grid");
    const double h = hx;
    const int total = mx * my;
    auto idx = [mx](int i, int j) { return i + mx * j; };
    std::vector<Eigen::Triplet<double>> trips;
    const double i4 = 1.0 / (h * h * h * h), i2 = 1.0 / (h * h);
    auto add = [&](int row, int i, int j, double w) {
        if (i < 0 || i >= mx || j < 0 || j >= my) return;  // Dirichlet zero
        trips.emplace_back(row, idx(i, j), w);
    };
    for (int j = 0; j < my; ++j)
        for (int i = 0; i < mx; ++i) {
            const int row = idx(i, j);
            // biharmonic 13-point; ghost reflection across clamped faces
            double center = 20.0;
            if (i == 0 || i == mx - 1) center += 1.0;
            if (j == 0 || j == my - 1) center += 1.0;
            add(row, i, j, i4 * center + 2.0 * c * i2 * 4.0 + c * c);
            for (int s : {-1, 1}) {
                add(row, i + s, j, i4 * -8.0 + 2.0 * c * i2 * -1.0);
                add(row, i, j + s, i4 * -8.0 + 2.0 * c * i2 * -1.0);
                add(row, i + 2 * s, j, i4);
                add(row, i, j + 2 * s, i4);
            }
            for (int sx : {-1, 1})
                for (int sy : {-1, 1}) add(row, i + sx, j + sy, i4 * 2.0);
        }
    Eigen::SparseMatrix<double> mat(total, total);
    mat.setFromTriplets(trips.begin(), trips.end());
    return sparse_smallest(mat, count);
}

}  // namespace detail

/// Independent 2D reference for flat rectangles: same gauge reduction as the
/// interval case (tangential drift only shifts the Laplacian by |nu|^2/4),
/// then a 13-point biharmonic finite difference ladder with extrapolation.
inline std::vector<double> fd_plate_oracle(double lx, double ly, const Eigen::VectorXd& nu_tangent,
                                           int count, int base_grid = 24) {
    const double c = nu_tangent.squaredNorm() / 4.0;
    const Eigen::VectorXd e1 = detail::fd_plate_shifted(lx, ly, c, base_grid, count);
    const Eigen::VectorXd e2 = detail::fd_plate_shifted(lx, ly, c, 2 * base_grid, count);
    const Eigen::VectorXd e3 = detail::fd_plate_shifted(lx, ly, c, 4 * base_grid, count);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        const double r1 = (4.0 * e2(i) - e1(i)) / 3.0;
        const double r2 = (4.0 * e3(i) - e2(i)) / 3.0;
        if (std::abs(r2 - r1) > 5e-3 * std::abs(r2))
            throw NoConvergence("fd_plate_oracle: extrapolation stalled");
        out.push_back((16.0 * r2 - r1) / 15.0);
    }
    return out;
}

}  // namespace oracles
}  // namespace platelab
