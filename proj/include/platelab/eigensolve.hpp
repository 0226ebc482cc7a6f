#pragma once

#include <Eigen/Dense>
#include <vector>

#include "platelab/assembly.hpp"
#include "platelab/errors.hpp"

namespace platelab {

/// Certified lowest eigenpairs of the pencil (A, M).
struct Spectrum {
    VectorXd eigenvalues;          // ascending
    MatrixXd eigenvectors;         // columns, M-orthonormal
    VectorXd residuals;            // ||A v - L M v|| / (L ||M v||)
    std::vector<std::vector<int>> clusters;  // indices with relative gap < 1e-8

    int count() const { return static_cast<int>(eigenvalues.size()); }
};

/// Dense symmetric reduction via LLT of M; desk-scale problems (<= ~5000
/// free dofs) fit this path, which is the only one shipped.
inline Spectrum smallest_eigenpairs(const AssembledForms& forms, int k, double tol = 1e-6) {
    const int nfree = forms.free_count();
    if (k < 1) throw Error("smallest_eigenpairs: k must be positive");
    if (k > nfree)
        throw InsufficientSpectrum("smallest_eigenpairs: pencil has fewer dofs than k");

    Eigen::LLT<MatrixXd> llt(forms.m);
    if (llt.info() != Eigen::Success)
        throw IndefiniteMass("mass matrix failed Cholesky factorization");

    Spectrum spec;
    Eigen::LLT<MatrixXd> allt(forms.a);
    if (allt.info() == Eigen::Success) {
        // A is positive definite (the clamped plate form always is): solve the
        // reciprocal pencil M v = mu A v instead.  The QR iteration's roundoff
        // scales with the norm of the reduced operator, which is 1/lambda_1
        // here rather than lambda_max ~ h^-4, so the small eigenvalues come
        // out near machine precision instead of eps * lambda_max.
        Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> solver(
            forms.m, forms.a, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
        if (solver.info() != Eigen::Success)
            throw NoConvergence("generalized eigensolver did not converge");
        spec.eigenvalues = VectorXd(k);
        spec.eigenvectors = MatrixXd(nfree, k);
        for (int i = 0; i < k; ++i) {
            const double mu = solver.eigenvalues()(nfree - 1 - i);
            if (mu <= 0.0) throw NoConvergence("reciprocal pencil produced a nonpositive mode");
            spec.eigenvalues(i) = 1.0 / mu;
            // vectors are A-orthonormal; rescale to M-orthonormal
            spec.eigenvectors.col(i) =
                solver.eigenvectors().col(nfree - 1 - i) / std::sqrt(mu);
        }
    } else {
        Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> solver(
            forms.a, forms.m, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
        if (solver.info() != Eigen::Success)
            throw NoConvergence("generalized eigensolver did not converge");
        spec.eigenvalues = solver.eigenvalues().head(k);
        spec.eigenvectors = solver.eigenvectors().leftCols(k);
    }
    spec.residuals = VectorXd::Zero(k);
    for (int i = 0; i < k; ++i) {
        const VectorXd v = spec.eigenvectors.col(i);
        const VectorXd mv = forms.m * v;
        const double lambda = spec.eigenvalues(i);
        spec.residuals(i) = (forms.a * v - lambda * mv).norm() / (std::abs(lambda) * mv.norm());
    }

    // clusters: maximal runs with relative gap below 1e-8; ordering inside a
    // cluster is arbitrary and downstream checks must not rely on it
    std::vector<int> current{0};
    for (int i = 1; i < k; ++i) {
        const double gap = spec.eigenvalues(i) - spec.eigenvalues(i - 1);
        if (gap < 1e-8 * std::abs(spec.eigenvalues(i))) {
            current.push_back(i);
        } else {
            spec.clusters.push_back(current);
            current = {i};
        }
    }
    spec.clusters.push_back(current);

    for (int i = 0; i < k; ++i)
        if (spec.residuals(i) > tol)
            throw NoConvergence("eigenpair residual exceeds tolerance");
    return spec;
}

inline double rayleigh_quotient(const AssembledForms& forms, const VectorXd& v) {
    const double vmv = v.dot(forms.m * v);
    if (v.norm() == 0.0 || vmv <= 0.0) throw ZeroVector("rayleigh_quotient: zero vector");
    return v.dot(forms.a * v) / vmv;
}

}  // namespace platelab
