#include <doctest.h>

#include <cstring>

#include "platelab/catalogue.hpp"
#include "platelab/eigensolve.hpp"
#include "platelab/oracles.hpp"

using namespace platelab;

namespace {

AssembledForms synthetic_forms(const MatrixXd& a, const MatrixXd& m) {
    AssembledForms f;
    f.a = a;
    f.m = m;
    f.g = MatrixXd::Identity(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        f.free_to_global.push_back(i);
        f.global_to_free.push_back(i);
    }
    return f;
}

Spectrum beam_spectrum(int elements, int k) {
    const ParametricImmersion imm = make_interval();
    const DomainSpec domain = DomainSpec::full(imm);
    MeshC1 mesh{domain, {elements}, 8};
    return smallest_eigenpairs(assemble(imm, DriftSpec::zero(1), domain, mesh), k);
}

}  // namespace

TEST_SUITE("eigensolve") {

TEST_CASE("identity pencil has all eigenvalues one") {
    const int n = 5;
    const Spectrum s =
        smallest_eigenpairs(synthetic_forms(MatrixXd::Identity(n, n), MatrixXd::Identity(n, n)), n);
    for (int i = 0; i < n; ++i) CHECK(s.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(s.clusters.size() == 1);
    CHECK(s.clusters[0].size() == 5);
}

TEST_CASE("block-diagonal pencil yields the sorted union of block spectra") {
    MatrixXd a = MatrixXd::Zero(4, 4), m = MatrixXd::Identity(4, 4);
    a.diagonal() << 3.0, 1.0, 4.0, 2.0;
    const Spectrum s = smallest_eigenpairs(synthetic_forms(a, m), 4);
    for (int i = 0; i < 4; ++i)
        CHECK(s.eigenvalues(i) == doctest::Approx(i + 1.0).epsilon(1e-14));
}

TEST_CASE("eigenvectors are M-orthonormal with small residuals") {
    const Spectrum s = beam_spectrum(30, 3);
    const ParametricImmersion imm = make_interval();
    const DomainSpec domain = DomainSpec::full(imm);
    MeshC1 mesh{domain, {30}, 8};
    const AssembledForms forms = assemble(imm, DriftSpec::zero(1), domain, mesh);
    const MatrixXd gram = s.eigenvectors.transpose() * forms.m * s.eigenvectors;
    CHECK((gram - MatrixXd::Identity(3, 3)).norm() <= 1e-10);
    for (int i = 0; i < 3; ++i) CHECK(s.residuals(i) <= 1e-8);
}

TEST_CASE("beam eigenvalues match the transcendental roots") {
    const Spectrum s = beam_spectrum(100, 2);
    const std::vector<double> ref = oracles::beam_reference(2);
    CHECK(std::abs(s.eigenvalues(0) - ref[0]) <= 5e-4 * ref[0]);
    CHECK(std::abs(s.eigenvalues(1) - ref[1]) <= 5e-4 * ref[1]);
}

TEST_CASE("rayleigh quotient is minimized by the first eigenpair") {
    const ParametricImmersion imm = make_interval();
    const DomainSpec domain = DomainSpec::full(imm);
    MeshC1 mesh{domain, {20}, 8};
    const AssembledForms forms = assemble(imm, DriftSpec::zero(1), domain, mesh);
    const Spectrum s = smallest_eigenpairs(forms, 2);
    CHECK(rayleigh_quotient(forms, s.eigenvectors.col(0)) ==
          doctest::Approx(s.eigenvalues(0)).epsilon(1e-12));
    VectorXd probe = VectorXd::LinSpaced(forms.free_count(), 0.3, 1.1);
    CHECK(rayleigh_quotient(forms, probe) >= s.eigenvalues(0) * (1.0 - 1e-12));
    CHECK_THROWS_AS(rayleigh_quotient(forms, VectorXd::Zero(forms.free_count())), ZeroVector);
}

TEST_CASE("indefinite mass matrix is rejected") {
    MatrixXd m = MatrixXd::Identity(3, 3);
    m(2, 2) = -1.0;
    CHECK_THROWS_AS(smallest_eigenpairs(synthetic_forms(MatrixXd::Identity(3, 3), m), 2),
                    IndefiniteMass);
}

TEST_CASE("clustered eigenvalues are grouped") {
    MatrixXd a = MatrixXd::Zero(3, 3);
    a.diagonal() << 1.0, 1.0 + 1e-12, 2.0;
    const Spectrum s = smallest_eigenpairs(synthetic_forms(a, MatrixXd::Identity(3, 3)), 3);
    REQUIRE(s.clusters.size() == 2);
    CHECK(s.clusters[0].size() == 2);
    CHECK(s.clusters[1].size() == 1);
}

TEST_CASE("repeated runs are bit-identical") {
    const Spectrum s1 = beam_spectrum(40, 3);
    const Spectrum s2 = beam_spectrum(40, 3);
    CHECK(std::memcmp(s1.eigenvalues.data(), s2.eigenvalues.data(), 3 * sizeof(double)) == 0);
    CHECK(std::memcmp(s1.eigenvectors.data(), s2.eigenvectors.data(),
                      sizeof(double) * s1.eigenvectors.size()) == 0);
}

TEST_CASE("insufficient pencil size is reported") {
    CHECK_THROWS_AS(
        smallest_eigenpairs(synthetic_forms(MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2)), 5),
        InsufficientSpectrum);
}

}  // TEST_SUITE
