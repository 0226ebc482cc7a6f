#include <doctest.h>

#include <cmath>

#include "platelab/bounds.hpp"
#include "platelab/catalogue.hpp"

using namespace platelab;

namespace {

Spectrum synthetic_spectrum(std::initializer_list<double> values) {
    Spectrum s;
    s.eigenvalues = VectorXd(static_cast<int>(values.size()));
    int i = 0;
    for (double v : values) s.eigenvalues(i++) = v;
    s.residuals = VectorXd::Zero(s.count());
    return s;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("quartic bound on a two-level synthetic spectrum") {
    // Lambda = (1, 2), n = 1, all constants zero:
    // LHS = 1, RHS = 4 sqrt(1 * (3/2)) = 4.898979485566356
    const Spectrum s = synthetic_spectrum({1.0, 2.0});
    const GeometricConstants zero;
    const BoundReport rep = thm11_check(s, zero, 1);
    CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.rhs == doctest::Approx(4.898979485566356).epsilon(1e-14));
    CHECK(rep.pass);
}

TEST_CASE("vanishing constants reduce the bound to the closed form") {
    const GeometricConstants zero;
    for (double l1 : {1.0, 17.5, 500.5639, 14617.6}) {
        for (int n : {1, 2, 3}) {
            std::vector<double> vals(n + 1, l1);
            Spectrum s;
            s.eigenvalues = Eigen::Map<VectorXd>(vals.data(), n + 1);
            const BoundReport rep = thm11_check(s, zero, n);
            const double closed = minimal_reduction_rhs(l1, n);
            CHECK(std::abs(rep.rhs - closed) <= 1e-12 * closed);
        }
    }
}

TEST_CASE("corollary 1 variants are consistent on a synthetic spectrum") {
    const Spectrum s = synthetic_spectrum({2.0, 5.0, 6.0});
    GeometricConstants c;
    c.c1_hat = 0.3;
    c.c1_tilde = 0.1;
    c.c2_hat = 0.25;
    const int n = 2;
    const BoundReport t = thm11_check(s, c, n);
    const BoundReport c11 = cor11_check(s, c, n);
    const BoundReport c12 = cor12_check(s, c, n);
    const BoundReport c13 = cor13_check(s, c, n);
    CHECK(c11.lhs == doctest::Approx(t.lhs - n * std::sqrt(2.0)).epsilon(1e-13));
    // ab <= ((a+b)/2)^2 turns the quartic product into the additive form
    CHECK(t.rhs <= 4.0 * ((n / 2.0 + 1.0) / 2.0 + 0.5) * std::sqrt(2.0) +
                       4.0 * (thm11_extra(2.0, c)) + 1e-12);
    CHECK(c12.pass);
    CHECK(c13.pass);
}

TEST_CASE("translator bounds require the translator gate") {
    const Spectrum s = synthetic_spectrum({1.0, 2.0});
    CHECK_THROWS_AS(thm51_check(s, 1, 0.0, false), NotATranslator);
    CHECK_THROWS_AS(cor51_check(s, 1, 1e-3, true), NotATranslator);
    const BoundReport rep = thm51_check(s, 1, 1e-12, true);
    // extra = Lambda_1^{1/4} + n^2/4 = 1.25 at Lambda_1 = 1
    CHECK(rep.rhs == doctest::Approx(4.0 * std::sqrt(2.25 * 2.75)).epsilon(1e-13));
}

TEST_CASE("variant gates reject mismatched geometry") {
    const Spectrum s = synthetic_spectrum({1.0, 2.0});
    GeometricConstants curved;
    curved.max_nsq_hsq = 1.0;
    curved.max_unit_sphere_dist = 0.5;
    CHECK_THROWS_AS(cor6x_check(s, curved, 1, Corollary6Variant::Minimal), VariantMismatch);
    CHECK_THROWS_AS(cor6x_check(s, curved, 1, Corollary6Variant::UnitSphere), VariantMismatch);
    const GeometricConstants flat;
    CHECK(cor6x_check(s, flat, 1, Corollary6Variant::Minimal).pass);
}

TEST_CASE("projective constants reproduce hand arithmetic") {
    // n = 2, real projective target, totally geodesic: (1/4)(0 + 2*2*(2+1)) = 3
    const ProjectiveConstants pr = projective_constants(2, ProjectiveField::R, 0.0, 0.0);
    CHECK(pr.c6_hat == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(pr.d_f == 1);
    // n = 2, complex target with |Hhat| = 1: (1/4)(4 + 2*2*4) = 5
    const ProjectiveConstants pc = projective_constants(2, ProjectiveField::C, 1.0, 0.4);
    CHECK(pc.c6_hat == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(pc.c6_tilde == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(projective_constants(1, ProjectiveField::Q, 0.0, 0.0).d_f == 4);
}

TEST_CASE("rhs grows monotonically in each geometric constant") {
    const Spectrum s = synthetic_spectrum({3.0, 7.0});
    GeometricConstants c;
    double prev = thm11_check(s, c, 1).rhs;
    for (double step : {0.1, 0.5, 2.0}) {
        c.c1_hat = step;
        c.c1_tilde = step / 3.0;
        const double rhs = thm11_check(s, c, 1).rhs;
        CHECK(rhs > prev);
        prev = rhs;
    }
}

TEST_CASE("insufficient spectra are rejected") {
    const Spectrum s = synthetic_spectrum({1.0, 2.0});
    const GeometricConstants c;
    CHECK_THROWS_AS(thm11_check(s, c, 2), InsufficientSpectrum);
    CHECK_THROWS_AS(cor12_check(s, c, 3), InsufficientSpectrum);
}

TEST_CASE("sampled constants on the grim reaper arc match the analytic maxima") {
    const ParametricImmersion imm = make_grim_reaper_arc({{"x0", 1.0}});
    VectorXd nu(2);
    nu << 0.0, 1.0;
    const DriftSpec drift = DriftSpec::unit(nu);
    const DomainSpec domain = DomainSpec::full(imm);
    const GeometricConstants gc = constants(imm, drift, domain, {201});
    // curve: H = cos x, maximized at x = 0; |nu^T| = sin x, maximized at x0
    CHECK(gc.c1_hat == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(gc.c1_tilde == doctest::Approx(0.25 * std::sin(1.0)).epsilon(1e-6));
    CHECK(gc.max_unit_sphere_dist > 1e-3);
}

TEST_CASE("closed-form delta lies between the grid extremes") {
    GeometricConstants c;
    c.c1_hat = 0.2;
    c.c1_tilde = 0.05;
    const double d = closed_form_delta(100.0, 2, c);
    CHECK(d > 0.25);
    CHECK(d < 4.0);
    CHECK(d < 1.0);  // the denominator dominates for n >= 1
}

}  // TEST_SUITE
