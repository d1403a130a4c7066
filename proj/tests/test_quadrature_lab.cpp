#include "oracles/combinatorics.hpp"
#include "oracles/uniqueness.hpp"
#include "sbo/kernel_families.hpp"
#include "sbo/quadrature_lab.hpp"
#include "support.hpp"

#include <cmath>
#include <doctest.h>
#include <numbers>

using namespace sbo;
using std::numbers::pi;

namespace {

// 2 prod Γ(alpha_i + 1/2) / Γ(|alpha| + p/2)
double moment_oracle(int p, const std::vector<int>& alpha) {
    double num = 2;
    int total = 0;
    for (int i = 0; i < p; ++i) {
        const int a = i < static_cast<int>(alpha.size()) ? alpha[static_cast<std::size_t>(i)] : 0;
        num *= std::tgamma(a + 0.5);
        total += a;
    }
    return num / std::tgamma(total + p / 2.0);
}

}  // namespace

TEST_CASE("sphere moments up to p = 8 and |alpha| = 3") {
    for (int p = 1; p <= 8; ++p)
        for (int deg = 0; deg <= 3; ++deg)
            oracle::multiindices(p, deg, [&](const std::vector<int>& alpha) {
                const double expected = moment_oracle(p, alpha);
                CHECK(sphere_moment(p, alpha).value() == doctest::Approx(expected).epsilon(1e-13));
                if (p <= 6) CHECK(sphere_moment_numeric(p, alpha, 8) == doctest::Approx(expected).epsilon(1e-10));
            });
    CHECK(sphere_moment(4, {1, 1, 0, 0}).coeff == ratio(1, 12));
    CHECK(sphere_moment(4, {1, 1, 0, 0}).pi_half == 4);
    std::vector<int> odd{1, 0, 0};
    CHECK(sphere_monomial(3, odd).coeff == 0);
}

TEST_CASE("weighted sphere moments") {
    // |omega''| weight with p = 2, p'' = 1, gamma = 1: integral of |sin| over S^1 is 4
    CHECK(sphere_moment_weighted(2, 1, {0, 0}, 1.0) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(sphere_moment_weighted_numeric(2, 1, {0, 0}, 1.0, 10) == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(sphere_moment_weighted(4, 2, {1, 0, 1, 0}, -0.5) ==
          doctest::Approx(sphere_moment_weighted_numeric(4, 2, {1, 0, 1, 0}, -0.5, 12)).epsilon(1e-9));
    CHECK_THROWS_AS(sphere_moment_weighted(4, 2, {0, 0, 0, 0}, -2.0), std::domain_error);
}

TEST_CASE("Monte Carlo does not depend on the thread count") {
    const double one = sphere_moment_monte_carlo(4, {1, 1, 0, 0}, 200000, 3, 1);
    const double four = sphere_moment_monte_carlo(4, {1, 1, 0, 0}, 200000, 3, 4);
    CHECK(one == four);
    CHECK(one == doctest::Approx(pi * pi / 12).epsilon(2e-2));
}

TEST_CASE("rule sizes are bounded") {
    CHECK_THROWS_AS(htype_surface_rule(0, 8, 7, 0.0, 40, 400), std::length_error);
}

TEST_CASE("polar integrals") {
    const Integrand one = [](std::span<const double>) { return 1.0; };
    // surface mass of {N = 1} for (p, q) = (2, 1)
    CHECK(htype_surface_integral(2, 1, one) == doctest::Approx(2 * pi * pi).epsilon(1e-6));
    // a Gaussian over R^3 with the (2,1) polar decomposition
    const Integrand g = [](std::span<const double> x) { return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])); };
    CHECK(polar_integral(2, 1, g) == doctest::Approx(std::pow(pi, 1.5)).epsilon(1e-8));
    CHECK(euclidean_integral(3, g) == doctest::Approx(std::pow(pi, 1.5)).epsilon(1e-8));
}

TEST_CASE("test functions") {
    const TestFunction phi({1.0, 2.0}, {{{0, 0}, 1.0}, {{2, 0}, 3.0}});
    // int (1 + 3x^2) e^{-x^2 - 2y^2} = (sqrt(pi) + 3 sqrt(pi)/2) sqrt(pi/2)
    CHECK(phi.integral() == doctest::Approx(2.5 * std::sqrt(pi) * std::sqrt(pi / 2)).epsilon(1e-13));
    const std::vector<double> x{0.3, -0.2};
    const double step = 1e-6;
    const double fd = (phi(std::vector<double>{0.3 + step, -0.2}) - phi(std::vector<double>{0.3 - step, -0.2})) / (2 * step);
    CHECK(phi.partial(0)(x) == doctest::Approx(fd).epsilon(1e-7));
    const auto t = phi.taylor({1, 1}, 2);
    CHECK(t.at({0, 0}) == doctest::Approx(1.0));
    CHECK(t.at({2, 0}) == doctest::Approx(2.0));   // 3 - 1
    CHECK(t.at({0, 2}) == doctest::Approx(-2.0));
}

TEST_CASE("continued half-line integrals") {
    // int_0^inf r^{s-1} e^{-r^2} dr = Γ(s/2)/2, continued past the poles
    RadialProfile psi{[](double r) { return std::exp(-r * r); }, {1, 0, -1, 0, 0.5, 0, -1.0 / 6}};
    for (double s : {1.5, -0.5, -1.5, -3.3}) {
        CHECK(regularized_halfline(psi, s).real() == doctest::Approx(std::tgamma(s / 2) / 2).epsilon(1e-9));
        CHECK(normalized_halfline(psi, s).real() == doctest::Approx(0.5).epsilon(1e-9));
    }
    CHECK(normalized_halfline(psi, -4.0).real() == doctest::Approx(0.5).epsilon(1e-12));
    const auto z = regularized_halfline(psi, std::complex<double>(-0.5, 0.7));
    CHECK(std::isfinite(z.imag()));
    CHECK_THROWS_AS(regularized_halfline(psi, -2.0), std::domain_error);
}

TEST_CASE("u^A pairings: polar against direct") {
    const auto cfg = derive(Algebra::C, 1, 0, FCase::Trivial);
    const auto phi = TestFunction::gaussian({1.0, 0.7, 1.3});
    const double lambda = 1.3, nu = 0.4;
    CHECK(uA_pairing(cfg, lambda, nu, phi) == doctest::Approx(uA_pairing_direct(cfg, lambda, nu, phi)).epsilon(1e-6));
}

TEST_CASE("residue at a k = 0 point of //") {
    const auto cfg = derive(Algebra::C, 1, 0, FCase::Trivial);
    const auto phi = TestFunction::gaussian({1.0, 1.0, 1.0});
    const ParamPoint pt{Rational(0), Rational(1)};
    REQUIRE(lattice_flags(cfg, pt).in_slash);
    const auto r = residue_extrapolation(cfg, pt, phi);
    CHECK(r.expected == doctest::Approx(pi * pi).epsilon(1e-12));
    CHECK(r.rel_err() < 1e-3);
    CHECK(uA_pairing(cfg, pt, phi) == doctest::Approx(pi * pi).epsilon(1e-9));
}

TEST_CASE("closed forms against quadrature") {
    const auto c = derive(Algebra::C, 1, 0, FCase::Trivial);
    const auto sv = spherical_vector_integral_check(c, {Rational(2), Rational(0)});
    CHECK(sv.closed_form == doctest::Approx(std::pow(pi, 3) / 16).epsilon(1e-12));
    CHECK(sv.rel_err() < 1e-4);
    const auto ks1 = ks_m0_check(c, Rational(2));
    CHECK(ks1.closed_form == doctest::Approx(2.0));
    CHECK(ks1.rel_err() < 1e-4);
    const auto h = derive(Algebra::H, 1, 0, FCase::Trivial);
    const auto ks3 = ks_m0_check(h, Rational(2));
    CHECK(ks3.closed_form == doctest::Approx(4 * pi / 3));
    CHECK(ks3.rel_err() < 1e-4);
    CHECK(knapp_stein_check(c, ratio(1, 2)).rel_err() < 1e-6);
    CHECK(knapp_stein_prime_check(derive(Algebra::C, 2, 1, FCase::Trivial), ratio(1, 2)).rel_err() < 1e-6);
    CHECK(sbo_spherical_check(c, {Rational(3), ratio(1, 2)}).rel_err() < 1e-6);
    CHECK_THROWS_AS(spherical_vector_integral_check(c, {Rational(0), Rational(2)}), std::domain_error);
}

TEST_CASE("functional equations") {
    const auto c = derive(Algebra::C, 1, 0, FCase::Trivial);
    auto rep = functional_equation_check(c, {ratio(-3, 10), ratio(1, 5)});
    REQUIRE(rep.first_applicable);
    REQUIRE(rep.second_applicable);
    CHECK(rep.first.rel_err() < 1e-4);
    CHECK(rep.second.rel_err() < 1e-4);
    // lambda > 0: only the second one makes sense
    rep = functional_equation_check(derive(Algebra::C, 2, 1, FCase::Trivial), {Rational(3), ratio(1, 2)});
    CHECK_FALSE(rep.first_applicable);
    REQUIRE(rep.second_applicable);
    CHECK(rep.second.rel_err() < 1e-4);
    CHECK_FALSE(rep.note.empty());
}
