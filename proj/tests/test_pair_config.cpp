#include "sbo/pair_config.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace sbo;

TEST_CASE("derived dimensions") {
    const auto c = derive(Algebra::C, 1, 0, FCase::Trivial);
    CHECK(c.p == 2);
    CHECK(c.q == 1);
    CHECK(c.rho == 2);
    CHECK(c.rho_prime == 1);
    const auto h = derive(Algebra::H, 2, 1, FCase::FullUnitary);
    CHECK(h.p == 8);
    CHECK(h.p_prime == 4);
    CHECK(h.p_dprime == 4);
    CHECK(h.rho == 7);
    CHECK(h.rho_prime == 5);
    const auto o = derive(Algebra::O, 1, 0, FCase::Trivial);
    CHECK(o.n_vars() == 15);
    CHECK(o.rho == 11);
    CHECK(o.rho_prime == 7);
}

TEST_CASE("invalid configurations") {
    CHECK_THROWS_AS(derive(Algebra::O, 2, 0, FCase::Trivial), std::invalid_argument);
    CHECK_THROWS_AS(derive(Algebra::C, 1, 1, FCase::Trivial), std::invalid_argument);
    CHECK_THROWS_AS(derive(Algebra::C, 2, -1, FCase::Trivial), std::invalid_argument);
    CHECK_THROWS_AS(derive(Algebra::H, 1, 0, FCase::U1Direction, HNum::unit(Algebra::H, 0)), std::invalid_argument);
    CHECK_THROWS_AS(parse_fcase("nope"), std::invalid_argument);
    for (auto f : {FCase::FullUnitary, FCase::Trivial, FCase::U1Direction, FCase::TransitiveOther})
        CHECK(parse_fcase(fcase_name(f)) == f);
}

TEST_CASE("strong sphericity") {
    for (const auto& cfg : testing::acceptance_configs()) CHECK(is_strongly_spherical(cfg));
    CHECK_FALSE(is_strongly_spherical(derive(Algebra::C, 3, 1, FCase::Trivial)));
    CHECK(is_strongly_spherical(derive(Algebra::C, 3, 1, FCase::FullUnitary)));
    CHECK_FALSE(is_strongly_spherical(derive(Algebra::H, 3, 1, FCase::Trivial)));
    CHECK_THROWS_AS(multiplicity(derive(Algebra::C, 3, 1, FCase::Trivial), {0, 0}), std::invalid_argument);
}

TEST_CASE("both descriptions of L agree") {
    for (const auto& cfg : testing::acceptance_configs())
        for (int a = -30; a <= 30; ++a)
            for (int b = -30; b <= 30; ++b) {
                const ParamPoint pt{ratio(a, 2), ratio(b, 2)};
                CHECK(lattice_flags(cfg, pt).in_L == in_L_alternate(cfg, pt));
            }
}

TEST_CASE("lattice indices") {
    const auto c = derive(Algebra::C, 1, 0, FCase::Trivial);
    // lambda + rho - nu - rho' = -4, lambda + rho + nu - rho' = -3
    auto fl = lattice_flags(c, {ratio(-9, 2), ratio(1, 2)});
    CHECK(fl.in_slash);
    CHECK(*fl.k == 2);
    CHECK_FALSE(fl.in_backslash);
    fl = lattice_flags(c, {Rational(-1), Rational(0)});
    CHECK(fl.in_X);
    CHECK(*fl.k == 0);
    CHECK(*fl.l == 0);
}

TEST_CASE("multiplicity at the exceptional points") {
    const auto h = derive(Algebra::H, 1, 0, FCase::Trivial);
    CHECK(multiplicity(h, {Rational(-5), Rational(5)}) == 6);
    CHECK(multiplicity(h, {Rational(-3), Rational(3)}) == 4);
    CHECK(multiplicity(h, {ratio(1, 3), Rational(0)}) == 1);
    const auto c = derive(Algebra::C, 1, 0, FCase::Trivial);
    // S1: (-rho+q-1-2i, rho'+2j), j <= i
    CHECK(lattice_flags(c, {Rational(-4), Rational(1)}).in_S1);
    CHECK(multiplicity(c, {Rational(-4), Rational(1)}) == 3);
    const auto u = derive(Algebra::H, 1, 0, FCase::U1Direction, testing::u_direction_i());
    CHECK(multiplicity(u, {Rational(-3), Rational(3)}) == 2);
    CHECK(multiplicity(u, {Rational(-5), Rational(5)}) == 1);
}
