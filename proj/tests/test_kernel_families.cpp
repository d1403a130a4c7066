#include "oracles/faa_di_bruno.hpp"
#include "oracles/uniqueness.hpp"
#include "sbo/kernel_families.hpp"
#include "support.hpp"

#include <cmath>
#include <doctest.h>

using namespace sbo;

namespace {

void for_window(int half_width, const std::function<void(const ParamPoint&)>& visit) {
    for (int a = -half_width; a <= half_width; ++a)
        for (int b = -half_width; b <= half_width; ++b) visit({ratio(a, 2), ratio(b, 2)});
}

}  // namespace

TEST_CASE("classification dimension equals the multiplicity table") {
    for (const auto& cfg : testing::acceptance_configs()) {
        CAPTURE(cfg.label());
        for_window(16, [&](const ParamPoint& pt) {
            CAPTURE(to_string(pt.lambda));
            CAPTURE(to_string(pt.nu));
            CHECK(classify_sbo_space(cfg, pt).dimension == multiplicity(cfg, pt));
        });
    }
    const auto h = derive(Algebra::H, 1, 0, FCase::Trivial);
    const auto d = classify_sbo_space(h, {Rational(-5), Rational(5)});
    CHECK(d.dimension == 6);
    CHECK(d.families.front() == "C");
}

TEST_CASE("u^A vanishes exactly on L") {
    for (const auto& cfg : testing::acceptance_configs())
        for_window(16, [&](const ParamPoint& pt) { CHECK(uA_is_zero(cfg, pt) == lattice_flags(cfg, pt).in_L); });
}

TEST_CASE("supports") {
    const auto c = derive(Algebra::C, 2, 1, FCase::Trivial);
    CHECK(support_of(Family::A, c, {ratio(1, 3), ratio(1, 5)}) == Support::Nbar);
    const auto on_slash = oracle::slash_point(c, 1, ratio(1, 3));
    CHECK(support_of(Family::A, c, on_slash) == Support::Origin);
    CHECK(support_of(Family::C, c, on_slash) == Support::Origin);
    CHECK_THROWS_AS(support_of(Family::B, c, on_slash), std::invalid_argument);
    const ParamPoint on_back{-c.rho - ratio(1, 3) + c.rho_prime - 2, ratio(1, 3)};
    CHECK(support_of(Family::A, c, on_back) == Support::NbarPrime);
    CHECK(support_of(Family::B, c, on_back) == Support::NbarPrime);
    CHECK_THROWS_AS(support_of(Family::C, c, on_back), std::invalid_argument);
    CHECK(support_name(Support::NbarPrime) == "nbar'");
}

TEST_CASE("u^B is nonzero on the whole \\\\ lattice and its support matches") {
    for (const auto& cfg : testing::acceptance_configs()) {
        CAPTURE(cfg.label());
        for_window(16, [&](const ParamPoint& pt) {
            if (!lattice_flags(cfg, pt).in_backslash) return;
            const auto ker = uB_expansion(cfg, pt);
            CAPTURE(to_string(pt.lambda));
            CAPTURE(to_string(pt.nu));
            CHECK(ker.nonzero());
            CHECK(support_from_expansion(ker) == support_of(Family::B, cfg, pt));
        });
    }
}

TEST_CASE("u^B expansion against Faà di Bruno") {
    for (const auto& cfg : testing::acceptance_configs()) {
        CAPTURE(cfg.label());
        const int dim = cfg.p_dprime, nv = dim + 2;
        for (int l = 0; l <= 2; ++l)
            for (const Rational& nu : {ratio(1, 3), ratio(-7, 5)}) {
                const ParamPoint pt{-cfg.rho - nu + cfg.rho_prime - 2 * l, nu};
                const auto ker = uB_expansion(cfg, pt);
                const Rational h = (nu + cfg.rho_prime) / 2;
                for (int deg = 0; deg <= 2 * l; ++deg)
                    oracle::weighted_compositions(std::vector<int>(static_cast<std::size_t>(dim), 1), deg, [&](const std::vector<int>& mu) {
                        Poly expected = oracle::delta_pairing(dim, l, h, mu);
                        if (cfg.m == 0) {  // no X' directions: a = 0
                            std::vector<Poly> images;
                            for (int i = 0; i < dim; ++i) images.push_back(Poly::variable(nv, i));
                            images.push_back(Poly(nv));
                            images.push_back(Poly::variable(nv, dim + 1));
                            expected = expected.compose(images);
                        }
                        Poly got(nv);
                        for (const auto& t : ker.terms) {
                            Exponent e{};
                            e[static_cast<std::size_t>(dim)] = static_cast<std::uint8_t>(t.i);
                            e[static_cast<std::size_t>(dim + 1)] = static_cast<std::uint8_t>(t.i + t.j);
                            got += Poly::monomial(nv, e, t.coeff * oracle::laplacian_power_at_zero(dim, t.k, mu));
                        }
                        CHECK(got == expected);
                    });
            }
    }
}

TEST_CASE("u^C delta coefficients are the polynomial ones") {
    const auto cfg = derive(Algebra::H, 2, 1, FCase::Trivial);
    const auto pt = oracle::slash_point(cfg, 3, ratio(1, 3));
    const auto ker = uC_kernel(cfg, pt);
    const auto table = coeff_table(cfg, pt);
    CHECK(ker.terms.size() == table.entries().size());
    for (const auto& t : ker.terms) CHECK(t.coeff == table.at(t.h, t.i, t.j));
    CHECK_THROWS_AS(uC_kernel(cfg, {ratio(1, 3), ratio(1, 5)}), std::invalid_argument);
}

TEST_CASE("analytic gradient of u^A") {
    const auto cfg = derive(Algebra::H, 2, 1, FCase::FullUnitary);
    const ParamPoint pt{ratio(7, 3), ratio(1, 5)};
    std::vector<double> x(static_cast<std::size_t>(cfg.n_vars()));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.3 + 0.1 * static_cast<double>(i % 5) - 0.05 * static_cast<double>(i % 3);
    const auto u = uA_eval(cfg, pt, x);
    for (std::size_t c = 0; c < x.size(); ++c) {
        auto xp = x, xm = x;
        const double step = 1e-6;
        xp[c] += step;
        xm[c] -= step;
        const double fd = (uA_eval(cfg, pt, xp).value - uA_eval(cfg, pt, xm).value) / (2 * step);
        CHECK(u.gradient[c] == doctest::Approx(fd).epsilon(1e-6));
    }
    std::vector<double> bad(x.size(), 0.0);
    bad[0] = 1.0;  // X'' = 0
    CHECK_THROWS_AS(uA_eval(cfg, pt, bad), std::domain_error);
}

TEST_CASE("pointwise invariance of u^A") {
    for (const auto& cfg : testing::acceptance_configs()) {
        CAPTURE(cfg.label());
        for (const ParamPoint& pt : {ParamPoint{ratio(7, 3), ratio(1, 5)}, ParamPoint{ratio(-1, 2), ratio(3, 4)}}) {
            const auto rep = verify_invariance_pointwise(cfg, pt, 100, 7);
            CHECK(rep.points == 100);
            CHECK(rep.passes(1e-8));
        }
    }
}

TEST_CASE("pointwise invariance rejects a wrong kernel") {
    const auto cfg = derive(Algebra::C, 2, 1, FCase::Trivial);
    const ParamPoint pt{ratio(7, 3), ratio(1, 5)};
    auto ker = smooth_kernel(cfg, pt);
    ker.norm_exponent += ratio(1, 10);
    const auto rep = verify_invariance_pointwise(cfg, pt, 20, 7, ker);
    CHECK(rep.max_dv > 1e-3);
    CHECK_FALSE(rep.passes(1e-8));
}
