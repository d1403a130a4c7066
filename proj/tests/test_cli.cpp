#include "cli.hpp"
#include "sbo/fourier_verifier.hpp"

#include <doctest.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

using namespace sbo;
using namespace sbo::cli;

namespace {

PairConfig cfg_of(const char* alg, int n, int m, const char* f) { return config_from_fields(alg, n, m, f); }

Window window(Rational lmin, Rational lmax, Rational nmin, Rational nmax, Rational step) {
    return Window{lmin, lmax, nmin, nmax, step};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("classify at an S2 point of (H,1,0,trivial)") {
    const auto j = run_classify(cfg_of("H", 1, 0, "trivial"), {Rational(-5), Rational(5)});
    CHECK(j["schema"] == 1);
    CHECK(j["multiplicity"] == 6);
    CHECK(j["dimension"] == 6);
    CHECK(j["families"] == Json::array({"C", "Harmonic(2)"}));
    CHECK(j["family_counts"]["Harmonic(2)"] == 5);
    CHECK(j["flags"]["S2"] == true);
    CHECK(j["constants"].contains("residue_constant_AC"));
}

TEST_CASE("classify at the origin is the smooth family") {
    const auto j = run_classify(cfg_of("H", 1, 0, "trivial"), {Rational(0), Rational(0)});
    CHECK(j["multiplicity"] == 1);
    CHECK(j["families"] == Json::array({"A"}));
    CHECK(j["supports"] == Json::array({"nbar"}));
}

TEST_CASE("bad input is a usage error") {
    CHECK_THROWS_AS(parse_exact("1/0"), UsageError);
    CHECK_THROWS_AS(parse_exact("x"), UsageError);
    CHECK(parse_exact("-6/4") == ratio(-3, 2));
    CHECK_THROWS_AS(cfg_of("R", 1, 0, "trivial"), UsageError);
    CHECK_THROWS_AS(cfg_of("C", 1, 0, "u1"), UsageError);
    CHECK_THROWS_AS(parse_integral_check("volume"), UsageError);
    CHECK_THROWS_AS(parse_config_toml("algebra = \"H\"\nn = 1\n"), UsageError);
    CHECK_THROWS_AS(parse_config_toml("algebra = \"H\"\nn = 1\nm = 0\n[point]\nlambda = \"1/0\"\nnu = \"0\"\n"), UsageError);
}

TEST_CASE("config files") {
    const auto toml = parse_config_toml(R"(
algebra = "H"
n = 1
m = 0
f = "u1"
u = ["0", "1", "0", "0"]

[point]
lambda = "-5"
nu = 5

[window]
lambda = ["-10", "2"]
nu = ["-2", "10"]
step = "1"

[integrals]
tol = 1e-6
seed = 7
threads = 2
)");
    CHECK(toml.config.algebra == Algebra::H);
    CHECK(toml.config.f == FCase::U1Direction);
    REQUIRE(toml.config.u_dir);
    CHECK((*toml.config.u_dir)[1] == 1);
    REQUIRE(toml.point);
    CHECK(*toml.point == ParamPoint{Rational(-5), Rational(5)});
    REQUIRE(toml.window);
    CHECK(toml.window->cell_count() == 13 * 13);
    CHECK(toml.integrals.tol == 1e-6);
    CHECK(toml.integrals.seed == 7);
    CHECK(toml.integrals.threads == 2);

    const auto json = parse_config_json(R"({"algebra": "H", "n": 1, "m": 0, "f": "u1", "u": ["0", "1", "0", "0"],
        "point": {"lambda": "-5", "nu": 5}, "window": {"lambda": ["-10", "2"], "nu": ["-2", "10"], "step": "1"}})");
    CHECK(json.config == toml.config);
    CHECK(*json.point == *toml.point);
    CHECK(json.window->points() == toml.window->points());

    CHECK_THROWS_AS(parse_config_toml("algebra = \"C\"\nn = 1\nm = 0\n[window]\nstep = \"0\"\n"), UsageError);
}

TEST_CASE("window lattice") {
    const auto w = window(-1, 1, 0, ratio(1, 2), ratio(1, 2));
    CHECK(w.cell_count() == 10);
    const auto pts = w.points();
    REQUIRE(pts.size() == 10);
    CHECK(pts.front() == ParamPoint{Rational(-1), Rational(0)});
    CHECK(pts.back() == ParamPoint{Rational(1), ratio(1, 2)});
    CHECK(window(1, 0, 0, 0, 1).cell_count() == 0);
    // bounds off the grid are not included
    CHECK(window(0, ratio(3, 4), 0, 0, ratio(1, 2)).cell_count() == 2);
}

TEST_CASE("atlas of (H,1,0) shows the S2 diagonal") {
    const auto cfg = cfg_of("H", 1, 0, "trivial");
    const auto w = window(-10, 2, -2, 10, 1);
    const auto cells = atlas_cells(cfg, w);
    CHECK(cells.size() == 13 * 13);
    std::set<int> s2_labels;
    for (const auto& c : cells)
        if (c.in_S2) {
            CHECK(c.color_class == "S2");
            s2_labels.insert(c.multiplicity);
        }
    for (int label : {4, 6, 8}) CHECK(s2_labels.count(label) == 1);
    const auto svg = atlas_svg(cfg, w, cells);
    for (int label : {4, 6, 8})
        CHECK(svg.find("text-anchor=\"middle\">" + std::to_string(label) + "<") != std::string::npos);
    CHECK(std::regex_search(svg, std::regex("S2: mult [0-9/]*4/6/8")));
    const std::regex cell_rect("<rect[^>]*><title>");
    const auto rects = std::distance(std::sregex_iterator(svg.begin(), svg.end(), cell_rect), std::sregex_iterator());
    CHECK(rects == static_cast<std::ptrdiff_t>(cells.size()));
}

TEST_CASE("atlas of (C,2,1) puts L on the expected lattice with multiplicity 2") {
    const auto cells = atlas_cells(cfg_of("C", 2, 1, "full"), window(-11, 0, -10, 0, 1));
    std::set<std::pair<long, long>> expected, got;
    for (long i = 0; i <= 4; ++i)
        for (long j = 0; j <= i; ++j) expected.insert({-3 - 2 * i, -2 - 2 * j});
    for (const auto& c : cells) {
        if (!c.in_L) {
            CHECK(c.multiplicity == 1);
            continue;
        }
        CHECK(c.multiplicity == 2);
        CHECK(c.color_class == "L");
        got.insert({c.point.lambda.get_num().get_si(), c.point.nu.get_num().get_si()});
    }
    CHECK(got == expected);
}

TEST_CASE("atlas output is deterministic and round-trips") {
    const auto cfg = cfg_of("C", 1, 0, "trivial");
    const auto w = window(-4, 1, -3, 3, ratio(1, 2));
    const auto cells = atlas_cells(cfg, w);
    const auto csv = atlas_csv(cells);
    CHECK(csv == atlas_csv(atlas_cells(cfg, w)));
    CHECK(atlas_svg(cfg, w, cells) == atlas_svg(cfg, w, atlas_cells(cfg, w)));
    CHECK(parse_atlas_csv(csv) == cells);

    const auto empty = atlas_csv(atlas_cells(cfg, window(1, 0, 0, 0, 1)));
    CHECK(empty == "lambda,nu,slash,backslash,X,L,S1,S2,S3,multiplicity,families,color_class\n");
    CHECK(parse_atlas_csv(empty).empty());
    CHECK_THROWS_AS(atlas_cells(cfg, window(-100, 100, -100, 100, 1)), UsageError);
}

TEST_CASE("verify passes on (C,2,1) and catches a perturbed coefficient") {
    const auto cfg = cfg_of("C", 2, 1, "full");
    const auto ok = run_verify(cfg, Window{});
    CHECK(ok.pass);
    CHECK(ok.report["checks"]["system"]["checked"].get<int>() > 0);
    CHECK(ok.report["checks"]["recurrences"]["failed"] == 0);

    const auto bad = run_verify(cfg, Window{}, Perturbation{1, 0, 0});
    CHECK_FALSE(bad.pass);
    REQUIRE_FALSE(bad.report["failures"].empty());
    const auto& first = bad.report["failures"][0];
    CHECK(first["name"] == "R2");
    CHECK(first["h"] == 1);
}

TEST_CASE("verify on octonions with m = 0") {
    const auto r = run_verify(cfg_of("O", 1, 0, "trivial"), window(-8, 2, -2, 4, 1));
    CHECK(r.pass);
    CHECK(r.report["checks"]["system"]["checked"].get<int>() > 0);
}

TEST_CASE("kernel output matches the frozen tables") {
    struct Case {
        const char* file;
        PairConfig cfg;
        ParamPoint pt;
    };
    const auto c21 = cfg_of("C", 2, 1, "full");
    const auto h10 = cfg_of("H", 1, 0, "trivial");
    const std::vector<Case> cases{
        {"kernel_C21_k0.json", c21, {ratio(-2, 3), ratio(1, 3)}}, {"kernel_C21_k1.json", c21, {ratio(-8, 3), ratio(1, 3)}},
        {"kernel_C21_k2.json", c21, {ratio(-14, 3), ratio(1, 3)}}, {"kernel_H10_k0.json", h10, {ratio(-5, 3), ratio(1, 3)}},
        {"kernel_H10_k1.json", h10, {ratio(-11, 3), ratio(1, 3)}}, {"kernel_H10_k2.json", h10, {ratio(-17, 3), ratio(1, 3)}}};
    for (const auto& c : cases) {
        CAPTURE(c.file);
        const Json golden = Json::parse(slurp(std::string(SBO_GOLDEN_DIR) + "/" + c.file));
        // the frozen table must solve the system on its own
        const auto& delta = golden.at("delta");
        CoeffTable table(delta.at("k").get<long>(), ZForm::SquaredNorm);
        for (const auto& t : delta.at("terms")) table.set(t["h"], t["i"], t["j"], parse_exact(t["coeff"]));
        CHECK(verify_system(table_poly(c.cfg, table), c.cfg, c.pt).ok());
        CHECK(run_kernel(c.cfg, c.pt) == golden);
    }
}

TEST_CASE("integral checks through the front end") {
    const auto cfg = cfg_of("C", 1, 0, "trivial");
    IntegralSettings s;
    for (auto check : {IntegralCheck::Moments, IntegralCheck::Polar, IntegralCheck::SphericalVector,
                       IntegralCheck::KnappStein, IntegralCheck::Functional, IntegralCheck::Residue}) {
        const auto r = run_integrals(check, cfg, std::nullopt, s);
        CAPTURE(r.report.dump());
        CHECK(r.pass);
        CHECK(r.report["schema"] == 1);
    }
    // tolerance is honoured
    s.tol = 1e-9;
    CHECK_FALSE(run_integrals(IntegralCheck::Residue, cfg, std::nullopt, s).pass);
    // the 8-dimensional polar mass needs the coarse-rule fallback
    CHECK(run_integrals(IntegralCheck::Polar, cfg_of("O", 1, 0, "trivial"), std::nullopt, IntegralSettings{}).pass);
    // outside the convergence region
    CHECK_THROWS_AS(run_integrals(IntegralCheck::SphericalVector, cfg, ParamPoint{Rational(-3), Rational(0)}, s), UsageError);
}
