#include "cli.hpp"

#include "sbo/fourier_verifier.hpp"
#include "sbo/gamma_expr.hpp"
#include "sbo/kernel_families.hpp"
#include "sbo/quadrature_lab.hpp"

#include <toml.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace sbo::cli {

// ---- parsing ------------------------------------------------------------------

Rational parse_exact(const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError("bad rational \"" + text + "\": " + e.what());
    }
}

PairConfig config_from_fields(const std::string& algebra, int n, int m, const std::string& f,
                              const std::string& u_direction) {
    try {
        const Algebra alg = parse_algebra(algebra);
        const FCase fc = parse_fcase(f);
        std::optional<HNum> u;
        if (!u_direction.empty()) {
            std::vector<Rational> coords;
            std::stringstream ss(u_direction);
            for (std::string part; std::getline(ss, part, ',');) coords.push_back(parse_exact(part));
            if (coords.size() != static_cast<std::size_t>(real_dim(alg)))
                throw UsageError("U direction needs " + std::to_string(real_dim(alg)) + " coordinates");
            u = HNum(alg, coords);
        }
        PairConfig cfg = derive(alg, n, m, fc, u);
        if (!is_strongly_spherical(cfg)) throw UsageError(cfg.label() + " is not strongly spherical");
        return cfg;
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad configuration: ") + e.what());
    }
}

Json config_json(const PairConfig& cfg) {
    Json j;
    j["algebra"] = algebra_name(cfg.algebra);
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    j["f"] = fcase_name(cfg.f);
    if (cfg.u_dir) {
        Json u = Json::array();
        for (const auto& c : cfg.u_dir->coords()) u.push_back(to_string(c));
        j["u"] = u;
    }
    j["p"] = cfg.p;
    j["q"] = cfg.q;
    j["p_prime"] = cfg.p_prime;
    j["p_dprime"] = cfg.p_dprime;
    j["rho"] = to_string(cfg.rho);
    j["rho_prime"] = to_string(cfg.rho_prime);
    return j;
}

Json point_json(const ParamPoint& pt) { return {{"lambda", to_string(pt.lambda)}, {"nu", to_string(pt.nu)}}; }

namespace {

Json window_json(const Window& w) {
    return {{"lambda", {to_string(w.lambda_min), to_string(w.lambda_max)}},
            {"nu", {to_string(w.nu_min), to_string(w.nu_max)}},
            {"step", to_string(w.step)}};
}

// Rationals may be written as strings or integers in config files.
template <class Node>
Rational rational_node(const Node& node, const std::string& what) {
    if (auto s = node.template value<std::string>()) return parse_exact(*s);
    if (auto i = node.template value<int64_t>()) return Rational(static_cast<long>(*i));
    throw UsageError(what + " must be a rational string like \"-3/2\" or an integer");
}

Rational json_rational(const Json& j, const std::string& what) {
    if (j.is_string()) return parse_exact(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw UsageError(what + " must be a rational string like \"-3/2\" or an integer");
}

void validate_window(const Window& w) {
    if (w.step <= 0) throw UsageError("window step must be positive");
    if (w.cell_count() > kMaxWindowCells)
        throw UsageError("window has " + std::to_string(w.cell_count()) + " cells; the limit is " +
                         std::to_string(kMaxWindowCells));
}

}  // namespace

long Window::cell_count() const {
    if (step <= 0 || lambda_min > lambda_max || nu_min > nu_max) return 0;
    auto span = [&](const Rational& lo, const Rational& hi) {
        const Rational r = (hi - lo) / step;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        return fl.get_si() + 1;
    };
    return span(lambda_min, lambda_max) * span(nu_min, nu_max);
}

std::vector<ParamPoint> Window::points() const {
    std::vector<ParamPoint> out;
    if (cell_count() == 0) return out;
    for (Rational nu = nu_min; nu <= nu_max; nu += step)
        for (Rational lambda = lambda_min; lambda <= lambda_max; lambda += step) out.push_back({lambda, nu});
    return out;
}

ConfigFile parse_config_toml(const std::string& text) {
    toml::table t;
    try {
        t = toml::parse(text);
    } catch (const toml::parse_error& e) {
        throw UsageError(std::string("config is not valid TOML: ") + std::string(e.description()));
    }
    const auto algebra = t["algebra"].value<std::string>();
    const auto n = t["n"].value<int64_t>();
    const auto m = t["m"].value<int64_t>();
    if (!algebra || !n || !m) throw UsageError("config needs algebra, n and m");
    std::string u;
    if (const auto* arr = t["u"].as_array()) {
        for (std::size_t i = 0; i < arr->size(); ++i) {
            if (i) u += ",";
            u += to_string(rational_node((*arr)[i], "u"));
        }
    }
    ConfigFile out;
    out.config = config_from_fields(*algebra, static_cast<int>(*n), static_cast<int>(*m),
                                    t["f"].value_or(std::string("trivial")), u);
    if (const auto* pt = t["point"].as_table()) {
        const auto& p = *pt;
        if (!p.contains("lambda") || !p.contains("nu")) throw UsageError("[point] needs lambda and nu");
        out.point = ParamPoint{rational_node(*p.get("lambda"), "point.lambda"), rational_node(*p.get("nu"), "point.nu")};
    }
    if (const auto* win = t["window"].as_table()) {
        Window w;
        auto range = [&](const char* key, Rational& lo, Rational& hi) {
            const auto* arr = (*win)[key].as_array();
            if (!arr) return;
            if (arr->size() != 2) throw UsageError(std::string("window.") + key + " needs two entries");
            lo = rational_node((*arr)[0], key);
            hi = rational_node((*arr)[1], key);
        };
        range("lambda", w.lambda_min, w.lambda_max);
        range("nu", w.nu_min, w.nu_max);
        if (const auto* step = win->get("step")) w.step = rational_node(*step, "window.step");
        validate_window(w);
        out.window = w;
    }
    if (const auto* in = t["integrals"].as_table()) {
        out.integrals.tol = (*in)["tol"].value_or(out.integrals.tol);
        out.integrals.seed = static_cast<std::uint64_t>((*in)["seed"].value_or(static_cast<int64_t>(out.integrals.seed)));
        out.integrals.threads = static_cast<int>((*in)["threads"].value_or(static_cast<int64_t>(out.integrals.threads)));
    }
    return out;
}

ConfigFile parse_config_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.contains("algebra") || !j.contains("n") || !j.contains("m")) throw UsageError("config needs algebra, n and m");
    std::string u;
    if (j.contains("u"))
        for (std::size_t i = 0; i < j["u"].size(); ++i) {
            if (i) u += ",";
            u += to_string(json_rational(j["u"][i], "u"));
        }
    ConfigFile out;
    out.config = config_from_fields(j["algebra"].get<std::string>(), j["n"].get<int>(), j["m"].get<int>(),
                                    j.value("f", std::string("trivial")), u);
    if (j.contains("point"))
        out.point = ParamPoint{json_rational(j["point"].at("lambda"), "point.lambda"), json_rational(j["point"].at("nu"), "point.nu")};
    if (j.contains("window")) {
        Window w;
        const auto& win = j["window"];
        if (win.contains("lambda")) {
            w.lambda_min = json_rational(win["lambda"].at(0), "window.lambda");
            w.lambda_max = json_rational(win["lambda"].at(1), "window.lambda");
        }
        if (win.contains("nu")) {
            w.nu_min = json_rational(win["nu"].at(0), "window.nu");
            w.nu_max = json_rational(win["nu"].at(1), "window.nu");
        }
        if (win.contains("step")) w.step = json_rational(win["step"], "window.step");
        validate_window(w);
        out.window = w;
    }
    if (j.contains("integrals")) {
        const auto& in = j["integrals"];
        out.integrals.tol = in.value("tol", out.integrals.tol);
        out.integrals.seed = in.value("seed", out.integrals.seed);
        out.integrals.threads = in.value("threads", out.integrals.threads);
    }
    return out;
}

ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    return json ? parse_config_json(ss.str()) : parse_config_toml(ss.str());
}

// ---- classify / multiplicity / kernel ------------------------------------------

namespace {

Json flags_json(const LatticeFlags& fl) {
    Json j;
    j["slash"] = fl.in_slash;
    j["backslash"] = fl.in_backslash;
    j["X"] = fl.in_X;
    j["L"] = fl.in_L;
    j["S1"] = fl.in_S1;
    j["S2"] = fl.in_S2;
    j["S3"] = fl.in_S3;
    j["k"] = fl.k ? Json(*fl.k) : Json(nullptr);
    j["l"] = fl.l ? Json(*fl.l) : Json(nullptr);
    return j;
}

std::string exact_text(const Rational& r, int pi_half) {
    std::string s = to_string(r);
    if (pi_half != 0 && r != 0) s += " * pi^(" + std::to_string(pi_half) + "/2)";
    return s;
}

Json constant_json(const GammaExpr& e, const ParamPoint& pt, Direction dir) {
    const auto v = value_at(e, pt, dir);
    Json j;
    j["expr"] = to_string(e);
    j["order"] = v.order;
    j["exact"] = v.exact ? Json(exact_text(*v.exact, v.exact_pi_half)) : Json(nullptr);
    j["numeric"] = v.has_leading ? Json(v.numeric) : Json(nullptr);
    return j;
}

Json header(const std::string& command, const PairConfig& cfg) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["config"] = config_json(cfg);
    return j;
}

}  // namespace

Json run_classify(const PairConfig& cfg, const ParamPoint& pt) {
    const auto fl = lattice_flags(cfg, pt);
    const auto d = classify_sbo_space(cfg, pt);
    Json j = header("classify", cfg);
    j["point"] = point_json(pt);
    j["flags"] = flags_json(fl);
    j["multiplicity"] = multiplicity(cfg, pt);
    j["dimension"] = d.dimension;
    // families in first-seen order, each with its support and how many basis
    // elements it contributes
    Json families = Json::array(), supports = Json::array(), counts = Json::object();
    for (std::size_t i = 0; i < d.families.size(); ++i) {
        const auto& f = d.families[i];
        if (!counts.contains(f)) {
            families.push_back(f);
            supports.push_back(support_name(d.supports[i]));
            counts[f] = 0;
        }
        counts[f] = counts[f].get<int>() + 1;
    }
    j["families"] = families;
    j["supports"] = supports;
    j["family_counts"] = counts;
    Json constants;
    constants["uA_normalization"] = constant_json(uA_normalization(cfg), pt, {});
    if (fl.in_slash) constants["residue_constant_AC"] = constant_json(residue_constant_AC(cfg, pt), pt, {1, 1});
    if (fl.in_backslash) {
        constants["residue_constant_AB"] = constant_json(residue_constant_AB(cfg, pt), pt, {1, -1});
        constants["cB"] = constant_json(cB(cfg, pt), pt, {1, -1});
    }
    j["constants"] = constants;
    return j;
}

Json run_multiplicity(const PairConfig& cfg, const ParamPoint& pt) {
    Json j = header("multiplicity", cfg);
    j["point"] = point_json(pt);
    j["flags"] = flags_json(lattice_flags(cfg, pt));
    j["multiplicity"] = multiplicity(cfg, pt);
    j["exceptional_pair"] = exceptional_pair(cfg) != ExceptionalPair::None;
    return j;
}

Json run_kernel(const PairConfig& cfg, const ParamPoint& pt) {
    const auto fl = lattice_flags(cfg, pt);
    Json j = header("kernel", cfg);
    j["point"] = point_json(pt);
    const auto smooth = smooth_kernel(cfg, pt);
    j["smooth"] = {{"norm_exponent", to_string(smooth.norm_exponent)},
                   {"xpp_exponent", to_string(smooth.xpp_exponent)},
                   {"normalization", to_string(smooth.normalization)},
                   {"normalization_value", smooth.normalization_value}};
    if (fl.in_slash) {
        Json terms = Json::array();
        for (const auto& t : uC_kernel(cfg, pt).terms)
            terms.push_back({{"h", t.h}, {"i", t.i}, {"j", t.j}, {"coeff", to_string(t.coeff)}});
        j["delta"] = {{"k", *fl.k}, {"terms", terms}};
        if (vhatC_applies(cfg, pt)) {
            Json vterms = Json::array();
            const auto table = vhatC_table(cfg, pt);
            for (const auto& [key, c] : table.entries())
                vterms.push_back({{"h", key[0]}, {"i", key[1]}, {"z_power", key[2]}, {"coeff_over_sqrt_pi", to_string(c)}});
            j["vC"] = vterms;
        }
    }
    if (fl.in_backslash) {
        const auto ker = uB_expansion(cfg, pt);
        Json terms = Json::array();
        for (const auto& t : ker.terms)
            terms.push_back({{"k", t.k},
                             {"i", t.i},
                             {"j", t.j},
                             {"coeff", to_string(t.coeff)},
                             {"norm_exponent", to_string(t.norm_exponent)},
                             {"norm_pole", t.norm_pole},
                             {"net_order", t.net_order}});
        j["singular"] = {{"l", ker.l},
                         {"cB", to_string(ker.cB)},
                         {"cB_order", ker.cB_value.order},
                         {"support", support_name(support_from_expansion(ker))},
                         {"terms", terms}};
    }
    return j;
}

// ---- verify --------------------------------------------------------------------

VerifyResult run_verify(const PairConfig& cfg, const Window& window, std::optional<Perturbation> perturb) {
    validate_window(window);
    struct Tally {
        int checked = 0, failed = 0;
    } system, recurrences, dimensions;
    Json failures = Json::array();
    constexpr std::size_t kMaxReported = 20;
    auto record = [&](Json f) {
        if (failures.size() < kMaxReported) failures.push_back(std::move(f));
    };

    for (const auto& pt : window.points()) {
        const auto fl = lattice_flags(cfg, pt);
        ++dimensions.checked;
        const int dim = classify_sbo_space(cfg, pt).dimension, mult = multiplicity(cfg, pt);
        if (dim != mult) {
            ++dimensions.failed;
            record({{"check", "dimension"}, {"point", point_json(pt)}, {"dimension", dim}, {"multiplicity", mult}});
        }
        if (!fl.in_slash) continue;

        auto table = coeff_table(cfg, pt);
        if (perturb) {
            const Rational c = table.at(perturb->h, perturb->i, perturb->j);
            if (c != 0) table.set(perturb->h, perturb->i, perturb->j, c + Rational(1, 1000));
        }
        std::vector<CoeffTable> tables{table};
        if (cfg.algebra == Algebra::C) tables.push_back(complex_form(table));
        for (const auto& t : tables) {
            const auto rep = check_recurrences(t, cfg, pt);
            recurrences.checked += rep.checked;
            recurrences.failed += static_cast<int>(rep.failures.size());
            for (const auto& f : rep.failures)
                record({{"check", "recurrence"}, {"name", f.name}, {"point", point_json(pt)}, {"h", f.h}, {"i", f.i},
                        {"j", f.j}, {"lhs", to_string(f.lhs)}, {"rhs", to_string(f.rhs)}});
        }

        std::vector<std::pair<std::string, Poly>> polys{{"C", table_poly(cfg, table)}};
        if (vhatC_applies(cfg, pt)) polys.emplace_back("vC", vhatC(cfg, pt));
        const auto sporadic = sporadic_space(cfg, pt);
        for (std::size_t i = 0; i < sporadic.basis.size(); ++i) polys.emplace_back(sporadic.tags[i], sporadic.basis[i]);
        for (const auto& [tag, f] : polys) {
            ++system.checked;
            const auto rep = verify_system(f, cfg, pt);
            if (!rep.ok()) {
                ++system.failed;
                record({{"check", "system"}, {"family", tag}, {"point", point_json(pt)}, {"equation", rep.first_failure()}});
            }
        }
    }
    VerifyResult out;
    out.pass = system.failed == 0 && recurrences.failed == 0 && dimensions.failed == 0;
    Json j = header("verify", cfg);
    j["window"] = window_json(window);
    if (perturb) j["perturbation"] = {{"h", perturb->h}, {"i", perturb->i}, {"j", perturb->j}, {"delta", "1/1000"}};
    auto tally = [](const Tally& t) { return Json{{"checked", t.checked}, {"failed", t.failed}}; };
    j["checks"] = {{"system", tally(system)}, {"recurrences", tally(recurrences)}, {"dimensions", tally(dimensions)}};
    j["pass"] = out.pass;
    j["failures"] = failures;
    out.report = std::move(j);
    return out;
}

// ---- integrals -----------------------------------------------------------------

IntegralCheck parse_integral_check(const std::string& name) {
    static const std::map<std::string, IntegralCheck> names{
        {"moments", IntegralCheck::Moments},       {"polar", IntegralCheck::Polar},
        {"spherical-vector", IntegralCheck::SphericalVector}, {"ks", IntegralCheck::KnappStein},
        {"functional", IntegralCheck::Functional}, {"residue", IntegralCheck::Residue}};
    const auto it = names.find(name);
    if (it == names.end()) throw UsageError("unknown check \"" + name + "\"");
    return it->second;
}

namespace {

void enumerate_alpha(int p, int left, std::vector<int>& alpha, int pos, const std::function<void()>& visit) {
    if (pos == p - 1) {
        alpha[static_cast<std::size_t>(pos)] = left;
        visit();
        return;
    }
    for (int c = 0; c <= left; ++c) {
        alpha[static_cast<std::size_t>(pos)] = c;
        enumerate_alpha(p, left - c, alpha, pos + 1, visit);
    }
}

double sphere_volume(int dim) {  // of S^{dim-1}
    return 2 * std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0);
}

IntegralResult finish(const std::string& check, double expected, double got, double tol, Json extra = Json::object()) {
    IntegralResult r;
    const double err = std::abs(got - expected) / std::abs(expected);
    r.pass = err <= tol;
    Json j;
    j["schema"] = kSchema;
    j["check"] = check;
    j["expected"] = expected;
    j["got"] = got;
    j["rel_err"] = err;
    j["tol"] = tol;
    j["pass"] = r.pass;
    for (auto& [k, v] : extra.items()) j[k] = v;
    r.report = std::move(j);
    return r;
}

}  // namespace

namespace {

IntegralResult integrals_with(IntegralCheck check, const PairConfig& cfg, const std::optional<ParamPoint>& pt,
                              const IntegralSettings& settings, const QuadratureSpec& spec) {
    {
        switch (check) {
            case IntegralCheck::Moments: {
                double worst = -1, exp_w = 0, got_w = 0;
                int cases = 0;
                for (int p = 1; p <= 8; ++p)
                    for (int deg = 0; deg <= 3; ++deg) {
                        std::vector<int> alpha(static_cast<std::size_t>(p), 0);
                        enumerate_alpha(p, deg, alpha, 0, [&] {
                            const double e = sphere_moment(p, alpha).value();
                            const double g = sphere_moment_numeric(p, alpha, 5);
                            ++cases;
                            const double err = std::abs(g - e) / e;
                            if (err > worst) {
                                worst = err;
                                exp_w = e;
                                got_w = g;
                            }
                        });
                    }
                // one Monte Carlo estimate so seed and threads have something to drive
                const double mc = sphere_moment_monte_carlo(4, {1, 1, 0, 0}, 100000, settings.seed, settings.threads);
                return finish("moments", exp_w, got_w, settings.tol,
                              {{"cases", cases}, {"monte_carlo", {{"p", 4}, {"alpha", {1, 1, 0, 0}}, {"estimate", mc},
                                                                  {"exact", sphere_moment(4, {1, 1, 0, 0}).value()}}}});
            }
            case IntegralCheck::Polar: {
                const double expected = 0.5 * std::beta(cfg.p / 4.0, cfg.q / 2.0) * sphere_volume(cfg.p) * sphere_volume(cfg.q);
                QuadratureSpec coarse = spec;  // the integrand is constant
                coarse.nodes = 2;
                coarse.x_nodes = 8;
                const Integrand one = [](std::span<const double>) { return 1.0; };
                const double got = htype_surface_integral(cfg.p, cfg.q, one, coarse);
                const double mc = htype_surface_monte_carlo(cfg.p, cfg.q, one, 100000, settings.seed, settings.threads);
                return finish("polar", expected, got, settings.tol, {{"monte_carlo", mc}});
            }
            case IntegralCheck::SphericalVector: {
                const ParamPoint at = pt.value_or(ParamPoint{Rational(2), Rational(0)});
                const auto c = spherical_vector_integral_check(cfg, at, spec);
                return finish("spherical-vector", c.closed_form, c.numeric, settings.tol, {{"point", point_json(at)}});
            }
            case IntegralCheck::KnappStein: {
                if (cfg.m == 0) {
                    const ParamPoint at = pt.value_or(ParamPoint{Rational(0), Rational(2)});
                    const auto c = ks_m0_check(cfg, at.nu);
                    return finish("ks", c.closed_form, c.numeric, settings.tol, {{"nu", to_string(at.nu)}});
                }
                const ParamPoint at = pt.value_or(ParamPoint{Rational(1, 2), Rational(0)});
                const auto c = knapp_stein_check(cfg, at.lambda, spec);
                return finish("ks", c.closed_form, c.numeric, settings.tol, {{"lambda", to_string(at.lambda)}});
            }
            case IntegralCheck::Functional: {
                const ParamPoint at = pt.value_or(ParamPoint{Rational(-1, 5), Rational(1, 5)});
                const auto rep = functional_equation_check(cfg, at, spec);
                if (!rep.first_applicable && !rep.second_applicable)
                    throw UsageError("no functional equation converges at this point: " + rep.note);
                Json constants = Json::array();
                const ClosedFormCheck* worst = nullptr;
                auto add = [&](const char* name, bool applicable, const ClosedFormCheck& c) {
                    if (!applicable) return;
                    constants.push_back({{"name", name}, {"expected", c.closed_form}, {"got", c.numeric}, {"rel_err", c.rel_err()}});
                    if (!worst || c.rel_err() > worst->rel_err()) worst = &c;
                };
                add("A o T", rep.first_applicable, rep.first);
                add("T' o A", rep.second_applicable, rep.second);
                return finish("functional", worst->closed_form, worst->numeric, settings.tol,
                              {{"point", point_json(at)}, {"constants", constants}, {"note", rep.note}});
            }
            case IntegralCheck::Residue: {
                // default: the k = 0 point of // with nu = rho'
                const ParamPoint at = pt.value_or(ParamPoint{cfg.rho_prime - cfg.rho + cfg.rho_prime, cfg.rho_prime});
                const auto fl = lattice_flags(cfg, at);
                if (!fl.in_slash || *fl.k != 0) throw UsageError("residue check needs a k = 0 point of //");
                const auto phi = TestFunction::gaussian(std::vector<double>(static_cast<std::size_t>(cfg.n_vars()), 1.0));
                const auto r = residue_extrapolation(cfg, at, phi, {0.1, 0.05, 0.025}, spec);
                Json samples = Json::array();
                for (std::size_t i = 0; i < r.eps.size(); ++i) samples.push_back({{"eps", r.eps[i]}, {"pairing", r.samples[i]}});
                return finish("residue", r.expected, r.extrapolated, settings.tol, {{"point", point_json(at)}, {"samples", samples}});
            }
        }
    }
    throw UsageError("unknown check");
}

}  // namespace

IntegralResult run_integrals(IntegralCheck check, const PairConfig& cfg, const std::optional<ParamPoint>& pt,
                             const IntegralSettings& settings) {
    // Large configurations overflow the product rules at the default node
    // count; step the angular nodes down until the rule fits. The integrands
    // used here see the sphere variables mostly through norms, so low counts
    // stay accurate, and the tolerance check still has the final word.
    QuadratureSpec spec;
    spec.threads = settings.threads;
    // The residue pairing evaluates the rule many times over; its default
    // Gaussian test function only sees norms, so it starts low.
    const std::vector<int> ladder =
        check == IntegralCheck::Residue ? std::vector<int>{4, 3, 2} : std::vector<int>{12, 8, 6, 4, 3, 2};
    for (int nodes : ladder) {
        spec.nodes = nodes;
        try {
            auto r = integrals_with(check, cfg, pt, settings, spec);
            r.report["angular_nodes"] = nodes;
            return r;
        } catch (const std::length_error&) {
            continue;
        } catch (const std::domain_error& e) {
            throw UsageError(std::string("integral not available here: ") + e.what());
        }
    }
    throw UsageError("integral too large for product rules even at 2 angular nodes");
}

// ---- atlas ---------------------------------------------------------------------

namespace {

std::string color_class(const AtlasCell& c) {
    if (c.in_L) return "L";
    if (c.in_S2) return "S2";
    if (c.in_S3) return "S3";
    if (c.in_S1) return "S1";
    if (c.in_X) return "X";
    if (c.slash) return "slash";
    if (c.backslash) return "backslash";
    return "generic";
}

const std::map<std::string, std::string>& palette() {
    static const std::map<std::string, std::string> colors{
        {"generic", "#f2f2f2"}, {"slash", "#9ecae1"}, {"backslash", "#fdae6b"}, {"X", "#a1d99b"},
        {"L", "#de2d26"},       {"S1", "#756bb1"},    {"S2", "#e377c2"},        {"S3", "#8c564b"}};
    return colors;
}

const std::vector<std::string>& legend_order() {
    static const std::vector<std::string> order{"generic", "slash", "backslash", "X", "L", "S1", "S2", "S3"};
    return order;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += parts[i];
    }
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

constexpr const char* kCsvHeader = "lambda,nu,slash,backslash,X,L,S1,S2,S3,multiplicity,families,color_class";

}  // namespace

std::vector<AtlasCell> atlas_cells(const PairConfig& cfg, const Window& window) {
    validate_window(window);
    std::vector<AtlasCell> cells;
    for (const auto& pt : window.points()) {
        const auto fl = lattice_flags(cfg, pt);
        AtlasCell c;
        c.point = pt;
        c.slash = fl.in_slash;
        c.backslash = fl.in_backslash;
        c.in_X = fl.in_X;
        c.in_L = fl.in_L;
        c.in_S1 = fl.in_S1;
        c.in_S2 = fl.in_S2;
        c.in_S3 = fl.in_S3;
        c.multiplicity = multiplicity(cfg, pt);
        const auto d = classify_sbo_space(cfg, pt);
        std::set<std::string> seen;
        for (const auto& f : d.families)
            if (seen.insert(f).second) c.families.push_back(f);
        c.color_class = color_class(c);
        cells.push_back(std::move(c));
    }
    return cells;
}

std::string atlas_csv(const std::vector<AtlasCell>& cells) {
    std::string out = std::string(kCsvHeader) + "\n";
    auto b = [](bool v) { return v ? "1" : "0"; };
    for (const auto& c : cells) {
        out += to_string(c.point.lambda) + "," + to_string(c.point.nu) + "," + b(c.slash) + "," + b(c.backslash) + "," +
               b(c.in_X) + "," + b(c.in_L) + "," + b(c.in_S1) + "," + b(c.in_S2) + "," + b(c.in_S3) + "," +
               std::to_string(c.multiplicity) + "," + join(c.families, ';') + "," + c.color_class + "\n";
    }
    return out;
}

std::vector<AtlasCell> parse_atlas_csv(const std::string& csv) {
    std::stringstream ss(csv);
    std::string line;
    if (!std::getline(ss, line) || line != kCsvHeader) throw UsageError("not an atlas CSV");
    std::vector<AtlasCell> cells;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 12) throw UsageError("atlas CSV row has " + std::to_string(f.size()) + " fields");
        AtlasCell c;
        c.point = {parse_exact(f[0]), parse_exact(f[1])};
        c.slash = f[2] == "1";
        c.backslash = f[3] == "1";
        c.in_X = f[4] == "1";
        c.in_L = f[5] == "1";
        c.in_S1 = f[6] == "1";
        c.in_S2 = f[7] == "1";
        c.in_S3 = f[8] == "1";
        c.multiplicity = std::stoi(f[9]);
        c.families = split(f[10], ';');
        c.color_class = f[11];
        cells.push_back(std::move(c));
    }
    return cells;
}

std::string atlas_svg(const PairConfig& cfg, const Window& window, const std::vector<AtlasCell>& cells) {
    constexpr int cell = 14, margin = 40, legend_width = 190;
    auto index = [&](const Rational& v, const Rational& lo) {
        const Rational r = (v - lo) / window.step;
        return static_cast<int>(r.get_num().get_si() / r.get_den().get_si());
    };
    const long ncols = cells.empty() ? 0 : index(window.lambda_max, window.lambda_min) + 1;
    const long nrows = cells.empty() ? 0 : index(window.nu_max, window.nu_min) + 1;
    const long width = 2 * margin + ncols * cell + legend_width;
    const long height = std::max<long>(2 * margin + nrows * cell, 2 * margin + 24 * static_cast<long>(legend_order().size()));

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
      << width << " " << height << "\" font-family=\"monospace\" font-size=\"9\">\n";
    o << "<text x=\"" << margin << "\" y=\"20\" font-size=\"12\">" << xml_escape(cfg.label())
      << " multiplicities, lambda across, nu up</text>\n";
    std::map<std::string, std::set<int>> mults;
    for (const auto& c : cells) {
        const long x = margin + index(c.point.lambda, window.lambda_min) * cell;
        const long y = margin + (nrows - 1 - index(c.point.nu, window.nu_min)) * cell;
        mults[c.color_class].insert(c.multiplicity);
        Json payload = point_json(c.point);
        payload["multiplicity"] = c.multiplicity;
        payload["families"] = c.families;
        payload["class"] = c.color_class;
        o << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
          << palette().at(c.color_class) << "\" stroke=\"#ffffff\" stroke-width=\"0.5\"><title>" << xml_escape(payload.dump())
          << "</title></rect>\n";
        if (c.multiplicity > 1)
            o << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell - 4 << "\" text-anchor=\"middle\">" << c.multiplicity
              << "</text>\n";
    }
    // axes: the origin lines when they fall inside the window
    if (!cells.empty()) {
        if (window.lambda_min <= 0 && 0 <= window.lambda_max) {
            const long x = margin + index(Rational(0), window.lambda_min) * cell + cell / 2;
            o << "<line x1=\"" << x << "\" y1=\"" << margin << "\" x2=\"" << x << "\" y2=\"" << margin + nrows * cell
              << "\" stroke=\"#555555\" stroke-width=\"0.5\"/>\n";
        }
        if (window.nu_min <= 0 && 0 <= window.nu_max) {
            const long y = margin + (nrows - 1 - index(Rational(0), window.nu_min)) * cell + cell / 2;
            o << "<line x1=\"" << margin << "\" y1=\"" << y << "\" x2=\"" << margin + ncols * cell << "\" y2=\"" << y
              << "\" stroke=\"#555555\" stroke-width=\"0.5\"/>\n";
        }
        o << "<text x=\"" << margin << "\" y=\"" << margin + nrows * cell + 14 << "\">lambda " << to_string(window.lambda_min)
          << " .. " << to_string(window.lambda_max) << ", nu " << to_string(window.nu_min) << " .. "
          << to_string(window.nu_max) << ", step " << to_string(window.step) << "</text>\n";
    }
    const long lx = margin + ncols * cell + 20;
    long ly = margin;
    for (const auto& name : legend_order()) {
        const auto it = mults.find(name);
        if (it == mults.end()) continue;
        std::vector<std::string> ms;
        for (int m : it->second) ms.push_back(std::to_string(m));
        o << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
          << palette().at(name) << "\"/>\n";
        o << "<text x=\"" << lx + cell + 6 << "\" y=\"" << ly + cell - 3 << "\">" << name << ": mult " << join(ms, '/')
          << "</text>\n";
        ly += 24;
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace sbo::cli
