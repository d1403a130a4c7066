// sbo: classification, kernels, verification suites and atlases from the
// command line. Exit codes: 0 pass, 1 verification failure, 2 usage error.

#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace sbo;
using namespace sbo::cli;

// Config either from --config or from --algebra/--n/--m/--f/--u; point and
// window flags override the file.
struct Options {
    std::string config_path;
    std::string algebra, f = "trivial", u;
    int n = 0, m = 0;
    std::string lambda, nu;
    std::string lambda_min, lambda_max, nu_min, nu_max, step;
    std::string out;
};

void add_config_options(CLI::App* sub, Options& o) {
    sub->add_option("-c,--config", o.config_path, "TOML config (or .json)");
    sub->add_option("--algebra", o.algebra, "C, H or O (R is rejected)");
    sub->add_option("--n", o.n, "n");
    sub->add_option("--m", o.m, "m");
    sub->add_option("--f", o.f, "full, trivial, u1 or transitive");
    sub->add_option("--u", o.u, "U direction for u1, comma separated rationals");
    sub->add_option("-o,--out", o.out, "write the main output here instead of stdout");
}

void add_point_options(CLI::App* sub, Options& o) {
    sub->add_option("--lambda", o.lambda, "lambda as p/q");
    sub->add_option("--nu", o.nu, "nu as p/q");
}

void add_window_options(CLI::App* sub, Options& o) {
    sub->add_option("--lambda-min", o.lambda_min);
    sub->add_option("--lambda-max", o.lambda_max);
    sub->add_option("--nu-min", o.nu_min);
    sub->add_option("--nu-max", o.nu_max);
    sub->add_option("--step", o.step);
}

ConfigFile resolve(const Options& o) {
    ConfigFile file;
    if (!o.config_path.empty()) {
        file = load_config(o.config_path);
    } else {
        if (o.algebra.empty()) throw UsageError("give --config or --algebra/--n/--m");
        file.config = config_from_fields(o.algebra, o.n, o.m, o.f, o.u);
    }
    if (!o.lambda.empty() || !o.nu.empty()) {
        if (o.lambda.empty() || o.nu.empty()) throw UsageError("--lambda and --nu go together");
        file.point = ParamPoint{parse_exact(o.lambda), parse_exact(o.nu)};
    }
    return file;
}

ParamPoint require_point(const ConfigFile& file) {
    if (!file.point) throw UsageError("a point is needed: --lambda/--nu or [point] in the config");
    return *file.point;
}

Window resolve_window(const Options& o, const ConfigFile& file) {
    Window w = file.window.value_or(Window{});
    if (!o.lambda_min.empty()) w.lambda_min = parse_exact(o.lambda_min);
    if (!o.lambda_max.empty()) w.lambda_max = parse_exact(o.lambda_max);
    if (!o.nu_min.empty()) w.nu_min = parse_exact(o.nu_min);
    if (!o.nu_max.empty()) w.nu_max = parse_exact(o.nu_max);
    if (!o.step.empty()) w.step = parse_exact(o.step);
    return w;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

void emit(const Options& o, const Json& j) { write_text(o.out, j.dump(2) + "\n"); }

Perturbation parse_perturbation(const std::string& text) {
    Perturbation p;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> p.h >> c1 >> p.i >> c2 >> p.j) || c1 != ',' || c2 != ',' || !in.eof())
        throw UsageError("--perturb takes h,i,j");
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetry breaking operator classification and verification"};
    app.require_subcommand(1);
    Options o;

    auto* classify = app.add_subcommand("classify", "flags, multiplicity, families and constants at a point");
    add_config_options(classify, o);
    add_point_options(classify, o);

    auto* mult = app.add_subcommand("multiplicity", "dimension of the SBO space at a point");
    add_config_options(mult, o);
    add_point_options(mult, o);

    auto* kernel = app.add_subcommand("kernel", "kernel data: smooth exponents, delta table, singular expansion");
    add_config_options(kernel, o);
    add_point_options(kernel, o);

    std::string perturb;
    auto* verify = app.add_subcommand("verify", "exact system, recurrence and dimension checks over a window");
    add_config_options(verify, o);
    add_window_options(verify, o);
    verify->add_option("--perturb", perturb, "test mode: add 1/1000 to coefficient h,i,j");

    std::string check;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    auto* integrals = app.add_subcommand("integrals", "numerical checks against closed forms");
    add_config_options(integrals, o);
    add_point_options(integrals, o);
    integrals->add_option("--check", check, "moments, polar, spherical-vector, ks, functional or residue")->required();
    integrals->add_option("--tol", tol, "relative tolerance");
    integrals->add_option("--seed", seed, "Monte Carlo seed");
    integrals->add_option("--threads", threads, "Monte Carlo threads")->check(CLI::PositiveNumber);

    std::string csv_path, svg_path;
    auto* atlas = app.add_subcommand("atlas", "CSV and SVG of the parameter plane");
    add_config_options(atlas, o);
    add_window_options(atlas, o);
    atlas->add_option("--csv", csv_path, "CSV output");
    atlas->add_option("--svg", svg_path, "SVG output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        const ConfigFile file = resolve(o);
        const PairConfig& cfg = file.config;
        if (classify->parsed()) {
            emit(o, run_classify(cfg, require_point(file)));
        } else if (mult->parsed()) {
            emit(o, run_multiplicity(cfg, require_point(file)));
        } else if (kernel->parsed()) {
            emit(o, run_kernel(cfg, require_point(file)));
        } else if (verify->parsed()) {
            std::optional<Perturbation> p;
            if (!perturb.empty()) p = parse_perturbation(perturb);
            const auto result = run_verify(cfg, resolve_window(o, file), p);
            emit(o, result.report);
            return result.pass ? kExitPass : kExitFail;
        } else if (integrals->parsed()) {
            IntegralSettings settings = file.integrals;
            if (tol) settings.tol = *tol;
            if (seed) settings.seed = *seed;
            if (threads) settings.threads = *threads;
            const auto result = run_integrals(parse_integral_check(check), cfg, file.point, settings);
            emit(o, result.report);
            return result.pass ? kExitPass : kExitFail;
        } else if (atlas->parsed()) {
            const Window w = resolve_window(o, file);
            const auto cells = atlas_cells(cfg, w);
            if (csv_path.empty() && svg_path.empty()) {
                write_text(o.out, atlas_csv(cells));
            } else {
                if (!csv_path.empty()) write_text(csv_path, atlas_csv(cells));
                if (!svg_path.empty()) write_text(svg_path, atlas_svg(cfg, w, cells));
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitPass;
}
