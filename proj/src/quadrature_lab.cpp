#include "sbo/quadrature_lab.hpp"

#include "sbo/fourier_verifier.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

#include <atomic>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace sbo {

namespace {

constexpr double kPi = std::numbers::pi;

// ---- GSL plumbing ---------------------------------------------------------

struct GslQuiet {
    GslQuiet() { gsl_set_error_handler_off(); }
};
const GslQuiet gsl_quiet;

using Fn = std::function<double(double)>;

double trampoline(double x, void* p) { return (*static_cast<const Fn*>(p))(x); }

struct Workspace {
    gsl_integration_workspace* w;
    Workspace() : w(gsl_integration_workspace_alloc(2000)) {}
    ~Workspace() { gsl_integration_workspace_free(w); }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
};

void check_status(int status) {
    // Roundoff and subdivision-limit warnings still come with a usable
    // estimate; divergence and bad input do not.
    if (status == GSL_EDIVERGE) throw std::domain_error("integral diverges");
    if (status == GSL_EINVAL || status == GSL_EBADTOL) throw std::invalid_argument("bad integration request");
}

double integrate(const Fn& f, double a, double b, double rel_tol) {
    Workspace ws;
    gsl_function g{&trampoline, const_cast<Fn*>(&f)};
    double result = 0, err = 0;
    check_status(gsl_integration_qags(&g, a, b, 0.0, rel_tol, 2000, ws.w, &result, &err));
    return result;
}

double integrate_to_inf(const Fn& f, double a, double rel_tol) {
    Workspace ws;
    gsl_function g{&trampoline, const_cast<Fn*>(&f)};
    double result = 0, err = 0;
    check_status(gsl_integration_qagiu(&g, a, 0.0, rel_tol, 2000, ws.w, &result, &err));
    return result;
}

double integrate_line(const Fn& f, double rel_tol) {
    Workspace ws;
    gsl_function g{&trampoline, const_cast<Fn*>(&f)};
    double result = 0, err = 0;
    check_status(gsl_integration_qagi(&g, 0.0, rel_tol, 2000, ws.w, &result, &err));
    return result;
}

// Gauss-Jacobi on [a, b] with weight (b-x)^alpha (x-a)^beta.
std::pair<std::vector<double>, std::vector<double>> jacobi(int n, double a, double b, double alpha, double beta) {
    std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> w(
        gsl_integration_fixed_alloc(gsl_integration_fixed_jacobi, static_cast<std::size_t>(n), a, b, alpha, beta),
        &gsl_integration_fixed_free);
    if (!w) throw std::invalid_argument("Gauss-Jacobi rule unavailable for these exponents");
    const double* x = gsl_integration_fixed_nodes(w.get());
    const double* wt = gsl_integration_fixed_weights(w.get());
    return {std::vector<double>(x, x + n), std::vector<double>(wt, wt + n)};
}

double sphere_volume(int dim) { return 2 * std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0); }

// Chunked Monte Carlo: chunk c uses seed + c, the chunks are summed in order.
template <class Sampler>
double monte_carlo_mean(long samples, std::uint64_t seed, int threads, Sampler sampler) {
    constexpr int kChunks = 64;
    if (samples <= 0) throw std::invalid_argument("need a positive sample count");
    std::vector<double> sums(kChunks, 0.0);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int c = next++; c < kChunks; c = next++) {
            std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(c + 1));
            const long count = samples / kChunks + (c < samples % kChunks ? 1 : 0);
            double s = 0;
            for (long i = 0; i < count; ++i) s += sampler(rng);
            sums[c] = s;
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::max(1, threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    double total = 0;
    for (double s : sums) total += s;
    return total / static_cast<double>(samples);
}

void unit_vector(std::mt19937_64& rng, std::vector<double>& v) {
    std::normal_distribution<double> g(0.0, 1.0);
    double n2 = 0;
    do {
        n2 = 0;
        for (auto& x : v) {
            x = g(rng);
            n2 += x * x;
        }
    } while (n2 == 0);
    const double n = std::sqrt(n2);
    for (auto& x : v) x /= n;
}

}  // namespace

// ---- sphere moments ---------------------------------------------------------

double ExactPi::value() const { return to_double(coeff) * std::pow(kPi, pi_half / 2.0); }

ExactPi sphere_monomial(int p, const std::vector<int>& alpha) {
    if (p < 1) throw std::invalid_argument("sphere dimension must be positive");
    if (static_cast<int>(alpha.size()) != p) throw std::invalid_argument("multi-index length must equal p");
    long half_total = 0;
    Rational num = 1, den = 1;
    for (int a : alpha) {
        if (a < 0) throw std::invalid_argument("negative exponent");
        if (a % 2 != 0) return {Rational(0), 0};
        num *= factorial(a);
        den *= factorial(a / 2);
        half_total += a / 2;
    }
    const auto g = exact_gamma(ratio(p, 2) + half_total);
    if (!g) throw std::logic_error("gamma at a half-integer out of range");
    return {rpow(Rational(2), 1 - 2 * half_total) * num / (den * g->r), p - g->pi_half};
}

ExactPi sphere_moment(int p, const std::vector<int>& alpha) {
    std::vector<int> twice(alpha);
    for (auto& a : twice) a *= 2;
    return sphere_monomial(p, twice);
}

double sphere_moment_weighted(int p, int p_dprime, const std::vector<int>& alpha, double gamma) {
    if (p_dprime < 1 || p_dprime > p) throw std::invalid_argument("need 1 <= p'' <= p");
    if (static_cast<int>(alpha.size()) != p) throw std::invalid_argument("multi-index length must equal p");
    int total = 0, total_dprime = 0;
    double log_num = 0, log_den = 0;
    for (int i = 0; i < p; ++i) {
        total += alpha[i];
        if (i >= p - p_dprime) total_dprime += alpha[i];
        log_num += std::lgamma(2.0 * alpha[i] + 1);
        log_den += std::lgamma(alpha[i] + 1.0);
    }
    const double inner = (gamma + p_dprime) / 2 + total_dprime;
    if (inner <= 0) throw std::domain_error("weighted sphere moment diverges");
    return std::pow(2.0, 1 - 2 * total) * std::pow(kPi, p / 2.0) *
           std::exp(log_num - log_den + std::lgamma(inner) - std::lgamma((gamma + p) / 2 + total) -
                    std::lgamma(p_dprime / 2.0 + total_dprime));
}

PointRule jacobi01(int nodes, double a, double b) {
    auto [x, w] = jacobi(nodes, 0.0, 1.0, a, b);
    return {1, std::move(x), std::move(w)};
}

namespace {

double sphere_rule_size(int dim, int nodes) {
    if (dim == 1) return 2;
    return 2.0 * nodes * std::pow(static_cast<double>(nodes), dim - 2);
}

void require_rule_size(double points) {
    if (points > static_cast<double>(kMaxRulePoints))
        throw std::length_error("quadrature rule too large; lower the node count or use Monte Carlo");
}

}  // namespace

PointRule sphere_rule(int dim, int nodes) {
    if (dim < 1 || nodes < 1) throw std::invalid_argument("bad sphere rule request");
    require_rule_size(sphere_rule_size(dim, nodes));
    PointRule r;
    r.dim = dim;
    if (dim == 1) {
        r.points = {1.0, -1.0};
        r.weights = {1.0, 1.0};
        return r;
    }
    if (dim == 2) {
        const int m = 2 * nodes;
        for (int j = 0; j < m; ++j) {
            const double t = 2 * kPi * (j + 0.5) / m;
            r.points.push_back(std::cos(t));
            r.points.push_back(std::sin(t));
            r.weights.push_back(2 * kPi / m);
        }
        return r;
    }
    // omega = (t, sqrt(1-t^2) omega_sub), measure (1-t^2)^((dim-3)/2) dt d omega_sub
    const auto [t, wt] = jacobi(nodes, -1.0, 1.0, (dim - 3) / 2.0, (dim - 3) / 2.0);
    const auto sub = sphere_rule(dim - 1, nodes);
    for (int i = 0; i < nodes; ++i) {
        const double s = std::sqrt(std::max(0.0, 1 - t[i] * t[i]));
        for (std::size_t k = 0; k < sub.size(); ++k) {
            r.points.push_back(t[i]);
            for (double c : sub.point(k)) r.points.push_back(s * c);
            r.weights.push_back(wt[i] * sub.weights[k]);
        }
    }
    return r;
}

PointRule weighted_sphere_rule(int p_prime, int p_dprime, double gamma, int nodes) {
    if (p_dprime < 1) throw std::invalid_argument("need p'' >= 1");
    if (p_prime == 0) return sphere_rule(p_dprime, nodes);
    if (gamma <= -p_dprime) throw std::domain_error("|omega''|^gamma is not integrable");
    require_rule_size(nodes * sphere_rule_size(p_prime, nodes) * sphere_rule_size(p_dprime, nodes));
    // omega = (sqrt(1-u) omega', sqrt(u) omega''), measure (1/2)(1-u)^(p'/2-1) u^(p''/2-1) du
    const auto [u, wu] = jacobi(nodes, 0.0, 1.0, p_prime / 2.0 - 1, (p_dprime + gamma) / 2 - 1);
    const auto s1 = sphere_rule(p_prime, nodes);
    const auto s2 = sphere_rule(p_dprime, nodes);
    PointRule r;
    r.dim = p_prime + p_dprime;
    for (int i = 0; i < nodes; ++i) {
        const double c = std::sqrt(1 - u[i]), s = std::sqrt(u[i]);
        for (std::size_t a = 0; a < s1.size(); ++a)
            for (std::size_t b = 0; b < s2.size(); ++b) {
                for (double v : s1.point(a)) r.points.push_back(c * v);
                for (double v : s2.point(b)) r.points.push_back(s * v);
                r.weights.push_back(0.5 * wu[i] * s1.weights[a] * s2.weights[b]);
            }
    }
    return r;
}

namespace {

double monomial_value(std::span<const double> x, const std::vector<int>& twice_alpha) {
    double v = 1;
    for (std::size_t i = 0; i < twice_alpha.size(); ++i) v *= std::pow(x[i], twice_alpha[i]);
    return v;
}

std::vector<int> doubled(const std::vector<int>& alpha) {
    std::vector<int> out(alpha);
    for (auto& a : out) a *= 2;
    return out;
}

}  // namespace

double sphere_moment_numeric(int p, const std::vector<int>& alpha, int nodes) {
    const auto rule = sphere_rule(p, nodes);
    const auto e = doubled(alpha);
    double s = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * monomial_value(rule.point(i), e);
    return s;
}

double sphere_moment_weighted_numeric(int p, int p_dprime, const std::vector<int>& alpha, double gamma, int nodes) {
    const auto rule = weighted_sphere_rule(p - p_dprime, p_dprime, gamma, nodes);
    const auto e = doubled(alpha);
    double s = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * monomial_value(rule.point(i), e);
    // with p' = 0 the weight |omega''|^gamma is identically 1
    return s;
}

double sphere_moment_monte_carlo(int p, const std::vector<int>& alpha, long samples, std::uint64_t seed, int threads) {
    const auto e = doubled(alpha);
    const double mean = monte_carlo_mean(samples, seed, threads, [&](std::mt19937_64& rng) {
        std::vector<double> v(static_cast<std::size_t>(p));
        unit_vector(rng, v);
        return monomial_value(v, e);
    });
    return mean * sphere_volume(p);
}

// ---- H-type polar coordinates -----------------------------------------------

PointRule htype_surface_rule(int p_prime, int p_dprime, int q, double b, int nodes, int x_nodes) {
    const int p = p_prime + p_dprime;
    const double om_size = p_prime == 0 ? sphere_rule_size(p_dprime, nodes)
                                        : nodes * sphere_rule_size(p_prime, nodes) * sphere_rule_size(p_dprime, nodes);
    require_rule_size(x_nodes * om_size * sphere_rule_size(q, nodes));
    // 2 x^(p-1) (1-x^4)^(q/2-1) dx, with |X''|^b = x^b |omega''|^b folded in
    const auto xr = jacobi01(x_nodes, q / 2.0 - 1, p - 1 + b);
    const auto om = weighted_sphere_rule(p_prime, p_dprime, b, nodes);
    const auto et = sphere_rule(q, nodes);
    PointRule r;
    r.dim = p + q;
    for (std::size_t i = 0; i < xr.size(); ++i) {
        const double x = xr.points[i];
        const double y = std::sqrt(std::max(0.0, 1 - x * x * x * x));
        const double wx = 2 * xr.weights[i] * std::pow((1 + x) * (1 + x * x), q / 2.0 - 1);
        for (std::size_t a = 0; a < om.size(); ++a)
            for (std::size_t c = 0; c < et.size(); ++c) {
                for (double v : om.point(a)) r.points.push_back(x * v);
                for (double v : et.point(c)) r.points.push_back(y * v);
                r.weights.push_back(wx * om.weights[a] * et.weights[c]);
            }
    }
    return r;
}

double htype_surface_integral(int p, int q, const Integrand& f, const QuadratureSpec& spec) {
    const auto rule = htype_surface_rule(0, p, q, 0.0, spec.nodes, spec.x_nodes);
    double s = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(rule.point(i));
    return s;
}

double htype_surface_integral(const PairConfig& cfg, const Integrand& f, const QuadratureSpec& spec) {
    return htype_surface_integral(cfg.p, cfg.q, f, spec);
}

double htype_surface_monte_carlo(int p, int q, const Integrand& f, long samples, std::uint64_t seed, int threads) {
    // t = x^4 turns the x-measure into (1/2) t^(p/4-1) (1-t)^(q/2-1) dt, a Beta law
    const double mass_x = 0.5 * std::exp(std::lgamma(p / 4.0) + std::lgamma(q / 2.0) - std::lgamma(p / 4.0 + q / 2.0));
    const double mean = monte_carlo_mean(samples, seed, threads, [&](std::mt19937_64& rng) {
        std::gamma_distribution<double> ga(p / 4.0), gb(q / 2.0);
        const double u = ga(rng), v = gb(rng);
        const double t = u / (u + v);
        const double x = std::pow(t, 0.25), y = std::sqrt(std::max(0.0, 1 - t));
        std::vector<double> om(static_cast<std::size_t>(p)), et(static_cast<std::size_t>(q));
        unit_vector(rng, om);
        unit_vector(rng, et);
        std::vector<double> pt;
        pt.reserve(static_cast<std::size_t>(p + q));
        for (double w : om) pt.push_back(x * w);
        for (double w : et) pt.push_back(y * w);
        return f(pt);
    });
    return mean * mass_x * sphere_volume(p) * sphere_volume(q);
}

double polar_integral(int p, int q, const Integrand& f, const QuadratureSpec& spec) {
    const auto rule = htype_surface_rule(0, p, q, 0.0, spec.nodes, spec.x_nodes);
    std::vector<double> buf(static_cast<std::size_t>(p + q));
    const Fn radial = [&](double r) {
        double s = 0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const auto pt = rule.point(i);
            for (int a = 0; a < p; ++a) buf[a] = r * pt[a];
            for (int j = 0; j < q; ++j) buf[p + j] = r * r * pt[p + j];
            s += rule.weights[i] * f(buf);
        }
        return std::pow(r, p + 2 * q - 1) * s;
    };
    return integrate(radial, 0.0, spec.radial_cutoff, spec.rel_tol) +
           integrate_to_inf(radial, spec.radial_cutoff, spec.rel_tol);
}

namespace {

// Integral of g over S^{dim-1}, nested adaptive in spherical angles.
double sphere_adaptive(int dim, const std::function<double(const std::vector<double>&)>& g, double rel_tol) {
    if (dim == 1) return g({1.0}) + g({-1.0});
    if (dim == 2)
        return integrate([&](double t) { return g({std::cos(t), std::sin(t)}); }, 0.0, 2 * kPi, rel_tol);
    return integrate(
        [&](double th) {
            const double c = std::cos(th), s = std::sin(th);
            const double inner = sphere_adaptive(
                dim - 1,
                [&](const std::vector<double>& w) {
                    std::vector<double> v{c};
                    for (double x : w) v.push_back(s * x);
                    return g(v);
                },
                rel_tol);
            return std::pow(s, dim - 2) * inner;
        },
        0.0, kPi, rel_tol);
}

}  // namespace

double euclidean_integral(int dim, const Integrand& f, double rel_tol) {
    if (dim < 1 || dim > 4) throw std::invalid_argument("nested quadrature supports 1 <= dim <= 4");
    if (dim == 1) return integrate_line([&](double x) { return f(std::vector<double>{x}); }, rel_tol);
    const Fn radial = [&](double r) {
        return std::pow(r, dim - 1) * sphere_adaptive(
                                          dim,
                                          [&](const std::vector<double>& w) {
                                              std::vector<double> v(w);
                                              for (auto& x : v) x *= r;
                                              return f(v);
                                          },
                                          rel_tol);
    };
    return integrate(radial, 0.0, 1.0, rel_tol) + integrate_to_inf(radial, 1.0, rel_tol);
}

// ---- test functions ---------------------------------------------------------

TestFunction::TestFunction(std::vector<double> gauss, std::map<Monomial, double> poly)
    : gauss_(std::move(gauss)), poly_(std::move(poly)) {
    for (double a : gauss_)
        if (!(a > 0)) throw std::invalid_argument("Gaussian envelope needs positive coefficients");
    for (const auto& [m, c] : poly_)
        if (m.size() != gauss_.size()) throw std::invalid_argument("monomial length mismatch");
}

TestFunction TestFunction::gaussian(std::vector<double> gauss) {
    const std::size_t n = gauss.size();
    return TestFunction(std::move(gauss), {{Monomial(n, 0), 1.0}});
}

double TestFunction::operator()(std::span<const double> x) const {
    double e = 0;
    for (std::size_t i = 0; i < gauss_.size(); ++i) e += gauss_[i] * x[i] * x[i];
    double p = 0;
    for (const auto& [m, c] : poly_) {
        double t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int k = 0; k < m[i]; ++k) t *= x[i];
        p += t;
    }
    return p * std::exp(-e);
}

TestFunction TestFunction::partial(int var) const {
    std::map<Monomial, double> out;
    for (const auto& [m, c] : poly_) {
        if (m[var] > 0) {
            auto d = m;
            --d[var];
            out[d] += c * m[var];
        }
        auto u = m;
        ++u[var];
        out[u] += -2 * gauss_[var] * c;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return TestFunction(gauss_, std::move(out));
}

double TestFunction::derivative(const Monomial& alpha, std::span<const double> x) const {
    TestFunction f = *this;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (int k = 0; k < alpha[i]; ++k) f = f.partial(static_cast<int>(i));
    return f(x);
}

std::map<TestFunction::Monomial, double> TestFunction::taylor(const std::vector<int>& weights, int max_degree) const {
    auto wdeg = [&](const Monomial& m) {
        int d = 0;
        for (std::size_t i = 0; i < m.size(); ++i) d += weights[i] * m[i];
        return d;
    };
    std::map<Monomial, double> acc;
    for (const auto& [m, c] : poly_)
        if (wdeg(m) <= max_degree) acc[m] += c;
    // multiply by exp(-a_i x_i^2) = sum_n (-a_i)^n x_i^(2n) / n!, one variable at a time
    for (std::size_t i = 0; i < gauss_.size(); ++i) {
        std::map<Monomial, double> next;
        for (const auto& [m, c] : acc) {
            const int room = max_degree - wdeg(m);
            double term = c;
            for (int n = 0; 2 * n * weights[i] <= room; ++n) {
                auto e = m;
                e[i] += 2 * n;
                next[e] += term;
                term *= -gauss_[i] / (n + 1);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

double TestFunction::integral() const {
    double total = 0;
    for (const auto& [m, c] : poly_) {
        double t = c;
        for (std::size_t i = 0; i < m.size() && t != 0; ++i) {
            if (m[i] % 2 != 0) {
                t = 0;
                break;
            }
            const double h = (m[i] + 1) / 2.0;
            t *= std::tgamma(h) / std::pow(gauss_[i], h);
        }
        total += t;
    }
    return total;
}

// ---- regularized radial integrals ----------------------------------------------

std::complex<double> regularized_halfline(const RadialProfile& psi, std::complex<double> s, const QuadratureSpec& spec) {
    const int avail = static_cast<int>(psi.taylor.size());
    // subtract just enough Taylor terms to make the [0, c] piece converge
    const int need = s.real() > 0 ? 0 : static_cast<int>(std::floor(-s.real())) + 1;
    if (need > avail) throw std::domain_error("not enough Taylor data for this s");
    for (int j = 0; j < need; ++j)
        if (psi.taylor[j] != 0 && std::abs(s + static_cast<double>(j)) < 1e-13)
            throw std::domain_error("s sits on a pole of the radial integral");
    const double c = spec.radial_cutoff;
    const bool complex_s = s.imag() != 0;

    auto head = [&](double r) {
        double sub = psi.value(r);
        double rp = 1;
        for (int j = 0; j < need; ++j, rp *= r) sub -= psi.taylor[j] * rp;
        return sub;
    };
    // Near 0 psi minus its Taylor polynomial is pure cancellation noise. Below
    // r0, where that noise would beat the first unused Taylor term, the
    // remaining Taylor terms are integrated exactly instead.
    const double r0 = need > 0 && avail > need ? std::min(c, std::pow(1e-16, 1.0 / avail)) : 0.0;
    auto piece = [&](bool imag_part, bool tail) {
        const Fn f = [&, imag_part, tail](double r) {
            const std::complex<double> w = std::exp((s - 1.0) * std::log(r));
            const double v = tail ? psi.value(r) : head(r);
            return (imag_part ? w.imag() : w.real()) * v;
        };
        return tail ? integrate_to_inf(f, c, spec.rel_tol) : integrate(f, r0, c, spec.rel_tol);
    };
    std::complex<double> out(piece(false, false) + piece(false, true),
                             complex_s ? piece(true, false) + piece(true, true) : 0.0);
    if (r0 > 0)
        for (int j = need; j < avail; ++j)
            if (psi.taylor[j] != 0) out += psi.taylor[j] * std::exp((s + static_cast<double>(j)) * std::log(r0)) / (s + static_cast<double>(j));
    for (int j = 0; j < need; ++j)
        if (psi.taylor[j] != 0) out += psi.taylor[j] * std::exp((s + static_cast<double>(j)) * std::log(c)) / (s + static_cast<double>(j));
    return out;
}

std::complex<double> normalized_halfline(const RadialProfile& psi, std::complex<double> s, const QuadratureSpec& spec) {
    if (s.imag() == 0 && s.real() <= 0) {
        const double k = -s.real() / 2;
        if (std::abs(k - std::round(k)) < 1e-13) {
            const int kk = static_cast<int>(std::lround(k));
            if (2 * kk >= static_cast<int>(psi.taylor.size())) throw std::domain_error("not enough Taylor data for this s");
            // Γ(s/2) ~ 2 (-1)^k / (k! (s+2k)) and I(s) ~ psi_2k / (s+2k)
            const double sign = kk % 2 == 0 ? 1.0 : -1.0;
            return sign * std::tgamma(kk + 1.0) * psi.taylor[2 * kk] / 2.0;
        }
    }
    const auto integral = regularized_halfline(psi, s, spec);
    if (s.imag() == 0) return integral / std::tgamma(s.real() / 2);
    gsl_sf_result lnr, arg;
    gsl_sf_lngamma_complex_e(s.real() / 2, s.imag() / 2, &lnr, &arg);
    return integral * std::exp(std::complex<double>(-lnr.val, -arg.val));
}

// ---- pairing with u^A -------------------------------------------------------

double uA_pairing(const PairConfig& cfg, double lambda, double nu, const TestFunction& phi, const QuadratureSpec& spec) {
    if (phi.dim() != cfg.n_vars()) throw std::invalid_argument("test function dimension mismatch");
    const double rho = to_double(cfg.rho), rho_p = to_double(cfg.rho_prime);
    const double s = lambda + rho - nu - rho_p;
    const double b = lambda - rho + nu + rho_p;
    if (b <= -cfg.p_dprime) throw std::domain_error("angular |X''|^b integral has a pole here");
    const int p = cfg.p, q = cfg.q;
    const auto rule = htype_surface_rule(cfg.p_prime, cfg.p_dprime, q, b, spec.nodes, spec.x_nodes);

    RadialProfile psi;
    psi.value = [&rule, &phi, p, q](double r) {
        std::vector<double> buf(static_cast<std::size_t>(p + q));
        double acc = 0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const auto pt = rule.point(i);
            for (int a = 0; a < p; ++a) buf[a] = r * pt[a];
            for (int j = 0; j < q; ++j) buf[p + j] = r * r * pt[p + j];
            acc += rule.weights[i] * phi(buf);
        }
        return acc;
    };
    // Taylor data of psi from exact surface moments of the Taylor polynomial of phi.
    const int order = s > 0 ? 0 : static_cast<int>(std::floor(-s)) + 2;
    psi.taylor.assign(static_cast<std::size_t>(order + 1), 0.0);
    std::vector<int> weights(static_cast<std::size_t>(p + q), 1);
    for (int j = 0; j < q; ++j) weights[p + j] = 2;
    for (const auto& [m, c] : phi.taylor(weights, order)) {
        int deg_x = 0, deg_z = 0;
        bool odd = false;
        std::vector<int> half_x;
        for (int a = 0; a < p; ++a) {
            deg_x += m[a];
            odd = odd || m[a] % 2 != 0;
            half_x.push_back(m[a] / 2);
        }
        std::vector<int> mz(m.begin() + p, m.end());
        for (int j = 0; j < q; ++j) {
            deg_z += m[p + j];
            odd = odd || m[p + j] % 2 != 0;
        }
        if (odd) continue;
        // 2 int_0^1 x^(p-1+deg_x+b) (1-x^4)^(q/2-1+deg_z/2) dx
        const double bx = 0.5 * std::exp(std::lgamma((p + deg_x + b) / 4) + std::lgamma((q + deg_z) / 2.0) -
                                         std::lgamma((p + deg_x + b) / 4 + (q + deg_z) / 2.0));
        const double om = cfg.p_prime == 0 ? sphere_moment(p, half_x).value()
                                           : sphere_moment_weighted(p, cfg.p_dprime, half_x, b);
        psi.taylor[static_cast<std::size_t>(deg_x + 2 * deg_z)] += c * bx * om * sphere_monomial(q, mz).value();
    }
    const auto radial = normalized_halfline(psi, s, spec);
    return radial.real() / std::tgamma((b + cfg.p_dprime) / 2);
}

double uA_pairing(const PairConfig& cfg, const ParamPoint& pt, const TestFunction& phi, const QuadratureSpec& spec) {
    return uA_pairing(cfg, to_double(pt.lambda), to_double(pt.nu), phi, spec);
}

double uA_pairing_direct(const PairConfig& cfg, double lambda, double nu, const TestFunction& phi, double rel_tol) {
    const int p = cfg.p, q = cfg.q;
    if (p + q > 4) throw std::invalid_argument("direct quadrature is limited to p+q <= 4");
    const double rho = to_double(cfg.rho), rho_p = to_double(cfg.rho_prime);
    const double s = lambda + rho - nu - rho_p;
    const double b = lambda - rho + nu + rho_p;
    if (s <= 0 || b <= -cfg.p_dprime) throw std::domain_error("outside the absolutely convergent region");
    const double a = -2 * (nu + rho_p);
    const double norm = numeric_value(uA_normalization(cfg), lambda, nu);
    return norm * euclidean_integral(
                      p + q,
                      [&](std::span<const double> x) {
                          double x2 = 0, xpp2 = 0, z2 = 0;
                          for (int i = 0; i < p; ++i) x2 += x[i] * x[i];
                          for (int i = cfg.p_prime; i < p; ++i) xpp2 += x[i] * x[i];
                          for (int j = 0; j < q; ++j) z2 += x[p + j] * x[p + j];
                          const double n4 = x2 * x2 + z2;
                          if (n4 == 0 || xpp2 == 0) return 0.0;
                          return std::pow(n4, a / 4) * std::pow(xpp2, b / 2) * phi(x);
                      },
                      rel_tol);
}

double ResidueCheck::rel_err() const { return std::abs(extrapolated - expected) / std::max(std::abs(expected), 1e-300); }

ResidueCheck residue_extrapolation(const PairConfig& cfg, const ParamPoint& pt, const TestFunction& phi,
                                   std::vector<double> eps, const QuadratureSpec& spec) {
    const auto fl = lattice_flags(cfg, pt);
    if (!fl.in_slash || *fl.k != 0) throw std::invalid_argument("residue check needs a k = 0 point of //");
    if (eps.size() != 3) throw std::invalid_argument("need three step sizes");
    ResidueCheck out;
    out.eps = eps;
    const double lambda = to_double(pt.lambda), nu = to_double(pt.nu);
    for (double e : eps) out.samples.push_back(uA_pairing(cfg, lambda + e, nu, phi, spec));
    // quadratic through the three samples, evaluated at 0
    double v = 0;
    for (int i = 0; i < 3; ++i) {
        double l = 1;
        for (int j = 0; j < 3; ++j)
            if (j != i) l *= (0 - eps[j]) / (eps[i] - eps[j]);
        v += l * out.samples[i];
    }
    out.extrapolated = v;
    const auto constant = value_at(residue_constant_AC(cfg, pt), pt);
    const double c000 = to_double(coeff_table(cfg, pt).at(0, 0, 0));
    const std::vector<double> origin(static_cast<std::size_t>(cfg.n_vars()), 0.0);
    out.expected = (constant.order == 0 ? constant.numeric : 0.0) * c000 * phi(origin);
    return out;
}

// ---- spherical vectors and functional equations --------------------------------------

namespace {

Affine aff(const Rational& c0, const Rational& cl, const Rational& cn) { return {c0, cl, cn}; }

}  // namespace

GammaExpr spherical_vector_closed_form(const PairConfig& cfg) {
    const Rational half(1, 2);
    const Rational shift = (cfg.rho - cfg.rho_prime) / 2;
    return GammaExpr::pi_half(cfg.p + cfg.q) * GammaExpr::gamma(aff(ratio(cfg.p, 4), half, 0)) *
           GammaExpr::gamma(aff(shift, half, -half)) * GammaExpr::gamma(aff(shift, half, half)) /
           (GammaExpr::gamma(Affine::constant(ratio(cfg.p_dprime, 2))) * GammaExpr::gamma(aff(ratio(cfg.p, 2), 1, 0)) *
            GammaExpr::gamma(aff(cfg.rho / 2, half, 0)));
}

GammaExpr knapp_stein_constant(const PairConfig& cfg) {
    const Rational half(1, 2);
    return GammaExpr::pi_half(cfg.p + cfg.q) * GammaExpr::gamma(aff(ratio(cfg.p, 4), half, 0)) /
           (GammaExpr::gamma(aff(ratio(cfg.p, 2), 1, 0)) * GammaExpr::gamma(aff(cfg.rho / 2, half, 0)));
}

GammaExpr knapp_stein_prime_constant(const PairConfig& cfg) {
    const Rational half(1, 2);
    GammaExpr out = GammaExpr::pi_half(cfg.p_prime + cfg.q) / GammaExpr::gamma(aff(cfg.rho_prime / 2, 0, half));
    if (cfg.m > 0)
        out *= GammaExpr::gamma(aff(ratio(cfg.p_prime, 4), 0, half)) / GammaExpr::gamma(aff(ratio(cfg.p_prime, 2), 0, 1));
    return out;
}

GammaExpr sbo_spherical_constant(const PairConfig& cfg) {
    return knapp_stein_constant(cfg) / GammaExpr::gamma(Affine::constant(ratio(cfg.p_dprime, 2)));
}

double spherical_vector_numeric(int p_prime, int p_dprime, int q, double a, double b, double c, const QuadratureSpec& spec) {
    const int p = p_prime + p_dprime;
    const double lead = p + 2 * q + a + b;
    if (b <= -p_dprime || lead <= 0 || lead + c >= 0) throw std::domain_error("spherical vector integral diverges");
    double angular = 0;
    for (double w : weighted_sphere_rule(p_prime, p_dprime, b, spec.nodes).weights) angular += w;
    double zsphere = 0;
    for (double w : sphere_rule(q, spec.nodes).weights) zsphere += w;
    // (1+|X|^2)^2+|Z|^2 = 1 + 2 r^2 x^2 + r^4 on the polar slice
    const auto xr = jacobi01(spec.x_nodes, q / 2.0 - 1, p - 1 + b);
    const Fn radial = [&](double r) {
        double acc = 0;
        for (std::size_t i = 0; i < xr.size(); ++i) {
            const double x = xr.points[i];
            acc += 2 * xr.weights[i] * std::pow((1 + x) * (1 + x * x), q / 2.0 - 1) *
                   std::pow(1 + 2 * r * r * x * x + r * r * r * r, c / 4);
        }
        return std::pow(r, lead - 1) * acc;
    };
    const double radial_total =
        integrate(radial, 0.0, spec.radial_cutoff, spec.rel_tol) + integrate_to_inf(radial, spec.radial_cutoff, spec.rel_tol);
    return angular * zsphere * radial_total;
}

double ClosedFormCheck::rel_err() const { return std::abs(numeric - closed_form) / std::max(std::abs(closed_form), 1e-300); }

namespace {

double closed_value(const GammaExpr& e, const ParamPoint& pt) {
    const auto v = value_at(e, pt);
    if (v.order < 0) throw std::domain_error("closed form has a pole here");
    return v.order > 0 ? 0.0 : v.numeric;
}

void require_sv_convergent(const PairConfig& cfg, double lambda, double nu) {
    if (!(std::abs(nu) < lambda + cfg.p_dprime / 2.0))
        throw std::domain_error("spherical vector integral needs |nu| < lambda + p''/2");
}

double sv_integral(const PairConfig& cfg, double lambda, double nu, const QuadratureSpec& spec) {
    require_sv_convergent(cfg, lambda, nu);
    const double rho = to_double(cfg.rho), rho_p = to_double(cfg.rho_prime);
    return spherical_vector_numeric(cfg.p_prime, cfg.p_dprime, cfg.q, -2 * (nu + rho_p), lambda - rho + nu + rho_p,
                                    -2 * (lambda + rho), spec);
}

double sbo_numeric(const PairConfig& cfg, double lambda, double nu, const QuadratureSpec& spec) {
    return numeric_value(uA_normalization(cfg), lambda, nu) * sv_integral(cfg, lambda, nu, spec);
}

double ks_numeric(const PairConfig& cfg, double lambda, const QuadratureSpec& spec) {
    if (!(lambda > 0)) throw std::domain_error("Knapp-Stein integral needs lambda > 0");
    const double rho = to_double(cfg.rho);
    return spherical_vector_numeric(0, cfg.p, cfg.q, 2 * lambda - 2 * rho, 0.0, -2 * (lambda + rho), spec) /
           std::tgamma(lambda);
}

double ks_m0_integral(int q, double nu, double rho_p, double rel_tol) {
    double zsphere = sphere_volume(q);
    const Fn f = [&](double c) { return std::pow(c, q - 1 + nu - rho_p) * std::pow(1 + c * c, -(nu + rho_p) / 2); };
    return zsphere * (integrate(f, 0.0, 1.0, rel_tol) + integrate_to_inf(f, 1.0, rel_tol));
}

double ks_prime_numeric(const PairConfig& cfg, double nu, const QuadratureSpec& spec) {
    if (!(nu > 0)) throw std::domain_error("Knapp-Stein integral needs nu > 0");
    const double rho_p = to_double(cfg.rho_prime);
    if (cfg.m == 0) return ks_m0_integral(cfg.q, nu, rho_p, spec.rel_tol) / std::tgamma(nu / 2);
    return spherical_vector_numeric(0, cfg.p_prime, cfg.q, 2 * nu - 2 * rho_p, 0.0, -2 * (nu + rho_p), spec) /
           std::tgamma(nu);
}

}  // namespace

ClosedFormCheck spherical_vector_integral_check(const PairConfig& cfg, const ParamPoint& pt, const QuadratureSpec& spec) {
    ClosedFormCheck out;
    out.numeric = sv_integral(cfg, to_double(pt.lambda), to_double(pt.nu), spec);
    out.closed_form = closed_value(spherical_vector_closed_form(cfg), pt);
    return out;
}

ClosedFormCheck ks_m0_check(const PairConfig& cfg, const Rational& nu) {
    if (cfg.m != 0) throw std::invalid_argument("ks_m0_check needs m = 0");
    if (nu <= 0) throw std::domain_error("needs nu > 0");
    ClosedFormCheck out;
    out.numeric = ks_m0_integral(cfg.q, to_double(nu), to_double(cfg.rho_prime), 1e-11);
    const Rational half(1, 2);
    const GammaExpr closed = GammaExpr::pi_half(cfg.q) * GammaExpr::gamma(aff(0, 0, half)) /
                             GammaExpr::gamma(aff(cfg.rho_prime / 2, 0, half));
    out.closed_form = closed_value(closed, {Rational(0), nu});
    return out;
}

ClosedFormCheck knapp_stein_check(const PairConfig& cfg, const Rational& lambda, const QuadratureSpec& spec) {
    return {ks_numeric(cfg, to_double(lambda), spec), closed_value(knapp_stein_constant(cfg), {lambda, Rational(0)})};
}

ClosedFormCheck knapp_stein_prime_check(const PairConfig& cfg, const Rational& nu, const QuadratureSpec& spec) {
    return {ks_prime_numeric(cfg, to_double(nu), spec), closed_value(knapp_stein_prime_constant(cfg), {Rational(0), nu})};
}

ClosedFormCheck sbo_spherical_check(const PairConfig& cfg, const ParamPoint& pt, const QuadratureSpec& spec) {
    return {sbo_numeric(cfg, to_double(pt.lambda), to_double(pt.nu), spec), closed_value(sbo_spherical_constant(cfg), pt)};
}

FunctionalEquationReport functional_equation_check(const PairConfig& cfg, const ParamPoint& pt, const QuadratureSpec& spec) {
    FunctionalEquationReport rep;
    const double lambda = to_double(pt.lambda), nu = to_double(pt.nu);
    const double half_dp = cfg.p_dprime / 2.0;
    auto convergent = [&](double l, double n) { return std::abs(n) < l + half_dp; };

    if (lambda < 0 && convergent(lambda, nu) && convergent(-lambda, nu)) {
        rep.first_applicable = true;
        rep.first.numeric = ks_numeric(cfg, -lambda, spec) * sbo_numeric(cfg, lambda, nu, spec) /
                            sbo_numeric(cfg, -lambda, nu, spec);
        rep.first.closed_form = closed_value(knapp_stein_constant(cfg), pt);
    } else {
        rep.note += "first: needs lambda < 0 and |nu| < -|lambda| + p''/2; ";
    }
    if (nu > 0 && convergent(lambda, nu)) {
        rep.second_applicable = true;
        rep.second.numeric = ks_prime_numeric(cfg, nu, spec) * sbo_numeric(cfg, lambda, nu, spec) /
                             sbo_numeric(cfg, lambda, -nu, spec);
        rep.second.closed_form = closed_value(knapp_stein_prime_constant(cfg), pt);
    } else {
        rep.note += "second: needs 0 < nu < lambda + p''/2; ";
    }
    return rep;
}

}  // namespace sbo
