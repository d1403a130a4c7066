#pragma once
// Numerics: sphere rules, H-type polar coordinates, radial integrals continued
// past their poles by Taylor subtraction, and the spherical-vector integrals
// behind the functional equations. Everything here is double precision; the
// closed forms it is compared against come from gamma_expr.

#include "sbo/gamma_expr.hpp"
#include "sbo/pair_config.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sbo {

struct QuadratureSpec {
    int nodes = 12;            // per angular axis for product rules
    int x_nodes = 96;          // for the x in (x omega, sqrt(1-x^4) eta) of H-type polar coordinates
    double radial_cutoff = 1.0;  // split point of the half-line
    double rel_tol = 1e-11;    // for adaptive 1D integrals
    int threads = 1;           // Monte Carlo only
};

// rational * pi^(pi_half/2)
struct ExactPi {
    Rational coeff;
    int pi_half = 0;
    double value() const;
};

// Integral of omega^(2 alpha) over S^{p-1}.
ExactPi sphere_moment(int p, const std::vector<int>& alpha);
// Same with omega^alpha for arbitrary alpha (zero when some entry is odd).
ExactPi sphere_monomial(int p, const std::vector<int>& alpha);

// Integral of omega^(2 alpha) |omega''|^gamma over S^{p-1}, omega'' the last
// p'' coordinates. Throws std::domain_error when gamma <= -p'' - 2|alpha''|.
double sphere_moment_weighted(int p, int p_dprime, const std::vector<int>& alpha, double gamma);

inline constexpr std::size_t kMaxRulePoints = 4'000'000;

// A product rule on S^{dim-1} in R^dim: points stored row-major.
struct PointRule {
    int dim = 0;
    std::vector<double> points;
    std::vector<double> weights;
    std::size_t size() const { return weights.size(); }
    std::span<const double> point(std::size_t i) const {
        return {points.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
};

// Exact for polynomials of degree < 2*nodes in each angular variable.
PointRule sphere_rule(int dim, int nodes);
// Rule for f(omega) |omega''|^gamma on S^{p-1} with p = p' + p''.
PointRule weighted_sphere_rule(int p_prime, int p_dprime, double gamma, int nodes);
// Gauss-Jacobi nodes for weight (1-x)^a x^b on [0,1].
PointRule jacobi01(int nodes, double a, double b);

double sphere_moment_numeric(int p, const std::vector<int>& alpha, int nodes);
double sphere_moment_weighted_numeric(int p, int p_dprime, const std::vector<int>& alpha, double gamma, int nodes);
// Uniform sampling via normalized Gaussians. Samples are drawn in fixed
// chunks with their own seeds, so the result does not depend on threads.
double sphere_moment_monte_carlo(int p, const std::vector<int>& alpha, long samples, std::uint64_t seed, int threads);

using Integrand = std::function<double(std::span<const double>)>;

// Rule on the unit H-type sphere {N = 1} in R^{p+q}, carrying the smooth
// measure of the polar decomposition and optionally the weight |X''|^b.
// Throws std::length_error beyond kMaxRulePoints points.
PointRule htype_surface_rule(int p_prime, int p_dprime, int q, double b, int nodes, int x_nodes);
double htype_surface_integral(int p, int q, const Integrand& f, const QuadratureSpec& spec = {});
double htype_surface_integral(const PairConfig& cfg, const Integrand& f, const QuadratureSpec& spec = {});
// Monte Carlo version for dimensions where product rules get too large.
double htype_surface_monte_carlo(int p, int q, const Integrand& f, long samples, std::uint64_t seed, int threads);

// Integral over R^{p+q} via r^{p+2q-1} dr times the H-type surface rule.
double polar_integral(int p, int q, const Integrand& f, const QuadratureSpec& spec = {});
// Nested adaptive integration in Euclidean spherical coordinates, dim <= 4.
double euclidean_integral(int dim, const Integrand& f, double rel_tol = 1e-9);

// exp(-sum a_i x_i^2) * P(x), closed under differentiation.
class TestFunction {
public:
    using Monomial = std::vector<int>;

    TestFunction(std::vector<double> gauss, std::map<Monomial, double> poly);
    static TestFunction gaussian(std::vector<double> gauss);

    int dim() const { return static_cast<int>(gauss_.size()); }
    double operator()(std::span<const double> x) const;
    TestFunction partial(int var) const;
    double derivative(const Monomial& alpha, std::span<const double> x) const;
    // Taylor polynomial at 0 truncated to weighted degree <= max_degree,
    // where variable i has weight weights[i].
    std::map<Monomial, double> taylor(const std::vector<int>& weights, int max_degree) const;
    // Exact integral over R^dim.
    double integral() const;
    const std::vector<double>& envelope() const { return gauss_; }
    const std::map<Monomial, double>& poly() const { return poly_; }

private:
    std::vector<double> gauss_;
    std::map<Monomial, double> poly_;
};

// psi on [0, inf) with its Taylor coefficients psi^(j)(0)/j! at 0.
struct RadialProfile {
    std::function<double(double)> value;
    std::vector<double> taylor;
};

// Continuation of int_0^inf r^(s-1) psi(r) dr to Re s > -taylor.size().
// Throws std::domain_error at a pole s = -j and when the Taylor data is short.
std::complex<double> regularized_halfline(const RadialProfile& psi, std::complex<double> s, const QuadratureSpec& spec = {});
// The same divided by Γ(s/2): entire when psi is even. At s = -2k this is
// (-1)^k k! psi^(2k)(0) / (2 (2k)!).
std::complex<double> normalized_halfline(const RadialProfile& psi, std::complex<double> s, const QuadratureSpec& spec = {});

// <u^A, phi> through polar coordinates: the normalized radial integral of the
// |X''|^b-weighted surface average. Requires b > -p''.
double uA_pairing(const PairConfig& cfg, double lambda, double nu, const TestFunction& phi, const QuadratureSpec& spec = {});
double uA_pairing(const PairConfig& cfg, const ParamPoint& pt, const TestFunction& phi, const QuadratureSpec& spec = {});
// Direct Euclidean quadrature, absolutely convergent region only, p+q <= 4.
double uA_pairing_direct(const PairConfig& cfg, double lambda, double nu, const TestFunction& phi, double rel_tol = 1e-8);

struct ResidueCheck {
    std::vector<double> eps;
    std::vector<double> samples;
    double extrapolated = 0;
    double expected = 0;
    double rel_err() const;
};
// At a k = 0 point of //, pairs u^A at (lambda + eps, nu) for the three
// given eps, Richardson-extrapolates to eps = 0 and compares with
// residue_constant_AC * c_{0,0,0} * phi(0).
ResidueCheck residue_extrapolation(const PairConfig& cfg, const ParamPoint& pt, const TestFunction& phi,
                                   std::vector<double> eps = {0.1, 0.05, 0.025}, const QuadratureSpec& spec = {});

// Closed forms as gamma expressions in (lambda, nu).
GammaExpr spherical_vector_closed_form(const PairConfig& cfg);   // the integral, unnormalized
GammaExpr knapp_stein_constant(const PairConfig& cfg);           // T 1 = c 1
GammaExpr knapp_stein_prime_constant(const PairConfig& cfg);     // T' 1' = c 1'
GammaExpr sbo_spherical_constant(const PairConfig& cfg);         // A 1 = c 1'

// int N^a |X''|^b ((1+|X|^2)^2+|Z|^2)^(c/4) over R^{p+q}, reduced to a 2D
// integral in (r, x) with the angular part integrated numerically.
double spherical_vector_numeric(int p_prime, int p_dprime, int q, double a, double b, double c,
                                const QuadratureSpec& spec = {});

struct ClosedFormCheck {
    double numeric = 0;
    double closed_form = 0;
    double rel_err() const;
};

// Throws std::domain_error outside |nu| < lambda + p''/2.
ClosedFormCheck spherical_vector_integral_check(const PairConfig& cfg, const ParamPoint& pt, const QuadratureSpec& spec = {});
// m = 0 only; throws for nu <= 0.
ClosedFormCheck ks_m0_check(const PairConfig& cfg, const Rational& nu);
// Knapp-Stein constants recomputed by integrating against the spherical vector.
ClosedFormCheck knapp_stein_check(const PairConfig& cfg, const Rational& lambda, const QuadratureSpec& spec = {});
ClosedFormCheck knapp_stein_prime_check(const PairConfig& cfg, const Rational& nu, const QuadratureSpec& spec = {});
// A 1 = c 1' with the u^A normalization.
ClosedFormCheck sbo_spherical_check(const PairConfig& cfg, const ParamPoint& pt, const QuadratureSpec& spec = {});

struct FunctionalEquationReport {
    // A o T_{-lambda} = c_1 A_{-lambda}: needs lambda < 0 and both A sides convergent.
    bool first_applicable = false;
    ClosedFormCheck first;
    // T'_nu o A = c_2 A_{lambda,-nu}: needs nu > 0 and both A sides convergent.
    bool second_applicable = false;
    ClosedFormCheck second;
    std::string note;
};
FunctionalEquationReport functional_equation_check(const PairConfig& cfg, const ParamPoint& pt,
                                                   const QuadratureSpec& spec = {});

}  // namespace sbo
