#pragma once
// Formal products  r * pi^(j/2) * 2^(affine) * prod Gamma(affine)^e  in the
// two parameters (lambda, nu), with pole/zero bookkeeping and exact
// evaluation wherever the arguments collapse to integers or half-integers.

#include "sbo/pair_config.hpp"
#include "sbo/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sbo {

// c0 + cl*lambda + cn*nu
struct Affine {
    Rational c0, cl, cn;

    static Affine constant(const Rational& c) { return {c, 0, 0}; }
    Rational eval(const ParamPoint& pt) const { return c0 + cl * pt.lambda + cn * pt.nu; }
    Rational slope(const Rational& dl, const Rational& dn) const { return cl * dl + cn * dn; }
    bool is_constant() const { return cl == 0 && cn == 0; }

    friend Affine operator+(const Affine& a, const Affine& b) { return {a.c0 + b.c0, a.cl + b.cl, a.cn + b.cn}; }
    friend Affine operator-(const Affine& a, const Affine& b) { return {a.c0 - b.c0, a.cl - b.cl, a.cn - b.cn}; }
    friend Affine operator*(const Rational& s, const Affine& a) { return {s * a.c0, s * a.cl, s * a.cn}; }
    friend bool operator==(const Affine& a, const Affine& b) { return a.c0 == b.c0 && a.cl == b.cl && a.cn == b.cn; }
    friend bool operator<(const Affine& a, const Affine& b);
};

// Shorthands used all over: lambda, nu as Affine forms.
inline Affine lam() { return {0, 1, 0}; }
inline Affine nu_() { return {0, 0, 1}; }
std::string to_string(const Affine& a);

struct GammaFactor {
    Affine arg;
    int exponent = 1;
};

class GammaExpr {
public:
    GammaExpr() = default;
    static GammaExpr constant(const Rational& r);
    static GammaExpr gamma(const Affine& arg, int exponent = 1);
    static GammaExpr pi_half(int j);
    static GammaExpr two_to(const Affine& exponent);

    const Rational& prefactor() const { return prefactor_; }
    int pi_half_power() const { return pi_half_; }
    const Affine& two_power() const { return two_; }
    const std::vector<GammaFactor>& factors() const { return factors_; }

    GammaExpr reciprocal() const;
    GammaExpr& operator*=(const GammaExpr& o);
    friend GammaExpr operator*(GammaExpr a, const GammaExpr& b) { return a *= b; }
    friend GammaExpr operator/(GammaExpr a, const GammaExpr& b) { return a *= b.reciprocal(); }
    friend bool operator==(const GammaExpr& a, const GammaExpr& b);

private:
    void canonicalize();

    Rational prefactor_ = 1;
    int pi_half_ = 0;
    Affine two_{0, 0, 0};
    std::vector<GammaFactor> factors_;
};

// (r) * pi^(j/2) * 2^(...) * Γ(...)^e * ...
std::string to_string(const GammaExpr& e);

// Order of Gamma at z: -1 at nonpositive integers, 0 otherwise.
int gamma_order(const Rational& z);
// Sum over factors of exponent * gamma_order(argument at pt).
int order_at(const GammaExpr& expr, const ParamPoint& pt);

struct OrderedValue {
    int order = 0;
    // Leading Laurent coefficient along the chosen direction. `exact` holds
    // rational * pi^(exact_pi_half/2) when every piece is exact.
    bool has_leading = true;
    std::optional<Rational> exact;
    int exact_pi_half = 0;
    double numeric = 0.0;
};

struct Direction {
    Rational dlambda = 1;
    Rational dnu = 1;
};

// Leading term of expr(pt + eps*dir) as eps -> 0. Factors whose arguments
// differ by integers and move together are paired into exact Pochhammer
// products first, so ratios like Γ(b+i)/Γ(b) stay exact for any rational b.
OrderedValue value_at(const GammaExpr& expr, const ParamPoint& pt, Direction dir = {});
// Plain double evaluation at a point where no factor is singular.
double numeric_value(const GammaExpr& expr, double lambda, double nu);

// Γ(f)Γ(f+1/2) -> sqrt(pi) 2^(1-2f) Γ(2f), for every matched pair.
GammaExpr duplication_reduce(const GammaExpr& expr);

// Exact Γ at positive integers and half-integers: value = r * pi^(j/2).
struct ExactGamma {
    Rational r;
    int pi_half;
};
std::optional<ExactGamma> exact_gamma(const Rational& z);

// --- the normalizations that appear in the kernel families --------------

// 1/(Γ((λ+ρ-ν-ρ')/2) Γ((λ+ρ+ν-ρ')/2))
GammaExpr uA_normalization(const PairConfig& cfg);
// c^B(λ,ν) for a point on \\ with index l; piecewise in l.
GammaExpr cB(const PairConfig& cfg, const ParamPoint& pt);
// Constant in u^A = const * u^C on // (index k). Direction (1,1) keeps k.
GammaExpr residue_constant_AC(const PairConfig& cfg, long k);
GammaExpr residue_constant_AC(const PairConfig& cfg, const ParamPoint& pt);
// Constant in u^A = const * u^B on \\ (index l). Direction (1,-1) keeps l.
// For m = 0 there are two equivalent denominators; `alternate` picks Γ(-ν-l)
// instead of Γ((λ+ρ-ν-ρ')/2). They agree on \\.
GammaExpr residue_constant_AB(const PairConfig& cfg, long l, bool alternate = false);
GammaExpr residue_constant_AB(const PairConfig& cfg, const ParamPoint& pt, bool alternate = false);

// u^A vanishes exactly where the residue constant does.
bool uA_is_zero(const PairConfig& cfg, const ParamPoint& pt);

}  // namespace sbo
