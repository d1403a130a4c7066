#include "sbo/gamma_expr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sbo {

bool operator<(const Affine& a, const Affine& b) {
    if (a.c0 != b.c0) return a.c0 < b.c0;
    if (a.cl != b.cl) return a.cl < b.cl;
    return a.cn < b.cn;
}

std::string to_string(const Affine& a) {
    std::ostringstream os;
    bool first = true;
    auto term = [&](const Rational& c, const char* sym) {
        if (c == 0) return;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? "-" : "+");
        }
        if (*sym == '\0') {
            os << to_string(mag);
        } else {
            if (mag != 1) os << to_string(mag);
            os << sym;
        }
        first = false;
    };
    term(a.c0, "");
    term(a.cl, "λ");
    term(a.cn, "ν");
    if (first) os << "0";
    return os.str();
}

GammaExpr GammaExpr::constant(const Rational& r) {
    GammaExpr e;
    e.prefactor_ = r;
    return e;
}

GammaExpr GammaExpr::gamma(const Affine& arg, int exponent) {
    GammaExpr e;
    e.factors_.push_back({arg, exponent});
    e.canonicalize();
    return e;
}

GammaExpr GammaExpr::pi_half(int j) {
    GammaExpr e;
    e.pi_half_ = j;
    return e;
}

GammaExpr GammaExpr::two_to(const Affine& exponent) {
    GammaExpr e;
    e.two_ = exponent;
    return e;
}

GammaExpr GammaExpr::reciprocal() const {
    if (prefactor_ == 0) throw std::domain_error("reciprocal of a zero GammaExpr");
    GammaExpr e;
    e.prefactor_ = 1 / prefactor_;
    e.pi_half_ = -pi_half_;
    e.two_ = Rational(-1) * two_;
    for (const auto& f : factors_) e.factors_.push_back({f.arg, -f.exponent});
    return e;
}

GammaExpr& GammaExpr::operator*=(const GammaExpr& o) {
    prefactor_ *= o.prefactor_;
    pi_half_ += o.pi_half_;
    two_ = two_ + o.two_;
    factors_.insert(factors_.end(), o.factors_.begin(), o.factors_.end());
    canonicalize();
    return *this;
}

void GammaExpr::canonicalize() {
    std::map<Affine, int> merged;
    for (const auto& f : factors_) merged[f.arg] += f.exponent;
    factors_.clear();
    for (const auto& [arg, e] : merged) {
        if (e == 0) continue;
        // Γ(1) and Γ(2) are 1: drop them so printing stays tidy.
        if (arg.is_constant() && (arg.c0 == 1 || arg.c0 == 2)) continue;
        factors_.push_back({arg, e});
    }
}

bool operator==(const GammaExpr& a, const GammaExpr& b) {
    if (a.prefactor_ != b.prefactor_ || a.pi_half_ != b.pi_half_ || !(a.two_ == b.two_)) return false;
    if (a.factors_.size() != b.factors_.size()) return false;
    for (std::size_t i = 0; i < a.factors_.size(); ++i)
        if (!(a.factors_[i].arg == b.factors_[i].arg) || a.factors_[i].exponent != b.factors_[i].exponent)
            return false;
    return true;
}

std::string to_string(const GammaExpr& e) {
    std::ostringstream os;
    os << "(" << to_string(e.prefactor()) << ")";
    if (e.pi_half_power() != 0) os << " * pi^(" << e.pi_half_power() << "/2)";
    if (!(e.two_power() == Affine{0, 0, 0})) os << " * 2^(" << to_string(e.two_power()) << ")";
    for (const auto& f : e.factors()) os << " * Γ(" << to_string(f.arg) << ")^" << f.exponent;
    return os.str();
}

int gamma_order(const Rational& z) {
    auto n = as_long(z);
    return (n && *n <= 0) ? -1 : 0;
}

int order_at(const GammaExpr& expr, const ParamPoint& pt) {
    int ord = 0;
    for (const auto& f : expr.factors()) ord += f.exponent * gamma_order(f.arg.eval(pt));
    return ord;
}

std::optional<ExactGamma> exact_gamma(const Rational& z) {
    if (z <= 0) return std::nullopt;
    if (auto n = as_long(z)) {
        if (*n > 400) return std::nullopt;
        return ExactGamma{factorial(*n - 1), 0};
    }
    Rational twice = 2 * z;
    if (auto t = as_long(twice)) {
        // z = n + 1/2 : Γ = (2n)! sqrt(pi) / (4^n n!)
        long n = (*t - 1) / 2;
        if (n > 200) return std::nullopt;
        return ExactGamma{factorial(2 * n) / (rpow(Rational(4), n) * factorial(n)), 1};
    }
    return std::nullopt;
}

namespace {

// Accumulates a leading coefficient as an exact part times a double part.
struct Leading {
    Rational exact = 1;
    int pi_half = 0;
    double inexact = 1.0;  // product of pieces that could not be done exactly
    bool all_exact = true;
    bool defined = true;
    int order = 0;

    void mul_exact(const Rational& r) { exact *= r; }
    void mul_double(double d) {
        inexact *= d;
        all_exact = false;
    }
};

// Fractional part in [0,1).
Rational frac(const Rational& r) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return r - Rational(fl);
}

// Multiply in Γ(z0 + t eps)^e.
void gamma_power(Leading& acc, const Rational& z0, const Rational& t, int e) {
    if (e == 0) return;
    if (auto n = as_long(z0); n && *n <= 0) {
        acc.order -= e;
        if (t == 0) {
            acc.defined = false;
            return;
        }
        // Γ(-n + t eps) ~ (-1)^n / (n! t eps)
        Rational lead = ((*n % 2 == 0) ? Rational(1) : Rational(-1)) / (factorial(-*n) * t);
        acc.mul_exact(rpow(lead, e));
        return;
    }
    if (auto g = exact_gamma(z0)) {
        acc.mul_exact(rpow(g->r, e));
        acc.pi_half += g->pi_half * e;
        return;
    }
    acc.mul_double(std::pow(std::tgamma(to_double(z0)), e));
}

// Multiply in (z0 + t eps)_n ^ e, tracking zeros of the linear factors.
void pochhammer_power(Leading& acc, const Rational& z0, const Rational& t, long n, int e) {
    for (long i = 0; i < n; ++i) {
        Rational v = z0 + i;
        if (v == 0) {
            acc.order += e;
            if (t == 0) {
                acc.defined = false;
                continue;
            }
            acc.mul_exact(rpow(t, e));
        } else {
            acc.mul_exact(rpow(v, e));
        }
    }
}

}  // namespace

OrderedValue value_at(const GammaExpr& expr, const ParamPoint& pt, Direction dir) {
    Leading acc;
    acc.mul_exact(expr.prefactor());
    acc.pi_half += expr.pi_half_power();

    Rational e2 = expr.two_power().eval(pt);
    if (auto n = as_long(e2)) {
        acc.mul_exact(rpow(Rational(2), *n));
    } else {
        acc.mul_double(std::pow(2.0, to_double(e2)));
    }

    // Group factors by (slope, fractional part of the argument); inside a
    // group all arguments differ by integers.
    struct Item {
        Rational z0;
        int e;
    };
    std::map<std::pair<Rational, Rational>, std::vector<Item>> groups;
    for (const auto& f : expr.factors()) {
        Rational z0 = f.arg.eval(pt);
        Rational t = f.arg.slope(dir.dlambda, dir.dnu);
        groups[{t, frac(z0)}].push_back({z0, f.exponent});
    }
    for (auto& [key, items] : groups) {
        const Rational& t = key.first;
        Rational base = items.front().z0;
        int total = 0;
        for (const auto& it : items) {
            base = std::min(base, it.z0);
            total += it.e;
        }
        // Γ(base + n + t eps) = Γ(base + t eps) (base + t eps)_n
        for (const auto& it : items) {
            long n = *as_long(it.z0 - base);
            pochhammer_power(acc, base, t, n, it.e);
        }
        gamma_power(acc, base, t, total);
    }

    OrderedValue out;
    out.order = acc.order;
    out.has_leading = acc.defined;
    if (!acc.defined) {
        out.numeric = std::nan("");
        return out;
    }
    const double pi_part = std::pow(std::numbers::pi, acc.pi_half / 2.0);
    out.numeric = to_double(acc.exact) * acc.inexact * pi_part;
    if (acc.all_exact) {
        out.exact = acc.exact;
        out.exact_pi_half = acc.pi_half;
    }
    return out;
}

double numeric_value(const GammaExpr& expr, double lambda, double nu) {
    auto ev = [&](const Affine& a) { return to_double(a.c0) + to_double(a.cl) * lambda + to_double(a.cn) * nu; };
    double v = to_double(expr.prefactor()) * std::pow(std::numbers::pi, expr.pi_half_power() / 2.0) *
               std::pow(2.0, ev(expr.two_power()));
    for (const auto& f : expr.factors()) v *= std::pow(std::tgamma(ev(f.arg)), f.exponent);
    return v;
}

GammaExpr duplication_reduce(const GammaExpr& expr) {
    GammaExpr out = GammaExpr::constant(expr.prefactor()) * GammaExpr::pi_half(expr.pi_half_power()) *
                    GammaExpr::two_to(expr.two_power());
    std::map<Affine, int> pending;
    for (const auto& f : expr.factors()) pending[f.arg] += f.exponent;
    const Affine half = Affine::constant(Rational(1, 2));
    for (auto& [arg, e] : pending) {
        if (e == 0) continue;
        auto partner = pending.find(arg + half);
        while (partner != pending.end() && e != 0 && partner->second != 0 && (e > 0) == (partner->second > 0)) {
            const int s = e > 0 ? 1 : -1;
            // Γ(f)Γ(f+1/2) = sqrt(pi) 2^(1-2f) Γ(2f)
            out *= GammaExpr::pi_half(s) * GammaExpr::two_to(Rational(s) * (Affine::constant(1) - Rational(2) * arg)) *
                   GammaExpr::gamma(Rational(2) * arg, s);
            e -= s;
            partner->second -= s;
        }
    }
    for (const auto& [arg, e] : pending)
        if (e != 0) out *= GammaExpr::gamma(arg, e);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Affine shifted_half(const PairConfig& cfg, int nu_sign) {
    // (λ + ρ ± ν - ρ')/2
    return {(cfg.rho - cfg.rho_prime) / 2, Rational(1, 2), ratio(nu_sign, 2)};
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Rational sign_power(long k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace

GammaExpr uA_normalization(const PairConfig& cfg) {
    return GammaExpr::gamma(shifted_half(cfg, -1), -1) * GammaExpr::gamma(shifted_half(cfg, +1), -1);
}

GammaExpr cB(const PairConfig& cfg, const ParamPoint& pt) {
    auto fl = lattice_flags(cfg, pt);
    if (!fl.in_backslash) throw std::invalid_argument("c^B needs a point on the \\\\ lattice");
    const long l = *fl.l;
    if (cfg.m == 0) return GammaExpr::gamma({Rational(-floor_div(l, 2)), 0, Rational(-1, 2)}, -1);
    GammaExpr base = GammaExpr::gamma(shifted_half(cfg, -1), -1);
    if (2 * l <= cfg.p_prime) return base;
    const Affine a{ratio(cfg.p_prime + 2, 4), 0, Rational(1, 2)};
    const long shift = floor_div(2 * l - cfg.p_prime + 2, 4);
    return base * GammaExpr::gamma(a) * GammaExpr::gamma(a + Affine::constant(shift), -1);
}

GammaExpr residue_constant_AC(const PairConfig& cfg, long k) {
    GammaExpr c = GammaExpr::constant(sign_power(k) * factorial(k)) * GammaExpr::pi_half(cfg.p + cfg.q) *
                  GammaExpr::gamma({cfg.rho_prime / 2, 0, Rational(1, 2)}, -1);
    if (cfg.m > 0) {
        c *= GammaExpr::gamma({ratio(cfg.p_prime, 4), 0, Rational(1, 2)});
        c *= GammaExpr::gamma({ratio(cfg.p_prime, 2), 0, Rational(1)}, -1);
    } else {
        c *= GammaExpr::gamma({Rational(-floor_div(k, 2)), 0, Rational(1, 2)});
        c *= GammaExpr::constant(rpow(Rational(2), -k));
        c *= GammaExpr::gamma({Rational(-k), 0, Rational(1)}, -1);
    }
    return c;
}

GammaExpr residue_constant_AC(const PairConfig& cfg, const ParamPoint& pt) {
    auto fl = lattice_flags(cfg, pt);
    if (!fl.in_slash) throw std::invalid_argument("residue constant A/C needs a point on the // lattice");
    return residue_constant_AC(cfg, *fl.k);
}

GammaExpr residue_constant_AB(const PairConfig& cfg, long l, bool alternate) {
    GammaExpr c = GammaExpr::constant(sign_power(l) * rpow(Rational(2), -l)) * GammaExpr::pi_half(cfg.p_dprime) *
                  GammaExpr::gamma(Affine::constant(ratio(cfg.p_dprime, 2) + l), -1);
    if (cfg.m > 0) {
        if (2 * l > cfg.p_prime) {
            const Affine a{ratio(cfg.p_prime + 2, 4), 0, Rational(1, 2)};
            const long shift = floor_div(2 * l - cfg.p_prime + 2, 4);
            c *= GammaExpr::gamma(a + Affine::constant(shift)) * GammaExpr::gamma(a, -1);
        }
        return c;
    }
    c *= GammaExpr::gamma({Rational(-floor_div(l, 2)), 0, Rational(-1, 2)});
    if (alternate)
        c *= GammaExpr::gamma({Rational(-l), 0, Rational(-1)}, -1);
    else
        c *= GammaExpr::gamma(shifted_half(cfg, -1), -1);
    return c;
}

GammaExpr residue_constant_AB(const PairConfig& cfg, const ParamPoint& pt, bool alternate) {
    auto fl = lattice_flags(cfg, pt);
    if (!fl.in_backslash) throw std::invalid_argument("residue constant A/B needs a point on the \\\\ lattice");
    return residue_constant_AB(cfg, *fl.l, alternate);
}

bool uA_is_zero(const PairConfig& cfg, const ParamPoint& pt) {
    auto fl = lattice_flags(cfg, pt);
    if (fl.in_slash) return order_at(residue_constant_AC(cfg, *fl.k), pt) >= 1;
    if (fl.in_backslash) return order_at(residue_constant_AB(cfg, *fl.l), pt) >= 1;
    return false;
}

}  // namespace sbo
