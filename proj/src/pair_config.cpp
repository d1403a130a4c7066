#include "sbo/pair_config.hpp"

#include <stdexcept>

namespace sbo {

std::string fcase_name(FCase f) {
    switch (f) {
        case FCase::FullUnitary: return "full";
        case FCase::Trivial: return "trivial";
        case FCase::U1Direction: return "u1";
        case FCase::TransitiveOther: return "transitive";
    }
    return "?";
}

FCase parse_fcase(const std::string& tag) {
    if (tag == "full") return FCase::FullUnitary;
    if (tag == "trivial") return FCase::Trivial;
    if (tag == "u1") return FCase::U1Direction;
    if (tag == "transitive") return FCase::TransitiveOther;
    throw std::invalid_argument("unknown F case '" + tag + "' (expected full, trivial, u1, transitive)");
}

std::string PairConfig::label() const {
    return "(" + algebra_name(algebra) + "," + std::to_string(n) + "," + std::to_string(m) + "," +
           fcase_name(f) + ")";
}

bool operator==(const PairConfig& a, const PairConfig& b) {
    return a.algebra == b.algebra && a.n == b.n && a.m == b.m && a.f == b.f && a.u_dir == b.u_dir;
}

PairConfig derive(Algebra alg, int n, int m, FCase f, std::optional<HNum> u_dir) {
    if (alg == Algebra::R) throw std::invalid_argument("the real case is not part of this toolkit");
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (m < 0 || m >= n) throw std::invalid_argument("need 0 <= m < n");
    if (alg == Algebra::O && (n != 1 || m != 0)) throw std::invalid_argument("octonionic pairs need n = 1, m = 0");
    if (f == FCase::U1Direction) {
        if (alg != Algebra::H) throw std::invalid_argument("a U(1) direction only makes sense for H");
        if (!u_dir) u_dir = HNum::unit(Algebra::H, 1);
        if (u_dir->algebra() != Algebra::H || !u_dir->is_imaginary() || u_dir->norm2() != 1)
            throw std::invalid_argument("U must be a unit imaginary quaternion");
    } else {
        u_dir.reset();
    }
    PairConfig c;
    c.algebra = alg;
    c.n = n;
    c.m = m;
    c.f = f;
    c.u_dir = std::move(u_dir);
    const int d = real_dim(alg);
    c.p = n * d;
    c.q = d - 1;
    c.p_prime = m * d;
    c.p_dprime = c.p - c.p_prime;
    c.rho = ratio(c.p + 2 * c.q, 2);
    c.rho_prime = ratio(c.p_prime + 2 * c.q, 2);
    return c;
}

PairConfig derive(const PairConfig& raw) { return derive(raw.algebra, raw.n, raw.m, raw.f, raw.u_dir); }

bool is_strongly_spherical(const PairConfig& cfg) {
    const int codim = cfg.n - cfg.m;
    switch (cfg.algebra) {
        case Algebra::C:
            // U(1) alone is transitive on S^1; beyond that F has to do the work.
            if (codim == 1) return cfg.f != FCase::U1Direction;
            return cfg.f == FCase::FullUnitary || cfg.f == FCase::TransitiveOther;
        case Algebra::H:
            if (codim == 1) return true;
            return cfg.f == FCase::FullUnitary || cfg.f == FCase::TransitiveOther;
        case Algebra::O:
            return cfg.n == 1 && cfg.m == 0 && cfg.f != FCase::U1Direction;
        case Algebra::R:
            return false;
    }
    return false;
}

namespace {

// Nonnegative integer t with value == -2t, if any.
std::optional<long> neg_even_index(const Rational& value) {
    Rational half = -value / 2;
    auto t = as_long(half);
    if (t && *t >= 0) return t;
    return std::nullopt;
}

// Nonnegative integer i with value == base - 2i.
std::optional<long> down_index(const Rational& value, const Rational& base) {
    return neg_even_index(value - base);
}

// Nonnegative integer i with value == base + 2i.
std::optional<long> up_index(const Rational& value, const Rational& base) {
    return neg_even_index(base - value);
}

bool in_L_with_offset(const PairConfig& cfg, const ParamPoint& pt, const Rational& nu_base) {
    auto i = down_index(pt.lambda, -cfg.rho + cfg.q - 1);
    if (!i) return false;
    if (cfg.m > 0) {
        auto j = down_index(pt.nu, -cfg.rho_prime + cfg.q - 1);
        return j && *j <= *i;
    }
    auto jp = up_index(pt.nu, nu_base);
    auto jm = down_index(pt.nu, -nu_base);
    return (jp && *jp <= *i) || (jm && *jm <= *i);
}

}  // namespace

LatticeFlags lattice_flags(const PairConfig& cfg, const ParamPoint& pt) {
    LatticeFlags fl;
    const Rational shift = cfg.rho - cfg.rho_prime;
    fl.k = neg_even_index(pt.lambda + shift - pt.nu);
    fl.l = neg_even_index(pt.lambda + shift + pt.nu);
    fl.in_slash = fl.k.has_value();
    fl.in_backslash = fl.l.has_value();
    fl.in_X = fl.in_slash && fl.in_backslash;
    fl.in_L = in_L_with_offset(cfg, pt, Rational(1));

    auto i = down_index(pt.lambda, -cfg.rho + cfg.q - 1);
    if (i) {
        auto j = up_index(pt.nu, cfg.rho_prime);
        fl.in_S1 = j && *j <= *i;
        if (j && *j == *i) {
            fl.in_S2 = true;
            fl.s2_index = *i;
        }
        fl.in_S3 = *i == 0 && pt.nu == cfg.rho_prime;
    }
    return fl;
}

bool in_L_alternate(const PairConfig& cfg, const ParamPoint& pt) {
    return in_L_with_offset(cfg, pt, cfg.rho_prime - cfg.q + 1);
}

ExceptionalPair exceptional_pair(const PairConfig& cfg) {
    if (cfg.algebra == Algebra::C && cfg.m == 0) return ExceptionalPair::ComplexRankOne;
    if (cfg.algebra == Algebra::H && cfg.n == 1 && cfg.m == 0) {
        if (cfg.f == FCase::Trivial) return ExceptionalPair::QuaternionTrivial;
        if (cfg.f == FCase::U1Direction) return ExceptionalPair::QuaternionU1;
    }
    return ExceptionalPair::None;
}

int multiplicity(const PairConfig& cfg, const ParamPoint& pt) {
    if (!is_strongly_spherical(cfg)) throw std::invalid_argument(cfg.label() + " is not strongly spherical");
    const LatticeFlags fl = lattice_flags(cfg, pt);
    switch (exceptional_pair(cfg)) {
        case ExceptionalPair::ComplexRankOne:
            if (fl.in_S1) return 3;
            break;
        case ExceptionalPair::QuaternionTrivial:
            if (fl.in_S2) return static_cast<int>(2 * *fl.s2_index + 4);
            break;
        case ExceptionalPair::QuaternionU1:
            if (fl.in_S3) return 2;
            break;
        case ExceptionalPair::None:
            break;
    }
    return fl.in_L ? 2 : 1;
}

bool irreducible(const PairConfig& cfg, const Rational& lambda) {
    const Rational base = cfg.rho - cfg.q + 1;
    return !up_index(lambda, base) && !up_index(-lambda, base);
}

}  // namespace sbo
