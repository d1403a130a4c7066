#include "sbo/fourier_verifier.hpp"

#include "sbo/linalg.hpp"

#include <stdexcept>

namespace sbo {

Rational CoeffTable::at(int h, int i, int j) const {
    if (h < 0 || i < 0 || j < 0) return 0;
    auto it = entries_.find({h, i, j});
    return it == entries_.end() ? Rational(0) : it->second;
}

void CoeffTable::set(int h, int i, int j, const Rational& c) { entries_[{h, i, j}] = c; }

namespace {

long slash_index(const PairConfig& cfg, const ParamPoint& pt) {
    const auto fl = lattice_flags(cfg, pt);
    if (!fl.in_slash) throw std::invalid_argument("parameter point is not on //");
    return *fl.k;
}

// Γ(n/2 + i) for even n: an integer factorial. All our block dimensions are even.
Rational gamma_half_dim(int dim, int i) {
    if (dim % 2 != 0) throw std::logic_error("odd block dimension");
    return factorial(dim / 2 + i - 1);
}

Rational two_pow(long e) { return rpow(Rational(2), e); }

}  // namespace

CoeffTable coeff_table(const PairConfig& cfg, const ParamPoint& pt) {
    const long k = slash_index(cfg, pt);
    CoeffTable t(k, ZForm::SquaredNorm);
    const int ki = static_cast<int>(k);
    if (cfg.m > 0) {
        // Γ(A)/Γ(A-j) = (A-j)_j and Γ(a/2+i)/Γ(a/2) = (a/2)_i stay polynomial,
        // which is the holomorphy on //.
        const Rational A = (2 * pt.nu + cfg.p_prime + 2) / 4;
        const Rational half_a = (pt.lambda + cfg.rho + pt.nu - cfg.rho_prime) / 2;
        for (int j = 0; 2 * j <= ki; ++j)
            for (int i = 0; i + 2 * j <= ki; ++i) {
                const int h = ki - i - 2 * j;
                Rational c = two_pow(-2 * i - 2 * h) * pochhammer(A - j, j) * pochhammer(half_a, i);
                c /= factorial(h) * factorial(i) * factorial(j) * gamma_half_dim(cfg.p_dprime, i);
                t.set(h, i, j, c);
            }
    } else {
        const int K = ki / 2;
        for (int j = 0; j <= K; ++j) {
            const int i = ki - 2 * j;
            Rational c = two_pow(-i) * pochhammer(pt.nu / 2 - K, K - j);
            c /= factorial(i) * factorial(j) * gamma_half_dim(cfg.p, i);
            t.set(0, i, j, c);
        }
    }
    return t;
}

CoeffTable complex_form(const CoeffTable& table) {
    if (table.form() != ZForm::SquaredNorm) throw std::invalid_argument("table is already in Z^j form");
    CoeffTable out(table.k(), ZForm::ComplexPower);
    for (const auto& [key, c] : table.entries()) out.set(key[0], key[1], 2 * key[2], c);
    return out;
}

bool vhatC_applies(const PairConfig& cfg, const ParamPoint& pt) {
    if (cfg.algebra != Algebra::C || cfg.m != 0) return false;
    const auto fl = lattice_flags(cfg, pt);
    if (!fl.in_slash) return false;
    const auto nu = as_long(pt.nu);
    return nu && *nu > 0 && *nu % 2 == 1 && *nu <= *fl.k;
}

CoeffTable vhatC_table(const PairConfig& cfg, const ParamPoint& pt) {
    if (!vhatC_applies(cfg, pt)) throw std::invalid_argument("v^C needs F = C, m = 0 and odd 0 < nu <= k on //");
    const long k = *lattice_flags(cfg, pt).k;
    CoeffTable t(k, ZForm::ComplexPower);
    const int ki = static_cast<int>(k);
    const int L = (ki - 1) / 2;
    const Rational half = (pt.nu - 1) / 2;
    for (int j = 0; j <= L; ++j) {
        const int i = ki - 1 - 2 * j;
        // Γ(j+3/2)/sqrt(pi) = (1/2)_{j+1}
        Rational c = two_pow(-i) * pochhammer(half - L, L - j);
        c /= factorial(i) * pochhammer(Rational(1, 2), j + 1) * gamma_half_dim(cfg.p, i);
        t.set(0, i, 2 * j + 1, c);
    }
    return t;
}

Poly table_poly(const PairConfig& cfg, const CoeffTable& table) {
    const int nv = cfg.n_vars();
    const Poly xp = cfg.m > 0 ? norm2_Xprime(cfg) : Poly::constant(nv, 1);
    const Poly xpp = norm2_Xdprime(cfg);
    Poly zpow;
    if (table.form() == ZForm::SquaredNorm) {
        zpow = norm2_Z(cfg);
    } else {
        if (cfg.algebra != Algebra::C) throw std::invalid_argument("Z^j tables need F = C");
        zpow = Poly::variable(nv, cfg.p);
    }
    Poly out(nv);
    for (const auto& [key, c] : table.entries()) {
        if (c == 0) continue;
        if (key[0] > 0 && cfg.m == 0) continue;
        out += c * (xp.pow(key[0]) * xpp.pow(key[1]) * zpow.pow(key[2]));
    }
    return out;
}

Poly uhatC(const PairConfig& cfg, const ParamPoint& pt) { return table_poly(cfg, coeff_table(cfg, pt)); }
Poly vhatC(const PairConfig& cfg, const ParamPoint& pt) { return table_poly(cfg, vhatC_table(cfg, pt)); }

PolySpace sporadic_space(const PairConfig& cfg, const ParamPoint& pt) {
    PolySpace out;
    const auto fl = lattice_flags(cfg, pt);
    if (!fl.in_slash) return out;
    const long k = *fl.k;
    const Rational shifted = pt.nu + cfg.rho_prime;
    switch (exceptional_pair(cfg)) {
        case ExceptionalPair::QuaternionTrivial:
            if (k > 0 && k % 2 == 0 && shifted == k + 4) {
                const int ell = static_cast<int>(k / 2);
                for (const auto& q : harmonic_basis(ell)) {
                    out.basis.push_back(substitute_p(q, cfg));
                    out.tags.push_back("Harmonic(" + std::to_string(ell) + ")");
                }
            }
            break;
        case ExceptionalPair::QuaternionU1:
            if (k == 2 && shifted == 6) {
                out.basis.push_back(invariant_generators(cfg).generators.back());
                out.tags.push_back("UContract");
            }
            break;
        default:
            break;
    }
    return out;
}

bool SystemReport::ok() const { return first_failure().empty(); }

std::string SystemReport::first_failure() const {
    if (!homogeneity.is_zero()) return "homogeneity";
    if (!invariance_failures.empty()) return "invariance(" + invariance_failures.front() + ")";
    for (std::size_t s = 0; s < dv.size(); ++s)
        if (!dv[s].is_zero()) return "Dv(S" + std::to_string(s + 1) + ")";
    for (std::size_t t = 0; t < dz.size(); ++t)
        if (!dz[t].is_zero()) return "Dz(T" + std::to_string(t + 1) + ")";
    return "";
}

SystemReport verify_system(const Poly& f, const PairConfig& cfg, const ParamPoint& pt, FourierVariant variant) {
    SystemReport r;
    r.homogeneity = build_homogeneity(cfg, pt).apply(f);
    for (const auto& g : m_prime_samples(cfg))
        if (!(f.linear_substitute(g.rows) == f)) r.invariance_failures.push_back(g.label);
    if (cfg.m > 0)
        for (int s = 0; s < cfg.p_prime; ++s) r.dv.push_back(build_fourier_Dv(cfg, s, pt, variant).apply(f));
    for (int t = 0; t < cfg.q; ++t) r.dz.push_back(build_fourier_Dz(cfg, t, pt, variant).apply(f));
    return r;
}

RecurrenceReport check_recurrences(const CoeffTable& table, const PairConfig& cfg, const ParamPoint& pt) {
    RecurrenceReport rep;
    auto check = [&](const char* name, int h, int i, int j, const Rational& lhs, const Rational& rhs) {
        ++rep.checked;
        if (lhs != rhs) rep.failures.push_back({name, h, i, j, lhs, rhs});
    };
    auto c = [&](int h, int i, int j) { return table.at(h, i, j); };
    const int k = static_cast<int>(table.k());
    const Rational a = pt.lambda + cfg.rho + pt.nu - cfg.rho_prime;
    const Rational shifted = pt.nu + cfg.rho_prime - cfg.q;
    const int pp = cfg.p_prime, pd = cfg.p_dprime, p = cfg.p;

    if (table.form() == ZForm::SquaredNorm) {
        for (int j = 0; 2 * j <= k; ++j)
            for (int i = 0; i + 2 * j <= k; ++i) {
                const int h = k - i - 2 * j;
                if (cfg.m > 0) {
                    if (h > 0) check("R2", h, i, j, h * (a + 2 * i) * c(h, i, j), Rational((i + 1) * (2 * i + pd)) * c(h - 1, i + 1, j));
                    if (j > 0)
                        check("R3", h, i, j, j * c(h, i, j),
                              Rational(4 * (h + 1) * (h + 2) * (2 * h + pp + 2)) * c(h + 2, i, j - 1) +
                                  Rational(4 * (h + 1) * (i + 1) * (2 * i + pd)) * c(h + 1, i + 1, j - 1));
                } else if (h == 0 && j > 0) {
                    check("R4", h, i, j, j * (shifted - 2 * j) * c(h, i, j),
                          Rational(2 * (i + 1) * (i + 2) * (2 * i + p) * (2 * i + p + 2)) * c(h, i + 2, j - 1));
                }
            }
        return rep;
    }
    if (cfg.algebra != Algebra::C) throw std::invalid_argument("Z^j recurrences need F = C");
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i + j <= k; ++i) {
            const int h = k - i - j;
            if (cfg.m > 0) {
                // h, not 2h, on the left: the Z^2 = |Z|^2 reduction to R2 forces it
                if (h > 0) check("R1_C", h, i, j, h * (a + 2 * i) * c(h, i, j), Rational((i + 1) * (2 * i + pd)) * c(h - 1, i + 1, j));
                if (j > 0)
                    check("R2_C", h, i, j, j * c(h, i, j),
                          Rational(8 * (h + 1) * (h + 2) * (2 * h + pp + 2)) * c(h + 2, i, j - 2) +
                              Rational(8 * (h + 1) * (i + 1) * (2 * i + pd)) * c(h + 1, i + 1, j - 2));
            } else if (h == 0 && j > 0) {
                check("R3_C", h, i, j, j * (shifted - j) * c(h, i, j),
                      Rational(4 * (i + 1) * (i + 2) * (2 * i + p) * (2 * i + p + 2)) * c(h, i + 2, j - 2));
            }
        }
    return rep;
}

std::vector<std::string> poly_space_tags(const PairConfig& cfg, const ParamPoint& pt) {
    if (!is_strongly_spherical(cfg)) throw std::invalid_argument(cfg.label() + " is not strongly spherical");
    std::vector<std::string> tags;
    const auto fl = lattice_flags(cfg, pt);
    if (!fl.in_slash) return tags;
    tags.push_back("C");
    if (vhatC_applies(cfg, pt)) tags.push_back("vC");
    const long k = *fl.k;
    const Rational shifted = pt.nu + cfg.rho_prime;
    switch (exceptional_pair(cfg)) {
        case ExceptionalPair::QuaternionTrivial:
            if (k > 0 && k % 2 == 0 && shifted == k + 4)
                tags.insert(tags.end(), static_cast<std::size_t>(k + 1), "Harmonic(" + std::to_string(k / 2) + ")");
            break;
        case ExceptionalPair::QuaternionU1:
            if (k == 2 && shifted == 6) tags.push_back("UContract");
            break;
        default:
            break;
    }
    return tags;
}

PolySpace classify_poly_space(const PairConfig& cfg, const ParamPoint& pt) {
    if (!is_strongly_spherical(cfg)) throw std::invalid_argument(cfg.label() + " is not strongly spherical");
    PolySpace out;
    if (!lattice_flags(cfg, pt).in_slash) return out;
    out.basis.push_back(uhatC(cfg, pt));
    out.tags.push_back("C");
    if (vhatC_applies(cfg, pt)) {
        out.basis.push_back(vhatC(cfg, pt));
        out.tags.push_back("vC");
    }
    auto sp = sporadic_space(cfg, pt);
    for (std::size_t s = 0; s < sp.basis.size(); ++s) {
        out.basis.push_back(std::move(sp.basis[s]));
        out.tags.push_back(std::move(sp.tags[s]));
    }
    if (poly_rank(out.basis) != out.dimension()) throw std::logic_error("constructed solutions are dependent");
    if (out.tags != poly_space_tags(cfg, pt)) throw std::logic_error("tag listing disagrees with the constructed basis");
    return out;
}

}  // namespace sbo
