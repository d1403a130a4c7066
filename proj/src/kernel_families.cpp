#include "sbo/kernel_families.hpp"

#include "sbo/poly_algebra.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace sbo {

SmoothKernel smooth_kernel(const PairConfig& cfg, const ParamPoint& pt) {
    SmoothKernel k;
    k.norm_exponent = -2 * (pt.nu + cfg.rho_prime);
    k.xpp_exponent = pt.lambda - cfg.rho + pt.nu + cfg.rho_prime;
    k.normalization = uA_normalization(cfg);
    const auto v = value_at(k.normalization, pt);
    if (v.order < 0) throw std::domain_error("u^A normalization is singular");
    k.normalization_value = v.order > 0 ? 0.0 : v.numeric;
    return k;
}

KernelValue uA_eval(const PairConfig& cfg, const SmoothKernel& kernel, const std::vector<double>& coords) {
    const int p = cfg.p, q = cfg.q;
    if (static_cast<int>(coords.size()) != p + q) throw std::invalid_argument("coordinate count mismatch");
    double x2 = 0, xpp2 = 0, z2 = 0;
    for (int a = 0; a < p; ++a) x2 += coords[a] * coords[a];
    for (int a = cfg.p_prime; a < p; ++a) xpp2 += coords[a] * coords[a];
    for (int j = 0; j < q; ++j) z2 += coords[p + j] * coords[p + j];
    if (xpp2 == 0.0) throw std::domain_error("u^A is evaluated on X'' = 0");
    const double n4 = x2 * x2 + z2;
    const double a = to_double(kernel.norm_exponent), b = to_double(kernel.xpp_exponent);
    KernelValue out;
    out.value = kernel.normalization_value * std::pow(n4, a / 4) * std::pow(xpp2, b / 2);
    out.gradient.resize(static_cast<std::size_t>(p + q));
    // d log(N^a |X''|^b): (a/4) dN4/N4 + (b/2) d|X''|^2/|X''|^2
    for (int c = 0; c < p; ++c) {
        double g = a * x2 * coords[c] / n4;
        if (c >= cfg.p_prime) g += b * coords[c] / xpp2;
        out.gradient[c] = out.value * g;
    }
    for (int j = 0; j < q; ++j) out.gradient[p + j] = out.value * a * coords[p + j] / (2 * n4);
    return out;
}

KernelValue uA_eval(const PairConfig& cfg, const ParamPoint& pt, const std::vector<double>& coords) {
    return uA_eval(cfg, smooth_kernel(cfg, pt), coords);
}

namespace {

// Structure constants as doubles for pointwise work.
struct DoubleStructure {
    int p, q;
    std::vector<double> J, B;  // same layout as HTypeStructure
    explicit DoubleStructure(const PairConfig& cfg) : p(cfg.p), q(cfg.q) {
        const HTypeStructure h(cfg);
        for (int j = 0; j < q; ++j)
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b) {
                    J.push_back(to_double(h.J(j, a, b)));
                    B.push_back(to_double(h.B(j, a, b)));
                }
    }
    double j_(int j, int a, int b) const { return J[(static_cast<std::size_t>(j) * p + a) * p + b]; }
    double b_(int j, int a, int b) const { return B[(static_cast<std::size_t>(j) * p + a) * p + b]; }

    // J_V W for V in z, W in v
    std::vector<double> jmap(const std::vector<double>& v, const std::vector<double>& w) const {
        std::vector<double> out(static_cast<std::size_t>(p), 0.0);
        for (int j = 0; j < q; ++j) {
            if (v[j] == 0.0) continue;
            for (int a = 0; a < p; ++a)
                for (int c = 0; c < p; ++c) out[a] += v[j] * j_(j, a, c) * w[c];
        }
        return out;
    }
    // [V, W] for V, W in v
    std::vector<double> bracket(const std::vector<double>& v, const std::vector<double>& w) const {
        std::vector<double> out(static_cast<std::size_t>(q), 0.0);
        for (int j = 0; j < q; ++j)
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b) out[j] += b_(j, a, b) * v[a] * w[b];
        return out;
    }
};

double dot(const std::vector<double>& a, const double* b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Split {
    std::vector<double> x, z;
    double x2 = 0, n4 = 0;
};

Split split(const PairConfig& cfg, const std::vector<double>& coords) {
    Split s;
    s.x.assign(coords.begin(), coords.begin() + cfg.p);
    s.z.assign(coords.begin() + cfg.p, coords.end());
    for (double v : s.x) s.x2 += v * v;
    double z2 = 0;
    for (double v : s.z) z2 += v * v;
    s.n4 = s.x2 * s.x2 + z2;
    return s;
}

PointResidual sum_terms(std::initializer_list<double> terms) {
    PointResidual r;
    for (double t : terms) {
        r.residual += t;
        r.scale += std::abs(t);
    }
    return r;
}

}  // namespace

PointResidual position_Dv(const PairConfig& cfg, const ParamPoint& pt, int s, const std::vector<double>& coords,
                          const KernelValue& u) {
    const DoubleStructure h(cfg);
    const auto c = split(cfg, coords);
    const double* gx = u.gradient.data();
    const double* gz = u.gradient.data() + cfg.p;
    const double shifted = to_double(pt.nu + cfg.rho_prime);
    std::vector<double> S(static_cast<std::size_t>(cfg.p), 0.0);
    S[s] = 1.0;

    const auto sx = h.bracket(S, c.x);
    const auto jzs = h.jmap(c.z, S);
    const auto s_jzx = h.bracket(S, h.jmap(c.z, c.x));
    const auto j_sx_x = h.jmap(sx, c.x);
    return sum_terms({2 * c.x[s] * shifted * u.value, c.x2 * gx[s], -0.5 * c.x2 * dot(sx, gz), 0.25 * dot(jzs, gx),
                      0.125 * dot(s_jzx, gz), -0.125 * dot(j_sx_x, gx)});
}

PointResidual position_Dz(const PairConfig& cfg, const ParamPoint& pt, int t, const std::vector<double>& coords,
                          const KernelValue& u) {
    const DoubleStructure h(cfg);
    const auto c = split(cfg, coords);
    const double* gx = u.gradient.data();
    const double* gz = u.gradient.data() + cfg.p;
    const double shifted = to_double(pt.nu + cfg.rho_prime);
    std::vector<double> T(static_cast<std::size_t>(cfg.q), 0.0);
    T[t] = 1.0;
    const double ev = dot(c.x, gx);
    const auto jtx = h.jmap(T, c.x);
    const auto jt_jzx = h.jmap(T, h.jmap(c.z, c.x));
    return sum_terms({c.z[t] * shifted * u.value, -c.z[t] * ev, c.n4 * gz[t], 0.25 * c.x2 * dot(jtx, gx),
                      -dot(jt_jzx, gx) / 16});
}

InvarianceReport verify_invariance_pointwise(const PairConfig& cfg, const ParamPoint& pt, int npoints,
                                             std::uint64_t seed, std::optional<SmoothKernel> kernel) {
    const SmoothKernel ker = kernel ? *kernel : smooth_kernel(cfg, pt);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int nv = cfg.n_vars();

    std::vector<std::vector<std::vector<double>>> mats;
    for (const auto& g : m_prime_samples(cfg)) {
        std::vector<std::vector<double>> m;
        for (const auto& row : g.rows) {
            std::vector<double> r;
            for (const auto& x : row) r.push_back(to_double(x));
            m.push_back(std::move(r));
        }
        mats.push_back(std::move(m));
    }
    const double euler_shift = to_double(-pt.lambda + cfg.rho + pt.nu + cfg.rho_prime);

    InvarianceReport rep;
    while (rep.points < npoints) {
        std::vector<double> x(static_cast<std::size_t>(nv));
        for (auto& v : x) v = gauss(rng);
        const auto c = split(cfg, x);
        double xpp2 = 0;
        for (int a = cfg.p_prime; a < cfg.p; ++a) xpp2 += x[a] * x[a];
        if (std::sqrt(xpp2) < 0.25 * std::pow(c.n4, 0.25)) continue;
        ++rep.points;
        const auto u = uA_eval(cfg, ker, x);
        for (int s = 0; s < cfg.p_prime; ++s) rep.max_dv = std::max(rep.max_dv, position_Dv(cfg, pt, s, x, u).relative());
        for (int t = 0; t < cfg.q; ++t) rep.max_dz = std::max(rep.max_dz, position_Dz(cfg, pt, t, x, u).relative());
        double e = 0;
        for (int a = 0; a < nv; ++a) e += (a < cfg.p ? 1.0 : 2.0) * x[a] * u.gradient[a];
        rep.max_euler = std::max(rep.max_euler, sum_terms({e, euler_shift * u.value}).relative());
        for (const auto& m : mats) {
            std::vector<double> gx(static_cast<std::size_t>(nv), 0.0);
            for (int i = 0; i < nv; ++i)
                for (int k = 0; k < nv; ++k) gx[i] += m[i][k] * x[k];
            const double ug = uA_eval(cfg, ker, gx).value;
            const double scale = std::abs(u.value) > 0 ? std::abs(u.value) : 1.0;
            rep.max_covariance = std::max(rep.max_covariance, std::abs(ug - u.value) / scale);
        }
    }
    return rep;
}

DeltaKernel uC_kernel(const PairConfig& cfg, const ParamPoint& pt) {
    DeltaKernel out;
    // 𝓕 sends Δ_{v'}^h Δ_{v''}^i □^j δ to |X'|^{2h}|X''|^{2i}|Z|^{2j}, so the
    // delta coefficients are the polynomial coefficients.
    const CoeffTable table = coeff_table(cfg, pt);
    for (const auto& [key, c] : table.entries()) out.terms.push_back({key[0], key[1], key[2], c});
    return out;
}

// Individual pole terms may carry net_order < 0: their residues are all
// supported at the origin and cancel in the sum, which is holomorphic. A
// regular term with net_order 0 cannot cancel against them.
bool SingularKernel::nonzero() const {
    if (!cB_value.has_leading) return false;
    for (const auto& t : terms)
        if (t.net_order <= 0 && t.coeff != 0) return true;
    return false;
}

SingularKernel uB_expansion(const PairConfig& cfg, const ParamPoint& pt) {
    const auto fl = lattice_flags(cfg, pt);
    if (!fl.in_backslash) throw std::invalid_argument("parameter point is not on \\\\");
    SingularKernel out;
    out.l = *fl.l;
    out.cB = cB(cfg, pt);
    const Direction along{1, -1};
    out.cB_value = value_at(out.cB, pt, along);

    const int l = static_cast<int>(out.l);
    const Rational half = (pt.nu + cfg.rho_prime) / 2;
    const Rational half_dprime = ratio(cfg.p_dprime, 2);
    for (int k = 0; k <= l; ++k) {
        const Rational outer = rpow(Rational(2), 2 * l - 2 * k) * factorial(l) * pochhammer(k + half_dprime, l - k) / factorial(k);
        for (int j = 0; 2 * j <= l - k; ++j) {
            const int i = l - k - 2 * j;
            if (cfg.m == 0 && i > 0) continue;  // |X'|^{2i} = 0
            // (half)_{i+j} as a polynomial in eps along (1,-1): d(half)/d eps = -1/2
            Rational lead = 1;
            int zeros = 0;
            for (int r = 0; r < i + j; ++r) {
                const Rational f = half + r;
                if (f == 0) {
                    lead *= Rational(-1, 2);
                    ++zeros;
                } else {
                    lead *= f;
                }
            }
            SingularTerm t;
            t.k = k;
            t.i = i;
            t.j = j;
            t.coeff = outer * ((i + j) % 2 == 0 ? 1 : -1) * rpow(Rational(2), i) * lead / (factorial(i) * factorial(j));
            t.norm_exponent = -2 * (pt.nu + cfg.rho_prime) - 4 * i - 4 * j;
            // |X'|^{2i} N(X',Z)^s in polar coordinates on n̄' is r^{s+2i} times an
            // even profile against r^{2ρ'-1}dr, so poles sit at s+2i+2ρ' in -2Z>=0.
            // For m = 0 it is |Z|^{s/2} on R^q with poles at s/2 in -q-2Z>=0.
            if (cfg.m > 0) {
                const Rational z = t.norm_exponent + 2 * i + 2 * cfg.rho_prime;
                t.norm_pole = is_integer(z) && z <= 0 && z.get_num() % 2 == 0;
            } else {
                const Rational z = t.norm_exponent / 2 + cfg.q;
                t.norm_pole = is_integer(z) && z <= 0 && z.get_num() % 2 == 0;
            }
            t.net_order = out.cB_value.order + zeros - (t.norm_pole ? 1 : 0);
            out.terms.push_back(std::move(t));
        }
    }
    return out;
}

std::string support_name(Support s) {
    switch (s) {
        case Support::Empty: return "empty";
        case Support::Origin: return "origin";
        case Support::NbarPrime: return "nbar'";
        case Support::Nbar: return "nbar";
    }
    return "?";
}

Support support_of(Family family, const PairConfig& cfg, const ParamPoint& pt) {
    const auto fl = lattice_flags(cfg, pt);
    switch (family) {
        case Family::A:
            if (fl.in_L) return Support::Empty;
            if (fl.in_slash) return Support::Origin;
            if (fl.in_backslash) return Support::NbarPrime;
            return Support::Nbar;
        case Family::B:
            if (!fl.in_backslash) throw std::invalid_argument("u^B is only defined on \\\\");
            return fl.in_X && !fl.in_L ? Support::Origin : Support::NbarPrime;
        case Family::C:
            if (!fl.in_slash) throw std::invalid_argument("u^C is only defined on //");
            return Support::Origin;
    }
    return Support::Nbar;
}

Support support_from_expansion(const SingularKernel& kernel) {
    bool any = false;
    for (const auto& t : kernel.terms) {
        if (t.net_order > 0 || t.coeff == 0) continue;
        any = true;
        if (!t.norm_pole) return Support::NbarPrime;
    }
    return any ? Support::Origin : Support::Empty;
}

KernelDescription classify_sbo_space(const PairConfig& cfg, const ParamPoint& pt) {
    if (!is_strongly_spherical(cfg)) throw std::invalid_argument(cfg.label() + " is not strongly spherical");
    KernelDescription d;
    const auto fl = lattice_flags(cfg, pt);
    if (!fl.in_slash) {
        d.families.push_back("A");
        d.supports.push_back(support_of(Family::A, cfg, pt));
        d.dimension = 1;
        return d;
    }
    if (fl.in_L) {
        d.families.push_back("B");
        d.supports.push_back(support_of(Family::B, cfg, pt));
    }
    for (const auto& tag : poly_space_tags(cfg, pt)) {
        d.families.push_back(tag);
        d.supports.push_back(Support::Origin);
    }
    d.dimension = static_cast<int>(d.families.size());
    return d;
}

}  // namespace sbo
