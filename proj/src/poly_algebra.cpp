#include "sbo/poly_algebra.hpp"

#include "sbo/hypercomplex.hpp"

#include <functional>
#include <stdexcept>

namespace sbo {

HTypeStructure::HTypeStructure(const PairConfig& cfg) : p_(cfg.p), q_(cfg.q) {
    const Algebra alg = cfg.algebra;
    const int d = cfg.field_dim();
    const auto total = static_cast<std::size_t>(q_) * static_cast<std::size_t>(p_) * static_cast<std::size_t>(p_);
    j_.assign(total, Rational(0));
    br_.assign(total, Rational(0));
    for (int j = 0; j < q_; ++j) {
        const HNum t = HNum::unit(alg, j + 1);
        for (int b = 0; b < p_; ++b) {
            const HNum sb = HNum::unit(alg, b % d);
            const HNum img = Rational(-4) * (t * sb);
            for (int e = 0; e < d; ++e) j_[idx(j, (b / d) * d + e, b)] = img[e];
        }
    }
    for (int a = 0; a < p_; ++a) {
        for (int b = 0; b < p_; ++b) {
            if (a / d != b / d) continue;
            const HNum w = Rational(4) * (HNum::unit(alg, a % d) * HNum::unit(alg, b % d).conj());
            for (int j = 0; j < q_; ++j) br_[idx(j, a, b)] = w[j + 1];
        }
    }
}

std::vector<int> HTypeStructure::weights() const {
    std::vector<int> w(static_cast<std::size_t>(p_ + q_), 1);
    for (int j = 0; j < q_; ++j) w[static_cast<std::size_t>(p_ + j)] = 2;
    return w;
}

namespace {

Poly var(int nv, int i) { return Poly::variable(nv, i); }

// Sum_a field[a] d_{offset + a}
DiffOp directional(const std::vector<Poly>& field, int offset, int nv) {
    DiffOp d(nv);
    for (std::size_t a = 0; a < field.size(); ++a) {
        if (field[a].is_zero()) continue;
        Exponent alpha{};
        alpha[static_cast<std::size_t>(offset) + a] = 1;
        d.add_term(alpha, field[a]);
    }
    return d;
}

Rational coefficient_nu_rho(const PairConfig& cfg, const ParamPoint& pt) { return pt.nu + cfg.rho_prime; }

}  // namespace

DiffOp build_fourier_Dv(const PairConfig& cfg, int s, const ParamPoint& pt, FourierVariant variant) {
    if (cfg.m == 0) throw std::invalid_argument("D_v(S) needs m > 0");
    if (s < 0 || s >= cfg.p_prime) throw std::out_of_range("S must be a basis vector of v'");
    const HTypeStructure h(cfg);
    const int nv = h.nvars(), p = h.p(), q = h.q();
    const DiffOp lap = laplacian(nv, 0, p);

    // d_{J_Z S}: field a -> sum_j z_j J(j,a,s)
    std::vector<Poly> jzs(static_cast<std::size_t>(p), Poly(nv));
    for (int a = 0; a < p; ++a)
        for (int j = 0; j < q; ++j)
            if (h.J(j, a, s) != 0) jzs[static_cast<std::size_t>(a)] += h.J(j, a, s) * var(nv, h.z_var(j));

    // d_{[S,X]}: field on Z, j -> sum_b B(j,s,b) x_b
    std::vector<Poly> sx(static_cast<std::size_t>(q), Poly(nv));
    for (int j = 0; j < q; ++j)
        for (int b = 0; b < p; ++b)
            if (h.B(j, s, b) != 0) sx[static_cast<std::size_t>(j)] += h.B(j, s, b) * var(nv, b);

    // P_S = 1/16 sum_j d_{J_{T_j} J_Z S} d_{T_j}
    DiffOp P(nv);
    for (int j = 0; j < q; ++j) {
        std::vector<Poly> field(static_cast<std::size_t>(p), Poly(nv));
        for (int a = 0; a < p; ++a)
            for (int i = 0; i < q; ++i) {
                Rational c = 0;
                for (int c_ = 0; c_ < p; ++c_) c += h.J(j, a, c_) * h.J(i, c_, s);
                if (c != 0) field[static_cast<std::size_t>(a)] += c * var(nv, h.z_var(i));
            }
        P += directional(field, 0, nv) * DiffOp::partial(nv, h.z_var(j));
    }
    P *= Rational(1, 16);

    // Q_S = 1/16 sum_i d_{J_{[S,S_i]} X} d_{S_i}
    DiffOp Q(nv);
    for (int i = 0; i < p; ++i) {
        std::vector<Poly> field(static_cast<std::size_t>(p), Poly(nv));
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) {
                Rational c = 0;
                for (int j = 0; j < q; ++j) c += h.B(j, s, i) * h.J(j, a, b);
                if (c != 0) field[static_cast<std::size_t>(a)] += c * var(nv, b);
            }
        Q += directional(field, 0, nv) * DiffOp::partial(nv, i);
    }
    Q *= Rational(1, 16);

    const Rational shift = variant == FourierVariant::Standard ? Rational(-1) : Rational(cfg.q - 2);
    const Rational lead = 2 * (coefficient_nu_rho(cfg, pt) + shift);
    DiffOp out = lead * DiffOp::partial(nv, s);
    out -= DiffOp::multiply_by(var(nv, s)) * lap;
    out -= Rational(1, 2) * (directional(jzs, 0, nv) * lap);
    out += Rational(1, 4) * directional(sx, p, nv);
    out += Rational(2) * P;
    out -= Rational(2) * Q;
    return out;
}

DiffOp build_fourier_Dz(const PairConfig& cfg, int t, const ParamPoint& pt, FourierVariant variant) {
    if (t < 0 || t >= cfg.q) throw std::out_of_range("T must be a basis vector of z");
    const HTypeStructure h(cfg);
    const int nv = h.nvars(), p = h.p(), q = h.q();
    const DiffOp lap = laplacian(nv, 0, p);
    const DiffOp box = laplacian(nv, p, q);

    std::vector<int> xw(static_cast<std::size_t>(nv), 0);
    for (int a = 0; a < p; ++a) xw[static_cast<std::size_t>(a)] = 1;
    const DiffOp Ev = weighted_euler(xw);

    // d_{J_T X}: field a -> sum_b x_b J(t,a,b)
    std::vector<Poly> jtx(static_cast<std::size_t>(p), Poly(nv));
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            if (h.J(t, a, b) != 0) jtx[static_cast<std::size_t>(a)] += h.J(t, a, b) * var(nv, b);

    // R_T = 1/16 sum_j d_{J_{T_j} J_T X} d_{T_j}
    DiffOp R(nv);
    for (int j = 0; j < q; ++j) {
        std::vector<Poly> field(static_cast<std::size_t>(p), Poly(nv));
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) {
                Rational c = 0;
                for (int c_ = 0; c_ < p; ++c_) c += h.J(j, a, c_) * h.J(t, c_, b);
                if (c != 0) field[static_cast<std::size_t>(a)] += c * var(nv, b);
            }
        R += directional(field, 0, nv) * DiffOp::partial(nv, h.z_var(j));
    }
    R *= Rational(1, 16);

    const DiffOp dT = DiffOp::partial(nv, h.z_var(t));
    DiffOp out = (Ev + DiffOp::identity(nv) * (coefficient_nu_rho(cfg, pt) - 2)) * dT;
    out -= DiffOp::multiply_by(var(nv, h.z_var(t))) * (lap * lap + box);
    const Rational sign = variant == FourierVariant::Standard ? Rational(-1, 4) : Rational(1, 4);
    out += sign * (directional(jtx, 0, nv) * lap);
    out += R;
    return out;
}

DiffOp build_homogeneity(const PairConfig& cfg, const ParamPoint& pt) {
    const HTypeStructure h(cfg);
    return weighted_euler(h.weights()) +
           DiffOp::identity(h.nvars()) * (pt.lambda + cfg.rho - pt.nu - cfg.rho_prime);
}

Poly norm2_Xprime(const PairConfig& cfg) { return square_norm(cfg.n_vars(), 0, cfg.p_prime); }
Poly norm2_Xdprime(const PairConfig& cfg) { return square_norm(cfg.n_vars(), cfg.p_prime, cfg.p_dprime); }
Poly norm2_Z(const PairConfig& cfg) { return square_norm(cfg.n_vars(), cfg.p, cfg.q); }
DiffOp laplacian_v(const PairConfig& cfg) { return laplacian(cfg.n_vars(), 0, cfg.p); }
DiffOp laplacian_vprime(const PairConfig& cfg) { return laplacian(cfg.n_vars(), 0, cfg.p_prime); }
DiffOp laplacian_vdprime(const PairConfig& cfg) { return laplacian(cfg.n_vars(), cfg.p_prime, cfg.p_dprime); }
DiffOp box_z(const PairConfig& cfg) { return laplacian(cfg.n_vars(), cfg.p, cfg.q); }

Poly laplacian3(const Poly& f) { return laplacian(3, 0, 3).apply(f); }

std::vector<Poly> harmonic_basis(int ell) {
    if (ell < 0) throw std::invalid_argument("negative degree");
    const DiffOp lap_xy = laplacian(3, 0, 2);
    std::vector<Poly> out;
    for (int c = 0; c <= 1 && c <= ell; ++c) {
        for (int a = ell - c; a >= 0; --a) {
            const int b = ell - c - a;
            Exponent e{};
            e[0] = static_cast<std::uint8_t>(a);
            e[1] = static_cast<std::uint8_t>(b);
            // h = sum_k alpha_k z^(c+2k) Δ_xy^k (x^a y^b),
            // alpha_{k+1} = -alpha_k / ((c+2k+1)(c+2k+2))
            Poly g = Poly::monomial(3, e);
            Poly h(3);
            Rational alpha = 1;
            for (int k = 0; !g.is_zero(); ++k) {
                h += alpha * (g * Poly::variable(3, 2).pow(c + 2 * k));
                alpha = -alpha / Rational((c + 2 * k + 1) * (c + 2 * k + 2));
                g = lap_xy.apply(g);
            }
            out.push_back(std::move(h));
        }
    }
    return out;
}

std::vector<Poly> quaternion_invariants(const PairConfig& cfg) {
    if (cfg.algebra != Algebra::H || cfg.n - cfg.m != 1)
        throw std::invalid_argument("p1, p2, p3 need H with a one-dimensional X'' block");
    const int nv = cfg.n_vars();
    std::array<Poly, 4> x, xbar, z;
    for (int e = 0; e < 4; ++e) {
        x[static_cast<std::size_t>(e)] = Poly::variable(nv, cfg.p_prime + e);
        xbar[static_cast<std::size_t>(e)] = e == 0 ? x[0] : -x[static_cast<std::size_t>(e)];
        z[static_cast<std::size_t>(e)] = e == 0 ? Poly(nv) : Poly::variable(nv, cfg.p + e - 1);
    }
    std::array<Poly, 4> tmp, prod;
    detail::cd_mul(xbar.data(), z.data(), tmp.data(), 4);
    detail::cd_mul(tmp.data(), x.data(), prod.data(), 4);
    return {prod[1], prod[2], prod[3]};
}

Poly substitute_p(const Poly& q3, const PairConfig& cfg) {
    if (q3.nvars() != 3) throw std::invalid_argument("q must be a polynomial in 3 variables");
    return q3.compose(quaternion_invariants(cfg));
}

InvariantGenerators invariant_generators(const PairConfig& cfg) {
    InvariantGenerators g;
    auto add = [&](Poly f, std::string name, int wdeg) {
        g.generators.push_back(std::move(f));
        g.names.push_back(std::move(name));
        g.weighted_degrees.push_back(wdeg);
    };
    if (cfg.m > 0) add(norm2_Xprime(cfg), "|X'|^2", 2);
    add(norm2_Xdprime(cfg), "|X''|^2", 2);
    if (cfg.algebra == Algebra::C) {
        g.tag = InvariantCase::Complex;
        add(Poly::variable(cfg.n_vars(), cfg.p), "Z", 2);
        return g;
    }
    add(norm2_Z(cfg), "|Z|^2", 4);
    if (cfg.algebra == Algebra::H && cfg.n - cfg.m == 1 && cfg.f == FCase::Trivial) {
        g.tag = InvariantCase::QuaternionTrivial;
        auto ps = quaternion_invariants(cfg);
        for (int j = 0; j < 3; ++j) add(ps[static_cast<std::size_t>(j)], "p" + std::to_string(j + 1), 4);
        return g;
    }
    if (cfg.algebra == Algebra::H && cfg.n - cfg.m == 1 && cfg.f == FCase::U1Direction) {
        g.tag = InvariantCase::QuaternionU1;
        auto ps = quaternion_invariants(cfg);
        Poly up(cfg.n_vars());
        for (int j = 0; j < 3; ++j) up += (*cfg.u_dir)[j + 1] * ps[static_cast<std::size_t>(j)];
        add(up, "<U,p>", 4);
        return g;
    }
    g.tag = InvariantCase::Radial;
    return g;
}

// ---------------------------------------------------------------------------

namespace {

using PointMap = std::function<NilPoint(const NilPoint&)>;

std::vector<std::vector<Rational>> matrix_of(const PairConfig& cfg, const PointMap& g) {
    const int nv = cfg.n_vars();
    std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(nv), std::vector<Rational>(static_cast<std::size_t>(nv)));
    for (int k = 0; k < nv; ++k) {
        std::vector<Rational> e(static_cast<std::size_t>(nv), Rational(0));
        e[static_cast<std::size_t>(k)] = 1;
        const auto img = real_coords(g(from_real_coords(cfg.algebra, cfg.n, e)));
        for (int i = 0; i < nv; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = img[static_cast<std::size_t>(i)];
    }
    return rows;
}

// Unit element 3/5 + 4/5 e_index.
HNum pythagorean_unit(Algebra alg, int index) {
    HNum u = HNum::real(alg, Rational(3, 5));
    u[index] = Rational(4, 5);
    return u;
}

// Samples of U(k;F) acting by right multiplication on the coordinate block
// [first, first+k) of X.
void block_unitary_samples(const PairConfig& cfg, int first, int k, const std::string& tag,
                           std::vector<MPrimeSample>& out) {
    const Algebra alg = cfg.algebra;
    std::vector<HNum> units{pythagorean_unit(alg, 1)};
    if (alg == Algebra::H) units.push_back(pythagorean_unit(alg, 2));
    for (const auto& u : units) {
        out.push_back({tag + ": right unit on first coordinate", matrix_of(cfg, [=](const NilPoint& pt) {
                           NilPoint r = pt;
                           r.x[static_cast<std::size_t>(first)] = pt.x[static_cast<std::size_t>(first)] * u;
                           return r;
                       })});
    }
    if (k >= 2) {
        out.push_back({tag + ": coordinate swap", matrix_of(cfg, [=](const NilPoint& pt) {
                           NilPoint r = pt;
                           std::swap(r.x[static_cast<std::size_t>(first)], r.x[static_cast<std::size_t>(first + 1)]);
                           return r;
                       })});
        out.push_back({tag + ": 3-4-5 rotation", matrix_of(cfg, [=](const NilPoint& pt) {
                           NilPoint r = pt;
                           const auto& a = pt.x[static_cast<std::size_t>(first)];
                           const auto& b = pt.x[static_cast<std::size_t>(first + 1)];
                           r.x[static_cast<std::size_t>(first)] = Rational(3, 5) * a - Rational(4, 5) * b;
                           r.x[static_cast<std::size_t>(first + 1)] = Rational(4, 5) * a + Rational(3, 5) * b;
                           return r;
                       })});
    }
}

std::vector<std::vector<Rational>> plane_rotation(int nv, int i, int j) {
    std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(nv), std::vector<Rational>(static_cast<std::size_t>(nv), Rational(0)));
    for (int k = 0; k < nv; ++k) rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = 1;
    const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
    rows[ui][ui] = Rational(3, 5);
    rows[ui][uj] = Rational(-4, 5);
    rows[uj][ui] = Rational(4, 5);
    rows[uj][uj] = Rational(3, 5);
    return rows;
}

}  // namespace

std::vector<MPrimeSample> m_prime_samples(const PairConfig& cfg) {
    std::vector<MPrimeSample> out;
    const Algebra alg = cfg.algebra;
    if (alg == Algebra::O) {
        // SO(8) x SO(7) plane rotations; the true M' = Spin(7) sits inside.
        const int nv = cfg.n_vars();
        for (auto [i, j] : {std::pair{0, 1}, {2, 5}, {3, 7}, {8, 11}, {9, 14}, {10, 13}})
            out.push_back({"O: plane rotation " + std::to_string(i) + "," + std::to_string(j), plane_rotation(nv, i, j)});
        return out;
    }
    // a in U(1;F): X -> aX, Z -> a Z a^{-1}
    std::vector<HNum> as{pythagorean_unit(alg, 1)};
    if (alg == Algebra::H) {
        as.push_back(pythagorean_unit(alg, 2));
        as.push_back(HNum(alg, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
        as.push_back(HNum(alg, {Rational(2, 7), Rational(3, 7), Rational(0), Rational(6, 7)}));
    }
    for (const auto& a : as) {
        out.push_back({"a: " + to_json(NilPoint(HVec{a}, HNum(alg))), matrix_of(cfg, [=](const NilPoint& pt) {
                           HVec x;
                           for (const auto& xr : pt.x) x.push_back(a * xr);
                           return NilPoint(std::move(x), (a * pt.z) * a.conj());
                       })});
    }
    if (cfg.m > 0) block_unitary_samples(cfg, 0, cfg.m, "b", out);
    const int codim = cfg.n - cfg.m;
    switch (cfg.f) {
        case FCase::FullUnitary:
            block_unitary_samples(cfg, cfg.m, codim, "c", out);
            break;
        case FCase::U1Direction: {
            HNum c = HNum::real(alg, Rational(3, 5)) + Rational(4, 5) * *cfg.u_dir;
            out.push_back({"c: exp(tU)", matrix_of(cfg, [=](const NilPoint& pt) {
                               NilPoint r = pt;
                               for (int s = cfg.m; s < cfg.n; ++s)
                                   r.x[static_cast<std::size_t>(s)] = pt.x[static_cast<std::size_t>(s)] * c;
                               return r;
                           })});
            break;
        }
        case FCase::Trivial:
        case FCase::TransitiveOther:
            break;
    }
    return out;
}

bool m_prime_invariance_check(const Poly& f, const std::vector<MPrimeSample>& samples) {
    for (const auto& g : samples)
        if (!(f.linear_substitute(g.rows) == f)) return false;
    return true;
}

}  // namespace sbo
