#include "sbo/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace sbo {

int total_degree(const Exponent& e) {
    int s = 0;
    for (auto v : e) s += v;
    return s;
}

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
}

namespace {

void check_nvars(int nvars) {
    if (nvars < 0 || nvars > kMaxVars) throw std::invalid_argument("variable count out of range");
}

void check_same(int a, int b) {
    if (a != b) throw std::invalid_argument("dimension mismatch between polynomials/operators");
}

}  // namespace

Poly::Poly(int nvars) : nvars_(nvars) { check_nvars(nvars); }

Poly Poly::constant(int nvars, const Rational& c) {
    Poly f(nvars);
    f.add_term(Exponent{}, c);
    return f;
}

Poly Poly::variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw std::out_of_range("variable index");
    Exponent e{};
    e[static_cast<std::size_t>(index)] = 1;
    return monomial(nvars, e);
}

Poly Poly::monomial(int nvars, const Exponent& e, const Rational& c) {
    Poly f(nvars);
    f.add_term(e, c);
    return f;
}

int Poly::degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

Rational Poly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    for (int i = nvars_; i < kMaxVars; ++i)
        if (e[static_cast<std::size_t>(i)] != 0) throw std::invalid_argument("exponent uses a variable out of range");
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    check_same(nvars_, o.nvars_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same(nvars_, o.nvars_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    check_same(a.nvars_, b.nvars_);
    Poly out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponent e{};
            for (int i = 0; i < a.nvars_; ++i) {
                const auto k = static_cast<std::size_t>(i);
                const int v = ea[k] + eb[k];
                if (v > 255) throw std::overflow_error("exponent overflow");
                e[k] = static_cast<std::uint8_t>(v);
            }
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Poly Poly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power of a polynomial");
    Poly result = constant(nvars_, 1);
    Poly base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

Poly Poly::derivative(int var, int times) const {
    Exponent alpha{};
    alpha[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(times);
    return derivative(alpha);
}

Poly Poly::derivative(const Exponent& alpha) const {
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponent ne = e;
        Rational factor = c;
        bool vanishes = false;
        for (int i = 0; i < nvars_ && !vanishes; ++i) {
            const auto k = static_cast<std::size_t>(i);
            if (alpha[k] == 0) continue;
            if (e[k] < alpha[k]) {
                vanishes = true;
                break;
            }
            for (int t = 0; t < alpha[k]; ++t) factor *= e[k] - t;
            ne[k] = static_cast<std::uint8_t>(e[k] - alpha[k]);
        }
        if (!vanishes) out.add_term(ne, factor);
    }
    return out;
}

Poly Poly::compose(const std::vector<Poly>& images) const {
    if (static_cast<int>(images.size()) != nvars_) throw std::invalid_argument("compose needs one image per variable");
    const int target = images.empty() ? 0 : images.front().nvars();
    for (const auto& g : images) check_same(g.nvars(), target);
    std::vector<std::vector<Poly>> powers(static_cast<std::size_t>(nvars_));
    auto power_of = [&](int var, int k) -> const Poly& {
        auto& cache = powers[static_cast<std::size_t>(var)];
        if (cache.empty()) cache.push_back(constant(target, 1));
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[static_cast<std::size_t>(var)]);
        return cache[static_cast<std::size_t>(k)];
    };
    Poly out(target);
    for (const auto& [e, c] : terms_) {
        Poly term = constant(target, c);
        for (int i = 0; i < nvars_; ++i)
            if (e[static_cast<std::size_t>(i)] > 0) term = term * power_of(i, e[static_cast<std::size_t>(i)]);
        out += term;
    }
    return out;
}

Poly Poly::linear_substitute(const std::vector<std::vector<Rational>>& rows) const {
    std::vector<Poly> images;
    images.reserve(rows.size());
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != nvars_) throw std::invalid_argument("substitution matrix shape");
        Poly g(nvars_);
        for (int j = 0; j < nvars_; ++j) {
            Exponent e{};
            e[static_cast<std::size_t>(j)] = 1;
            g.add_term(e, row[static_cast<std::size_t>(j)]);
        }
        images.push_back(std::move(g));
    }
    return compose(images);
}

Rational Poly::evaluate(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("evaluation point dimension");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars_; ++i)
            if (e[static_cast<std::size_t>(i)]) t *= rpow(x[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);
        s += t;
    }
    return s;
}

double Poly::evaluate(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("evaluation point dimension");
    double s = 0;
    for (const auto& [e, c] : terms_) {
        double t = c.get_d();
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) t *= x[static_cast<std::size_t>(i)];
        s += t;
    }
    return s;
}

bool Poly::is_weighted_homogeneous(const std::vector<int>& weights, int* degree_out) const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int i = 0; i < nvars_; ++i) d += weights[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(i)];
        if (deg >= 0 && d != deg) return false;
        deg = d;
    }
    if (degree_out) *degree_out = deg;
    return true;
}

std::string to_string(const Poly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        Rational mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool wrote = false;
        if (mag != 1 || total_degree(e) == 0) {
            os << to_string(mag);
            wrote = true;
        }
        for (int i = 0; i < f.nvars(); ++i) {
            const int k = e[static_cast<std::size_t>(i)];
            if (k == 0) continue;
            if (wrote) os << "*";
            os << "x" << i;
            if (k > 1) os << "^" << k;
            wrote = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

DiffOp DiffOp::identity(int nvars) { return multiply_by(Poly::constant(nvars, 1)); }

DiffOp DiffOp::multiply_by(const Poly& f) {
    DiffOp d(f.nvars());
    d.add_term(Exponent{}, f);
    return d;
}

DiffOp DiffOp::partial(int nvars, int var, int times) {
    Exponent alpha{};
    alpha[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(times);
    return partial(nvars, alpha);
}

DiffOp DiffOp::partial(int nvars, const Exponent& alpha) {
    DiffOp d(nvars);
    d.add_term(alpha, Poly::constant(nvars, 1));
    return d;
}

void DiffOp::add_term(const Exponent& alpha, const Poly& coefficient) {
    check_same(nvars_, coefficient.nvars());
    if (coefficient.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(alpha, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly DiffOp::apply(const Poly& f) const {
    check_same(nvars_, f.nvars());
    Poly out(nvars_);
    for (const auto& [alpha, c] : terms_) {
        Poly df = f.derivative(alpha);
        if (!df.is_zero()) out += c * df;
    }
    return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    check_same(nvars_, o.nvars_);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
    check_same(nvars_, o.nvars_);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
    return *this;
}

DiffOp& DiffOp::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [alpha, c] : terms_) c *= s;
    return *this;
}

namespace {

// Visit every gamma <= alpha componentwise.
void for_each_sub_index(const Exponent& alpha, int nvars, const std::function<void(const Exponent&)>& fn) {
    Exponent g{};
    while (true) {
        fn(g);
        int i = 0;
        for (; i < nvars; ++i) {
            const auto k = static_cast<std::size_t>(i);
            if (g[k] < alpha[k]) {
                ++g[k];
                break;
            }
            g[k] = 0;
        }
        if (i == nvars) return;
    }
}

}  // namespace

DiffOp operator*(const DiffOp& a, const DiffOp& b) {
    check_same(a.nvars_, b.nvars_);
    const int nv = a.nvars_;
    DiffOp out(nv);
    for (const auto& [alpha, c] : a.terms_) {
        for (const auto& [beta, d] : b.terms_) {
            // c d^alpha (d . d^beta) = c sum_gamma C(alpha,gamma) (d^gamma d) d^(alpha-gamma+beta)
            for_each_sub_index(alpha, nv, [&](const Exponent& gamma) {
                Poly dd = d.derivative(gamma);
                if (dd.is_zero()) return;
                Rational binom = 1;
                Exponent rest{};
                for (int i = 0; i < nv; ++i) {
                    const auto k = static_cast<std::size_t>(i);
                    binom *= binomial(alpha[k], gamma[k]);
                    rest[k] = static_cast<std::uint8_t>(alpha[k] - gamma[k] + beta[k]);
                }
                out.add_term(rest, binom * (c * dd));
            });
        }
    }
    return out;
}

std::string to_string(const DiffOp& d) {
    if (d.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [alpha, c] : d.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c) << ")";
        for (int i = 0; i < d.nvars(); ++i) {
            const int k = alpha[static_cast<std::size_t>(i)];
            if (k == 0) continue;
            os << "*d" << i;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

DiffOp laplacian(int nvars, int first, int count) {
    DiffOp d(nvars);
    for (int i = first; i < first + count; ++i) {
        Exponent alpha{};
        alpha[static_cast<std::size_t>(i)] = 2;
        d.add_term(alpha, Poly::constant(nvars, 1));
    }
    return d;
}

DiffOp weighted_euler(const std::vector<int>& weights) {
    const int nv = static_cast<int>(weights.size());
    DiffOp d(nv);
    for (int i = 0; i < nv; ++i) {
        Exponent alpha{};
        alpha[static_cast<std::size_t>(i)] = 1;
        d.add_term(alpha, Poly::variable(nv, i) * Rational(weights[static_cast<std::size_t>(i)]));
    }
    return d;
}

Poly square_norm(int nvars, int first, int count) {
    Poly f(nvars);
    for (int i = first; i < first + count; ++i) {
        Exponent e{};
        e[static_cast<std::size_t>(i)] = 2;
        f.add_term(e, 1);
    }
    return f;
}

}  // namespace sbo
