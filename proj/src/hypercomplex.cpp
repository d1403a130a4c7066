#include "sbo/hypercomplex.hpp"

#include <json.hpp>
#include <stdexcept>

namespace sbo {

int real_dim(Algebra alg) {
    switch (alg) {
        case Algebra::R: return 1;
        case Algebra::C: return 2;
        case Algebra::H: return 4;
        case Algebra::O: return 8;
    }
    return 0;
}

std::string algebra_name(Algebra alg) {
    switch (alg) {
        case Algebra::R: return "R";
        case Algebra::C: return "C";
        case Algebra::H: return "H";
        case Algebra::O: return "O";
    }
    return "?";
}

Algebra parse_algebra(const std::string& tag) {
    if (tag == "R") return Algebra::R;
    if (tag == "C") return Algebra::C;
    if (tag == "H") return Algebra::H;
    if (tag == "O") return Algebra::O;
    throw std::invalid_argument("unknown algebra '" + tag + "' (expected R, C, H or O)");
}

HNum::HNum(Algebra alg) : alg_(alg), c_(static_cast<std::size_t>(real_dim(alg))) {}

HNum::HNum(Algebra alg, std::vector<Rational> coords) : alg_(alg), c_(std::move(coords)) {
    if (static_cast<int>(c_.size()) != real_dim(alg))
        throw std::invalid_argument("coordinate count does not match algebra " + algebra_name(alg));
}

HNum HNum::real(Algebra alg, const Rational& x) {
    HNum h(alg);
    h.c_[0] = x;
    return h;
}

HNum HNum::unit(Algebra alg, int index) {
    HNum h(alg);
    if (index < 0 || index >= h.dim()) throw std::out_of_range("unit index");
    h.c_[static_cast<std::size_t>(index)] = 1;
    return h;
}

HNum HNum::conj() const {
    HNum out = *this;
    for (std::size_t i = 1; i < out.c_.size(); ++i) out.c_[i] = -out.c_[i];
    return out;
}

HNum HNum::im() const {
    HNum out = *this;
    out.c_[0] = 0;
    return out;
}

Rational HNum::norm2() const {
    Rational s = 0;
    for (const auto& v : c_) s += v * v;
    return s;
}

bool HNum::is_zero() const {
    for (const auto& v : c_)
        if (v != 0) return false;
    return true;
}

HNum HNum::operator-() const {
    HNum out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
}

HNum& HNum::operator+=(const HNum& o) {
    if (o.alg_ != alg_) throw std::invalid_argument("algebra mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

HNum& HNum::operator-=(const HNum& o) {
    if (o.alg_ != alg_) throw std::invalid_argument("algebra mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

HNum& HNum::operator*=(const Rational& s) {
    for (auto& v : c_) v *= s;
    return *this;
}

HNum operator*(const HNum& a, const HNum& b) {
    if (a.alg_ != b.alg_) throw std::invalid_argument("algebra mismatch in product");
    HNum out(a.alg_);
    detail::cd_mul(a.c_.data(), b.c_.data(), out.c_.data(), a.dim());
    return out;
}

bool operator==(const HNum& a, const HNum& b) { return a.alg_ == b.alg_ && a.c_ == b.c_; }

HNum mul(const HNum& a, const HNum& b) { return a * b; }

HNum xy_star(const HVec& x, const HVec& y) {
    if (x.size() != y.size() || x.empty()) throw std::invalid_argument("length mismatch");
    HNum s(x.front().algebra());
    for (std::size_t r = 0; r < x.size(); ++r) s += x[r] * y[r].conj();
    return s;
}

Rational inner(const HVec& x, const HVec& y) { return xy_star(x, y).re(); }

Rational norm2(const HVec& x) {
    Rational s = 0;
    for (const auto& h : x) s += h.norm2();
    return s;
}

HVec j_map(const HNum& z, const HVec& x) {
    if (!z.is_imaginary()) throw std::invalid_argument("J_Z needs Z in Im F");
    HVec out;
    out.reserve(x.size());
    for (const auto& xr : x) out.push_back(Rational(-4) * (z * xr));
    return out;
}

NilPoint::NilPoint(HVec x_, HNum z_) : x(std::move(x_)), z(std::move(z_)) {
    if (!z.is_imaginary()) throw std::invalid_argument("Z must be imaginary");
    for (const auto& h : x)
        if (h.algebra() != z.algebra()) throw std::invalid_argument("algebra mismatch in NilPoint");
    if (z.algebra() == Algebra::O && x.size() != 1)
        throw std::invalid_argument("octonionic points need n = 1");
}

NilPoint NilPoint::zero(Algebra alg, int n) {
    return NilPoint(HVec(static_cast<std::size_t>(n), HNum(alg)), HNum(alg));
}

bool NilPoint::is_zero() const {
    if (!z.is_zero()) return false;
    for (const auto& h : x)
        if (!h.is_zero()) return false;
    return true;
}

bool operator==(const NilPoint& a, const NilPoint& b) { return a.x == b.x && a.z == b.z; }

namespace {

void require_same_shape(const NilPoint& a, const NilPoint& b) {
    if (a.algebra() != b.algebra() || a.n() != b.n())
        throw std::invalid_argument("points belong to different configurations");
}

}  // namespace

QuarticNorm quartic_norm(const NilPoint& pt) {
    Rational x2 = norm2(pt.x);
    return {x2 * x2 + pt.z.norm2()};
}

NilPoint bracket(const NilPoint& a, const NilPoint& b) {
    require_same_shape(a, b);
    HNum w = Rational(4) * xy_star(a.x, b.x).im();
    return NilPoint(HVec(a.x.size(), HNum(a.algebra())), w);
}

NilPoint sigma(const NilPoint& pt) {
    if (pt.is_zero()) throw std::domain_error("sigma is undefined at the origin");
    Rational n4 = quartic_norm(pt).n4;
    Rational x2 = norm2(pt.x);
    HVec jx = j_map(pt.z, pt.x);
    HVec out;
    out.reserve(pt.x.size());
    for (std::size_t r = 0; r < pt.x.size(); ++r) {
        HNum v = Rational(1, 4) * jx[r] - x2 * pt.x[r];
        out.push_back(v * (1 / n4));
    }
    return NilPoint(std::move(out), -pt.z * (1 / n4));
}

NilPoint group_product(const NilPoint& a, const NilPoint& b) {
    require_same_shape(a, b);
    HVec x;
    x.reserve(a.x.size());
    for (std::size_t r = 0; r < a.x.size(); ++r) x.push_back(a.x[r] + b.x[r]);
    HNum z = a.z + b.z + Rational(2) * xy_star(a.x, b.x).im();
    return NilPoint(std::move(x), std::move(z));
}

NilPoint group_inverse(const NilPoint& a) {
    HVec x;
    for (const auto& h : a.x) x.push_back(-h);
    return NilPoint(std::move(x), -a.z);
}

std::vector<Rational> real_coords(const NilPoint& pt) {
    std::vector<Rational> out;
    for (const auto& h : pt.x)
        for (const auto& v : h.coords()) out.push_back(v);
    for (int e = 1; e < pt.z.dim(); ++e) out.push_back(pt.z[e]);
    return out;
}

NilPoint from_real_coords(Algebra alg, int n, std::span<const Rational> coords) {
    const int d = real_dim(alg);
    if (static_cast<int>(coords.size()) != n * d + d - 1)
        throw std::invalid_argument("wrong number of real coordinates");
    HVec x;
    for (int r = 0; r < n; ++r) {
        HNum h(alg);
        for (int e = 0; e < d; ++e) h[e] = coords[static_cast<std::size_t>(r * d + e)];
        x.push_back(h);
    }
    HNum z(alg);
    for (int e = 1; e < d; ++e) z[e] = coords[static_cast<std::size_t>(n * d + e - 1)];
    return NilPoint(std::move(x), std::move(z));
}

std::string to_json(const NilPoint& pt) {
    auto coords = [](const HNum& h) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& v : h.coords()) arr.push_back(to_string(v));
        return arr;
    };
    nlohmann::json j;
    j["algebra"] = algebra_name(pt.algebra());
    j["x"] = nlohmann::json::array();
    for (const auto& h : pt.x) j["x"].push_back(coords(h));
    j["z"] = coords(pt.z);
    return j.dump();
}

}  // namespace sbo
