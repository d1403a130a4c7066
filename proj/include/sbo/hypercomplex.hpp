#pragma once
// Exact arithmetic in R, C, H, O and on the two-step nilpotent algebra
// nbar = F^n + Im F.  Octonions come from Cayley-Dickson doubling of H with
// (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)); every H-type identity we
// rely on is independent of that choice and is checked in the tests.

#include "sbo/rational.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace sbo {

enum class Algebra { R, C, H, O };

int real_dim(Algebra alg);
std::string algebra_name(Algebra alg);  // "R", "C", "H", "O"
Algebra parse_algebra(const std::string& tag);

namespace detail {

// out = a*b for Cayley-Dickson algebras of dimension d in {1,2,4,8}.
// Works for any field-like T; out must not alias a or b.
template <class T>
void cd_mul(const T* a, const T* b, T* out, int d) {
    if (d == 1) {
        out[0] = a[0] * b[0];
        return;
    }
    const int h = d / 2;
    std::array<T, 4> cb, cd, t1, t2;  // only the first h slots are used
    // conj(c) and conj(d) for the halves b = (c, d_)
    for (int i = 0; i < h; ++i) {
        cb[i] = i == 0 ? b[i] : T(-b[i]);
        cd[i] = i == 0 ? b[h + i] : T(-b[h + i]);
    }
    // first half: a0 c - conj(d_) a1
    cd_mul(a, b, t1.data(), h);
    cd_mul(cd.data(), a + h, t2.data(), h);
    for (int i = 0; i < h; ++i) out[i] = t1[i] - t2[i];
    // second half: d_ a0 + a1 conj(c)
    cd_mul(b + h, a, t1.data(), h);
    cd_mul(a + h, cb.data(), t2.data(), h);
    for (int i = 0; i < h; ++i) out[h + i] = t1[i] + t2[i];
}

}  // namespace detail

class HNum {
public:
    explicit HNum(Algebra alg);
    HNum(Algebra alg, std::vector<Rational> coords);
    static HNum real(Algebra alg, const Rational& x);
    // e_0 = 1, e_1.. the imaginary units in Cayley-Dickson order.
    static HNum unit(Algebra alg, int index);

    Algebra algebra() const { return alg_; }
    int dim() const { return static_cast<int>(c_.size()); }
    const Rational& operator[](int i) const { return c_[i]; }
    Rational& operator[](int i) { return c_[i]; }
    const std::vector<Rational>& coords() const { return c_; }

    HNum conj() const;
    Rational re() const { return c_[0]; }
    HNum im() const;
    Rational norm2() const;
    bool is_zero() const;
    bool is_imaginary() const { return c_[0] == 0; }

    HNum operator-() const;
    HNum& operator+=(const HNum& o);
    HNum& operator-=(const HNum& o);
    HNum& operator*=(const Rational& s);

    friend HNum operator+(HNum a, const HNum& b) { return a += b; }
    friend HNum operator-(HNum a, const HNum& b) { return a -= b; }
    friend HNum operator*(HNum a, const Rational& s) { return a *= s; }
    friend HNum operator*(const Rational& s, HNum a) { return a *= s; }
    friend HNum operator*(const HNum& a, const HNum& b);
    friend bool operator==(const HNum& a, const HNum& b);

private:
    Algebra alg_;
    std::vector<Rational> c_;
};

HNum mul(const HNum& a, const HNum& b);  // throws on algebra mismatch

using HVec = std::vector<HNum>;

// Sum_r x_r conj(y_r), i.e. X Y^* for row vectors.
HNum xy_star(const HVec& x, const HVec& y);
Rational inner(const HVec& x, const HVec& y);
Rational norm2(const HVec& x);
// J_Z X = -4 Z.X (left scalar multiplication). Z must be imaginary.
HVec j_map(const HNum& z, const HVec& x);

struct NilPoint {
    HVec x;
    HNum z;

    NilPoint(HVec x_, HNum z_);
    static NilPoint zero(Algebra alg, int n);

    Algebra algebra() const { return z.algebra(); }
    int n() const { return static_cast<int>(x.size()); }
    bool is_zero() const;
    friend bool operator==(const NilPoint& a, const NilPoint& b);
};

// N^4 = |X|^4 + |Z|^2, kept rational.
struct QuarticNorm {
    Rational n4;
};
QuarticNorm quartic_norm(const NilPoint& pt);

NilPoint bracket(const NilPoint& a, const NilPoint& b);
NilPoint sigma(const NilPoint& pt);
NilPoint group_product(const NilPoint& a, const NilPoint& b);
NilPoint group_inverse(const NilPoint& a);

// Real coordinates (X components then Im Z components), length p+q.
std::vector<Rational> real_coords(const NilPoint& pt);
NilPoint from_real_coords(Algebra alg, int n, std::span<const Rational> coords);

// Canonical JSON text: {"algebra":"H","x":[["1","0","0","0"],...],"z":["0","1/2",...]}
std::string to_json(const NilPoint& pt);

}  // namespace sbo
