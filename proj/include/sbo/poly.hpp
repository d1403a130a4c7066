#pragma once
// Sparse multivariate polynomials over Q and differential operators with
// polynomial coefficients. Up to 16 variables, which covers every pair here
// (the octonionic nbar has 8 + 7).

#include "sbo/rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace sbo {

inline constexpr int kMaxVars = 16;
using Exponent = std::array<std::uint8_t, kMaxVars>;

int total_degree(const Exponent& e);

// Graded lexicographic: higher total degree first, then lexicographically
// larger exponent first.
struct GradedLex {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

class Poly {
public:
    using TermMap = std::map<Exponent, Rational, GradedLex>;

    explicit Poly(int nvars = 0);
    static Poly constant(int nvars, const Rational& c);
    static Poly variable(int nvars, int index);
    static Poly monomial(int nvars, const Exponent& e, const Rational& c = 1);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    int degree() const;
    Rational coefficient(const Exponent& e) const;

    // Adds c * x^e in place.
    void add_term(const Exponent& e, const Rational& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& s);
    Poly operator-() const;
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

    Poly pow(int k) const;
    Poly derivative(int var, int times = 1) const;
    Poly derivative(const Exponent& alpha) const;

    // f(images[0], ..., images[n-1]); images share a variable count.
    Poly compose(const std::vector<Poly>& images) const;
    // f(G x) for a square rational matrix G (row i gives the image of x_i).
    Poly linear_substitute(const std::vector<std::vector<Rational>>& rows) const;

    Rational evaluate(const std::vector<Rational>& x) const;
    double evaluate(const std::vector<double>& x) const;

    // True if every monomial has the same weighted degree; reports it.
    bool is_weighted_homogeneous(const std::vector<int>& weights, int* degree_out = nullptr) const;

private:
    int nvars_;
    TermMap terms_;
};

// Sorted graded-lex rendering with "num/den" coefficients, e.g. "2*x0^2*x3 - 1/3".
std::string to_string(const Poly& f);

class DiffOp {
public:
    using TermMap = std::map<Exponent, Poly, GradedLex>;

    explicit DiffOp(int nvars = 0) : nvars_(nvars) {}
    static DiffOp identity(int nvars);
    static DiffOp multiply_by(const Poly& f);
    static DiffOp partial(int nvars, int var, int times = 1);
    static DiffOp partial(int nvars, const Exponent& alpha);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // coefficient * d^alpha
    void add_term(const Exponent& alpha, const Poly& coefficient);

    Poly apply(const Poly& f) const;

    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    DiffOp& operator*=(const Rational& s);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    friend DiffOp operator*(DiffOp a, const Rational& s) { return a *= s; }
    friend DiffOp operator*(const Rational& s, DiffOp a) { return a *= s; }
    // Composition (a then b on the right): (a * b) f = a(b f).
    friend DiffOp operator*(const DiffOp& a, const DiffOp& b);
    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

private:
    int nvars_;
    TermMap terms_;
};

std::string to_string(const DiffOp& d);

// Sum of second derivatives over variables [first, first+count).
DiffOp laplacian(int nvars, int first, int count);
// Sum x_i d_i * weights[i].
DiffOp weighted_euler(const std::vector<int>& weights);
// Sum of squares of variables [first, first+count).
Poly square_norm(int nvars, int first, int count);

}  // namespace sbo
