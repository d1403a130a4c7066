#pragma once
// Test oracle for the delta expansion of u^B. With a = |X'|^2, b = N(X',Z)^4
// and h = (nu+rho')/2, the kernel restricted to a line through X'' is
// f(|X''|^2) with f(x) = (x^2 + 2ax + b)^(-h). Pairing f(|y|^2) Δ^l δ(y) with
// a test monomial y^mu is Δ^l(f(|y|^2) y^mu)(0). The Taylor coefficients of
// f come from Faà di Bruno summed over all partitions, then the Laplacian is
// applied to actual polynomials in y. Coefficients live in Q[a, c], c = 1/b,
// with the common factor b^(-h) divided out.

#include "sbo/poly.hpp"
#include "sbo/rational.hpp"

#include <functional>
#include <vector>

namespace oracle {

using namespace sbo;

// Multiplicity vectors (m_1..m_n) with sum j*m_j = n.
inline void integer_partitions(int n, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> m(static_cast<std::size_t>(n + 1), 0);
    std::function<void(int, int)> rec = [&](int part, int left) {
        if (left == 0) {
            visit(m);
            return;
        }
        if (part > left) return;
        for (int c = 0; c * part <= left; ++c) {
            m[static_cast<std::size_t>(part)] = c;
            rec(part + 1, left - c * part);
        }
        m[static_cast<std::size_t>(part)] = 0;
    };
    rec(1, n);
}

// d^n/dx^n (F o w)(0) for F(w) = w^(-h), w = x^2 + 2ax + b, in Q[vars] with
// `a_var`, `c_var` the indices of a and 1/b. Divided by b^(-h).
inline Poly faa_di_bruno(int n, const Rational& h, int nvars, int a_var, int c_var) {
    const Poly a = Poly::variable(nvars, a_var);
    const Poly c = Poly::variable(nvars, c_var);
    // w^(j)(0) for j >= 1
    auto inner = [&](int j) -> Poly {
        if (j == 1) return Rational(2) * a;
        if (j == 2) return Poly::constant(nvars, 2);
        return Poly(nvars);
    };
    Poly total(nvars);
    integer_partitions(n, [&](const std::vector<int>& m) {
        int blocks = 0;
        Rational weight = factorial(n);
        Poly prod = Poly::constant(nvars, 1);
        for (int j = 1; j <= n; ++j) {
            const int mj = m[static_cast<std::size_t>(j)];
            if (mj == 0) continue;
            blocks += mj;
            weight /= factorial(mj) * rpow(factorial(j), mj);
            prod = prod * inner(j).pow(mj);
        }
        // F^(blocks)(b) / b^(-h) = (-h)(-h-1)...(-h-blocks+1) c^blocks
        Rational falling = 1;
        for (int r = 0; r < blocks; ++r) falling *= -h - r;
        total += (weight * falling) * (prod * c.pow(blocks));
    });
    return total;
}

// Δ^l(f(|y|^2) y^mu)(0) / b^(-h) in Q[a, c], y in R^dim.
inline Poly delta_pairing(int dim, int l, const Rational& h, const std::vector<int>& mu) {
    const int nv = dim + 2, a_var = dim, c_var = dim + 1;
    const Poly r2 = square_norm(nv, 0, dim);
    Exponent e{};
    for (int i = 0; i < dim; ++i) e[i] = static_cast<std::uint8_t>(mu[static_cast<std::size_t>(i)]);
    const Poly monomial = Poly::monomial(nv, e);
    Poly f(nv);
    for (int n = 0; n <= l; ++n) {
        const Rational taylor = Rational(1) / factorial(n);
        f += (faa_di_bruno(n, h, nv, a_var, c_var) * taylor) * r2.pow(n);
    }
    Poly g = f * monomial;
    const DiffOp lap = laplacian(nv, 0, dim);
    for (int s = 0; s < l; ++s) g = lap.apply(g);
    std::vector<Poly> images;
    for (int i = 0; i < dim; ++i) images.push_back(Poly(nv));
    images.push_back(Poly::variable(nv, a_var));
    images.push_back(Poly::variable(nv, c_var));
    return g.compose(images);
}

// Δ^k(y^mu)(0)
inline Rational laplacian_power_at_zero(int dim, int k, const std::vector<int>& mu) {
    Exponent e{};
    for (int i = 0; i < dim; ++i) e[i] = static_cast<std::uint8_t>(mu[static_cast<std::size_t>(i)]);
    Poly g = Poly::monomial(dim, e);
    const DiffOp lap = laplacian(dim, 0, dim);
    for (int s = 0; s < k; ++s) g = lap.apply(g);
    return g.evaluate(std::vector<Rational>(static_cast<std::size_t>(dim), Rational(0)));
}

}  // namespace oracle
