#pragma once
// nbar-specific layer over Poly/DiffOp: the J-map and bracket structure
// constants in real coordinates, the Fourier-side invariance operators,
// harmonic polynomials in the quaternionic invariants p1, p2, p3, the
// invariant generators, and rational samples of M'.

#include "sbo/pair_config.hpp"
#include "sbo/poly.hpp"

#include <string>
#include <vector>

namespace sbo {

// Real coordinates: X components 0..p-1 (X' first, then X''), Z components p..p+q-1.
class HTypeStructure {
public:
    explicit HTypeStructure(const PairConfig& cfg);

    int p() const { return p_; }
    int q() const { return q_; }
    int nvars() const { return p_ + q_; }
    int z_var(int j) const { return p_ + j; }

    // (J_{T_j})_{ab}: component a of J_{T_j} S_b.
    const Rational& J(int j, int a, int b) const { return j_[idx(j, a, b)]; }
    // Component j of [S_a, S_b] (Z-part of the bracket).
    const Rational& B(int j, int a, int b) const { return br_[idx(j, a, b)]; }

    std::vector<int> weights() const;  // 1 on X, 2 on Z

private:
    std::size_t idx(int j, int a, int b) const {
        return (static_cast<std::size_t>(j) * static_cast<std::size_t>(p_) + static_cast<std::size_t>(a)) *
                   static_cast<std::size_t>(p_) +
               static_cast<std::size_t>(b);
    }
    int p_, q_;
    std::vector<Rational> j_, br_;
};

// Two forms of the Fourier-side system; the Weyl-map test picks Standard.
//  Standard:  2(ν+ρ'-1) d_S  and  -1/4 d_{J_T X} Δ_v
//  Alternate: 2(ν+ρ'+q-2) d_S and +1/4 d_{J_T X} Δ_v
enum class FourierVariant { Standard, Alternate };

DiffOp build_fourier_Dv(const PairConfig& cfg, int s_index, const ParamPoint& pt,
                        FourierVariant variant = FourierVariant::Standard);
DiffOp build_fourier_Dz(const PairConfig& cfg, int t_index, const ParamPoint& pt,
                        FourierVariant variant = FourierVariant::Standard);
// E + λ + ρ - ν - ρ' with E the weighted Euler operator.
DiffOp build_homogeneity(const PairConfig& cfg, const ParamPoint& pt);

// Block norms as polynomials.
Poly norm2_Xprime(const PairConfig& cfg);
Poly norm2_Xdprime(const PairConfig& cfg);
Poly norm2_Z(const PairConfig& cfg);
DiffOp laplacian_v(const PairConfig& cfg);
DiffOp laplacian_vprime(const PairConfig& cfg);
DiffOp laplacian_vdprime(const PairConfig& cfg);
DiffOp box_z(const PairConfig& cfg);

// Basis of homogeneous harmonic polynomials of degree ell in 3 variables,
// one element per monomial x^a y^b z^c with c <= 1.
std::vector<Poly> harmonic_basis(int ell);
// Laplacian in 3 variables.
Poly laplacian3(const Poly& f);

// p_j = <T_j, conj(X'') Z X''> as a polynomial (H with n - m = 1).
std::vector<Poly> quaternion_invariants(const PairConfig& cfg);
// q(p1, p2, p3) for q a polynomial in 3 variables.
Poly substitute_p(const Poly& q3, const PairConfig& cfg);

enum class InvariantCase { Complex, QuaternionTrivial, QuaternionU1, Radial };
struct InvariantGenerators {
    InvariantCase tag;
    std::vector<Poly> generators;
    std::vector<std::string> names;
    std::vector<int> weighted_degrees;
};
InvariantGenerators invariant_generators(const PairConfig& cfg);

// A rational element of M' acting linearly on real coordinates: row i of
// `rows` gives the i-th coordinate of g.(X,Z).
struct MPrimeSample {
    std::string label;
    std::vector<std::vector<Rational>> rows;
};
std::vector<MPrimeSample> m_prime_samples(const PairConfig& cfg);
bool m_prime_invariance_check(const Poly& f, const std::vector<MPrimeSample>& samples);

}  // namespace sbo
