#pragma once
// The group pair (U(1,n+1;F), U(1,m+1;F) x F): derived dimensions, the
// strong sphericity gate, lattice predicates in the (lambda, nu) plane and
// the multiplicity table.

#include "sbo/hypercomplex.hpp"
#include "sbo/rational.hpp"

#include <optional>
#include <string>

namespace sbo {

enum class FCase { FullUnitary, Trivial, U1Direction, TransitiveOther };

std::string fcase_name(FCase f);     // "full", "trivial", "u1", "transitive"
FCase parse_fcase(const std::string& tag);

struct PairConfig {
    Algebra algebra = Algebra::C;
    int n = 1;
    int m = 0;
    FCase f = FCase::Trivial;
    // Direction of the U(1) inside Sp(1); only meaningful for U1Direction.
    std::optional<HNum> u_dir;

    // derived
    int p = 0, q = 0, p_prime = 0, p_dprime = 0;
    Rational rho, rho_prime;

    int field_dim() const { return real_dim(algebra); }
    int n_vars() const { return p + q; }
    std::string label() const;  // e.g. "(H,1,0,trivial)"
    friend bool operator==(const PairConfig& a, const PairConfig& b);
};

// Validates and fills the derived fields. Throws std::invalid_argument on
// O with n != 1 or m != 0, m >= n, m < 0, or a bad U direction.
PairConfig derive(Algebra alg, int n, int m, FCase f, std::optional<HNum> u_dir = std::nullopt);
PairConfig derive(const PairConfig& raw);

bool is_strongly_spherical(const PairConfig& cfg);

struct ParamPoint {
    Rational lambda;
    Rational nu;
    friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

struct LatticeFlags {
    bool in_slash = false;      // lambda + rho - nu - rho' in -2Z>=0
    bool in_backslash = false;  // lambda + rho + nu - rho' in -2Z>=0
    bool in_X = false;
    bool in_L = false;
    bool in_S1 = false;
    bool in_S2 = false;
    bool in_S3 = false;
    std::optional<long> k, l;
    std::optional<long> s2_index;  // i with (lambda,nu) = (-rho+q-1-2i, rho'+2i)
};

LatticeFlags lattice_flags(const PairConfig& cfg, const ParamPoint& pt);
// L membership via the alternate m = 0 description (-rho+q-1-2i, +-(rho'-q+1+2j));
// for m > 0 this is the ordinary definition. Kept to cross-check lattice_flags.
bool in_L_alternate(const PairConfig& cfg, const ParamPoint& pt);

enum class ExceptionalPair { None, ComplexRankOne, QuaternionTrivial, QuaternionU1 };
ExceptionalPair exceptional_pair(const PairConfig& cfg);

// Throws std::invalid_argument for configs that are not strongly spherical.
int multiplicity(const PairConfig& cfg, const ParamPoint& pt);

bool irreducible(const PairConfig& cfg, const Rational& lambda);

}  // namespace sbo
