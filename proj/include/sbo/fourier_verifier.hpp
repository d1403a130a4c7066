#pragma once
// Fourier-side solutions: the coefficient tables of û^C and v̂^C, the
// quaternionic harmonic families, exact verification of the full
// differential system, the recurrences, and the classification of the
// polynomial solution space.

#include "sbo/pair_config.hpp"
#include "sbo/poly.hpp"
#include "sbo/poly_algebra.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace sbo {

// Which power of Z an entry (h,i,j) multiplies: |Z|^{2j} in the generic
// tables, Z^j in the complex tables used by the R_C recurrences.
enum class ZForm { SquaredNorm, ComplexPower };

class CoeffTable {
public:
    using Key = std::array<int, 3>;  // (h, i, j)

    CoeffTable(long k, ZForm form) : k_(k), form_(form) {}

    long k() const { return k_; }
    ZForm form() const { return form_; }
    // Zero for entries outside the table.
    Rational at(int h, int i, int j) const;
    void set(int h, int i, int j, const Rational& c);
    const std::map<Key, Rational>& entries() const { return entries_; }

private:
    long k_;
    ZForm form_;
    std::map<Key, Rational> entries_;
};

// Throws std::invalid_argument off //.
CoeffTable coeff_table(const PairConfig& cfg, const ParamPoint& pt);
// The same coefficients re-indexed by the power of Z (F = C only).
CoeffTable complex_form(const CoeffTable& table);
// Coefficients of v̂^C in the Z^j indexing (all entries have odd j), scaled
// by sqrt(pi) so they are rational. Throws unless F = C, m = 0, on //,
// nu odd with 0 < nu <= k.
CoeffTable vhatC_table(const PairConfig& cfg, const ParamPoint& pt);

Poly table_poly(const PairConfig& cfg, const CoeffTable& table);
Poly uhatC(const PairConfig& cfg, const ParamPoint& pt);
Poly vhatC(const PairConfig& cfg, const ParamPoint& pt);
bool vhatC_applies(const PairConfig& cfg, const ParamPoint& pt);

struct PolySpace {
    std::vector<Poly> basis;
    std::vector<std::string> tags;  // "C", "vC", "Harmonic(l)", "UContract"
    int dimension() const { return static_cast<int>(basis.size()); }
};

// Harmonic families 𝓗^{k/2}(p1,p2,p3) for (H,1,0,trivial) at ν+ρ' = k+4,
// and the U-contraction for (H,1,0,u1) at ν+ρ' = 6; empty elsewhere.
PolySpace sporadic_space(const PairConfig& cfg, const ParamPoint& pt);

struct SystemReport {
    Poly homogeneity;
    std::vector<std::string> invariance_failures;
    std::vector<Poly> dv;  // one per basis vector of v'
    std::vector<Poly> dz;  // one per basis vector of z
    bool ok() const;
    // First failing equation, e.g. "Dz(T1)", or "" if ok.
    std::string first_failure() const;
};
SystemReport verify_system(const Poly& f, const PairConfig& cfg, const ParamPoint& pt,
                           FourierVariant variant = FourierVariant::Standard);

struct RecurrenceFailure {
    std::string name;  // "R2", "R3", "R4", "R1_C", "R2_C", "R3_C"
    int h, i, j;
    Rational lhs, rhs;
};
struct RecurrenceReport {
    int checked = 0;
    std::vector<RecurrenceFailure> failures;
    bool ok() const { return failures.empty(); }
};
// Checks the recurrences matching the table's form: R2/R3 (m > 0) or R4
// (m = 0) for SquaredNorm tables; R1_C/R2_C (m > 0) or R3_C (m = 0) for
// ComplexPower tables.
RecurrenceReport check_recurrences(const CoeffTable& table, const PairConfig& cfg, const ParamPoint& pt);

// Tags of the constructive families at pt without building polynomials;
// cheap enough for whole-window sweeps.
std::vector<std::string> poly_space_tags(const PairConfig& cfg, const ParamPoint& pt);

// The space of Fourier-side solutions, built from the constructive families
// and certified independent. Throws for configs that are not strongly spherical.
PolySpace classify_poly_space(const PairConfig& cfg, const ParamPoint& pt);

}  // namespace sbo
