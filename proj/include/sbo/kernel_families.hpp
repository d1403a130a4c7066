#pragma once
// Position-side kernels: u^A as a smooth function off {X'' = 0} with its
// gradient, the invariance operators D_v, D_z evaluated pointwise, the
// delta-expansions of u^B and u^C, supports, and the full classifier.

#include "sbo/fourier_verifier.hpp"
#include "sbo/gamma_expr.hpp"
#include "sbo/pair_config.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sbo {

// normalization * N(X,Z)^norm_exponent * |X''|^xpp_exponent
struct SmoothKernel {
    Rational norm_exponent;  // -2(ν+ρ')
    Rational xpp_exponent;   // λ-ρ+ν+ρ'
    GammaExpr normalization;
    double normalization_value = 0.0;  // 0 where the gamma factors vanish
};
SmoothKernel smooth_kernel(const PairConfig& cfg, const ParamPoint& pt);

struct KernelValue {
    double value = 0.0;
    std::vector<double> gradient;  // real coordinates, X first then Z
};
// Throws std::domain_error when X'' = 0.
KernelValue uA_eval(const PairConfig& cfg, const SmoothKernel& kernel, const std::vector<double>& coords);
KernelValue uA_eval(const PairConfig& cfg, const ParamPoint& pt, const std::vector<double>& coords);

// D_v(S) u and D_z(T) u at one point, with the sum of absolute values of the
// individual terms as the local scale.
struct PointResidual {
    double residual = 0.0;
    double scale = 0.0;
    double relative() const { return scale > 0 ? std::abs(residual) / scale : std::abs(residual); }
};
PointResidual position_Dv(const PairConfig& cfg, const ParamPoint& pt, int s_index, const std::vector<double>& coords,
                          const KernelValue& u);
PointResidual position_Dz(const PairConfig& cfg, const ParamPoint& pt, int t_index, const std::vector<double>& coords,
                          const KernelValue& u);

struct InvarianceReport {
    int points = 0;
    double max_dv = 0.0;        // relative
    double max_dz = 0.0;        // relative
    double max_euler = 0.0;     // relative
    double max_covariance = 0.0;  // |u(g x) - u(x)| / |u(x)| over M' samples
    bool passes(double tol) const { return max_dv <= tol && max_dz <= tol && max_euler <= tol && max_covariance <= tol; }
};
// Random points with |X''| >= N(X,Z)/4. `kernel` defaults to u^A at pt; pass
// a different one for negative controls.
InvarianceReport verify_invariance_pointwise(const PairConfig& cfg, const ParamPoint& pt, int npoints,
                                             std::uint64_t seed, std::optional<SmoothKernel> kernel = std::nullopt);

// coeff * Δ_{v'}^h Δ_{v''}^i □^j δ
struct DeltaTerm {
    int h, i, j;
    Rational coeff;
};
struct DeltaKernel {
    std::vector<DeltaTerm> terms;
};
// Throws off //.
DeltaKernel uC_kernel(const PairConfig& cfg, const ParamPoint& pt);

// c^B * coeff * |X'|^{2i} N(X',Z)^{norm_exponent} Δ_{v''}^k δ(X'')
struct SingularTerm {
    int k, i, j;
    Rational coeff;          // leading coefficient in the parameter along (1,-1)
    Rational norm_exponent;  // -2(ν+ρ') - 4i - 4j
    bool norm_pole = false;  // N(X',Z)^s has a simple pole here as a distribution on n̄'
    int net_order = 0;       // order of c^B minus the pole
};
struct SingularKernel {
    long l = 0;
    GammaExpr cB;
    OrderedValue cB_value;  // along (1,-1), which keeps l fixed
    std::vector<SingularTerm> terms;
    // Some term survives with net order 0.
    bool nonzero() const;
};
// Throws off \\.
SingularKernel uB_expansion(const PairConfig& cfg, const ParamPoint& pt);

enum class Family { A, B, C };
enum class Support { Empty, Origin, NbarPrime, Nbar };
std::string support_name(Support s);
// Throws when the family is not defined at pt (B needs \\, C needs //).
Support support_of(Family family, const PairConfig& cfg, const ParamPoint& pt);
// Support read off the u^B expansion: Origin if every surviving term comes
// from a pole of the norm power, NbarPrime otherwise.
Support support_from_expansion(const SingularKernel& kernel);

struct KernelDescription {
    std::vector<std::string> families;  // "A", "B", "C", "vC", "Harmonic(l)", "UContract"
    std::vector<Support> supports;      // parallel to families
    int dimension = 0;
};
// Throws for configs that are not strongly spherical.
KernelDescription classify_sbo_space(const PairConfig& cfg, const ParamPoint& pt);

}  // namespace sbo
