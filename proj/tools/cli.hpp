#pragma once
// The command-line front end as a library: config loading, the six
// subcommands as functions returning JSON or file contents, and the exit
// code contract (0 pass, 1 verification failure, 2 usage or config error).

#include "sbo/pair_config.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbo::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr long kMaxWindowCells = 10'000;

// Bad input of any kind; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rectangle in the (lambda, nu) plane sampled on a grid of spacing `step`.
struct Window {
    Rational lambda_min = -4, lambda_max = 4;
    Rational nu_min = -4, nu_max = 4;
    Rational step{1, 2};

    std::vector<ParamPoint> points() const;
    long cell_count() const;
};

struct IntegralSettings {
    double tol = 1e-4;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct ConfigFile {
    PairConfig config;
    std::optional<ParamPoint> point;
    std::optional<Window> window;
    IntegralSettings integrals;
};

// TOML by default, JSON when the file name ends in .json.
ConfigFile load_config(const std::string& path);
ConfigFile parse_config_toml(const std::string& text);
ConfigFile parse_config_json(const std::string& text);
// algebra/n/m/f and an optional U direction "0,1,0,0".
PairConfig config_from_fields(const std::string& algebra, int n, int m, const std::string& f,
                              const std::string& u_direction = "");
Rational parse_exact(const std::string& text);  // UsageError instead of invalid_argument

Json config_json(const PairConfig& cfg);
Json point_json(const ParamPoint& pt);

Json run_classify(const PairConfig& cfg, const ParamPoint& pt);
Json run_multiplicity(const PairConfig& cfg, const ParamPoint& pt);
Json run_kernel(const PairConfig& cfg, const ParamPoint& pt);

// Test-mode fault injection: add 1/1000 to coefficient (h, i, j) of every
// u^C table before it is checked.
struct Perturbation {
    int h = 0, i = 0, j = 0;
};
struct VerifyResult {
    Json report;
    bool pass = true;
};
VerifyResult run_verify(const PairConfig& cfg, const Window& window, std::optional<Perturbation> perturb = std::nullopt);

enum class IntegralCheck { Moments, Polar, SphericalVector, KnappStein, Functional, Residue };
IntegralCheck parse_integral_check(const std::string& name);
struct IntegralResult {
    Json report;
    bool pass = true;
};
IntegralResult run_integrals(IntegralCheck check, const PairConfig& cfg, const std::optional<ParamPoint>& pt,
                             const IntegralSettings& settings);

struct AtlasCell {
    ParamPoint point;
    bool slash = false, backslash = false, in_X = false, in_L = false, in_S1 = false, in_S2 = false, in_S3 = false;
    int multiplicity = 0;
    std::vector<std::string> families;
    std::string color_class;
    friend bool operator==(const AtlasCell&, const AtlasCell&) = default;
};
std::vector<AtlasCell> atlas_cells(const PairConfig& cfg, const Window& window);
std::string atlas_csv(const std::vector<AtlasCell>& cells);
std::vector<AtlasCell> parse_atlas_csv(const std::string& csv);
std::string atlas_svg(const PairConfig& cfg, const Window& window, const std::vector<AtlasCell>& cells);

}  // namespace sbo::cli
