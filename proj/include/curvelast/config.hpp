#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "curvelast/bulk.hpp"
#include "curvelast/surface.hpp"

// Run configuration: flat key = value files, overridable by command-line
// flags of the same names. Inputs may be dimensional; computations run with
// mu = 1, A = 1 and outputs are rescaled back.

namespace curvelast {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    double mu = 1.0;
    std::optional<double> d_modulus;
    bool incompressible = false;

    std::string model = "tension";  // tension | stretch | helfrich
    double gamma = 0.0;
    double alpha_s = 0.0;
    double beta_s = 0.0;
    double h0 = 0.0;
    double radius = 1.0;

    std::optional<double> lambda;
    std::optional<double> lambda_min, lambda_max;
    int lambda_steps = 101;

    std::optional<double> k_min, k_max;
    int k_steps = 50;

    std::string output_path;        // empty = stdout
    std::string format = "csv";     // csv | json
    int threads = 0;                // 0 = hardware default

    void validate() const;
};

// key = value lines; '#' starts a comment; unknown keys are an error.
RunConfig parse_config(const std::map<std::string, std::string>& kv, RunConfig base = {});
RunConfig parse_config_file(const std::string& path, RunConfig base = {});
std::string serialize_config(const RunConfig& cfg);

// proxy bulk modulus used when incompressible = true on the assembled path
inline constexpr double kIncompressibleProxyRatio = 1e8;

// Nondimensional working copy (mu = 1, A = 1) plus the scales needed to
// restore user units.
struct ScaledProblem {
    BulkMaterial mat;       // mu = 1
    SurfaceModel surf;      // nondimensional surface parameters
    double stress_scale;    // user mu
    double length_scale;    // user A
    bool closed_form_incompressible;  // eq-of-dispersion closed form applies
};

ScaledProblem scale_problem(const RunConfig& cfg);

// locale-independent formatting with 12 significant digits
std::string format_number(double x);

}  // namespace curvelast
