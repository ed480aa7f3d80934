#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfp/models2d.hpp"
#include "mfp/quadrature.hpp"
#include "mfp/runner.hpp"

namespace mfp {

// A malformed or inconsistent run description; the CLI maps this to exit 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Everything a run needs, resolved from the JSON config plus flag overrides.
// Experiments are records: the resolved form is echoed into the output
// directory so reruns are reproducible byte for byte.
struct RunConfig {
    // model
    std::string model_name = "opinion";  // opinion | wealth | cucker-smale | network
    double sigma2 = 0.2;
    std::optional<double> freeze_drift;  // entropy prototype: hold u fixed
    double bump_c = 30.0;                // opinion initial datum sharpness

    // wealth
    double wealth_w_max = 10.0;

    // cucker-smale
    double cs_gamma = 0.1;
    double cs_diffusion = 0.1;
    double x_min = -3.0, x_max = 3.0;
    int nx = 101;
    double cs_w_cluster = 1.5, cs_x_spread = 0.5, cs_w_spread = 0.3;
    double cfl = 0.25;

    // network
    NetworkParams net;
    double net_gamma0 = 30.0;
    int net_shift = 150;
    double log_eps = 1e-3;

    // grid (w axis)
    double w_min = -1.0, w_max = 1.0;
    int n_nodes = 41;

    // quadrature
    QuadratureRule rule{QuadratureKind::GaussLegendre, 8};

    // time
    Integrator integrator = Integrator::RK4;
    std::optional<double> dt;  // empty = "auto" (0.9 x active positivity bound)
    double t_end = 5.0;

    // output
    std::string out_dir = "out";
    int stride = 1;
    bool emit_fields = true;
    bool quiet = false;

    // command extras
    std::vector<int> conv_grids = {41, 81, 161, 321};
    std::vector<double> conv_times = {1.0, 5.0, 10.0, 15.0};
    int conv_gauss_points = 4;
    std::vector<double> snapshot_times;

    std::string resolved_json;  // pretty-printed echo of the resolved config
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Writes resolved-config.json into the configured output directory.
void write_resolved_config(const RunConfig& cfg);

}  // namespace mfp
