#include "mfp/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mfp {

namespace {

using nlohmann::json;

template <class T>
void read_field(const json& j, const char* key, T& target) {
    if (!j.contains(key)) return;
    try {
        target = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

QuadratureKind parse_kind(const std::string& s) {
    if (s == "midpoint") return QuadratureKind::Midpoint;
    if (s == "onc4") return QuadratureKind::OpenNewtonCotes4;
    if (s == "onc6") return QuadratureKind::OpenNewtonCotes6;
    if (s == "gauss") return QuadratureKind::GaussLegendre;
    throw ConfigError("config: unknown quadrature.kind '" + s +
                      "' (expected midpoint|onc4|onc6|gauss)");
}

Integrator parse_integrator(const std::string& s) {
    if (s == "euler") return Integrator::ForwardEuler;
    if (s == "ssprk2") return Integrator::SSPRK2;
    if (s == "rk4") return Integrator::RK4;
    if (s == "semi-implicit") return Integrator::SemiImplicit;
    throw ConfigError("config: unknown time.integrator '" + s +
                      "' (expected euler|ssprk2|rk4|semi-implicit)");
}

std::string kind_name(QuadratureKind k) {
    switch (k) {
        case QuadratureKind::Midpoint: return "midpoint";
        case QuadratureKind::OpenNewtonCotes4: return "onc4";
        case QuadratureKind::OpenNewtonCotes6: return "onc6";
        case QuadratureKind::GaussLegendre: return "gauss";
    }
    return "?";
}

std::string integrator_name(Integrator k) {
    switch (k) {
        case Integrator::ForwardEuler: return "euler";
        case Integrator::SSPRK2: return "ssprk2";
        case Integrator::RK4: return "rk4";
        case Integrator::SemiImplicit: return "semi-implicit";
    }
    return "?";
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }

    RunConfig cfg;
    if (j.contains("model")) {
        const auto& m = j.at("model");
        read_field(m, "name", cfg.model_name);
        read_field(m, "sigma2", cfg.sigma2);
        if (m.contains("freeze_drift")) {
            double u = 0.0;
            read_field(m, "freeze_drift", u);
            cfg.freeze_drift = u;
        }
        read_field(m, "bump_c", cfg.bump_c);
        read_field(m, "w_max", cfg.wealth_w_max);
        read_field(m, "gamma", cfg.cs_gamma);
        read_field(m, "diffusion", cfg.cs_diffusion);
        read_field(m, "w_cluster", cfg.cs_w_cluster);
        read_field(m, "x_spread", cfg.cs_x_spread);
        read_field(m, "w_spread", cfg.cs_w_spread);
        read_field(m, "c_max", cfg.net.c_max);
        read_field(m, "d0", cfg.net.d0);
        read_field(m, "alpha", cfg.net.alpha);
        read_field(m, "beta", cfg.net.beta);
        read_field(m, "V_r", cfg.net.V_r);
        read_field(m, "V_a", cfg.net.V_a);
        read_field(m, "gamma0", cfg.net_gamma0);
        read_field(m, "shift", cfg.net_shift);
        read_field(m, "log_eps", cfg.log_eps);
        cfg.net.sigma2 = cfg.sigma2;
    }
    if (cfg.model_name != "opinion" && cfg.model_name != "wealth" &&
        cfg.model_name != "cucker-smale" && cfg.model_name != "network")
        throw ConfigError("config: unknown model.name '" + cfg.model_name + "'");

    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        read_field(g, "w_min", cfg.w_min);
        read_field(g, "w_max", cfg.w_max);
        read_field(g, "n", cfg.n_nodes);
        read_field(g, "x_min", cfg.x_min);
        read_field(g, "x_max", cfg.x_max);
        read_field(g, "nx", cfg.nx);
    }
    if (cfg.n_nodes < 3) throw ConfigError("config: grid.n must be at least 3");
    if (!(cfg.w_min < cfg.w_max)) throw ConfigError("config: grid.w_min must be below grid.w_max");

    if (j.contains("quadrature")) {
        const auto& q = j.at("quadrature");
        std::string kind = kind_name(cfg.rule.kind);
        read_field(q, "kind", kind);
        cfg.rule.kind = parse_kind(kind);
        read_field(q, "points", cfg.rule.gauss_points);
        if (cfg.rule.gauss_points < 1 || cfg.rule.gauss_points > 64)
            throw ConfigError("config: quadrature.points outside 1..64");
    }

    if (j.contains("time")) {
        const auto& t = j.at("time");
        std::string name = integrator_name(cfg.integrator);
        read_field(t, "integrator", name);
        cfg.integrator = parse_integrator(name);
        if (t.contains("dt")) {
            if (t.at("dt").is_string()) {
                if (t.at("dt").get<std::string>() != "auto")
                    throw ConfigError("config: time.dt must be a number or \"auto\"");
                cfg.dt.reset();
            } else {
                double v = 0.0;
                read_field(t, "dt", v);
                if (!(v > 0.0)) throw ConfigError("config: time.dt must be positive");
                cfg.dt = v;
            }
        }
        read_field(t, "t_end", cfg.t_end);
        if (cfg.t_end < 0.0) throw ConfigError("config: time.t_end must be nonnegative");
    }

    if (j.contains("output")) {
        const auto& o = j.at("output");
        read_field(o, "directory", cfg.out_dir);
        read_field(o, "stride", cfg.stride);
        read_field(o, "emit_fields", cfg.emit_fields);
        if (cfg.stride < 1) throw ConfigError("config: output.stride must be at least 1");
    }

    if (j.contains("convergence")) {
        const auto& c = j.at("convergence");
        read_field(c, "grids", cfg.conv_grids);
        read_field(c, "times", cfg.conv_times);
        read_field(c, "gauss_points", cfg.conv_gauss_points);
        if (cfg.conv_grids.size() < 2)
            throw ConfigError("config: convergence.grids needs at least two sizes");
    }
    read_field(j, "snapshot_times", cfg.snapshot_times);
    read_field(j, "cfl", cfg.cfl);

    // Echo of the resolved configuration.
    json r;
    r["model"]["name"] = cfg.model_name;
    r["model"]["sigma2"] = cfg.sigma2;
    if (cfg.freeze_drift) r["model"]["freeze_drift"] = *cfg.freeze_drift;
    if (cfg.model_name == "opinion") r["model"]["bump_c"] = cfg.bump_c;
    if (cfg.model_name == "wealth") r["model"]["w_max"] = cfg.wealth_w_max;
    if (cfg.model_name == "cucker-smale") {
        r["model"]["gamma"] = cfg.cs_gamma;
        r["model"]["diffusion"] = cfg.cs_diffusion;
        r["model"]["w_cluster"] = cfg.cs_w_cluster;
        r["model"]["x_spread"] = cfg.cs_x_spread;
        r["model"]["w_spread"] = cfg.cs_w_spread;
        r["grid"]["x_min"] = cfg.x_min;
        r["grid"]["x_max"] = cfg.x_max;
        r["grid"]["nx"] = cfg.nx;
        r["cfl"] = cfg.cfl;
    }
    if (cfg.model_name == "network") {
        r["model"]["c_max"] = cfg.net.c_max;
        r["model"]["d0"] = cfg.net.d0;
        r["model"]["alpha"] = cfg.net.alpha;
        r["model"]["beta"] = cfg.net.beta;
        r["model"]["V_r"] = cfg.net.V_r;
        r["model"]["V_a"] = cfg.net.V_a;
        r["model"]["gamma0"] = cfg.net_gamma0;
        r["model"]["shift"] = cfg.net_shift;
        r["model"]["log_eps"] = cfg.log_eps;
    }
    r["grid"]["w_min"] = cfg.w_min;
    r["grid"]["w_max"] = cfg.w_max;
    r["grid"]["n"] = cfg.n_nodes;
    r["quadrature"]["kind"] = kind_name(cfg.rule.kind);
    r["quadrature"]["points"] = cfg.rule.gauss_points;
    r["time"]["integrator"] = integrator_name(cfg.integrator);
    if (cfg.dt)
        r["time"]["dt"] = *cfg.dt;
    else
        r["time"]["dt"] = "auto";
    r["time"]["t_end"] = cfg.t_end;
    r["output"]["directory"] = cfg.out_dir;
    r["output"]["stride"] = cfg.stride;
    r["output"]["emit_fields"] = cfg.emit_fields;
    r["convergence"]["grids"] = cfg.conv_grids;
    r["convergence"]["times"] = cfg.conv_times;
    r["convergence"]["gauss_points"] = cfg.conv_gauss_points;
    if (!cfg.snapshot_times.empty()) r["snapshot_times"] = cfg.snapshot_times;
    cfg.resolved_json = r.dump(2) + "\n";
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void write_resolved_config(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream out(cfg.out_dir + "/resolved-config.json");
    if (!out) throw std::runtime_error("cannot write resolved-config.json in " + cfg.out_dir);
    out << cfg.resolved_json;
}

}  // namespace mfp
