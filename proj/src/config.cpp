#include "curvelast/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace curvelast {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + value);
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for '" + key + "': " + value);
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config: bad boolean value for '" + key + "': " + value);
}

}  // namespace

void RunConfig::validate() const {
    if (mu <= 0.0) throw ConfigError("config: mu must be positive");
    if (radius <= 0.0) throw ConfigError("config: radius must be positive");
    if (d_modulus && incompressible)
        throw ConfigError("config: supply exactly one of d_modulus / incompressible");
    if (d_modulus && *d_modulus < 0.0) throw ConfigError("config: d_modulus must be nonnegative");
    if (model != "tension" && model != "stretch" && model != "helfrich")
        throw ConfigError("config: model must be tension, stretch or helfrich");
    if (gamma < 0.0 || alpha_s < 0.0 || beta_s < 0.0)
        throw ConfigError("config: surface parameters must be nonnegative");
    if (model == "tension" && (alpha_s != 0.0 || beta_s != 0.0))
        throw ConfigError("config: tension model admits only gamma");
    if (model == "stretch" && beta_s != 0.0)
        throw ConfigError("config: stretch model does not take beta_s");
    if (model == "helfrich" && alpha_s != 0.0)
        throw ConfigError("config: helfrich model does not take alpha_s");
    if (lambda && (lambda_min || lambda_max))
        throw ConfigError("config: supply lambda or lambda_min/lambda_max, not both");
    if (static_cast<bool>(lambda_min) != static_cast<bool>(lambda_max))
        throw ConfigError("config: lambda_min and lambda_max must come together");
    if (lambda_min && *lambda_min >= *lambda_max)
        throw ConfigError("config: lambda_min must be below lambda_max");
    if (static_cast<bool>(k_min) != static_cast<bool>(k_max))
        throw ConfigError("config: k_min and k_max must come together");
    if (k_min && (*k_min <= 0.0 || *k_min > *k_max))
        throw ConfigError("config: need 0 < k_min <= k_max");
    if (k_steps < 1 || lambda_steps < 1) throw ConfigError("config: steps must be >= 1");
    if (format != "csv" && format != "json") throw ConfigError("config: format must be csv or json");
    if (threads < 0) throw ConfigError("config: threads must be nonnegative");
}

RunConfig parse_config(const std::map<std::string, std::string>& kv, RunConfig base) {
    for (const auto& [key, value] : kv) {
        if (key == "mu")
            base.mu = parse_double(key, value);
        else if (key == "d_modulus")
            base.d_modulus = parse_double(key, value);
        else if (key == "incompressible")
            base.incompressible = parse_bool(key, value);
        else if (key == "model")
            base.model = value;
        else if (key == "gamma")
            base.gamma = parse_double(key, value);
        else if (key == "alpha_s")
            base.alpha_s = parse_double(key, value);
        else if (key == "beta_s")
            base.beta_s = parse_double(key, value);
        else if (key == "h0")
            base.h0 = parse_double(key, value);
        else if (key == "radius")
            base.radius = parse_double(key, value);
        else if (key == "lambda")
            base.lambda = parse_double(key, value);
        else if (key == "lambda_min")
            base.lambda_min = parse_double(key, value);
        else if (key == "lambda_max")
            base.lambda_max = parse_double(key, value);
        else if (key == "lambda_steps")
            base.lambda_steps = parse_int(key, value);
        else if (key == "k_min")
            base.k_min = parse_double(key, value);
        else if (key == "k_max")
            base.k_max = parse_double(key, value);
        else if (key == "k_steps")
            base.k_steps = parse_int(key, value);
        else if (key == "output_path")
            base.output_path = value;
        else if (key == "format")
            base.format = value;
        else if (key == "threads")
            base.threads = parse_int(key, value);
        else
            throw ConfigError("config: unknown key '" + key + "'");
    }
    return base;
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at " + path + ":" +
                              std::to_string(lineno));
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return parse_config(kv, base);
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "mu = " << format_number(cfg.mu) << "\n";
    if (cfg.d_modulus) out << "d_modulus = " << format_number(*cfg.d_modulus) << "\n";
    out << "incompressible = " << (cfg.incompressible ? "true" : "false") << "\n";
    out << "model = " << cfg.model << "\n";
    out << "gamma = " << format_number(cfg.gamma) << "\n";
    out << "alpha_s = " << format_number(cfg.alpha_s) << "\n";
    out << "beta_s = " << format_number(cfg.beta_s) << "\n";
    out << "h0 = " << format_number(cfg.h0) << "\n";
    out << "radius = " << format_number(cfg.radius) << "\n";
    if (cfg.lambda) out << "lambda = " << format_number(*cfg.lambda) << "\n";
    if (cfg.lambda_min) out << "lambda_min = " << format_number(*cfg.lambda_min) << "\n";
    if (cfg.lambda_max) out << "lambda_max = " << format_number(*cfg.lambda_max) << "\n";
    out << "lambda_steps = " << cfg.lambda_steps << "\n";
    if (cfg.k_min) out << "k_min = " << format_number(*cfg.k_min) << "\n";
    if (cfg.k_max) out << "k_max = " << format_number(*cfg.k_max) << "\n";
    out << "k_steps = " << cfg.k_steps << "\n";
    if (!cfg.output_path.empty()) out << "output_path = " << cfg.output_path << "\n";
    out << "format = " << cfg.format << "\n";
    out << "threads = " << cfg.threads << "\n";
    return out.str();
}

ScaledProblem scale_problem(const RunConfig& cfg) {
    cfg.validate();
    if (!cfg.d_modulus && !cfg.incompressible)
        throw ConfigError("config: supply exactly one of d_modulus / incompressible");
    ScaledProblem sp{
        BulkMaterial(1.0, 0.0), SurfaceModel::tension(0.0), cfg.mu, cfg.radius, false};
    const double mu = cfg.mu, A = cfg.radius;
    const double g = cfg.gamma / (mu * A);
    const double al = cfg.alpha_s / (mu * A);
    const double be = cfg.beta_s / (mu * A * A * A);
    const double h0 = cfg.h0 * A;

    if (cfg.model == "tension")
        sp.surf = SurfaceModel::tension(g);
    else if (cfg.model == "stretch")
        sp.surf = SurfaceModel::stretch(g, al);
    else
        sp.surf = SurfaceModel::helfrich(g, be, h0);

    if (cfg.incompressible) {
        sp.mat = BulkMaterial(1.0, kIncompressibleProxyRatio);
        sp.closed_form_incompressible = (cfg.model == "tension" || cfg.model == "helfrich");
    } else {
        sp.mat = BulkMaterial(1.0, *cfg.d_modulus / mu);
    }
    return sp;
}

std::string format_number(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

}  // namespace curvelast
