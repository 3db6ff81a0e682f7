#include "tricap/config.hpp"

#include "tricap/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tricap {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::HexagonDiffusion: return "hexagon-diffusion";
        case ExperimentKind::LensAngles: return "lens-angles";
        case ExperimentKind::Marangoni: return "marangoni";
        case ExperimentKind::Reference1D: return "reference-1d";
        case ExperimentKind::Young: return "young";
        default: return "custom";
    }
}

namespace {

ExperimentKind kind_of(const std::string& s) {
    if (s == "hexagon-diffusion") return ExperimentKind::HexagonDiffusion;
    if (s == "lens-angles") return ExperimentKind::LensAngles;
    if (s == "marangoni") return ExperimentKind::Marangoni;
    if (s == "reference-1d") return ExperimentKind::Reference1D;
    if (s == "young") return ExperimentKind::Young;
    if (s == "custom") return ExperimentKind::Custom;
    throw std::invalid_argument("parse_config: unknown experiment '" + s + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

using KV = std::map<std::string, std::string>;

std::string fmt(double v) { return format_double(v); }

KV preset_defaults(ExperimentKind kind) {
    KV d;
    d["geometry.kind"] = "rectangle";
    d["geometry.hex_side"] = "1";
    d["geometry.x0"] = "0";
    d["geometry.y0"] = "0";
    d["geometry.x1"] = "1";
    d["geometry.y1"] = "1";
    d["physics.epsilon"] = "0.1";
    d["physics.lambda"] = "0.1";
    d["physics.c_reg"] = "0.001";
    d["physics.m_ch"] = "0.1";
    d["physics.sigma0"] = "1";
    d["physics.beta12"] = "1";
    d["physics.beta13"] = "1";
    d["physics.beta23"] = "1";
    d["physics.beta1"] = "1";
    d["physics.beta2"] = "1";
    d["physics.beta3"] = "1";
    d["physics.m_bulk1"] = "0";
    d["physics.m_bulk2"] = "0";
    d["physics.m_bulk3"] = "0";
    d["physics.m_surf12"] = "0";
    d["physics.m_surf13"] = "0";
    d["physics.m_surf23"] = "0";
    d["physics.rho1"] = "1";
    d["physics.rho2"] = "1";
    d["physics.rho3"] = "1";
    d["physics.eta1"] = "1";
    d["physics.eta2"] = "1";
    d["physics.eta3"] = "1";
    d["sbar"] = "harmonic";
    d["surfactant.use_bulk"] = "true";
    d["surfactant.use_pair12"] = "true";
    d["surfactant.use_pair13"] = "true";
    d["surfactant.use_pair23"] = "true";
    d["schedule.t0"] = "0";
    d["schedule.t_ramp"] = "0.0001";
    d["schedule.value"] = "0.5";
    d["numerics.h"] = "0";
    d["numerics.dt"] = "0";
    d["numerics.dt_q"] = "0";
    d["numerics.t_end"] = "1";
    d["numerics.lin_tol"] = "1e-09";
    d["numerics.stationarity_tol"] = "1e-05";
    d["numerics.relax_dt_factor"] = "1";
    d["numerics.fp_iters"] = "2";
    d["numerics.max_steps"] = "2000000";
    d["numerics.threads"] = "0";
    d["numerics.implicit_viscosity"] = "false";
    d["numerics.samples"] = "400";
    d["ref1d.n"] = "2000";
    d["ref1d.dt"] = "1e-06";
    d["young.sigma12"] = "";
    d["young.sigma13"] = "";
    d["young.sigma23"] = "";
    d["output.dir"] = "out";
    d["output.snapshot_every"] = "0";
    d["output.series_every"] = "20";

    switch (kind) {
        case ExperimentKind::HexagonDiffusion:
        case ExperimentKind::Reference1D:
            d["geometry.kind"] = "hexagon";
            d["physics.epsilon"] = "0.08";
            d["physics.sigma0"] = "1";
            d["physics.beta12"] = "4";
            d["physics.beta13"] = "1";
            d["physics.m_surf12"] = "25";
            d["physics.m_surf13"] = "100";
            d["physics.m_surf23"] = "0";
            d["surfactant.use_bulk"] = "false";
            d["surfactant.use_pair23"] = "false";
            d["numerics.t_end"] = "0.01";
            d["numerics.dt_q"] = "1e-05";
            d["numerics.relax_dt_factor"] = "20";
            break;
        case ExperimentKind::LensAngles: {
            d["geometry.x0"] = "0";
            d["geometry.y0"] = "-2";
            d["geometry.x1"] = "2";
            d["geometry.y1"] = "2";
            d["physics.epsilon"] = "0.1";
            d["physics.sigma0"] = "4";
            const double b12 = 1.0 / 24.0;
            const double b13 = 1.0 / (8.0 * (4.0 - std::sqrt(3.0)));
            const double b23 = 1.0 / 16.0;
            d["physics.beta12"] = fmt(b12);
            d["physics.beta13"] = fmt(b13);
            d["physics.beta23"] = fmt(b23);
            d["physics.m_bulk1"] = "100";
            d["physics.m_bulk2"] = "100";
            d["physics.m_bulk3"] = "100";
            d["physics.m_surf12"] = fmt(100.0 / b12);
            d["physics.m_surf13"] = fmt(100.0 / b13);
            d["physics.m_surf23"] = fmt(100.0 / b23);
            d["schedule.t0"] = "1";
            d["schedule.t_ramp"] = "1";
            d["numerics.t_end"] = "10";
            break;
        }
        case ExperimentKind::Marangoni:
            d["geometry.x0"] = "-2";
            d["geometry.y0"] = "-2";
            d["geometry.x1"] = "4";
            d["geometry.y1"] = "2";
            d["physics.epsilon"] = "0.2";
            d["physics.sigma0"] = "1";
            d["physics.beta12"] = "0.2";
            d["physics.beta13"] = "0.2";
            d["physics.beta23"] = "0.2";
            d["physics.m_ch"] = "0.005";
            d["physics.m_bulk1"] = "10";
            d["physics.m_bulk2"] = "10";
            d["physics.m_bulk3"] = "10";
            d["physics.m_surf12"] = "50";
            d["physics.m_surf13"] = "50";
            d["physics.m_surf23"] = "50";
            d["physics.rho1"] = "0.1";
            d["physics.rho2"] = "0.1";
            d["physics.rho3"] = "0.1";
            d["physics.eta1"] = "0.01";
            d["physics.eta2"] = "0.01";
            d["physics.eta3"] = "0.01";
            d["schedule.t0"] = "2.4";
            d["schedule.t_ramp"] = "0.05";
            d["numerics.t_end"] = "10";
            break;
        default: break;
    }
    return d;
}

double to_double(const KV& kv, const std::string& key) {
    const std::string& s = kv.at(key);
    if (s.empty()) throw std::invalid_argument("parse_config: missing required key '" + key + "'");
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_config: non-numeric value for '" + key + "': " + s);
    }
    if (pos != s.size())
        throw std::invalid_argument("parse_config: non-numeric value for '" + key + "': " + s);
    return v;
}

int to_int(const KV& kv, const std::string& key) {
    const double v = to_double(kv, key);
    if (v != std::floor(v))
        throw std::invalid_argument("parse_config: expected integer for '" + key + "'");
    return static_cast<int>(v);
}

bool to_bool(const KV& kv, const std::string& key) {
    std::string s = kv.at(key);
    std::transform(s.begin(), s.end(), s.begin(), [](char c) { return std::tolower(c); });
    if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "off" || s == "no") return false;
    throw std::invalid_argument("parse_config: expected boolean for '" + key + "': " + s);
}

} // namespace

EnergyModel ExperimentConfig::energy_model() const {
    EnergyModel m;
    m.sigma0 = sigma0;
    m.beta_pair = beta_pair;
    m.beta_bulk = beta_bulk;
    return m;
}

PotentialParams ExperimentConfig::potential_params() const {
    PotentialParams p;
    p.epsilon = epsilon;
    p.lambda_cap = lambda;
    p.c_reg = c_reg;
    p.m_c = m_ch;
    return p;
}

MobilityParams ExperimentConfig::mobility_params() const {
    MobilityParams m;
    m.m_bulk = m_bulk;
    m.m_surf = m_surf;
    m.use_bulk = use_bulk;
    m.use_pair = use_pair;
    return m;
}

FluidParams ExperimentConfig::fluid_params() const {
    FluidParams f;
    f.rho = rho;
    f.eta = eta;
    return f;
}

void ExperimentConfig::validate() const {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0)) throw std::invalid_argument(std::string("config: ") + what +
                                                    " must be positive");
    };
    auto nonneg = [](double v, const char* what) {
        if (v < 0.0) throw std::invalid_argument(std::string("config: ") + what +
                                                 " must be non-negative");
    };
    positive(epsilon, "physics.epsilon");
    nonneg(lambda, "physics.lambda");
    nonneg(c_reg, "physics.c_reg");
    positive(m_ch, "physics.m_ch");
    positive(sigma0, "physics.sigma0");
    for (double b : beta_pair) positive(b, "physics.beta_pair");
    for (double b : beta_bulk) positive(b, "physics.beta_bulk");
    for (double m : m_bulk) nonneg(m, "physics.m_bulk");
    for (double m : m_surf) nonneg(m, "physics.m_surf");
    for (double r : rho) positive(r, "physics.rho");
    for (double e : eta) positive(e, "physics.eta");
    positive(t_end, "numerics.t_end");
    nonneg(h, "numerics.h");
    nonneg(dt, "numerics.dt");
    nonneg(dt_q, "numerics.dt_q");
    positive(lin_tol, "numerics.lin_tol");
    positive(stationarity_tol, "numerics.stationarity_tol");
    positive(relax_dt_factor, "numerics.relax_dt_factor");
    if (fp_iters < 1) throw std::invalid_argument("config: numerics.fp_iters must be >= 1");
    if (max_steps < 1) throw std::invalid_argument("config: numerics.max_steps must be >= 1");
    if (samples < 2) throw std::invalid_argument("config: numerics.samples must be >= 2");
    if (ref1d_n < 50) throw std::invalid_argument("config: ref1d.n must be >= 50");
    positive(ref1d_dt, "ref1d.dt");
    positive(hex_side, "geometry.hex_side");
    if (geometry_kind != "hexagon" && geometry_kind != "rectangle")
        throw std::invalid_argument("config: geometry.kind must be hexagon or rectangle");
    if (geometry_kind == "rectangle" && (!(rect[2] > rect[0]) || !(rect[3] > rect[1])))
        throw std::invalid_argument("config: empty rectangle");
    if (snapshot_every < 0 || series_every < 1)
        throw std::invalid_argument("config: invalid output cadence");
    if (experiment == ExperimentKind::Young)
        for (double s : young_sigma) positive(s, "young.sigma");
    if (sched_ramp <= 0.0) throw std::invalid_argument("config: schedule.t_ramp must be positive");
}

ExperimentConfig parse_config(const std::string& text) {
    KV file;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("parse_config: line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("parse_config: empty key on line " +
                                                     std::to_string(lineno));
        if (file.count(key))
            throw std::invalid_argument("parse_config: duplicate key '" + key + "'");
        file[key] = value;
    }

    const auto exp_it = file.find("experiment");
    if (exp_it == file.end())
        throw std::invalid_argument("parse_config: missing required key 'experiment'");
    const ExperimentKind kind = kind_of(exp_it->second);
    file.erase(exp_it);

    KV kv = preset_defaults(kind);
    for (const auto& [k, v] : file) {
        if (!kv.count(k)) throw std::invalid_argument("parse_config: unknown key '" + k + "'");
        kv[k] = v;
    }

    ExperimentConfig c;
    c.experiment = kind;
    c.geometry_kind = kv.at("geometry.kind");
    c.hex_side = to_double(kv, "geometry.hex_side");
    c.rect = {to_double(kv, "geometry.x0"), to_double(kv, "geometry.y0"),
              to_double(kv, "geometry.x1"), to_double(kv, "geometry.y1")};
    c.epsilon = to_double(kv, "physics.epsilon");
    c.lambda = to_double(kv, "physics.lambda");
    c.c_reg = to_double(kv, "physics.c_reg");
    c.m_ch = to_double(kv, "physics.m_ch");
    c.sigma0 = to_double(kv, "physics.sigma0");
    c.beta_pair = {to_double(kv, "physics.beta12"), to_double(kv, "physics.beta13"),
                   to_double(kv, "physics.beta23")};
    c.beta_bulk = {to_double(kv, "physics.beta1"), to_double(kv, "physics.beta2"),
                   to_double(kv, "physics.beta3")};
    c.m_bulk = {to_double(kv, "physics.m_bulk1"), to_double(kv, "physics.m_bulk2"),
                to_double(kv, "physics.m_bulk3")};
    c.m_surf = {to_double(kv, "physics.m_surf12"), to_double(kv, "physics.m_surf13"),
                to_double(kv, "physics.m_surf23")};
    c.rho = {to_double(kv, "physics.rho1"), to_double(kv, "physics.rho2"),
             to_double(kv, "physics.rho3")};
    c.eta = {to_double(kv, "physics.eta1"), to_double(kv, "physics.eta2"),
             to_double(kv, "physics.eta3")};
    const std::string sb = kv.at("sbar");
    if (sb == "harmonic")
        c.sbar = SbarMode::Harmonic;
    else if (sb == "literal")
        c.sbar = SbarMode::Literal;
    else
        throw std::invalid_argument("parse_config: sbar must be 'harmonic' or 'literal'");
    c.use_bulk = to_bool(kv, "surfactant.use_bulk");
    c.use_pair = {to_bool(kv, "surfactant.use_pair12"), to_bool(kv, "surfactant.use_pair13"),
                  to_bool(kv, "surfactant.use_pair23")};
    c.sched_t0 = to_double(kv, "schedule.t0");
    c.sched_ramp = to_double(kv, "schedule.t_ramp");
    c.sched_value = to_double(kv, "schedule.value");
    c.h = to_double(kv, "numerics.h");
    c.dt = to_double(kv, "numerics.dt");
    c.dt_q = to_double(kv, "numerics.dt_q");
    c.t_end = to_double(kv, "numerics.t_end");
    c.lin_tol = to_double(kv, "numerics.lin_tol");
    c.stationarity_tol = to_double(kv, "numerics.stationarity_tol");
    c.relax_dt_factor = to_double(kv, "numerics.relax_dt_factor");
    c.fp_iters = to_int(kv, "numerics.fp_iters");
    c.max_steps = to_int(kv, "numerics.max_steps");
    c.threads = to_int(kv, "numerics.threads");
    c.implicit_viscosity = to_bool(kv, "numerics.implicit_viscosity");
    c.samples = to_int(kv, "numerics.samples");
    c.ref1d_n = to_int(kv, "ref1d.n");
    c.ref1d_dt = to_double(kv, "ref1d.dt");
    if (kind == ExperimentKind::Young) {
        c.young_sigma = {to_double(kv, "young.sigma12"), to_double(kv, "young.sigma13"),
                         to_double(kv, "young.sigma23")};
    }
    c.out_dir = kv.at("output.dir");
    c.snapshot_every = to_int(kv, "output.snapshot_every");
    c.series_every = to_int(kv, "output.series_every");

    kv["experiment"] = to_string(kind);
    c.resolved = std::move(kv);
    c.validate();
    return c;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_config_file: cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace tricap
