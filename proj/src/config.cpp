#include "sinrperc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sinrperc {

const char* experiment_kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::snapshot: return "snapshot";
        case ExperimentKind::sweep: return "sweep";
        case ExperimentKind::critical: return "critical";
        case ExperimentKind::coincidence: return "coincidence";
        case ExperimentKind::bounds: return "bounds";
        case ExperimentKind::gamma_bound: return "gamma_bound";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
    }
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
    }
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    return out;
}

const std::vector<std::string> known_keys = {
    "experiment.kind",
    "model.beta", "model.n0", "model.gamma",
    "model.law", "model.law.value", "model.law.a", "model.law.b", "model.law.weight_a",
    "model.law.lo", "model.law.hi", "model.law.exponent",
    "model.attenuation", "model.attenuation.exponent", "model.attenuation.shift",
    "model.attenuation.shift_mode", "model.attenuation.file",
    "run.n", "run.replications", "run.seed", "run.threads", "run.out_dir",
    "run.max_seconds", "run.param", "run.density", "run.grid",
    "run.bracket_lo", "run.bracket_hi", "run.resolution", "run.max_reps_per_point",
    "run.max_evals", "run.component", "run.frac_threshold", "run.target_freq",
    "run.count_mode", "run.boundary", "run.root", "run.b_grid",
    "run.lambda_prime_c", "run.cell_scale", "run.path_m", "run.path_p_o",
};

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        std::string full = section.empty() ? key : section + "." + key;
        kv[full] = val;
    }
    return kv;
}

ExperimentConfig config_from_map(std::map<std::string, std::string> kv) {
    for (const auto& [k, v] : kv)
        if (std::find(known_keys.begin(), known_keys.end(), k) == known_keys.end())
            throw ConfigError("unknown config key '" + k + "'");

    auto has = [&](const std::string& k) { return kv.count(k) != 0; };
    auto get = [&](const std::string& k) { return kv.at(k); };

    ExperimentConfig c;
    c.raw = kv;

    if (!has("experiment.kind")) throw ConfigError("missing required key 'experiment.kind'");
    std::string kind = get("experiment.kind");
    if (kind == "snapshot") c.kind = ExperimentKind::snapshot;
    else if (kind == "sweep") c.kind = ExperimentKind::sweep;
    else if (kind == "critical") c.kind = ExperimentKind::critical;
    else if (kind == "coincidence") c.kind = ExperimentKind::coincidence;
    else if (kind == "bounds") c.kind = ExperimentKind::bounds;
    else if (kind == "gamma_bound" || kind == "gamma_bounds")
        c.kind = ExperimentKind::gamma_bound;
    else throw ConfigError("experiment.kind: unknown kind '" + kind + "'");

    if (has("model.beta")) c.model.params.beta = to_double("model.beta", get("model.beta"));
    if (has("model.n0")) c.model.params.n0 = to_double("model.n0", get("model.n0"));
    if (has("model.gamma")) c.model.params.gamma = to_double("model.gamma", get("model.gamma"));

    std::string law = has("model.law") ? get("model.law") : "constant_power";
    auto num = [&](const std::string& k, double fallback) {
        return has(k) ? to_double(k, get(k)) : fallback;
    };
    if (law == "constant_power")
        c.model.law = PowerDistribution::constant_power(num("model.law.value", 1.0));
    else if (law == "binary_power")
        c.model.law = PowerDistribution::binary_power(num("model.law.a", 1.0),
                                                      num("model.law.b", 2.0),
                                                      num("model.law.weight_a", 0.5));
    else if (law == "uniform_power")
        c.model.law = PowerDistribution::uniform_power(num("model.law.lo", 1.0),
                                                       num("model.law.hi", 2.0));
    else if (law == "constant_radius")
        c.model.law = PowerDistribution::constant_radius(num("model.law.value", 1.0));
    else if (law == "binary_radius")
        c.model.law = PowerDistribution::binary_radius(num("model.law.a", 1.0),
                                                       num("model.law.b", 2.0),
                                                       num("model.law.weight_a", 0.5));
    else if (law == "power_law_radius")
        c.model.law = PowerDistribution::power_law_radius(num("model.law.exponent", 3.0),
                                                          num("model.law.lo", 1.0),
                                                          num("model.law.hi", 2.0));
    else
        throw ConfigError("model.law: unknown law '" + law + "'");

    std::string at = has("model.attenuation") ? get("model.attenuation") : "none";
    if (at == "shifted_power_law") {
        double expn = num("model.attenuation.exponent", 3.0);
        std::string mode = has("model.attenuation.shift_mode")
                               ? get("model.attenuation.shift_mode") : "explicit";
        if (mode == "matched_l0")
            c.model.atten = AttenuationModel::shifted_matched(expn, c.model.params.beta,
                                                              c.model.params.n0);
        else if (mode == "explicit")
            c.model.atten = AttenuationModel::shifted(expn, num("model.attenuation.shift", 1.0));
        else
            throw ConfigError("model.attenuation.shift_mode: unknown mode '" + mode + "'");
    } else if (at == "table") {
        if (!has("model.attenuation.file"))
            throw ConfigError("model.attenuation = table requires model.attenuation.file");
        c.atten_table_path = get("model.attenuation.file");
        // rows loaded during validation so parse errors stay cheap
    } else if (at != "none") {
        throw ConfigError("model.attenuation: unknown model '" + at + "'");
    }

    if (has("run.n")) c.n = std::size_t(to_int("run.n", get("run.n")));
    if (has("run.replications")) c.replications = int(to_int("run.replications", get("run.replications")));
    if (has("run.seed")) c.seed = std::uint64_t(to_int("run.seed", get("run.seed")));
    if (has("run.threads")) c.threads = int(to_int("run.threads", get("run.threads")));
    if (has("run.out_dir")) c.out_dir = get("run.out_dir");
    if (has("run.max_seconds")) c.max_seconds = to_double("run.max_seconds", get("run.max_seconds"));
    if (has("run.param")) {
        std::string p = get("run.param");
        if (p == "density") c.param = SweptParam::density;
        else if (p == "gamma") c.param = SweptParam::gamma;
        else throw ConfigError("run.param: expected density or gamma, got '" + p + "'");
    }
    if (has("run.density")) c.density = to_double("run.density", get("run.density"));
    if (has("run.grid")) c.grid = to_list("run.grid", get("run.grid"));
    if (has("run.bracket_lo")) c.bracket_lo = to_double("run.bracket_lo", get("run.bracket_lo"));
    if (has("run.bracket_hi")) c.bracket_hi = to_double("run.bracket_hi", get("run.bracket_hi"));
    if (has("run.resolution")) c.resolution = to_double("run.resolution", get("run.resolution"));
    if (has("run.max_reps_per_point"))
        c.max_reps_per_point = int(to_int("run.max_reps_per_point", get("run.max_reps_per_point")));
    if (has("run.max_evals")) c.max_evals = to_int("run.max_evals", get("run.max_evals"));
    if (has("run.component")) {
        std::string t = get("run.component");
        if (t == "in") c.component = ComponentType::in_;
        else if (t == "out") c.component = ComponentType::out_;
        else if (t == "weak") c.component = ComponentType::weak;
        else if (t == "strong") c.component = ComponentType::strong;
        else throw ConfigError("run.component: expected in/out/weak/strong, got '" + t + "'");
    }
    if (has("run.frac_threshold"))
        c.criterion.frac_threshold = to_double("run.frac_threshold", get("run.frac_threshold"));
    if (has("run.target_freq"))
        c.criterion.target_freq = to_double("run.target_freq", get("run.target_freq"));
    if (has("run.count_mode")) {
        std::string m = get("run.count_mode");
        if (m == "fixed_n") c.count_mode = CountMode::Kind::fixed_n;
        else if (m == "poisson") c.count_mode = CountMode::Kind::poisson;
        else throw ConfigError("run.count_mode: expected fixed_n or poisson, got '" + m + "'");
    }
    if (has("run.boundary")) {
        std::string b = get("run.boundary");
        if (b == "hard_box") c.boundary = Region::Boundary::hard_box;
        else if (b == "torus") c.boundary = Region::Boundary::torus;
        else throw ConfigError("run.boundary: expected hard_box or torus, got '" + b + "'");
    }
    if (has("run.root")) {
        std::string r = get("run.root");
        c.root = r == "random" ? -1 : to_int("run.root", r);
    }
    if (has("run.b_grid")) c.b_grid = to_list("run.b_grid", get("run.b_grid"));
    if (has("run.lambda_prime_c"))
        c.lambda_prime_c = to_double("run.lambda_prime_c", get("run.lambda_prime_c"));
    if (has("run.cell_scale")) c.cell_scale = to_double("run.cell_scale", get("run.cell_scale"));
    if (has("run.path_m")) c.path_m = int(to_int("run.path_m", get("run.path_m")));
    if (has("run.path_p_o")) c.path_p_o = to_double("run.path_p_o", get("run.path_p_o"));

    // structural requirements per kind
    if (c.kind == ExperimentKind::sweep && c.grid.empty())
        throw ConfigError("run.grid: sweep experiments need a non-empty grid");
    if ((c.kind == ExperimentKind::critical || c.kind == ExperimentKind::coincidence) &&
        !(c.bracket_hi > c.bracket_lo))
        throw ConfigError("run.bracket_lo/run.bracket_hi: need bracket_lo < bracket_hi");
    if (c.kind == ExperimentKind::gamma_bound && !(c.lambda_prime_c > 0.0))
        throw ConfigError("run.lambda_prime_c: gamma_bound experiments need lambda_prime_c > 0");
    return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_map(parse_config_text(ss.str()));
}

std::string ExperimentConfig::canonical_text() const {
    // execution envelope keys don't affect results, so they stay out of the
    // identity (two runs of one experiment hash alike wherever they ran)
    std::string out;
    for (const auto& [k, v] : raw) {
        if (k == "run.out_dir" || k == "run.threads" || k == "run.max_seconds") continue;
        out += k + " = " + v + "\n";
    }
    return out;
}

void validate_config(ExperimentConfig& cfg) {
    if (!cfg.atten_table_path.empty() && !cfg.model.atten) {
        std::ifstream in(cfg.atten_table_path);
        if (!in)
            throw ValidationError("attenuation table file not found: " + cfg.atten_table_path);
        std::vector<double> xs, ys;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            double x, y;
            if (std::sscanf(line.c_str(), "%lg,%lg", &x, &y) != 2)
                throw ValidationError("attenuation table " + cfg.atten_table_path +
                                      ": bad row '" + line + "'");
            xs.push_back(x);
            ys.push_back(y);
        }
        try {
            cfg.model.atten = AttenuationModel::from_table(xs, ys);
        } catch (const std::exception& e) {
            throw ValidationError("attenuation table " + cfg.atten_table_path + ": " + e.what());
        }
    }
    ModelValidationReport rep = validate_model(cfg.model);
    if (!rep.ok) {
        std::string msg = "model validation failed:";
        for (const auto& c : rep.checks)
            if (!c.pass) msg += " [" + c.name + " witness=" + std::to_string(c.witness) + "]";
        throw ValidationError(msg);
    }
    if (cfg.replications < 1) throw ValidationError("run.replications must be >= 1");
    if (cfg.kind != ExperimentKind::bounds && cfg.kind != ExperimentKind::gamma_bound) {
        if (cfg.n < 1) throw ValidationError("run.n must be >= 1");
    }
    if (cfg.kind == ExperimentKind::snapshot && cfg.root >= 0 &&
        std::size_t(cfg.root) >= cfg.n)
        throw ValidationError("run.root outside 0..n-1");
    if (cfg.kind == ExperimentKind::critical || cfg.kind == ExperimentKind::coincidence) {
        if (!(cfg.resolution > 0.0)) throw ValidationError("run.resolution must be positive");
        if (cfg.param == SweptParam::density && !(cfg.bracket_lo > 0.0))
            throw ValidationError("run.bracket_lo must be positive for density estimates");
    }
    if (cfg.kind == ExperimentKind::sweep || cfg.kind == ExperimentKind::critical ||
        cfg.kind == ExperimentKind::coincidence) {
        if (cfg.param == SweptParam::gamma && !(cfg.density > 0.0))
            throw ValidationError("run.density must be positive for gamma experiments");
        for (double v : cfg.grid)
            if (cfg.param == SweptParam::density && !(v > 0.0))
                throw ValidationError("run.grid: densities must be positive");
    }
}

SweepSpec sweep_spec_of(const ExperimentConfig& cfg) {
    SweepSpec s;
    s.swept = cfg.param;
    s.grid = cfg.grid;
    s.model = cfg.model;
    s.density = cfg.density;
    s.n = cfg.n;
    s.count_kind = cfg.count_mode;
    s.boundary = cfg.boundary;
    s.replications = cfg.replications;
    s.base_seed = cfg.seed;
    s.criterion = cfg.criterion;
    s.threads = cfg.threads;
    return s;
}

EstimateSpec estimate_spec_of(const ExperimentConfig& cfg) {
    EstimateSpec e;
    e.bracket_lo = cfg.bracket_lo;
    e.bracket_hi = cfg.bracket_hi;
    e.resolution = cfg.resolution;
    e.reps = cfg.replications;
    e.max_reps_per_point = cfg.max_reps_per_point;
    e.max_evals = cfg.max_evals;
    e.increasing = cfg.param == SweptParam::density;
    return e;
}

}  // namespace sinrperc
