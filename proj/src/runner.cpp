#include "sinrperc/runner.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "json.hpp"

#include "sinrperc/bounds.hpp"
#include "sinrperc/components.hpp"
#include "sinrperc/graph.hpp"
#include "sinrperc/io.hpp"
#include "sinrperc/rng.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace sinrperc {

namespace {

json config_json(const ExperimentConfig& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg.raw) j[k] = v;
    return j;
}

json header_json(const ExperimentConfig& cfg) {
    json j = json::object();
    j["version"] = TOOL_VERSION;
    j["config_hash"] = hash_hex(cfg.canonical_text());
    j["config"] = config_json(cfg);
    return j;
}

json estimate_json(const CriticalEstimate& e) {
    json j = json::object();
    j["component"] = component_type_name(e.type);
    switch (e.status) {
        case EstimateStatus::ok: j["status"] = "ok"; break;
        case EstimateStatus::no_transition: j["status"] = "no_transition"; break;
        case EstimateStatus::budget_exhausted: j["status"] = "budget_exhausted"; break;
    }
    if (std::isnan(e.estimate)) j["estimate"] = nullptr;
    else j["estimate"] = e.estimate;
    j["bracket_lo"] = e.lo;
    j["bracket_hi"] = e.hi;
    j["replicates_used"] = e.evals;
    j["unresolved_points"] = e.unresolved_points;
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

struct Budget {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double max_seconds = 0.0;
    bool exceeded() const {
        if (max_seconds <= 0.0) return false;
        std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
        return el.count() > max_seconds;
    }
};

void emit_snapshot(const ExperimentConfig& cfg, const std::string& dir, RunOutcome& out) {
    double lambda = cfg.density;
    Region region = square_region_for(cfg.n, lambda, cfg.boundary);
    CountMode mode = cfg.count_mode == CountMode::Kind::poisson ? CountMode::poisson()
                                                                : CountMode::fixed(cfg.n);
    Configuration config = sample_configuration(lambda, region, cfg.model.law, mode, cfg.seed);
    SinrGraph g = build_directed(config, cfg.model);

    std::uint32_t root = 0;
    if (config.size() == 0) {
        // nothing to label; still emit the empty table
    } else if (cfg.root >= 0) {
        if (std::size_t(cfg.root) >= config.size())
            throw ValidationError("run.root outside the sampled configuration");
        root = std::uint32_t(cfg.root);
    } else {
        StreamRng pick(cfg.seed, streams::root_pick);
        root = std::uint32_t(pick.next_u64() % config.size());
    }

    std::string path = dir + "/snapshot.csv";
    CsvWriter w(path);
    w.config_block(cfg.canonical_text());
    w.meta("version", TOOL_VERSION);
    w.meta("config_hash", hash_hex(cfg.canonical_text()));
    w.meta("region_width", region.width);
    w.meta("region_height", region.height);
    w.meta("node_count", double(config.size()));
    if (config.size()) {
        ComponentReport rep = component_report(g, root);
        GiantStats giant = giant_stats(g);
        w.meta("root", double(root));
        for (auto t : all_component_types) {
            w.meta(std::string("root_frac_") + component_type_name(t), rep.frac(t));
            w.meta(std::string("giant_frac_") + component_type_name(t), giant.frac(t));
        }
        std::vector<std::uint8_t> lab = labels_for_root(g, root);
        lab[root] = 4;   // 0 unrelated, 1 strong, 2 in-only, 3 out-only, 4 root
        w.columns({"x", "y", "mark", "label"});
        for (std::size_t i = 0; i < config.size(); ++i)
            w.row({format_double(config.positions[i].x), format_double(config.positions[i].y),
                   format_double(config.marks[i]), std::to_string(int(lab[i]))});
    } else {
        w.columns({"x", "y", "mark", "label"});
    }
    out.outputs.push_back(path);
    out.summary += "snapshot: " + std::to_string(config.size()) + " nodes -> " + path + "\n";
}

void emit_sweep(const ExperimentConfig& cfg, const std::string& dir, RunOutcome& out) {
    SweepResult res = run_sweep(sweep_spec_of(cfg));
    std::string path = dir + "/sweep.csv";
    CsvWriter w(path);
    w.config_block(cfg.canonical_text());
    w.meta("version", TOOL_VERSION);
    w.meta("config_hash", hash_hex(cfg.canonical_text()));
    w.meta("swept", cfg.param == SweptParam::density ? "density" : "gamma");
    w.columns({"value", "component", "reps", "mean_fraction", "freq", "ci_half"});
    for (const auto& pt : res.points)
        for (auto t : all_component_types) {
            auto i = std::size_t(t);
            w.row({format_double(pt.value), component_type_name(t), std::to_string(pt.reps),
                   format_double(pt.mean_fraction[i]), format_double(pt.freq[i]),
                   format_double(pt.ci_half[i])});
        }
    out.outputs.push_back(path);
    out.summary += "sweep: " + std::to_string(res.points.size()) + " points -> " + path + "\n";
}

void emit_critical(const ExperimentConfig& cfg, const std::string& dir, RunOutcome& out) {
    SweepSpec spec = sweep_spec_of(cfg);
    EstimateSpec est = estimate_spec_of(cfg);
    CriticalEstimate e = cfg.param == SweptParam::density
                             ? estimate_critical_density(spec, cfg.component, est)
                             : estimate_critical_gamma(spec, cfg.component, est);
    json j = header_json(cfg);
    j["result"] = estimate_json(e);
    std::string path = dir + "/critical.json";
    write_text_file(path, j.dump(2) + "\n");
    out.outputs.push_back(path);
    std::ostringstream ss;
    ss << "critical(" << component_type_name(cfg.component) << "): ";
    if (e.status == EstimateStatus::no_transition) ss << "no transition in bracket";
    else ss << format_double(e.estimate) << " in [" << format_double(e.lo) << ", "
            << format_double(e.hi) << "]";
    ss << " -> " << path << "\n";
    out.summary += ss.str();
}

void emit_coincidence(const ExperimentConfig& cfg, const std::string& dir, RunOutcome& out) {
    CoincidenceResult r = coincidence_check(sweep_spec_of(cfg), estimate_spec_of(cfg));
    json j = header_json(cfg);
    json res = json::object();
    for (auto t : all_component_types)
        res[component_type_name(t)] = estimate_json(r.estimates[std::size_t(t)]);
    res["max_gap"] = r.max_gap;
    res["mean_estimate"] = r.mean_estimate;
    res["intervals_overlap"] = r.intervals_overlap;
    res["all_ok"] = r.all_ok;
    j["result"] = res;
    std::string path = dir + "/coincidence.json";
    write_text_file(path, j.dump(2) + "\n");
    out.outputs.push_back(path);
    out.summary += "coincidence: max gap " + format_double(r.max_gap) + " around mean " +
                   format_double(r.mean_estimate) + " -> " + path + "\n";
}

void emit_bounds(const ExperimentConfig& cfg, const std::string& dir, RunOutcome& out) {
    RadiusDistribution dist = RadiusDistribution::from_model(cfg.model);
    json j = header_json(cfg);
    json res = json::object();
    res["radius_lo"] = dist.lo;
    res["radius_hi"] = dist.hi;
    double coeff;
    if (dist.atoms.size() == 2) {
        BinaryClusterCoeff bc = cluster_coeff_binary(dist.atoms[0].first, dist.atoms[1].first,
                                                     dist.atoms[0].second);
        coeff = bc.value;
        res["cluster_coeff"] = bc.value;
        res["cluster_coeff_printed_form"] = bc.printed_form;
        res["cluster_coeff_forms_agree"] = bc.forms_agree;
        res["case_hub_large"] = bc.case_hub_large;
        res["case_hub_small"] = bc.case_hub_small;
    } else {
        coeff = cluster_coeff_c3(dist);
        res["cluster_coeff"] = coeff;
    }
    res["mean_coverage_g"] = mean_coverage_g(dist);
    res["lambda_lower"] = lambda_lower_bound(dist, coeff);
    UpperBoundResult ub = lambda_upper_bound(dist.lo);
    res["lambda_upper"] = ub.value;
    res["flower_area"] = ub.flower_area;
    if (cfg.path_m > 0) {
        res["path_m"] = cfg.path_m;
        res["path_p_o"] = cfg.path_p_o;
        res["path_survival_bound"] = path_survival_bound(cfg.path_m, cfg.path_p_o);
    }
    j["result"] = res;
    std::string path = dir + "/bounds.json";
    write_text_file(path, j.dump(2) + "\n");
    out.outputs.push_back(path);
    out.summary += "bounds: lower " + format_double(res["lambda_lower"].get<double>()) +
                   ", upper " + format_double(ub.value) + " -> " + path + "\n";

    if (!cfg.b_grid.empty()) {
        if (dist.atoms.size() != 2)
            throw ValidationError("run.b_grid needs a binary radius law as the base model");
        double a = dist.atoms[0].first, wa = dist.atoms[0].second;
        std::string tpath = dir + "/bounds_table.csv";
        CsvWriter w(tpath);
        w.config_block(cfg.canonical_text());
        w.meta("version", TOOL_VERSION);
        w.meta("config_hash", hash_hex(cfg.canonical_text()));
        w.columns({"b", "cluster_coeff", "cluster_coeff_printed", "lambda_lower", "lambda_upper"});
        for (double b : cfg.b_grid) {
            BinaryClusterCoeff bc = cluster_coeff_binary(a, b, wa);
            RadiusDistribution d2 = RadiusDistribution::binary(a, b, wa);
            w.row({format_double(b), format_double(bc.value), format_double(bc.printed_form),
                   format_double(lambda_lower_bound(d2, bc.value)),
                   format_double(lambda_upper_bound(std::min(a, b)).value)});
        }
        out.outputs.push_back(tpath);
        out.summary += "bounds table: " + std::to_string(cfg.b_grid.size()) + " rows -> " +
                       tpath + "\n";
    }
}

void emit_gamma_bound(const ExperimentConfig& cfg, const std::string& dir, RunOutcome& out) {
    if (!cfg.model.atten)
        throw ValidationError("gamma_bound needs an attenuation model");
    if (cfg.model.law.radius_direct)
        throw ValidationError("gamma_bound needs transmit powers, not direct radii");
    GammaBoundResult r = gamma_upper_bound(cfg.density, cfg.model.params,
                                           cfg.model.law.min_value(), cfg.model.law.max_value(),
                                           *cfg.model.atten, cfg.lambda_prime_c, cfg.cell_scale);
    json j = header_json(cfg);
    json res = json::object();
    res["available"] = r.available;
    if (!r.available) res["blocked_on"] = r.blocked_on;
    else {
        res["gamma2"] = r.gamma2;
        res["theta"] = r.theta;
        res["c2"] = r.c2;
        res["c2_prime"] = r.c2_prime;
        res["cell_scale"] = r.d;
        res["mean_cell_count"] = r.mean_cell_count;
        res["n_prime"] = r.n_prime;
    }
    j["result"] = res;
    std::string path = dir + "/gamma_bound.json";
    write_text_file(path, j.dump(2) + "\n");
    out.outputs.push_back(path);
    out.summary += r.available
                       ? "gamma bound: " + format_double(r.gamma2) + " -> " + path + "\n"
                       : "gamma bound unavailable: " + r.blocked_on + " -> " + path + "\n";
}

}  // namespace

std::string resolve_out_dir(const std::string& out_dir) {
    const char* root = std::getenv("SINRPERC_OUT_ROOT");
    if (root && *root && !fs::path(out_dir).is_absolute())
        return (fs::path(root) / out_dir).string();
    return out_dir;
}

RunOutcome run_experiment(ExperimentConfig cfg) {
    validate_config(cfg);
    RunOutcome out;
    std::string dir = resolve_out_dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::exists(dir))
        throw ValidationError("cannot create output directory: " + dir);

    Budget budget{std::chrono::steady_clock::now(), cfg.max_seconds};
    switch (cfg.kind) {
        case ExperimentKind::snapshot: emit_snapshot(cfg, dir, out); break;
        case ExperimentKind::sweep: emit_sweep(cfg, dir, out); break;
        case ExperimentKind::critical: emit_critical(cfg, dir, out); break;
        case ExperimentKind::coincidence: emit_coincidence(cfg, dir, out); break;
        case ExperimentKind::bounds: emit_bounds(cfg, dir, out); break;
        case ExperimentKind::gamma_bound: emit_gamma_bound(cfg, dir, out); break;
    }
    if (budget.exceeded()) {
        out.exit_code = 4;
        out.summary += "wall clock budget exceeded (run.max_seconds = " +
                       format_double(cfg.max_seconds) + ")\n";
    }
    return out;
}

ReplayOutcome replay_output(const std::string& path) {
    ReplayOutcome out;
    std::string text = extract_embedded_config(path);
    ExperimentConfig cfg = config_from_map(parse_config_text(text));
    std::string tmp = (fs::temp_directory_path() /
                       ("sinrperc_replay_" + hash_hex(text + path))).string();
    cfg.out_dir = tmp;
    cfg.raw["run.out_dir"] = tmp;   // keep the echo truthful for the re-run
    RunOutcome rerun = run_experiment(cfg);

    // compare the file with the same name among the re-run outputs
    std::string base = fs::path(path).filename().string();
    std::string mine;
    for (const auto& p : rerun.outputs)
        if (fs::path(p).filename().string() == base) mine = p;
    if (mine.empty()) {
        out.summary = "replay produced no output named " + base;
        return out;
    }
    // the embedded out_dir differs between original and replay; compare with
    // the config block normalized away
    auto strip = [](const std::string& whole) {
        std::istringstream in(whole);
        std::string line, kept;
        while (std::getline(in, line))
            if (line.rfind("# cfg run.out_dir", 0) != 0 &&
                line.find("\"run.out_dir\"") == std::string::npos)
                kept += line + "\n";
        return kept;
    };
    out.replay_path = mine;
    out.match = strip(read_text_file(path)) == strip(read_text_file(mine));
    out.summary = out.match ? "replay matches " + path : "replay DIFFERS from " + path;
    return out;
}

}  // namespace sinrperc
