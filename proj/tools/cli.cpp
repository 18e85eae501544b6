#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cgmldp/annealed_entropy.hpp"
#include "cgmldp/errors.hpp"
#include "cgmldp/rate.hpp"

namespace cgmldp::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(ExtReal v) { return fmt(v.value()); }

struct Table {
    std::vector<std::string> meta;  // key=value summary lines
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_meta(const std::string& key, const std::string& value) {
        meta.push_back(key + "=" + value);
    }
};

void emit(const Table& table, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        for (const std::string& m : table.meta) out << "# " << m << "\n";
        for (size_t c = 0; c < table.header.size(); ++c)
            out << table.header[c] << (c + 1 < table.header.size() ? "," : "");
        out << "\n";
        for (const auto& row : table.rows) {
            for (size_t c = 0; c < row.size(); ++c)
                out << row[c] << (c + 1 < row.size() ? "," : "");
            out << "\n";
        }
        return;
    }
    nlohmann::json doc;
    doc["meta"] = table.meta;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj;
        for (size_t c = 0; c < table.header.size(); ++c) obj[table.header[c]] = row[c];
        rows.push_back(obj);
    }
    doc["rows"] = rows;
    out << doc.dump(2) << "\n";
}

double want_number(const nlohmann::json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError("config field '" + field + "' must be a number");
    return j.get<double>();
}

std::vector<double> want_grid(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array() || j.empty())
        throw ConfigError("config field '" + field + "' must be a nonempty array of numbers");
    std::vector<double> grid;
    for (const auto& v : j) grid.push_back(want_number(v, field));
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ConfigError("config field '" + field + "' must be strictly increasing");
    return grid;
}

SampleMode parse_mode(const std::string& text) {
    if (text == "quenched") return SampleMode::Quenched;
    if (text == "annealed") return SampleMode::Annealed;
    throw ConfigError("mode must be 'quenched' or 'annealed'");
}

KindChoice parse_kind(const std::string& text) {
    if (text == "quenched") return KindChoice::Quenched;
    if (text == "annealed") return KindChoice::Annealed;
    if (text == "both") return KindChoice::Both;
    throw ConfigError("kind must be 'quenched', 'annealed' or 'both'");
}

std::vector<Kind> kinds_of(KindChoice choice) {
    switch (choice) {
        case KindChoice::Quenched: return {Kind::Quenched};
        case KindChoice::Annealed: return {Kind::Annealed};
        case KindChoice::Both: return {Kind::Quenched, Kind::Annealed};
    }
    return {};
}

}  // namespace

ParameterLaw parse_law(const nlohmann::json& spec, const std::string& field) {
    try {
        if (!spec.is_object() || !spec.contains("type"))
            throw ConfigError("law spec '" + field + "' needs a 'type' tag");
        const std::string type = spec.at("type").get<std::string>();
        if (type == "delta") return ParameterLaw::point_mass(want_number(spec.at("x"), field + ".x"));
        if (type == "discrete") {
            if (!spec.contains("atoms") || !spec.at("atoms").is_array())
                throw ConfigError("law spec '" + field + "' needs an 'atoms' array");
            std::vector<Atom> atoms;
            for (const auto& pair : spec.at("atoms")) {
                if (!pair.is_array() || pair.size() != 2)
                    throw ConfigError("law spec '" + field + "': each atom is [x, p]");
                atoms.push_back({want_number(pair[0], field + ".atoms.x"),
                                 want_number(pair[1], field + ".atoms.p")});
            }
            return ParameterLaw::discrete(std::move(atoms));
        }
        if (type == "uniform")
            return ParameterLaw::uniform(want_number(spec.at("lo"), field + ".lo"),
                                         want_number(spec.at("hi"), field + ".hi"));
        if (type == "poly") {
            const double k = want_number(spec.at("k"), field + ".k");
            if (k != std::floor(k) || k < 0)
                throw ConfigError("law spec '" + field + ".k' must be a nonnegative integer");
            return ParameterLaw::poly(want_number(spec.at("lo"), field + ".lo"),
                                      want_number(spec.at("hi"), field + ".hi"), int(k));
        }
        throw ConfigError("law spec '" + field + "': unknown type '" + type + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("law spec '" + field + "': " + e.what());
    } catch (const DomainError& e) {
        throw ConfigError("law spec '" + field + "': " + e.what());
    }
}

ParameterLaw parse_law_text(const std::string& text, const std::string& field) {
    nlohmann::json spec = nlohmann::json::parse(text, nullptr, false);
    if (spec.is_discarded()) throw ConfigError("law spec '" + field + "' is not valid JSON");
    return parse_law(spec, field);
}

std::vector<double> parse_grid_text(const std::string& text, const std::string& field) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0;
        long count = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%ld", &lo, &hi, &count) != 3 || count < 2 ||
            !(hi > lo))
            throw ConfigError("grid '" + field + "': expected lo:hi:count with count >= 2");
        for (long i = 0; i < count; ++i)
            grid.push_back(lo + (hi - lo) * double(i) / double(count - 1));
        return grid;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            grid.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("grid '" + field + "': bad number '" + item + "'");
        }
    }
    if (grid.empty()) throw ConfigError("grid '" + field + "' is empty");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ConfigError("grid '" + field + "' must be strictly increasing");
    return grid;
}

RunConfig RunConfig::from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    RunConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "alpha") cfg.alpha = parse_law(value, "alpha");
        else if (key == "beta") cfg.beta = parse_law(value, "beta");
        else if (key == "directions") {
            if (!value.is_array() || value.empty())
                throw ConfigError("config field 'directions' must be a nonempty array of [s,t]");
            for (const auto& d : value) {
                if (!d.is_array() || d.size() != 2)
                    throw ConfigError("config field 'directions': each entry is [s, t]");
                cfg.directions.push_back(
                    {want_number(d[0], "directions.s"), want_number(d[1], "directions.t")});
            }
        } else if (key == "lambda_grid") cfg.lambda_grid = want_grid(value, "lambda_grid");
        else if (key == "r_grid") cfg.r_grid = want_grid(value, "r_grid");
        else if (key == "eps_grid") cfg.eps_grid = want_grid(value, "eps_grid");
        else if (key == "t_grid") cfg.t_grid = want_grid(value, "t_grid");
        else if (key == "intervals") {
            if (!value.is_array() || value.empty())
                throw ConfigError("config field 'intervals' must be a nonempty array of [x,y]");
            for (const auto& iv : value) {
                if (!iv.is_array() || iv.size() != 2)
                    throw ConfigError("config field 'intervals': each entry is [x, y]");
                cfg.intervals.emplace_back(want_number(iv[0], "intervals.x"),
                                           want_number(iv[1], "intervals.y"));
            }
        } else if (key == "z") cfg.z = want_number(value, "z");
        else if (key == "r") cfg.r = want_number(value, "r");
        else if (key == "x") cfg.x = want_number(value, "x");
        else if (key == "y") cfg.y = want_number(value, "y");
        else if (key == "time") cfg.time = want_number(value, "time");
        else if (key == "n") cfg.n = int(want_number(value, "n"));
        else if (key == "reps") cfg.reps = int(want_number(value, "reps"));
        else if (key == "seed") cfg.seed = std::uint64_t(want_number(value, "seed"));
        else if (key == "mode") cfg.mode = parse_mode(value.get<std::string>());
        else if (key == "kind") cfg.kind = parse_kind(value.get<std::string>());
        else if (key == "estimator") cfg.estimator = value.get<std::string>();
        else if (key == "positions") cfg.positions = value.get<bool>();
        else if (key == "level_set_samples") cfg.level_set_samples = int(want_number(value, key));
        else if (key == "output") cfg.output = value.get<std::string>();
        else if (key == "format") cfg.format = value.get<std::string>();
        else throw ConfigError("unknown config key '" + key + "'");
    }
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format must be 'csv' or 'json'");
    return cfg;
}

void RunConfig::require_laws() const {
    if (!alpha) throw ConfigError("missing law spec 'alpha'");
    if (!beta) throw ConfigError("missing law spec 'beta'");
}

namespace {

const std::vector<Direction>& require_directions(const RunConfig& cfg) {
    if (cfg.directions.empty()) throw ConfigError("this command needs 'directions'");
    return cfg.directions;
}

Table cmd_shape(const RunConfig& cfg) {
    cfg.require_laws();
    Table t;
    t.header = {"record", "s", "t", "g", "zeta"};
    for (const Direction& d : require_directions(cfg)) {
        const ShapeResult sh = shape_function(*cfg.alpha, *cfg.beta, d);
        t.rows.push_back({"direction", fmt(d.s), fmt(d.t), fmt(sh.g), fmt(sh.zeta)});
    }
    if (cfg.level_set_samples > 0) {
        for (const Direction& d :
             shape_level_set(*cfg.alpha, *cfg.beta, cfg.level_set_samples)) {
            const ShapeResult sh = shape_function(*cfg.alpha, *cfg.beta, d);
            t.rows.push_back({"level", fmt(d.s), fmt(d.t), fmt(sh.g), fmt(sh.zeta)});
        }
    }
    return t;
}

Table cmd_phase(const RunConfig& cfg) {
    cfg.require_laws();
    Table t;
    t.header = {"s", "t", "c1", "c2", "zeta", "region"};
    for (const Direction& d : require_directions(cfg)) {
        const PhasePortrait pp = phase_portrait(*cfg.alpha, *cfg.beta, d);
        t.rows.push_back(
            {fmt(d.s), fmt(d.t), fmt(pp.c1), fmt(pp.c2), fmt(pp.zeta), to_string(pp.region)});
    }
    return t;
}

Table cmd_lyapunov(const RunConfig& cfg) {
    cfg.require_laws();
    if (cfg.lambda_grid.empty()) throw ConfigError("command 'lyapunov' needs 'lambda_grid'");
    Table t;
    t.header = {"s", "t", "kind", "lambda", "value", "zhat", "boundary"};
    for (const Direction& d : require_directions(cfg)) {
        for (Kind kind : kinds_of(cfg.kind)) {
            for (double lam : cfg.lambda_grid) {
                const LyapunovPoint pt = lyapunov(kind, *cfg.alpha, *cfg.beta, d, lam);
                t.rows.push_back({fmt(d.s), fmt(d.t), to_string(kind), fmt(lam), fmt(pt.value),
                                  fmt(pt.zhat), to_string(pt.boundary)});
            }
        }
        if (cfg.z) {
            for (double lam : cfg.lambda_grid) {
                const ExtReal v = stationary_L(*cfg.alpha, *cfg.beta, *cfg.z, d, lam);
                t.rows.push_back(
                    {fmt(d.s), fmt(d.t), "stationary", fmt(lam), fmt(v), fmt(*cfg.z), ""});
            }
        }
    }
    return t;
}

Table cmd_rate(const RunConfig& cfg) {
    cfg.require_laws();
    if (cfg.r_grid.empty()) throw ConfigError("command 'rate' needs 'r_grid'");
    Table t;
    t.header = {"s", "t", "kind", "r", "value", "lambda_star", "z_star", "regime"};
    for (const Direction& d : require_directions(cfg))
        for (Kind kind : kinds_of(cfg.kind))
            for (double r : cfg.r_grid) {
                const RateEval ev = rate_J(kind, *cfg.alpha, *cfg.beta, d, r);
                t.rows.push_back({fmt(d.s), fmt(d.t), to_string(kind), fmt(r), fmt(ev.value),
                                  fmt(ev.lambda_star), fmt(ev.z_star), to_string(ev.regime)});
            }
    return t;
}

Table cmd_expand(const RunConfig& cfg) {
    cfg.require_laws();
    if (cfg.eps_grid.empty()) throw ConfigError("command 'expand' needs 'eps_grid'");
    Table t;
    t.header = {"s", "t", "kind", "eps", "j_value", "predicted"};
    for (const Direction& d : require_directions(cfg)) {
        for (Kind kind : kinds_of(cfg.kind)) {
            const ExpansionReport rep = expansion(kind, *cfg.alpha, *cfg.beta, d);
            const std::string tag =
                fmt(d.s) + "," + fmt(d.t) + "," + std::string(to_string(kind));
            t.add_meta("report(" + tag + ").region", to_string(rep.region));
            t.add_meta("report(" + tag + ").exponent", fmt(rep.exponent));
            t.add_meta("report(" + tag + ").coefficient",
                       rep.coefficient ? fmt(*rep.coefficient) : "none");
            t.add_meta("report(" + tag + ").moment_condition_met",
                       rep.moment_condition_met ? "true" : "false");
            const double g = shape_function(*cfg.alpha, *cfg.beta, d).g;
            for (double eps : cfg.eps_grid) {
                const RateEval ev = rate_J(kind, *cfg.alpha, *cfg.beta, d, g + eps);
                const std::string predicted =
                    rep.coefficient ? fmt(*rep.coefficient * std::pow(eps, rep.exponent)) : "";
                t.rows.push_back({fmt(d.s), fmt(d.t), to_string(kind), fmt(eps), fmt(ev.value),
                                  predicted});
            }
        }
    }
    return t;
}

Table cmd_tilt(const RunConfig& cfg) {
    cfg.require_laws();
    if (!cfg.r) throw ConfigError("command 'tilt' needs 'r'");
    Table t;
    t.header = {"s", "t", "law", "x", "p"};
    for (const Direction& d : require_directions(cfg)) {
        const TiltPair tp = optimal_tilts(*cfg.alpha, *cfg.beta, d, *cfg.r);
        const RateEval ev = annealed_J(*cfg.alpha, *cfg.beta, d, *cfg.r);
        const std::string tag = fmt(d.s) + "," + fmt(d.t);
        t.add_meta("tilt(" + tag + ").r", fmt(*cfg.r));
        t.add_meta("tilt(" + tag + ").lambda_star", fmt(ev.lambda_star));
        t.add_meta("tilt(" + tag + ").z_star", fmt(ev.z_star));
        t.add_meta("tilt(" + tag + ").h1", fmt(tp.h1));
        t.add_meta("tilt(" + tag + ").h2", fmt(tp.h2));
        t.add_meta("tilt(" + tag + ").residual",
                   fmt(entropy_decomposition_residual(*cfg.alpha, *cfg.beta, d, *cfg.r)));
        for (const Atom& a : tp.nu1.exact_law().atoms())
            t.rows.push_back({fmt(d.s), fmt(d.t), "nu1", fmt(a.x), fmt(a.p)});
        for (const Atom& a : tp.nu2.exact_law().atoms())
            t.rows.push_back({fmt(d.s), fmt(d.t), "nu2", fmt(a.x), fmt(a.p)});
    }
    return t;
}

Table cmd_left_tail(const RunConfig& cfg) {
    cfg.require_laws();
    if (cfg.intervals.empty()) throw ConfigError("command 'left-tail' needs 'intervals'");
    Table t;
    t.header = {"s", "t", "x", "y", "bound"};
    for (const Direction& d : require_directions(cfg))
        for (const auto& [x, y] : cfg.intervals) {
            const ExtReal bound = left_tail_bound(*cfg.alpha, *cfg.beta, d, x, y);
            t.rows.push_back({fmt(d.s), fmt(d.t), fmt(x), fmt(y), fmt(bound)});
        }
    return t;
}

Table cmd_simulate(const RunConfig& cfg) {
    cfg.require_laws();
    const Direction d = require_directions(cfg).front();
    Table t;
    t.header = {"replicate", "n", "value"};
    const std::vector<double> samples =
        mc_corner_samples(*cfg.alpha, *cfg.beta, d, cfg.n, cfg.reps, cfg.seed, cfg.mode);
    for (int rep = 0; rep < int(samples.size()); ++rep)
        t.rows.push_back({std::to_string(rep), std::to_string(cfg.n), fmt(samples[rep])});

    t.add_meta("estimator", cfg.estimator);
    t.add_meta("mode", to_string(cfg.mode));
    if (cfg.estimator == "shape") {
        const McEstimate est =
            mc_shape_estimate(*cfg.alpha, *cfg.beta, d, cfg.n, cfg.reps, cfg.seed, cfg.mode);
        t.add_meta("mean", fmt(est.mean));
        t.add_meta("stderr", fmt(est.stderr_of_mean));
    } else if (cfg.estimator == "lyapunov") {
        if (cfg.lambda_grid.empty())
            throw ConfigError("simulate with estimator 'lyapunov' needs 'lambda_grid'");
        for (double lam : cfg.lambda_grid) {
            const McLyapunovEstimate est = mc_lyapunov_estimate(
                *cfg.alpha, *cfg.beta, d, lam, cfg.n, cfg.reps, cfg.seed, cfg.mode);
            t.add_meta("lyapunov(" + fmt(lam) + ")", fmt(est.value));
            if (est.heavy_tail_warning)
                t.add_meta("warning(" + fmt(lam) + ")",
                           "lambda above half the finiteness threshold; estimate is heavy-tailed");
        }
    } else if (cfg.estimator == "tail" || cfg.estimator == "left-tail") {
        if (cfg.r_grid.empty())
            throw ConfigError("simulate with a tail estimator needs 'r_grid'");
        for (double r : cfg.r_grid) {
            const ExtReal est =
                cfg.estimator == "tail"
                    ? mc_tail_estimate(*cfg.alpha, *cfg.beta, d, r, cfg.n, cfg.reps, cfg.seed,
                                       cfg.mode)
                    : mc_left_tail_estimate(*cfg.alpha, *cfg.beta, d, r, cfg.n, cfg.reps,
                                            cfg.seed, cfg.mode);
            t.add_meta(cfg.estimator + "(" + fmt(r) + ")", fmt(est));
        }
    } else {
        throw ConfigError("estimator must be shape, lyapunov, tail or left-tail");
    }
    return t;
}

Table cmd_burke(const RunConfig& cfg) {
    cfg.require_laws();
    if (!cfg.z) throw ConfigError("command 'burke' needs 'z'");
    const BurkeReport rep =
        burke_check(*cfg.alpha, *cfg.beta, *cfg.z, cfg.n, cfg.n, cfg.reps, cfg.seed);
    Table t;
    t.header = {"series", "index", "expected", "mean", "se"};
    t.add_meta("z", fmt(rep.z));
    t.add_meta("m", std::to_string(rep.m));
    t.add_meta("n", std::to_string(rep.n));
    t.add_meta("reps", std::to_string(rep.reps));
    t.add_meta("means_pass", rep.means_pass ? "true" : "false");
    t.add_meta("mean_failures", std::to_string(rep.mean_failures));
    t.add_meta("corr_pass", rep.corr_pass ? "true" : "false");
    t.add_meta("corr_failures", std::to_string(rep.corr_failures));
    t.add_meta("max_abs_corr", fmt(rep.max_abs_corr));
    t.add_meta("corr_threshold", fmt(rep.corr_threshold));
    for (int i = 0; i < rep.m; ++i)
        t.rows.push_back({"I", std::to_string(i + 1), fmt(rep.expected_i[i]), fmt(rep.mean_i[i]),
                          fmt(rep.se_i[i])});
    for (int j = 0; j < rep.n; ++j)
        t.rows.push_back({"J", std::to_string(j + 1), fmt(rep.expected_j[j]), fmt(rep.mean_j[j]),
                          fmt(rep.se_j[j])});
    return t;
}

Table cmd_tasep(const RunConfig& cfg) {
    cfg.require_laws();
    Table t;
    if (cfg.positions) {
        const EnvSample env =
            sample_env(*cfg.alpha, *cfg.beta, cfg.n, cfg.n, cfg.seed, cfg.mode);
        const PassageTable table = passage_times(sample_weights(env));
        const TasepPositions pos = tasep_positions(table, cfg.time);
        t.header = {"particle", "position", "unreliable"};
        t.add_meta("time", fmt(pos.time));
        t.add_meta("n", std::to_string(cfg.n));
        for (int i = 0; i < int(pos.position.size()); ++i)
            t.rows.push_back({std::to_string(i + 1), std::to_string(pos.position[i]),
                              pos.unreliable[i] ? "true" : "false"});
        return t;
    }
    if (cfg.t_grid.empty()) throw ConfigError("command 'tasep' needs 't_grid' (or positions=true)");
    if (!(cfg.x > 0.0) || !(cfg.y > 0.0)) throw ConfigError("command 'tasep' needs x > 0, y > 0");
    t.header = {"kind", "x", "y", "t", "value"};
    for (Kind kind : kinds_of(cfg.kind))
        for (double tt : cfg.t_grid) {
            const ExtReal v = tasep_rate(kind, *cfg.alpha, *cfg.beta, cfg.x, cfg.y, tt);
            t.rows.push_back({to_string(kind), fmt(cfg.x), fmt(cfg.y), fmt(tt), fmt(v)});
        }
    return t;
}

Table cmd_duality(const RunConfig& cfg) {
    cfg.require_laws();
    if (cfg.lambda_grid.empty()) throw ConfigError("command 'duality-check' needs 'lambda_grid'");
    Table t;
    t.header = {"s", "t", "kind", "lambda", "lyapunov", "residual"};
    for (const Direction& d : require_directions(cfg))
        for (Kind kind : kinds_of(cfg.kind))
            for (double lam : cfg.lambda_grid) {
                const double gap = duality_gap(kind, *cfg.alpha, *cfg.beta, d, lam);
                const ExtReal l_val = lyapunov(kind, *cfg.alpha, *cfg.beta, d, lam).value;
                t.rows.push_back(
                    {fmt(d.s), fmt(d.t), to_string(kind), fmt(lam), fmt(l_val), fmt(gap)});
            }
    return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "shape", "phase",    "lyapunov", "rate",  "expand",        "tilt",
        "left-tail", "simulate", "burke",    "tasep", "duality-check"};
    return names;
}

void run_command(const std::string& command, const RunConfig& cfg, std::ostream& out) {
    Table t;
    if (command == "shape") t = cmd_shape(cfg);
    else if (command == "phase") t = cmd_phase(cfg);
    else if (command == "lyapunov") t = cmd_lyapunov(cfg);
    else if (command == "rate") t = cmd_rate(cfg);
    else if (command == "expand") t = cmd_expand(cfg);
    else if (command == "tilt") t = cmd_tilt(cfg);
    else if (command == "left-tail") t = cmd_left_tail(cfg);
    else if (command == "simulate") t = cmd_simulate(cfg);
    else if (command == "burke") t = cmd_burke(cfg);
    else if (command == "tasep") t = cmd_tasep(cfg);
    else if (command == "duality-check") t = cmd_duality(cfg);
    else throw ConfigError("unknown command '" + command + "'");
    emit(t, cfg.format, out);
}

int run_cli(int argc, const char* const* argv) {
    try {
        if (argc < 2) throw ConfigError("usage: cgmldp <command> [--config <path>] [--key value ...]");
        const std::string command = argv[1];
        if (command == "--help" || command == "-h") {
            std::cout << "usage: cgmldp <command> [--config <path>] [--key value ...]\n"
                      << "commands:";
            for (const std::string& name : command_names()) std::cout << " " << name;
            std::cout << "\n";
            return 0;
        }
        if (std::find(command_names().begin(), command_names().end(), command) ==
            command_names().end())
            throw ConfigError("unknown command '" + command + "'");

        CLI::App app{"exact large-deviation evaluator for the inhomogeneous corner growth model"};
        std::string config_path, alpha_text, beta_text, directions_text, lambda_text, r_grid_text,
            eps_text, tgrid_text, intervals_text, mode_text, kind_text, estimator_text,
            output_text, format_text;
        double z = 0, rr = 0, xx = 0, yy = 0, time_v = 0, s_v = 0, t_v = 0;
        long long n_v = 0, reps_v = 0, seed_v = 0, level_v = 0;
        bool positions_flag = false;
        app.add_option("--config", config_path, "JSON config file");
        app.add_option("--alpha", alpha_text, "inline law spec for alpha (JSON)");
        app.add_option("--beta", beta_text, "inline law spec for beta (JSON)");
        app.add_option("--s", s_v, "direction s (with --t, replaces 'directions')");
        app.add_option("--t", t_v, "direction t");
        app.add_option("--directions", directions_text, "semicolon list: s,t;s,t;...");
        app.add_option("--lambda-grid", lambda_text, "comma list or lo:hi:count");
        app.add_option("--r-grid", r_grid_text, "comma list or lo:hi:count");
        app.add_option("--eps-grid", eps_text, "comma list or lo:hi:count");
        app.add_option("--t-grid", tgrid_text, "comma list or lo:hi:count");
        app.add_option("--intervals", intervals_text, "semicolon list: x,y;x,y;...");
        app.add_option("--z", z, "stationary boundary parameter");
        app.add_option("--r", rr, "rate function argument");
        app.add_option("--x", xx, "tasep particle fraction");
        app.add_option("--y", yy, "tasep displacement fraction");
        app.add_option("--time", time_v, "tasep snapshot time");
        app.add_option("--n", n_v, "lattice scale");
        app.add_option("--reps", reps_v, "Monte Carlo replicas");
        app.add_option("--seed", seed_v, "RNG seed");
        app.add_option("--mode", mode_text, "quenched | annealed");
        app.add_option("--kind", kind_text, "quenched | annealed | both");
        app.add_option("--estimator", estimator_text, "simulate: shape|lyapunov|tail|left-tail");
        app.add_flag("--positions", positions_flag, "tasep: emit simulated positions");
        app.add_option("--level-set-samples", level_v, "shape: emit {g=1} samples");
        app.add_option("--output", output_text, "output path or -");
        app.add_option("--format", format_text, "csv | json");
        try {
            app.parse(argc - 1, argv + 1);
        } catch (const CLI::CallForHelp&) {
            std::cout << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            throw ConfigError(std::string("argument error: ") + e.what());
        }

        RunConfig cfg;
        if (app.count("--config")) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
            nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
            if (doc.is_discarded()) throw ConfigError("config file is not valid JSON");
            cfg = RunConfig::from_json(doc);
        }
        if (app.count("--alpha")) cfg.alpha = parse_law_text(alpha_text, "alpha");
        if (app.count("--beta")) cfg.beta = parse_law_text(beta_text, "beta");
        if (app.count("--s") || app.count("--t")) {
            if (!app.count("--s") || !app.count("--t"))
                throw ConfigError("--s and --t must be given together");
            cfg.directions = {{s_v, t_v}};
        }
        if (app.count("--directions")) {
            cfg.directions.clear();
            std::stringstream ss(directions_text);
            std::string entry;
            while (std::getline(ss, entry, ';')) {
                double s = 0, t = 0;
                if (std::sscanf(entry.c_str(), "%lf,%lf", &s, &t) != 2)
                    throw ConfigError("--directions: expected s,t;s,t;...");
                cfg.directions.push_back({s, t});
            }
        }
        if (app.count("--lambda-grid")) cfg.lambda_grid = parse_grid_text(lambda_text, "lambda-grid");
        if (app.count("--r-grid")) cfg.r_grid = parse_grid_text(r_grid_text, "r-grid");
        if (app.count("--eps-grid")) cfg.eps_grid = parse_grid_text(eps_text, "eps-grid");
        if (app.count("--t-grid")) cfg.t_grid = parse_grid_text(tgrid_text, "t-grid");
        if (app.count("--intervals")) {
            cfg.intervals.clear();
            std::stringstream ss(intervals_text);
            std::string entry;
            while (std::getline(ss, entry, ';')) {
                double x = 0, y = 0;
                if (std::sscanf(entry.c_str(), "%lf,%lf", &x, &y) != 2)
                    throw ConfigError("--intervals: expected x,y;x,y;...");
                cfg.intervals.emplace_back(x, y);
            }
        }
        if (app.count("--z")) cfg.z = z;
        if (app.count("--r")) cfg.r = rr;
        if (app.count("--x")) cfg.x = xx;
        if (app.count("--y")) cfg.y = yy;
        if (app.count("--time")) cfg.time = time_v;
        if (app.count("--n")) cfg.n = int(n_v);
        if (app.count("--reps")) cfg.reps = int(reps_v);
        if (app.count("--seed")) cfg.seed = std::uint64_t(seed_v);
        if (app.count("--mode")) cfg.mode = parse_mode(mode_text);
        if (app.count("--kind")) cfg.kind = parse_kind(kind_text);
        if (app.count("--estimator")) cfg.estimator = estimator_text;
        if (positions_flag) cfg.positions = true;
        if (app.count("--level-set-samples")) cfg.level_set_samples = int(level_v);
        if (app.count("--output")) cfg.output = output_text;
        if (app.count("--format")) {
            if (format_text != "csv" && format_text != "json")
                throw ConfigError("format must be 'csv' or 'json'");
            cfg.format = format_text;
        }

        if (cfg.output == "-") {
            run_command(command, cfg, std::cout);
        } else {
            std::ofstream out(cfg.output);
            if (!out) throw ConfigError("cannot open output file '" + cfg.output + "'");
            run_command(command, cfg, out);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const InternalConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace cgmldp::cli
