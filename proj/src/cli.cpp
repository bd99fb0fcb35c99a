// SPDX-License-Identifier: MIT

#include "schilder/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>

#include "schilder/dyadic_basis.hpp"
#include "schilder/ldp.hpp"
#include "schilder/qwiener.hpp"
#include "schilder/rate.hpp"
#include "schilder/verify.hpp"

namespace schilder::cli {

namespace {

using nlohmann::json;

std::vector<double> dyadic_range(int hi, int lo) {
    // 2^hi down to 2^lo inclusive; hi > lo for a decreasing grid.
    std::vector<double> out;
    for (int m = hi; m >= lo; --m) out.push_back(std::ldexp(1.0, m));
    return out;
}

DecaySpec spectrum_from_json(const json& j, std::size_t& channels_out) {
    if (!j.is_object()) throw ConfigError("spectrum descriptor must be a JSON object");
    static const std::set<std::string> known = {"kind", "lambda0", "ratio", "p",
                                                "lambdas", "K"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw ConfigError("unknown spectrum key '" + key + "'");
    const std::string kind = j.value("kind", "geometric");
    if (j.contains("K")) channels_out = j.at("K").get<std::size_t>();
    if (kind == "geometric")
        return DecaySpec::geometric(j.value("lambda0", 0.5), j.value("ratio", 0.5));
    if (kind == "power")
        return DecaySpec::power(j.value("lambda0", 1.0), j.value("p", 2.0));
    if (kind == "explicit") {
        if (!j.contains("lambdas"))
            throw ConfigError("explicit spectrum needs a 'lambdas' array");
        auto lams = j.at("lambdas").get<std::vector<double>>();
        if (!j.contains("K")) channels_out = lams.size();
        return DecaySpec::explicit_list(std::move(lams));
    }
    throw ConfigError("unknown spectrum kind '" + kind + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& file) {
    json j;
    try {
        j = json::parse(io::read_text(file));
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + file + ": " + e.what());
    }
    static const std::set<std::string> known = {
        "alpha", "spectrum", "J",      "N",     "K",          "seed",   "M",
        "delta", "eps",      "mc_upto", "a",    "growth",     "n",      "t",
        "in",    "out",      "center", "format", "dump_limit", "command"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

    if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("spectrum")) cfg.spectrum = spectrum_from_json(j.at("spectrum"), cfg.channels);
    if (j.contains("J")) cfg.level = j.at("J").get<std::size_t>();
    if (j.contains("N")) cfg.coeff_count = j.at("N").get<std::size_t>();
    if (j.contains("K")) cfg.channels = j.at("K").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("M")) cfg.paths = j.at("M").get<std::size_t>();
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    if (j.contains("eps")) cfg.eps_grid = parse_eps_grid(j.at("eps").get<std::string>());
    if (j.contains("mc_upto")) cfg.mc_upto = j.at("mc_upto").get<double>();
    if (j.contains("a")) cfg.tight_a = j.at("a").get<double>();
    if (j.contains("growth")) cfg.div_growth = j.at("growth").get<double>();
    if (j.contains("n")) cfg.basis_n = j.at("n").get<std::size_t>();
    if (j.contains("t")) cfg.basis_t = j.at("t").get<double>();
    if (j.contains("in")) cfg.input = j.at("in").get<std::string>();
    if (j.contains("out")) cfg.output = j.at("out").get<std::string>();
    if (j.contains("center")) cfg.center = j.at("center").get<std::string>();
    if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
    if (j.contains("dump_limit")) cfg.dump_limit = j.at("dump_limit").get<std::size_t>();
    if (j.contains("command")) cfg.command = j.at("command").get<std::string>();
}

constexpr const char* kLdpCommands[] = {"ball-inf", "ldp-curve", "tightness"};

}  // namespace

std::vector<double> parse_eps_grid(const std::string& text) {
    if (text.empty()) throw ConfigError("eps grid is empty");
    const auto range_sep = text.find("..");
    if (range_sep != std::string::npos) {
        int hi = 0, lo = 0;
        if (std::sscanf(text.c_str(), "2^%d..2^%d", &hi, &lo) != 2)
            throw ConfigError("cannot parse eps range '" + text + "' (expected 2^a..2^b)");
        if (hi <= lo) throw ConfigError("eps range must be decreasing: " + text);
        return dyadic_range(hi, lo);
    }
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            int hi = 0;
            if (std::sscanf(tok.c_str(), "2^%d", &hi) == 1)
                out.push_back(std::ldexp(1.0, hi));
            else {
                const double v = std::stod(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                out.push_back(v);
            }
        } catch (const std::exception&) {
            throw ConfigError("cannot parse eps value '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (!(out[i] > out[i + 1])) throw ConfigError("eps grid must be strictly decreasing");
    for (double e : out)
        if (!(e > 0.0)) throw ConfigError("eps values must be positive");
    return out;
}

DecaySpec parse_spectrum_json(const std::string& text, std::size_t& channels_out) {
    try {
        return spectrum_from_json(json::parse(text), channels_out);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("spectrum descriptor: ") + e.what());
    }
}

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;

    // Config file first, flags override.
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") apply_config_file(cfg, args[i + 1]);

    CLI::App app{"Ciesielski transforms, Q-Wiener sampling and ball LDP checks"};
    app.fallthrough();
    std::string config_file, spectrum_text, eps_text;
    app.add_option("--config", config_file, "JSON config file (flags override)");
    app.add_option("--alpha", cfg.alpha, "Holder exponent in (0,1)");
    app.add_option("--spectrum", spectrum_text, "spectrum descriptor JSON");
    app.add_option("--J", cfg.level, "dyadic path level");
    app.add_option("--N", cfg.coeff_count, "coefficient truncation (default 2^J)");
    app.add_option("--K", cfg.channels, "channel count");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--paths,--M", cfg.paths, "Monte Carlo sample count");
    app.add_option("--delta", cfg.delta, "ball radius");
    app.add_option("--eps", eps_text, "eps grid: 2^-3..2^-14 or comma list");
    app.add_option("--a", cfg.tight_a, "tightness decay target");
    app.add_option("--growth", cfg.div_growth, "tightness divergent sequence growth");
    app.add_option("--n", cfg.basis_n, "basis index");
    app.add_option("--t", cfg.basis_t, "evaluation point");
    app.add_option("--in", cfg.input, "input file");
    app.add_option("--out", cfg.output, "output file");
    app.add_option("--center", cfg.center, "ball center coefficient CSV");
    app.add_option("--format", cfg.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--dump-limit", cfg.dump_limit, "simulate: paths written to CSV");

    bool mc_requested = false;
    auto* mc_opt = app.add_option("--mc-upto", cfg.mc_upto,
                                  "attempt MC on the curve for eps >= this");

    app.require_subcommand(0, 1);
    auto* basis = app.add_subcommand("basis", "evaluate basis functions");
    std::string basis_action;
    basis->add_option("action", basis_action)->check(CLI::IsMember({"eval"}));
    auto* transform = app.add_subcommand("transform", "forward/inverse Ciesielski");
    transform->add_option("direction", cfg.transform_dir)
        ->check(CLI::IsMember({"forward", "inverse"}));
    app.add_subcommand("simulate", "sample Q-Wiener paths");
    app.add_subcommand("rate", "Cameron-Martin rate of a path file");
    app.add_subcommand("ball-inf", "rate infimum over a coefficient ball");
    app.add_subcommand("ldp-curve", "eps log-probability curve for a ball");
    app.add_subcommand("tightness", "exponential tightness check");
    app.add_subcommand("verify", "run the acceptance suite");

    std::vector<std::string> argv_copy(args.rbegin(), args.rend());  // CLI11 wants reversed
    try {
        app.parse(argv_copy);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command.empty()) throw ConfigError("no command given (see --help)");
    if (!spectrum_text.empty())
        cfg.spectrum = parse_spectrum_json(spectrum_text, cfg.channels);
    if (!eps_text.empty()) cfg.eps_grid = parse_eps_grid(eps_text);
    mc_requested = mc_opt->count() > 0;

    // Cross-field validation.
    HolderExponent alpha(cfg.alpha);
    for (const char* c : kLdpCommands)
        if (cfg.command == c) alpha.require_ldp();
    if (cfg.command == "basis" && basis_action.empty())
        throw ConfigError("basis requires an action (eval)");
    if (cfg.eps_grid.empty() && (cfg.command == "ldp-curve"))
        cfg.eps_grid = dyadic_range(-3, -14);
    if (cfg.eps_grid.empty() && cfg.command == "tightness")
        cfg.eps_grid = {0.25, 0.125};
    if (!mc_requested) cfg.mc_upto = cfg.command == "ldp-curve" ? -1.0 : cfg.mc_upto;
    return cfg;
}

namespace {

SimConfig make_sim(const RunConfig& cfg) {
    SimConfig sim;
    sim.spectrum = Spectrum::make(cfg.spectrum, cfg.channels);
    sim.level = cfg.level;
    sim.coeff_count = cfg.coeff_count;
    sim.channels = cfg.channels;
    sim.seed = cfg.seed;
    sim.paths = cfg.paths;
    sim.alpha = cfg.alpha;
    sim.validate();
    return sim;
}

io::Value curve_to_json(const LdpCurve& curve) {
    io::Value root = io::Value::object();
    root["target"] = curve.target;
    io::Value pts = io::Value::array();
    for (const auto& p : curve.points) {
        io::Value v = io::Value::object();
        v["eps"] = p.eps;
        v["logp"] = p.logp;
        v["tail_bound"] = p.tail_bound;
        v["eps_logp"] = p.eps_logp;
        if (p.mc) {
            io::Value mc = io::Value::object();
            mc["p_hat"] = p.mc->p_hat;
            mc["stderr"] = p.mc->std_error;
            mc["hits"] = p.mc->hits;
            mc["M"] = p.mc->paths;
            v["mc"] = std::move(mc);
        } else {
            v["mc"] = io::Value();
            if (!p.mc_note.empty()) v["mc_note"] = p.mc_note;
        }
        pts.push_back(std::move(v));
    }
    root["points"] = std::move(pts);
    return root;
}

std::string curve_to_csv(const LdpCurve& curve) {
    std::string out = "eps,logp,tail_bound,eps_logp,mc_p,mc_stderr\n";
    for (const auto& p : curve.points) {
        out += io::format_double(p.eps) + ',' + io::format_double(p.logp) + ',' +
               io::format_double(p.tail_bound) + ',' + io::format_double(p.eps_logp);
        if (p.mc)
            out += ',' + io::format_double(p.mc->p_hat) + ',' +
                   io::format_double(p.mc->std_error);
        else
            out += ",,";
        out += '\n';
    }
    return out;
}

int dispatch(const RunConfig& cfg) {
    if (cfg.command == "basis") {
        const HolderExponent alpha(cfg.alpha);
        io::Value v = io::Value::object();
        v["n"] = cfg.basis_n;
        v["t"] = cfg.basis_t;
        v["haar"] = haar_eval(cfg.basis_n, cfg.basis_t);
        v["schauder"] = schauder_eval(cfg.basis_n, cfg.basis_t);
        v["alpha"] = cfg.alpha;
        v["weight"] = weight(cfg.basis_n, alpha);
        if (cfg.basis_n >= 1) {
            const auto idx = split_index(cfg.basis_n);
            v["k_level"] = idx.level;
            v["l_shift"] = idx.shift;
        }
        emit_report(v, cfg.output);
        return 0;
    }
    if (cfg.command == "transform") {
        const HolderExponent alpha(cfg.alpha);
        if (cfg.input.empty() || cfg.output.empty())
            throw ConfigError("transform needs --in and --out");
        if (cfg.transform_dir == "forward") {
            io::save_coeff_csv(forward(io::load_path_csv(cfg.input), alpha), cfg.output);
        } else {
            const CoeffMatrix coeffs = io::load_coeff_csv(cfg.input, alpha);
            const std::size_t level = std::max(cfg.level, coeffs.level());
            io::save_path_csv(inverse(coeffs, level), cfg.output);
        }
        return 0;
    }
    if (cfg.command == "simulate") {
        const SimConfig sim = make_sim(cfg);
        io::Value v = io::Value::object();
        v["J"] = sim.level;
        v["N"] = sim.coeffs();
        v["K"] = sim.channels;
        v["M"] = sim.paths;
        v["seed"] = static_cast<std::size_t>(sim.seed);
        v["log_bound_stat"] = log_bound_stat(sim);
        if (!cfg.output.empty()) {
            const std::size_t dumped = std::min(cfg.dump_limit, sim.paths);
            for (std::size_t i = 0; i < dumped; ++i) {
                std::string name = cfg.output;
                if (sim.paths > 1) {
                    const auto dot = name.rfind(".csv");
                    const std::string suffix = "." + std::to_string(i) + ".csv";
                    name = dot == std::string::npos ? name + suffix
                                                    : name.substr(0, dot) + suffix;
                }
                io::save_path_csv(sample_path(sim, i), name);
            }
            v["paths_written"] = dumped;
        }
        emit_report(v, "");
        return 0;
    }
    if (cfg.command == "rate") {
        if (cfg.input.empty()) throw ConfigError("rate needs --in");
        const HolderExponent alpha(cfg.alpha);
        const DyadicPath path = io::load_path_csv(cfg.input);
        const Spectrum spec = Spectrum::make(cfg.spectrum, path.channels);
        const RateValue rv = rate_total(forward(path, alpha), spec);
        io::Value v = io::Value::object();
        v["value"] = rv.value;
        v["finite"] = rv.finite();
        io::Value per = io::Value::array();
        for (double c : rv.per_channel) per.push_back(c);
        v["per_channel"] = std::move(per);
        emit_report(v, cfg.output);
        return 0;
    }
    if (cfg.command == "ball-inf") {
        if (cfg.center.empty()) throw ConfigError("ball-inf needs --center");
        const HolderExponent alpha(cfg.alpha);
        const CoeffMatrix center = io::load_coeff_csv(cfg.center, alpha);
        BallSpec ball(center, cfg.delta, Spectrum::make(cfg.spectrum, center.channels));
        const BallInfimum inf = ball_infimum(ball);
        const LambdaPartition part = classify(ball);
        io::Value v = io::Value::object();
        v["value"] = inf.value;
        v["finite"] = std::isfinite(inf.value);
        v["delta"] = cfg.delta;
        v["alpha"] = cfg.alpha;
        io::Value cls = io::Value::object();
        cls["L1"] = part.counts[0];
        cls["L2"] = part.counts[1];
        cls["L3"] = part.counts[2];
        cls["L4"] = part.counts[3];
        cls["outside_L3"] = part.outside_l3;
        v["classes"] = std::move(cls);
        emit_report(v, cfg.output);
        return 0;
    }
    if (cfg.command == "ldp-curve") {
        if (cfg.center.empty()) throw ConfigError("ldp-curve needs --center");
        const HolderExponent alpha(cfg.alpha);
        const CoeffMatrix center = io::load_coeff_csv(cfg.center, alpha);
        RunConfig sim_cfg = cfg;
        sim_cfg.channels = center.channels;
        sim_cfg.coeff_count = center.count();
        sim_cfg.level = std::max(cfg.level, center.level());
        const SimConfig sim = make_sim(sim_cfg);
        BallSpec ball(center, cfg.delta, sim.spectrum);
        const bool with_mc = cfg.mc_upto > 0.0;
        const LdpCurve curve =
            ldp_curve(ball, cfg.eps_grid, with_mc, cfg.mc_upto, sim);
        if (cfg.format == "csv") {
            if (cfg.output.empty())
                std::fputs(curve_to_csv(curve).c_str(), stdout);
            else
                io::write_text(cfg.output, curve_to_csv(curve));
        } else {
            emit_report(curve_to_json(curve), cfg.output);
        }
        return 0;
    }
    if (cfg.command == "tightness") {
        const HolderExponent alpha(cfg.alpha);
        const SimConfig sim = make_sim(cfg);
        DivergentSeq seq;
        seq.kind = DivergentSeq::Kind::geometric;
        seq.growth = cfg.div_growth;
        const TightSet set = tight_build(cfg.tight_a, sim.spectrum, seq, alpha,
                                         sim.coeffs(), sim.channels);
        const TightReport rep = tight_check(set, cfg.eps_grid, sim);
        io::Value v = io::Value::object();
        v["a"] = set.a;
        v["lambda_bar"] = set.lambda_bar;
        v["c_q"] = set.c_q;
        v["c_qtilde"] = set.c_qtilde;
        v["sum_c_lambda"] = set.sum_c_lambda;
        io::Value pts = io::Value::array();
        for (const auto& p : rep.points) {
            io::Value pv = io::Value::object();
            pv["eps"] = p.eps;
            pv["estimate"] = p.estimate;
            pv["stderr"] = p.std_error;
            pv["bound"] = p.bound;
            pv["vacuous"] = p.vacuous;
            pv["pass"] = p.pass;
            pts.push_back(std::move(pv));
        }
        v["points"] = std::move(pts);
        emit_report(v, cfg.output);
        return 0;
    }
    if (cfg.command == "verify") {
        const auto results = verify::run_acceptance(std::nullopt, stderr);
        const io::Value report = verify::acceptance_report(results);
        emit_report(report, cfg.output);
        bool all = true;
        for (const auto& r : results) all = all && r.pass;
        return all ? 0 : 1;
    }
    throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace

void emit_report(const io::Value& report, const std::string& location) {
    const std::string text = report.dump(2);
    if (location.empty())
        std::fputs(text.c_str(), stdout);
    else
        io::write_text(location, text);
}

int run(const std::vector<std::string>& args) {
    try {
        return dispatch(parse_config(args));
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 1;
    }
}

}  // namespace schilder::cli
