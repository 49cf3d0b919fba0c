#include "summa/cli.hpp"

#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "summa/identities.hpp"
#include "summa/io.hpp"
#include "summa/scenarios.hpp"

namespace summa {

namespace {

std::string strip_ws(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

void write_output(const RunConfig& cfg, const std::string& content) {
    if (cfg.output.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + cfg.output + "'");
    out << content;
}

Mode mode_from_name(const std::string& name) {
    for (Mode m : all_modes()) {
        if (name == to_string(m)) return m;
    }
    throw std::invalid_argument("unknown mode '" + name + "'");
}

/// Source trace plus the lambda that goes with it.
struct Source {
    DistanceTrace trace_data;
    IndexMethod lambda;
    std::string lambda_expr;
    Index horizon = 0;
};

Source resolve_source(const RunConfig& cfg, bool need_target) {
    Source src;
    if (!cfg.trace_csv.empty()) {
        std::ifstream in(cfg.trace_csv);
        if (!in) throw std::runtime_error("cannot open trace csv '" + cfg.trace_csv + "'");
        src.trace_data = read_trace_csv(in);
        if (cfg.horizon > 0 && cfg.horizon != src.trace_data.horizon) {
            throw std::invalid_argument("trace csv carries horizon " +
                                        std::to_string(src.trace_data.horizon) +
                                        "; --horizon cannot resize it");
        }
        if (cfg.lambda_expr.empty()) {
            throw std::invalid_argument("a lambda expression is required with --trace-csv");
        }
        src.lambda_expr = cfg.lambda_expr;
    } else if (!cfg.scenario_name.empty() || !cfg.scenario_file.empty()) {
        Scenario sc = cfg.scenario_file.empty()
                          ? builtin(cfg.scenario_name)
                          : scenario_from_config(read_kv_config(cfg.scenario_file));
        if (cfg.horizon > 0) sc.horizon = cfg.horizon;
        if (!cfg.lambda_expr.empty()) sc.lambda_expr = cfg.lambda_expr;
        if (cfg.probes) sc.probes = *cfg.probes;
        src.trace_data = trace(sc.seq, sc.probes, sc.horizon, sc.target);
        src.lambda_expr = sc.lambda_expr;
    } else {
        throw std::invalid_argument("no data source: pass --scenario, --scenario-file or --trace-csv");
    }
    src.horizon = src.trace_data.horizon;
    src.lambda = parse_lambda_for_horizon(src.lambda_expr, src.horizon);
    if (need_target && !src.trace_data.has_target()) {
        throw std::invalid_argument("this command needs a target row in the trace");
    }
    return src;
}

nlohmann::json config_echo(const RunConfig& cfg) {
    nlohmann::json j;
    switch (cfg.command) {
        case Command::Transform: j["command"] = "transform"; break;
        case Command::Density: j["command"] = "density"; break;
        case Command::Verdict: j["command"] = "verdict"; break;
        case Command::Scenario: j["command"] = "scenario"; break;
        case Command::Identities: j["command"] = "identities"; break;
        case Command::Conditions: j["command"] = "conditions"; break;
    }
    if (!cfg.scenario_name.empty()) j["scenario"] = cfg.scenario_name;
    if (!cfg.scenario_file.empty()) j["scenario_file"] = cfg.scenario_file;
    if (!cfg.trace_csv.empty()) j["trace_csv"] = cfg.trace_csv;
    if (!cfg.lambda_expr.empty()) j["lambda"] = cfg.lambda_expr;
    if (!cfg.mu_expr.empty()) j["mu"] = cfg.mu_expr;
    if (!cfg.p_expr.empty()) j["p"] = cfg.p_expr;
    if (!cfg.q_expr.empty()) j["q"] = cfg.q_expr;
    if (cfg.horizon > 0) j["horizon"] = cfg.horizon;
    j["epsilon"] = cfg.epsilon;
    j["delta"] = cfg.delta;
    j["power"] = cfg.power;
    j["ideal"] = to_string(cfg.ideal);
    j["ideal_threshold"] = cfg.ideal_threshold;
    if (cfg.command == Command::Identities) {
        j["seed"] = cfg.seed;
        j["trials"] = cfg.trials;
        j["tolerance"] = cfg.tolerance;
    }
    return j;
}

int run_transform(const RunConfig& cfg) {
    const bool strong = cfg.series.rfind("strong", 0) == 0;
    Source src = resolve_source(cfg, strong);
    const DistanceTrace& tr = src.trace_data;

    std::vector<MeanSeries> series;
    const std::string which = cfg.series.empty() ? "all" : cfg.series;
    auto want = [&which](const char* name) { return which == "all" || which == name; };

    if (want("c1")) {
        MeanSeries c1 = c_lambda(tr, IndexMethod::identity(tr.horizon));
        c1.kind = MeanKind::C1;
        series.push_back(std::move(c1));
    }
    if (want("c_lambda")) series.push_back(c_lambda(tr, src.lambda));
    if (want("d_lambda")) series.push_back(d_lambda(tr, src.lambda));
    if (which == "deferred") {
        if (cfg.p_expr.empty() || cfg.q_expr.empty()) {
            throw std::invalid_argument("deferred means need --p and --q expressions");
        }
        const IndexMethod q = parse_lambda_for_horizon(cfg.q_expr, tr.horizon);
        std::vector<Index> p_vals, q_vals;
        const bool p_zero = strip_ws(cfg.p_expr) == "0";
        const IndexMethod p =
            p_zero ? IndexMethod::from_values("0", {}) : parse_lambda(cfg.p_expr, q.size());
        for (Index n = 1; n <= q.size(); ++n) {
            p_vals.push_back(p_zero ? 0 : p.value(n));
            q_vals.push_back(q.value(n));
        }
        series.push_back(deferred(tr, DeferredPair::from_values(
                                          cfg.p_expr + ".." + cfg.q_expr, p_vals, q_vals)));
    }
    if (tr.has_target()) {
        if (want("strong_c_lambda")) {
            series.push_back(strong_mean(tr, MeanKind::StrongCLambda, src.lambda, cfg.power));
        }
        if (want("strong_d_lambda")) {
            series.push_back(strong_mean(tr, MeanKind::StrongDLambda, src.lambda, cfg.power));
        }
        if (want("strong_c1")) {
            series.push_back(strong_mean(tr, MeanKind::StrongC1, src.lambda, cfg.power));
        }
    }
    if (series.empty() && which != "trace" && which != "all") {
        throw std::invalid_argument("unknown or unavailable series '" + which + "'");
    }

    if (cfg.format == OutputFormat::Csv) {
        CsvWriter w;
        if (which == "all" || which == "trace") w.add_trace(tr);
        for (const auto& s : series) w.add_mean(s);
        std::ostringstream out;
        w.write(out);
        write_output(cfg, out.str());
    } else {
        nlohmann::json j;
        j["config"] = config_echo(cfg);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : series) {
            nlohmann::json e;
            e["kind"] = to_string(s.kind);
            e["lambda"] = s.method_label;
            e["power"] = s.power;
            e["upper"] = s.upper;
            e["entries"] = s.entries;
            arr.push_back(std::move(e));
        }
        j["series"] = std::move(arr);
        write_output(cfg, json_dump(j));
    }
    return 0;
}

int run_density(const RunConfig& cfg) {
    Source src = resolve_source(cfg, true);
    const DensitySeries d = c_lambda_stat_density(src.trace_data, src.lambda, cfg.epsilon);

    if (cfg.format == OutputFormat::Csv) {
        CsvWriter w;
        w.add_density(d);
        std::ostringstream out;
        w.write(out);
        write_output(cfg, out.str());
    } else {
        nlohmann::json j;
        j["config"] = config_echo(cfg);
        j["epsilon"] = d.epsilon;
        j["lambda"] = d.method_label;
        j["upper"] = d.upper;
        j["counts"] = d.counts;
        j["entries"] = d.entries;
        write_output(cfg, json_dump(j));
    }
    return 0;
}

int run_verdict(const RunConfig& cfg) {
    Source src = resolve_source(cfg, true);
    const DistanceTrace& tr = src.trace_data;
    const Ideal ideal{cfg.ideal, cfg.ideal_threshold, 0.5};
    const VerdictParams params{cfg.epsilon, cfg.delta, cfg.power};

    std::vector<Mode> modes;
    if (cfg.mode == "all") {
        modes = all_modes();
    } else {
        modes.push_back(mode_from_name(cfg.mode));
    }

    nlohmann::json j;
    j["config"] = config_echo(cfg);

    const Index n_dom = src.lambda.last_leq(tr.horizon);
    nlohmann::json conds = nlohmann::json::array();
    if (n_dom >= 4) {
        const IndexMethod lam = src.lambda.has_generator()
                                    ? parse_lambda(src.lambda_expr, n_dom + 1)
                                    : src.lambda;
        if (lam.size() > n_dom) {
            conds.push_back(to_json(ratio_condition(lam, ConditionQuantity::LimsupNextRatio, n_dom)));
        }
        conds.push_back(to_json(ratio_condition(lam, ConditionQuantity::LiminfStepRatio, n_dom)));
        conds.push_back(to_json(ratio_condition(lam, ConditionQuantity::LimsupStepRatio, n_dom)));
    }
    j["conditions"] = std::move(conds);

    bool any_violated = false;
    nlohmann::json verdicts = nlohmann::json::array();
    for (Mode m : modes) {
        const IdealVerdict v = ideal_verdict(m, tr, src.lambda, ideal, params);
        if (v.worst() == VerdictStatus::Violated) any_violated = true;
        verdicts.push_back(to_json(v));
    }
    j["verdicts"] = std::move(verdicts);

    const MeanSeries pstrong = strong_mean(tr, MeanKind::StrongCLambda, src.lambda, cfg.power);
    const DensitySeries density = c_lambda_stat_density(tr, src.lambda, cfg.epsilon);
    j["inequalities"] = {
        to_json(chebyshev_check(pstrong, density, cfg.epsilon, cfg.power)),
        to_json(bounded_split_check(pstrong, density, cfg.epsilon, cfg.power, sup_deviation(tr)))};
    j["containments"] = {
        to_json(statistical_in_pstrong(tr, src.lambda, cfg.epsilon, cfg.delta, cfg.power)),
        to_json(pstrong_in_statistical(tr, src.lambda, cfg.epsilon, cfg.delta, cfg.power))};
    j["bounds"] = to_json(bounded_estimate(tr));

    write_output(cfg, json_dump(j));
    return any_violated ? 1 : 0;
}

void write_scenario_csv(const ScenarioReport& rep, const std::string& path) {
    CsvWriter w;
    w.add_trace(rep.trace_data);
    w.add_mean(rep.c1);
    w.add_mean(rep.clambda);
    w.add_mean(rep.dlambda);
    w.add_mean(rep.strong_clambda);
    w.add_mean(rep.strong_dlambda);
    w.add_mean(rep.pstrong_clambda);
    w.add_density(rep.density);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open series csv '" + path + "'");
    w.write(out);
}

int run_scenario(const RunConfig& cfg) {
    Scenario sc = cfg.scenario_file.empty() ? builtin(cfg.scenario_name)
                                            : scenario_from_config(read_kv_config(cfg.scenario_file));
    bool overridden = false;
    if (cfg.horizon > 0 && cfg.horizon != sc.horizon) {
        sc.horizon = cfg.horizon;
        overridden = true;
    }
    if (!cfg.lambda_expr.empty() && cfg.lambda_expr != sc.lambda_expr) {
        sc.lambda_expr = cfg.lambda_expr;
        overridden = true;
    }
    if (cfg.probes) {
        sc.probes = *cfg.probes;
        overridden = true;
    }
    if (overridden) {
        // Expectations were fixed for the shipped parameters only.
        sc.expected.clear();
        sc.expected_conditions.clear();
        sc.condition_horizon = 0;
    }

    const ScenarioReport rep = run(sc);
    if (!cfg.series_csv.empty()) write_scenario_csv(rep, cfg.series_csv);

    nlohmann::json j = to_json(rep);
    j["config"] = config_echo(cfg);
    j["expected_cleared_by_overrides"] = overridden;
    write_output(cfg, json_dump(j));
    return rep.passed() ? 0 : 1;
}

int run_identities(const RunConfig& cfg) {
    const std::vector<std::string> lambdas =
        cfg.identity_lambdas.empty() ? default_identity_lambdas() : cfg.identity_lambdas;
    const Index horizon = cfg.horizon > 0 ? cfg.horizon : 500;
    const IdentitySuiteResult result =
        run_identity_suite(cfg.seed, horizon, cfg.trials, lambdas, cfg.tolerance);

    nlohmann::json j;
    j["config"] = config_echo(cfg);
    j["identities"] = to_json(result);
    write_output(cfg, json_dump(j));
    std::cerr << "max identity residual " << fmt_double(result.max_residual) << " over "
              << result.trials << " traces (tolerance " << fmt_double(result.tolerance) << ")\n";
    return result.passed() ? 0 : 1;
}

int run_conditions(const RunConfig& cfg) {
    if (cfg.lambda_expr.empty()) throw std::invalid_argument("conditions: --lambda required");
    const Index horizon = cfg.horizon > 0 ? cfg.horizon : 1000;
    const IndexMethod lam = parse_lambda(cfg.lambda_expr, horizon + 1);

    nlohmann::json conds = nlohmann::json::array();
    conds.push_back(to_json(ratio_condition(lam, ConditionQuantity::LimsupNextRatio, horizon)));
    conds.push_back(to_json(ratio_condition(lam, ConditionQuantity::LiminfStepRatio, horizon)));
    conds.push_back(to_json(ratio_condition(lam, ConditionQuantity::LimsupStepRatio, horizon)));
    conds.push_back(to_json(ratio_condition(lam, ConditionQuantity::LimIndexRatio, horizon)));
    if (!cfg.mu_expr.empty()) {
        const IndexMethod mu = parse_lambda(cfg.mu_expr, horizon + 1);
        conds.push_back(to_json(ratio_condition(mu, ConditionQuantity::LimsupNextRatio, horizon)));
        conds.push_back(
            to_json(ratio_condition(lam, ConditionQuantity::LimCompanionRatio, horizon, mu)));
    }

    nlohmann::json j;
    j["config"] = config_echo(cfg);
    j["conditions"] = std::move(conds);
    write_output(cfg, json_dump(j));
    return 0;
}

}  // namespace

std::map<std::string, std::string> read_kv_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = strip_ws(line);
        if (t.empty() || t[0] == '#' || t[0] == '[') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config file '" + path + "': expected key = value, got '" + t +
                                     "'");
        }
        kv[strip_ws(t.substr(0, eq))] = strip_ws(t.substr(eq + 1));
    }
    return kv;
}

int execute(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    int code = 0;
    switch (cfg.command) {
        case Command::Transform: code = run_transform(cfg); break;
        case Command::Density: code = run_density(cfg); break;
        case Command::Verdict: code = run_verdict(cfg); break;
        case Command::Scenario: code = run_scenario(cfg); break;
        case Command::Identities: code = run_identities(cfg); break;
        case Command::Conditions: code = run_conditions(cfg); break;
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    // Timing stays on the diagnostic stream so artifacts are byte-stable.
    std::cerr << "wall_ms " << elapsed.count() << "\n";
    return code;
}

namespace {

/// Option registry so a key = value config file can fill in whatever a flag
/// did not set (flags win over config values).
struct OptionBook {
    struct Entry {
        CLI::App* sub;
        std::string key;
        CLI::Option* opt;
        std::function<void(const std::string&)> apply;
    };
    std::vector<Entry> entries;

    template <typename T>
    void add(CLI::App* sub, const std::string& name, T& target, const std::string& help) {
        CLI::Option* opt = sub->add_option(name, target, help);
        const std::string key = name.substr(2);
        entries.push_back({sub, key, opt, [&target](const std::string& v) {
                               if constexpr (std::is_same_v<T, std::string>) {
                                   target = v;
                               } else if constexpr (std::is_same_v<T, double>) {
                                   target = std::stod(v);
                               } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                                   target = std::stoull(v);
                               } else if constexpr (std::is_same_v<T, Index>) {
                                   target = std::stoll(v);
                               } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
                                   // Semicolon-separated in config files.
                                   target.clear();
                                   std::size_t start = 0;
                                   while (start <= v.size()) {
                                       const auto sep = v.find(';', start);
                                       const std::string piece = strip_ws(v.substr(
                                           start, sep == std::string::npos ? std::string::npos
                                                                           : sep - start));
                                       if (!piece.empty()) target.push_back(piece);
                                       if (sep == std::string::npos) break;
                                       start = sep + 1;
                                   }
                               }
                           }});
    }

    void merge_config(CLI::App* sub, const std::string& path) const {
        const auto kv = read_kv_config(path);
        for (const auto& [key, value] : kv) {
            bool known = false;
            for (const auto& e : entries) {
                if (e.sub != sub || e.key != key) continue;
                known = true;
                if (e.opt->count() == 0) e.apply(value);
            }
            if (!known) {
                throw std::invalid_argument("config file key '" + key +
                                            "' does not match any option of this command");
            }
        }
    }
};

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"summability diagnostics for sequences of closed sets"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string probes_text;
    std::string format_text = "json";
    std::string ideal_text = "density-zero";
    std::string config_path;

    OptionBook book;

    auto add_common = [&](CLI::App* sub) {
        book.add(sub, "--output", cfg.output, "output file (default: stdout)");
        book.add(sub, "--lambda", cfg.lambda_expr, "index method expression");
        book.add(sub, "--horizon", cfg.horizon, "trace horizon N (or condition horizon in n)");
        book.add(sub, "--config", config_path, "key = value config file mirroring these flags");
        return sub;
    };
    auto add_source = [&](CLI::App* sub) {
        book.add(sub, "--scenario", cfg.scenario_name, "builtin scenario as the data source");
        book.add(sub, "--scenario-file", cfg.scenario_file, "scenario definition config file");
        book.add(sub, "--trace-csv", cfg.trace_csv, "re-ingest a trace CSV as the data source");
        book.add(sub, "--probes", probes_text, "probe list, e.g. \"(2,1);(0,3)\"");
        return sub;
    };
    auto add_params = [&](CLI::App* sub) {
        book.add(sub, "--epsilon", cfg.epsilon, "exceedance level");
        book.add(sub, "--delta", cfg.delta, "density level for statistical modes");
        book.add(sub, "--power", cfg.power, "power p for strong means");
        book.add(sub, "--ideal", ideal_text, "fin or density-zero");
        book.add(sub, "--ideal-threshold", cfg.ideal_threshold, "density-zero threshold");
        return sub;
    };

    CLI::App* transform = add_params(add_source(add_common(
        app.add_subcommand("transform", "emit mean-type transforms of a trace"))));
    book.add(transform, "--series", cfg.series,
             "trace|c1|c_lambda|d_lambda|deferred|strong_c_lambda|strong_d_lambda|strong_c1|all");
    book.add(transform, "--p", cfg.p_expr, "deferred lower expression (0 allowed)");
    book.add(transform, "--q", cfg.q_expr, "deferred upper expression");
    book.add(transform, "--format", format_text, "csv or json");

    CLI::App* density = add_params(add_source(add_common(
        app.add_subcommand("density", "emit C_lambda statistical densities"))));
    book.add(density, "--format", format_text, "csv or json");

    CLI::App* verdict = add_params(add_source(add_common(
        app.add_subcommand("verdict", "finite-horizon convergence-mode verdicts"))));
    book.add(verdict, "--mode", cfg.mode, "one mode name or all");

    CLI::App* scenario = add_params(add_common(
        app.add_subcommand("scenario", "run a named scenario and diff expectations")));
    book.add(scenario, "--name", cfg.scenario_name, "builtin scenario name");
    book.add(scenario, "--file", cfg.scenario_file, "scenario definition config file");
    book.add(scenario, "--probes", probes_text, "override probes");
    book.add(scenario, "--series-csv", cfg.series_csv, "also write every series to this CSV");

    CLI::App* identities = add_common(
        app.add_subcommand("identities", "randomized exact-identity suite"));
    book.add(identities, "--seed", cfg.seed, "RNG seed");
    book.add(identities, "--trials", cfg.trials, "number of random traces");
    book.add(identities, "--tolerance", cfg.tolerance, "max allowed relative residual");
    book.add(identities, "--identity-lambda", cfg.identity_lambdas,
             "lambda expression (repeatable; default n, 2*n, n^2, 2^n)");

    CLI::App* conditions = add_common(
        app.add_subcommand("conditions", "ratio-condition estimates for lambda (and mu)"));
    book.add(conditions, "--mu", cfg.mu_expr, "companion method expression");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        CLI::App* active = nullptr;
        if (transform->parsed()) (active = transform), cfg.command = Command::Transform;
        if (density->parsed()) (active = density), cfg.command = Command::Density;
        if (verdict->parsed()) (active = verdict), cfg.command = Command::Verdict;
        if (scenario->parsed()) (active = scenario), cfg.command = Command::Scenario;
        if (identities->parsed()) (active = identities), cfg.command = Command::Identities;
        if (conditions->parsed()) (active = conditions), cfg.command = Command::Conditions;

        if (!config_path.empty() && active != nullptr) book.merge_config(active, config_path);

        if (!probes_text.empty()) cfg.probes = parse_probe_list(probes_text);
        if (format_text == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (format_text == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            throw std::invalid_argument("--format must be csv or json");
        }
        if (ideal_text == "fin") {
            cfg.ideal = IdealKind::Fin;
        } else if (ideal_text == "density-zero") {
            cfg.ideal = IdealKind::DensityZero;
        } else {
            throw std::invalid_argument("--ideal must be fin or density-zero");
        }
        return execute(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace summa
