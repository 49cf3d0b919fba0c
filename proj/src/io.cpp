#include "summa/io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace summa {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::add_trace(const DistanceTrace& tr) {
    for (std::size_t pr = 0; pr < tr.probe_count(); ++pr) {
        if (tr.has_target()) {
            rows_.push_back({pr, 0, 0, "target", tr.target(pr)});
        }
        for (Index k = 1; k <= tr.horizon; ++k) {
            rows_.push_back({pr, k, k, "trace", tr.at(pr, k)});
        }
    }
}

void CsvWriter::add_mean(const MeanSeries& series) {
    std::string kind = to_string(series.kind);
    // Strong means of different powers are distinct series in the table.
    const bool strong = series.kind == MeanKind::StrongCLambda ||
                        series.kind == MeanKind::StrongDLambda ||
                        series.kind == MeanKind::StrongC1;
    if (strong && series.power != 1.0) kind += "@p=" + fmt_double(series.power);
    for (std::size_t pr = 0; pr < series.probe_count(); ++pr) {
        for (Index n = 1; n <= series.horizon; ++n) {
            rows_.push_back(
                {pr, n, series.upper[static_cast<std::size_t>(n - 1)], kind, series.at(pr, n)});
        }
    }
}

void CsvWriter::add_density(const DensitySeries& series) {
    for (std::size_t pr = 0; pr < series.probe_count(); ++pr) {
        for (Index n = 1; n <= series.horizon; ++n) {
            rows_.push_back({pr, n, series.upper[static_cast<std::size_t>(n - 1)], "stat_density",
                             series.at(pr, n)});
        }
    }
}

void CsvWriter::write(std::ostream& out) const {
    std::vector<Row> rows = rows_;
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.probe != b.probe) return a.probe < b.probe;
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.n < b.n;
    });
    out << "probe_index,n,lambda_n,series_kind,value\n";
    for (const Row& r : rows) {
        out << r.probe << ',' << r.n << ',' << r.lambda_n << ',' << r.kind << ','
            << fmt_double(r.value) << '\n';
    }
}

DistanceTrace read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("trace csv: empty input");
    if (line.rfind("probe_index,", 0) != 0) throw std::runtime_error("trace csv: missing header");

    std::map<std::size_t, std::map<Index, double>> traces;
    std::map<std::size_t, double> targets;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string probe_s, n_s, lambda_s, kind, value_s;
        if (!std::getline(row, probe_s, ',') || !std::getline(row, n_s, ',') ||
            !std::getline(row, lambda_s, ',') || !std::getline(row, kind, ',') ||
            !std::getline(row, value_s)) {
            throw std::runtime_error("trace csv: malformed row '" + line + "'");
        }
        const std::size_t probe = std::stoul(probe_s);
        const Index n = std::stoll(n_s);
        const double value = std::strtod(value_s.c_str(), nullptr);
        if (kind == "trace") {
            traces[probe][n] = value;
        } else if (kind == "target") {
            targets[probe] = value;
        }
        // Other kinds are legal in mixed files and ignored on ingest.
    }
    if (traces.empty()) throw std::runtime_error("trace csv: no trace rows");

    std::vector<std::vector<double>> rows;
    std::vector<double> target_row;
    const bool has_targets = !targets.empty();
    if (has_targets && targets.size() != traces.size()) {
        throw std::runtime_error("trace csv: target rows must cover every probe");
    }
    for (const auto& [probe, by_n] : traces) {
        std::vector<double> row;
        row.reserve(by_n.size());
        Index expect = 1;
        for (const auto& [n, v] : by_n) {
            if (n != expect) throw std::runtime_error("trace csv: non-contiguous indices");
            row.push_back(v);
            ++expect;
        }
        rows.push_back(std::move(row));
        if (has_targets) target_row.push_back(targets.at(probe));
    }
    if (has_targets) return DistanceTrace::from_rows(std::move(rows), std::move(target_row));
    return DistanceTrace::from_rows(std::move(rows));
}

nlohmann::json to_json(const ConditionReport& rep) {
    nlohmann::json j;
    j["quantity"] = to_string(rep.quantity);
    j["lambda"] = rep.lambda_label;
    if (!rep.companion_label.empty()) j["companion"] = rep.companion_label;
    j["estimate"] = rep.estimate;
    j["window"] = {rep.window_lo, rep.window_hi};
    j["tolerance"] = rep.tolerance;
    j["verdict"] = to_string(rep.verdict);
    return j;
}

nlohmann::json to_json(const BoundReport& rep) {
    nlohmann::json j;
    j["sup"] = rep.sup;
    j["arg_sup"] = rep.arg_sup;
    j["unbounded_suspect"] = rep.unbounded_suspect;
    return j;
}

nlohmann::json to_json(const IdealVerdict& verdict) {
    nlohmann::json j;
    j["mode"] = to_string(verdict.mode);
    j["ideal"] = to_string(verdict.ideal);
    j["epsilon"] = verdict.epsilon;
    if (verdict.delta) j["delta"] = *verdict.delta;
    if (verdict.power) j["power"] = *verdict.power;
    j["lambda"] = verdict.lambda_label;
    j["domain"] = verdict.domain;
    nlohmann::json statuses = nlohmann::json::array();
    for (std::size_t pr = 0; pr < verdict.status.size(); ++pr) {
        statuses.push_back({{"probe", pr},
                            {"status", to_string(verdict.status[pr])},
                            {"witness_density", verdict.witness_density[pr]}});
    }
    j["probes"] = std::move(statuses);
    return j;
}

nlohmann::json to_json(const InequalityReport& rep) {
    nlohmann::json j;
    j["name"] = rep.name;
    j["holds"] = rep.holds;
    j["checked"] = rep.checked;
    j["min_slack"] = rep.min_slack;
    if (!rep.holds) {
        j["violation_probe"] = rep.violation_probe;
        j["violation_n"] = rep.violation_n;
        j["max_violation"] = rep.max_violation;
    }
    return j;
}

nlohmann::json to_json(const ContainmentReport& rep) {
    nlohmann::json j;
    j["name"] = rep.name;
    j["holds"] = rep.holds;
    j["subset_threshold"] = rep.subset_threshold;
    j["superset_threshold"] = rep.superset_threshold;
    if (!rep.note.empty()) j["note"] = rep.note;
    if (!rep.holds) {
        j["violation_probe"] = rep.violation_probe;
        j["violation_n"] = rep.violation_n;
    }
    return j;
}

nlohmann::json to_json(const ImplicationCheck& check) {
    nlohmann::json j;
    j["name"] = check.name;
    j["hypothesis"] = check.hypothesis;
    j["antecedent"] = to_string(check.antecedent);
    j["consequent"] = to_string(check.consequent);
    j["applicable"] = check.applicable;
    if (check.condition) j["condition"] = to_json(*check.condition);
    if (check.applicable) {
        j["consequent_epsilon"] = check.consequent_epsilon;
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t pr = 0; pr < check.antecedent_status.size(); ++pr) {
            rows.push_back({{"probe", pr},
                            {"antecedent", to_string(check.antecedent_status[pr])},
                            {"consequent", to_string(check.consequent_status[pr])},
                            {"antecedent_density", check.antecedent_density[pr]},
                            {"consequent_density", check.consequent_density[pr]}});
        }
        j["probes"] = std::move(rows);
        j["counterexample_candidate"] = check.counterexample_candidate;
    }
    return j;
}

nlohmann::json to_json(const ImplicationSuite& suite) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& check : suite.checks) arr.push_back(to_json(check));
    return arr;
}

nlohmann::json to_json(const IdentitySuiteResult& result) {
    nlohmann::json j;
    j["tolerance"] = result.tolerance;
    j["trials"] = result.trials;
    j["lambdas"] = result.lambda_exprs;
    j["max_residual"] = result.max_residual;
    j["passed"] = result.passed();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : result.identities) {
        arr.push_back({{"name", r.name},
                       {"max_residual", r.max_residual},
                       {"checked", r.checked},
                       {"worst_n", r.worst_n},
                       {"worst_lambda", r.worst_lambda},
                       {"worst_seed", r.worst_seed}});
    }
    j["identities"] = std::move(arr);
    return j;
}

nlohmann::json to_json(const ScenarioReport& rep) {
    nlohmann::json j;
    j["scenario"] = rep.name;
    j["horizon"] = rep.horizon;
    j["lambda"] = rep.lambda_label;
    j["bounds"] = to_json(rep.bounds);
    j["deviation_sup"] = rep.deviation_sup;
    nlohmann::json conds = nlohmann::json::array();
    for (const auto& c : rep.conditions) conds.push_back(to_json(c));
    j["conditions"] = std::move(conds);
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : rep.verdicts) verdicts.push_back(to_json(v));
    j["verdicts"] = std::move(verdicts);
    j["inequalities"] = {to_json(rep.counting_bound), to_json(rep.split_bound)};
    j["containments"] = {to_json(rep.stat_in_pstrong), to_json(rep.pstrong_in_stat)};
    j["implications"] = to_json(rep.implications);
    j["diffs"] = rep.diffs;
    j["diff_count"] = rep.diffs.size();
    j["passed"] = rep.passed();
    return j;
}

std::string json_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace summa
