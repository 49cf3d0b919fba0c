#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "summa/ideals.hpp"
#include "summa/identities.hpp"
#include "summa/index_methods.hpp"
#include "summa/metric_sets.hpp"
#include "summa/scenarios.hpp"
#include "summa/statistical.hpp"
#include "summa/transforms.hpp"

#include <json.hpp>

namespace summa {

/// Shortest-round-trip decimal with up to 17 significant digits; CSV cells
/// and re-ingested values are bit-identical to the doubles that produced them.
std::string fmt_double(double v);

/// Row collector for the fixed CSV schema
///   probe_index, n, lambda_n, series_kind, value
/// Rows are emitted sorted by (probe_index, series_kind, n).
class CsvWriter {
public:
    void add_trace(const DistanceTrace& tr);
    void add_mean(const MeanSeries& series);
    void add_density(const DensitySeries& series);
    void write(std::ostream& out) const;

private:
    struct Row {
        std::size_t probe;
        Index n;
        Index lambda_n;
        std::string kind;
        double value;
    };
    std::vector<Row> rows_;
};

/// Re-ingest a trace CSV (kinds "trace" and optionally "target") emitted by
/// CsvWriter; downstream series from the result are identical to the ones
/// computed from the original trace.
DistanceTrace read_trace_csv(std::istream& in);

// -- JSON report fragments ----------------------------------------------------

nlohmann::json to_json(const ConditionReport& rep);
nlohmann::json to_json(const BoundReport& rep);
nlohmann::json to_json(const IdealVerdict& verdict);
nlohmann::json to_json(const InequalityReport& rep);
nlohmann::json to_json(const ContainmentReport& rep);
nlohmann::json to_json(const ImplicationCheck& check);
nlohmann::json to_json(const ImplicationSuite& suite);
nlohmann::json to_json(const IdentitySuiteResult& result);

/// Scenario report without the bulk series (those go to CSV).
nlohmann::json to_json(const ScenarioReport& rep);

/// Serialize with a trailing newline, 2-space indent, deterministic key order.
std::string json_dump(const nlohmann::json& j);

}  // namespace summa
