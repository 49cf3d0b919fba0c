#pragma once

#include <string>
#include <vector>

#include "summa/index_methods.hpp"
#include "summa/metric_sets.hpp"

namespace summa {

/// Grammar for index methods: "n", "c*n", "n^k", "c^n" with positive integer
/// constants, or "@path" for an explicit list file (one integer per line,
/// strictly increasing). Evaluation is overflow-checked.

/// Materialize exactly `n_max` entries. Throws on parse failure, on a
/// non-monotone list, and on integer overflow before n_max.
IndexMethod parse_lambda(const std::string& expr, Index n_max);

/// Materialize every entry with value <= horizon (at least one required).
IndexMethod parse_lambda_for_horizon(const std::string& expr, Index horizon);

bool is_lambda_expression(const std::string& expr);

/// Shape literals for config files and the CLI:
///   singleton((1,0))            points((1,0),(-1,0))
///   ball((3,0),1)               sphere((0,0),2)
///   box((0,0),(1,2))            hyperplane((1,0),0)
ClosedSet parse_shape(const std::string& text);

/// One point literal: (x1, x2, ...).
MetricPoint parse_point(const std::string& text);

/// Semicolon-separated point list: (2,1); (0,3); (-1,2).
std::vector<MetricPoint> parse_probe_list(const std::string& text);

}  // namespace summa
