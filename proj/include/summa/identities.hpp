#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "summa/metric_sets.hpp"

namespace summa {

/// Portable uniform double in [0, 1) from a 64-bit engine word, so identity
/// runs are reproducible across standard libraries.
double uniform_unit(std::uint64_t word);

/// One identity family checked by the randomized suite.
struct IdentityResult {
    std::string name;
    double max_residual = 0.0;
    Index worst_n = 0;
    std::string worst_lambda;
    std::uint64_t worst_seed = 0;
    Index checked = 0;
};

struct IdentitySuiteResult {
    std::vector<IdentityResult> identities;
    double max_residual = 0.0;
    double tolerance = 1e-12;
    Index trials = 0;
    std::vector<std::string> lambda_exprs;

    bool passed() const { return max_residual < tolerance; }
};

/// Run the exact-identity suite on random bounded traces (values uniform in
/// [0, 10], fresh target per trace) across the given lambda expressions:
///   - submethod entries re-index the C_1 entries (bitwise subsequence),
///   - the T rows combine block means into prefix means (convex identity),
///   - block means invert prefix means through the R rows,
///   - deferred means specialize to C_1 and to the block means.
/// Residuals are relative to the magnitudes entering each identity.
IdentitySuiteResult run_identity_suite(std::uint64_t seed, Index horizon, Index trials,
                                       const std::vector<std::string>& lambda_exprs,
                                       double tolerance = 1e-12);

/// Default lambda set exercised by the suite.
std::vector<std::string> default_identity_lambdas();

}  // namespace summa
