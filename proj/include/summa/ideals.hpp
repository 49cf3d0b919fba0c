#pragma once

#include <optional>
#include <string>
#include <vector>

#include "summa/index_methods.hpp"
#include "summa/metric_sets.hpp"
#include "summa/statistical.hpp"
#include "summa/transforms.hpp"

namespace summa {

/// Computable ideals on the naturals. Fin holds the finite sets; DensityZero
/// holds the sets of natural density zero. Membership at a finite horizon is
/// a consistency estimate, never a certificate.
enum class IdealKind { Fin, DensityZero };

struct Ideal {
    IdealKind kind = IdealKind::DensityZero;
    double density_threshold = 0.05;  // in (0, 1)
    double tail_window = 0.5;         // fraction of the horizon treated as tail

    static Ideal fin() { return Ideal{IdealKind::Fin, 0.05, 0.5}; }
    static Ideal density_zero(double threshold = 0.05) {
        return Ideal{IdealKind::DensityZero, threshold, 0.5};
    }
};

const char* to_string(IdealKind k);

enum class Membership { InIdealConsistent, NotInIdealConsistent, Inconclusive };

const char* to_string(Membership m);

struct MembershipReport {
    Membership status = Membership::Inconclusive;
    double density_full = 0.0;  // |S cap [1..N]| / N
    double density_half = 0.0;  // |S cap [1..N/2]| / (N/2)
    Index horizon = 0;
};

/// Finite-horizon membership estimate for an index set given as an indicator
/// over 1..N (entry k-1 covers index k).
///   Fin:         in-ideal iff S has no member in the tail window.
///   DensityZero: two-checkpoint rule at N/2 and N; in-ideal iff both
///                densities sit below the threshold and did not increase,
///                not-in-ideal iff both sit at or above it, else inconclusive.
MembershipReport member_estimate(const Ideal& ideal, const std::vector<bool>& indicator);

/// Filter-side membership of the complement (duality check): the complement
/// indicator of an in-ideal set must keep density >= 1 - threshold.
MembershipReport filter_estimate(const Ideal& ideal, const std::vector<bool>& indicator);

// -- Convergence-mode verdicts -------------------------------------------------

/// The seven finite-horizon convergence/summability modes.
enum class Mode {
    IConvergence,         // exceedances of the raw distances, k-domain
    ICLambdaSummable,     // |C_lambda mean - target| exceedances, n-domain
    StrongICLambda,       // strong C_lambda mean exceedances
    StrongIDLambda,       // strong D_lambda (block) mean exceedances
    StrongIC1,            // strong C_1 mean exceedances
    ICLambdaStatistical,  // density(n) >= delta exceedances
    PStrongICLambda,      // p-power strong C_lambda mean exceedances
};

const char* to_string(Mode m);
std::vector<Mode> all_modes();

enum class VerdictStatus { Consistent, Violated, Inconclusive };

const char* to_string(VerdictStatus s);

struct IdealVerdict {
    Mode mode = Mode::IConvergence;
    IdealKind ideal = IdealKind::DensityZero;
    double epsilon = 0.0;
    std::optional<double> delta;
    std::optional<double> power;
    std::string lambda_label;
    Index domain = 0;  // length of the exceptional-set domain (k or n)
    std::vector<VerdictStatus> status;          // per probe
    std::vector<double> witness_density;        // per probe, density at horizon
    std::vector<std::vector<bool>> exceptional; // per probe indicator

    VerdictStatus worst() const;
};

struct VerdictParams {
    double epsilon = 0.0;
    std::optional<double> delta;
    std::optional<double> power;
};

/// Build the mode's exceptional index set from the materialized series and
/// estimate its ideal membership per probe. Requires a target row and a
/// trace horizon of at least 100.
IdealVerdict ideal_verdict(Mode mode, const DistanceTrace& tr, const IndexMethod& lambda,
                           const Ideal& ideal, const VerdictParams& params);

// -- Exceptional-set containments ----------------------------------------------

/// Set-inclusion check between two exceptional sets, with the thresholds it
/// was evaluated at. `note` records any known gap between the printed source
/// threshold and the algebraically derived one.
struct ContainmentReport {
    std::string name;
    bool holds = true;
    std::size_t violation_probe = 0;
    Index violation_n = 0;
    double subset_threshold = 0.0;
    double superset_threshold = 0.0;
    std::string note;
};

/// {n : density(n) >= delta}  is contained in  {n : p-strong(n) >= eps^p * delta}.
ContainmentReport statistical_in_pstrong(const DistanceTrace& tr, const IndexMethod& lambda,
                                         double epsilon, double delta, double p);

/// {n : p-strong(n) >= delta}  is contained in  {n : density(n) >= delta^p / alpha^p},
/// with the superset threshold kept exactly as printed in the source
/// derivation; the derived bound (delta - eps^p)/alpha^p is also reported.
ContainmentReport pstrong_in_statistical(const DistanceTrace& tr, const IndexMethod& lambda,
                                         double epsilon, double delta, double p);

// -- Implication suite -----------------------------------------------------------

struct ImplicationParams {
    double epsilon = 0.5;
    double delta = 0.05;
    double power = 2.0;
    // The strong C_lambda -> strong D_lambda derivation leaves two levels
    // free; with epsilon1 = epsilon2 the consequent level collapses to the
    // antecedent level.
    std::optional<double> epsilon1;
    std::optional<double> epsilon2;
};

struct ImplicationCheck {
    std::string name;
    Mode antecedent = Mode::StrongICLambda;
    Mode consequent = Mode::StrongIDLambda;
    bool applicable = false;       // hypothesis satisfied at this horizon
    std::string hypothesis;        // printed hypothesis description
    std::optional<ConditionReport> condition;
    double consequent_epsilon = 0.0;
    std::vector<VerdictStatus> antecedent_status;  // per probe
    std::vector<VerdictStatus> consequent_status;  // per probe
    std::vector<double> antecedent_density;
    std::vector<double> consequent_density;
    bool counterexample_candidate = false;
    std::vector<std::size_t> candidate_probes;
};

struct ImplicationSuite {
    std::vector<ImplicationCheck> checks;
    bool any_candidate() const;
};

/// Run the four summability implications at a finite horizon: whenever a
/// theorem's hypothesis holds for lambda (per its condition estimate) and the
/// antecedent verdict is Consistent at a probe, the consequent verdict must
/// be Consistent there too; anything else is emitted as a counterexample
/// candidate for inspection.
ImplicationSuite implication_suite(const DistanceTrace& tr, const IndexMethod& lambda,
                                   const Ideal& ideal, const ImplicationParams& params);

}  // namespace summa
