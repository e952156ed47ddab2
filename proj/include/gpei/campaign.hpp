#ifndef GPEI_CAMPAIGN_HPP
#define GPEI_CAMPAIGN_HPP

#include "gpei/bounds.hpp"
#include "gpei/config.hpp"
#include "gpei/eiopt.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gpei {

/// Lower end of the two-sided 99% Wilson score interval for k successes in n.
double wilson_lower(int successes, int n);

/// Coverage threshold (1 - delta) - 3 sqrt(delta (1 - delta) / n).
double coverage_threshold(double delta, int n);

/// Aggregate over trials for one (theorem, t).
struct CoverageRow {
    Theorem theorem = Theorem::Thm46;
    int t = 0;
    int trials = 0;
    int holds = 0;
    double holds_frequency = 0.0;
    double wilson_lower = 0.0;
    double threshold = 0.0;
    bool pass = false;
    double bound_mean = 0.0;
    double bound_min = 0.0;
    double bound_max = 0.0;
    double r_mean = 0.0;
    double r_max = 0.0;
    double sigma_win_mean = 0.0;      // mean of the window maximum
    double sigma_win_min_mean = 0.0;  // mean of the window minimum (diagnostic)
};

struct CoverageReport {
    std::vector<CoverageRow> rows;  // sorted by (theorem, t)
};

/// Per-trial outcome, kept in trial order.
struct TrialResult {
    int trial = 0;
    std::uint64_t seed = 0;
    double M = 0.0;
    Trace trace;
    std::optional<VarianceSumCheck> variance_sum;  // noisy runs only
    std::vector<int> ts;                           // valid evaluation points
    std::vector<bounds::BoundCheck> thm42;
    std::vector<bounds::BoundCheck> thm46;
};

struct CampaignResult {
    ExperimentConfig config;
    CoverageReport report;
    std::vector<TrialResult> trials;
    int variance_checked = 0;
    int variance_held = 0;
    int ordering_points = 0;
    int ordering_held = 0;  // bound_thm46 < bound_thm42
    [[nodiscard]] bool coverage_pass() const;
    [[nodiscard]] bool variance_pass() const { return variance_held == variance_checked; }
    [[nodiscard]] bool ordering_pass() const { return ordering_held == ordering_points; }
    [[nodiscard]] bool pass() const { return coverage_pass() && variance_pass() && ordering_pass(); }
};

struct CampaignOptions {
    std::optional<std::string> out_dir;  // traces, coverage.csv, summary.txt
    int workers = 1;
};

/// Seed of trial i: config.seed ^ splitmix64(i). The prior draw uses a
/// further substream of it so design/noise and f are independent.
std::uint64_t trial_seed(const ExperimentConfig& config, int trial);
std::uint64_t prior_seed(std::uint64_t trial_seed);

CampaignResult run_experiment(const ExperimentConfig& config, const CampaignOptions& options = {});

/// Text written to summary.txt: one "PASS|FAIL <check> <detail>" line per check.
std::string campaign_summary(const CampaignResult& result);

}  // namespace gpei

#endif  // GPEI_CAMPAIGN_HPP
