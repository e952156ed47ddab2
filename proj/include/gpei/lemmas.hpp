#ifndef GPEI_LEMMAS_HPP
#define GPEI_LEMMAS_HPP

#include "gpei/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gpei {

enum class LemmaId { Fmu, FmuT, IEIAdd, IEIRatio, Icdf, TailBound, TauVsPhi, EiMonotone };

std::string lemma_name(LemmaId id);
/// Accepts the names above case-insensitively; throws ConfigError otherwise.
LemmaId parse_lemma(const std::string& name);
std::vector<LemmaId> all_lemmas();

/// Outcome of one lemma check. Monte-Carlo lemmas fill frequency / target /
/// threshold / wilson_lower; grid scans fill points and min_margin.
struct LemmaReport {
    LemmaId id{};
    bool monte_carlo = false;
    bool pass = false;
    double delta = 0.0;
    int samples = 0;
    int successes = 0;
    double frequency = 0.0;
    double target = 0.0;       // 1 - delta
    double threshold = 0.0;    // target - 3 binomial standard errors
    double wilson_lower = 0.0;
    double max_abs_error = 0.0;  // Icdf: worst |freq - Phi(a/sigma - z)|; EiMonotone: worst FD error
    int points = 0;
    double min_margin = 0.0;
    std::string detail;
};

/// Default sample sizes: 2000 prior draws for the pointwise lemmas, 500
/// GP-EI runs for FmuT, 1e5 draws for Icdf.
int default_samples(LemmaId id);

/// Runs a lemma protocol. `samples` overrides the default; Monte-Carlo
/// lemmas other than Icdf refuse fewer than 500. Uses config.delta,
/// config.kernel, config.noise_sd, config.seed and (FmuT) the grid.
LemmaReport verify_lemma(LemmaId id, const ExperimentConfig& config, std::optional<int> samples = std::nullopt,
                         int workers = 1);

/// "PASS|FAIL <lemma> ..." line.
std::string lemma_summary(const LemmaReport& report);

}  // namespace gpei

#endif  // GPEI_LEMMAS_HPP
