#ifndef GPEI_EIOPT_HPP
#define GPEI_EIOPT_HPP

#include "gpei/config.hpp"
#include "gpei/gp.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gpei {

/// Below this posterior sd, EI switches to its sigma -> 0 limit.
inline constexpr double kSigmaFloor = 1e-12;

/// I = max(y_plus - f(x), 0).
double improvement(double y_plus, double f_x);

/// Closed-form EI from a posterior (mu, sigma) and incumbent y_plus.
double ei_from_posterior(double mu, double sigma, double y_plus);

double ei(const GpState& state, double y_plus, const Eigen::Ref<const Point>& x);

/// Candidate row with the largest EI; ties go to the lowest index.
std::pair<Eigen::Index, Point> argmax_ei(const GpState& state, double y_plus, const Points& candidates);

/// One acquisition step: the posterior after t observations and the point it selects.
struct TraceRow {
    int t = 0;
    Eigen::Index x_next_idx = 0;
    Point x_next;
    double y_next = 0.0;        // noisy observation of f(x_next)
    double y_plus = 0.0;        // best observation among the first t
    double mu_next = 0.0;       // mu_t(x_next)
    double sigma_next = 0.0;    // sigma_t(x_next)
    double ei_next = 0.0;       // EI_t(x_next)
    double sigma_at_star = 0.0; // sigma_t(x*)
    double r_t = 0.0;           // y_plus - f*
    double r0_t = 0.0;          // f(x_t^+) - f*
};

struct Trace {
    std::uint64_t seed = 0;
    std::string config_hash;
    int T0 = 0;
    /// Rows for t = T0, T0+1, ...; shorter than T - T0 only if the EI stopping threshold fired.
    std::vector<TraceRow> rows;
    /// sigma_{i-1}(x_i) for every observation i = 1..n, initial design included.
    std::vector<double> sampled_sigma;
    /// max |noise| over all observations.
    double max_abs_noise = 0.0;

    /// Row for iteration t, or nullptr if t is outside the recorded range.
    [[nodiscard]] const TraceRow* row(int t) const;
    [[nodiscard]] int last_t() const { return rows.empty() ? T0 - 1 : rows.back().t; }
};

/// GP-EI on the sample's grid. Initial design and observation noise come
/// from independent substreams of `seed`.
Trace run(const ExperimentConfig& config, const PriorSample& sample, std::uint64_t seed);

}  // namespace gpei

#endif  // GPEI_EIOPT_HPP
