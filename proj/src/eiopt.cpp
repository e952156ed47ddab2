#include "gpei/eiopt.hpp"

#include "gpei/rng.hpp"
#include "gpei/stdnormal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gpei {

namespace {

constexpr std::uint64_t kDesignStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

Eigen::Index argmax_lowest(const Eigen::VectorXd& v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (v(i) > v(best)) best = i;
    }
    return best;
}

}  // namespace

double improvement(double y_plus, double f_x) {
    return std::max(y_plus - f_x, 0.0);
}

double ei_from_posterior(double mu, double sigma, double y_plus) {
    if (sigma > kSigmaFloor) {
        return sigma * stdnormal::tau((y_plus - mu) / sigma);
    }
    return std::max(y_plus - mu, 0.0);
}

double ei(const GpState& state, double y_plus, const Eigen::Ref<const Point>& x) {
    const auto [mu, sigma] = state.posterior(x);
    return ei_from_posterior(mu, sigma, y_plus);
}

std::pair<Eigen::Index, Point> argmax_ei(const GpState& state, double y_plus, const Points& candidates) {
    if (candidates.rows() == 0) {
        throw std::invalid_argument("argmax_ei: empty candidate set");
    }
    Eigen::VectorXd mu, sigma;
    state.posterior_batch(candidates, mu, sigma);
    Eigen::VectorXd values(candidates.rows());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        values(i) = ei_from_posterior(mu(i), sigma(i), y_plus);
    }
    const Eigen::Index best = argmax_lowest(values);
    return {best, candidates.row(best).transpose()};
}

const TraceRow* Trace::row(int t) const {
    const int i = t - T0;
    if (i < 0 || i >= static_cast<int>(rows.size())) return nullptr;
    return &rows[static_cast<std::size_t>(i)];
}

Trace run(const ExperimentConfig& config, const PriorSample& sample, std::uint64_t seed) {
    config.validate();
    const Points& grid = sample.grid;
    if (grid.rows() != config.grid_size() || grid.cols() != config.d || sample.f.size() != grid.rows()) {
        throw std::invalid_argument("eiopt::run: prior sample grid does not match the configured grid");
    }

    Rng design_rng(substream_seed(seed, kDesignStream));
    Rng noise_rng(substream_seed(seed, kNoiseStream));
    const double noise_sd = config.noise_sd;
    const auto n = static_cast<std::uint64_t>(grid.rows());

    Trace trace;
    trace.seed = seed;
    trace.config_hash = config.hash();
    trace.T0 = config.T0;

    GpState state(config.kernel, config.d, noise_sd * noise_sd);
    double y_plus = 0.0;
    Eigen::Index plus_idx = -1;

    auto observe = [&](Eigen::Index idx, double sigma_before) {
        const double eps = noise_sd > 0.0 ? noise_sd * noise_rng.normal() : 0.0;
        const double y = sample.f(idx) + eps;
        trace.max_abs_noise = std::max(trace.max_abs_noise, std::abs(eps));
        trace.sampled_sigma.push_back(sigma_before);
        if (plus_idx < 0 || y < y_plus) {
            y_plus = y;
            plus_idx = idx;
        }
        state = state.update(grid.row(idx).transpose(), y);
        return y;
    };

    for (int i = 0; i < config.T0; ++i) {
        const auto idx = static_cast<Eigen::Index>(design_rng.uniform_index(n));
        const double sigma_before = state.posterior(grid.row(idx).transpose()).sigma;
        observe(idx, sigma_before);
    }

    Eigen::VectorXd mu, sigma;
    Eigen::VectorXd values(grid.rows());
    for (int t = config.T0; t < config.T; ++t) {
        state.posterior_batch(grid, mu, sigma);
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            values(i) = ei_from_posterior(mu(i), sigma(i), y_plus);
        }
        const Eigen::Index next = argmax_lowest(values);
        if (config.kappa && values(next) < *config.kappa) {
            break;
        }

        TraceRow row;
        row.t = t;
        row.x_next_idx = next;
        row.x_next = grid.row(next).transpose();
        row.y_plus = y_plus;
        row.mu_next = mu(next);
        row.sigma_next = sigma(next);
        row.ei_next = values(next);
        row.sigma_at_star = sigma(sample.x_star_idx);
        row.r_t = y_plus - sample.f_star;
        row.r0_t = sample.f(plus_idx) - sample.f_star;
        row.y_next = observe(next, sigma(next));
        trace.rows.push_back(std::move(row));
    }
    return trace;
}

}  // namespace gpei
