#ifndef GPEI_GP_HPP
#define GPEI_GP_HPP

#include "gpei/kernel.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpei {

/// Cholesky factorisation failed even after jitter escalation.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Jitter schedule for Gram factorisations: start, multiply by 10, give up past the cap.
inline constexpr double kJitterStart = 1e-10;
inline constexpr double kJitterMax = 1e-6;

/// Lower Cholesky factor of A + jitter*I with the escalation schedule above.
/// Returns the factor and writes the jitter actually used.
Eigen::MatrixXd jittered_cholesky(const Eigen::MatrixXd& A, double& jitter_used);

struct Posterior {
    double mu;
    double sigma;
};

/// Fitted GP posterior (zero prior mean, unit-variance kernel). Immutable;
/// update() returns a new state.
class GpState {
public:
    /// Empty-data state: the prior.
    GpState(KernelSpec kernel, Eigen::Index dim, double noise_var);

    static GpState fit(const KernelSpec& kernel, const Points& X, const Eigen::VectorXd& y, double noise_var);

    [[nodiscard]] Posterior posterior(const Eigen::Ref<const Point>& x) const;

    /// Posterior mean and standard deviation at every row of Q.
    void posterior_batch(const Points& Q, Eigen::VectorXd& mu, Eigen::VectorXd& sigma) const;

    /// Equivalent to refitting on the augmented data.
    [[nodiscard]] GpState update(const Eigen::Ref<const Point>& x_new, double y_new) const;

    [[nodiscard]] const KernelSpec& kernel() const { return kernel_; }
    [[nodiscard]] const Points& X() const { return X_; }
    [[nodiscard]] const Eigen::VectorXd& y() const { return y_; }
    [[nodiscard]] double noise_var() const { return noise_var_; }
    [[nodiscard]] double jitter() const { return jitter_; }
    [[nodiscard]] const Eigen::MatrixXd& chol() const { return chol_; }
    [[nodiscard]] Eigen::Index size() const { return X_.rows(); }
    [[nodiscard]] Eigen::Index dim() const { return dim_; }

private:
    KernelSpec kernel_;
    Eigen::Index dim_;
    Points X_;
    Eigen::VectorXd y_;
    double noise_var_;
    double jitter_ = 0.0;
    Eigen::MatrixXd chol_;   // lower factor of K + (noise_var + jitter) I
    Eigen::VectorXd alpha_;  // (K + (noise_var + jitter) I)^{-1} y
};

/// A GP prior draw restricted to a finite grid.
struct PriorSample {
    Points grid;
    Eigen::VectorXd f;
    double f_star = 0.0;
    Eigen::Index x_star_idx = 0;
    double M = 0.0;  // max_i |f_i|
};

/// Holds the grid's jittered Cholesky factor so repeated draws share it.
class PriorSampler {
public:
    PriorSampler(const KernelSpec& kernel, Points grid);

    /// f = L z with z from Rng(seed). Deterministic in (kernel, grid, seed).
    [[nodiscard]] PriorSample draw(std::uint64_t seed) const;

    [[nodiscard]] const Points& grid() const { return grid_; }
    [[nodiscard]] const Eigen::MatrixXd& factor() const { return L_; }
    [[nodiscard]] double jitter() const { return jitter_; }

private:
    Points grid_;
    Eigen::MatrixXd L_;
    double jitter_ = 0.0;
};

PriorSample sample_prior(const KernelSpec& kernel, const Points& grid, std::uint64_t seed);

/// 1/2 * sum log(1 + sigma_{t-1}^2(x_t) / noise_var). Requires noise_var > 0.
double info_gain(const std::vector<double>& sigma_at_next, double noise_var);

struct VarianceSumCheck {
    double lhs;  // sum sigma_{i-1}^2(x_i)
    double rhs;  // C_gamma * info_gain, C_gamma = 2 / log(1 + 1/noise_var)
    bool holds;
};

VarianceSumCheck variance_sum_check(const std::vector<double>& sigma_at_next, double noise_var);

}  // namespace gpei

#endif  // GPEI_GP_HPP
