#include "gpei/gp.hpp"

#include "gpei/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace gpei {

Eigen::MatrixXd jittered_cholesky(const Eigen::MatrixXd& A, double& jitter_used) {
    const Eigen::Index n = A.rows();
    for (double jitter = kJitterStart; jitter <= kJitterMax * (1.0 + 1e-9); jitter *= 10.0) {
        Eigen::MatrixXd B = A;
        B.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(B);
        if (llt.info() == Eigen::Success) {
            Eigen::MatrixXd L = llt.matrixL();
            if (L.allFinite() && (L.diagonal().array() > 0.0).all()) {
                jitter_used = jitter;
                return L;
            }
        }
    }
    std::ostringstream msg;
    msg << "Cholesky factorisation of a " << n << "x" << n
        << " covariance failed with jitter up to " << kJitterMax
        << " (min diagonal " << (n > 0 ? A.diagonal().minCoeff() : 0.0) << ")";
    throw NumericalError(msg.str());
}

GpState::GpState(KernelSpec kernel, Eigen::Index dim, double noise_var)
    : kernel_(std::move(kernel)), dim_(dim), X_(0, dim), y_(0), noise_var_(noise_var) {
    kernel_.validate();
    if (!(noise_var >= 0.0)) {
        throw std::invalid_argument("GpState: noise variance must be >= 0");
    }
}

GpState GpState::fit(const KernelSpec& kernel, const Points& X, const Eigen::VectorXd& y, double noise_var) {
    if (X.rows() != y.size()) {
        throw std::invalid_argument("GpState::fit: X rows must match y length");
    }
    GpState state(kernel, X.cols(), noise_var);
    if (X.rows() == 0) {
        return state;
    }
    state.X_ = X;
    state.y_ = y;
    Eigen::MatrixXd K = kernel::gram(kernel, X);
    K.diagonal().array() += noise_var;
    state.chol_ = jittered_cholesky(K, state.jitter_);
    state.alpha_ = state.chol_.triangularView<Eigen::Lower>().solve(y);
    state.chol_.transpose().triangularView<Eigen::Upper>().solveInPlace(state.alpha_);
    return state;
}

Posterior GpState::posterior(const Eigen::Ref<const Point>& x) const {
    if (x.size() != dim_) {
        throw std::invalid_argument("GpState::posterior: dimension mismatch");
    }
    if (!x.allFinite()) {
        throw std::invalid_argument("GpState::posterior: non-finite query");
    }
    if (X_.rows() == 0) {
        return {0.0, 1.0};
    }
    const Eigen::VectorXd k = kernel::cross(kernel_, X_, x);
    const Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(k);
    const double var = std::clamp(1.0 - v.squaredNorm(), 0.0, 1.0);
    return {k.dot(alpha_), std::sqrt(var)};
}

void GpState::posterior_batch(const Points& Q, Eigen::VectorXd& mu, Eigen::VectorXd& sigma) const {
    if (Q.rows() > 0 && Q.cols() != dim_) {
        throw std::invalid_argument("GpState::posterior_batch: dimension mismatch");
    }
    const Eigen::Index n = Q.rows();
    if (X_.rows() == 0) {
        mu = Eigen::VectorXd::Zero(n);
        sigma = Eigen::VectorXd::Ones(n);
        return;
    }
    const Eigen::MatrixXd Kxq = kernel::cross_matrix(kernel_, X_, Q);
    const Eigen::MatrixXd V = chol_.triangularView<Eigen::Lower>().solve(Kxq);
    mu = Kxq.transpose() * alpha_;
    sigma.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        sigma(j) = std::sqrt(std::clamp(1.0 - V.col(j).squaredNorm(), 0.0, 1.0));
    }
}

GpState GpState::update(const Eigen::Ref<const Point>& x_new, double y_new) const {
    if (x_new.size() != dim_) {
        throw std::invalid_argument("GpState::update: dimension mismatch");
    }
    Points X(X_.rows() + 1, dim_);
    X.topRows(X_.rows()) = X_;
    X.row(X_.rows()) = x_new.transpose();
    Eigen::VectorXd y(y_.size() + 1);
    y.head(y_.size()) = y_;
    y(y_.size()) = y_new;
    return fit(kernel_, X, y, noise_var_);
}

PriorSampler::PriorSampler(const KernelSpec& kernel, Points grid) : grid_(std::move(grid)) {
    kernel.validate();
    if (grid_.rows() < 1) {
        throw std::invalid_argument("PriorSampler: grid must contain at least one point");
    }
    L_ = jittered_cholesky(kernel::gram(kernel, grid_), jitter_);
}

PriorSample PriorSampler::draw(std::uint64_t seed) const {
    Rng rng(seed);
    const Eigen::Index n = grid_.rows();
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        z(i) = rng.normal();
    }
    PriorSample s;
    s.grid = grid_;
    s.f = L_.triangularView<Eigen::Lower>() * z;
    s.f_star = s.f.minCoeff(&s.x_star_idx);
    s.M = s.f.cwiseAbs().maxCoeff();
    return s;
}

PriorSample sample_prior(const KernelSpec& kernel, const Points& grid, std::uint64_t seed) {
    return PriorSampler(kernel, grid).draw(seed);
}

double info_gain(const std::vector<double>& sigma_at_next, double noise_var) {
    if (!(noise_var > 0.0)) {
        throw std::domain_error("info_gain: noise variance must be > 0");
    }
    double sum = 0.0;
    for (double s : sigma_at_next) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw std::domain_error("info_gain: posterior sd must lie in [0, 1]");
        }
        sum += std::log1p(s * s / noise_var);
    }
    return 0.5 * sum;
}

VarianceSumCheck variance_sum_check(const std::vector<double>& sigma_at_next, double noise_var) {
    const double gain = info_gain(sigma_at_next, noise_var);
    double lhs = 0.0;
    for (double s : sigma_at_next) {
        lhs += s * s;
    }
    const double c_gamma = 2.0 / std::log1p(1.0 / noise_var);
    const double rhs = c_gamma * gain;
    return {lhs, rhs, lhs <= rhs + 1e-9};
}

}  // namespace gpei
