#include "gpei/stdnormal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gpei::stdnormal {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;  // 1/sqrt(2*pi)

void require_finite(double z, const char* what) {
    if (!std::isfinite(z)) {
        throw std::domain_error(std::string(what) + ": non-finite argument");
    }
}

void require_rho(double rho, double rho_max, const char* what) {
    if (!(rho > 0.0 && rho < rho_max)) {
        throw std::domain_error(std::string(what) + ": rho must lie in (0, w/c3)");
    }
}

}  // namespace

double pdf(double z) {
    require_finite(z, "pdf");
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double cdf(double z) {
    require_finite(z, "cdf");
    return 0.5 * std::erfc(-z * std::numbers::sqrt2 / 2.0);
}

double tau(double z) {
    require_finite(z, "tau");
    if (z > 0.0) {
        return z + tau(-z);
    }
    // For very negative z the two terms cancel to ~z^2 * eps relative error.
    // Past -30 use phi(z)/z^2 * sum_k (-1)^k (2k+1)!! / z^(2k), truncated
    // where the next term is below 1e-16.
    if (z < -30.0) {
        const double inv2 = 1.0 / (z * z);
        double term = 1.0;
        double series = 1.0;
        for (int k = 1; k <= 8; ++k) {
            term *= -(2.0 * k + 1.0) * inv2;
            series += term;
        }
        return pdf(z) * inv2 * series;
    }
    return z * cdf(z) + pdf(z);
}

double ei_ab(double a, double b) {
    if (!(b >= 0.0)) {
        throw std::domain_error("ei_ab: exploration term b must be >= 0");
    }
    require_finite(a, "ei_ab");
    require_finite(b, "ei_ab");
    if (b == 0.0) {
        return std::max(a, 0.0);
    }
    // b * tau(a/b) = a + b * tau(-a/b); the second form is >= a without rounding.
    if (a > 0.0) {
        return a + b * tau(-a / b);
    }
    return b * tau(a / b);
}

void BarTauParams::validate() const {
    if (!std::isfinite(z) || !(w > 0.0) || !(c3 > w)) {
        throw std::domain_error("BarTauParams: need finite z, w > 0 and c3 > w");
    }
}

double bar_tau(double rho, const BarTauParams& p) {
    p.validate();
    require_rho(rho, p.rho_max(), "bar_tau");
    return tau((p.z + p.c3) * rho - p.w) / rho;
}

double tilde_tau(double rho, double z, double w, double c1, double c3) {
    BarTauParams{z, w, c3}.validate();
    if (!(z >= 0.0)) {
        throw std::domain_error("tilde_tau: z must be >= 0");
    }
    if (!(c1 > 0.0)) {
        throw std::domain_error("tilde_tau: c1 must be > 0");
    }
    require_rho(rho, w / c3, "tilde_tau");
    return tau(c1 * z * rho + c3 * rho - w) / rho;
}

double theta(double rho, const BarTauParams& p) {
    p.validate();
    require_rho(rho, p.rho_max(), "theta");
    const double u = (p.z + p.c3) * rho - p.w;
    return -p.w * cdf(u) + pdf(u);
}

std::optional<double> find_rho_bar(const BarTauParams& p) {
    p.validate();
    // theta is strictly decreasing in rho, so a sign change can only happen
    // if its right-end limit is negative. At rho -> 0 it tends to tau(-w) > 0.
    auto theta_at = [&](double rho) {
        const double u = (p.z + p.c3) * rho - p.w;
        return -p.w * cdf(u) + pdf(u);
    };
    double lo = 0.0;
    double hi = p.rho_max();
    if (theta_at(hi) >= 0.0) {
        return std::nullopt;
    }
    constexpr int kMaxIter = 200;
    constexpr double kTol = 1e-12;
    for (int i = 0; i < kMaxIter && hi - lo > kTol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (theta_at(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace gpei::stdnormal
