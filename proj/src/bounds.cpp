#include "gpei/bounds.hpp"

#include "gpei/stdnormal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gpei::bounds {

namespace sn = stdnormal;

namespace {

void require_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::domain_error("delta must lie in (0, 1)");
    }
}

double phi0() { return sn::pdf(0.0); }

// 3 log(3/delta) / log 2 + 3, resp. with 4 for the rate statement.
double window_threshold(double delta, int m) {
    return m * std::log(3.0 / delta) / std::numbers::ln2 + m;
}

void fill_improved(BoundConstants& c) {
    const double tail = sn::cdf(-c.w);
    c.C1 = 1.0 / tail;
    c.C3 = phi0() / tail;
    c.C2 = c.C3 + std::sqrt(c.beta);
}

void require_t(const BoundConstants& c, int t) {
    if (t <= c.window_divisor) {
        throw std::domain_error("bound: t must exceed the window divisor");
    }
}

}  // namespace

double c_alpha() { return (1.0 + 2.0 * std::numbers::pi) / (2.0 * std::numbers::pi); }

double c_tau(double beta) {
    if (!(beta > 0.0)) {
        throw std::domain_error("c_tau: beta must be > 0");
    }
    const double s = std::sqrt(beta);
    return sn::tau(s) / sn::tau(-s);
}

std::string flavor_name(Flavor flavor) {
    switch (flavor) {
        case Flavor::Thm42Noisy: return "thm42_noisy";
        case Flavor::Thm42Noiseless: return "thm42_noiseless";
        case Flavor::Thm46Noisy: return "thm46_noisy";
        case Flavor::Thm46Noiseless: return "thm46_noiseless";
        case Flavor::RateNoiseless: return "rate_noiseless";
        case Flavor::RateNoisy: return "rate_noisy";
        case Flavor::RkhsLemma: return "rkhs_lemma";
        case Flavor::RkhsImproved: return "rkhs_improved";
    }
    return "?";
}

bool BoundConstants::noisy() const {
    return flavor == Flavor::Thm42Noisy || flavor == Flavor::Thm46Noisy || flavor == Flavor::RateNoisy;
}

bool BoundConstants::is_thm42() const {
    return flavor == Flavor::Thm42Noisy || flavor == Flavor::Thm42Noiseless || flavor == Flavor::RkhsLemma;
}

bool BoundConstants::valid_t(int t) const {
    return t > window_divisor && static_cast<double>(t) >= t_min;
}

BoundConstants constants_thm42(double delta, bool noisy) {
    require_delta(delta);
    BoundConstants c;
    c.flavor = noisy ? Flavor::Thm42Noisy : Flavor::Thm42Noiseless;
    c.delta = delta;
    c.c_alpha = c_alpha();
    c.beta = noisy ? 2.0 * std::log(6.0 / delta) : 2.0 * std::log(2.0 / delta);
    c.c_tau = c_tau(c.beta);
    c.window_divisor = noisy ? 3 : 2;
    c.t_min = noisy ? window_threshold(delta, 3) : 0.0;
    return c;
}

BoundConstants constants_thm46(double delta, bool noisy) {
    require_delta(delta);
    BoundConstants c;
    c.flavor = noisy ? Flavor::Thm46Noisy : Flavor::Thm46Noiseless;
    c.delta = delta;
    c.c_alpha = c_alpha();
    if (noisy) {
        c.beta = 2.0 * std::log(9.0 * c.c_alpha / delta);
        c.w = std::sqrt(2.0 * std::log(9.0 / (2.0 * delta)));
    } else {
        c.beta = 2.0 * std::log(3.0 * c.c_alpha / delta);
        c.w = std::sqrt(c.beta);
    }
    c.c_tau = c_tau(c.beta);
    fill_improved(c);
    c.window_divisor = noisy ? 3 : 2;
    c.t_min = noisy ? window_threshold(delta, 3) : 0.0;
    return c;
}

BoundConstants constants_rate(double delta, bool noisy) {
    BoundConstants c = constants_thm46(delta, noisy);
    c.flavor = noisy ? Flavor::RateNoisy : Flavor::RateNoiseless;
    c.window_divisor = noisy ? 4 : 3;
    c.t_min = noisy ? window_threshold(delta, 4) : 0.0;
    return c;
}

BoundConstants constants_rkhs(double B, bool improved) {
    if (!(B >= 1.0) || !std::isfinite(B)) {
        throw std::domain_error("RKHS norm bound B must be >= 1");
    }
    BoundConstants c;
    c.flavor = improved ? Flavor::RkhsImproved : Flavor::RkhsLemma;
    c.B = B;
    c.beta = B * B;
    c.w = B;
    c.c_tau = sn::tau(B) / sn::tau(-B);
    fill_improved(c);
    c.window_divisor = 2;
    return c;
}

double c_t_sigma(int t, double delta) {
    require_delta(delta);
    if (t < 1) throw std::domain_error("c_t_sigma: t must be >= 1");
    const double tt = static_cast<double>(t);
    return 2.0 * std::log(std::numbers::pi * std::numbers::pi * tt * tt / (2.0 * delta));
}

double beta_t_seq(int t, double delta) {
    require_delta(delta);
    if (t < 1) throw std::domain_error("beta_t_seq: t must be >= 1");
    const double tt = static_cast<double>(t);
    return 2.0 * std::log(std::numbers::pi * std::numbers::pi * tt * tt / (6.0 * delta));
}

double bound_thm42(const BoundConstants& c, int t, double M, double noise_sd, double sigma_win) {
    if (c.flavor != Flavor::Thm42Noisy && c.flavor != Flavor::Thm42Noiseless) {
        throw std::invalid_argument("bound_thm42: constants are not of a Thm42 flavor");
    }
    require_t(c, t);
    const double explore = (std::sqrt(c.beta) + phi0()) * sigma_win;
    if (c.noisy()) {
        const double drift = 6.0 * (M + std::sqrt(c_t_sigma(t, c.delta)) * noise_sd) / (t - 3.0);
        return c.c_tau * (drift + explore);
    }
    return c.c_tau * (4.0 * M / (t - 2.0) + explore);
}

double bound_thm46(const BoundConstants& c, int t, double M, double noise_sd, double sigma_win) {
    if (c.flavor != Flavor::Thm46Noisy && c.flavor != Flavor::Thm46Noiseless) {
        throw std::invalid_argument("bound_thm46: constants are not of a Thm46 flavor");
    }
    require_t(c, t);
    const double explore = (c.C1 * std::sqrt(c.beta) + c.C2) * sigma_win;
    if (c.noisy()) {
        return c.C1 * (M + std::sqrt(c_t_sigma(t, c.delta)) * noise_sd) * 6.0 / (t - 3.0) + explore;
    }
    return c.C1 * M * 4.0 / (t - 2.0) + explore;
}

double bound(const BoundConstants& c, int t, double M, double noise_sd, double sigma_win) {
    switch (c.flavor) {
        case Flavor::Thm42Noisy:
        case Flavor::Thm42Noiseless:
            return bound_thm42(c, t, M, noise_sd, sigma_win);
        case Flavor::Thm46Noisy:
        case Flavor::Thm46Noiseless:
            return bound_thm46(c, t, M, noise_sd, sigma_win);
        case Flavor::RkhsLemma:
        case Flavor::RkhsImproved: {
            const auto rk = rkhs_bounds(c.B, t, M, sigma_win);
            return c.flavor == Flavor::RkhsLemma ? rk.lemma_bound : rk.improved_bound;
        }
        default:
            throw std::invalid_argument("bound: no closed-form bound for flavor " + flavor_name(c.flavor));
    }
}

Coefficients compare_coefficients(double delta) {
    const BoundConstants a = constants_thm42(delta, true);
    const BoundConstants b = constants_thm46(delta, true);
    Coefficients out{};
    out.delta = delta;
    out.beta42 = a.beta;
    out.beta46 = b.beta;
    out.w46 = b.w;
    out.C1 = b.C1;
    out.C2 = b.C2;
    out.C4_42 = a.c_tau;
    out.C5_42 = a.c_tau * (std::sqrt(a.beta) + phi0());
    out.C4_46 = b.C1;
    out.C5_46 = b.C1 * std::sqrt(b.beta) + b.C2;
    return out;
}

double rate_exponent(const RateSpec& spec, int d) {
    if (d < 1) throw std::domain_error("rate_exponent: d must be >= 1");
    switch (spec.kind) {
        case RateKind::SquaredExponential:
            return -0.5;
        case RateKind::Matern:
            if (!(spec.nu > 0.0)) throw std::domain_error("rate_exponent: nu must be > 0");
            return -spec.nu / (2.0 * spec.nu + d);
        case RateKind::BullKernel:
            if (!(spec.nu > 0.0)) throw std::domain_error("rate_exponent: nu must be > 0");
            return -std::min(spec.nu, 1.0) / d;
    }
    throw std::logic_error("unreachable rate kind");
}

double rate_envelope(const RateSpec& spec, double t, int d, double scale) {
    const double p = rate_exponent(spec, d);
    switch (spec.kind) {
        case RateKind::SquaredExponential:
            if (!(t > 1.0)) throw std::domain_error("rate_envelope: t must be > 1");
            return scale * std::pow(t, p) * std::pow(std::log(t), 0.5 * (d + 1));
        case RateKind::Matern:
            if (!(t > 1.0)) throw std::domain_error("rate_envelope: t must be > 1");
            return scale * std::pow(t, p) * std::pow(std::log(t), -p);
        case RateKind::BullKernel: {
            if (!(t > 3.0)) throw std::domain_error("rate_envelope: t must be > 3");
            const double eta = spec.nu <= 1.0 ? spec.alpha : 0.0;
            const double lg = std::log(t / 3.0);
            return scale * std::pow(3.0 / (t - 3.0), -p) * (eta == 0.0 ? 1.0 : std::pow(lg, eta));
        }
    }
    throw std::logic_error("unreachable rate kind");
}

RkhsBounds rkhs_bounds(double B, int t, double M, double sigma_win) {
    if (!(B >= 1.0) || !std::isfinite(B)) {
        throw std::domain_error("rkhs_bounds: B must be >= 1");
    }
    if (t <= 2) {
        throw std::domain_error("rkhs_bounds: t must be > 2");
    }
    const double tail = sn::cdf(-B);
    const double ctau = sn::tau(B) / sn::tau(-B);
    RkhsBounds out{};
    out.C4_lemma = ctau;
    out.C5_lemma = ctau * (B + phi0());
    out.C4_improved = 1.0 / tail;
    out.C5_improved = B + (B + phi0()) / tail;
    out.lemma_bound = ctau * (4.0 * M / (t - 2.0) + (B + phi0()) * sigma_win);
    out.improved_bound = 4.0 * out.C4_improved * M / (t - 2.0) + out.C5_improved * sigma_win;
    out.c_r = sn::tau(B) * (B + phi0()) / (tail * B + B + phi0());
    return out;
}

BoundCheck empirical_bound_check(const Trace& trace, const BoundConstants& c, double M, double noise_sd, int t) {
    if (!c.valid_t(t)) {
        throw std::domain_error("empirical_bound_check: t below the bound's validity threshold");
    }
    const TraceRow* at = trace.row(t);
    if (at == nullptr) {
        throw std::out_of_range("empirical_bound_check: trace has no row for t");
    }
    const int m = c.window_divisor;
    const int lo = std::max((t + m - 1) / m - 1, trace.T0);
    double smax = 0.0;
    double smin = 1.0;
    for (int k = lo; k <= t; ++k) {
        const double s = trace.row(k)->sigma_next;
        smax = std::max(smax, s);
        smin = std::min(smin, s);
    }
    BoundCheck out{};
    out.bound = bound(c, t, M, noise_sd, smax);
    out.r_t = at->r_t;
    out.holds = out.r_t <= out.bound;
    out.sigma_win_max = smax;
    out.sigma_win_min = smin;
    return out;
}

}  // namespace gpei::bounds
