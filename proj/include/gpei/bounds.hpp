#ifndef GPEI_BOUNDS_HPP
#define GPEI_BOUNDS_HPP

#include "gpei/eiopt.hpp"

#include <string>

namespace gpei::bounds {

/// (1 + 2 pi) / (2 pi).
double c_alpha();

/// tau(sqrt(beta)) / tau(-sqrt(beta)).
double c_tau(double beta);

enum class Flavor {
    Thm42Noisy,
    Thm42Noiseless,
    Thm46Noisy,
    Thm46Noiseless,
    RateNoiseless,
    RateNoisy,
    RkhsLemma,
    RkhsImproved,
};

std::string flavor_name(Flavor flavor);

/// Constants derived from a failure probability delta for one bound.
/// Fields a flavor does not use are left at 0.
struct BoundConstants {
    Flavor flavor = Flavor::Thm46Noisy;
    double delta = 0.0;
    double beta = 0.0;
    double w = 0.0;
    double c_alpha = 0.0;
    double c_tau = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double C3 = 0.0;
    int window_divisor = 3;
    double t_min = 0.0;
    double B = 0.0;  // RKHS norm bound (RKHS flavors only)

    [[nodiscard]] bool noisy() const;
    [[nodiscard]] bool is_thm42() const;
    /// t satisfies t >= t_min and t > window_divisor.
    [[nodiscard]] bool valid_t(int t) const;
};

BoundConstants constants_thm42(double delta, bool noisy);
BoundConstants constants_thm46(double delta, bool noisy);
/// Constants of the noisy / noiseless rate statements (window divisor 4 / 3).
BoundConstants constants_rate(double delta, bool noisy);
BoundConstants constants_rkhs(double B, bool improved);

/// 2 log(pi^2 t^2 / (2 delta)).
double c_t_sigma(int t, double delta);

/// 2 log(pi^2 t^2 / (6 delta)).
double beta_t_seq(int t, double delta);

/// Error bound of the c_tau(beta)-type theorem (flavor Thm42Noisy / Thm42Noiseless).
double bound_thm42(const BoundConstants& c, int t, double M, double noise_sd, double sigma_win);

/// Improved error bound with constants C1, C2 (flavor Thm46Noisy / Thm46Noiseless).
double bound_thm46(const BoundConstants& c, int t, double M, double noise_sd, double sigma_win);

/// Dispatches on c.flavor.
double bound(const BoundConstants& c, int t, double M, double noise_sd, double sigma_win);

/// Coefficients of both noisy bounds rewritten as
/// 3 C4 (2M + 2 sqrt(c_t) sigma)/(t-3) + C5 sigma_{t_k}.
struct Coefficients {
    double delta;
    double beta42;
    double beta46;
    double w46;
    double C1;
    double C2;
    double C4_42;
    double C5_42;
    double C4_46;
    double C5_46;
};

Coefficients compare_coefficients(double delta);

enum class RateKind { SquaredExponential, Matern, BullKernel };

struct RateSpec {
    RateKind kind = RateKind::SquaredExponential;
    double nu = 2.5;     // Matern / Bull smoothness
    double alpha = 0.0;  // Bull log exponent, used when nu <= 1
};

/// scale * envelope(t). t is real-valued: t > 1 for SE / Matern, t > 3 for
/// the Bull-type noiseless envelope (3/(t-3))^{min(nu,1)/d} log^eta(t/3).
double rate_envelope(const RateSpec& spec, double t, int d, double scale);

/// Polynomial exponent of the envelope in t (the power of t, sign included).
double rate_exponent(const RateSpec& spec, int d);

struct RkhsBounds {
    double lemma_bound;
    double improved_bound;
    double c_r;
    double C4_lemma;
    double C5_lemma;
    double C4_improved;
    double C5_improved;
};

/// Noiseless RKHS bounds with norm bound B >= 1, and c_r(B).
RkhsBounds rkhs_bounds(double B, int t, double M, double sigma_win);

struct BoundCheck {
    double bound;
    double r_t;
    bool holds;
    double sigma_win_max;
    double sigma_win_min;
};

/// Bound at t using the largest sigma_{t_k}(x_{t_k+1}) over the window
/// t_k in [ceil(t / m) - 1, t] (clamped to the first recorded row).
BoundCheck empirical_bound_check(const Trace& trace, const BoundConstants& c, double M, double noise_sd, int t);

}  // namespace gpei::bounds

#endif  // GPEI_BOUNDS_HPP
