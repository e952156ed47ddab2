#ifndef GPEI_STDNORMAL_HPP
#define GPEI_STDNORMAL_HPP

#include <optional>

namespace gpei::stdnormal {

/// Standard normal density.
double pdf(double z);

/// Standard normal CDF. Evaluated through erfc so the lower tail keeps
/// full relative precision; never computed as 1 - Phi(-z).
double cdf(double z);

/// tau(z) = z * Phi(z) + phi(z). EI factorises as sigma * tau(z).
double tau(double z);

/// EI written in exploitation a = y+ - mu and exploration b = sigma.
/// b == 0 is the continuous limit max(a, 0).
double ei_ab(double a, double b);

/// Parameters shared by bar_tau / theta / find_rho_bar.
/// Requires w > 0 and c3 > w; rho lives in (0, w / c3).
struct BarTauParams {
    double z;
    double w;
    double c3;

    void validate() const;
    [[nodiscard]] double rho_max() const { return w / c3; }
};

/// (1/rho) * tau((z + c3) * rho - w).
double bar_tau(double rho, const BarTauParams& p);

/// (1/rho) * tau(c1 * z * rho + c3 * rho - w), for z >= 0.
double tilde_tau(double rho, double z, double w, double c1, double c3);

/// -w * Phi(u) + phi(u) with u = (z + c3) * rho - w. Its sign is the sign of
/// d(bar_tau)/d(rho), up to a positive factor.
double theta(double rho, const BarTauParams& p);

/// Unique root of theta on (0, w / c3), or nullopt when theta stays
/// positive on the whole interval (bar_tau then decreases monotonically).
std::optional<double> find_rho_bar(const BarTauParams& p);

}  // namespace gpei::stdnormal

#endif  // GPEI_STDNORMAL_HPP
