#include "gpei/bounds.hpp"
#include "gpei/config.hpp"
#include "gpei/stdnormal.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace gpei;
using namespace gpei::bounds;

namespace {

bool within_rel(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::abs(target);
}

// Spreadsheet-style evaluation in long double, using only the quadrature oracle.
long double oracle_c_tau(long double beta) {
    const long double s = std::sqrt(beta);
    return oracle::tau(s) / oracle::tau(-s);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("constants_thm42: published values") {
    const auto c = constants_thm42(0.1, true);
    CHECK(c.beta == doctest::Approx(2.0 * std::log(60.0)).epsilon(1e-15));
    CHECK(std::abs(c.beta - 8.189) < 5e-4);
    CHECK(within_rel(c.beta, 8.19, 0.02));
    CHECK(within_rel(c.c_tau, 4632.0, 0.02));
    CHECK(c.c_tau == doctest::Approx(static_cast<double>(oracle_c_tau(c.beta))).epsilon(1e-8));
    CHECK(c.window_divisor == 3);
    CHECK(c.t_min == doctest::Approx(3.0 * std::log(30.0) / std::log(2.0) + 3.0).epsilon(1e-15));

    const auto q = constants_thm42(0.1, false);
    CHECK(q.beta == doctest::Approx(2.0 * std::log(20.0)).epsilon(1e-15));
    CHECK(q.window_divisor == 2);
    CHECK(q.t_min == 0.0);
}

TEST_CASE("constants: delta outside (0, 1) is a domain error") {
    for (double d : {0.0, 1.0, -0.1, 1.5, 6.0 * std::exp(-0.5)}) {
        CHECK_THROWS_AS(constants_thm42(d, true), std::domain_error);
        CHECK_THROWS_AS(constants_thm46(d, false), std::domain_error);
        CHECK_THROWS_AS(compare_coefficients(d), std::domain_error);
    }
    CHECK_THROWS_AS(beta_t_seq(1, std::numbers::pi * std::numbers::pi / 6.0), std::domain_error);
    CHECK_THROWS_AS(c_t_sigma(0, 0.1), std::domain_error);
    CHECK_THROWS_AS(beta_t_seq(0, 0.1), std::domain_error);
}

TEST_CASE("constants_thm46: published values") {
    const auto c = constants_thm46(0.1, true);
    CHECK(within_rel(c.C1, 345.0, 0.02));
    CHECK(within_rel(c.C2, 141.0, 0.02));
    CHECK(within_rel(c.beta, 9.17, 0.02));
    CHECK(c.beta == doctest::Approx(2.0 * std::log(9.0 * (1.0 + 2.0 * std::numbers::pi) / (2.0 * std::numbers::pi) / 0.1)).epsilon(1e-15));
    CHECK(c.w == doctest::Approx(std::sqrt(2.0 * std::log(45.0))).epsilon(1e-15));
    CHECK(c.C3 == doctest::Approx(c.C2 - std::sqrt(c.beta)).epsilon(1e-14));
    CHECK(c.C1 == doctest::Approx(static_cast<double>(1.0L / oracle::cdf(-c.w))).epsilon(1e-9));

    // w = sqrt(2 log(9 / (2 delta))) = 2 at delta = 4.5 e^-2.
    const auto f3 = constants_thm46(4.5 * std::exp(-2.0), true);
    CHECK(f3.w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(f3.C1 - 43.96) < 5e-3);
    CHECK(std::abs(f3.C3 - 17.53) < 1e-2);  // 17.5358, printed truncated
    CHECK(std::round(f3.C1) == 44.0);
    CHECK(std::round(f3.C3) == 18.0);

    const auto q = constants_thm46(0.1, false);
    CHECK(q.beta == doctest::Approx(2.0 * std::log(3.0 * c_alpha() / 0.1)).epsilon(1e-15));
    CHECK(q.w == doctest::Approx(std::sqrt(q.beta)).epsilon(1e-15));
    CHECK(q.window_divisor == 2);
}

TEST_CASE("c_t_sigma and beta_t_seq") {
    CHECK(c_t_sigma(1, 0.1) == doctest::Approx(2.0 * std::log(std::numbers::pi * std::numbers::pi / 0.2)).epsilon(1e-15));
    CHECK(std::abs(c_t_sigma(1, 0.1) - 7.798) < 5e-4);
    CHECK(std::abs(c_t_sigma(10, 0.1) - 17.01) < 5e-3);
    CHECK(std::abs(beta_t_seq(1, 0.1) - 5.60) < 5e-3);
    // delta = pi^2/6 is outside (0, 1); log(1) = 0 is reached at t=1 only in the limit.
    CHECK(beta_t_seq(1, 0.999999) == doctest::Approx(2.0 * std::log(std::numbers::pi * std::numbers::pi / 6.0 / 0.999999)));
    for (int t = 1; t < 200; ++t) {
        CHECK(c_t_sigma(t + 1, 0.1) > c_t_sigma(t, 0.1));
        CHECK(beta_t_seq(t + 1, 0.1) > beta_t_seq(t, 0.1));
    }
}

TEST_CASE("bound_thm42: examples") {
    const auto noisy = constants_thm42(0.1, true);
    const auto clean = constants_thm42(0.1, false);
    CHECK(bound_thm42(noisy, 20, 0.0, 0.0, 0.0) == 0.0);
    CHECK(bound_thm42(clean, 20, 0.0, 0.0, 0.0) == 0.0);

    const long double beta = 2.0L * std::log(20.0L);
    const long double ct = oracle_c_tau(beta);
    const long double expect = ct * (4.0L / 100.0L + (std::sqrt(beta) + oracle::pdf(0.0L)) * 0.05L);
    CHECK(bound_thm42(clean, 102, 1.0, 0.0, 0.05) == doctest::Approx(static_cast<double>(expect)).epsilon(1e-9));

    CHECK_THROWS_AS(bound_thm42(noisy, 3, 1.0, 0.1, 0.1), std::domain_error);
    CHECK_THROWS_AS(bound_thm42(clean, 2, 1.0, 0.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(bound_thm42(constants_thm46(0.1, true), 20, 1.0, 0.1, 0.1), std::invalid_argument);
}

TEST_CASE("bound_thm46: examples") {
    const auto c = constants_thm46(0.1, true);
    CHECK(bound_thm46(c, 20, 0.0, 0.0, 0.0) == 0.0);
    const double coeff = bound_thm46(c, 20, 0.0, 0.0, 1.0);
    CHECK(within_rel(coeff, 1187.0, 0.02));
    CHECK(coeff == doctest::Approx(c.C1 * std::sqrt(c.beta) + c.C2).epsilon(1e-14));
    const double noisy_part = bound_thm46(c, 20, 1.0, 0.05, 0.0);
    CHECK(noisy_part == doctest::Approx(c.C1 * (1.0 + std::sqrt(c_t_sigma(20, 0.1)) * 0.05) * 6.0 / 17.0).epsilon(1e-14));
    const auto q = constants_thm46(0.1, false);
    CHECK(bound_thm46(q, 22, 1.0, 0.0, 0.0) == doctest::Approx(q.C1 * 4.0 / 20.0).epsilon(1e-14));
}

TEST_CASE("compare_coefficients: published values and ordering") {
    const auto k = compare_coefficients(0.1);
    CHECK(within_rel(k.C4_42, 4632.0, 0.02));
    CHECK(within_rel(k.C5_42, 15103.0, 0.02));
    CHECK(within_rel(k.C4_46, 345.0, 0.02));
    CHECK(within_rel(k.C5_46, 1187.0, 0.02));
    for (int i = 0; i < 50; ++i) {
        const double delta = 0.01 + (0.9 - 0.01) * (i + 0.5) / 50.0;
        const auto c = compare_coefficients(delta);
        CAPTURE(delta);
        CHECK(c.C4_46 < c.C4_42);
        CHECK(c.C5_46 < c.C5_42);
    }
}

TEST_CASE("property: improved bound is smaller for every delta") {
    for (int i = 1; i <= 12; ++i) {
        const double delta = 0.05 * i;
        for (bool noisy : {true, false}) {
            const auto a = constants_thm42(delta, noisy);
            const auto b = constants_thm46(delta, noisy);
            for (int t : {20, 60, 200}) {
                if (!a.valid_t(t)) continue;
                for (double s : {1e-4, 0.05, 0.5}) {
                    CAPTURE(delta);
                    CHECK(bound_thm46(b, t, 1.3, noisy ? 0.05 : 0.0, s) < bound_thm42(a, t, 1.3, noisy ? 0.05 : 0.0, s));
                }
            }
        }
    }
}

TEST_CASE("property: constant invariants") {
    for (int i = 1; i <= 100; ++i) {
        const double delta = 0.005 * i;
        for (bool noisy : {true, false}) {
            const auto c = constants_thm46(delta, noisy);
            CHECK(c.C1 > 2.0);
            CHECK(c.C3 > c.w + 1.0);
        }
    }
    double prev = 1.0;
    for (int i = 0; i <= 390; ++i) {
        const double beta = 0.5 + 0.05 * i;
        const double ct = c_tau(beta);
        CHECK(ct > 1.0);
        CHECK(ct > prev);
        prev = ct;
    }
}

TEST_CASE("property: bound monotonicity") {
    for (auto c : {constants_thm42(0.1, true), constants_thm42(0.1, false), constants_thm46(0.1, true),
                   constants_thm46(0.1, false)}) {
        const double noise = c.noisy() ? 0.05 : 0.0;
        // Only the drift term depends on t; noisy: 6(M + sqrt(c_t) s)/(t-3).
        double prev = INFINITY;
        for (int t = std::max(20, c.window_divisor + 1); t < 400; ++t) {
            const double b = bound(c, t, 1.0, noise, 0.1);
            CHECK(b < prev);
            prev = b;
        }
        CHECK(bound(c, 30, 1.1, noise, 0.1) > bound(c, 30, 1.0, noise, 0.1));
        CHECK(bound(c, 30, 1.0, noise, 0.11) > bound(c, 30, 1.0, noise, 0.1));
        if (c.noisy()) CHECK(bound(c, 30, 1.0, 0.06, 0.1) > bound(c, 30, 1.0, 0.05, 0.1));
    }
}

TEST_CASE("rate_envelope") {
    const RateSpec se{RateKind::SquaredExponential};
    CHECK(rate_envelope(se, std::numbers::e, 1, 2.0) == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-14));
    CHECK(std::abs(rate_envelope(se, std::numbers::e, 1, 1.0) - 0.6065) < 1e-4);
    CHECK_THROWS_AS(rate_envelope(se, 1.0, 1, 1.0), std::domain_error);
    CHECK_THROWS_AS(rate_envelope({RateKind::BullKernel, 0.5, 1.0}, 3.0, 1, 1.0), std::domain_error);
    CHECK_THROWS_AS(rate_envelope({RateKind::Matern, -1.0}, 10.0, 1, 1.0), std::domain_error);

    CHECK(rate_exponent({RateKind::Matern, 1e12}, 1) == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(rate_exponent({RateKind::Matern, 2.5}, 1) == doctest::Approx(-2.5 / 6.0).epsilon(1e-15));
    CHECK(rate_exponent({RateKind::Matern, 1.5}, 2) == doctest::Approx(-1.5 / 5.0).epsilon(1e-15));
    CHECK(rate_exponent({RateKind::BullKernel, 2.0}, 2) == -0.5);

    std::vector<double> lx, ly;
    for (int i = 0; i < 50; ++i) {
        const double t = std::pow(10.0, 3.0 + 3.0 * i / 49.0);
        lx.push_back(std::log(t));
        ly.push_back(std::log(rate_envelope(se, t, 1, 1.0)));
    }
    const double slope = least_squares_slope(lx, ly);
    CAPTURE(slope);
    CHECK(slope > -0.5);
    CHECK(slope < -0.40);

    // Bull envelope: log factor only when nu <= 1.
    const double b1 = rate_envelope({RateKind::BullKernel, 0.5, 2.0}, 30.0, 1, 1.0);
    CHECK(b1 == doctest::Approx(std::pow(3.0 / 27.0, 0.5) * std::pow(std::log(10.0), 2.0)).epsilon(1e-14));
    const double b2 = rate_envelope({RateKind::BullKernel, 2.0, 2.0}, 30.0, 1, 1.0);
    CHECK(b2 == doctest::Approx(3.0 / 27.0).epsilon(1e-14));
}

TEST_CASE("rkhs_bounds") {
    const auto r = rkhs_bounds(1.0, 102, 1.0, 0.0);
    const long double ct = oracle::tau(1.0L) / oracle::tau(-1.0L);
    CHECK(r.lemma_bound == doctest::Approx(static_cast<double>(ct * 0.04L)).epsilon(1e-9));
    CHECK(std::abs(r.lemma_bound - 0.5200) < 2e-4);  // 0.52010; printed from 5-digit tau values
    CHECK_THROWS_AS(rkhs_bounds(0.5, 10, 1.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(rkhs_bounds(1.0, 2, 1.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(constants_rkhs(0.99, true), std::domain_error);

    for (double B : {1.0, 2.0, 4.0, 8.0}) {
        const auto k = rkhs_bounds(B, 10, 1.0, 0.1);
        const double p0 = stdnormal::pdf(0.0);
        const double ratio = (k.C4_lemma * (B + p0)) / (B + (B + p0) / stdnormal::cdf(-B));
        CAPTURE(B);
        CHECK(ratio > k.c_r);
        CHECK(k.C5_lemma / k.C5_improved > k.c_r);
    }
    double prev = INFINITY;
    for (int B = 1; B <= 10; ++B) {
        const double inv = 1.0 / rkhs_bounds(B, 10, 1.0, 0.1).c_r;
        CHECK(inv < prev);
        prev = inv;
    }
    for (int i = 0; i <= 60; ++i) {
        const double B = 1.0 + 15.0 * i / 60.0;
        for (auto [M, s] : {std::pair{1.0, 0.0}, std::pair{0.0, 0.1}, std::pair{2.0, 0.3}}) {
            const auto k = rkhs_bounds(B, 50, M, s);
            CHECK(k.improved_bound < k.lemma_bound);
        }
    }
}

TEST_CASE("empirical_bound_check") {
    Trace tr;
    tr.T0 = 1;
    for (int t = 1; t < 40; ++t) {
        TraceRow row;
        row.t = t;
        row.sigma_next = 1.0 / t;
        row.r_t = 0.0;
        tr.rows.push_back(row);
    }
    const auto c = constants_thm46(0.1, false);
    const auto chk = empirical_bound_check(tr, c, 1.0, 0.0, 20);
    CHECK(chk.holds);
    CHECK(chk.r_t == 0.0);
    // Window [ceil(20/2) - 1, 20] = [9, 20].
    CHECK(chk.sigma_win_max == 1.0 / 9.0);
    CHECK(chk.sigma_win_min == 1.0 / 20.0);
    CHECK(chk.bound == doctest::Approx(bound_thm46(c, 20, 1.0, 0.0, 1.0 / 9.0)).epsilon(1e-15));

    // Window below T0 is clamped.
    const auto early = empirical_bound_check(tr, constants_thm42(0.1, false), 1.0, 0.0, 3);
    CHECK(early.sigma_win_max == 1.0);

    const auto noisy = constants_thm42(0.1, true);
    CHECK_THROWS_AS(empirical_bound_check(tr, noisy, 1.0, 0.05, 10), std::domain_error);
    CHECK_THROWS_AS(empirical_bound_check(tr, c, 1.0, 0.0, 60), std::out_of_range);
}

TEST_CASE("empirical_bound_check on a one-point grid run") {
    ExperimentConfig cfg;
    cfg.grid_per_dim = 1;
    cfg.T = 40;
    const PriorSample sample = sample_prior(cfg.kernel, cfg.grid(), 1);
    const Trace tr = run(cfg, sample, 2);
    const auto c = constants_thm46(0.1, true);
    for (int t = 1; t < cfg.T; ++t) {
        if (!c.valid_t(t)) continue;
        const auto chk = empirical_bound_check(tr, c, sample.M, cfg.noise_sd, t);
        CHECK(chk.bound >= 0.0);
        CHECK(chk.r_t <= tr.max_abs_noise * 2.0);
        CHECK(chk.holds);
    }
}
