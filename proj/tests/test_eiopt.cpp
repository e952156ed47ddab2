#include "gpei/eiopt.hpp"
#include "gpei/lemmas.hpp"
#include "gpei/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace gpei;

namespace {

// tau(-3) = -3 Phi(-3) + phi(-3), mpmath at 30 digits.
constexpr double kTauMinus3 = 0.0003821543170477236;

ExperimentConfig small_config(double noise_sd, int grid = 60, int T = 25) {
    ExperimentConfig c;
    c.grid_per_dim = grid;
    c.noise_sd = noise_sd;
    c.T = T;
    return c;
}

}  // namespace

TEST_CASE("improvement") {
    CHECK(improvement(1.0, 2.0) == 0.0);
    CHECK(improvement(2.0, 1.5) == 0.5);
    CHECK(improvement(0.7, 0.7) == 0.0);
}

TEST_CASE("ei_from_posterior: closed form examples") {
    CHECK(ei_from_posterior(0.2, 1.0, 0.2) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(std::abs(ei_from_posterior(0.2, 1.0, 0.2) - 0.39894) < 1e-5);
    CHECK(ei_from_posterior(0.5, 0.0, 0.8) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(ei_from_posterior(0.5, 1e-13, 0.8) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(ei_from_posterior(0.9, 0.0, 0.8) == 0.0);
    CHECK(ei_from_posterior(3.5, 1.0, 0.5) == doctest::Approx(kTauMinus3).epsilon(1e-12));
    CHECK(std::abs(ei_from_posterior(3.5, 1.0, 0.5) - 0.0003822) < 1e-7);
    CHECK(ei_from_posterior(3.5, 1.0, 0.5) == doctest::Approx(static_cast<double>(oracle::tau(-3.0L))).epsilon(1e-9));
}

TEST_CASE("ei: lower bounds on random states") {
    Rng rng(1);
    Points X(4, 1);
    for (int i = 0; i < 4; ++i) X(i, 0) = rng.uniform();
    const GpState s = GpState::fit({}, X, Eigen::Vector4d(0.3, -0.5, 1.0, 0.1), 0.01);
    for (int i = 0; i < 200; ++i) {
        Point x(1);
        x << rng.uniform();
        const double y_plus = 2.0 * rng.normal();
        const double e = ei(s, y_plus, x);
        CHECK(e >= 0.0);
        CHECK(e >= y_plus - s.posterior(x).mu - 1e-15);
    }
}

TEST_CASE("argmax_ei: trivial cases and ties") {
    const GpState s({}, 1, 0.01);
    Points one(1, 1);
    one << 0.3;
    CHECK(argmax_ei(s, 0.0, one).first == 0);
    Points same = Points::Constant(5, 1, 0.4);
    CHECK(argmax_ei(s, 0.0, same).first == 0);
    CHECK_THROWS_AS(argmax_ei(s, 0.0, Points(0, 1)), std::invalid_argument);
}

TEST_CASE("argmax_ei: matches an exhaustive rescan") {
    Rng rng(2);
    for (int rep = 0; rep < 20; ++rep) {
        Points X(5, 2), C(50, 2);
        for (int i = 0; i < 5; ++i) X.row(i) << rng.uniform(), rng.uniform();
        for (int i = 0; i < 50; ++i) C.row(i) << rng.uniform(), rng.uniform();
        Eigen::VectorXd y(5);
        for (int i = 0; i < 5; ++i) y(i) = rng.normal();
        const GpState s = GpState::fit({KernelFamily::Matern32, 0.3}, X, y, 0.01);
        const double y_plus = y.minCoeff();
        Eigen::Index best = 0;
        double best_val = -1.0;
        for (Eigen::Index i = 0; i < 50; ++i) {
            const auto p = s.posterior(C.row(i).transpose());
            const double v = ei_from_posterior(p.mu, p.sigma, y_plus);
            if (v > best_val) {
                best_val = v;
                best = i;
            }
        }
        const auto [idx, pt] = argmax_ei(s, y_plus, C);
        CHECK(idx == best);
        CHECK(pt == C.row(best).transpose());
    }
}

TEST_CASE("run: one-point grid") {
    ExperimentConfig c = small_config(0.05, 1, 6);
    const PriorSample sample = sample_prior(c.kernel, c.grid(), 3);
    const Trace tr = run(c, sample, 4);
    REQUIRE(tr.rows.size() == 5);
    for (const auto& row : tr.rows) {
        CHECK(row.x_next_idx == 0);
        CHECK(row.r0_t == 0.0);
    }
}

TEST_CASE("run: grid mismatch is rejected") {
    ExperimentConfig c = small_config(0.05);
    ExperimentConfig other = c;
    other.grid_per_dim = 61;
    const PriorSample sample = sample_prior(other.kernel, other.grid(), 1);
    CHECK_THROWS_AS(run(c, sample, 1), std::invalid_argument);
    c.T = 0;
    CHECK_THROWS_AS(run(c, sample, 1), ConfigError);
}

TEST_CASE("run: noiseless identities") {
    ExperimentConfig c = small_config(0.0);
    const PriorSampler sampler(c.kernel, c.grid());
    for (int i = 0; i < 10; ++i) {
        const PriorSample sample = sampler.draw(substream_seed(5, i));
        const Trace tr = run(c, sample, substream_seed(6, i));
        CHECK(tr.max_abs_noise == 0.0);
        REQUIRE(!tr.rows.empty());
        // With T0 = 1 the first incumbent is the single initial observation.
        double visited_min = tr.rows.front().y_plus;
        double prev_r = INFINITY;
        for (const auto& row : tr.rows) {
            CHECK(row.y_plus == visited_min);
            CHECK(row.r_t == row.r0_t);
            CHECK(row.r_t >= 0.0);
            CHECK(row.r_t <= prev_r);
            prev_r = row.r_t;
            CHECK(row.y_next == sample.f(row.x_next_idx));
            visited_min = std::min(visited_min, row.y_next);
        }
    }
}

TEST_CASE("run: determinism") {
    ExperimentConfig c = small_config(0.05);
    const PriorSample sample = sample_prior(c.kernel, c.grid(), 7);
    const Trace a = run(c, sample, 8);
    const Trace b = run(c, sample, 8);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].x_next_idx == b.rows[i].x_next_idx);
        CHECK(a.rows[i].y_next == b.rows[i].y_next);
        CHECK(a.rows[i].ei_next == b.rows[i].ei_next);
        CHECK(a.rows[i].sigma_next == b.rows[i].sigma_next);
    }
    CHECK(a.config_hash == c.hash());
    CHECK(a.sampled_sigma == b.sampled_sigma);
}

TEST_CASE("run: stopping threshold") {
    ExperimentConfig c = small_config(0.05, 60, 40);
    const PriorSample sample = sample_prior(c.kernel, c.grid(), 9);
    c.kappa = 1e9;
    CHECK(run(c, sample, 10).rows.empty());
    c.kappa = 1e-3;
    const Trace tr = run(c, sample, 10);
    for (const auto& row : tr.rows) CHECK(row.ei_next >= 1e-3);
}

TEST_CASE("property: monotone y_plus and error floors") {
    for (double noise : {0.0, 0.05}) {
        ExperimentConfig c = small_config(noise, 80, 30);
        c.T0 = 3;
        const Points grid = c.grid();
        const PriorSampler sampler(c.kernel, grid);
        for (int i = 0; i < 8; ++i) {
            const PriorSample sample = sampler.draw(substream_seed(11, i));
            const Trace tr = run(c, sample, substream_seed(12, i));
            REQUIRE(tr.rows.size() == static_cast<std::size_t>(c.T - c.T0));
            CHECK(tr.rows.front().t == c.T0);
            CHECK(tr.sampled_sigma.size() == static_cast<std::size_t>(c.T));

            double prev_plus = INFINITY;
            for (const auto& row : tr.rows) {
                CHECK(row.ei_next >= 0.0);
                CHECK(row.y_plus <= prev_plus);
                prev_plus = row.y_plus;
                CHECK(row.r0_t >= 0.0);
                CHECK(row.r_t >= -2.0 * tr.max_abs_noise);
            }
        }
    }
}

TEST_CASE("property: EI at the selected point dominates every candidate") {
    ExperimentConfig c = small_config(0.05, 80, 20);
    const Points grid = c.grid();
    const PriorSample sample = sample_prior(c.kernel, grid, 13);
    const Trace tr = run(c, sample, 14);
    // Replay the run: the initial point and its noise come from the design
    // and noise substreams, everything after from the trace rows.
    Rng design(substream_seed(14, 1));
    const auto first = static_cast<Eigen::Index>(design.uniform_index(static_cast<std::uint64_t>(grid.rows())));
    Rng noise(substream_seed(14, 2));
    Points X(1, 1);
    X(0, 0) = grid(first, 0);
    Eigen::VectorXd y(1);
    y(0) = sample.f(first) + c.noise_sd * noise.normal();
    for (const auto& row : tr.rows) {
        const GpState s = GpState::fit(c.kernel, X, y, c.noise_sd * c.noise_sd);
        CHECK(row.y_plus == y.minCoeff());
        for (Eigen::Index k = 0; k < grid.rows(); ++k) {
            CHECK(ei(s, row.y_plus, grid.row(k).transpose()) <= row.ei_next + 1e-12);
        }
        X.conservativeResize(X.rows() + 1, Eigen::NoChange);
        X(X.rows() - 1, 0) = grid(row.x_next_idx, 0);
        y.conservativeResize(y.size() + 1);
        y(y.size() - 1) = row.y_next;
    }
}

TEST_CASE("property: I-vs-EI concentration and improvement CDF") {
    for (double delta : {0.05, 0.1}) {
        ExperimentConfig c;
        c.delta = delta;
        CAPTURE(delta);
        const LemmaReport add = verify_lemma(LemmaId::IEIAdd, c, 2000, 4);
        CAPTURE(add.frequency);
        CHECK(add.pass);
        const LemmaReport ratio = verify_lemma(LemmaId::IEIRatio, c, 2000, 4);
        CAPTURE(ratio.frequency);
        CHECK(ratio.pass);
    }
    const LemmaReport icdf = verify_lemma(LemmaId::Icdf, ExperimentConfig{});
    CAPTURE(icdf.detail);
    CHECK(icdf.max_abs_error <= 0.01);
    CHECK(icdf.pass);
}
