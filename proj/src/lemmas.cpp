#include "gpei/lemmas.hpp"

#include "gpei/bounds.hpp"
#include "gpei/campaign.hpp"
#include "gpei/csv.hpp"
#include "gpei/eiopt.hpp"
#include "gpei/gp.hpp"
#include "gpei/parallel.hpp"
#include "gpei/rng.hpp"
#include "gpei/stdnormal.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace gpei {

namespace sn = stdnormal;

namespace {

constexpr int kMinMonteCarlo = 500;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kIcdfStream = 0x1cdf;

// Five design points and one query on the diagonal of [0, r]^d.
Points pointwise_design(const ExperimentConfig& config) {
    const double fractions[] = {0.1, 0.3, 0.5, 0.7, 0.9, 0.4};
    Points P(6, config.d);
    for (int i = 0; i < 6; ++i) P.row(i).setConstant(fractions[i] * config.r);
    return P;
}

struct PointwiseDraw {
    double f_query;
    double mu;
    double sigma;
    double y_plus;
};

// Draws f jointly on design + query, observes the design with noise, and
// returns the posterior at the query.
std::vector<PointwiseDraw> pointwise_draws(const ExperimentConfig& config, int n, int workers) {
    const Points P = pointwise_design(config);
    const PriorSampler sampler(config.kernel, P);
    const Points X = P.topRows(5);
    const Point query = P.row(5).transpose();
    const double noise_var = config.noise_sd * config.noise_sd;
    std::vector<PointwiseDraw> out(static_cast<std::size_t>(n));
    parallel_for(n, workers, [&](int i) {
        const std::uint64_t s = trial_seed(config, i);
        const PriorSample sample = sampler.draw(prior_seed(s));
        Rng noise(substream_seed(s, kNoiseStream));
        Eigen::VectorXd y(5);
        for (int k = 0; k < 5; ++k) {
            y(k) = sample.f(k) + (config.noise_sd > 0.0 ? config.noise_sd * noise.normal() : 0.0);
        }
        const GpState state = GpState::fit(config.kernel, X, y, noise_var);
        const auto post = state.posterior(query);
        out[static_cast<std::size_t>(i)] = {sample.f(5), post.mu, post.sigma, y.minCoeff()};
    });
    return out;
}

void finish_monte_carlo(LemmaReport& rep, double delta, int n, int successes) {
    rep.monte_carlo = true;
    rep.delta = delta;
    rep.samples = n;
    rep.successes = successes;
    rep.frequency = static_cast<double>(successes) / n;
    rep.target = 1.0 - delta;
    rep.threshold = coverage_threshold(delta, n);
    rep.wilson_lower = wilson_lower(successes, n);
    rep.pass = rep.frequency >= rep.threshold;
}

LemmaReport pointwise_lemma(LemmaId id, const ExperimentConfig& config, int n, int workers) {
    const double delta = config.delta;
    double beta = 0.0;
    switch (id) {
        case LemmaId::Fmu:
        case LemmaId::IEIRatio:
            beta = 2.0 * std::log(1.0 / delta);
            break;
        case LemmaId::IEIAdd:
            beta = std::max(1.44, 2.0 * std::log(bounds::c_alpha() / delta));
            break;
        default:
            throw std::logic_error("pointwise_lemma: not a pointwise lemma");
    }
    const double sb = std::sqrt(beta);
    const double ratio = sn::tau(-sb) / sn::tau(sb);
    int ok = 0;
    for (const auto& d : pointwise_draws(config, n, workers)) {
        bool holds = false;
        if (id == LemmaId::Fmu) {
            holds = std::abs(d.f_query - d.mu) <= sb * d.sigma;
        } else {
            const double I = improvement(d.y_plus, d.f_query);
            const double EI = ei_from_posterior(d.mu, d.sigma, d.y_plus);
            holds = id == LemmaId::IEIAdd ? std::abs(I - EI) <= sb * d.sigma : ratio * I <= EI;
        }
        ok += holds ? 1 : 0;
    }
    LemmaReport rep;
    rep.id = id;
    finish_monte_carlo(rep, delta, n, ok);
    rep.detail = "beta=" + fmt(beta);
    return rep;
}

LemmaReport fmu_t_lemma(const ExperimentConfig& base, int n, int workers) {
    ExperimentConfig config = base;
    config.T = 30;
    config.kappa.reset();
    config.validate();
    const PriorSampler sampler(config.kernel, config.grid());
    std::vector<char> held(static_cast<std::size_t>(n), 0);
    parallel_for(n, workers, [&](int i) {
        const std::uint64_t s = trial_seed(config, i);
        const PriorSample sample = sampler.draw(prior_seed(s));
        const Trace trace = run(config, sample, s);
        bool all = true;
        for (const auto& row : trace.rows) {
            const double bt = bounds::beta_t_seq(row.t + 1, config.delta);
            if (std::abs(sample.f(row.x_next_idx) - row.mu_next) > std::sqrt(bt) * row.sigma_next) {
                all = false;
                break;
            }
        }
        held[static_cast<std::size_t>(i)] = all ? 1 : 0;
    });
    LemmaReport rep;
    rep.id = LemmaId::FmuT;
    finish_monte_carlo(rep, config.delta, n, static_cast<int>(std::count(held.begin(), held.end(), 1)));
    rep.detail = "T=30 runs, every t >= T0";
    return rep;
}

LemmaReport icdf_lemma(const ExperimentConfig& config, int n) {
    constexpr double mu = 0.3;
    constexpr double sigma = 0.8;
    constexpr double y_plus = 0.5;
    const double z = (y_plus - mu) / sigma;
    const double thresholds[] = {0.0, 0.5 * sigma, sigma, 2.0 * sigma};
    int counts[4] = {0, 0, 0, 0};
    Rng rng(substream_seed(config.seed, kIcdfStream));
    for (int i = 0; i < n; ++i) {
        const double I = improvement(y_plus, mu + sigma * rng.normal());
        for (int k = 0; k < 4; ++k) counts[k] += I <= thresholds[k] ? 1 : 0;
    }
    LemmaReport rep;
    rep.id = LemmaId::Icdf;
    rep.monte_carlo = true;
    rep.samples = n;
    rep.points = 4;
    std::ostringstream detail;
    for (int k = 0; k < 4; ++k) {
        const double freq = static_cast<double>(counts[k]) / n;
        const double expect = sn::cdf(thresholds[k] / sigma - z);
        rep.max_abs_error = std::max(rep.max_abs_error, std::abs(freq - expect));
        detail << (k ? " " : "") << "a=" << fmt(thresholds[k]) << ":" << fmt(freq) << "/" << fmt(expect);
    }
    rep.pass = rep.max_abs_error <= 0.01;
    rep.detail = detail.str();
    return rep;
}

LemmaReport tail_bound_lemma() {
    LemmaReport rep;
    rep.id = LemmaId::TailBound;
    rep.points = 400;
    rep.min_margin = INFINITY;
    const double lo = std::log(1e-3);
    const double hi = std::log(8.0);
    for (int i = 0; i < rep.points; ++i) {
        const double c = std::exp(lo + (hi - lo) * i / (rep.points - 1));
        rep.min_margin = std::min(rep.min_margin, 0.5 * std::exp(-0.5 * c * c) - sn::cdf(-c));
    }
    rep.pass = rep.min_margin >= 0.0;
    rep.detail = "c log-spaced on [1e-3, 8]";
    return rep;
}

LemmaReport tau_vs_phi_lemma() {
    LemmaReport rep;
    rep.id = LemmaId::TauVsPhi;
    rep.points = 1000;
    rep.min_margin = INFINITY;
    double min_rel = INFINITY;
    for (int i = 1; i <= rep.points; ++i) {
        const double z = i / 100.0;
        const double gap = sn::cdf(-z) - sn::tau(-z);
        rep.min_margin = std::min(rep.min_margin, gap);
        min_rel = std::min(min_rel, gap / sn::cdf(-z));
    }
    rep.pass = rep.min_margin > 0.0;
    rep.detail = "z on (0, 10] step 0.01, min relative gap=" + fmt(min_rel);
    return rep;
}

LemmaReport ei_monotone_lemma() {
    constexpr double h = 1e-5;
    constexpr double tol = 1e-6;
    LemmaReport rep;
    rep.id = LemmaId::EiMonotone;
    rep.min_margin = INFINITY;
    bool ok = true;
    for (int ia = -30; ia <= 30; ++ia) {
        const double a = ia / 10.0;
        ok = ok && sn::ei_ab(a, 0.0) >= std::max(a, 0.0);
        for (int ib = 2; ib <= 20; ++ib) {
            const double b = ib / 20.0;
            const double da = (sn::ei_ab(a + h, b) - sn::ei_ab(a - h, b)) / (2.0 * h);
            const double db = (sn::ei_ab(a, b + h) - sn::ei_ab(a, b - h)) / (2.0 * h);
            const double err = std::max(std::abs(da - sn::cdf(a / b)), std::abs(db - sn::pdf(a / b)));
            rep.max_abs_error = std::max(rep.max_abs_error, err);
            rep.min_margin = std::min(rep.min_margin, sn::ei_ab(a, b) - std::max(a, 0.0));
            const bool resolvable = std::abs(a / b) <= 6.0;
            ok = ok && (!resolvable || (da > 0.0 && db > 0.0)) && err <= tol && sn::ei_ab(a, b) >= std::max(a, 0.0);
            ++rep.points;
        }
    }
    rep.pass = ok;
    rep.detail = "a in [-3, 3] step 0.1, b in [0.1, 1] step 0.05, h=1e-5, positivity where |a/b| <= 6";
    return rep;
}

std::string lower(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c != '_' && c != '-') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

std::string lemma_name(LemmaId id) {
    switch (id) {
        case LemmaId::Fmu: return "Fmu";
        case LemmaId::FmuT: return "FmuT";
        case LemmaId::IEIAdd: return "IEIAdd";
        case LemmaId::IEIRatio: return "IEIRatio";
        case LemmaId::Icdf: return "Icdf";
        case LemmaId::TailBound: return "TailBound";
        case LemmaId::TauVsPhi: return "TauVsPhi";
        case LemmaId::EiMonotone: return "EiMonotone";
    }
    return "?";
}

std::vector<LemmaId> all_lemmas() {
    return {LemmaId::Fmu,  LemmaId::FmuT,      LemmaId::IEIAdd,   LemmaId::IEIRatio,
            LemmaId::Icdf, LemmaId::TailBound, LemmaId::TauVsPhi, LemmaId::EiMonotone};
}

LemmaId parse_lemma(const std::string& name) {
    for (LemmaId id : all_lemmas()) {
        if (lower(lemma_name(id)) == lower(name)) return id;
    }
    throw ConfigError("unknown lemma id '" + name + "'");
}

int default_samples(LemmaId id) {
    switch (id) {
        case LemmaId::Fmu:
        case LemmaId::IEIAdd:
        case LemmaId::IEIRatio:
            return 2000;
        case LemmaId::FmuT:
            return 500;
        case LemmaId::Icdf:
            return 100000;
        default:
            return 0;
    }
}

LemmaReport verify_lemma(LemmaId id, const ExperimentConfig& config, std::optional<int> samples, int workers) {
    config.validate();
    const int n = samples.value_or(default_samples(id));
    const bool needs_min = id == LemmaId::Fmu || id == LemmaId::FmuT || id == LemmaId::IEIAdd ||
                           id == LemmaId::IEIRatio || id == LemmaId::Icdf;
    if (needs_min && n < kMinMonteCarlo) {
        throw ConfigError("verify " + lemma_name(id) + ": Monte-Carlo lemmas need at least 500 samples");
    }
    switch (id) {
        case LemmaId::Fmu:
        case LemmaId::IEIAdd:
        case LemmaId::IEIRatio:
            return pointwise_lemma(id, config, n, workers);
        case LemmaId::FmuT:
            return fmu_t_lemma(config, n, workers);
        case LemmaId::Icdf:
            return icdf_lemma(config, n);
        case LemmaId::TailBound:
            return tail_bound_lemma();
        case LemmaId::TauVsPhi:
            return tau_vs_phi_lemma();
        case LemmaId::EiMonotone:
            return ei_monotone_lemma();
    }
    throw std::logic_error("unreachable lemma id");
}

std::string lemma_summary(const LemmaReport& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << ' ' << lemma_name(r.id);
    if (r.id == LemmaId::Icdf) {
        os << " draws=" << r.samples << " max_abs_error=" << fmt(r.max_abs_error) << " tol=0.01";
    } else if (r.monte_carlo) {
        os << " delta=" << fmt(r.delta) << " N=" << r.samples << " frequency=" << fmt(r.frequency)
           << " target=" << fmt(r.target) << " threshold=" << fmt(r.threshold)
           << " wilson99_lower=" << fmt(r.wilson_lower);
    } else {
        os << " points=" << r.points << " min_margin=" << fmt(r.min_margin);
        if (r.id == LemmaId::EiMonotone) os << " max_fd_error=" << fmt(r.max_abs_error);
    }
    if (!r.detail.empty()) os << " (" << r.detail << ")";
    return os.str();
}

}  // namespace gpei
