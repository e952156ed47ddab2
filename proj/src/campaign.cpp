#include "gpei/campaign.hpp"

#include "gpei/csv.hpp"
#include "gpei/parallel.hpp"
#include "gpei/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

namespace gpei {

namespace {

constexpr double kWilsonZ99 = 2.5758293035489004;
constexpr std::uint64_t kPriorStream = 3;

std::string config_line(const ExperimentConfig& config) {
    std::string text = config.to_text();
    std::string out = "config: ";
    for (char c : text) out += (c == '\n') ? ';' : c;
    return out;
}

std::vector<std::string> meta_lines(const ExperimentConfig& config, const std::string& kind) {
    std::ostringstream head;
    head << "gpei " << kind << " config_hash=" << config.hash() << " seed=" << config.seed;
    return {head.str(), config_line(config)};
}

void write_trace_csv(const std::string& path, const ExperimentConfig& config, const TrialResult& tr) {
    std::vector<std::string> header{"trial", "t"};
    for (int k = 0; k < config.d; ++k) header.push_back("x_next_" + std::to_string(k));
    for (const char* c : {"y_next", "y_plus", "mu_next", "sigma_next", "ei_next", "sigma_at_star", "r_t", "r0_t",
                          "bound", "holds"}) {
        header.emplace_back(c);
    }
    auto meta = meta_lines(config, "trace");
    meta.push_back("trial=" + std::to_string(tr.trial) + " trial_seed=" + std::to_string(tr.seed) +
                   " M=" + fmt(tr.M) + " theorem=" + theorem_name(config.theorem));
    CsvWriter csv(path, meta, header);
    const auto& checks = config.theorem == Theorem::Thm42 ? tr.thm42 : tr.thm46;
    std::size_t ci = 0;
    for (const auto& row : tr.trace.rows) {
        std::vector<std::string> cells{std::to_string(tr.trial), std::to_string(row.t)};
        for (Eigen::Index k = 0; k < row.x_next.size(); ++k) cells.push_back(fmt(row.x_next(k)));
        for (double v : {row.y_next, row.y_plus, row.mu_next, row.sigma_next, row.ei_next, row.sigma_at_star,
                         row.r_t, row.r0_t}) {
            cells.push_back(fmt(v));
        }
        if (ci < tr.ts.size() && tr.ts[ci] == row.t) {
            cells.push_back(fmt(checks[ci].bound));
            cells.push_back(checks[ci].holds ? "1" : "0");
            ++ci;
        } else {
            cells.emplace_back("");
            cells.emplace_back("");
        }
        csv.row(cells);
    }
    csv.close();
}

void write_coverage_csv(const std::string& path, const CampaignResult& result) {
    CsvWriter csv(path, meta_lines(result.config, "coverage"),
                  {"theorem", "t", "trials", "holds", "holds_frequency", "wilson_lower", "threshold", "pass",
                   "bound_mean", "bound_min", "bound_max", "r_t_mean", "r_t_max", "sigma_win_mean",
                   "sigma_win_min_mean"});
    for (const auto& r : result.report.rows) {
        csv.row({theorem_name(r.theorem), std::to_string(r.t), std::to_string(r.trials), std::to_string(r.holds),
                 fmt(r.holds_frequency), fmt(r.wilson_lower), fmt(r.threshold), r.pass ? "1" : "0",
                 fmt(r.bound_mean), fmt(r.bound_min), fmt(r.bound_max), fmt(r.r_mean), fmt(r.r_max),
                 fmt(r.sigma_win_mean), fmt(r.sigma_win_min_mean)});
    }
    csv.close();
}

CoverageRow aggregate(Theorem theorem, std::size_t idx, int t, const std::vector<TrialResult>& trials,
                      double delta) {
    CoverageRow row;
    row.theorem = theorem;
    row.t = t;
    row.bound_min = INFINITY;
    row.bound_max = -INFINITY;
    row.r_max = -INFINITY;
    for (const auto& tr : trials) {
        if (idx >= tr.ts.size() || tr.ts[idx] != t) continue;
        const auto& c = theorem == Theorem::Thm42 ? tr.thm42[idx] : tr.thm46[idx];
        ++row.trials;
        row.holds += c.holds ? 1 : 0;
        row.bound_mean += c.bound;
        row.bound_min = std::min(row.bound_min, c.bound);
        row.bound_max = std::max(row.bound_max, c.bound);
        row.r_mean += c.r_t;
        row.r_max = std::max(row.r_max, c.r_t);
        row.sigma_win_mean += c.sigma_win_max;
        row.sigma_win_min_mean += c.sigma_win_min;
    }
    if (row.trials > 0) {
        const double n = row.trials;
        row.bound_mean /= n;
        row.r_mean /= n;
        row.sigma_win_mean /= n;
        row.sigma_win_min_mean /= n;
        row.holds_frequency = row.holds / n;
        row.wilson_lower = wilson_lower(row.holds, row.trials);
        row.threshold = coverage_threshold(delta, row.trials);
        row.pass = row.holds_frequency >= row.threshold;
    }
    return row;
}

}  // namespace

double wilson_lower(int successes, int n) {
    if (n <= 0) return 0.0;
    const double z = kWilsonZ99;
    const double p = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    const double centre = p + 0.5 * z2n;
    const double spread = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n);
    return std::max(0.0, (centre - spread) / (1.0 + z2n));
}

double coverage_threshold(double delta, int n) {
    return (1.0 - delta) - 3.0 * std::sqrt(delta * (1.0 - delta) / n);
}

bool CampaignResult::coverage_pass() const {
    return std::all_of(report.rows.begin(), report.rows.end(), [](const CoverageRow& r) { return r.pass; });
}

std::uint64_t trial_seed(const ExperimentConfig& config, int trial) {
    return substream_seed(config.seed, static_cast<std::uint64_t>(trial));
}

std::uint64_t prior_seed(std::uint64_t trial_seed_value) {
    return substream_seed(trial_seed_value, kPriorStream);
}

CampaignResult run_experiment(const ExperimentConfig& config, const CampaignOptions& options) {
    config.validate();
    const bool noisy = config.noise_sd > 0.0;
    const auto c42 = bounds::constants_thm42(config.delta, noisy);
    const auto c46 = bounds::constants_thm46(config.delta, noisy);
    const PriorSampler sampler(config.kernel, config.grid());
    const double noise_var = config.noise_sd * config.noise_sd;

    CampaignResult result;
    result.config = config;
    result.trials.resize(static_cast<std::size_t>(config.trials));

    parallel_for(config.trials, options.workers, [&](int i) {
        TrialResult tr;
        tr.trial = i;
        tr.seed = trial_seed(config, i);
        const PriorSample sample = sampler.draw(prior_seed(tr.seed));
        tr.M = sample.M;
        tr.trace = run(config, sample, tr.seed);
        if (noisy) {
            tr.variance_sum = variance_sum_check(tr.trace.sampled_sigma, noise_var);
        }
        for (const auto& row : tr.trace.rows) {
            if (!c42.valid_t(row.t) || !c46.valid_t(row.t)) continue;
            tr.ts.push_back(row.t);
            tr.thm42.push_back(bounds::empirical_bound_check(tr.trace, c42, sample.M, config.noise_sd, row.t));
            tr.thm46.push_back(bounds::empirical_bound_check(tr.trace, c46, sample.M, config.noise_sd, row.t));
        }
        result.trials[static_cast<std::size_t>(i)] = std::move(tr);
    });

    for (const auto& tr : result.trials) {
        if (tr.variance_sum) {
            ++result.variance_checked;
            result.variance_held += tr.variance_sum->holds ? 1 : 0;
        }
        for (std::size_t k = 0; k < tr.ts.size(); ++k) {
            ++result.ordering_points;
            result.ordering_held += tr.thm46[k].bound < tr.thm42[k].bound ? 1 : 0;
        }
    }

    // Evaluation points are identical across trials unless EI stopping cut a
    // trace short, so index k of every trial refers to the same t.
    std::vector<int> all_ts;
    for (const auto& tr : result.trials) {
        if (tr.ts.size() > all_ts.size()) all_ts = tr.ts;
    }
    for (Theorem th : {Theorem::Thm42, Theorem::Thm46}) {
        for (std::size_t k = 0; k < all_ts.size(); ++k) {
            result.report.rows.push_back(aggregate(th, k, all_ts[k], result.trials, config.delta));
        }
    }

    if (options.out_dir) {
        namespace fs = std::filesystem;
        const fs::path dir(*options.out_dir);
        fs::create_directories(dir);
        for (const auto& tr : result.trials) {
            char name[32];
            std::snprintf(name, sizeof name, "trace_%04d.csv", tr.trial);
            write_trace_csv((dir / name).string(), config, tr);
        }
        write_coverage_csv((dir / "coverage.csv").string(), result);
        write_text_file((dir / "summary.txt").string(), campaign_summary(result));
    }
    return result;
}

std::string campaign_summary(const CampaignResult& result) {
    std::ostringstream os;
    const auto& cfg = result.config;
    os << "# gpei run config_hash=" << cfg.hash() << " seed=" << cfg.seed << '\n';
    os << "# " << config_line(cfg) << '\n';
    for (Theorem th : {Theorem::Thm42, Theorem::Thm46}) {
        int n = 0, ok = 0;
        double worst = 1.0;
        for (const auto& r : result.report.rows) {
            if (r.theorem != th) continue;
            ++n;
            ok += r.pass ? 1 : 0;
            worst = std::min(worst, r.holds_frequency);
        }
        os << (ok == n ? "PASS" : "FAIL") << " coverage_" << theorem_name(th) << " t_points=" << n
           << " passing=" << ok << " min_holds_frequency=" << fmt(worst)
           << " target=" << fmt(1.0 - cfg.delta) << '\n';
    }
    os << (result.ordering_pass() ? "PASS" : "FAIL") << " thm46_below_thm42 points=" << result.ordering_points
       << " held=" << result.ordering_held << '\n';
    if (result.variance_checked > 0) {
        os << (result.variance_pass() ? "PASS" : "FAIL") << " variance_sum traces=" << result.variance_checked
           << " held=" << result.variance_held << '\n';
    } else {
        os << "SKIP variance_sum noiseless\n";
    }
    os << (result.pass() ? "PASS" : "FAIL") << " overall\n";
    return os.str();
}

}  // namespace gpei
