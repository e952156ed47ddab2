// gpei: campaigns, lemma checks, figure data and constant tables for GP-EI
// convergence bounds. Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage or configuration error.

#include "gpei/bounds.hpp"
#include "gpei/campaign.hpp"
#include "gpei/config.hpp"
#include "gpei/csv.hpp"
#include "gpei/figures.hpp"
#include "gpei/lemmas.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    int workers = 1;
    std::optional<int> trials;
    std::optional<double> delta;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "key=value configuration file");
    cmd->add_option("--seed", f.seed, "base seed (u64)");
    cmd->add_option("--out", f.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--trials", f.trials, "trials / Monte-Carlo sample size")->check(CLI::PositiveNumber);
}

gpei::ExperimentConfig effective_config(const CommonFlags& f) {
    gpei::ExperimentConfig config;
    if (!f.config_path.empty()) config.load_file(f.config_path);
    if (f.seed) config.seed = *f.seed;
    if (f.trials) config.trials = *f.trials;
    if (f.delta) config.delta = *f.delta;
    config.validate();
    return config;
}

std::vector<std::string> meta(const gpei::ExperimentConfig& config) {
    std::string cfg = "config: ";
    for (char c : config.to_text()) cfg += (c == '\n') ? ';' : c;
    return {"config_hash=" + config.hash() + " seed=" + std::to_string(config.seed), cfg};
}

std::filesystem::path prepare_out(const std::string& dir) {
    std::filesystem::create_directories(dir);
    return std::filesystem::path(dir);
}

int cmd_run(const CommonFlags& f) {
    const auto config = effective_config(f);
    gpei::CampaignOptions options;
    options.out_dir = f.out_dir;
    options.workers = f.workers;
    const auto result = gpei::run_experiment(config, options);
    const std::string summary = gpei::campaign_summary(result);
    std::cout << summary;
    return result.pass() ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const CommonFlags& f, const std::string& lemma) {
    const auto config = effective_config(f);
    std::vector<gpei::LemmaId> ids;
    if (lemma == "all") {
        ids = gpei::all_lemmas();
    } else {
        ids.push_back(gpei::parse_lemma(lemma));
    }
    const auto dir = prepare_out(f.out_dir);
    std::ostringstream summary;
    summary << "# gpei verify " << meta(config)[0] << '\n' << "# " << meta(config)[1] << '\n';
    bool all_pass = true;
    for (auto id : ids) {
        const auto report = gpei::verify_lemma(id, config, f.trials, f.workers);
        const std::string line = gpei::lemma_summary(report);
        std::cout << line << '\n';
        summary << line << '\n';
        all_pass = all_pass && report.pass;
    }
    gpei::write_text_file((dir / "summary.txt").string(), summary.str());
    return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_figures(const CommonFlags& f, const std::string& fig) {
    const auto config = effective_config(f);
    std::vector<gpei::FigureId> ids;
    if (fig == "all") {
        ids = gpei::all_figures();
    } else {
        ids.push_back(gpei::parse_figure(fig));
    }
    const auto dir = prepare_out(f.out_dir);
    std::ostringstream summary;
    summary << "# gpei figures " << meta(config)[0] << '\n';
    for (auto id : ids) {
        const auto path = dir / (gpei::figure_name(id) + ".csv");
        gpei::emit_figure_data(id, path.string(), meta(config));
        std::cout << "wrote " << path.string() << '\n';
        summary << "PASS " << gpei::figure_name(id) << " written\n";
    }
    gpei::write_text_file((dir / "summary.txt").string(), summary.str());
    return kExitOk;
}

int cmd_coeffs(double delta) {
    const auto c = gpei::bounds::compare_coefficients(delta);
    std::cout << "delta     " << gpei::fmt(c.delta) << '\n'
              << "beta_4.2  " << gpei::fmt(c.beta42) << '\n'
              << "C4_4.2    " << gpei::fmt(c.C4_42) << '\n'
              << "C5_4.2    " << gpei::fmt(c.C5_42) << '\n'
              << "beta_4.6  " << gpei::fmt(c.beta46) << '\n'
              << "w_4.6     " << gpei::fmt(c.w46) << '\n'
              << "C1        " << gpei::fmt(c.C1) << '\n'
              << "C2        " << gpei::fmt(c.C2) << '\n'
              << "C4_4.6    " << gpei::fmt(c.C4_46) << '\n'
              << "C5_4.6    " << gpei::fmt(c.C5_46) << '\n';
    const bool ordered = c.C4_46 < c.C4_42 && c.C5_46 < c.C5_42;
    std::cout << (ordered ? "PASS" : "FAIL") << " C4_4.6 < C4_4.2 and C5_4.6 < C5_4.2\n";
    return ordered ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GP-EI Bayesian optimisation and convergence-bound verification"};
    app.require_subcommand(1);

    CommonFlags run_flags, verify_flags, fig_flags;
    auto* run = app.add_subcommand("run", "Monte-Carlo theorem-coverage campaign");
    add_common(run, run_flags);
    run->add_option("--delta", run_flags.delta, "failure probability override");

    std::string lemma;
    auto* verify = app.add_subcommand("verify", "check one lemma (or 'all')");
    verify->add_option("lemma_id", lemma, "Fmu|FmuT|IEIAdd|IEIRatio|Icdf|TailBound|TauVsPhi|EiMonotone|all")
        ->required();
    add_common(verify, verify_flags);
    verify->add_option("--delta", verify_flags.delta, "failure probability override");

    std::string fig;
    auto* figures = app.add_subcommand("figures", "emit figure data CSV (F1..F5 or 'all')");
    figures->add_option("fig_id", fig, "F1_PhiTau|F2_EiContour|F3_BarTau|F4_TildeTau|F5_Coeffs|all")->required();
    add_common(figures, fig_flags);

    double coeff_delta = 0.1;
    auto* coeffs = app.add_subcommand("coeffs", "print bound constants for a delta");
    coeffs->add_option("--delta", coeff_delta, "failure probability")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) return cmd_run(run_flags);
        if (*verify) return cmd_verify(verify_flags, lemma);
        if (*figures) return cmd_figures(fig_flags, fig);
        if (*coeffs) return cmd_coeffs(coeff_delta);
    } catch (const gpei::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitUsage;
}
