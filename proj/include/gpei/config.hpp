#ifndef GPEI_CONFIG_HPP
#define GPEI_CONFIG_HPP

#include "gpei/kernel.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace gpei {

enum class Theorem { Thm42, Thm46 };

std::string theorem_name(Theorem theorem);
Theorem parse_theorem(const std::string& name);

/// Raised for malformed or out-of-range configuration; the CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::int64_t kMaxGridSize = 4096;

/// Everything that determines a campaign. Defaults are the desk-scale campaign.
struct ExperimentConfig {
    int d = 1;
    double r = 1.0;
    int grid_per_dim = 200;
    KernelSpec kernel{KernelFamily::SquaredExponential, 0.2};
    double noise_sd = 0.05;
    double delta = 0.1;
    int T = 60;
    int T0 = 1;
    int trials = 200;
    std::uint64_t seed = 20240601;
    Theorem theorem = Theorem::Thm46;
    std::optional<double> kappa;

    void validate() const;

    [[nodiscard]] std::int64_t grid_size() const;

    /// Lattice of grid_per_dim points per axis over [0, r]^d, row-major in
    /// the last coordinate. A single point per axis sits at 0.
    [[nodiscard]] Points grid() const;

    /// Canonical flat key=value text, one key per line, fixed order.
    [[nodiscard]] std::string to_text() const;

    /// FNV-1a 64 of to_text(), as 16 hex digits.
    [[nodiscard]] std::string hash() const;

    /// Apply one key=value assignment. Unknown keys are an error.
    void set(const std::string& key, const std::string& value);

    /// Parse a key=value file (# comments, blank lines allowed) on top of
    /// the current values.
    void load_text(const std::string& text);
    void load_file(const std::string& path);
};

}  // namespace gpei

#endif  // GPEI_CONFIG_HPP
