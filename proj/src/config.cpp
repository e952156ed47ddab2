#include "gpei/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gpei {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
    }
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& v) {
    Int x{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
    }
    return x;
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string theorem_name(Theorem theorem) {
    return theorem == Theorem::Thm42 ? "thm42" : "thm46";
}

Theorem parse_theorem(const std::string& name) {
    if (name == "thm42" || name == "Thm42" || name == "4.2") return Theorem::Thm42;
    if (name == "thm46" || name == "Thm46" || name == "4.6") return Theorem::Thm46;
    throw ConfigError("config: unknown theorem '" + name + "' (expected thm42 or thm46)");
}

std::int64_t ExperimentConfig::grid_size() const {
    std::int64_t n = 1;
    for (int i = 0; i < d; ++i) {
        n *= grid_per_dim;
        if (n > kMaxGridSize) return n;
    }
    return n;
}

void ExperimentConfig::validate() const {
    if (d < 1) throw ConfigError("config: d must be >= 1");
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("config: r must be > 0");
    if (grid_per_dim < 1) throw ConfigError("config: grid_per_dim must be >= 1");
    if (grid_size() > kMaxGridSize) throw ConfigError("config: grid_per_dim^d exceeds 4096");
    if (!(kernel.lengthscale > 0.0) || !std::isfinite(kernel.lengthscale)) {
        throw ConfigError("config: lengthscale must be > 0");
    }
    if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) throw ConfigError("config: noise_sd must be >= 0");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("config: delta must lie in (0, 1)");
    if (T0 < 1) throw ConfigError("config: T0 must be >= 1");
    if (T < T0) throw ConfigError("config: T must be >= T0");
    if (T > kMaxGridSize) throw ConfigError("config: T exceeds 4096");
    if (trials < 1) throw ConfigError("config: trials must be >= 1");
    if (kappa && !(*kappa >= 0.0)) throw ConfigError("config: kappa must be >= 0");
}

Points ExperimentConfig::grid() const {
    const std::int64_t n = grid_size();
    Points G(n, d);
    const double step = grid_per_dim > 1 ? r / (grid_per_dim - 1) : 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t rem = i;
        for (int k = d - 1; k >= 0; --k) {
            G(i, k) = static_cast<double>(rem % grid_per_dim) * step;
            rem /= grid_per_dim;
        }
    }
    return G;
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream os;
    os << "d=" << d << '\n'
       << "r=" << fmt_double(r) << '\n'
       << "grid_per_dim=" << grid_per_dim << '\n'
       << "kernel=" << KernelSpec::family_name(kernel.family) << '\n'
       << "lengthscale=" << fmt_double(kernel.lengthscale) << '\n'
       << "noise_sd=" << fmt_double(noise_sd) << '\n'
       << "delta=" << fmt_double(delta) << '\n'
       << "T=" << T << '\n'
       << "T0=" << T0 << '\n'
       << "trials=" << trials << '\n'
       << "seed=" << seed << '\n'
       << "theorem=" << theorem_name(theorem) << '\n'
       << "kappa=" << (kappa ? fmt_double(*kappa) : std::string("none")) << '\n';
    return os.str();
}

std::string ExperimentConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_text()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void ExperimentConfig::set(const std::string& key_in, const std::string& value_in) {
    const std::string key = trim(key_in);
    const std::string v = trim(value_in);
    if (key == "d") d = parse_int<int>(key, v);
    else if (key == "r") r = parse_double(key, v);
    else if (key == "grid_per_dim") grid_per_dim = parse_int<int>(key, v);
    else if (key == "kernel") {
        try {
            kernel.family = KernelSpec::parse_family(v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
    else if (key == "lengthscale") kernel.lengthscale = parse_double(key, v);
    else if (key == "noise_sd") noise_sd = parse_double(key, v);
    else if (key == "delta") delta = parse_double(key, v);
    else if (key == "T") T = parse_int<int>(key, v);
    else if (key == "T0") T0 = parse_int<int>(key, v);
    else if (key == "trials") trials = parse_int<int>(key, v);
    else if (key == "seed") seed = parse_int<std::uint64_t>(key, v);
    else if (key == "theorem") theorem = parse_theorem(v);
    else if (key == "kappa") {
        if (v == "none" || v.empty()) kappa.reset();
        else kappa = parse_double(key, v);
    }
    else throw ConfigError("config: unknown key '" + key + "'");
}

void ExperimentConfig::load_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hashpos = line.find('#');
        if (hashpos != std::string::npos) line.erase(hashpos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        set(line.substr(0, eq), line.substr(eq + 1));
    }
}

void ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    load_text(buf.str());
}

}  // namespace gpei
