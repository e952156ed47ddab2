#include "gpei/figures.hpp"

#include "gpei/bounds.hpp"
#include "gpei/config.hpp"
#include "gpei/csv.hpp"
#include "gpei/stdnormal.hpp"

#include <cctype>
#include <cmath>

namespace gpei {

namespace sn = stdnormal;

namespace {

void f1(CsvWriter& csv) {
    for (int i = 0; i <= 600; ++i) {
        const double z = i / 100.0;
        csv.row({z, sn::cdf(-z), 0.5 * std::exp(-0.5 * z * z), sn::tau(-z)});
    }
}

void f2(CsvWriter& csv) {
    for (int ia = -30; ia <= 30; ++ia) {
        const double a = ia / 10.0;
        for (int ib = 1; ib <= 20; ++ib) {
            const double b = ib / 20.0;
            csv.row({a, b, sn::ei_ab(a, b)});
        }
    }
}

void f3(CsvWriter& csv) {
    using F = BarTauFigure;
    const auto emit = [&](const char* section, double z) {
        const sn::BarTauParams p{z, F::w, F::c3};
        for (int j = 1; j <= F::rho_points; ++j) {
            const double rho = figure_rho(j, F::w, F::c3, F::rho_points);
            const double v = sn::bar_tau(rho, p);
            csv.row({section, fmt(z), fmt(rho), fmt(v), fmt(std::log10(v)), fmt(sn::tau(z)),
                     fmt(std::log10(sn::tau(z)))});
        }
    };
    for (int iz = -100; iz < 0; ++iz) emit("grid", iz / 20.0);
    emit("slice", F::slice_z);
}

void f4(CsvWriter& csv) {
    using F = TildeTauFigure;
    const auto emit = [&](const char* section, double z) {
        for (int j = 1; j <= F::rho_points; ++j) {
            const double rho = figure_rho(j, F::w, F::c3, F::rho_points);
            const double v = sn::tilde_tau(rho, z, F::w, F::c1, F::c3);
            csv.row({section, fmt(z), fmt(rho), fmt(v), fmt(std::log10(v)), fmt(sn::tau(z)),
                     fmt(std::log10(sn::tau(z)))});
        }
    };
    for (int iz = 0; iz <= 100; ++iz) emit("grid", iz / 20.0);
    emit("slice", 0.0);
}

void f5(CsvWriter& csv) {
    for (int i = 2; i <= 90; ++i) {
        const double delta = i / 100.0;
        const auto c = bounds::compare_coefficients(delta);
        csv.row({delta, std::log10(c.C4_42), std::log10(c.C5_42), std::log10(c.C4_46), std::log10(c.C5_46)});
    }
}

std::vector<std::string> header_for(FigureId id) {
    switch (id) {
        case FigureId::F1_PhiTau: return {"z", "cdf_neg_z", "half_gauss", "tau_neg_z"};
        case FigureId::F2_EiContour: return {"a", "b", "ei"};
        case FigureId::F3_BarTau:
            return {"section", "z", "rho", "bar_tau", "log10_bar_tau", "tau_z", "log10_tau_z"};
        case FigureId::F4_TildeTau:
            return {"section", "z", "rho", "tilde_tau", "log10_tilde_tau", "tau_z", "log10_tau_z"};
        case FigureId::F5_Coeffs: return {"delta", "log10_C4_42", "log10_C5_42", "log10_C4_46", "log10_C5_46"};
    }
    return {};
}

std::string key(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c != '_' && c != '-') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

std::string figure_name(FigureId id) {
    switch (id) {
        case FigureId::F1_PhiTau: return "F1_PhiTau";
        case FigureId::F2_EiContour: return "F2_EiContour";
        case FigureId::F3_BarTau: return "F3_BarTau";
        case FigureId::F4_TildeTau: return "F4_TildeTau";
        case FigureId::F5_Coeffs: return "F5_Coeffs";
    }
    return "?";
}

std::vector<FigureId> all_figures() {
    return {FigureId::F1_PhiTau, FigureId::F2_EiContour, FigureId::F3_BarTau, FigureId::F4_TildeTau,
            FigureId::F5_Coeffs};
}

FigureId parse_figure(const std::string& name) {
    const std::string k = key(name);
    for (FigureId id : all_figures()) {
        const std::string full = key(figure_name(id));
        if (k == full || k == full.substr(0, 2)) return id;
    }
    throw ConfigError("unknown figure id '" + name + "'");
}

double figure_rho(int j, double w, double c3, int points) {
    return j * (w / c3) / (points + 1);
}

void emit_figure_data(FigureId id, const std::string& out_path, const std::vector<std::string>& meta) {
    std::vector<std::string> lines = meta;
    lines.insert(lines.begin(), "gpei figure " + figure_name(id));
    CsvWriter csv(out_path, lines, header_for(id));
    switch (id) {
        case FigureId::F1_PhiTau: f1(csv); break;
        case FigureId::F2_EiContour: f2(csv); break;
        case FigureId::F3_BarTau: f3(csv); break;
        case FigureId::F4_TildeTau: f4(csv); break;
        case FigureId::F5_Coeffs: f5(csv); break;
    }
    csv.close();
}

}  // namespace gpei
