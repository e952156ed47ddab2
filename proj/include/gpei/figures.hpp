#ifndef GPEI_FIGURES_HPP
#define GPEI_FIGURES_HPP

#include <string>
#include <vector>

namespace gpei {

enum class FigureId { F1_PhiTau, F2_EiContour, F3_BarTau, F4_TildeTau, F5_Coeffs };

std::string figure_name(FigureId id);
/// Accepts "F1".."F5" or the full names, case-insensitively.
FigureId parse_figure(const std::string& name);
std::vector<FigureId> all_figures();

/// Fixed parameters of the two contour figures.
struct BarTauFigure {
    static constexpr double w = 2.0;
    static constexpr double c3 = 18.0;
    static constexpr double slice_z = 1e-3;
    static constexpr int rho_points = 200;
};
struct TildeTauFigure {
    static constexpr double w = 3.0;
    static constexpr double c1 = 741.0;
    static constexpr double c3 = 296.0;
    static constexpr int rho_points = 200;
};

/// rho_j = j * (w / c3) / (points + 1), j = 1..points: interior of the domain.
double figure_rho(int j, double w, double c3, int points);

/// Writes the CSV for one figure. `meta` lines are emitted as '#' comments.
void emit_figure_data(FigureId id, const std::string& out_path, const std::vector<std::string>& meta);

}  // namespace gpei

#endif  // GPEI_FIGURES_HPP
