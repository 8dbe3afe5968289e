#pragma once

// Figure-data emission and the text reports behind the command-line
// tool. Figures are produced as in-memory tables first so tests can
// inspect them; the CSV writer is a thin, deterministic serializer.

#include <optional>
#include <string>
#include <vector>

#include "qinfer/schemes.hpp"

namespace qinfer::cli {

struct Grid {
    double start = 0.0;
    double stop = 1.0;
    double step = 0.01;
};

/// Points start, start+step, ... ; the stop value itself is always
/// included as the final point. Throws InvalidConfig on a bad grid.
std::vector<double> make_grid(const Grid& g);

/// One row of figure data. An empty ordinate marks a parameter
/// combination outside its domain (e.g. an unphysical true-state).
struct CurveSample {
    double abscissa = 0.0;
    std::vector<std::optional<double>> ordinates;
};

/// Rows plus column names plus the config-echo comment; enforces a
/// strictly increasing abscissa and a fixed ordinate count.
class CurveTable {
public:
    CurveTable(std::string comment, std::vector<std::string> columns);

    void append(double abscissa, std::vector<std::optional<double>> ordinates);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<CurveSample>& rows() const { return rows_; }

    std::string to_csv() const;
    void write_csv(const std::string& path) const;

private:
    std::string comment_;
    std::vector<std::string> columns_;
    std::vector<CurveSample> rows_;
};

struct FigureConfig {
    double kappa = 1.0;
    double lambda = -1.0;
    double alpha1 = 2.0;
    double alpha2 = 3.0;
    std::vector<double> alphas; // true-family weights, figs 1 and 3
    std::vector<double> ratios; // -(lambda/kappa) values, fig 4
    std::vector<double> thetas; // opD angles, fig 5
    std::optional<Grid> grid;   // abscissa override; per-figure default otherwise
    double tol = 1e-12;         // solver residual target
};

// Figure builders. Columns:
//   fig1: b, E_me, E_ms, E_true_alpha<v>...
//   fig2: alpha, a_true_boundary, a_me_critical, a_ms_critical
//   fig3: a, E_me, E_ms, E_true_alpha<v>...
//   fig4: a_over_kappa, E_ms, E_me_ratio<v>...   (+ inset: ratio, a_critical)
//   fig5: d, E_me_theta<v>..., E_ms_theta<v>...
CurveTable build_fig1(const FigureConfig& cfg);
CurveTable build_fig2(const FigureConfig& cfg);
CurveTable build_fig3(const FigureConfig& cfg);
CurveTable build_fig4(const FigureConfig& cfg);
CurveTable build_fig4_inset(const FigureConfig& cfg);
CurveTable build_fig5(const FigureConfig& cfg);

/// Builds figure n and writes it to out_path; figure 4 also writes a
/// companion "<stem>_inset<ext>" file. Returns the paths written.
std::vector<std::string> write_figure(int n, const FigureConfig& cfg,
                                      const std::string& out_path);

enum class Scheme { maxent, min_sigma2 };

/// Region verdict for one point of the (a, alpha) plane, one field per
/// line, ending in the region label.
std::string classify_report(double a, double alpha, double kappa, double lambda);

/// Full inference report for one observable and target mean: the state
/// in the product basis plus its moments, entropy and entanglement.
std::string infer_report(const Observable& obs, double mean, Scheme scheme,
                         double tol = 1e-12);

/// 12-significant-digit formatting used for every CSV value.
std::string format_real(double x);

} // namespace qinfer::cli
