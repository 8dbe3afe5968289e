#include "qinfer/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qinfer::cli {

namespace {

using schemes::OpAParams;
using schemes::OpDParams;

const double kBellMax = 2.0 * std::sqrt(2.0);

std::string join_reals(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        s += format_real(xs[i]);
    }
    return s;
}

std::string echo_config(int fig, const FigureConfig& cfg, const Grid& grid) {
    std::ostringstream os;
    os << "fig=" << fig << " kappa=" << format_real(cfg.kappa)
       << " lambda=" << format_real(cfg.lambda)
       << " alpha1=" << format_real(cfg.alpha1)
       << " alpha2=" << format_real(cfg.alpha2) << " alphas=" << join_reals(cfg.alphas)
       << " ratios=" << join_reals(cfg.ratios) << " thetas=" << join_reals(cfg.thetas)
       << " grid=" << format_real(grid.start) << ':' << format_real(grid.stop) << ':'
       << format_real(grid.step) << " tol=" << format_real(cfg.tol);
    return os.str();
}

Grid grid_or(const FigureConfig& cfg, double start, double stop, double step) {
    if (cfg.grid) return *cfg.grid;
    return Grid{start, stop, step};
}

void check_config(const FigureConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw InvalidConfig("tolerance must be positive");
}

std::vector<double> alphas_or(const FigureConfig& cfg,
                              std::initializer_list<double> fallback) {
    return cfg.alphas.empty() ? std::vector<double>(fallback) : cfg.alphas;
}

double eof_of(const DensityMatrix& rho) { return entanglement_of_formation(rho); }

// Root of Q(a, alpha) = 0 in a over [alpha, 1]; Q is >= 0 at the left
// end and <= 0 at a = 1, so a sign-change bracket always exists.
double true_boundary_mean(double alpha) {
    double lo = alpha, hi = 1.0;
    const double q_lo = schemes::opa_separability_q(lo, alpha);
    if (q_lo <= 0.0) return lo;
    if (schemes::opa_separability_q(hi, alpha) >= 0.0) return hi;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (schemes::opa_separability_q(mid, alpha) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::vector<double> make_grid(const Grid& g) {
    if (!(g.step > 0.0)) throw InvalidConfig("grid step must be positive");
    if (!(g.start < g.stop)) throw InvalidConfig("grid start must precede stop");
    std::vector<double> xs;
    const double slack = 1e-9 * g.step;
    for (int k = 0;; ++k) {
        const double x = g.start + k * g.step;
        if (x > g.stop + slack) break;
        xs.push_back(x);
    }
    if (xs.empty() || xs.back() < g.stop - slack)
        xs.push_back(g.stop);
    else
        xs.back() = g.stop; // land exactly on the endpoint
    return xs;
}

CurveTable::CurveTable(std::string comment, std::vector<std::string> columns)
    : comment_(std::move(comment)), columns_(std::move(columns)) {
    if (columns_.size() < 2) throw InvalidConfig("CurveTable needs >= 2 columns");
}

void CurveTable::append(double abscissa,
                        std::vector<std::optional<double>> ordinates) {
    if (ordinates.size() + 1 != columns_.size())
        throw InvalidConfig("CurveTable: ordinate count does not match columns");
    if (!rows_.empty() && !(abscissa > rows_.back().abscissa))
        throw InvalidConfig("CurveTable: abscissa must increase strictly");
    rows_.push_back(CurveSample{abscissa, std::move(ordinates)});
}

std::string CurveTable::to_csv() const {
    std::string out = "# " + comment_ + "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += columns_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        out += format_real(row.abscissa);
        for (const auto& y : row.ordinates) {
            out += ',';
            if (y) out += format_real(*y);
        }
        out += '\n';
    }
    return out;
}

void CurveTable::write_csv(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << to_csv();
    if (!f) throw IoError("write failed: " + path);
}

CurveTable build_fig1(const FigureConfig& cfg) {
    check_config(cfg);
    const Grid grid = grid_or(cfg, 0.0, kBellMax, 0.01);
    const auto alphas = alphas_or(cfg, {0.05, 0.1, 0.15});

    std::vector<std::string> cols{"b", "E_me", "E_ms"};
    for (double a : alphas) cols.push_back("E_true_alpha" + format_real(a));

    FigureConfig echo = cfg;
    echo.alphas = alphas;
    CurveTable table(echo_config(1, echo, grid), cols);
    for (double b : make_grid(grid)) {
        std::vector<std::optional<double>> ys;
        ys.emplace_back(eof_of(schemes::bell_maxent_state(b)));
        ys.emplace_back(eof_of(schemes::bell_min_sigma2_state(b)));
        for (double alpha : alphas) {
            std::optional<double> y;
            try {
                y = eof_of(schemes::bell_true_state(b, alpha));
            } catch (const InvalidParams&) {
                // (b, alpha) outside the family's domain
            }
            ys.push_back(y);
        }
        table.append(b, std::move(ys));
    }
    return table;
}

CurveTable build_fig2(const FigureConfig& cfg) {
    check_config(cfg);
    if (!(cfg.kappa > 0.0)) throw InvalidConfig("fig2: kappa must be positive");
    const Grid grid = grid_or(cfg, 0.0, 1.0, 0.005);
    const double a_me = schemes::opa_critical_mean(-cfg.lambda / cfg.kappa);
    const double a_ms = 8.0 / 9.0;

    CurveTable table(echo_config(2, cfg, grid),
                     {"alpha", "a_true_boundary", "a_me_critical", "a_ms_critical"});
    for (double alpha : make_grid(grid)) {
        if (alpha < 0.0 || alpha > 1.0)
            throw InvalidConfig("fig2: alpha grid must stay in [0, 1]");
        table.append(alpha, {true_boundary_mean(alpha), a_me, a_ms});
    }
    return table;
}

CurveTable build_fig3(const FigureConfig& cfg) {
    check_config(cfg);
    const Grid grid = grid_or(cfg, 0.0, cfg.kappa, 0.005 * cfg.kappa);
    const auto alphas = alphas_or(cfg, {0.1, 0.3, 0.5});
    const Observable op_a = schemes::operator_a(cfg.kappa, cfg.lambda);

    std::vector<std::string> cols{"a", "E_me", "E_ms"};
    for (double a : alphas) cols.push_back("E_true_alpha" + format_real(a));

    FigureConfig echo = cfg;
    echo.alphas = alphas;
    CurveTable table(echo_config(3, echo, grid), cols);
    for (double a : make_grid(grid)) {
        std::vector<std::optional<double>> ys;
        ys.emplace_back(eof_of(maxent_single(op_a, a, cfg.tol).rho));
        ys.emplace_back(eof_of(schemes::opa_min_sigma2_state(cfg.kappa, a)));
        for (double alpha : alphas) {
            std::optional<double> y;
            try {
                y = eof_of(schemes::opa_true_state(
                    OpAParams{cfg.kappa, cfg.lambda, a, alpha}));
            } catch (const InvalidParams&) {
                // alpha > a/kappa: unphysical point
            }
            ys.push_back(y);
        }
        table.append(a, std::move(ys));
    }
    return table;
}

CurveTable build_fig4(const FigureConfig& cfg) {
    check_config(cfg);
    const Grid grid = grid_or(cfg, 0.0, 1.0, 0.005);
    const auto ratios = cfg.ratios.empty() ? std::vector<double>{0.5, 1.0, 2.0, 4.0}
                                           : cfg.ratios;

    std::vector<std::string> cols{"a_over_kappa", "E_ms"};
    std::vector<Observable> ops;
    for (double r : ratios) {
        cols.push_back("E_me_ratio" + format_real(r));
        ops.push_back(schemes::operator_a(1.0, -r));
    }

    FigureConfig echo = cfg;
    echo.ratios = ratios;
    CurveTable table(echo_config(4, echo, grid), cols);
    for (double x : make_grid(grid)) {
        std::vector<std::optional<double>> ys;
        ys.emplace_back(eof_of(schemes::opa_min_sigma2_state(1.0, x)));
        for (const Observable& op : ops)
            ys.emplace_back(eof_of(maxent_single(op, x, cfg.tol).rho));
        table.append(x, std::move(ys));
    }
    return table;
}

CurveTable build_fig4_inset(const FigureConfig& cfg) {
    check_config(cfg);
    const auto ratios = cfg.ratios.empty() ? std::vector<double>{0.5, 1.0, 2.0, 4.0}
                                           : cfg.ratios;
    FigureConfig echo = cfg;
    echo.ratios = ratios;
    const Grid grid = grid_or(cfg, 0.0, 1.0, 0.005);
    CurveTable table(echo_config(4, echo, grid) + " inset=1",
                     {"ratio", "a_critical"});
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    for (double r : sorted)
        table.append(r, {schemes::opa_critical_mean(r)});
    return table;
}

CurveTable build_fig5(const FigureConfig& cfg) {
    check_config(cfg);
    const Grid grid = grid_or(cfg, 0.0, cfg.alpha2, 0.01);
    const double pi = std::acos(-1.0);
    const auto thetas = cfg.thetas.empty()
                            ? std::vector<double>{0.0, 0.125 * pi, 0.25 * pi}
                            : cfg.thetas;

    std::vector<std::string> cols{"d"};
    for (double t : thetas) cols.push_back("E_me_theta" + format_real(t));
    for (double t : thetas) cols.push_back("E_ms_theta" + format_real(t));

    std::vector<Observable> ops;
    for (double t : thetas) ops.push_back(schemes::operator_d(cfg.alpha1, cfg.alpha2, t));

    FigureConfig echo = cfg;
    echo.thetas = thetas;
    CurveTable table(echo_config(5, echo, grid), cols);
    for (double d : make_grid(grid)) {
        std::vector<std::optional<double>> ys;
        for (const Observable& op : ops)
            ys.emplace_back(eof_of(maxent_single(op, d, cfg.tol).rho));
        for (double t : thetas)
            ys.emplace_back(eof_of(schemes::opd_min_sigma2_state(
                OpDParams{cfg.alpha1, cfg.alpha2, t, d})));
        table.append(d, std::move(ys));
    }
    return table;
}

std::vector<std::string> write_figure(int n, const FigureConfig& cfg,
                                      const std::string& out_path) {
    std::vector<std::string> written;
    switch (n) {
    case 1: build_fig1(cfg).write_csv(out_path); break;
    case 2: build_fig2(cfg).write_csv(out_path); break;
    case 3: build_fig3(cfg).write_csv(out_path); break;
    case 4: {
        build_fig4(cfg).write_csv(out_path);
        const auto dot = out_path.find_last_of('.');
        const std::string inset_path =
            dot == std::string::npos ? out_path + "_inset"
                                     : out_path.substr(0, dot) + "_inset" +
                                           out_path.substr(dot);
        build_fig4_inset(cfg).write_csv(inset_path);
        written.push_back(out_path);
        written.push_back(inset_path);
        return written;
    }
    case 5: build_fig5(cfg).write_csv(out_path); break;
    default: throw InvalidConfig("figure number must be in 1..5");
    }
    written.push_back(out_path);
    return written;
}

std::string classify_report(double a, double alpha, double kappa, double lambda) {
    const auto v = schemes::classify_region(OpAParams{kappa, lambda, a, alpha});
    std::ostringstream os;
    os << "a: " << format_real(a) << '\n'
       << "alpha: " << format_real(alpha) << '\n'
       << "kappa: " << format_real(kappa) << '\n'
       << "lambda: " << format_real(lambda) << '\n';
    if (v.region == schemes::Region::Unphysical) {
        os << "region: unphysical\n";
        return os.str();
    }
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    os << "true_separable: " << yn(v.true_separable) << '\n'
       << "ms_separable: " << yn(v.ms_separable) << '\n'
       << "me_separable: " << yn(v.me_separable) << '\n'
       << "region: " << schemes::region_label(v.region) << '\n';
    return os.str();
}

std::string infer_report(const Observable& obs, double mean, Scheme scheme,
                         double tol) {
    std::optional<DensityMatrix> rho;
    std::optional<double> beta;
    if (scheme == Scheme::maxent) {
        InferenceResult r = maxent_single(obs, mean, tol);
        rho = r.rho;
        beta = r.beta;
    } else {
        rho = min_sigma2_state(obs, mean);
    }

    const double achieved = expectation(*rho, obs.matrix());
    const double sigma2 = expectation(*rho, obs.squared());
    const EntanglementReport ent = analyze(*rho);

    std::ostringstream os;
    os << "observable: " << obs.label() << '\n'
       << "scheme: " << (scheme == Scheme::maxent ? "maxent" : "min-sigma2") << '\n'
       << "target_mean: " << format_real(mean) << '\n';
    if (beta) os << "beta: " << format_real(*beta) << '\n';
    os << "density_matrix (product basis |00>,|01>,|10>,|11>; re im pairs):\n";
    for (int r = 0; r < 4; ++r) {
        os << " ";
        for (int c = 0; c < 4; ++c) {
            char buf[80];
            std::snprintf(buf, sizeof(buf), " %+12.9f %+12.9f",
                          (*rho)(r, c).real(), (*rho)(r, c).imag());
            os << buf;
        }
        os << '\n';
    }
    os << "achieved_mean: " << format_real(achieved) << '\n'
       << "sigma2: " << format_real(sigma2) << '\n'
       << "entropy_nats: " << format_real(von_neumann_entropy(*rho)) << '\n'
       << "entropy_bits: "
       << format_real(von_neumann_entropy(*rho, EntropyBase::two)) << '\n'
       << "concurrence: " << format_real(ent.concurrence) << '\n'
       << "eof_bits: " << format_real(ent.eof) << '\n'
       << "min_pt_eigenvalue: " << format_real(ent.min_pt_eigenvalue) << '\n'
       << "separable: " << (ent.separable ? "yes" : "no") << '\n';
    return os.str();
}

} // namespace qinfer::cli
