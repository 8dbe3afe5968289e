// qinfer: command-line front end. Subcommands:
//   fig <1..5>  emit figure data as CSV
//   classify    region verdict for a point of the (a, alpha) plane
//   infer       run one inference and print the full state report
//
// Exit codes: 0 success, 1 invalid configuration, 2 numerical failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qinfer/cli.hpp"

namespace {

using namespace qinfer;

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        const std::string item = s.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InvalidConfig("not a real number in list: '" + item + "'");
        }
        pos = comma + 1;
    }
    if (out.empty()) throw InvalidConfig("empty number list");
    return out;
}

cli::Grid parse_grid(const std::string& s) {
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 == std::string::npos ? s.size() : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw InvalidConfig("grid must be start:stop:step");
    try {
        cli::Grid g;
        g.start = std::stod(s.substr(0, c1));
        g.stop = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        g.step = std::stod(s.substr(c2 + 1));
        return g;
    } catch (const std::exception&) {
        throw InvalidConfig("grid must be start:stop:step with real numbers");
    }
}

struct Flags {
    double kappa = 1.0;
    double lambda = -1.0;
    double alpha1 = 2.0;
    double alpha2 = 3.0;
    double theta = 0.0;
    double tol = 1e-12;
    std::string alphas, ratios, thetas, grid, out;
    std::string observable = "bell", basis = "product", scheme = "maxent";
    std::string eigenvalues;
    double mean = 0.0;
    double a = 0.0, alpha = 0.0;
    int fig = 0;
};

Observable observable_from_flags(const Flags& f) {
    if (f.observable == "bell") return schemes::bell_operator();
    if (f.observable == "opA") return schemes::operator_a(f.kappa, f.lambda);
    if (f.observable == "opD")
        return schemes::operator_d(f.alpha1, f.alpha2, f.theta);
    if (f.observable == "custom") {
        if (f.eigenvalues.empty())
            throw InvalidConfig("custom observable needs --eigenvalues d1,d2,d3,d4");
        const auto ds = parse_real_list(f.eigenvalues);
        if (ds.size() != 4)
            throw InvalidConfig("custom observable needs exactly 4 eigenvalues");
        std::array<double, 4> d{ds[0], ds[1], ds[2], ds[3]};

        std::array<StateVector4, 4> basis;
        if (f.basis == "product") {
            for (int i = 0; i < 4; ++i) basis[static_cast<std::size_t>(i)][i] = 1.0;
        } else if (f.basis == "bell") {
            basis = bell_basis();
        } else if (f.basis == "opA") {
            basis = schemes::operator_a(1.0, 0.0).eigenvectors();
        } else if (f.basis == "opD") {
            basis = schemes::operator_d(2.0, 3.0, f.theta).eigenvectors();
        } else {
            throw InvalidConfig("basis must be product, bell, opA or opD");
        }
        return Observable(d, basis, "custom(" + f.eigenvalues + ", " + f.basis + ")");
    }
    throw InvalidConfig("observable must be bell, opA, opD or custom");
}

int run(int argc, char** argv) {
    CLI::App app{"two-qubit maximum-entropy inference toolkit"};
    app.require_subcommand(1);
    Flags f;

    auto add_observable_flags = [&f](CLI::App* cmd) {
        cmd->add_option("--kappa", f.kappa, "opA kappa (>= 0)");
        cmd->add_option("--lambda", f.lambda, "opA lambda (<= 0)");
        cmd->add_option("--alpha1", f.alpha1, "opD alpha1 (> 1)");
        cmd->add_option("--alpha2", f.alpha2, "opD alpha2 (> alpha1)");
        cmd->add_option("--theta", f.theta, "opD angle, radians");
        cmd->add_option("--tol", f.tol, "solver residual target");
    };

    CLI::App* fig = app.add_subcommand("fig", "emit figure data as CSV");
    fig->add_option("n", f.fig, "figure number (1..5)")->required();
    add_observable_flags(fig);
    fig->add_option("--alphas", f.alphas, "comma list of true-family weights");
    fig->add_option("--ratios", f.ratios, "comma list of -(lambda/kappa) values");
    fig->add_option("--thetas", f.thetas, "comma list of opD angles");
    fig->add_option("--grid", f.grid, "abscissa grid start:stop:step");
    fig->add_option("--out", f.out, "output CSV path (default fig<n>.csv)");

    CLI::App* classify =
        app.add_subcommand("classify", "region verdict at a point (a, alpha)");
    classify->add_option("a", f.a, "mean of opA")->required();
    classify->add_option("alpha", f.alpha, "true-family weight")->required();
    classify->add_option("--kappa", f.kappa, "opA kappa");
    classify->add_option("--lambda", f.lambda, "opA lambda");

    CLI::App* infer = app.add_subcommand("infer", "run one inference");
    infer->add_option("--observable", f.observable,
                      "bell, opA, opD or custom");
    infer->add_option("--eigenvalues", f.eigenvalues,
                      "custom spectrum d1,d2,d3,d4");
    infer->add_option("--basis", f.basis,
                      "custom eigenbasis: product, bell, opA or opD");
    infer->add_option("--mean", f.mean, "target expectation value")->required();
    infer->add_option("--scheme", f.scheme, "maxent or min-sigma2");
    add_observable_flags(infer);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (fig->parsed()) {
        cli::FigureConfig cfg;
        cfg.kappa = f.kappa;
        cfg.lambda = f.lambda;
        cfg.alpha1 = f.alpha1;
        cfg.alpha2 = f.alpha2;
        cfg.tol = f.tol;
        if (!f.alphas.empty()) cfg.alphas = parse_real_list(f.alphas);
        if (!f.ratios.empty()) cfg.ratios = parse_real_list(f.ratios);
        if (!f.thetas.empty()) cfg.thetas = parse_real_list(f.thetas);
        if (!f.grid.empty()) cfg.grid = parse_grid(f.grid);
        const std::string out =
            f.out.empty() ? "fig" + std::to_string(f.fig) + ".csv" : f.out;
        for (const auto& path : cli::write_figure(f.fig, cfg, out))
            std::cout << "wrote " << path << '\n';
        return 0;
    }
    if (classify->parsed()) {
        std::cout << cli::classify_report(f.a, f.alpha, f.kappa, f.lambda);
        return 0;
    }
    if (infer->parsed()) {
        cli::Scheme scheme;
        if (f.scheme == "maxent")
            scheme = cli::Scheme::maxent;
        else if (f.scheme == "min-sigma2")
            scheme = cli::Scheme::min_sigma2;
        else
            throw InvalidConfig("scheme must be maxent or min-sigma2");
        std::cout << cli::infer_report(observable_from_flags(f), f.mean, scheme,
                                       f.tol);
        return 0;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const NonConvergence& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const NonRealExpectation& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const NotHermitian& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const NotPSD& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const InvalidDensityMatrix& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
