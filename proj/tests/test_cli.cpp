#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "qinfer/cli.hpp"
#include "qinfer/entanglement.hpp"

using namespace qinfer;
using namespace qinfer::cli;

namespace {

const double kBellMax = 2.0 * std::sqrt(2.0);
const double kPi = std::acos(-1.0);

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QINFER_CLI_PATH) + " " + args +
                            " > /dev/null 2> /dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string run_cli_stdout(const std::string& args) {
    const std::string path = "cli_stdout.tmp";
    const std::string cmd = std::string(QINFER_CLI_PATH) + " " + args + " > " +
                            path + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(WEXITSTATUS(status) == 0);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// column index by name, abscissa is column 0
int column_of(const CurveTable& t, const std::string& name) {
    for (std::size_t i = 0; i < t.columns().size(); ++i)
        if (t.columns()[i] == name) return static_cast<int>(i);
    return -1;
}

} // namespace

TEST_CASE("make_grid includes the stop point exactly") {
    const auto g = make_grid({0.0, kBellMax, 0.01});
    CHECK(g.front() == 0.0);
    CHECK(g.back() == kBellMax);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);

    const auto g2 = make_grid({0.0, 1.0, 0.25});
    CHECK(g2.size() == 5);
    CHECK(g2.back() == 1.0);

    CHECK_THROWS_AS(make_grid({0.0, 1.0, -0.1}), InvalidConfig);
    CHECK_THROWS_AS(make_grid({1.0, 0.0, 0.1}), InvalidConfig);
}

TEST_CASE("curve table enforces its invariants") {
    CurveTable t("cfg", {"x", "y"});
    t.append(0.0, {1.0});
    CHECK_THROWS_AS(t.append(0.0, {1.0}), InvalidConfig);        // not increasing
    CHECK_THROWS_AS(t.append(1.0, {1.0, 2.0}), InvalidConfig);   // wrong arity
    t.append(1.0, {std::nullopt});
    const std::string csv = t.to_csv();
    CHECK(csv == "# cfg\nx,y\n0,1\n1,\n");
}

TEST_CASE("fig1 table endpoints and monotonicity") {
    FigureConfig cfg;
    cfg.grid = Grid{0.0, kBellMax, 0.02};
    const CurveTable t = build_fig1(cfg);

    const auto& rows = t.rows();
    REQUIRE(!rows.empty());
    CHECK(rows.back().abscissa == kBellMax);

    const int e_me = column_of(t, "E_me");
    const int e_ms = column_of(t, "E_ms");
    REQUIRE(e_me == 1);
    REQUIRE(e_ms == 2);

    // endpoint: the pure Bell state carries one full unit of EoF
    CHECK(*rows.back().ordinates[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(*rows.front().ordinates[0] == doctest::Approx(0.0).epsilon(1e-10));

    double prev = -1.0;
    for (const auto& row : rows) {
        REQUIRE(row.ordinates[0].has_value());
        const double v = *row.ordinates[0];
        CHECK(v >= prev - 1e-12); // E_me rises monotonically in b
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(*row.ordinates[1] <= v + 1e-9); // min-sigma2 never exceeds MaxEnt
        prev = v;
    }
}

TEST_CASE("fig2 boundary curve matches the closed-form root") {
    FigureConfig cfg;
    cfg.grid = Grid{0.0, 1.0, 0.05};
    const CurveTable t = build_fig2(cfg);
    for (const auto& row : t.rows()) {
        const double alpha = row.abscissa;
        // Q(a, alpha) = 0 solves to a = 2 sqrt(alpha) - alpha
        const double want = 2.0 * std::sqrt(alpha) - alpha;
        CHECK(*row.ordinates[0] == doctest::Approx(want).epsilon(1e-9));
        CHECK(*row.ordinates[1] == doctest::Approx(0.8564).epsilon(6e-4));
        CHECK(*row.ordinates[2] == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    }
}

TEST_CASE("fig3 marks unphysical true-state cells empty") {
    FigureConfig cfg;
    cfg.grid = Grid{0.0, 1.0, 0.1};
    cfg.alphas = {0.35};
    const CurveTable t = build_fig3(cfg);
    for (const auto& row : t.rows()) {
        const bool physical = 0.35 <= row.abscissa + 1e-12;
        CHECK(row.ordinates[2].has_value() == physical);
    }
}

TEST_CASE("fig5 reference row: theta = pi/4, d = 2.5") {
    FigureConfig cfg;
    cfg.thetas = {kPi / 4.0};
    cfg.grid = Grid{0.0, 3.0, 0.5};
    const CurveTable t = build_fig5(cfg);
    // columns: d, E_me_theta..., E_ms_theta...
    bool found = false;
    for (const auto& row : t.rows()) {
        for (const auto& y : row.ordinates) {
            REQUIRE(y.has_value());
            CHECK(*y >= 0.0);
            CHECK(*y <= 1.0);
        }
        if (std::abs(row.abscissa - 2.5) < 1e-12) {
            found = true;
            // 0.5|Phi-><Phi-| + 0.5|Psi+><Psi+|: Bell-diagonal at the
            // separability boundary, EoF = 0
            CHECK(*row.ordinates[1] == doctest::Approx(0.0).epsilon(1e-10));
        }
    }
    CHECK(found);
}

TEST_CASE("figure tables are deterministic") {
    FigureConfig cfg;
    cfg.grid = Grid{0.0, 1.0, 0.05};
    CHECK(build_fig3(cfg).to_csv() == build_fig3(cfg).to_csv());
    CHECK(build_fig4(cfg).to_csv() == build_fig4(cfg).to_csv());
}

TEST_CASE("classify report fixtures") {
    const std::string r1 = classify_report(0.9, 0.9, 1.0, -1.0);
    CHECK(r1.find("region: I\n") != std::string::npos);
    const std::string r2 = classify_report(0.85, 0.0, 1.0, -1.0);
    CHECK(r2.find("region: II\n") != std::string::npos);
    const std::string r3 = classify_report(0.95, 0.2, 1.0, -1.0);
    CHECK(r3.find("region: agree_entangled\n") != std::string::npos);
    const std::string r4 = classify_report(0.5, 0.9, 1.0, -1.0);
    CHECK(r4.find("region: unphysical\n") != std::string::npos);
}

TEST_CASE("infer report fixtures") {
    SUBCASE("bell at mean 0 under maxent is maximally mixed") {
        const std::string r =
            infer_report(schemes::bell_operator(), 0.0, Scheme::maxent);
        CHECK(r.find("eof_bits: 0\n") != std::string::npos);
        CHECK(r.find("separable: yes\n") != std::string::npos);
        CHECK(r.find("entropy_bits: 2\n") != std::string::npos);
    }
    SUBCASE("opA at mean 0.9 under min-sigma2 is entangled") {
        const std::string r = infer_report(schemes::operator_a(1.0, -1.0), 0.9,
                                           Scheme::min_sigma2);
        CHECK(r.find("separable: no\n") != std::string::npos);
    }
    SUBCASE("opD at mean 1.5 under min-sigma2 is the (Phi+, Phi-) mixture") {
        const Observable obs = schemes::operator_d(2.0, 3.0, kPi / 4.0);
        const std::string r = infer_report(obs, 1.5, Scheme::min_sigma2);
        CHECK(r.find("achieved_mean: 1.5\n") != std::string::npos);
        CHECK(r.find("sigma2: 2.5\n") != std::string::npos);
        CHECK(r.find("separable: yes\n") != std::string::npos);
        // the state is diag(1/2, 0, 0, 1/2) in the product basis
        const DensityMatrix rho = min_sigma2_state(obs, 1.5);
        CHECK(rho.matrix().max_abs_diff(
                  ComplexMatrix4::diagonal(0.5, 0.0, 0.0, 0.5)) < 1e-12);
    }
}

TEST_CASE("cli binary: exit codes and determinism") {
    SUBCASE("help exits cleanly") { CHECK(run_cli("--help") == 0); }
    SUBCASE("bad figure number is a config error") {
        CHECK(run_cli("fig 9 --out cli_fig9.csv") == 1);
    }
    SUBCASE("bad grid is a config error") {
        CHECK(run_cli("fig 1 --grid 1:0:0.1 --out cli_bad.csv") == 1);
    }
    SUBCASE("out-of-range mean is a config error") {
        CHECK(run_cli("infer --observable opA --mean 2 --scheme maxent") == 1);
    }
    SUBCASE("classify prints the region") {
        CHECK(run_cli_stdout("classify 0.9 0.9").find("region: I") !=
              std::string::npos);
    }
    SUBCASE("figure output is byte-identical across runs") {
        const std::string flags =
            "fig 5 --thetas 0,0.785398163397448 --grid 0:3:0.1 ";
        CHECK(run_cli(flags + "--out cli_fig5_a.csv") == 0);
        CHECK(run_cli(flags + "--out cli_fig5_b.csv") == 0);
        CHECK(slurp("cli_fig5_a.csv") == slurp("cli_fig5_b.csv"));
    }
    SUBCASE("fig 4 writes the companion inset file") {
        CHECK(run_cli("fig 4 --ratios 1 --grid 0:1:0.25 --out cli_fig4.csv") == 0);
        const std::string inset = slurp("cli_fig4_inset.csv");
        CHECK(inset.find("ratio,a_critical") != std::string::npos);
        // a_c(1) = 0.8564 +- 5e-4
        std::istringstream lines(inset);
        std::string line;
        std::getline(lines, line); // comment
        std::getline(lines, line); // header
        REQUIRE(std::getline(lines, line));
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const double ac = std::stod(line.substr(comma + 1));
        CHECK(ac == doctest::Approx(0.8564).epsilon(6e-4));
    }
    SUBCASE("custom observable spectrum") {
        const std::string out = run_cli_stdout(
            "infer --observable custom --eigenvalues 0,1,2,3 --basis bell "
            "--mean 1.5 --scheme min-sigma2");
        CHECK(out.find("achieved_mean: 1.5") != std::string::npos);
    }
}
