#include "qinfer/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qinfer::schemes {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kBellMax = 2.0 * std::sqrt(2.0);

void check_bell_mean(double b) {
    if (std::abs(b) > kBellMax + 1e-12) {
        std::ostringstream os;
        os << "Bell mean " << b << " outside [-2*sqrt(2), 2*sqrt(2)]";
        throw MeanOutOfRange(os.str());
    }
}

// Eigenvector set of operator_a: ((|11>+|00>)/sqrt2, (|11>-|00>)/sqrt2,
// |01>, |10>).
std::array<StateVector4, 4> opa_basis() {
    const auto bell = bell_basis();
    StateVector4 ket01, ket10;
    ket01[1] = 1.0;
    ket10[2] = 1.0;
    return {bell[kPhiPlus], bell[kPhiMinus], ket01, ket10};
}

std::array<StateVector4, 4> opd_basis(double theta) {
    const auto bell = bell_basis();
    StateVector4 v3, v4;
    v3[2] = std::sin(theta); // |10>
    v3[1] = std::cos(theta); // |01>
    v4[2] = std::cos(theta);
    v4[1] = -std::sin(theta);
    return {bell[kPhiPlus], bell[kPhiMinus], v3, v4};
}

double reduce_theta(double theta) {
    const double pi = std::acos(-1.0);
    double t = std::fmod(theta, pi);
    if (t < 0.0) t += pi;
    // theta and pi - theta give locally-unitarily equivalent observables
    if (t > 0.5 * pi) t = pi - t;
    return t;
}

} // namespace

const char* region_label(Region r) {
    switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::AgreeSeparable: return "agree_separable";
    case Region::AgreeEntangled: return "agree_entangled";
    case Region::Unphysical: return "unphysical";
    }
    return "unknown";
}

Observable bell_operator() {
    const auto bell = bell_basis();
    return Observable({kBellMax, 0.0, 0.0, -kBellMax},
                      {bell[kPhiPlus], bell[kPhiMinus], bell[kPsiPlus],
                       bell[kPsiMinus]},
                      "bell");
}

DensityMatrix bell_maxent_state(double b) {
    check_bell_mean(b);
    const double q = b * b / 8.0;
    // weights in bell_basis() order (Phi-, Phi+, Psi-, Psi+)
    std::array<double, 4> w{};
    w[kPhiPlus] = 0.25 * (1.0 + b / kSqrt2 + q);
    w[kPsiMinus] = 0.25 * (1.0 - b / kSqrt2 + q);
    w[kPsiPlus] = 0.25 * (1.0 - q);
    w[kPhiMinus] = 0.25 * (1.0 - q);
    // the first two are perfect squares, (1 +/- b/(2 sqrt 2))^2 / 4;
    // clamp the rounding residue at the endpoints
    for (auto& x : w) x = std::max(0.0, x);
    return bell_diagonal_state(w);
}

DensityMatrix bell_min_sigma2_state(double b) {
    check_bell_mean(b);
    const double f = std::abs(b) / kBellMax;
    std::array<double, 4> w{};
    if (b >= 0.0) {
        // b == 0 falls into this branch: equal weights on Psi+ and Phi-
        w[kPhiPlus] = f;
    } else {
        w[kPsiMinus] = f;
    }
    w[kPsiPlus] = 0.5 * (1.0 - f);
    w[kPhiMinus] = 0.5 * (1.0 - f);
    return bell_diagonal_state(w);
}

DensityMatrix bell_true_state(double b, double alpha_t) {
    check_bell_mean(b);
    if (alpha_t < -1e-12)
        throw InvalidParams("bell_true_state: alpha_t must be nonnegative");
    const double f = b / kBellMax;
    std::array<double, 4> w{};
    w[kPhiPlus] = f + alpha_t;
    w[kPsiMinus] = alpha_t;
    w[kPsiPlus] = 0.5 * (1.0 - f - 2.0 * alpha_t);
    w[kPhiMinus] = 0.5 * (1.0 - f - 2.0 * alpha_t);
    for (double x : w)
        if (x < -1e-12)
            throw InvalidParams("bell_true_state: weights negative for (b, alpha_t)");
    for (auto& x : w) x = std::max(0.0, x);
    return bell_diagonal_state(w);
}

Observable operator_a(double kappa, double lambda) {
    if (!(kappa >= 0.0) || !(lambda <= 0.0))
        throw InvalidParams("operator_a: requires kappa >= 0 >= lambda");
    std::ostringstream label;
    label << "opA(kappa=" << kappa << ", lambda=" << lambda << ")";
    return Observable({kappa, lambda, kappa, 0.0}, opa_basis(), label.str());
}

DensityMatrix opa_min_sigma2_state(double kappa, double a) {
    if (!(kappa > 0.0)) throw InvalidParams("opa_min_sigma2_state: kappa must be > 0");
    if (a < -1e-12 * kappa || a > kappa * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "opA mean " << a << " outside [0, kappa=" << kappa << "]";
        throw MeanOutOfRange(os.str());
    }
    const double half = std::clamp(0.5 * a / kappa, 0.0, 0.5);
    std::array<double, 4> w{half, 0.0, half, std::max(0.0, 1.0 - a / kappa)};
    return state_from_spectrum(w, opa_basis());
}

double opa_pt_eigenvalue(double a_over_kappa) {
    const double x = a_over_kappa;
    if (x < -1e-12 || x > 1.0 + 1e-12)
        throw MeanOutOfRange("opa_pt_eigenvalue: a/kappa outside [0, 1]");
    return -0.25 * x + 0.5 - 0.25 * std::sqrt(x * (10.0 * x - 12.0) + 4.0);
}

DensityMatrix opa_true_state(const OpAParams& p) {
    if (!(p.kappa > 0.0) || !(p.lambda <= 0.0))
        throw InvalidParams("opa_true_state: requires kappa > 0 >= lambda");
    const double x = p.a / p.kappa;
    std::array<double, 4> w{x - p.alpha, 0.0, p.alpha, 1.0 - x};
    for (double v : w)
        if (v < -1e-12)
            throw InvalidParams(
                "opa_true_state: (a, alpha) gives a negative eigenvalue");
    for (auto& v : w) v = std::max(0.0, v);
    return state_from_spectrum(w, opa_basis());
}

double opa_separability_q(double a_over_kappa, double alpha) {
    const double x = a_over_kappa;
    if (x < -1e-12 || x > 1.0 + 1e-12 || alpha < -1e-12 || alpha > x + 1e-12)
        throw InvalidParams("opa_separability_q: point outside the physical region");
    const double rad = 2.0 * x * x - 2.0 * x + 1.0 - 2.0 * alpha + 2.0 * alpha * alpha;
    return 0.5 - 0.5 * x + 0.5 * alpha - 0.5 * std::sqrt(std::max(0.0, rad));
}

double opa_critical_mean(double neg_lambda_over_kappa) {
    if (neg_lambda_over_kappa < 0.0)
        throw InvalidParams("opa_critical_mean: ratio must be >= 0");
    const Observable obs = operator_a(1.0, -neg_lambda_over_kappa);
    auto separable_at = [&obs](double a) {
        return is_separable(maxent_single(obs, a).rho);
    };
    // The transition lies in (0.5, 1.0) for every plotted ratio.
    double lo = 0.5, hi = 1.0;
    if (!separable_at(lo) || separable_at(hi))
        throw NonConvergence("opa_critical_mean: transition not bracketed");
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (separable_at(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

RegionVerdict classify_region(const OpAParams& p) {
    RegionVerdict v;
    const bool physical = p.kappa > 0.0 && p.lambda <= 0.0 &&
                          p.a >= -1e-12 * p.kappa &&
                          p.a <= p.kappa * (1.0 + 1e-12) && p.alpha >= -1e-12 &&
                          p.alpha <= p.a / p.kappa + 1e-12;
    if (!physical) {
        v.region = Region::Unphysical;
        return v;
    }
    v.true_separable = is_separable(opa_true_state(p));
    v.ms_separable = is_separable(opa_min_sigma2_state(p.kappa, p.a));
    v.me_separable =
        is_separable(maxent_single(operator_a(p.kappa, p.lambda), p.a).rho);
    if (v.true_separable && !v.ms_separable)
        v.region = Region::I;
    else if (!v.true_separable && v.ms_separable)
        v.region = Region::II;
    else if (v.true_separable)
        v.region = Region::AgreeSeparable;
    else
        v.region = Region::AgreeEntangled;
    return v;
}

Observable operator_d(double alpha1, double alpha2, double theta) {
    if (!(alpha2 > alpha1) || !(alpha1 > 1.0))
        throw InvalidParams("operator_d: requires alpha2 > alpha1 > 1");
    std::ostringstream label;
    label << "opD(alpha1=" << alpha1 << ", alpha2=" << alpha2
          << ", theta=" << theta << ")";
    return Observable({1.0, alpha1, alpha2, 0.0}, opd_basis(reduce_theta(theta)),
                      label.str());
}

DensityMatrix opd_min_sigma2_state(const OpDParams& p) {
    if (!(p.alpha2 > p.alpha1) || !(p.alpha1 > 1.0))
        throw InvalidParams("opd_min_sigma2_state: requires alpha2 > alpha1 > 1");
    const double d = p.d;
    if (d < -1e-12 || d > p.alpha2 + 1e-12) {
        std::ostringstream os;
        os << "opD mean " << d << " outside [0, alpha2=" << p.alpha2 << "]";
        throw MeanOutOfRange(os.str());
    }
    std::array<double, 4> w{};
    if (d <= 1.0) {
        w[0] = d;            // |1> = Phi+
        w[3] = 1.0 - d;      // |4>
    } else if (d <= p.alpha1) {
        w[0] = (p.alpha1 - d) / (p.alpha1 - 1.0);
        w[1] = (d - 1.0) / (p.alpha1 - 1.0); // |2> = Phi-
    } else {
        w[1] = (p.alpha2 - d) / (p.alpha2 - p.alpha1);
        w[2] = (d - p.alpha1) / (p.alpha2 - p.alpha1); // |3>
    }
    for (auto& x : w) x = std::clamp(x, 0.0, 1.0);
    return state_from_spectrum(w, opd_basis(reduce_theta(p.theta)));
}

DensityMatrix opd_maxent_state(const OpDParams& p) {
    return maxent_single(operator_d(p.alpha1, p.alpha2, p.theta), p.d).rho;
}

Observable normalize_observable(
    const std::array<double, 4>& ascending_eigenvalues,
    const std::array<StateVector4, 4>& eigenvectors) {
    const auto& d = ascending_eigenvalues;
    for (int i = 0; i < 3; ++i) {
        const double gap = d[static_cast<std::size_t>(i + 1)] -
                           d[static_cast<std::size_t>(i)];
        if (std::abs(gap) <= 1e-12)
            throw DegenerateSpectrum("normalize_observable: eigenvalues coincide");
        if (gap < 0.0)
            throw InvalidParams("normalize_observable: eigenvalues not ascending");
    }
    const double span = d[1] - d[0];
    const double alpha1 = (d[2] - d[0]) / span;
    const double alpha2 = (d[3] - d[0]) / span;
    std::ostringstream label;
    label << "normalized(alpha1=" << alpha1 << ", alpha2=" << alpha2 << ")";
    return Observable({0.0, 1.0, alpha1, alpha2}, eigenvectors, label.str());
}

} // namespace qinfer::schemes
