#include "qinfer/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qinfer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double eig_scale(const std::array<double, 4>& d) {
    double s = 1.0;
    for (double x : d) s = std::max(s, std::abs(x));
    return s;
}

struct GibbsState {
    std::array<double, 4> weights{};
    double mean = 0.0;
    double second_moment = 0.0;
    double log_partition = 0.0;
};

// Weights proportional to exp(-beta*d_i - gamma*d_i^2), normalized with
// the max-exponent shift so no intermediate overflows for any multiplier
// sign.
GibbsState gibbs(const std::array<double, 4>& d, double beta, double gamma) {
    std::array<double, 4> expo{};
    double shift = -kInf;
    for (std::size_t i = 0; i < 4; ++i) {
        expo[i] = -beta * d[i] - gamma * d[i] * d[i];
        shift = std::max(shift, expo[i]);
    }
    GibbsState g;
    double z = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        g.weights[i] = std::exp(expo[i] - shift);
        z += g.weights[i];
    }
    for (std::size_t i = 0; i < 4; ++i) {
        g.weights[i] /= z;
        g.mean += g.weights[i] * d[i];
        g.second_moment += g.weights[i] * d[i] * d[i];
    }
    g.log_partition = shift + std::log(z);
    return g;
}

DensityMatrix state_from_weights(const Observable& obs,
                                 const std::array<double, 4>& w) {
    return state_from_spectrum(w, obs.eigenvectors());
}

InferenceResult make_result(const Observable& obs, const GibbsState& g,
                            double beta, std::optional<double> gamma,
                            double target_mean) {
    InferenceResult r{state_from_weights(obs, g.weights), beta, gamma,
                      g.mean, g.second_moment, g.log_partition};
    if (std::abs(r.achieved_mean - target_mean) > 1e-9)
        throw NonConvergence("maxent: achieved mean misses target beyond 1e-9");
    if (commutator_max_abs(r.rho.matrix(), obs.matrix()) > 1e-10)
        throw NonConvergence("maxent: inferred state does not commute with observable");
    return r;
}

// Uniform mixture over the eigenspace of the extreme eigenvalue; the
// beta -> +/- infinity limit of the Gibbs state.
InferenceResult extreme_mean_result(const Observable& obs, double extreme,
                                    bool is_max) {
    const auto& d = obs.eigenvalues();
    const double tol = 1e-12 * eig_scale(d);
    std::array<double, 4> w{};
    int mult = 0;
    for (std::size_t i = 0; i < 4; ++i)
        if (std::abs(d[i] - extreme) <= tol) {
            w[i] = 1.0;
            ++mult;
        }
    for (auto& x : w) x /= mult;

    GibbsState g;
    g.weights = w;
    for (std::size_t i = 0; i < 4; ++i) {
        g.mean += w[i] * d[i];
        g.second_moment += w[i] * d[i] * d[i];
    }
    // log Z relative to the extreme eigenvalue's Gibbs factor
    g.log_partition = std::log(static_cast<double>(mult));
    return make_result(obs, g, is_max ? -kInf : kInf, std::nullopt, extreme);
}

void check_mean_range(const Observable& obs, double mean) {
    const double lo = obs.min_eigenvalue();
    const double hi = obs.max_eigenvalue();
    const double tol = 1e-12 * eig_scale(obs.eigenvalues());
    if (mean < lo - tol || mean > hi + tol) {
        std::ostringstream os;
        os << "mean " << mean << " outside spectrum [" << lo << ", " << hi << "] of "
           << obs.label();
        throw MeanOutOfRange(os.str());
    }
}

// Candidate supports of an extreme point of {p >= 0, sum p = 1,
// sum p_i d_i = mean}: single eigenvalues equal to the mean, or pairs
// bracketing it. Calls visit(sigma2, i, j, t) with weight t on index i;
// singletons use j == i, t == 1.
template <typename Visitor>
void scan_support_vertices(const std::array<double, 4>& d, double mean,
                           Visitor&& visit) {
    const double tol = 1e-12 * eig_scale(d);
    for (int i = 0; i < 4; ++i) {
        const double di = d[static_cast<std::size_t>(i)];
        if (std::abs(di - mean) <= tol) visit(di * di, i, i, 1.0);
        for (int j = i + 1; j < 4; ++j) {
            const double dj = d[static_cast<std::size_t>(j)];
            if (std::abs(di - dj) <= tol) continue;
            const double lo = std::min(di, dj);
            const double hi = std::max(di, dj);
            if (mean < lo - tol || mean > hi + tol) continue;
            double t = (dj - mean) / (dj - di); // weight on i
            t = std::clamp(t, 0.0, 1.0);
            visit(t * di * di + (1.0 - t) * dj * dj, i, j, t);
        }
    }
}

struct Newton2Result {
    double beta = 0.0;
    double gamma = 0.0;
    GibbsState state;
    bool converged = false;
    bool ill_conditioned = false;
};

Newton2Result newton_two_constraints(const std::array<double, 4>& d, double mean,
                                     double sigma2, double beta0, double tol) {
    Newton2Result out;
    double beta = beta0;
    double gamma = 0.0;
    GibbsState g = gibbs(d, beta, gamma);

    for (int iter = 0; iter < 200; ++iter) {
        const double r1 = g.mean - mean;
        const double r2 = g.second_moment - sigma2;
        if (std::abs(r1) <= tol && std::abs(r2) <= tol) {
            out.converged = true;
            break;
        }

        // Exact Jacobian: d<O>/dbeta = -Var(O), d<O>/dgamma = -Cov(O,O^2),
        // d<O^2>/dgamma = -Var(O^2). Newton step solves C * delta = r with
        // C the covariance matrix of (O, O^2) under the current state.
        double m3 = 0.0, m4 = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const double d2 = d[i] * d[i];
            m3 += g.weights[i] * d2 * d[i];
            m4 += g.weights[i] * d2 * d2;
        }
        const double c11 = g.second_moment - g.mean * g.mean;
        const double c12 = m3 - g.mean * g.second_moment;
        const double c22 = m4 - g.second_moment * g.second_moment;

        const double det = c11 * c22 - c12 * c12;
        const double norm = std::max({std::abs(c11), std::abs(c12), std::abs(c22)});
        if (!(std::abs(det) > 1e-12 * norm * norm) || norm <= 0.0) {
            out.ill_conditioned = true;
            break;
        }
        // Condition estimate from the symmetric 2x2 eigenvalues.
        const double tr = c11 + c22;
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
        const double eig_hi = 0.5 * (tr + disc);
        const double eig_lo = 0.5 * (tr - disc);
        if (!(eig_lo > 0.0) || eig_hi / eig_lo > 1e12) {
            out.ill_conditioned = true;
            break;
        }

        const double db = (c22 * r1 - c12 * r2) / det;
        const double dg = (-c12 * r1 + c11 * r2) / det;

        // Damped step: halve until the residual actually shrinks.
        const double res0 = std::hypot(r1, r2);
        double step = 1.0;
        GibbsState trial;
        bool accepted = false;
        for (int k = 0; k < 40; ++k) {
            trial = gibbs(d, beta + step * db, gamma + step * dg);
            const double res =
                std::hypot(trial.mean - mean, trial.second_moment - sigma2);
            if (res < res0 * (1.0 - 0.25 * step) || res < tol) {
                beta += step * db;
                gamma += step * dg;
                g = trial;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            out.ill_conditioned = true; // let the bisection fallback try
            break;
        }
    }

    out.beta = beta;
    out.gamma = gamma;
    out.state = g;
    return out;
}

// Expanding-bracket bisection on beta for <O> = mean at fixed gamma.
// The mean is strictly decreasing in beta, so this always converges for
// interior targets.
double solve_beta(const std::array<double, 4>& d, double mean, double gamma,
                  double tol) {
    double bracket = 1.0;
    double lo = -bracket, hi = bracket;
    // f(beta) = mean(beta) - target; f(lo) > 0 > f(hi) once bracketed
    auto f = [&](double beta) { return gibbs(d, beta, gamma).mean - mean; };
    int expand = 0;
    while ((f(lo) < 0.0 || f(hi) > 0.0) && expand < 80) {
        bracket *= 2.0;
        lo = -bracket;
        hi = bracket;
        ++expand;
    }
    if (expand >= 80)
        throw NonConvergence("maxent: failed to bracket the mean in beta");

    double mid = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) <= tol) break;
        if (fm > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

} // namespace

Observable::Observable(const std::array<double, 4>& eigenvalues,
                       const std::array<StateVector4, 4>& eigenvectors,
                       std::string label)
    : eigenvalues_(eigenvalues), eigenvectors_(eigenvectors),
      label_(std::move(label)) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const cxd g = inner(eigenvectors_[static_cast<std::size_t>(i)],
                                eigenvectors_[static_cast<std::size_t>(j)]);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - want) > 1e-10)
                throw InvalidParams("Observable '" + label_ +
                                    "': eigenvectors not orthonormal");
        }
}

double Observable::min_eigenvalue() const {
    return *std::min_element(eigenvalues_.begin(), eigenvalues_.end());
}

double Observable::max_eigenvalue() const {
    return *std::max_element(eigenvalues_.begin(), eigenvalues_.end());
}

ComplexMatrix4 Observable::matrix() const {
    ComplexMatrix4 m;
    for (int i = 0; i < 4; ++i)
        m = m + eigenvalues_[static_cast<std::size_t>(i)] *
                    projector(eigenvectors_[static_cast<std::size_t>(i)]);
    return m;
}

ComplexMatrix4 Observable::squared() const {
    ComplexMatrix4 m;
    for (int i = 0; i < 4; ++i) {
        const double d = eigenvalues_[static_cast<std::size_t>(i)];
        m = m + (d * d) * projector(eigenvectors_[static_cast<std::size_t>(i)]);
    }
    return m;
}

InferenceResult maxent_single(const Observable& obs, double mean,
                              double residual_tol) {
    check_mean_range(obs, mean);
    const auto& d = obs.eigenvalues();
    const double lo = obs.min_eigenvalue();
    const double hi = obs.max_eigenvalue();
    const double edge_tol = 1e-12 * eig_scale(d);

    if (hi - lo <= edge_tol) {
        // Fully degenerate spectrum: every state has the same mean; the
        // maximum-entropy one is uniform.
        GibbsState g = gibbs(d, 0.0, 0.0);
        return make_result(obs, g, 0.0, std::nullopt, mean);
    }
    if (std::abs(mean - hi) <= edge_tol) return extreme_mean_result(obs, hi, true);
    if (std::abs(mean - lo) <= edge_tol) return extreme_mean_result(obs, lo, false);

    const double beta = solve_beta(d, mean, 0.0, residual_tol);
    return make_result(obs, gibbs(d, beta, 0.0), beta, std::nullopt, mean);
}

InferenceResult maxent_double(const Observable& obs, double mean, double sigma2,
                              double residual_tol) {
    check_mean_range(obs, mean);
    const auto& d = obs.eigenvalues();
    const double scale2 = eig_scale(d) * eig_scale(d);
    const double smin = min_sigma2(obs, mean);
    const double smax = max_sigma2(obs, mean);
    if (sigma2 < smin - 1e-9 * scale2 || sigma2 > smax + 1e-9 * scale2) {
        std::ostringstream os;
        os << "sigma2 " << sigma2 << " outside attainable [" << smin << ", " << smax
           << "] at mean " << mean;
        throw Infeasible(os.str());
    }

    if (sigma2 <= smin + 1e-12 * scale2) {
        // Boundary: the multipliers diverge and the solution is the
        // minimum-sigma^2 state. Report the limit directions: gamma ->
        // +inf, and beta -> -inf*sign(u+v) for the optimal support {u, v}.
        DensityMatrix rho = min_sigma2_state(obs, mean);
        double support_sum = 0.0;
        double best = kInf;
        scan_support_vertices(d, mean, [&](double s2, int i, int j, double) {
            if (s2 < best) {
                best = s2;
                support_sum = d[static_cast<std::size_t>(i)] +
                              d[static_cast<std::size_t>(j)];
            }
        });
        double beta = 0.0;
        if (support_sum > 1e-12)
            beta = -kInf;
        else if (support_sum < -1e-12)
            beta = kInf;
        InferenceResult r{rho, beta, kInf, mean, smin, 0.0};
        r.achieved_mean = expectation(rho, obs.matrix());
        r.achieved_sigma2 = expectation(rho, obs.squared());
        return r;
    }

    // Interior: damped Newton on (beta, gamma) seeded from the
    // single-constraint solve, nested bisection as fallback.
    const double beta0 = maxent_single(obs, mean, residual_tol).beta;
    const double seed = std::isfinite(beta0) ? beta0 : 0.0;
    Newton2Result n = newton_two_constraints(d, mean, sigma2, seed, residual_tol);
    if (n.converged)
        return make_result(obs, n.state, n.beta, n.gamma, mean);

    // Fallback: the achieved second moment (with beta re-solved for the
    // mean) decreases monotonically in gamma.
    auto moment_at = [&](double gamma) {
        const double beta = solve_beta(d, mean, gamma, residual_tol);
        return gibbs(d, beta, gamma).second_moment;
    };
    double bracket = 1.0;
    int expand = 0;
    while ((moment_at(-bracket) < sigma2 || moment_at(bracket) > sigma2) &&
           expand < 60) {
        bracket *= 2.0;
        ++expand;
    }
    if (expand >= 60)
        throw NonConvergence("maxent_double: failed to bracket sigma2 in gamma");
    double glo = -bracket, ghi = bracket;
    double gamma = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        gamma = 0.5 * (glo + ghi);
        const double m2 = moment_at(gamma);
        if (std::abs(m2 - sigma2) <= residual_tol) break;
        if (m2 > sigma2)
            glo = gamma;
        else
            ghi = gamma;
    }
    const double beta = solve_beta(d, mean, gamma, residual_tol);
    GibbsState g = gibbs(d, beta, gamma);
    if (std::abs(g.second_moment - sigma2) > 1e-9 * scale2)
        throw NonConvergence("maxent_double: sigma2 residual beyond tolerance");
    return make_result(obs, g, beta, gamma, mean);
}

double min_sigma2(const Observable& obs, double mean) {
    check_mean_range(obs, mean);
    double best = kInf;
    scan_support_vertices(obs.eigenvalues(), mean,
                          [&](double s2, int, int, double) {
                              best = std::min(best, s2);
                          });
    return best;
}

double max_sigma2(const Observable& obs, double mean) {
    check_mean_range(obs, mean);
    double best = -kInf;
    scan_support_vertices(obs.eigenvalues(), mean,
                          [&](double s2, int, int, double) {
                              best = std::max(best, s2);
                          });
    return best;
}

DensityMatrix min_sigma2_state(const Observable& obs, double mean) {
    check_mean_range(obs, mean);
    const auto& d = obs.eigenvalues();
    const double tol = 1e-12 * eig_scale(d);

    double best = kInf;
    int bi = 0, bj = 0;
    double bt = 1.0;
    scan_support_vertices(d, mean, [&](double s2, int i, int j, double t) {
        if (s2 < best - tol * tol) {
            best = s2;
            bi = i;
            bj = j;
            bt = t;
        }
    });

    // Spread each support value's weight uniformly over its full
    // eigenspace; this is the residual maximum-entropy choice.
    std::array<double, 4> w{};
    auto spread = [&](int idx, double weight) {
        const double value = d[static_cast<std::size_t>(idx)];
        std::array<bool, 4> member{};
        int mult = 0;
        for (std::size_t k = 0; k < 4; ++k)
            if (std::abs(d[k] - value) <= tol) {
                member[k] = true;
                ++mult;
            }
        for (std::size_t k = 0; k < 4; ++k)
            if (member[k]) w[k] += weight / mult;
    };
    spread(bi, bt);
    if (bj != bi) spread(bj, 1.0 - bt);

    return state_from_spectrum(w, obs.eigenvectors());
}

double min_sigma2_oracle(const Observable& obs, double mean, int grid) {
    if (grid < 100) throw InvalidParams("min_sigma2_oracle: grid must be >= 100");
    check_mean_range(obs, mean);
    const auto& d = obs.eigenvalues();

    // Solve the two constraints for the pair of coordinates with the
    // largest eigenvalue gap (best conditioning); grid the other two.
    int r = 0, s = 1;
    double gap = -1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double g = std::abs(d[static_cast<std::size_t>(i)] -
                                      d[static_cast<std::size_t>(j)]);
            if (g > gap) {
                gap = g;
                r = i;
                s = j;
            }
        }
    if (gap <= 1e-12 * eig_scale(d)) {
        // All eigenvalues coincide; the constraint fixes everything.
        const double v = d[0];
        return v * v;
    }
    std::array<int, 2> free_idx{};
    for (int i = 0, k = 0; i < 4; ++i)
        if (i != r && i != s) free_idx[static_cast<std::size_t>(k++)] = i;

    const double dr = d[static_cast<std::size_t>(r)];
    const double ds = d[static_cast<std::size_t>(s)];
    const double d1 = d[static_cast<std::size_t>(free_idx[0])];
    const double d2 = d[static_cast<std::size_t>(free_idx[1])];
    const double inv_gap = 1.0 / (dr - ds);
    const double h = 1.0 / grid;
    const double feas = -1e-12;

    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        const double p1 = i * h;
        const double rem0 = 1.0 - p1;
        const double tgt0 = mean - d1 * p1;
        // For fixed p1 everything is affine in p2 = j*h:
        //   p_r = a0 + a1*p2, p_s = rem - p2 - p_r, val = v0 + v1*p2.
        const double a0 = (tgt0 - ds * rem0) * inv_gap;
        const double a1 = (-d2 + ds) * inv_gap;
        const double v0 = d1 * d1 * p1 + dr * dr * a0 + ds * ds * (rem0 - a0);
        const double v1 = d2 * d2 + dr * dr * a1 + ds * ds * (-1.0 - a1);
        const int jmax = grid - i;
        for (int j = 0; j <= jmax; ++j) {
            const double p2 = j * h;
            const double pr = a0 + a1 * p2;
            if (pr < feas) continue;
            const double ps = rem0 - p2 - pr;
            if (ps < feas) continue;
            const double val = v0 + v1 * p2;
            if (val < best) best = val;
        }
    }
    return best;
}

} // namespace qinfer
