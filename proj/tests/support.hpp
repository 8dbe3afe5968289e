#pragma once

// Shared fixtures for the test suites: fixed-seed random ensembles of
// states, Hermitian matrices, local unitaries and simplex weights.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "qinfer/maxent.hpp"
#include "qinfer/qcore.hpp"

namespace qinfer::testsupport {

using Rng = std::mt19937_64;

inline cxd gaussian(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

// Full-rank random state: G G^dagger / Tr(G G^dagger) with G a matrix of
// standard complex Gaussians.
inline DensityMatrix random_density(Rng& rng) {
    ComplexMatrix4 g;
    for (auto& e : g.e) e = gaussian(rng);
    ComplexMatrix4 m = g * g.adjoint();
    m = (1.0 / m.trace().real()) * m;
    return DensityMatrix(m.hermitian_part());
}

inline ComplexMatrix4 random_hermitian(Rng& rng) {
    ComplexMatrix4 g;
    for (auto& e : g.e) e = gaussian(rng);
    return g.hermitian_part();
}

// Haar-ish random single-qubit unitary from three angles.
inline std::array<cxd, 4> random_su2(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double t = std::acos(std::sqrt(u(rng)));
    const double p1 = 2.0 * std::acos(-1.0) * u(rng);
    const double p2 = 2.0 * std::acos(-1.0) * u(rng);
    const cxd a = std::polar(std::cos(t), p1);
    const cxd b = std::polar(std::sin(t), p2);
    return {a, b, -std::conj(b), std::conj(a)};
}

inline std::array<double, 4> random_simplex(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<double, 4> w{};
    double sum = 0.0;
    for (auto& x : w) {
        x = -std::log(u(rng) + 1e-300);
        sum += x;
    }
    for (auto& x : w) x /= sum;
    return w;
}

// Random four-point spectrum with gaps of at least min_gap, on a random
// orthonormal eigenbasis.
inline Observable random_observable(Rng& rng, double min_gap = 0.2) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::array<double, 4> d{};
    for (bool ok = false; !ok;) {
        for (auto& x : d) x = u(rng);
        std::array<double, 4> s = d;
        std::sort(s.begin(), s.end());
        ok = true;
        for (int i = 0; i < 3; ++i)
            if (s[static_cast<std::size_t>(i + 1)] - s[static_cast<std::size_t>(i)] <
                min_gap)
                ok = false;
    }

    // Gram-Schmidt on Gaussian vectors for the eigenbasis.
    std::array<StateVector4, 4> basis{};
    for (int k = 0; k < 4; ++k) {
        StateVector4 v;
        for (int i = 0; i < 4; ++i) v[i] = gaussian(rng);
        for (int j = 0; j < k; ++j) {
            const cxd overlap = inner(basis[static_cast<std::size_t>(j)], v);
            for (int i = 0; i < 4; ++i)
                v[i] -= overlap * basis[static_cast<std::size_t>(j)][i];
        }
        const double nrm = v.norm();
        for (int i = 0; i < 4; ++i) v[i] /= nrm;
        basis[static_cast<std::size_t>(k)] = v;
    }
    return Observable(d, basis, "random");
}

// (U x V) rho (U x V)^dagger
inline DensityMatrix conjugate_local(const DensityMatrix& rho,
                                     const std::array<cxd, 4>& u,
                                     const std::array<cxd, 4>& v) {
    const ComplexMatrix4 uv = kron(u, v);
    return DensityMatrix((uv * rho.matrix() * uv.adjoint()).hermitian_part());
}

inline double frob_inner(const ComplexMatrix4& x, const ComplexMatrix4& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < 16; ++i) s += std::real(std::conj(x.e[i]) * y.e[i]);
    return s;
}

inline double op_norm(const ComplexMatrix4& h) {
    const EigenSystem es = eigh(h);
    return std::max(std::abs(es.eigenvalues.front()),
                    std::abs(es.eigenvalues.back()));
}

// Random Hermitian direction orthogonal (in the Frobenius sense) to
// every matrix in `constraints`; perturbing along it preserves all the
// corresponding expectation values exactly.
inline ComplexMatrix4 tangent_direction(
    Rng& rng, const std::vector<ComplexMatrix4>& constraints) {
    std::vector<ComplexMatrix4> basis;
    for (const auto& c : constraints) {
        ComplexMatrix4 b = c;
        for (const auto& e : basis) b = b - frob_inner(e, b) * e;
        const double nrm = std::sqrt(frob_inner(b, b));
        if (nrm > 1e-12) basis.push_back((1.0 / nrm) * b);
    }
    ComplexMatrix4 h = random_hermitian(rng);
    for (const auto& e : basis) h = h - frob_inner(e, h) * e;
    return h;
}

// A mean strictly inside the observable's spectrum.
inline double interior_mean(const Observable& obs, Rng& rng) {
    const auto u = random_simplex(rng);
    double mean = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        mean += (0.05 + 0.8 * u[i]) * obs.eigenvalues()[i];
    return mean;
}

} // namespace qinfer::testsupport
