#include "qinfer/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace qinfer {

namespace {

// sigma_y x sigma_y in the product basis: antidiagonal (-1, 1, 1, -1).
ComplexMatrix4 spin_flip_operator() {
    ComplexMatrix4 m;
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
}

double binary_entropy_bits(double x) {
    double s = 0.0;
    if (x > 0.0) s -= x * std::log2(x);
    if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
    return s;
}

} // namespace

ComplexMatrix4 spin_flip(const DensityMatrix& rho) {
    const ComplexMatrix4 yy = spin_flip_operator();
    return yy * rho.matrix().conjugate() * yy;
}

double concurrence(const DensityMatrix& rho) {
    const ComplexMatrix4 root = psd_sqrt(rho);
    const ComplexMatrix4 flipped = spin_flip(rho);
    // sqrt(rho) * rho~ * sqrt(rho) shares its spectrum with rho * rho~
    // but is Hermitian PSD, so one safe eigensolve suffices.
    const ComplexMatrix4 surrogate = (root * flipped * root).hermitian_part();
    const EigenSystem es = eigh(surrogate);

    std::array<double, 4> lambda{};
    for (int i = 0; i < 4; ++i) {
        double mu = es.eigenvalues[static_cast<std::size_t>(i)];
        // the square root would amplify sub-resolution noise into ~1e-8
        if (mu < kEntropyCutoff) mu = 0.0;
        lambda[static_cast<std::size_t>(i)] = std::sqrt(mu);
    }
    // eigh sorts descending, so lambda is descending as well
    const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    return std::clamp(c, 0.0, 1.0);
}

double entanglement_of_formation(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
    return binary_entropy_bits(x);
}

ComplexMatrix4 partial_transpose(const DensityMatrix& rho) {
    ComplexMatrix4 pt;
    for (int m = 0; m < 2; ++m)
        for (int u = 0; u < 2; ++u)
            for (int n = 0; n < 2; ++n)
                for (int v = 0; v < 2; ++v)
                    pt(2 * m + u, 2 * n + v) = rho(2 * n + u, 2 * m + v);
    return pt;
}

double min_pt_eigenvalue(const DensityMatrix& rho) {
    const EigenSystem es = eigh(partial_transpose(rho));
    return es.eigenvalues.back();
}

bool is_separable(const DensityMatrix& rho) {
    return min_pt_eigenvalue(rho) >= -kSeparabilityTol;
}

bool bell_diagonal_separable(const std::array<double, 4>& weights) {
    double sum = 0.0;
    double max_w = 0.0;
    for (double w : weights) {
        if (w < -1e-12)
            throw InvalidDistribution("bell_diagonal_separable: negative weight");
        sum += w;
        max_w = std::max(max_w, w);
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidDistribution("bell_diagonal_separable: weights do not sum to 1");
    return max_w <= 0.5 + 1e-12;
}

EntanglementReport analyze(const DensityMatrix& rho) {
    EntanglementReport r;
    r.concurrence = concurrence(rho);
    const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - r.concurrence * r.concurrence)));
    r.eof = binary_entropy_bits(x);
    r.min_pt_eigenvalue = min_pt_eigenvalue(rho);
    r.separable = r.min_pt_eigenvalue >= -kSeparabilityTol;
    return r;
}

} // namespace qinfer
