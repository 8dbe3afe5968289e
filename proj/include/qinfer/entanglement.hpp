#pragma once

// Entanglement verdicts for two-qubit states: concurrence and
// entanglement of formation via the spin-flip construction, and the
// partial-transpose separability test (necessary and sufficient at 2x2).

#include "qinfer/qcore.hpp"

namespace qinfer {

// PT eigenvalues within this slack of zero count as nonnegative;
// matches the PSD slack used by DensityMatrix.
inline constexpr double kSeparabilityTol = 1e-10;

/// Everything the schemes need to know about one state's entanglement.
struct EntanglementReport {
    double concurrence = 0.0;       // in [0, 1]
    double eof = 0.0;               // entanglement of formation, bits, in [0, 1]
    double min_pt_eigenvalue = 0.0; // smallest partial-transpose eigenvalue
    bool separable = false;
};

/// (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y), conjugation taken
/// entrywise in the product basis. The result is again a valid state.
ComplexMatrix4 spin_flip(const DensityMatrix& rho);

/// Wootters concurrence: max(0, l1 - l2 - l3 - l4) with l_i the
/// descending square roots of the spectrum of rho * spin_flip(rho),
/// computed through the Hermitian surrogate sqrt(rho) * rho~ * sqrt(rho).
double concurrence(const DensityMatrix& rho);

/// Binary entropy of (1 + sqrt(1 - C^2))/2 in bits, with h(0)=h(1)=0.
double entanglement_of_formation(const DensityMatrix& rho);

/// Transpose of the first subsystem's indices: PT[m u, n v] = rho[n u, m v].
ComplexMatrix4 partial_transpose(const DensityMatrix& rho);

/// Smallest eigenvalue of the partial transpose.
double min_pt_eigenvalue(const DensityMatrix& rho);

/// True iff the partial transpose has no eigenvalue below -kSeparabilityTol.
bool is_separable(const DensityMatrix& rho);

/// Shortcut for Bell-diagonal states: separable iff no weight exceeds 1/2.
/// Weights must be a probability vector.
bool bell_diagonal_separable(const std::array<double, 4>& weights);

/// Full report: concurrence, EoF, PT spectrum floor and the verdict.
EntanglementReport analyze(const DensityMatrix& rho);

} // namespace qinfer
