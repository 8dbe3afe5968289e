#pragma once

// Constrained maximum-entropy inference over a single observable:
// Gibbs-form solves for a target mean (and optionally a target second
// moment), plus the exact and brute-force minimizers of the second
// moment used by the minimum-sigma^2 scheme.

#include <optional>
#include <string>

#include "qinfer/qcore.hpp"

namespace qinfer {

/// A Hermitian observable given by its spectrum: four eigenvalues on
/// four orthonormal eigenvectors. Eigenvalues may repeat and are kept
/// in the caller's order.
class Observable {
public:
    Observable(const std::array<double, 4>& eigenvalues,
               const std::array<StateVector4, 4>& eigenvectors,
               std::string label);

    const std::array<double, 4>& eigenvalues() const { return eigenvalues_; }
    const std::array<StateVector4, 4>& eigenvectors() const { return eigenvectors_; }
    const std::string& label() const { return label_; }

    double min_eigenvalue() const;
    double max_eigenvalue() const;

    ComplexMatrix4 matrix() const;  // sum_i d_i |i><i|
    ComplexMatrix4 squared() const; // sum_i d_i^2 |i><i|

private:
    std::array<double, 4> eigenvalues_;
    std::array<StateVector4, 4> eigenvectors_;
    std::string label_;
};

/// Output of a maximum-entropy solve. beta multiplies the observable,
/// gamma (present only for two-constraint solves) its square. On a
/// boundary solve the multipliers are reported as the diverging limits
/// (+/- infinity).
struct InferenceResult {
    DensityMatrix rho;
    double beta = 0.0;
    std::optional<double> gamma;
    double achieved_mean = 0.0;
    double achieved_sigma2 = 0.0; // second moment <O^2>
    double log_partition = 0.0;
};

/// Gibbs state (1/Z) exp(-beta*O) matching <O> = mean. A mean equal to
/// an extreme eigenvalue returns the uniform mixture on that
/// eigenvalue's eigenspace (the infinite-beta limit).
InferenceResult maxent_single(const Observable& obs, double mean,
                              double residual_tol = 1e-12);

/// Gibbs state (1/Z) exp(-beta*O - gamma*O^2) matching <O> = mean and
/// <O^2> = sigma2. A sigma2 on the minimum boundary returns the limit
/// state from min_sigma2_state.
InferenceResult maxent_double(const Observable& obs, double mean, double sigma2,
                              double residual_tol = 1e-12);

/// Exact minimum of <O^2> over states with <O> = mean. The minimizer is
/// supported on at most two eigenvalues bracketing the mean, so the
/// minimum is found by scanning eigenvalue pairs.
double min_sigma2(const Observable& obs, double mean);

/// Largest attainable <O^2> for the given mean (feasibility ceiling).
double max_sigma2(const Observable& obs, double mean);

/// The maximum-entropy state among the minimizers of <O^2> at the given
/// mean: the optimal two-point weights, spread uniformly within each
/// tied eigenvalue's eigenspace.
DensityMatrix min_sigma2_state(const Observable& obs, double mean);

/// Brute-force check of min_sigma2: scans probability vectors whose two
/// free coordinates run over a grid of the given resolution while the
/// remaining two are solved exactly from the constraints. Upper-bounds
/// min_sigma2 and converges to it as the grid grows.
double min_sigma2_oracle(const Observable& obs, double mean, int grid);

} // namespace qinfer
