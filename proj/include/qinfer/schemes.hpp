#pragma once

// The three concrete inference scenarios the toolkit reproduces: the
// Bell-CHSH observable, the two-parameter observable "opA" (kappa,
// lambda) that is non-diagonal in the Bell basis, and the
// nondegenerate observable "opD" (alpha1, alpha2, theta). Each scheme
// provides its closed-form inferred states, its true-state family and
// its separability classifiers.

#include "qinfer/entanglement.hpp"
#include "qinfer/maxent.hpp"

namespace qinfer::schemes {

// ---------------------------------------------------------------------------
// Bell scheme

/// The Bell-CHSH operator sqrt(2)(sx x sx + sz x sz), spectrum
/// (2*sqrt(2), 0, 0, -2*sqrt(2)) on (Phi+, Phi-, Psi+, Psi-).
Observable bell_operator();

/// Standard MaxEnt state for a Bell mean b in [-2*sqrt(2), 2*sqrt(2)];
/// Bell-diagonal with closed-form quadratic weights.
DensityMatrix bell_maxent_state(double b);

/// Minimum-sigma^2 state for a Bell mean b. At b == 0 the b > 0 branch
/// limit is returned: equal weights on Psi+ and Phi-.
DensityMatrix bell_min_sigma2_state(double b);

/// True-state family for the Bell scheme: mixing weight alpha_t added
/// on Phi+ and Psi- on top of the minimum-sigma^2 skeleton; its Bell
/// mean is exactly b.
DensityMatrix bell_true_state(double b, double alpha_t);

// ---------------------------------------------------------------------------
// opA scheme

struct OpAParams {
    double kappa = 1.0;  // > 0
    double lambda = -1.0; // <= 0
    double a = 0.0;      // mean of opA, in [0, kappa]
    double alpha = 0.0;  // true-family weight, in [0, a/kappa]
};

/// Observable with eigenvalues (kappa, lambda, kappa, 0) on
/// ((|11>+|00>)/sqrt2, (|11>-|00>)/sqrt2, |01>, |10>). Requires
/// kappa >= 0 >= lambda.
Observable operator_a(double kappa, double lambda);

/// Minimum-sigma^2 state for opA: weight a/(2 kappa) on each of the two
/// kappa-eigenvectors and the rest on |10>. Independent of lambda.
DensityMatrix opa_min_sigma2_state(double kappa, double a);

/// Closed form of the one partial-transpose eigenvalue of
/// opa_min_sigma2_state that can turn negative; its root sits at
/// a/kappa = 8/9.
double opa_pt_eigenvalue(double a_over_kappa);

/// True-state family for opA (diagonal in the opA eigenbasis); its mean
/// is a and its second moment kappa*a.
DensityMatrix opa_true_state(const OpAParams& p);

/// Closed-form separability indicator of opa_true_state: separable iff
/// the returned Q >= 0.
double opa_separability_q(double a_over_kappa, double alpha);

/// Mean threshold (in a/kappa units) at which the standard MaxEnt state
/// for opA turns entangled, located by bisecting the partial-transpose
/// test. The argument is the ratio -(lambda/kappa) >= 0.
double opa_critical_mean(double neg_lambda_over_kappa);

enum class Region { I, II, AgreeSeparable, AgreeEntangled, Unphysical };

const char* region_label(Region r);

/// Separability verdicts for the true state, the minimum-sigma^2 state
/// and the standard MaxEnt state at one point of the (a, alpha) plane.
struct RegionVerdict {
    bool true_separable = false;
    bool ms_separable = false;
    bool me_separable = false;
    Region region = Region::Unphysical;
};

/// Three independent partial-transpose tests; region I means "true
/// separable but minimum-sigma^2 entangled", region II the reverse.
RegionVerdict classify_region(const OpAParams& p);

// ---------------------------------------------------------------------------
// opD scheme

struct OpDParams {
    double alpha1 = 2.0; // alpha2 > alpha1 > 1
    double alpha2 = 3.0;
    double theta = 0.0;  // radians; reduced to [0, pi/2] by symmetry
    double d = 0.0;      // mean of opD, in [0, alpha2]
};

/// Observable with eigenvalues (1, alpha1, alpha2, 0) on (Phi+, Phi-,
/// sin(theta)|10> + cos(theta)|01>, cos(theta)|10> - sin(theta)|01>).
/// theta outside [0, pi/2] is reduced by the local-unitary symmetry
/// theta -> pi - theta.
Observable operator_d(double alpha1, double alpha2, double theta);

/// Minimum-sigma^2 state for opD: piecewise two-point mixture over the
/// d-intervals [0,1], [1,alpha1], [alpha1,alpha2], continuous at the
/// breakpoints. The spectrum being nondegenerate, no entropy tie-break
/// is needed.
DensityMatrix opd_min_sigma2_state(const OpDParams& p);

/// Standard MaxEnt state for opD (delegates to maxent_single).
DensityMatrix opd_maxent_state(const OpDParams& p);

/// Rescale an observable with four distinct ascending eigenvalues to
/// the opD normal form with spectrum (0, 1, alpha1, alpha2); the
/// minimum-sigma^2 minimizer is invariant under this affine map.
Observable normalize_observable(const std::array<double, 4>& ascending_eigenvalues,
                                const std::array<StateVector4, 4>& eigenvectors);

} // namespace qinfer::schemes
