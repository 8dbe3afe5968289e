#pragma once

// Core two-qubit state machinery: validated density matrices, the Bell
// basis, a complex Hermitian eigensolver and the handful of spectral
// functions the inference schemes are built from.

#include <array>
#include <string>

#include "qinfer/errors.hpp"
#include "qinfer/matrix4.hpp"

namespace qinfer {

// Tolerances shared across the toolkit.
inline constexpr double kHermitianTol = 1e-10;  // eigh input precondition
inline constexpr double kDensityHermTol = 1e-12;
inline constexpr double kDensityTraceTol = 1e-12;
inline constexpr double kPsdSlack = 1e-10;      // eigenvalues in [-slack, 0] count as 0
inline constexpr double kEntropyCutoff = 1e-14; // eigenvalues below this contribute 0

/// A two-qubit state: Hermitian, unit-trace, positive semidefinite.
/// Validation happens once at construction; instances are immutable.
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMatrix4& m);

    const ComplexMatrix4& matrix() const { return m_; }
    const cxd& operator()(int r, int c) const { return m_(r, c); }

private:
    ComplexMatrix4 m_;
};

/// Spectral decomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending; eigenvectors are orthonormal and paired by index.
struct EigenSystem {
    std::array<double, 4> eigenvalues{};
    std::array<StateVector4, 4> eigenvectors{};

    ComplexMatrix4 reconstruct() const;
};

// Fixed order of the Bell vectors returned by bell_basis().
enum BellIndex : int {
    kPhiMinus = 0, // (|11> - |00>)/sqrt(2)
    kPhiPlus = 1,  // (|11> + |00>)/sqrt(2)
    kPsiMinus = 2, // (|10> - |01>)/sqrt(2)
    kPsiPlus = 3,  // (|10> + |01>)/sqrt(2)
};

/// The four Bell vectors in the order (Phi-, Phi+, Psi-, Psi+), with the
/// global signs fixed as documented at BellIndex.
std::array<StateVector4, 4> bell_basis();

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws NotHermitian when the input's Hermiticity defect
/// exceeds kHermitianTol.
EigenSystem eigh(const ComplexMatrix4& m);

/// Hermitian PSD square root R with R*R == rho. Eigenvalues within
/// kPsdSlack below zero are clamped; anything lower throws NotPSD.
ComplexMatrix4 psd_sqrt(const DensityMatrix& rho);

enum class EntropyBase { natural, two };

/// von Neumann entropy -Tr(rho log rho), in nats or bits.
double von_neumann_entropy(const DensityMatrix& rho,
                           EntropyBase base = EntropyBase::natural);

/// Tr(rho*m) for Hermitian m; throws NonRealExpectation if the trace
/// picks up an imaginary part above 1e-10.
double expectation(const DensityMatrix& rho, const ComplexMatrix4& m);

/// Mixture of Bell projectors with the given weights, ordered as
/// bell_basis(). Weights must be nonnegative and sum to one.
DensityMatrix bell_diagonal_state(const std::array<double, 4>& weights);

/// State with the given weights on the given orthonormal vectors.
DensityMatrix state_from_spectrum(const std::array<double, 4>& weights,
                                  const std::array<StateVector4, 4>& vectors);

} // namespace qinfer
