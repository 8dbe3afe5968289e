#include "qinfer/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qinfer {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::string fmt_tol(const char* what, double value, double tol) {
    std::ostringstream os;
    os << what << " (defect " << value << ", tolerance " << tol << ")";
    return os.str();
}

} // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix4& m) : m_(m) {
    const double herm = m.hermiticity_defect();
    if (herm > kDensityHermTol)
        throw InvalidDensityMatrix(fmt_tol("density matrix not Hermitian", herm,
                                           kDensityHermTol));
    const double tr_err = std::abs(m.trace() - cxd(1.0, 0.0));
    if (tr_err > kDensityTraceTol)
        throw InvalidDensityMatrix(fmt_tol("density matrix trace != 1", tr_err,
                                           kDensityTraceTol));
    const EigenSystem es = eigh(m);
    const double min_eig = es.eigenvalues.back();
    if (min_eig < -kPsdSlack)
        throw InvalidDensityMatrix(fmt_tol("density matrix not PSD", min_eig,
                                           -kPsdSlack));
}

ComplexMatrix4 EigenSystem::reconstruct() const {
    ComplexMatrix4 m;
    for (int i = 0; i < 4; ++i)
        m = m + eigenvalues[static_cast<std::size_t>(i)] *
                    projector(eigenvectors[static_cast<std::size_t>(i)]);
    return m;
}

std::array<StateVector4, 4> bell_basis() {
    StateVector4 phi_minus, phi_plus, psi_minus, psi_plus;
    phi_minus[0] = -kInvSqrt2; // -|00>
    phi_minus[3] = kInvSqrt2;  // +|11>
    phi_plus[0] = kInvSqrt2;
    phi_plus[3] = kInvSqrt2;
    psi_minus[1] = -kInvSqrt2; // -|01>
    psi_minus[2] = kInvSqrt2;  // +|10>
    psi_plus[1] = kInvSqrt2;
    psi_plus[2] = kInvSqrt2;
    return {phi_minus, phi_plus, psi_minus, psi_plus};
}

EigenSystem eigh(const ComplexMatrix4& input) {
    const double herm = input.hermiticity_defect();
    if (herm > kHermitianTol)
        throw NotHermitian(fmt_tol("eigh: input not Hermitian", herm, kHermitianTol));

    // Work on the Hermitian average so rounding asymmetry cannot leak in.
    ComplexMatrix4 a = input.hermitian_part();
    ComplexMatrix4 v = ComplexMatrix4::identity();

    constexpr int kMaxSweeps = 100;
    constexpr double kOffTarget = 1e-13; // off-diagonal Frobenius norm

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += 2.0 * std::norm(a(p, q));
        if (std::sqrt(off) <= kOffTarget) break;

        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq <= 1e-15) continue;

                // Unitary 2x2 rotation zeroing a(p,q). With a(p,q) =
                // |a(p,q)| e^{i phi}, the rotation is
                //   U(p,p)=c, U(p,q)=-s e^{i phi},
                //   U(q,p)=s e^{-i phi}, U(q,q)=c,
                // and c = cos t, s = sin t with
                //   2t = atan2(2|a(p,q)|, a(p,p)-a(q,q)).
                const cxd phase = a(p, q) / apq;
                const double two_theta =
                    std::atan2(2.0 * apq, a(p, p).real() - a(q, q).real());
                const double c = std::cos(0.5 * two_theta);
                const double s = std::sin(0.5 * two_theta);

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double new_pp = app * c * c + 2.0 * apq * s * c + aqq * s * s;
                const double new_qq = app * s * s - 2.0 * apq * s * c + aqq * c * c;

                for (int r = 0; r < 4; ++r) {
                    if (r == p || r == q) continue;
                    const cxd arp = a(r, p);
                    const cxd arq = a(r, q);
                    a(r, p) = arp * c + arq * s * std::conj(phase);
                    a(r, q) = -arp * s * phase + arq * c;
                    a(p, r) = std::conj(a(r, p));
                    a(q, r) = std::conj(a(r, q));
                }
                a(p, p) = new_pp;
                a(q, q) = new_qq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (int r = 0; r < 4; ++r) {
                    const cxd vrp = v(r, p);
                    const cxd vrq = v(r, q);
                    v(r, p) = vrp * c + vrq * s * std::conj(phase);
                    v(r, q) = -vrp * s * phase + vrq * c;
                }
            }
        }
    }

    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&a](int i, int j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenSystem es;
    for (int k = 0; k < 4; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        es.eigenvalues[static_cast<std::size_t>(k)] = a(src, src).real();
        for (int r = 0; r < 4; ++r)
            es.eigenvectors[static_cast<std::size_t>(k)][r] = v(r, src);
    }
    return es;
}

ComplexMatrix4 psd_sqrt(const DensityMatrix& rho) {
    const EigenSystem es = eigh(rho.matrix());
    ComplexMatrix4 root;
    for (int i = 0; i < 4; ++i) {
        double lam = es.eigenvalues[static_cast<std::size_t>(i)];
        if (lam < -kPsdSlack)
            throw NotPSD(fmt_tol("psd_sqrt: negative eigenvalue", lam, -kPsdSlack));
        // Below the cutoff the square root would amplify solver noise;
        // zeroing costs at most kEntropyCutoff in R*R.
        if (lam < kEntropyCutoff) lam = 0.0;
        root = root + std::sqrt(lam) *
                          projector(es.eigenvectors[static_cast<std::size_t>(i)]);
    }
    return root;
}

double von_neumann_entropy(const DensityMatrix& rho, EntropyBase base) {
    const EigenSystem es = eigh(rho.matrix());
    double s = 0.0;
    for (double lam : es.eigenvalues) {
        if (lam < kEntropyCutoff) continue;
        s -= lam * std::log(lam);
    }
    if (base == EntropyBase::two) s /= std::log(2.0);
    return s;
}

double expectation(const DensityMatrix& rho, const ComplexMatrix4& m) {
    cxd tr = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) tr += rho(i, j) * m(j, i);
    if (std::abs(tr.imag()) > 1e-10)
        throw NonRealExpectation(fmt_tol("expectation value not real", tr.imag(),
                                         1e-10));
    return tr.real();
}

DensityMatrix bell_diagonal_state(const std::array<double, 4>& weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (w < -1e-12)
            throw InvalidDistribution("bell_diagonal_state: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidDistribution("bell_diagonal_state: weights do not sum to 1");

    const auto bell = bell_basis();
    ComplexMatrix4 m;
    for (int i = 0; i < 4; ++i) {
        const double w = std::max(0.0, weights[static_cast<std::size_t>(i)]);
        m = m + w * projector(bell[static_cast<std::size_t>(i)]);
    }
    // Renormalize away any clamping residue before validation.
    m = (1.0 / m.trace().real()) * m;
    return DensityMatrix(m);
}

DensityMatrix state_from_spectrum(const std::array<double, 4>& weights,
                                  const std::array<StateVector4, 4>& vectors) {
    ComplexMatrix4 m;
    for (int i = 0; i < 4; ++i)
        m = m + std::max(0.0, weights[static_cast<std::size_t>(i)]) *
                    projector(vectors[static_cast<std::size_t>(i)]);
    m = (1.0 / m.trace().real()) * m;
    return DensityMatrix(m);
}

} // namespace qinfer
