#include <doctest.h>

#include <cmath>

#include "qinfer/entanglement.hpp"
#include "qinfer/qcore.hpp"
#include "qinfer/schemes.hpp"
#include "support.hpp"

using namespace qinfer;

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kBellMax = 2.0 * kSqrt2;

DensityMatrix maximally_mixed() {
    return DensityMatrix(0.25 * ComplexMatrix4::identity());
}
} // namespace

TEST_CASE("bell basis amplitudes and orthonormality") {
    const auto bell = bell_basis();

    // |Phi+> = (|00> + |11>)/sqrt(2)
    CHECK(bell[kPhiPlus][0].real() == doctest::Approx(1.0 / kSqrt2).epsilon(1e-15));
    CHECK(bell[kPhiPlus][1] == cxd(0.0));
    CHECK(bell[kPhiPlus][2] == cxd(0.0));
    CHECK(bell[kPhiPlus][3].real() == doctest::Approx(1.0 / kSqrt2).epsilon(1e-15));

    // <Phi+|Psi-> = 0 and all other pairs
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            CHECK(std::abs(inner(bell[i], bell[j]) - want) < 1e-15);
        }

    // completeness: sum of projectors is the identity
    ComplexMatrix4 sum;
    for (const auto& v : bell) sum = sum + projector(v);
    CHECK(sum.max_abs_diff(ComplexMatrix4::identity()) < 1e-15);
}

TEST_CASE("eigh on the identity") {
    const EigenSystem es = eigh(ComplexMatrix4::identity());
    for (double lam : es.eigenvalues) CHECK(lam == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(es.reconstruct().max_abs_diff(ComplexMatrix4::identity()) < 1e-12);
}

TEST_CASE("eigh on the Bell operator") {
    const EigenSystem es = eigh(schemes::bell_operator().matrix());
    CHECK(es.eigenvalues[0] == doctest::Approx(kBellMax).epsilon(1e-13));
    CHECK(std::abs(es.eigenvalues[1]) < 1e-12);
    CHECK(std::abs(es.eigenvalues[2]) < 1e-12);
    CHECK(es.eigenvalues[3] == doctest::Approx(-kBellMax).epsilon(1e-13));
}

TEST_CASE("eigh sorts a diagonal matrix") {
    const EigenSystem es = eigh(ComplexMatrix4::diagonal(3.0, 1.0, 4.0, 1.0));
    CHECK(es.eigenvalues[0] == doctest::Approx(4.0));
    CHECK(es.eigenvalues[1] == doctest::Approx(3.0));
    CHECK(es.eigenvalues[2] == doctest::Approx(1.0));
    CHECK(es.eigenvalues[3] == doctest::Approx(1.0));
}

TEST_CASE("eigh rejects non-Hermitian input") {
    ComplexMatrix4 m = ComplexMatrix4::identity();
    m(0, 1) = cxd(0.0, 1e-3); // not mirrored
    CHECK_THROWS_AS(eigh(m), NotHermitian);
}

TEST_CASE("eigh reconstruction and orthonormality on random Hermitians") {
    testsupport::Rng rng(20240901);
    for (int trial = 0; trial < 1000; ++trial) {
        const ComplexMatrix4 m = testsupport::random_hermitian(rng);
        const EigenSystem es = eigh(m);
        CHECK(es.reconstruct().max_abs_diff(m) < 1e-10);
        for (int i = 0; i < 4; ++i) {
            CHECK(es.eigenvalues[i] <= (i ? es.eigenvalues[i - 1] : 1e300));
            for (int j = 0; j < 4; ++j) {
                const double want = i == j ? 1.0 : 0.0;
                CHECK(std::abs(inner(es.eigenvectors[i], es.eigenvectors[j]) - want) <
                      1e-10);
            }
        }
    }
}

TEST_CASE("psd_sqrt basics") {
    SUBCASE("maximally mixed") {
        const ComplexMatrix4 r = psd_sqrt(maximally_mixed());
        CHECK(r.max_abs_diff(0.5 * ComplexMatrix4::identity()) < 1e-12);
    }
    SUBCASE("pure state projector is its own root") {
        const auto bell = bell_basis();
        const DensityMatrix rho(projector(bell[kPhiPlus]));
        const ComplexMatrix4 r = psd_sqrt(rho);
        CHECK(r.max_abs_diff(rho.matrix()) < 1e-12);
    }
    SUBCASE("diagonal case") {
        const DensityMatrix rho(ComplexMatrix4::diagonal(0.25, 0.25, 0.5, 0.0));
        const ComplexMatrix4 r = psd_sqrt(rho);
        const ComplexMatrix4 want =
            ComplexMatrix4::diagonal(0.5, 0.5, std::sqrt(0.5), 0.0);
        CHECK(r.max_abs_diff(want) < 1e-12);
    }
    SUBCASE("root squares back to the input on random states") {
        testsupport::Rng rng(77);
        for (int trial = 0; trial < 50; ++trial) {
            const DensityMatrix rho = testsupport::random_density(rng);
            const ComplexMatrix4 r = psd_sqrt(rho);
            CHECK((r * r).max_abs_diff(rho.matrix()) < 1e-10);
        }
    }
}

TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(maximally_mixed()) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-13));

    const auto bell = bell_basis();
    const DensityMatrix pure(projector(bell[kPsiMinus]));
    CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-12));

    const DensityMatrix half(ComplexMatrix4::diagonal(0.5, 0.5, 0.0, 0.0));
    CHECK(von_neumann_entropy(half, EntropyBase::two) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("expectation values against the Bell operator") {
    const ComplexMatrix4 b = schemes::bell_operator().matrix();
    CHECK(std::abs(expectation(maximally_mixed(), b)) < 1e-12);

    const auto bell = bell_basis();
    const DensityMatrix phi_plus(projector(bell[kPhiPlus]));
    CHECK(expectation(phi_plus, b) == doctest::Approx(kBellMax).epsilon(1e-13));

    testsupport::Rng rng(3);
    const DensityMatrix rho = testsupport::random_density(rng);
    CHECK(expectation(rho, ComplexMatrix4::identity()) ==
          doctest::Approx(1.0).epsilon(1e-13));

    // a non-Hermitian operator yields a complex trace
    const ComplexMatrix4 skew = cxd(0.0, 1.0) * ComplexMatrix4::identity();
    CHECK_THROWS_AS(expectation(rho, skew), NonRealExpectation);
}

TEST_CASE("density matrix validation rejects bad inputs") {
    ComplexMatrix4 traceless = ComplexMatrix4::diagonal(0.5, 0.5, 0.5, 0.0);
    CHECK_THROWS_AS(DensityMatrix{traceless}, InvalidDensityMatrix);

    ComplexMatrix4 negative = ComplexMatrix4::diagonal(1.2, -0.2, 0.0, 0.0);
    CHECK_THROWS_AS(DensityMatrix{negative}, InvalidDensityMatrix);
}

TEST_CASE("Bell operator squared identity") {
    const auto bell = bell_basis();
    const ComplexMatrix4 b = schemes::bell_operator().matrix();
    const ComplexMatrix4 b2 = b * b;

    const ComplexMatrix4 lhs1 =
        b2 - 16.0 * projector(bell[kPhiPlus]) + kBellMax * b;
    CHECK(lhs1.max_abs() < 1e-12);

    const ComplexMatrix4 lhs2 =
        b2 - 16.0 * projector(bell[kPsiMinus]) - kBellMax * b;
    CHECK(lhs2.max_abs() < 1e-12);
}

TEST_CASE("Bell uncertainty bound on random states") {
    const ComplexMatrix4 b = schemes::bell_operator().matrix();
    const ComplexMatrix4 b2 = b * b;
    testsupport::Rng rng(20240902);
    for (int trial = 0; trial < 1000; ++trial) {
        const DensityMatrix rho = testsupport::random_density(rng);
        const double mean = expectation(rho, b);
        const double second = expectation(rho, b2);
        CHECK(second >= kBellMax * std::abs(mean) - 1e-10);
    }
}
