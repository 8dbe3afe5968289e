#pragma once

// Fixed-size complex linear algebra for two-qubit operators.
//
// Basis convention used throughout: the product basis is ordered
// |00>, |01>, |10>, |11| (positions 0..3), the first index referring to
// the first subsystem. All matrices are stored row-major.

#include <array>
#include <cmath>
#include <complex>

namespace qinfer {

using cxd = std::complex<double>;

struct ComplexMatrix4;

struct StateVector4 {
    std::array<cxd, 4> amp{}; // product-basis amplitudes

    cxd& operator[](int i) { return amp[static_cast<std::size_t>(i)]; }
    const cxd& operator[](int i) const { return amp[static_cast<std::size_t>(i)]; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amp) s += std::norm(a);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }
};

// <u|v>
inline cxd inner(const StateVector4& u, const StateVector4& v) {
    cxd s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(u[i]) * v[i];
    return s;
}

struct ComplexMatrix4 {
    std::array<cxd, 16> e{}; // row-major

    cxd& operator()(int r, int c) { return e[static_cast<std::size_t>(4 * r + c)]; }
    const cxd& operator()(int r, int c) const {
        return e[static_cast<std::size_t>(4 * r + c)];
    }

    static ComplexMatrix4 zero() { return {}; }

    static ComplexMatrix4 identity() {
        ComplexMatrix4 m;
        for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix4 diagonal(double d0, double d1, double d2, double d3) {
        ComplexMatrix4 m;
        m(0, 0) = d0;
        m(1, 1) = d1;
        m(2, 2) = d2;
        m(3, 3) = d3;
        return m;
    }

    ComplexMatrix4 adjoint() const {
        ComplexMatrix4 m;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    ComplexMatrix4 conjugate() const {
        ComplexMatrix4 m;
        for (std::size_t i = 0; i < 16; ++i) m.e[i] = std::conj(e[i]);
        return m;
    }

    cxd trace() const { return e[0] + e[5] + e[10] + e[15]; }

    // largest entry modulus; the "entrywise infinity norm" used by
    // every tolerance in this toolkit
    double max_abs() const {
        double m = 0.0;
        for (const auto& x : e) m = std::max(m, std::abs(x));
        return m;
    }

    double max_abs_diff(const ComplexMatrix4& o) const {
        double m = 0.0;
        for (std::size_t i = 0; i < 16; ++i) m = std::max(m, std::abs(e[i] - o.e[i]));
        return m;
    }

    // max |M - M^dagger| over entries
    double hermiticity_defect() const {
        double m = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return m;
    }

    bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

    // (M + M^dagger)/2, removes rounding-level asymmetry
    ComplexMatrix4 hermitian_part() const {
        ComplexMatrix4 m;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                m(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
        return m;
    }
};

inline ComplexMatrix4 operator+(const ComplexMatrix4& a, const ComplexMatrix4& b) {
    ComplexMatrix4 m;
    for (std::size_t i = 0; i < 16; ++i) m.e[i] = a.e[i] + b.e[i];
    return m;
}

inline ComplexMatrix4 operator-(const ComplexMatrix4& a, const ComplexMatrix4& b) {
    ComplexMatrix4 m;
    for (std::size_t i = 0; i < 16; ++i) m.e[i] = a.e[i] - b.e[i];
    return m;
}

inline ComplexMatrix4 operator*(const ComplexMatrix4& a, const ComplexMatrix4& b) {
    ComplexMatrix4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            cxd s = 0.0;
            for (int k = 0; k < 4; ++k) s += a(r, k) * b(k, c);
            m(r, c) = s;
        }
    return m;
}

inline ComplexMatrix4 operator*(cxd s, const ComplexMatrix4& a) {
    ComplexMatrix4 m;
    for (std::size_t i = 0; i < 16; ++i) m.e[i] = s * a.e[i];
    return m;
}

inline ComplexMatrix4 operator*(const ComplexMatrix4& a, cxd s) { return s * a; }

inline ComplexMatrix4 operator*(double s, const ComplexMatrix4& a) {
    return cxd(s, 0.0) * a;
}

inline ComplexMatrix4 operator*(const ComplexMatrix4& a, double s) {
    return cxd(s, 0.0) * a;
}

inline StateVector4 apply(const ComplexMatrix4& m, const StateVector4& v) {
    StateVector4 w;
    for (int r = 0; r < 4; ++r) {
        cxd s = 0.0;
        for (int c = 0; c < 4; ++c) s += m(r, c) * v[c];
        w[r] = s;
    }
    return w;
}

// |u><v|
inline ComplexMatrix4 outer(const StateVector4& u, const StateVector4& v) {
    ComplexMatrix4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = u[r] * std::conj(v[c]);
    return m;
}

// |u><u|
inline ComplexMatrix4 projector(const StateVector4& u) { return outer(u, u); }

// Kronecker product of two single-qubit operators (row-major 2x2),
// first factor acting on the first subsystem.
inline ComplexMatrix4 kron(const std::array<cxd, 4>& a, const std::array<cxd, 4>& b) {
    ComplexMatrix4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    m(2 * i + k, 2 * j + l) =
                        a[static_cast<std::size_t>(2 * i + j)] *
                        b[static_cast<std::size_t>(2 * k + l)];
    return m;
}

inline double commutator_max_abs(const ComplexMatrix4& a, const ComplexMatrix4& b) {
    return (a * b - b * a).max_abs();
}

} // namespace qinfer
