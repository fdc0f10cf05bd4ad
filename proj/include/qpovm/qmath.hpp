#pragma once

// Fixed-size linear algebra for qubit operators: real Bloch coefficients as
// the fast path for 2x2 Hermitian operators, dense complex 2x2/4x4 matrices
// as the general path and numerical cross-check. Only dimensions 2 and 4
// exist here.

#include <array>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "qpovm/error.hpp"

namespace qpovm {

using Complex = std::complex<double>;

// absolute tolerance on eigenvalues for positivity checks
inline constexpr double kPositivityTol = 1e-10;

// Hermiticity tolerance scales with the Frobenius norm (all quantities here are O(1)).
inline double hermiticity_tol(double frobenius_norm) {
    return 1e-10 * std::max(1.0, frobenius_norm);
}

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Unit vector in R^3; normalized on construction.
class UnitVector3 {
public:
    explicit UnitVector3(const Vec3& v) : v_(v) {
        double n = v.norm();
        if (!(n > 1e-14)) {
            throw Error("BadAxis", "cannot normalize a (near-)zero vector");
        }
        v_ = v * (1.0 / n);
    }

    const Vec3& vec() const { return v_; }
    double dot(const UnitVector3& o) const { return v_.dot(o.v_); }

private:
    Vec3 v_;
};

// Hermitian qubit operator A = c0*I + c.sigma; Hermiticity is structural.
struct BlochOperator {
    double c0 = 0.0;
    Vec3 c;

    static BlochOperator identity() { return {1.0, {}}; }
    // c.sigma for a traceless operator along `axis`
    static BlochOperator pauli(const Vec3& axis) { return {0.0, axis}; }

    double trace() const { return 2.0 * c0; }

    // exact spectrum {c0 - |c|, c0 + |c|}
    std::pair<double, double> eigenvalues() const {
        double r = c.norm();
        return {c0 - r, c0 + r};
    }
    double min_eigenvalue() const { return c0 - c.norm(); }

    // spectral norm |c0| + |c| (exact for this representation)
    double spectral_norm() const { return std::abs(c0) + c.norm(); }

    bool is_psd(double tol = kPositivityTol) const { return min_eigenvalue() >= -tol; }

    BlochOperator operator+(const BlochOperator& o) const { return {c0 + o.c0, c + o.c}; }
    BlochOperator operator-(const BlochOperator& o) const { return {c0 - o.c0, c - o.c}; }
    BlochOperator operator*(double s) const { return {c0 * s, c * s}; }
};

inline BlochOperator operator*(double s, const BlochOperator& a) { return a * s; }

// Tr[AB] = 2(a0*b0 + a.b); exactly real for Hermitian inputs.
inline double bloch_trace_product(const BlochOperator& a, const BlochOperator& b) {
    return 2.0 * (a.c0 * b.c0 + a.c.dot(b.c));
}

// Hermitian conjugation M rho M for Hermitian M (closed form in Bloch coefficients).
BlochOperator bloch_sandwich(const BlochOperator& m, const BlochOperator& rho);

// Positive square root of a PSD Bloch operator; eigenvalues in [-tol, 0) clamp to 0.
BlochOperator bloch_sqrt_psd(const BlochOperator& a, double tol = kPositivityTol);

// Dense complex matrix of dimension 2 or 4, row-major.
class ComplexMatrix {
public:
    explicit ComplexMatrix(int dim);

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }

    Complex& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * dim_ + c]; }
    const Complex& operator()(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * dim_ + c];
    }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    // ||M - M^dag||_F
    double hermiticity_distance() const;
    bool is_hermitian() const { return hermiticity_distance() <= hermiticity_tol(frobenius_norm()); }

    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator*(Complex s) const;

private:
    int dim_;
    std::array<Complex, 16> data_{};
};

ComplexMatrix to_dense(const BlochOperator& a);
// Inverse of to_dense; requires a Hermitian 2x2 input (throws NotHermitian).
BlochOperator to_bloch(const ComplexMatrix& m);

// Kronecker product of two 2x2 matrices, first factor = subsystem A.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out the first subsystem of a 4x4 matrix.
ComplexMatrix partial_trace_first(const ComplexMatrix& m);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns, matching values
};

// Cyclic Jacobi diagonalization of a Hermitian matrix (dim 2 or 4).
// Throws NotHermitian when the conjugate-transpose distance exceeds tolerance.
EigenDecomposition eig_hermitian_full(const ComplexMatrix& m);
std::vector<double> eig_hermitian(const ComplexMatrix& m);

}  // namespace qpovm
