#include "qpovm/qmath.hpp"

#include <algorithm>
#include <numeric>

namespace qpovm {

BlochOperator bloch_sandwich(const BlochOperator& m, const BlochOperator& rho) {
    // For M = m0 + m.sigma, rho = r0 + r.sigma (both Hermitian):
    //   M rho M = [m0^2 r0 + 2 m0 (m.r) + r0 |m|^2]
    //           + [2 (m0 r0 + m.r) m + (m0^2 - |m|^2) r] . sigma
    // The cross-product terms cancel, so the result stays Hermitian.
    double m0 = m.c0, r0 = rho.c0;
    double mr = m.c.dot(rho.c);
    double mm = m.c.dot(m.c);
    double scalar = m0 * m0 * r0 + 2.0 * m0 * mr + r0 * mm;
    Vec3 vec = 2.0 * (m0 * r0 + mr) * m.c + (m0 * m0 - mm) * rho.c;
    return {scalar, vec};
}

BlochOperator bloch_sqrt_psd(const BlochOperator& a, double tol) {
    auto [lo, hi] = a.eigenvalues();
    if (lo < -tol) {
        throw Error("NotPositive", "square root of a non-PSD operator");
    }
    double slo = std::sqrt(std::max(lo, 0.0));
    double shi = std::sqrt(std::max(hi, 0.0));
    double r = a.c.norm();
    if (r < 1e-300) {
        return {shi, {}};  // multiple of the identity
    }
    double radial = 0.5 * (shi - slo) / r;
    return {0.5 * (shi + slo), a.c * radial};
}

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim != 2 && dim != 4) {
        throw Error("BadDimension", "only dimensions 2 and 4 are supported");
    }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) s += std::norm((*this)(i, j));
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_distance() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    if (dim_ != o.dim_) throw Error("DimensionMismatch", "matrix dimensions differ");
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = (*this)(i, j) + o(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    if (dim_ != o.dim_) throw Error("DimensionMismatch", "matrix dimensions differ");
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = (*this)(i, j) - o(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (dim_ != o.dim_) throw Error("DimensionMismatch", "matrix dimensions differ");
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < dim_; ++k) s += (*this)(i, k) * o(k, j);
            r(i, j) = s;
        }
    return r;
}

ComplexMatrix ComplexMatrix::operator*(Complex s) const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = (*this)(i, j) * s;
    return r;
}

ComplexMatrix to_dense(const BlochOperator& a) {
    ComplexMatrix m(2);
    m(0, 0) = Complex(a.c0 + a.c.z, 0.0);
    m(0, 1) = Complex(a.c.x, -a.c.y);
    m(1, 0) = Complex(a.c.x, a.c.y);
    m(1, 1) = Complex(a.c0 - a.c.z, 0.0);
    return m;
}

BlochOperator to_bloch(const ComplexMatrix& m) {
    if (m.dim() != 2) throw Error("BadDimension", "Bloch conversion requires a 2x2 matrix");
    if (!m.is_hermitian()) throw Error("NotHermitian", "Bloch conversion requires a Hermitian matrix");
    BlochOperator a;
    a.c0 = 0.5 * (m(0, 0).real() + m(1, 1).real());
    a.c.x = m(1, 0).real();
    a.c.y = m(1, 0).imag();
    a.c.z = 0.5 * (m(0, 0).real() - m(1, 1).real());
    return a;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw Error("BadDimension", "tensor product requires two 2x2 matrices");
    }
    ComplexMatrix r(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& m) {
    if (m.dim() != 4) throw Error("BadDimension", "partial trace requires a 4x4 matrix");
    ComplexMatrix r(2);
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r(k, l) = m(k, l) + m(2 + k, 2 + l);
    return r;
}

namespace {

// One Jacobi step: unitary J = identity except in the (p, q) plane, built so
// that J^dag A J has a zero (p, q) entry. A phase absorbs arg(A_pq), then a
// real rotation annihilates the remaining symmetric off-diagonal pair.
ComplexMatrix jacobi_rotation(const ComplexMatrix& a, int p, int q) {
    Complex apq = a(p, q);
    double g = std::abs(apq);
    Complex phase = apq / g;  // e^{i arg}
    double app = a(p, p).real();
    double aqq = a(q, q).real();
    double theta = 0.5 * std::atan2(2.0 * g, app - aqq);
    double c = std::cos(theta), s = std::sin(theta);
    ComplexMatrix j = ComplexMatrix::identity(a.dim());
    j(p, p) = c;
    j(p, q) = -s;
    j(q, p) = std::conj(phase) * s;
    j(q, q) = std::conj(phase) * c;
    return j;
}

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.dim(); ++p)
        for (int q = 0; q < a.dim(); ++q)
            if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition eig_hermitian_full(const ComplexMatrix& m) {
    if (!m.is_hermitian()) {
        throw Error("NotHermitian", "eigendecomposition requires a Hermitian matrix");
    }
    int d = m.dim();
    // fold residual asymmetry before iterating
    ComplexMatrix a = (m + m.adjoint()) * Complex(0.5, 0.0);
    ComplexMatrix v = ComplexMatrix::identity(d);

    double scale = std::max(1.0, a.frobenius_norm());
    for (int sweep = 0; sweep < 100 && offdiag_norm(a) > 1e-15 * scale; ++sweep) {
        for (int p = 0; p < d; ++p) {
            for (int q = p + 1; q < d; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                ComplexMatrix j = jacobi_rotation(a, p, q);
                a = j.adjoint() * a * j;
                v = v * j;
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int k) { return a(i, i).real() < a(k, k).real(); });

    EigenDecomposition out{std::vector<double>(static_cast<std::size_t>(d)), ComplexMatrix(d)};
    for (int col = 0; col < d; ++col) {
        out.values[static_cast<std::size_t>(col)] = a(order[static_cast<std::size_t>(col)],
                                                      order[static_cast<std::size_t>(col)])
                                                        .real();
        for (int row = 0; row < d; ++row) {
            out.vectors(row, col) = v(row, order[static_cast<std::size_t>(col)]);
        }
    }
    return out;
}

std::vector<double> eig_hermitian(const ComplexMatrix& m) {
    return eig_hermitian_full(m).values;
}

}  // namespace qpovm
