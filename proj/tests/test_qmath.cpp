#include <doctest.h>

#include <cmath>

#include "qpovm/qmath.hpp"
#include "test_support.hpp"

using namespace qpovm;
using qpovm::testing::random_bloch;
using qpovm::testing::random_direction;
using qpovm::testing::random_hermitian;
using qpovm::testing::random_state;

namespace {

const double kPi = std::acos(-1.0);

BlochOperator equatorial_projector(double theta, int outcome) {
    return {0.5, Vec3{std::cos(theta), std::sin(theta), 0.0} * (0.5 * outcome)};
}

double dense_trace_product(const BlochOperator& a, const BlochOperator& b) {
    return (to_dense(a) * to_dense(b)).trace().real();
}

}  // namespace

TEST_SUITE_BEGIN("qmath");

TEST_CASE("bloch trace product reproduces known probabilities") {
    BlochOperator mixed{0.5, {}};
    BlochOperator effect_half{0.5, {}};
    CHECK(bloch_trace_product(mixed, effect_half) == doctest::Approx(0.5).epsilon(1e-14));

    BlochOperator proj = equatorial_projector(0.3, +1);
    CHECK(bloch_trace_product(proj, proj) == doctest::Approx(1.0).epsilon(1e-14));

    // <(1 + sx)/2, (1 + 0.6 sx)/2> computed independently with dense matrices
    BlochOperator a{0.5, {0.5, 0, 0}};
    BlochOperator b{0.5, {0.3, 0, 0}};
    CHECK(dense_trace_product(a, b) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(bloch_trace_product(a, b) == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("bloch trace product agrees with the dense route on random pairs") {
    SplitMix64 rng(11);
    for (int i = 0; i < 300; ++i) {
        BlochOperator a = random_bloch(rng);
        BlochOperator b = random_bloch(rng);
        CHECK(std::abs(bloch_trace_product(a, b) - dense_trace_product(a, b)) <= 1e-12);
    }
}

TEST_CASE("hermitian eigenvalues: fixed spectra") {
    CHECK(eig_hermitian(ComplexMatrix::identity(2)) == std::vector<double>{1.0, 1.0});

    ComplexMatrix sx(2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    auto vals = eig_hermitian(sx);
    CHECK(vals[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(vals[1] == doctest::Approx(1.0).epsilon(1e-14));

    // (1 + 0.7 s_theta)/2 at theta = pi/3 has spectrum {0.15, 0.85}
    BlochOperator op{0.5, Vec3{std::cos(kPi / 3), std::sin(kPi / 3), 0.0} * 0.35};
    auto dense_vals = eig_hermitian(to_dense(op));
    CHECK(dense_vals[0] == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(dense_vals[1] == doctest::Approx(0.85).epsilon(1e-12));
    auto [lo, hi] = op.eigenvalues();
    CHECK(lo == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(hi == doctest::Approx(0.85).epsilon(1e-14));
}

TEST_CASE("eigendecomposition satisfies the reconstruction contract") {
    SplitMix64 rng(12);
    for (int dim : {2, 4}) {
        for (int i = 0; i < 200; ++i) {
            ComplexMatrix m = random_hermitian(dim, rng);
            EigenDecomposition eig = eig_hermitian_full(m);
            ComplexMatrix lambda(dim);
            for (int d = 0; d < dim; ++d) lambda(d, d) = eig.values[static_cast<std::size_t>(d)];
            ComplexMatrix reconstructed = eig.vectors * lambda * eig.vectors.adjoint();
            CHECK((m - reconstructed).frobenius_norm() <= 1e-10 * std::max(1.0, m.frobenius_norm()));
            for (std::size_t d = 1; d < eig.values.size(); ++d) {
                CHECK(eig.values[d - 1] <= eig.values[d]);
            }
        }
    }
}

TEST_CASE("non-hermitian input is rejected") {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;  // missing the conjugate partner
    CHECK_THROWS_WITH_AS(eig_hermitian(m), doctest::Contains("Hermitian"), Error);
    try {
        eig_hermitian(m);
    } catch (const Error& e) {
        CHECK(e.code() == "NotHermitian");
    }
}

TEST_CASE("closed-form bloch eigenvalues match the dense oracle") {
    SplitMix64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        BlochOperator a = random_bloch(rng);
        auto vals = eig_hermitian(to_dense(a));
        auto [lo, hi] = a.eigenvalues();
        CHECK(std::abs(vals[0] - lo) <= 1e-10);
        CHECK(std::abs(vals[1] - hi) <= 1e-10);
    }
}

TEST_CASE("tensor product basics") {
    ComplexMatrix id2 = ComplexMatrix::identity(2);
    ComplexMatrix id4 = tensor(id2, id2);
    CHECK((id4 - ComplexMatrix::identity(4)).frobenius_norm() == 0.0);

    ComplexMatrix sz(2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    ComplexMatrix sz1 = tensor(sz, id2);
    const double expected[4] = {1, 1, -1, -1};
    for (int i = 0; i < 4; ++i) CHECK(sz1(i, i).real() == expected[i]);

    BlochOperator px_plus{0.5, {0.5, 0, 0}};
    BlochOperator px_minus{0.5, {-0.5, 0, 0}};
    ComplexMatrix proj = tensor(to_dense(px_plus), to_dense(px_minus));
    CHECK(proj.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
    auto vals = eig_hermitian(proj);
    CHECK(std::abs(vals[0]) <= 1e-12);
    CHECK(std::abs(vals[2]) <= 1e-12);
    CHECK(vals[3] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tensor trace multiplicativity") {
    SplitMix64 rng(14);
    for (int i = 0; i < 200; ++i) {
        ComplexMatrix a = random_hermitian(2, rng);
        ComplexMatrix b = random_hermitian(2, rng);
        Complex lhs = tensor(a, b).trace();
        Complex rhs = a.trace() * b.trace();
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("partial trace of the singlet is maximally mixed") {
    const double s = 1.0 / std::sqrt(2.0);
    const double amps[4] = {0.0, s, -s, 0.0};
    ComplexMatrix singlet(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) singlet(i, j) = amps[i] * amps[j];

    ComplexMatrix reduced = partial_trace_first(singlet);
    CHECK(std::abs(reduced(0, 0) - Complex(0.5)) <= 1e-14);
    CHECK(std::abs(reduced(1, 1) - Complex(0.5)) <= 1e-14);
    CHECK(std::abs(reduced(0, 1)) <= 1e-14);

    // measuring the projector on one side leaves the spin-flipped projector
    // on the other, with probability 1/2
    for (double theta : {0.0, kPi / 5, kPi / 2, 2.1}) {
        for (int a : {+1, -1}) {
            BlochOperator proj = equatorial_projector(theta, a);
            ComplexMatrix projected = tensor(to_dense(proj), ComplexMatrix::identity(2)) * singlet;
            ComplexMatrix bob = partial_trace_first(projected);
            double p = bob.trace().real();
            CHECK(p == doctest::Approx(0.5).epsilon(1e-13));
            BlochOperator normalized = to_bloch(bob * Complex(1.0 / p, 0.0));
            BlochOperator flipped = equatorial_projector(theta, -a);
            CHECK((normalized - flipped).spectral_norm() <= 1e-12);
        }
    }
}

TEST_CASE("partial trace factorizes product operators") {
    SplitMix64 rng(15);
    for (int i = 0; i < 200; ++i) {
        ComplexMatrix a = random_hermitian(2, rng);
        ComplexMatrix b = random_hermitian(2, rng);
        ComplexMatrix reduced = partial_trace_first(tensor(a, b));
        ComplexMatrix expected = b * a.trace();
        CHECK((reduced - expected).frobenius_norm() <= 1e-12);
        CHECK(std::abs(partial_trace_first(tensor(a, b)).trace() - tensor(a, b).trace()) <= 1e-12);
    }
}

TEST_CASE("bloch/dense conversion is a bijection") {
    SplitMix64 rng(16);
    for (int i = 0; i < 300; ++i) {
        BlochOperator a = random_bloch(rng);
        BlochOperator back = to_bloch(to_dense(a));
        CHECK((a - back).spectral_norm() <= 1e-13);
    }
}

TEST_CASE("hermitian sandwich matches the dense route") {
    SplitMix64 rng(17);
    for (int i = 0; i < 300; ++i) {
        BlochOperator m = random_bloch(rng);
        BlochOperator rho = random_state(rng);
        ComplexMatrix dense = to_dense(m) * to_dense(rho) * to_dense(m);
        BlochOperator fast = bloch_sandwich(m, rho);
        CHECK((to_dense(fast) - dense).frobenius_norm() <= 1e-12);
    }
}

TEST_CASE("psd square root squares back to the input") {
    SplitMix64 rng(18);
    for (int i = 0; i < 300; ++i) {
        double eta = rng.next_unit();
        BlochOperator effect{0.5, random_direction(rng) * (0.5 * eta)};
        BlochOperator root = bloch_sqrt_psd(effect);
        CHECK(root.is_psd(1e-14));
        // root . 1 . root = root^2
        BlochOperator squared = bloch_sandwich(root, BlochOperator::identity());
        CHECK((squared - effect).spectral_norm() <= 1e-12);
        ComplexMatrix dense_sq = to_dense(root) * to_dense(root);
        CHECK((dense_sq - to_dense(effect)).frobenius_norm() <= 1e-12);
    }
    CHECK_THROWS_AS(bloch_sqrt_psd(BlochOperator{0.1, {1, 0, 0}}), Error);
}

TEST_CASE("unit vectors normalize and reject zero input") {
    UnitVector3 u(Vec3{3, 0, 4});
    CHECK(u.vec().norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(u.vec().x == doctest::Approx(0.6).epsilon(1e-14));
    CHECK_THROWS_AS(UnitVector3(Vec3{0, 0, 0}), Error);
}

TEST_CASE("only dimensions 2 and 4 exist") {
    CHECK_THROWS_AS(ComplexMatrix(3), Error);
    CHECK_THROWS_AS(ComplexMatrix(1), Error);
}

TEST_SUITE_END();
