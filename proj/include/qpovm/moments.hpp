#pragma once

// Moment-matrix machinery for the chained N-term pairwise correlation
// inequalities: the 4x4 moment matrices, their closed-form eigenvalues, the
// four chained left-hand sides obtained from eigenvalue sums, and the
// classical/quantum/attenuated bounds.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qpovm/qmath.hpp"
#include "qpovm/rng.hpp"

namespace qpovm {

// largest N for exact enumeration of joint distributions over {-1, +1}^N
inline constexpr int kMaxOracleVariables = 20;

// The pairwise correlations the chained inequalities consume: the first row
// <X_1 X_k> for k = 2..N and the adjacent pairs <X_k X_k+1> for k = 1..N-1.
class PairCorrelations {
public:
    PairCorrelations(int n, std::vector<double> first_row, std::vector<double> adjacent);

    // f(k, l) with k < l must return <X_k X_l>; called once per needed pair.
    // The (1, 2) pair appears in both arrays and is evaluated once.
    template <typename PairFn>
    static PairCorrelations from_pair_function(int n, PairFn&& f) {
        std::vector<double> first_row, adjacent;
        first_row.reserve(static_cast<std::size_t>(n - 1));
        adjacent.reserve(static_cast<std::size_t>(n - 1));
        for (int k = 2; k <= n; ++k) first_row.push_back(f(1, k));
        adjacent.push_back(first_row.front());
        for (int k = 2; k <= n - 1; ++k) adjacent.push_back(f(k, k + 1));
        return PairCorrelations(n, std::move(first_row), std::move(adjacent));
    }

    // sequential unsharp-sharp values <X_k X_l> = eta cos((l - k) pi / N)
    static PairCorrelations sequential_quantum(int n, double eta);

    int n() const { return n_; }
    double first_row(int k) const;  // <X_1 X_k>, k = 2..N
    double adjacent(int k) const;   // <X_k X_k+1>, k = 1..N-1
    double last() const { return first_row(n_); }

private:
    int n_;
    std::vector<double> first_row_;
    std::vector<double> adjacent_;
};

// 4x4 moment matrix M_k built from <X_1 X_k>, <X_k X_k+1>, <X_1 X_k+1>.
class MomentMatrix {
public:
    MomentMatrix(int k, double c_1k, double c_kk1, double c_1k1);

    static MomentMatrix at(const PairCorrelations& corr, int k);  // k = 2..N-1

    int k() const { return k_; }
    double c_1k() const { return c_1k_; }
    double c_kk1() const { return c_kk1_; }
    double c_1k1() const { return c_1k1_; }

    // the four closed-form eigenvalues 1 +- c_1k +- c_kk1 +- c_1k1, in the
    // sign patterns (+,-,-), (-,+,-), (-,-,+), (+,+,+)
    std::array<double, 4> eigenvalues() const;

    // dense real-symmetric form, for the numerical cross-check
    ComplexMatrix dense() const;

private:
    int k_;
    double c_1k_, c_kk1_, c_1k1_;
};

std::array<double, 4> moment_eigenvalues(const MomentMatrix& m);

// Left-hand side of chained inequality `which` in 1..4, defined through the
// eigenvalue sums: lhs = (N - 2) - sum_{k=2..N-1} lambda_which^(k), so that
// lhs <= N - 2 is exactly sum_k lambda_which^(k) >= 0.
double chained_lhs(const PairCorrelations& corr, int which);

double classical_bound(int n);   // N - 2
double quantum_bound(int n);     // N cos(pi / N)
double attenuated_bound(int n);  // eta_opt_equatorial(N) * N cos(pi / N)

struct ChainedReport {
    int n = 0;
    std::array<double, 4> lhs{};
    double classical = 0.0;
    double quantum = 0.0;
    double attenuated = 0.0;
    std::array<bool, 4> violates_classical{};
};

ChainedReport evaluate_chained(const PairCorrelations& corr);

// -- classical oracle ---------------------------------------------------
// Brute-force checks that correlations admitting a joint distribution never
// violate the chained inequalities.

// random weights over the 2^n atoms, normalized to a distribution
std::vector<double> random_joint_distribution(int n, SplitMix64& rng);

// exact pairwise correlations of a distribution over {-1, +1}^n;
// sign strings are index-encoded as in povm.hpp (axis 1 = most significant bit)
PairCorrelations correlations_from_distribution(int n, std::span<const double> probabilities);

// Draws `trials` sign strings from a seeded random distribution and estimates
// the correlations; trials == 0 evaluates the same distribution exactly.
PairCorrelations sample_classical_correlations(int n, std::uint64_t trials, std::uint64_t seed);

// Same sampling estimate for a caller-supplied distribution.
PairCorrelations sample_classical_correlations(int n, std::span<const double> probabilities,
                                               std::uint64_t trials, std::uint64_t seed);

}  // namespace qpovm
