#include "qpovm/moments.hpp"

#include <algorithm>
#include <cmath>

#include "qpovm/povm.hpp"

namespace qpovm {

namespace {

const double kPi = std::acos(-1.0);

void check_correlation(double value) {
    if (!(value >= -1.0 && value <= 1.0)) {
        throw Error("BadCorrelation", "pairwise correlations must lie in [-1, 1]");
    }
}

void check_chain_length(int n) {
    if (n < 3) throw Error("BadCount", "chained inequalities need N >= 3");
}

}  // namespace

PairCorrelations::PairCorrelations(int n, std::vector<double> first_row,
                                   std::vector<double> adjacent)
    : n_(n), first_row_(std::move(first_row)), adjacent_(std::move(adjacent)) {
    if (n < 2) throw Error("BadCount", "pair correlations need N >= 2");
    if (first_row_.size() != static_cast<std::size_t>(n - 1) ||
        adjacent_.size() != static_cast<std::size_t>(n - 1)) {
        throw Error("DimensionMismatch", "expected N-1 first-row and N-1 adjacent correlations");
    }
    for (double v : first_row_) check_correlation(v);
    for (double v : adjacent_) check_correlation(v);
    // <X_1 X_2> appears in both arrays and must be one number
    if (std::abs(first_row_.front() - adjacent_.front()) > 1e-12) {
        throw Error("BadCorrelation",
                    "the (1,2) entry differs between the first-row and adjacent arrays");
    }
}

PairCorrelations PairCorrelations::sequential_quantum(int n, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error("BadEta", "unsharpness parameter must lie in [0, 1]");
    }
    return from_pair_function(
        n, [&](int k, int l) { return eta * std::cos((l - k) * kPi / n); });
}

double PairCorrelations::first_row(int k) const {
    if (k < 2 || k > n_) throw Error("BadIndex", "first-row correlations cover k = 2..N");
    return first_row_[static_cast<std::size_t>(k - 2)];
}

double PairCorrelations::adjacent(int k) const {
    if (k < 1 || k > n_ - 1) throw Error("BadIndex", "adjacent correlations cover k = 1..N-1");
    return adjacent_[static_cast<std::size_t>(k - 1)];
}

MomentMatrix::MomentMatrix(int k, double c_1k, double c_kk1, double c_1k1)
    : k_(k), c_1k_(c_1k), c_kk1_(c_kk1), c_1k1_(c_1k1) {
    if (k < 2) throw Error("BadIndex", "moment matrices are indexed by k >= 2");
    check_correlation(c_1k);
    check_correlation(c_kk1);
    check_correlation(c_1k1);
}

MomentMatrix MomentMatrix::at(const PairCorrelations& corr, int k) {
    if (k < 2 || k > corr.n() - 1) {
        throw Error("BadIndex", "moment matrices exist for k = 2..N-1");
    }
    return MomentMatrix(k, corr.first_row(k), corr.adjacent(k), corr.first_row(k + 1));
}

std::array<double, 4> MomentMatrix::eigenvalues() const {
    return {
        1.0 + c_1k_ - c_kk1_ - c_1k1_,
        1.0 - c_1k_ + c_kk1_ - c_1k1_,
        1.0 - c_1k_ - c_kk1_ + c_1k1_,
        1.0 + c_1k_ + c_kk1_ + c_1k1_,
    };
}

ComplexMatrix MomentMatrix::dense() const {
    // row pattern of <xi_k xi_k^T> for xi_k = (1, a_1 a_k, a_k a_k+1, a_1 a_k+1)
    const double p = c_1k_, q = c_kk1_, r = c_1k1_;
    const double rows[4][4] = {
        {1, p, q, r},
        {p, 1, r, q},
        {q, r, 1, p},
        {r, q, p, 1},
    };
    ComplexMatrix m(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = rows[i][j];
    return m;
}

std::array<double, 4> moment_eigenvalues(const MomentMatrix& m) { return m.eigenvalues(); }

double chained_lhs(const PairCorrelations& corr, int which) {
    if (which < 1 || which > 4) throw Error("BadIndex", "chained inequalities are numbered 1..4");
    check_chain_length(corr.n());
    double sum = 0.0;
    for (int k = 2; k <= corr.n() - 1; ++k) {
        sum += MomentMatrix::at(corr, k).eigenvalues()[static_cast<std::size_t>(which - 1)];
    }
    return (corr.n() - 2) - sum;
}

double classical_bound(int n) {
    check_chain_length(n);
    return n - 2.0;
}

double quantum_bound(int n) {
    check_chain_length(n);
    return n * std::cos(kPi / n);
}

double attenuated_bound(int n) {
    check_chain_length(n);
    return eta_opt_equatorial(n) * quantum_bound(n);
}

ChainedReport evaluate_chained(const PairCorrelations& corr) {
    ChainedReport report;
    report.n = corr.n();
    report.classical = classical_bound(corr.n());
    report.quantum = quantum_bound(corr.n());
    report.attenuated = attenuated_bound(corr.n());
    for (int which = 1; which <= 4; ++which) {
        double lhs = chained_lhs(corr, which);
        report.lhs[static_cast<std::size_t>(which - 1)] = lhs;
        report.violates_classical[static_cast<std::size_t>(which - 1)] =
            lhs > report.classical + 1e-12;
    }
    return report;
}

namespace {

void check_oracle_size(int n) {
    if (n < 2) throw Error("BadCount", "the classical oracle needs N >= 2");
    if (n > kMaxOracleVariables) {
        throw Error("TooManyVars", "exact enumeration is limited to N <= " +
                                       std::to_string(kMaxOracleVariables));
    }
}

double sign_of(std::size_t atom, int position, int n) {
    return (atom >> (n - position) & 1u) ? -1.0 : 1.0;  // position is 1-based
}

PairCorrelations correlations_from_weights(int n, std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw Error("BadDistribution", "weights must be finite and nonnegative");
        }
        total += w;
    }
    if (!(total > 0.0)) throw Error("BadDistribution", "weights must not all vanish");

    auto pair_correlation = [&](int k, int l) {
        double acc = 0.0;
        for (std::size_t atom = 0; atom < weights.size(); ++atom) {
            acc += weights[atom] * sign_of(atom, k, n) * sign_of(atom, l, n);
        }
        // guard the [-1, 1] invariant against summation round-off
        return std::clamp(acc / total, -1.0, 1.0);
    };
    return PairCorrelations::from_pair_function(n, pair_correlation);
}

}  // namespace

std::vector<double> random_joint_distribution(int n, SplitMix64& rng) {
    check_oracle_size(n);
    std::vector<double> weights(std::size_t{1} << n);
    double total = 0.0;
    for (double& w : weights) {
        w = rng.next_unit();
        total += w;
    }
    for (double& w : weights) w /= total;
    return weights;
}

PairCorrelations correlations_from_distribution(int n, std::span<const double> probabilities) {
    check_oracle_size(n);
    if (probabilities.size() != (std::size_t{1} << n)) {
        throw Error("DimensionMismatch", "a distribution over {-1,+1}^N needs 2^N entries");
    }
    return correlations_from_weights(n, probabilities);
}

PairCorrelations sample_classical_correlations(int n, std::span<const double> probabilities,
                                               std::uint64_t trials, std::uint64_t seed) {
    check_oracle_size(n);
    if (probabilities.size() != (std::size_t{1} << n)) {
        throw Error("DimensionMismatch", "a distribution over {-1,+1}^N needs 2^N entries");
    }
    if (trials == 0) {
        return correlations_from_weights(n, probabilities);
    }

    std::vector<double> cdf(probabilities.size());
    double total = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (!(probabilities[i] >= 0.0) || !std::isfinite(probabilities[i])) {
            throw Error("BadDistribution", "weights must be finite and nonnegative");
        }
        total += probabilities[i];
        cdf[i] = total;
    }
    if (!(total > 0.0)) throw Error("BadDistribution", "weights must not all vanish");
    for (double& c : cdf) c /= total;
    cdf.back() = 1.0;

    std::vector<double> counts(probabilities.size(), 0.0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        double u = substream(seed, 1, t).next_unit();
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        counts[static_cast<std::size_t>(it - cdf.begin())] += 1.0;
    }
    return correlations_from_weights(n, counts);
}

PairCorrelations sample_classical_correlations(int n, std::uint64_t trials, std::uint64_t seed) {
    check_oracle_size(n);
    SplitMix64 rng = substream(seed, 0, 0);
    std::vector<double> distribution = random_joint_distribution(n, rng);
    return sample_classical_correlations(n, distribution, trials, seed);
}

}  // namespace qpovm
