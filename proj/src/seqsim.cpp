#include "qpovm/seqsim.hpp"

#include <cmath>

namespace qpovm {

namespace {

const double kPi = std::acos(-1.0);

void check_pair_indices(int n, int k, int l) {
    if (n < 2) throw Error("BadCount", "sequential pairs need N >= 2");
    if (k < 1 || l < 1 || k + l > n) {
        throw Error("BadIndex", "pair indices must satisfy 1 <= k, 1 <= l, k + l <= N");
    }
}

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error("BadEta", "unsharpness parameter must lie in [0, 1]");
    }
}

// (sample std) / sqrt(shots) for +-1-valued products with the given mean
double binary_std_error(double mean, std::uint64_t shots) {
    if (shots < 2) return 0.0;
    double variance = (1.0 - mean * mean) * static_cast<double>(shots) /
                      static_cast<double>(shots - 1);
    return std::sqrt(std::max(variance, 0.0) / static_cast<double>(shots));
}

// stream identifier for the (n, k, l) pair within one run
std::uint64_t pair_stream(int n, int k, int l) {
    return mix64((static_cast<std::uint64_t>(n) << 40) ^ (static_cast<std::uint64_t>(k) << 20) ^
                 static_cast<std::uint64_t>(l));
}

}  // namespace

MeasurementOutcome lueders_post_state(const BlochOperator& state, const Instrument& inst) {
    double p = bloch_trace_product(state, inst.effect.op);
    if (p < 1e-15) {
        throw Error("ZeroProbability", "outcome probability vanishes; no post-state");
    }
    BlochOperator post = bloch_sandwich(inst.kraus, state) * (1.0 / p);
    return {post, p};
}

MeasurementOutcome lueders_post_state(const BlochOperator& state, const Povm& povm, int outcome) {
    return lueders_post_state(state, Instrument::from_effect(povm.effect(outcome)));
}

double analytic_pair_correlation(int n, int k, int l, double eta) {
    check_pair_indices(n, k, l);
    check_eta(eta);
    return eta * std::cos(kPi * l / n);
}

TrialRecord run_sequential_trial(int n, int k, int l, double eta, SplitMix64& rng) {
    check_pair_indices(n, k, l);
    check_eta(eta);
    const BlochOperator mixed{0.5, {}};
    Instrument plus = Instrument::from_effect(make_noisy_effect(equatorial_axis(k, n), +1, eta));
    Instrument minus = Instrument::from_effect(make_noisy_effect(equatorial_axis(k, n), -1, eta));

    MeasurementOutcome first_plus = lueders_post_state(mixed, plus);
    int a = rng.next_unit() < first_plus.probability ? +1 : -1;
    MeasurementOutcome first = a == +1 ? first_plus : lueders_post_state(mixed, minus);

    Effect sharp_plus = make_noisy_effect(equatorial_axis(k + l, n), +1, 1.0);
    double pb = bloch_trace_product(first.post_state, sharp_plus.op);
    int b = rng.next_unit() < pb ? +1 : -1;
    return {k, l, a, b};
}

CorrelationEstimate simulate_pair(int n, int k, int l, double eta, std::uint64_t shots,
                                  std::uint64_t seed) {
    check_pair_indices(n, k, l);
    check_eta(eta);
    if (shots < 1) throw Error("BadShots", "at least one shot is required");

    // hoist the per-trial setup out of the loop
    const BlochOperator mixed{0.5, {}};
    Instrument plus = Instrument::from_effect(make_noisy_effect(equatorial_axis(k, n), +1, eta));
    Instrument minus = Instrument::from_effect(make_noisy_effect(equatorial_axis(k, n), -1, eta));
    MeasurementOutcome out_plus = lueders_post_state(mixed, plus);
    MeasurementOutcome out_minus = lueders_post_state(mixed, minus);
    Effect sharp_plus = make_noisy_effect(equatorial_axis(k + l, n), +1, 1.0);
    double pb_given_plus = bloch_trace_product(out_plus.post_state, sharp_plus.op);
    double pb_given_minus = bloch_trace_product(out_minus.post_state, sharp_plus.op);

    std::int64_t sum = 0;
    for (std::uint64_t t = 0; t < shots; ++t) {
        SplitMix64 rng = substream(seed, pair_stream(n, k, l), t);
        int a = rng.next_unit() < out_plus.probability ? +1 : -1;
        double pb = a == +1 ? pb_given_plus : pb_given_minus;
        int b = rng.next_unit() < pb ? +1 : -1;
        sum += a * b;
    }
    double mean = static_cast<double>(sum) / static_cast<double>(shots);
    return {mean, binary_std_error(mean, shots), shots};
}

SequentialChainValue chained_sequential_value(int n, double eta, EvalMode mode,
                                              std::uint64_t shots, std::uint64_t seed) {
    if (n < 3) throw Error("BadCount", "the chained sum needs N >= 3");
    check_eta(eta);
    if (mode == EvalMode::analytic) {
        return {eta * n * std::cos(kPi / n), 0.0};
    }
    // sum of adjacent pairs minus the (1, N) pair, each estimated independently
    double value = 0.0;
    double variance = 0.0;
    for (int k = 1; k <= n - 1; ++k) {
        CorrelationEstimate est = simulate_pair(n, k, 1, eta, shots, seed);
        value += est.mean;
        variance += est.std_error * est.std_error;
    }
    CorrelationEstimate wrap = simulate_pair(n, 1, n - 1, eta, shots, seed);
    value -= wrap.mean;
    variance += wrap.std_error * wrap.std_error;
    return {value, std::sqrt(variance)};
}

}  // namespace qpovm
