#pragma once

// Sequential unsharp-then-sharp pairwise measurements on a single qubit in
// the maximally mixed state: Lueders state update, the analytic correlation
// eta cos(pi l / N), seeded Monte-Carlo estimation, and the chained ch3 sum.

#include <cstdint>

#include "qpovm/povm.hpp"
#include "qpovm/rng.hpp"

namespace qpovm {

enum class EvalMode { analytic, montecarlo };

// One Kraus branch of the minimal (Lueders) instrument: kraus = sqrt(effect),
// so kraus * kraus = effect.
struct Instrument {
    Effect effect;
    BlochOperator kraus;

    static Instrument from_effect(const Effect& e) { return {e, bloch_sqrt_psd(e.op)}; }
};

struct TrialRecord {
    int k = 0;  // first-measurement setting index
    int l = 0;  // separation to the second setting
    int a = 0;  // first outcome, +-1
    int b = 0;  // second outcome, +-1
};

struct CorrelationEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t shots = 0;
};

struct MeasurementOutcome {
    BlochOperator post_state;  // normalized
    double probability = 0.0;
};

// rho -> kraus rho kraus / p with p = Tr[rho * effect]; throws ZeroProbability
// when p < 1e-15.
MeasurementOutcome lueders_post_state(const BlochOperator& state, const Instrument& inst);
MeasurementOutcome lueders_post_state(const BlochOperator& state, const Povm& povm, int outcome);

// <X_k^eta X_k+l>_seq = eta cos(pi l / N) for equatorial settings on 1/2.
double analytic_pair_correlation(int n, int k, int l, double eta);

// One unsharp-sharp trial on the maximally mixed state.
TrialRecord run_sequential_trial(int n, int k, int l, double eta, SplitMix64& rng);

// Seeded Monte-Carlo estimate of the pair correlation; trial t draws from
// substream(seed, stream id of (k, l), t), so reruns are bit-reproducible.
CorrelationEstimate simulate_pair(int n, int k, int l, double eta, std::uint64_t shots,
                                  std::uint64_t seed);

struct SequentialChainValue {
    double value = 0.0;
    double std_error = 0.0;  // zero in analytic mode
};

// ch3 left-hand side under the sequential scheme: analytic value
// eta N cos(pi / N), or the Monte-Carlo sum of per-pair estimates with
// propagated standard error.
SequentialChainValue chained_sequential_value(int n, double eta, EvalMode mode,
                                              std::uint64_t shots = 0, std::uint64_t seed = 0);

}  // namespace qpovm
