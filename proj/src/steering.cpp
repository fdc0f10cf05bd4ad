#include "qpovm/steering.hpp"

#include <cmath>

namespace qpovm {

namespace {

const double kPi = std::acos(-1.0);
constexpr double kViolationMargin = 1e-12;

void check_settings(int n) {
    if (n < 2) throw Error("BadCount", "steering functionals need N >= 2 settings");
}

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error("BadEta", "unsharpness parameter must lie in [0, 1]");
    }
}

// Bob's readout observable for setting k: the spin-flipped -sigma_theta_k,
// matching the sign bookkeeping that yields <sigma^A sigma^B> = +eta on the
// singlet. All steering sign conventions live here.
BlochOperator bob_readout_observable(int k, int n) {
    return BlochOperator::pauli(-equatorial_axis(k, n).vec());
}

double propagate_mean_error(const std::vector<double>& errors) {
    double variance = 0.0;
    for (double e : errors) variance += e * e;
    return std::sqrt(variance) / static_cast<double>(errors.size());
}

}  // namespace

TwoQubitState::TwoQubitState(ComplexMatrix rho) : rho_(std::move(rho)) {
    if (rho_.dim() != 4) throw Error("BadDimension", "a two-qubit state is a 4x4 matrix");
    if (!rho_.is_hermitian()) throw Error("BadState", "density matrix must be Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > 1e-12 || std::abs(rho_.trace().imag()) > 1e-12) {
        throw Error("BadState", "density matrix must have unit trace");
    }
    if (eig_hermitian(rho_).front() < -kPositivityTol) {
        throw Error("BadState", "density matrix must be positive semidefinite");
    }
}

TwoQubitState TwoQubitState::bell_psi_minus() {
    // |psi-> = (|01> - |10>) / sqrt(2) in the computational basis
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double amps[4] = {0.0, inv_sqrt2, -inv_sqrt2, 0.0};
    ComplexMatrix rho(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho(i, j) = amps[i] * amps[j];
    return TwoQubitState(std::move(rho));
}

TwoQubitState TwoQubitState::maximally_mixed() {
    return TwoQubitState(ComplexMatrix::identity(4) * Complex(0.25, 0.0));
}

double f_bound(int n) {
    check_settings(n);
    double sum = 0.0;
    for (int k = 1; k <= n / 2; ++k) {
        sum += std::sin((2 * k - 1) * kPi / (2.0 * n));
    }
    return (std::abs(std::sin(n * kPi / 2.0)) + 2.0 * sum) / n;
}

ConditionalState conditional_state(const TwoQubitState& rho, const Effect& effect) {
    ComplexMatrix projected = tensor(to_dense(effect.op), ComplexMatrix::identity(2)) * rho.rho();
    ComplexMatrix unnormalized = partial_trace_first(projected);
    double p = unnormalized.trace().real();
    if (p < 1e-15) {
        throw Error("ZeroProbability", "Alice's outcome probability vanishes");
    }
    return {to_bloch(unnormalized * Complex(1.0 / p, 0.0)), p};
}

namespace {

// exact per-setting correlator sum_a a p(a) <readout>_a
double setting_correlator(const TwoQubitState& rho, int k, int n, double eta) {
    BlochOperator readout = bob_readout_observable(k, n);
    double correlator = 0.0;
    for (int a : {+1, -1}) {
        ConditionalState cond =
            conditional_state(rho, make_noisy_effect(equatorial_axis(k, n), a, eta));
        correlator += a * cond.probability * bloch_trace_product(cond.state, readout);
    }
    return correlator;
}

// sampled per-setting correlator: Alice's outcome then Bob's sharp readout
CorrelationEstimate sample_setting_correlator(const TwoQubitState& rho, int k, int n, double eta,
                                              std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw Error("BadShots", "at least one shot is required");
    ConditionalState plus = conditional_state(rho, make_noisy_effect(equatorial_axis(k, n), +1, eta));
    ConditionalState minus =
        conditional_state(rho, make_noisy_effect(equatorial_axis(k, n), -1, eta));
    BlochOperator readout = bob_readout_observable(k, n);
    // p(b = +1 | a) for Bob's projector (1 + b * readout) / 2
    double pb_plus = 0.5 * (1.0 + bloch_trace_product(plus.state, readout));
    double pb_minus = 0.5 * (1.0 + bloch_trace_product(minus.state, readout));

    std::int64_t sum = 0;
    for (std::uint64_t t = 0; t < shots; ++t) {
        SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(k), t);
        int a = rng.next_unit() < plus.probability ? +1 : -1;
        double pb = a == +1 ? pb_plus : pb_minus;
        int b = rng.next_unit() < pb ? +1 : -1;
        sum += a * b;
    }
    double mean = static_cast<double>(sum) / static_cast<double>(shots);
    double variance = shots > 1 ? (1.0 - mean * mean) * static_cast<double>(shots) /
                                      static_cast<double>(shots - 1)
                                : 0.0;
    return {mean, std::sqrt(std::max(variance, 0.0) / static_cast<double>(shots)), shots};
}

SteeringReport finish_report(int n, double eta, std::vector<double> per_setting,
                             double std_error, EvalMode mode) {
    SteeringReport report;
    report.n = n;
    report.eta = eta;
    report.per_setting = std::move(per_setting);
    double sum = 0.0;
    for (double c : report.per_setting) sum += c;
    report.functional = sum / n;
    report.bound = f_bound(n);
    report.violated = report.functional > report.bound + kViolationMargin;
    report.std_error = std_error;
    report.mode = mode;
    return report;
}

}  // namespace

SteeringReport steering_functional(const TwoQubitState& rho, int n, double eta, EvalMode mode,
                                   std::uint64_t shots, std::uint64_t seed) {
    check_settings(n);
    check_eta(eta);
    std::vector<double> per_setting;
    per_setting.reserve(static_cast<std::size_t>(n));
    if (mode == EvalMode::analytic) {
        for (int k = 1; k <= n; ++k) per_setting.push_back(setting_correlator(rho, k, n, eta));
        return finish_report(n, eta, std::move(per_setting), 0.0, mode);
    }
    std::vector<double> errors;
    errors.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        CorrelationEstimate est = sample_setting_correlator(rho, k, n, eta, shots, seed);
        per_setting.push_back(est.mean);
        errors.push_back(est.std_error);
    }
    return finish_report(n, eta, std::move(per_setting), propagate_mean_error(errors), mode);
}

SteeringReport local_analogue(int n, double eta, EvalMode mode, std::uint64_t shots,
                              std::uint64_t seed) {
    check_settings(n);
    check_eta(eta);
    std::vector<double> per_setting;
    per_setting.reserve(static_cast<std::size_t>(n));
    if (mode == EvalMode::analytic) {
        // each same-angle unsharp-sharp pair on 1/2 contributes exactly eta
        for (int k = 1; k <= n; ++k) per_setting.push_back(eta);
        return finish_report(n, eta, std::move(per_setting), 0.0, mode);
    }

    if (shots < 1) throw Error("BadShots", "at least one shot is required");
    const BlochOperator mixed{0.5, {}};
    std::vector<double> errors;
    errors.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        Instrument plus = Instrument::from_effect(make_noisy_effect(equatorial_axis(k, n), +1, eta));
        Instrument minus =
            Instrument::from_effect(make_noisy_effect(equatorial_axis(k, n), -1, eta));
        MeasurementOutcome out_plus = lueders_post_state(mixed, plus);
        MeasurementOutcome out_minus = lueders_post_state(mixed, minus);
        Effect sharp_plus = make_noisy_effect(equatorial_axis(k, n), +1, 1.0);
        double pb_plus = bloch_trace_product(out_plus.post_state, sharp_plus.op);
        double pb_minus = bloch_trace_product(out_minus.post_state, sharp_plus.op);

        std::int64_t sum = 0;
        for (std::uint64_t t = 0; t < shots; ++t) {
            SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(k), t);
            int a = rng.next_unit() < out_plus.probability ? +1 : -1;
            double pb = a == +1 ? pb_plus : pb_minus;
            int b = rng.next_unit() < pb ? +1 : -1;
            sum += a * b;
        }
        double mean = static_cast<double>(sum) / static_cast<double>(shots);
        double variance = shots > 1 ? (1.0 - mean * mean) * static_cast<double>(shots) /
                                          static_cast<double>(shots - 1)
                                    : 0.0;
        per_setting.push_back(mean);
        errors.push_back(std::sqrt(std::max(variance, 0.0) / static_cast<double>(shots)));
    }
    return finish_report(n, eta, std::move(per_setting), propagate_mean_error(errors), mode);
}

}  // namespace qpovm
