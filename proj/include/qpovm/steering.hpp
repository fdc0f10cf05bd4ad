#pragma once

// The N-setting linear steering inequality on a two-qubit state and its
// single-qubit local analogue. Both functionals equal eta analytically for
// the intended protocols; the bipartite path is computed from conditional
// states so arbitrary shared states are supported.

#include <cstdint>
#include <vector>

#include "qpovm/seqsim.hpp"

namespace qpovm {

// Two-qubit density operator; validated Hermitian, unit trace, PSD.
class TwoQubitState {
public:
    explicit TwoQubitState(ComplexMatrix rho);

    static TwoQubitState bell_psi_minus();    // |psi-><psi-|
    static TwoQubitState maximally_mixed();   // 1/4

    const ComplexMatrix& rho() const { return rho_; }

private:
    ComplexMatrix rho_;
};

// Steering bound f(N): maximum eigenvalue of (1/N) sum_k sigma_theta_k,
// evaluated through its closed form.
double f_bound(int n);

struct ConditionalState {
    BlochOperator state;       // Bob's normalized conditional state
    double probability = 0.0;  // Alice's outcome probability
};

// Bob's conditional state Tr_A[(effect x 1) rho] / p; throws ZeroProbability
// when p < 1e-15.
ConditionalState conditional_state(const TwoQubitState& rho, const Effect& effect);

struct SteeringReport {
    int n = 0;
    double eta = 0.0;
    double functional = 0.0;
    double bound = 0.0;
    bool violated = false;
    std::vector<double> per_setting;  // <sigma^A sigma^B> per k
    double std_error = 0.0;           // zero in analytic mode
    EvalMode mode = EvalMode::analytic;
};

// (1/N) sum_k <sigma^A_theta_k sigma^B_theta_k> with Alice measuring the
// unsharp equatorial POVM and Bob reading the spin-flipped sharp projectors
// (the convention that makes the Bell-state correlator +eta). Monte-Carlo
// mode samples both outcomes per trial.
SteeringReport steering_functional(const TwoQubitState& rho, int n, double eta,
                                   EvalMode mode = EvalMode::analytic, std::uint64_t shots = 0,
                                   std::uint64_t seed = 0);

// Single-qubit analogue: N same-angle unsharp-sharp sequential pairs on 1/2,
// averaged over the settings; reduces to functional = eta <= f(N).
SteeringReport local_analogue(int n, double eta, EvalMode mode = EvalMode::analytic,
                              std::uint64_t shots = 0, std::uint64_t seed = 0);

}  // namespace qpovm
