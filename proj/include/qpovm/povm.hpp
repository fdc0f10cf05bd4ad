#pragma once

// Noisy qubit POVMs and their joint-measurability bounds: the exhaustive
// necessary/sufficient sign-string bounds, the equatorial closed form and its
// Uola et al. equivalent, and construction/verification of symmetric parent
// POVMs.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qpovm/qmath.hpp"

namespace qpovm {

// largest N for exhaustive 2^N sign-string enumeration
inline constexpr int kMaxEnumerationAxes = 20;

// Single outcome effect 0 <= op <= 1 of a dichotomic measurement.
struct Effect {
    BlochOperator op;
    int outcome = +1;  // +1 or -1
};

// (1 + eta * outcome * axis.sigma) / 2; validates outcome and eta.
Effect make_noisy_effect(const UnitVector3& axis, int outcome, double eta);

// Dichotomic noisy qubit POVM {E(+1), E(-1)} along one axis.
class Povm {
public:
    Povm(const UnitVector3& axis, double eta);

    const Effect& effect(int outcome) const;
    const std::vector<Effect>& effects() const { return effects_; }
    const UnitVector3& axis() const { return axis_; }
    double eta() const { return eta_; }

private:
    std::vector<Effect> effects_;
    UnitVector3 axis_;
    double eta_;
};

// N dichotomic POVMs sharing one unsharpness parameter.
class PovmSet {
public:
    PovmSet(std::vector<UnitVector3> axes, double eta);

    int size() const { return static_cast<int>(povms_.size()); }
    double eta() const { return eta_; }
    const std::vector<Povm>& povms() const { return povms_; }
    const std::vector<UnitVector3>& axes() const { return axes_; }

private:
    std::vector<Povm> povms_;
    std::vector<UnitVector3> axes_;
    double eta_;
};

// equatorial axis (cos(k pi / n), sin(k pi / n), 0)
double equatorial_angle(int k, int n);
UnitVector3 equatorial_axis(int k, int n);

std::vector<UnitVector3> equatorial_axes(int n);     // k = 1..n, n >= 2
std::vector<UnitVector3> orthogonal_axes(int n);     // n in {2, 3}
std::vector<UnitVector3> trine_axes(int n);          // n in {2, 3}, pairwise dot -1/2

// Equatorial set of N POVMs separated by pi/N.
PovmSet make_equatorial_set(int n, double eta);

// Sign strings are '+'/'-' characters, one per axis; the first character is
// axis 1. Index encoding puts the first axis in the most significant bit so
// index order equals lexicographic string order.
std::string signs_from_index(std::size_t index, int n);
std::size_t index_from_signs(const std::string& signs);

// m-vector sum_k a_k n_k for one sign assignment.
struct MVector {
    std::string signs;
    Vec3 m;
};

MVector m_vector(std::span<const UnitVector3> axes, const std::string& signs);

struct MaxMResult {
    double norm = 0.0;
    MVector argmax;  // lexicographically smallest maximizer with leading '+'
};

// max over all 2^N sign strings of |sum_k a_k n_k| (exhaustive; N <= 20).
MaxMResult max_m_norm(std::span<const UnitVector3> axes);

// necessary joint-measurability bound: max_a |m_a| / N
double eta_necessary(std::span<const UnitVector3> axes);
// sufficient joint-measurability bound: 2^N / sum_a |m_a|
double eta_sufficient(std::span<const UnitVector3> axes);

// closed-form max_a |m_a| for equatorial axes: sqrt(N + 2 sum (N-2k) cos(k pi / N))
double equatorial_max_m_closed_form(int n);
// equatorial joint-measurability threshold, closed form
double eta_opt_equatorial(int n);
// equivalent sufficient bound 1 / (N sin(pi / 2N))
double eta_opt_uola(int n);

// Parent POVM with 2^N effects indexed by sign strings.
class GlobalPovm {
public:
    GlobalPovm(int n, std::vector<BlochOperator> effects);

    int n() const { return n_; }
    std::size_t size() const { return effects_.size(); }
    const BlochOperator& effect(std::size_t index) const { return effects_[index]; }
    const BlochOperator& effect(const std::string& signs) const;

private:
    int n_;
    std::vector<BlochOperator> effects_;
};

// G(a) = 2^-N (1 + eta m_a . sigma). Marginals reproduce the set exactly by
// construction; positivity holds iff eta * max|m_a| <= 1 and is not enforced
// here (verify_global reports it).
GlobalPovm build_symmetric_global(const PovmSet& set);

struct VerificationReport {
    double min_eigenvalue = 0.0;       // over all effects
    double completeness_residual = 0.0;
    double marginal_residual = 0.0;    // max over k, a
    bool pass = false;
};

VerificationReport verify_global(const GlobalPovm& g, const PovmSet& set);

}  // namespace qpovm
