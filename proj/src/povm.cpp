#include "qpovm/povm.hpp"

#include <cmath>

namespace qpovm {

namespace {

const double kPi = std::acos(-1.0);

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error("BadEta", "unsharpness parameter must lie in [0, 1]");
    }
}

void check_count(int n, int minimum) {
    if (n < minimum) {
        throw Error("BadCount", "need at least " + std::to_string(minimum) + " measurements");
    }
}

void check_enumeration_size(int n) {
    check_count(n, 2);
    if (n > kMaxEnumerationAxes) {
        throw Error("TooManyAxes",
                    "exhaustive enumeration is limited to N <= " +
                        std::to_string(kMaxEnumerationAxes));
    }
}

}  // namespace

Effect make_noisy_effect(const UnitVector3& axis, int outcome, double eta) {
    if (outcome != 1 && outcome != -1) {
        throw Error("BadOutcome", "outcome must be +1 or -1");
    }
    check_eta(eta);
    return Effect{{0.5, axis.vec() * (0.5 * eta * outcome)}, outcome};
}

Povm::Povm(const UnitVector3& axis, double eta) : axis_(axis), eta_(eta) {
    check_eta(eta);
    effects_.push_back(make_noisy_effect(axis, +1, eta));
    effects_.push_back(make_noisy_effect(axis, -1, eta));
}

const Effect& Povm::effect(int outcome) const {
    if (outcome != 1 && outcome != -1) {
        throw Error("BadOutcome", "outcome must be +1 or -1");
    }
    return outcome == 1 ? effects_[0] : effects_[1];
}

PovmSet::PovmSet(std::vector<UnitVector3> axes, double eta) : axes_(std::move(axes)), eta_(eta) {
    check_eta(eta);
    check_count(static_cast<int>(axes_.size()), 2);
    povms_.reserve(axes_.size());
    for (const auto& axis : axes_) povms_.emplace_back(axis, eta);
}

double equatorial_angle(int k, int n) { return static_cast<double>(k) * kPi / n; }

UnitVector3 equatorial_axis(int k, int n) {
    double theta = equatorial_angle(k, n);
    return UnitVector3({std::cos(theta), std::sin(theta), 0.0});
}

std::vector<UnitVector3> equatorial_axes(int n) {
    check_count(n, 2);
    std::vector<UnitVector3> axes;
    axes.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) axes.push_back(equatorial_axis(k, n));
    return axes;
}

std::vector<UnitVector3> orthogonal_axes(int n) {
    if (n == 2) return {UnitVector3({1, 0, 0}), UnitVector3({0, 0, 1})};
    if (n == 3) return {UnitVector3({1, 0, 0}), UnitVector3({0, 1, 0}), UnitVector3({0, 0, 1})};
    throw Error("BadCount", "orthogonal axes are defined for N = 2 or 3");
}

std::vector<UnitVector3> trine_axes(int n) {
    double c = std::cos(2.0 * kPi / 3.0), s = std::sin(2.0 * kPi / 3.0);
    if (n == 2) return {UnitVector3({1, 0, 0}), UnitVector3({c, s, 0})};
    if (n == 3) return {UnitVector3({1, 0, 0}), UnitVector3({c, s, 0}), UnitVector3({c, -s, 0})};
    throw Error("BadCount", "trine axes are defined for N = 2 or 3");
}

PovmSet make_equatorial_set(int n, double eta) { return PovmSet(equatorial_axes(n), eta); }

std::string signs_from_index(std::size_t index, int n) {
    std::string s(static_cast<std::size_t>(n), '+');
    for (int j = 0; j < n; ++j) {
        if (index >> (n - 1 - j) & 1u) s[static_cast<std::size_t>(j)] = '-';
    }
    return s;
}

std::size_t index_from_signs(const std::string& signs) {
    std::size_t index = 0;
    for (char ch : signs) {
        if (ch != '+' && ch != '-') {
            throw Error("BadSignString", "sign strings consist of '+' and '-' characters");
        }
        index = (index << 1) | (ch == '-' ? 1u : 0u);
    }
    return index;
}

namespace {

Vec3 m_vector_at(std::span<const UnitVector3> axes, std::size_t index) {
    int n = static_cast<int>(axes.size());
    Vec3 m;
    for (int j = 0; j < n; ++j) {
        double a = (index >> (n - 1 - j) & 1u) ? -1.0 : 1.0;
        m = m + a * axes[static_cast<std::size_t>(j)].vec();
    }
    return m;
}

}  // namespace

MVector m_vector(std::span<const UnitVector3> axes, const std::string& signs) {
    if (signs.size() != axes.size()) {
        throw Error("DimensionMismatch", "sign string length must equal the number of axes");
    }
    return MVector{signs, m_vector_at(axes, index_from_signs(signs))};
}

MaxMResult max_m_norm(std::span<const UnitVector3> axes) {
    int n = static_cast<int>(axes.size());
    check_enumeration_size(n);
    // a -> -a leaves |m| unchanged, so only strings with a_1 = +1 are scanned;
    // the first maximizer in index order is the lexicographically smallest.
    std::size_t best_index = 0;
    double best = -1.0;
    for (std::size_t index = 0; index < (std::size_t{1} << (n - 1)); ++index) {
        double norm = m_vector_at(axes, index).norm();
        if (norm > best) {
            best = norm;
            best_index = index;
        }
    }
    return MaxMResult{best, MVector{signs_from_index(best_index, n), m_vector_at(axes, best_index)}};
}

double eta_necessary(std::span<const UnitVector3> axes) {
    return max_m_norm(axes).norm / static_cast<double>(axes.size());
}

double eta_sufficient(std::span<const UnitVector3> axes) {
    int n = static_cast<int>(axes.size());
    check_enumeration_size(n);
    double total = 0.0;
    for (std::size_t index = 0; index < (std::size_t{1} << n); ++index) {
        total += m_vector_at(axes, index).norm();
    }
    return std::pow(2.0, n) / total;
}

double equatorial_max_m_closed_form(int n) {
    check_count(n, 2);
    double s = 0.0;
    for (int k = 1; k <= n / 2; ++k) {
        s += (n - 2 * k) * std::cos(k * kPi / n);
    }
    return std::sqrt(n + 2.0 * s);
}

double eta_opt_equatorial(int n) { return equatorial_max_m_closed_form(n) / n; }

double eta_opt_uola(int n) {
    check_count(n, 2);
    return 1.0 / (n * std::sin(kPi / (2.0 * n)));
}

GlobalPovm::GlobalPovm(int n, std::vector<BlochOperator> effects)
    : n_(n), effects_(std::move(effects)) {
    check_enumeration_size(n);
    if (effects_.size() != (std::size_t{1} << n_)) {
        throw Error("DimensionMismatch", "a global POVM over N settings needs 2^N effects");
    }
}

const BlochOperator& GlobalPovm::effect(const std::string& signs) const {
    if (static_cast<int>(signs.size()) != n_) {
        throw Error("DimensionMismatch", "sign string length must equal N");
    }
    return effects_[index_from_signs(signs)];
}

GlobalPovm build_symmetric_global(const PovmSet& set) {
    int n = set.size();
    check_enumeration_size(n);
    double weight = std::pow(2.0, -n);
    std::vector<BlochOperator> effects;
    effects.reserve(std::size_t{1} << n);
    for (std::size_t index = 0; index < (std::size_t{1} << n); ++index) {
        Vec3 m = m_vector_at(set.axes(), index);
        effects.push_back(BlochOperator{weight, weight * set.eta() * m});
    }
    return GlobalPovm(n, std::move(effects));
}

VerificationReport verify_global(const GlobalPovm& g, const PovmSet& set) {
    int n = set.size();
    if (g.n() != n) {
        throw Error("DimensionMismatch", "global POVM and set have different N");
    }

    VerificationReport report;
    report.min_eigenvalue = g.effect(std::size_t{0}).min_eigenvalue();
    BlochOperator sum{};
    for (std::size_t index = 0; index < g.size(); ++index) {
        const BlochOperator& e = g.effect(index);
        report.min_eigenvalue = std::min(report.min_eigenvalue, e.min_eigenvalue());
        sum = sum + e;
    }
    report.completeness_residual = (sum - BlochOperator::identity()).spectral_norm();

    for (int k = 1; k <= n; ++k) {
        for (int outcome : {+1, -1}) {
            BlochOperator marginal{};
            for (std::size_t index = 0; index < g.size(); ++index) {
                bool negative = index >> (n - k) & 1u;
                if ((outcome == -1) == negative) marginal = marginal + g.effect(index);
            }
            double residual =
                (marginal - set.povms()[static_cast<std::size_t>(k - 1)].effect(outcome).op)
                    .spectral_norm();
            report.marginal_residual = std::max(report.marginal_residual, residual);
        }
    }

    report.pass = report.min_eigenvalue >= -kPositivityTol &&
                  report.completeness_residual <= kPositivityTol &&
                  report.marginal_residual <= kPositivityTol;
    return report;
}

}  // namespace qpovm
