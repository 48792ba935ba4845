#pragma once

// Two-player public goods game quantized with the Eisert entangle /
// play / disentangle protocol.
//
// Basis ordering is |00>, |01>, |10>, |11> with player A (the row player) on
// the left, most significant qubit. |0> is "provide", |1> is "free ride".

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qpgg/bimatrix.hpp"
#include "qpgg/error.hpp"
#include "qpgg/linalg.hpp"

namespace qpgg {

inline constexpr double pi = std::numbers::pi;
inline constexpr double half_pi = std::numbers::pi / 2.0;

/// Reward r, cost c and punishment p of the two-player public goods game.
class GameParams {
public:
    GameParams(double reward, double cost, double punishment) : r_(reward), c_(cost), p_(punishment) {
        if (!std::isfinite(r_) || !std::isfinite(c_) || !std::isfinite(p_))
            throw DomainError("game parameters must be finite");
        if (!(r_ > 0.0))
            throw DomainError("reward must be positive");
        if (!(c_ > 0.0))
            throw DomainError("cost must be positive");
        if (!(p_ >= 0.0))
            throw DomainError("punishment must be non-negative");
    }

    double reward() const { return r_; }
    double cost() const { return c_; }
    double punishment() const { return p_; }

private:
    double r_;
    double c_;
    double p_;
};

/// Parameters of a strategy unitary O(theta, phi); theta in [0, pi],
/// phi in [0, pi/2].
class StrategyAngles {
public:
    constexpr StrategyAngles(double theta, double phi) : theta_(theta), phi_(phi) {
        if (!(theta_ >= 0.0 && theta_ <= pi))
            throw DomainError("strategy angle theta must lie in [0, pi]");
        if (!(phi_ >= 0.0 && phi_ <= half_pi))
            throw DomainError("strategy angle phi must lie in [0, pi/2]");
    }

    constexpr double theta() const { return theta_; }
    constexpr double phi() const { return phi_; }

private:
    double theta_;
    double phi_;
};

namespace strategies {
inline constexpr StrategyAngles provide{0.0, 0.0};
inline constexpr StrategyAngles free_ride{pi, 0.0};
inline constexpr StrategyAngles quantum{0.0, half_pi};
} // namespace strategies

enum class Strategy { provide = 0, free_ride = 1, quantum = 2 };

inline constexpr std::array<Strategy, 3> all_strategies{Strategy::provide, Strategy::free_ride, Strategy::quantum};

inline constexpr StrategyAngles angles_of(Strategy s) {
    switch (s) {
    case Strategy::provide:
        return strategies::provide;
    case Strategy::free_ride:
        return strategies::free_ride;
    case Strategy::quantum:
        break;
    }
    return strategies::quantum;
}

inline std::string label_of(Strategy s) {
    switch (s) {
    case Strategy::provide:
        return "provide";
    case Strategy::free_ride:
        return "free ride";
    case Strategy::quantum:
        break;
    }
    return "Q";
}

/// Joint state of the two strategy qubits at one site.
class TwoQubitState {
public:
    static constexpr double norm_tolerance = 1e-12;

    TwoQubitState() : amp_{complex{1.0, 0.0}, {}, {}, {}} {}
    explicit TwoQubitState(const ComplexVector<4>& amplitudes) : amp_(amplitudes) {}

    /// Computational basis state |a b>, a and b in {0, 1}.
    static TwoQubitState basis(int a, int b) {
        if ((a != 0 && a != 1) || (b != 0 && b != 1))
            throw DomainError("basis bits must be 0 or 1");
        ComplexVector<4> v{};
        v[static_cast<std::size_t>(2 * a + b)] = 1.0;
        return TwoQubitState(v);
    }

    const ComplexVector<4>& amplitudes() const { return amp_; }
    const complex& operator[](std::size_t i) const { return amp_.at(i); }

    /// |<ab|state>|^2
    double probability(int a, int b) const { return std::norm(amp_.at(static_cast<std::size_t>(2 * a + b))); }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& x : amp_)
            s += std::norm(x);
        return s;
    }

    bool is_normalized() const { return std::abs(norm_squared() - 1.0) <= norm_tolerance; }

private:
    ComplexVector<4> amp_;
};

inline void require_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= half_pi))
        throw DomainError("entanglement gamma must lie in [0, pi/2], got " + std::to_string(gamma));
}

/// Entangling gate L(gamma): cos(gamma/2) on the diagonal, +-i sin(gamma/2)
/// on the anti-diagonal. L(0) is the identity, L(pi/2) maps |00> to a
/// maximally entangled state.
inline Matrix4 entangler(double gamma) {
    require_gamma(gamma);
    const double c = std::cos(gamma / 2.0);
    const complex is{0.0, std::sin(gamma / 2.0)};
    Matrix4 l;
    for (std::size_t i = 0; i < 4; ++i)
        l(i, i) = c;
    l(0, 3) = is;
    l(1, 2) = -is;
    l(2, 1) = -is;
    l(3, 0) = is;
    return l;
}

/// O(theta, phi) = [[e^{i phi} cos(theta/2), sin(theta/2)],
///                  [-sin(theta/2), e^{-i phi} cos(theta/2)]]
inline Matrix2 strategy_unitary(const StrategyAngles& angles) {
    const double ct = std::cos(angles.theta() / 2.0);
    const double st = std::sin(angles.theta() / 2.0);
    const complex phase = std::polar(1.0, angles.phi());
    Matrix2 o;
    o(0, 0) = phase * ct;
    o(0, 1) = st;
    o(1, 0) = -st;
    o(1, 1) = std::conj(phase) * ct;
    return o;
}

/// L^dagger (O_A (x) O_B) L |00>
inline TwoQubitState final_state(double gamma, const StrategyAngles& a, const StrategyAngles& b) {
    const Matrix4 l = entangler(gamma);
    const Matrix4 play = kron(strategy_unitary(a), strategy_unitary(b));
    const Matrix4 circuit = l.adjoint() * play * l;
    return TwoQubitState(circuit * TwoQubitState::basis(0, 0).amplitudes());
}

/// Expected payoffs of players A and B after measuring `state`, weighting the
/// classical payoff table by the four outcome probabilities.
inline PayoffPair<double> payoffs(const TwoQubitState& state, const GameParams& g) {
    if (!state.is_normalized())
        throw InvariantError("payoff projection needs a normalized state, |psi|^2 = " +
                             std::to_string(state.norm_squared()));
    const double r = g.reward(), c = g.cost(), p = g.punishment();
    const double p00 = state.probability(0, 0);
    const double p01 = state.probability(0, 1);
    const double p10 = state.probability(1, 0);
    const double p11 = state.probability(1, 1);
    const double sucker = r - c / 2.0;
    const double temptation = r + c / 2.0 - p;
    return {2.0 * r * p00 + temptation * p10 + sucker * p01 - p * p11,
            2.0 * r * p00 + sucker * p10 + temptation * p01 - p * p11};
}

struct GroupPayoffs {
    double cooperator;
    double defector;
};

/// Linear public goods payoffs in a group of `group_size` players of whom
/// `cooperators` contribute `cost`, the pot being multiplied by `multiplier`.
inline GroupPayoffs group_payoffs(double multiplier, double cost, int cooperators, int group_size) {
    if (group_size < 1)
        throw DomainError("group size must be at least 1");
    if (cooperators < 0 || cooperators > group_size)
        throw DomainError("cooperator count must lie in [0, group size]");
    const double defector = multiplier * cooperators * cost / group_size;
    return {defector - cost, defector};
}

/// Classical 2x2 game, strategies (provide, free ride).
inline Bimatrix classical_matrix(const GameParams& g) {
    const double r = g.reward(), c = g.cost(), p = g.punishment();
    return Bimatrix::symmetric({label_of(Strategy::provide), label_of(Strategy::free_ride)},
                               {{2.0 * r, r - c / 2.0}, {r + c / 2.0 - p, -p}});
}

/// Closed-form 3x3 game over (provide, free ride, Q) at entanglement gamma.
///
/// Off-diagonal quantum cells use
///   a1 = 2r cos^2 g - p sin^2 g
///   a2 = r - (c/2) cos 2g - p sin^2 g
///   a3 = r + (c/2) cos 2g - p cos^2 g
/// with Q earning a2 and free ride earning a3 when they meet. This is the
/// placement produced by the state evolution (see final_state / payoffs); it
/// makes Q collapse onto provide at gamma = 0.
inline Bimatrix quantum_matrix(double gamma, const GameParams& g) {
    require_gamma(gamma);
    const double r = g.reward(), c = g.cost(), p = g.punishment();
    const double cos2 = std::cos(gamma) * std::cos(gamma);
    const double sin2 = std::sin(gamma) * std::sin(gamma);
    const double cos_2g = std::cos(2.0 * gamma);
    const double a1 = 2.0 * r * cos2 - p * sin2;
    const double a2 = r - (c / 2.0) * cos_2g - p * sin2;
    const double a3 = r + (c / 2.0) * cos_2g - p * cos2;
    std::vector<std::string> labels;
    for (auto s : all_strategies)
        labels.push_back(label_of(s));
    return Bimatrix::symmetric(std::move(labels), {{2.0 * r, r - c / 2.0, a1},
                                                   {r + c / 2.0 - p, -p, a3},
                                                   {a1, a2, 2.0 * r}});
}

/// Same 3x3 game, evaluated cell by cell through the state evolution.
inline Bimatrix quantum_matrix_from_states(double gamma, const GameParams& g) {
    require_gamma(gamma);
    std::vector<std::string> labels;
    std::vector<Bimatrix::Cell> cells;
    for (auto a : all_strategies) {
        labels.push_back(label_of(a));
        for (auto b : all_strategies)
            cells.push_back(payoffs(final_state(gamma, angles_of(a), angles_of(b)), g));
    }
    auto cols = labels;
    return Bimatrix(std::move(labels), std::move(cols), std::move(cells));
}

} // namespace qpgg
