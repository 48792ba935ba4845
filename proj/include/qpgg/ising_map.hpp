#pragma once

// Payoff -> Ising (J, h) mapping and the infinite-chain magnetization.
//
// beta is carried separately from (J, h); every formula below only ever sees
// the products beta*J and beta*h.

#include <cmath>
#include <optional>
#include <string>

#include "qpgg/bimatrix.hpp"
#include "qpgg/error.hpp"
#include "qpgg/quantum_game.hpp"

namespace qpgg {

struct IsingParams {
    double J = 0.0; // nearest-neighbour coupling
    double h = 0.0; // external field

    IsingParams() = default;
    IsingParams(double coupling, double field) : J(coupling), h(field) {
        if (!std::isfinite(J) || !std::isfinite(h))
            throw DomainError("Ising parameters must be finite");
    }
};

/// Inverse temperature, strictly positive. Small values are allowed; the
/// magnetization tends to zero as beta -> 0.
class Beta {
public:
    explicit Beta(double value) : value_(value) {
        if (!std::isfinite(value_) || !(value_ > 0.0))
            throw DomainError("beta must be a positive finite number, got " + std::to_string(value));
    }
    double value() const { return value_; }

private:
    double value_;
};

/// Symmetric 2x2 game with row payoffs [[a, b], [c, d]]:
///   J = (a - c + d - b) / 4,  h = (a - c + b - d) / 4.
/// Terms are grouped as (a+d)-(b+c) and (a-d)+(b-c) so that games with
/// a == d and b == c give h == 0 exactly.
inline IsingParams map_to_ising(const Bimatrix& game) {
    if (game.rows() != 2 || game.cols() != 2)
        throw DomainError("Ising mapping needs a 2x2 game");
    if (!is_symmetric(game, 1e-12))
        throw DomainError("Ising mapping needs a symmetric game (column payoffs = transposed row payoffs)");
    const double a = game(0, 0).row, b = game(0, 1).row;
    const double c = game(1, 0).row, d = game(1, 1).row;
    return IsingParams(((a + d) - (b + c)) / 4.0, ((a - d) + (b - c)) / 4.0);
}

namespace detail {

// log(sinh|x|) for x != 0 without overflow.
inline double log_abs_sinh(double x) {
    const double ax = std::abs(x);
    if (ax < 20.0)
        return std::log(std::sinh(ax));
    return ax - std::log(2.0) + std::log1p(-std::exp(-2.0 * ax));
}

// log(cosh x) without overflow.
inline double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

} // namespace detail

/// |beta*h| above which the magnetization switches to the overflow-free form.
inline constexpr double large_field_threshold = 350.0;

/// Infinite-chain magnetization sinh(bh) / sqrt(sinh^2(bh) + exp(-4 bJ)).
inline double magnetization_analytic(const IsingParams& ising, Beta beta) {
    const double x = beta.value() * ising.h;
    const double k = beta.value() * ising.J;
    if (x == 0.0)
        return 0.0;
    const double sign = x > 0 ? 1.0 : -1.0;
    // Direct form while every intermediate is a normal double.
    if (std::abs(x) <= large_field_threshold && std::abs(x) >= 1e-100 && std::abs(k) <= 150.0) {
        const double s = std::sinh(x);
        return s / std::sqrt(s * s + std::exp(-4.0 * k));
    }
    // m = sign / sqrt(1 + exp(-4bJ) / sinh^2(bh)), ratio taken in log space.
    const double log_ratio = -4.0 * k - 2.0 * detail::log_abs_sinh(x);
    return sign / std::sqrt(1.0 + std::exp(log_ratio));
}

enum class SubgameKind { quantum_vs_provide, quantum_vs_freeride };

inline std::string to_string(SubgameKind k) {
    return k == SubgameKind::quantum_vs_provide ? "quantum_vs_provide" : "quantum_vs_freeride";
}

/// A 2x2 slice of the quantum game and its Ising image.
struct SubgameSpec {
    SubgameKind kind;
    Bimatrix game;
    IsingParams ising;
};

/// Closed-form field of the quantum-vs-free-ride game (its coupling is 0).
inline double qvf_field(double gamma, const GameParams& g) {
    require_gamma(gamma);
    const double cg = std::cos(gamma);
    return (g.reward() - (g.cost() / 2.0) * std::cos(2.0 * gamma) + g.punishment() * cg * cg) / 2.0;
}

/// Closed-form coupling of the quantum-vs-provide game (its field is 0).
inline double qvp_coupling(double gamma, const GameParams& g) {
    require_gamma(gamma);
    const double sg = std::sin(gamma);
    return (2.0 * g.reward() + g.punishment()) * sg * sg / 2.0;
}

/// Slice of quantum_matrix: (provide, Q) or (Q, free ride), with the first
/// listed strategy playing the role of spin up. The Ising parameters are the
/// closed forms below, which agree with map_to_ising of the slice up to
/// rounding but keep the vanishing parameter exactly zero:
///   quantum_vs_provide:  J = (2r + p) sin^2(g) / 2,  h = 0
///   quantum_vs_freeride: J = 0,  h = (r - (c/2) cos 2g + p cos^2 g) / 2
inline SubgameSpec subgame(SubgameKind kind, double gamma, const GameParams& g) {
    const Bimatrix full = quantum_matrix(gamma, g);
    constexpr auto provide = static_cast<std::size_t>(Strategy::provide);
    constexpr auto free_ride = static_cast<std::size_t>(Strategy::free_ride);
    constexpr auto quantum = static_cast<std::size_t>(Strategy::quantum);
    if (kind == SubgameKind::quantum_vs_provide)
        return {kind, full.restrict_to({provide, quantum}, {provide, quantum}),
                IsingParams(qvp_coupling(gamma, g), 0.0)};
    return {kind, full.restrict_to({quantum, free_ride}, {quantum, free_ride}), IsingParams(0.0, qvf_field(gamma, g))};
}

/// Fraction of Q players minus fraction of free riders in the infinite chain:
/// tanh(beta (r - (c/2) cos 2g + p cos^2 g) / 2).
inline double magnetization_qvf(double gamma, const GameParams& g, Beta beta) {
    return std::tanh(beta.value() * qvf_field(gamma, g));
}

/// Entanglement at which the quantum-vs-free-ride majority flips sign:
/// cos^2(g*) = (2r + c) / (2 (c - p)). Empty when that has no solution in
/// [0, pi/2].
inline std::optional<double> phase_transition_gamma(const GameParams& g) {
    const double denom = 2.0 * (g.cost() - g.punishment());
    if (denom == 0.0)
        throw DomainError("phase transition undefined for punishment == cost (zero denominator)");
    const double ratio = (2.0 * g.reward() + g.cost()) / denom;
    if (!(ratio >= 0.0 && ratio <= 1.0))
        return std::nullopt;
    return std::acos(std::sqrt(ratio));
}

/// Transfer matrix eigenvalues lambda_+ and lambda_- for a periodic chain,
/// both divided by cosh(beta h) (the common scale cancels in every ratio).
struct ScaledEigenvalues {
    double plus;
    double minus;
};

inline ScaledEigenvalues transfer_eigenvalues_scaled(double beta_j, double beta_h) {
    const double log_cosh = detail::log_cosh(beta_h);
    const double sech2 = std::exp(-2.0 * log_cosh);
    const double t = std::tanh(beta_h);
    const double plus = 1.0 + std::sqrt(t * t + std::exp(-4.0 * beta_j - 2.0 * log_cosh));
    // lambda_+ lambda_- = 1 - exp(-4 bJ); this avoids the cancellation in
    // cosh - sqrt(...) and is exactly zero at J == 0.
    const double minus = -std::expm1(-4.0 * beta_j) * sech2 / plus;
    return {plus, minus};
}

/// Chain length beyond which (lambda_-/lambda_+)^N drops below alpha:
/// N = -ln(alpha) / ln(lambda_+ / |lambda_-|). Real-valued; callers round up.
/// A negative lambda_- (antiferromagnetic coupling) is handled through its
/// magnitude. Throws DegenerateRegimeError when lambda_- vanishes.
inline double mean_field_N(const IsingParams& ising, Beta beta, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("alpha must lie in (0, 1)");
    const double beta_j = beta.value() * ising.J;
    const double beta_h = beta.value() * ising.h;
    const double product = -std::expm1(-4.0 * beta_j); // lambda_+ lambda_- / cosh^2
    if (product == 0.0)
        throw DegenerateRegimeError(
            "degenerate single-eigenvalue regime: lambda_- = 0 (zero coupling J), so the finite-size "
            "correction vanishes identically and no chain length can be derived from alpha");
    const auto ev = transfer_eigenvalues_scaled(beta_j, beta_h);
    // ln(lambda_+ / |lambda_-|) with lambda_- = product * cosh^2 / lambda_+ (unscaled)
    const double log_ratio = 2.0 * std::log(ev.plus) + 2.0 * detail::log_cosh(beta_h) - std::log(std::abs(product));
    return -std::log(alpha) / log_ratio;
}

} // namespace qpgg
