#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "qpgg/bimatrix.hpp"
#include "qpgg/error.hpp"
#include "qpgg/quantum_game.hpp"

namespace qpgg {

/// Payoff differences within this band count as ties for floating payoffs.
/// Integral payoffs are compared exactly.
inline constexpr double payoff_tie_tolerance = 1e-9;

template <typename T>
struct EquilibriumCell {
    std::size_t row = 0;
    std::size_t col = 0;
    std::string row_strategy;
    std::string col_strategy;
    PayoffPair<T> payoffs;
    bool strict = false; // both best responses are unique
};

namespace detail {

// -1: a < b, 0: tie, +1: a > b
template <typename T>
int compare_payoff(T a, T b) {
    if constexpr (std::is_floating_point_v<T>) {
        const double d = static_cast<double>(a) - static_cast<double>(b);
        if (std::abs(d) <= payoff_tie_tolerance)
            return 0;
        return d > 0 ? 1 : -1;
    } else {
        return a < b ? -1 : (b < a ? 1 : 0);
    }
}

} // namespace detail

/// All pure-strategy Nash equilibria under weak best responses, in row-major
/// order. Ties are admitted; `strict` marks cells where every unilateral
/// deviation is strictly worse for the deviating player.
template <typename T>
std::vector<EquilibriumCell<T>> pure_nash(const BasicBimatrix<T>& game) {
    if (game.empty() || game.rows() == 0 || game.cols() == 0)
        throw DomainError("pure_nash needs a non-empty game");
    std::vector<EquilibriumCell<T>> found;
    for (std::size_t i = 0; i < game.rows(); ++i) {
        for (std::size_t j = 0; j < game.cols(); ++j) {
            const auto& cell = game(i, j);
            bool best = true;
            bool strict = true;
            for (std::size_t k = 0; k < game.rows() && best; ++k) {
                if (k == i)
                    continue;
                const int cmp = detail::compare_payoff(cell.row, game(k, j).row);
                best = cmp >= 0;
                strict = strict && cmp > 0;
            }
            for (std::size_t k = 0; k < game.cols() && best; ++k) {
                if (k == j)
                    continue;
                const int cmp = detail::compare_payoff(cell.col, game(i, k).col);
                best = cmp >= 0;
                strict = strict && cmp > 0;
            }
            if (best)
                found.push_back({i, j, game.row_labels()[i], game.col_labels()[j], cell, strict});
        }
    }
    return found;
}

enum class ClassicalOutcome { provide, free_ride, boundary };

inline std::string to_string(ClassicalOutcome o) {
    switch (o) {
    case ClassicalOutcome::provide:
        return "provide";
    case ClassicalOutcome::free_ride:
        return "free_ride";
    case ClassicalOutcome::boundary:
        break;
    }
    return "boundary";
}

/// Which pure strategy is the equilibrium of the classical game:
/// provide iff r > c/2 - p, free ride iff r < c/2 - p.
inline ClassicalOutcome classical_nash_condition(const GameParams& g) {
    // Sign of (2r) - (r + c/2 - p), the advantage of providing against a provider.
    const double margin = g.reward() - g.cost() / 2.0 + g.punishment();
    if (std::abs(margin) <= payoff_tie_tolerance)
        return ClassicalOutcome::boundary;
    return margin > 0 ? ClassicalOutcome::provide : ClassicalOutcome::free_ride;
}

} // namespace qpgg
