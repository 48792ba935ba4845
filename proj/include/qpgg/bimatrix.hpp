#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "qpgg/error.hpp"

namespace qpgg {

template <typename T>
struct PayoffPair {
    T row{};
    T col{};

    friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

/// Two-player normal-form game: one (row, column) payoff pair per cell.
///
/// Payoffs are stored row-major. The scalar type is a template parameter so
/// that games with exact (integral) payoffs can be analysed without any
/// floating tie tolerance.
template <typename T>
class BasicBimatrix {
public:
    using value_type = T;
    using Cell = PayoffPair<T>;

    BasicBimatrix() = default;

    /// `cells` is row-major with one entry per (row, col) pair.
    BasicBimatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                  std::vector<Cell> cells)
        : row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)), cells_(std::move(cells)) {
        if (row_labels_.empty() || col_labels_.empty())
            throw DomainError("bimatrix needs at least one row and one column strategy");
        if (cells_.size() != row_labels_.size() * col_labels_.size())
            throw DomainError("bimatrix is not rectangular: expected " +
                              std::to_string(row_labels_.size() * col_labels_.size()) + " cells, got " +
                              std::to_string(cells_.size()));
        if constexpr (std::is_floating_point_v<T>) {
            for (const auto& c : cells_)
                if (!std::isfinite(c.row) || !std::isfinite(c.col))
                    throw DomainError("bimatrix payoffs must be finite");
        }
    }

    /// Row-player payoffs only; the column player's payoff in cell (i,j) is
    /// the row player's payoff in cell (j,i).
    static BasicBimatrix symmetric(std::vector<std::string> labels, const std::vector<std::vector<T>>& row_payoffs) {
        const std::size_t n = labels.size();
        if (row_payoffs.size() != n)
            throw DomainError("symmetric bimatrix: payoff table must be square");
        for (const auto& r : row_payoffs)
            if (r.size() != n)
                throw DomainError("symmetric bimatrix: payoff table must be square");
        std::vector<Cell> cells;
        cells.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                cells.push_back({row_payoffs[i][j], row_payoffs[j][i]});
        auto cols = labels;
        return BasicBimatrix(std::move(labels), std::move(cols), std::move(cells));
    }

    std::size_t rows() const { return row_labels_.size(); }
    std::size_t cols() const { return col_labels_.size(); }
    bool empty() const { return cells_.empty(); }

    const Cell& operator()(std::size_t row, std::size_t col) const { return cells_.at(row * cols() + col); }
    Cell& operator()(std::size_t row, std::size_t col) { return cells_.at(row * cols() + col); }

    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    /// Sub-game on the selected strategy indices (rows and columns alike).
    BasicBimatrix restrict_to(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const {
        std::vector<std::string> rl, cl;
        std::vector<Cell> cells;
        for (auto i : row_idx)
            rl.push_back(row_labels_.at(i));
        for (auto j : col_idx)
            cl.push_back(col_labels_.at(j));
        for (auto i : row_idx)
            for (auto j : col_idx)
                cells.push_back((*this)(i, j));
        return BasicBimatrix(std::move(rl), std::move(cl), std::move(cells));
    }

    friend bool operator==(const BasicBimatrix&, const BasicBimatrix&) = default;

private:
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    std::vector<Cell> cells_;
};

using Bimatrix = BasicBimatrix<double>;

/// True when the column payoffs are the transpose of the row payoffs, i.e.
/// the game looks the same from either seat. `tol` is relative to max(1,|x|).
template <typename T>
bool is_symmetric(const BasicBimatrix<T>& m, double tol = 0.0) {
    if (m.rows() != m.cols() || m.row_labels() != m.col_labels())
        return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const double a = static_cast<double>(m(i, j).col);
            const double b = static_cast<double>(m(j, i).row);
            if (std::abs(a - b) > tol * std::max(1.0, std::max(std::abs(a), std::abs(b))))
                return false;
        }
    return true;
}

} // namespace qpgg
