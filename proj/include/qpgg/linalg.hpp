#pragma once

// Fixed-size dense complex matrices. Only what the two-qubit game needs:
// products, adjoints, Kronecker products and matrix-vector application.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace qpgg {

using complex = std::complex<double>;

template <std::size_t N>
using ComplexVector = std::array<complex, N>;

template <std::size_t N>
class SquareMatrix {
public:
    static constexpr std::size_t dim = N;

    constexpr SquareMatrix() = default;

    static SquareMatrix identity() {
        SquareMatrix m;
        for (std::size_t i = 0; i < N; ++i)
            m(i, i) = 1.0;
        return m;
    }

    complex& operator()(std::size_t row, std::size_t col) { return data_[row * N + col]; }
    const complex& operator()(std::size_t row, std::size_t col) const { return data_[row * N + col]; }

    SquareMatrix adjoint() const {
        SquareMatrix out;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix out;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const complex aik = a(i, k);
                for (std::size_t j = 0; j < N; ++j)
                    out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend ComplexVector<N> operator*(const SquareMatrix& a, const ComplexVector<N>& v) {
        ComplexVector<N> out{};
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                out[i] += a(i, j) * v[j];
        return out;
    }

private:
    std::array<complex, N * N> data_{};
};

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;

/// Kronecker product; the left factor owns the most significant index bit.
template <std::size_t N, std::size_t M>
SquareMatrix<N * M> kron(const SquareMatrix<N>& a, const SquareMatrix<M>& b) {
    SquareMatrix<N * M> out;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < M; ++k)
                for (std::size_t l = 0; l < M; ++l)
                    out(i * M + k, j * M + l) = a(i, j) * b(k, l);
    return out;
}

template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

/// Largest entrywise deviation of U·U† from the identity.
template <std::size_t N>
double unitarity_defect(const SquareMatrix<N>& u) {
    return max_abs_diff(u * u.adjoint(), SquareMatrix<N>::identity());
}

} // namespace qpgg
