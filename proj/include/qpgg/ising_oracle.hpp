#pragma once

// Finite periodic chains: exact transfer-matrix magnetization and a
// single-spin-flip Metropolis sampler. Both serve as independent checks on
// the infinite-chain formula in ising_map.hpp.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qpgg/error.hpp"
#include "qpgg/ising_map.hpp"

namespace qpgg {

enum class Boundary { periodic };

struct ChainConfig {
    std::size_t sites;
    IsingParams ising;
    Beta beta;
    Boundary boundary = Boundary::periodic;

    ChainConfig(std::size_t n, IsingParams params, Beta b) : sites(n), ising(params), beta(b) {
        if (sites < 2)
            throw DomainError("a chain needs at least 2 sites, got " + std::to_string(sites));
    }
};

enum class Method { analytic, transfer_matrix, monte_carlo };

inline std::string to_string(Method m) {
    switch (m) {
    case Method::analytic:
        return "analytic";
    case Method::transfer_matrix:
        return "transfer-matrix";
    case Method::monte_carlo:
        break;
    }
    return "monte-carlo";
}

struct MagnetizationEstimate {
    double value = 0.0;
    double std_error = 0.0; // zero for the exact methods
    Method method = Method::analytic;
    std::size_t samples = 0;
};

/// Exact per-site magnetization of a periodic chain of `sites` spins,
/// (1/(N beta)) d ln Z / dh with Z = lambda_+^N + lambda_-^N.
///
/// Everything is scaled by cosh(beta h). With rho = lambda_-/lambda_+ and
/// d lambda_+- / dh = beta cosh(bh) (tanh(bh) +- m_inf):
///   m_N = (D+ + D- rho^(N-1)) / (lambda_+ (1 + rho^N))
inline MagnetizationEstimate transfer_matrix_m(const ChainConfig& config) {
    const double beta_j = config.beta.value() * config.ising.J;
    const double beta_h = config.beta.value() * config.ising.h;
    const auto ev = transfer_eigenvalues_scaled(beta_j, beta_h);
    const double m_inf = magnetization_analytic(config.ising, config.beta);
    const double t = std::tanh(beta_h);
    const double d_plus = t + m_inf;
    const double d_minus = t - m_inf;
    const double rho = ev.minus / ev.plus;
    const auto n = static_cast<double>(config.sites);
    const double rho_n1 = std::pow(rho, n - 1.0);
    const double m = (d_plus + d_minus * rho_n1) / (ev.plus * (1.0 + rho_n1 * rho));
    return {std::clamp(m, -1.0, 1.0), 0.0, Method::transfer_matrix, 0};
}

/// Single-spin-flip Metropolis chain on a periodic ring. One sweep is
/// `sites` proposals at uniformly drawn sites.
///
/// The generator is a 64-bit Mersenne twister seeded from (seed, stream)
/// through std::seed_seq, so independent streams can be derived for
/// parallel chains. Bit reproducible for a fixed (seed, stream).
class MetropolisChain {
public:
    MetropolisChain(const ChainConfig& config, std::uint64_t seed, std::uint64_t stream = 0)
        : config_(config), spins_(config.sites), rng_(make_engine(seed, stream)) {
        for (auto& s : spins_) {
            s = (rng_() >> 63) ? 1 : -1;
            total_ += s;
        }
        const double beta = config.beta.value();
        for (int si = 0; si < 2; ++si)
            for (int ni = 0; ni < 3; ++ni) {
                const int s = 2 * si - 1;
                const int neighbours = 2 * ni - 2;
                const double delta = 2.0 * s * (config.ising.J * neighbours + config.ising.h);
                accept_[si][ni] = std::min(1.0, std::exp(-beta * delta));
            }
    }

    void sweep() {
        const std::size_t n = spins_.size();
        for (std::size_t step = 0; step < n; ++step) {
            const std::size_t i = uniform_index(n);
            const int s = spins_[i];
            const int neighbours = spins_[i == 0 ? n - 1 : i - 1] + spins_[i + 1 == n ? 0 : i + 1];
            const double p = accept_[(s + 1) / 2][(neighbours + 2) / 2];
            if (p >= 1.0 || uniform01() < p) {
                spins_[i] = static_cast<std::int8_t>(-s);
                total_ -= 2 * s;
            }
        }
    }

    double magnetization() const { return static_cast<double>(total_) / static_cast<double>(spins_.size()); }

    const std::vector<std::int8_t>& spins() const { return spins_; }

private:
    static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        return std::mt19937_64(seq);
    }

    double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    // Multiply-high: 64-bit draw scaled onto [0, n).
    std::size_t uniform_index(std::size_t n) {
        __extension__ using wide = unsigned __int128;
        return static_cast<std::size_t>((static_cast<wide>(rng_()) * n) >> 64);
    }

    ChainConfig config_;
    std::vector<std::int8_t> spins_;
    std::mt19937_64 rng_;
    std::int64_t total_ = 0;
    double accept_[2][3]{};
};

inline constexpr std::size_t default_batches = 50;

inline std::size_t default_burn_in(std::size_t sweeps) { return sweeps / 10; }

namespace detail {

inline MagnetizationEstimate run_chain(const ChainConfig& config, std::size_t sweeps, std::size_t burn_in,
                                       std::uint64_t seed, std::uint64_t stream, std::size_t batches) {
    if (sweeps < 1)
        throw DomainError("Metropolis needs at least one measured sweep");
    MetropolisChain chain(config, seed, stream);
    for (std::size_t s = 0; s < burn_in; ++s)
        chain.sweep();

    // Batch b holds sweeps [b*S/B, (b+1)*S/B).
    const std::size_t nb = std::max<std::size_t>(1, std::min(batches, sweeps));
    std::vector<double> batch_mean(nb, 0.0);
    double total = 0.0;
    std::size_t done = 0;
    for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t end = (b + 1) * sweeps / nb;
        double acc = 0.0;
        const std::size_t begin = done;
        for (; done < end; ++done) {
            chain.sweep();
            acc += chain.magnetization();
        }
        total += acc;
        batch_mean[b] = acc / static_cast<double>(end - begin);
    }
    const double mean = total / static_cast<double>(sweeps);
    double se = std::numeric_limits<double>::infinity();
    if (nb >= 2) {
        double ss = 0.0;
        for (double x : batch_mean)
            ss += (x - mean) * (x - mean);
        se = std::sqrt(ss / static_cast<double>(nb - 1) / static_cast<double>(nb));
    }
    return {std::clamp(mean, -1.0, 1.0), se, Method::monte_carlo, sweeps};
}

} // namespace detail

/// Metropolis estimate of <m> over `sweeps` measured sweeps after `burn_in`
/// discarded ones, one sample per sweep. The standard error comes from
/// batch means (min(batches, sweeps) batches); it is infinite when fewer
/// than two batches exist.
inline MagnetizationEstimate metropolis_m(const ChainConfig& config, std::size_t sweeps, std::size_t burn_in,
                                          std::uint64_t seed, std::size_t batches = default_batches) {
    return detail::run_chain(config, sweeps, burn_in, seed, 0, batches);
}

/// Independent chains on streams 0..chains-1 of `seed`, run concurrently.
/// The merged value is the mean of the chain means; results do not depend on
/// scheduling.
inline MagnetizationEstimate metropolis_ensemble(const ChainConfig& config, std::size_t sweeps, std::size_t burn_in,
                                                 std::uint64_t seed, std::size_t chains,
                                                 std::size_t batches = default_batches) {
    if (chains < 1)
        throw DomainError("ensemble needs at least one chain");
    if (sweeps < 1)
        throw DomainError("Metropolis needs at least one measured sweep");
    std::vector<MagnetizationEstimate> results(chains);
    {
        std::vector<std::jthread> workers;
        workers.reserve(chains);
        for (std::size_t c = 0; c < chains; ++c)
            workers.emplace_back([&, c] { results[c] = detail::run_chain(config, sweeps, burn_in, seed, c, batches); });
    }
    double value = 0.0, var = 0.0;
    for (const auto& r : results) {
        value += r.value;
        var += r.std_error * r.std_error;
    }
    const auto k = static_cast<double>(chains);
    return {value / k, std::sqrt(var) / k, Method::monte_carlo, sweeps * chains};
}

struct ConvergenceRow {
    std::size_t sites;
    double m_finite;
    double gap; // |m_N - m_inf|
};

/// Exact finite-chain magnetization against the infinite-chain value, one
/// row per requested size, sorted by size.
inline std::vector<ConvergenceRow> convergence_report(const IsingParams& ising, Beta beta,
                                                      std::vector<std::size_t> sizes) {
    if (sizes.empty())
        throw DomainError("convergence report needs at least one chain size");
    std::sort(sizes.begin(), sizes.end());
    const double m_inf = magnetization_analytic(ising, beta);
    std::vector<ConvergenceRow> rows;
    rows.reserve(sizes.size());
    for (auto n : sizes) {
        const double m = transfer_matrix_m(ChainConfig(n, ising, beta)).value;
        rows.push_back({n, m, std::abs(m - m_inf)});
    }
    return rows;
}

} // namespace qpgg
