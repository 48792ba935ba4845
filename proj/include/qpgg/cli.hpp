#pragma once

// Command-line front end: matrix, nash, sweep, verify, meanfield-n.
// Exit codes: 0 success, 2 usage or domain error, 3 I/O error,
// 4 verification failure.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qpgg/error.hpp"
#include "qpgg/ising_map.hpp"
#include "qpgg/ising_oracle.hpp"
#include "qpgg/nash.hpp"
#include "qpgg/quantum_game.hpp"

namespace qpgg::cli {

enum ExitCode : int { ok = 0, usage_error = 2, io_error = 3, verification_failed = 4 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// %.17g, enough digits to round-trip any double.
inline std::string format_exact(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
    return buf;
}

inline std::string format_short(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << (x + 0.0);
    return os.str();
}

enum class SweepVariable { gamma, beta, punishment };

struct SweepSpec {
    SweepVariable variable = SweepVariable::gamma;
    double start = 0.0;
    double stop = half_pi;
    std::size_t steps = 101;
    double reward = 1.0;
    double cost = 4.0;
    double punishment = 0.0;
    double beta = 1.0;
    double gamma = half_pi; // held fixed unless it is the swept variable
    SubgameKind kind = SubgameKind::quantum_vs_freeride;
};

struct SweepPoint {
    double x;
    double m;
};

/// Magnetization along a uniform grid of `steps` points from start to stop.
/// Gamma ranges are clipped to [0, pi/2].
inline std::vector<SweepPoint> run_sweep(SweepSpec spec) {
    if (spec.steps < 2)
        throw DomainError("sweep needs at least 2 steps");
    if (spec.variable == SweepVariable::gamma) {
        spec.start = std::clamp(spec.start, 0.0, half_pi);
        spec.stop = std::clamp(spec.stop, 0.0, half_pi);
    }
    if (!(spec.start < spec.stop))
        throw DomainError("sweep needs start < stop");

    std::vector<SweepPoint> out;
    out.reserve(spec.steps);
    const double width = spec.stop - spec.start;
    for (std::size_t i = 0; i < spec.steps; ++i) {
        const double x = i + 1 == spec.steps
                             ? spec.stop
                             : spec.start + width * static_cast<double>(i) / static_cast<double>(spec.steps - 1);
        double gamma = spec.gamma, beta = spec.beta, p = spec.punishment;
        switch (spec.variable) {
        case SweepVariable::gamma:
            gamma = x;
            break;
        case SweepVariable::beta:
            beta = x;
            break;
        case SweepVariable::punishment:
            p = x;
            break;
        }
        const GameParams g(spec.reward, spec.cost, p);
        const Beta b(beta);
        double m = 0.0;
        if (spec.kind == SubgameKind::quantum_vs_freeride)
            m = magnetization_qvf(gamma, g, b);
        else
            m = magnetization_analytic(subgame(SubgameKind::quantum_vs_provide, gamma, g).ising, b);
        out.push_back({x, m});
    }
    return out;
}

inline std::string sweep_csv(const std::vector<SweepPoint>& points) {
    std::string s = "x,m\n";
    for (const auto& pt : points)
        s += format_exact(pt.x) + "," + format_exact(pt.m) + "\n";
    return s;
}

/// Write via a sibling temporary file and rename, so readers never see a
/// partially written file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open " + tmp.string() + " for writing");
        f << contents;
        f.flush();
        if (!f)
            throw IoError("failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

inline void print_matrix(const Bimatrix& m, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        out << "row,col,row_payoff,col_payoff\n";
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                out << m.row_labels()[i] << ',' << m.col_labels()[j] << ',' << format_exact(m(i, j).row) << ','
                    << format_exact(m(i, j).col) << '\n';
        return;
    }
    constexpr int width = 26;
    out << std::left << std::setw(12) << "";
    for (const auto& l : m.col_labels())
        out << std::setw(width) << l;
    out << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << std::setw(12) << m.row_labels()[i];
        for (std::size_t j = 0; j < m.cols(); ++j)
            out << std::setw(width) << (format_short(m(i, j).row) + ", " + format_short(m(i, j).col));
        out << '\n';
    }
    out << std::right;
}

namespace detail {

struct Options {
    double r = 1.0, c = 4.0, p = 0.0;
    double beta = 1.0;
    double gamma = half_pi;
    std::string format = "table";

    std::string var = "gamma";
    std::optional<double> start, stop;
    std::size_t steps = 101;
    std::string kind = "qvf";
    std::string output;

    double J = 1.5, h = 0.3;
    std::size_t sites = 23;
    std::size_t sweeps = 100000;
    std::optional<std::size_t> burn_in;
    std::uint64_t seed = 42;
    std::size_t chains = 1;
    double alpha = 1e-6;
};

inline void add_game_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--r", o.r, "reward")->capture_default_str();
    cmd->add_option("--c", o.c, "cost")->capture_default_str();
    cmd->add_option("--p", o.p, "punishment")->capture_default_str();
}

inline void add_ising_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--J", o.J, "spin coupling J (energy units)")->capture_default_str();
    cmd->add_option("--h", o.h, "external field h (energy units)")->capture_default_str();
    cmd->add_option("--beta", o.beta, "inverse temperature")->capture_default_str();
}

inline int cmd_matrix(const Options& o, std::ostream& out) {
    print_matrix(quantum_matrix(o.gamma, GameParams(o.r, o.c, o.p)), o.format, out);
    return ok;
}

inline int cmd_nash(const Options& o, std::ostream& out) {
    const auto eq = pure_nash(quantum_matrix(o.gamma, GameParams(o.r, o.c, o.p)));
    if (eq.empty())
        out << "no pure-strategy equilibrium\n";
    for (const auto& e : eq)
        out << "(" << e.row_strategy << ", " << e.col_strategy << ")  payoffs (" << format_short(e.payoffs.row)
            << ", " << format_short(e.payoffs.col) << ")  " << (e.strict ? "strict" : "non-strict") << '\n';
    return ok;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
    SweepSpec spec;
    if (o.var == "gamma")
        spec.variable = SweepVariable::gamma;
    else if (o.var == "beta")
        spec.variable = SweepVariable::beta;
    else if (o.var == "p")
        spec.variable = SweepVariable::punishment;
    else
        throw DomainError("--var must be gamma, beta or p");
    if (spec.variable != SweepVariable::gamma && (!o.start || !o.stop))
        throw DomainError("--start and --stop are required unless sweeping gamma");
    spec.start = o.start.value_or(0.0);
    spec.stop = o.stop.value_or(half_pi);
    spec.steps = o.steps;
    spec.reward = o.r;
    spec.cost = o.c;
    spec.punishment = o.p;
    spec.beta = o.beta;
    spec.gamma = o.gamma;
    if (o.kind == "qvf")
        spec.kind = SubgameKind::quantum_vs_freeride;
    else if (o.kind == "qvp")
        spec.kind = SubgameKind::quantum_vs_provide;
    else
        throw DomainError("--subgame must be qvf or qvp");

    const std::string csv = sweep_csv(run_sweep(spec));
    if (o.output.empty())
        out << csv;
    else
        write_file_atomic(o.output, csv);
    return ok;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    const IsingParams ising(o.J, o.h);
    const Beta beta(o.beta);
    const ChainConfig config(o.sites, ising, beta);
    const std::size_t burn_in = o.burn_in.value_or(default_burn_in(o.sweeps));

    const double m_inf = magnetization_analytic(ising, beta);
    const auto exact = transfer_matrix_m(config);
    const auto mc = o.chains == 1 ? metropolis_m(config, o.sweeps, burn_in, o.seed)
                                  : metropolis_ensemble(config, o.sweeps, burn_in, o.seed, o.chains);

    const double gap = std::abs(exact.value - m_inf);
    const double dev = std::abs(mc.value - exact.value);
    const bool finite_size_ok = gap <= 1e-4;
    const bool mc_ok = dev <= 3.0 * mc.std_error;

    const auto label = [&](const std::string& text) -> std::ostream& {
        return out << std::left << std::setw(28) << text << "m = ";
    };
    const std::string n_sites = "(N=" + std::to_string(o.sites) + ")";
    label("analytic (infinite chain)") << format_exact(m_inf) << '\n';
    label("transfer matrix " + n_sites) << format_exact(exact.value) << '\n';
    label("metropolis " + n_sites) << format_exact(mc.value) << " +- " << format_exact(mc.std_error) << "  ("
                                   << mc.samples << " sweeps)\n";
    try {
        const double n = mean_field_N(ising, beta, 1e-6);
        out << "finite-size scale N(alpha=1e-6) = " << format_short(n) << '\n';
    } catch (const DegenerateRegimeError& e) {
        err << "warning: " << e.what() << '\n';
    }
    out << "|m_N - m_inf| = " << format_short(gap) << " <= 1e-4: " << (finite_size_ok ? "PASS" : "FAIL") << '\n';
    out << "|m_MC - m_N| = " << format_short(dev) << " <= 3 sigma: " << (mc_ok ? "PASS" : "FAIL") << '\n';
    return finite_size_ok && mc_ok ? ok : verification_failed;
}

inline int cmd_meanfield_n(const Options& o, std::ostream& out) {
    const double n = mean_field_N(IsingParams(o.J, o.h), Beta(o.beta), o.alpha);
    const double up = std::ceil(n);
    out << "N = " << format_exact(n) << '\n';
    out << "ceil(N) = " << format_short(up) << '\n';
    if (n < 2.0)
        out << "note: below chain minimum (2 sites); any chain length satisfies alpha\n";
    return ok;
}

} // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    detail::Options o;
    CLI::App app{"Quantum public goods game in the thermodynamic limit", "qpgg"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    auto* matrix = app.add_subcommand("matrix", "3x3 payoff matrix with the quantum strategy");
    detail::add_game_flags(matrix, o);
    matrix->add_option("--gamma", o.gamma, "entanglement in [0, pi/2], radians")->capture_default_str();
    matrix->add_option("--format", o.format, "table or csv")
        ->check(CLI::IsMember({"table", "csv"}))
        ->capture_default_str();

    auto* nash = app.add_subcommand("nash", "pure-strategy equilibria of the 3x3 game");
    detail::add_game_flags(nash, o);
    nash->add_option("--gamma", o.gamma, "entanglement in [0, pi/2], radians")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "magnetization sweep as CSV (x,m)");
    detail::add_game_flags(sweep, o);
    sweep->add_option("--beta", o.beta, "inverse temperature")->capture_default_str();
    sweep->add_option("--gamma", o.gamma, "fixed entanglement when not sweeping gamma")->capture_default_str();
    sweep->add_option("--var", o.var, "gamma, beta or p")->capture_default_str();
    sweep->add_option("--start", o.start, "first grid value (gamma default 0)");
    sweep->add_option("--stop", o.stop, "last grid value (gamma default pi/2)");
    sweep->add_option("--steps", o.steps, "grid points")->capture_default_str();
    sweep->add_option("--subgame", o.kind, "qvf (quantum vs free ride) or qvp (quantum vs provide)")
        ->capture_default_str();
    sweep->add_option("--output", o.output, "CSV path; stdout when omitted");

    auto* verify = app.add_subcommand("verify", "analytic vs transfer matrix vs Metropolis");
    detail::add_ising_flags(verify, o);
    verify->add_option("--sites", o.sites, "chain length")->capture_default_str();
    verify->add_option("--sweeps", o.sweeps, "measured Metropolis sweeps")->capture_default_str();
    verify->add_option("--burn-in", o.burn_in, "discarded sweeps (default 10% of --sweeps)");
    verify->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    verify->add_option("--chains", o.chains, "independent chains run in parallel")->capture_default_str();

    auto* meanfield = app.add_subcommand("meanfield-n", "chain length where the finite-size term drops below alpha");
    detail::add_ising_flags(meanfield, o);
    meanfield->add_option("--alpha", o.alpha, "neglect threshold in (0,1)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
            err << sub->help();
        return usage_error;
    }

    try {
        if (matrix->parsed())
            return detail::cmd_matrix(o, out);
        if (nash->parsed())
            return detail::cmd_nash(o, out);
        if (sweep->parsed())
            return detail::cmd_sweep(o, out);
        if (verify->parsed())
            return detail::cmd_verify(o, out, err);
        return detail::cmd_meanfield_n(o, out);
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return io_error;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
}

} // namespace qpgg::cli
