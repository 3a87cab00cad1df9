#ifndef CASCADE_TRAJECTORY_HPP
#define CASCADE_TRAJECTORY_HPP

// Quantum-jump (Monte Carlo wave-function) unraveling of the pumped ladder
// atom. Shares no numerics with the master-equation path: it builds the
// non-Hermitian effective Hamiltonian directly and works on 3-component
// state vectors.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <cascade/correlations.hpp>
#include <cascade/density_matrix.hpp>
#include <cascade/parallel.hpp>
#include <cascade/params.hpp>

namespace cascade {

/// Incoherent process moving population between bare levels (zero based).
struct JumpChannel
{
    int from = 0;
    int to = 0;
    /// full rate, e.g. 2*gamma21 for |2> -> |1>
    double rate = 0.0;
};

struct TrajectoryEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_trajectories = 0;
    std::string quantity;
};

struct TrajectoryOptions
{
    double dt = 1e-3;
    unsigned threads = 0;
    /// burn-in before stationary averages start
    double equilibration = 40.0;
    /// length of the time average used for stationary populations
    double averaging_window = 20.0;
};

struct PopulationEstimates
{
    std::vector<double> times;
    /// populations[level][time index]
    std::array<std::vector<TrajectoryEstimate>, 3> populations;
};

struct StationaryEstimates
{
    std::array<TrajectoryEstimate, 3> populations;
    std::vector<JumpChannel> channels;
    /// jumps per channel summed over all trajectories during the window
    std::vector<std::uint64_t> jump_counts;
    /// total observation time (window length x trajectories)
    double observation_time = 0.0;
};

struct G2Estimates
{
    std::vector<double> taus;
    std::vector<TrajectoryEstimate> values;
    /// stationary population of the emitting level
    TrajectoryEstimate stationary;
    /// the full equilibrium run used for the normalization
    StationaryEstimates equilibrium;
};

inline std::vector<JumpChannel> jump_channels(const SystemParams& p)
{
    return {
        {1, 0, 2.0 * p.gamma21},
        {2, 1, 2.0 * p.gamma32},
        {0, 1, 2.0 * p.lambda12},
        {0, 2, 2.0 * p.lambda13},
    };
}

namespace mcwf {

using c64 = std::complex<double>;
using Ket = std::array<c64, 3>;
using Op = std::array<std::array<c64, 3>, 3>;

inline Op multiply(const Op& a, const Op& b)
{
    Op r{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline Ket act(const Op& a, const Ket& v)
{
    return {a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
            a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
            a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2]};
}

inline double norm2(const Ket& v)
{
    return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
}

/// H_eff = H - (i/2) sum_k rate_k |from_k><from_k| in the laser frame.
inline Op effective_hamiltonian(const SystemParams& p)
{
    Op h{};
    h[1][1] = -p.delta_p;
    h[2][2] = -p.delta_p - p.delta_c;
    h[0][1] = h[1][0] = -p.omega_p;
    h[1][2] = h[2][1] = -p.omega_c;
    for (const auto& ch : jump_channels(p))
        h[ch.from][ch.from] -= c64(0.0, 0.5 * ch.rate);
    return h;
}

/// exp(-i H t) by a Taylor series on a scaled argument, then squaring.
inline Op evolution_operator(const Op& h, double t)
{
    double norm = 0.0;
    for (const auto& row : h)
        norm = std::max(norm, std::abs(row[0]) + std::abs(row[1]) + std::abs(row[2]));
    int squarings = 0;
    double scale = std::abs(t) * norm;
    while (scale > 0.25) {
        scale *= 0.5;
        ++squarings;
    }
    const c64 factor = c64(0.0, -t) * std::ldexp(1.0, -squarings);
    Op a{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = factor * h[i][j];

    Op result{};
    Op term{};
    for (int i = 0; i < 3; ++i) result[i][i] = term[i][i] = 1.0;
    for (int k = 1; k <= 30; ++k) {
        term = multiply(term, a);
        double mag = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                term[i][j] /= static_cast<double>(k);
                result[i][j] += term[i][j];
                mag = std::max(mag, std::abs(term[i][j]));
            }
        if (mag < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = multiply(result, result);
    return result;
}

/// Per-trajectory uniform deviates in (0, 1], stream fixed by (seed, stream).
class Rng
{
public:
    Rng(std::uint64_t seed, std::uint64_t stream)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream),
                          static_cast<std::uint32_t>(stream >> 32)};
        m_engine.seed(seq);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_low() { return 1.0 - uniform(); }

private:
    std::mt19937_64 m_engine;
};

/**
 * A single quantum-jump trajectory. The unnormalized state decays under
 * H_eff until its squared norm reaches the current threshold, at which
 * point a jump channel is drawn with probability proportional to
 * rate * |amplitude of the departure level|^2.
 */
class Trajectory
{
public:
    Trajectory(const SystemParams& p, double dt, int initial_level, Rng rng)
        : m_h(effective_hamiltonian(p)), m_channels(jump_channels(p)),
          m_dt(dt), m_step(evolution_operator(m_h, dt)), m_rng(rng),
          m_jumps(m_channels.size(), 0)
    {
        m_psi = Ket{};
        m_psi[initial_level] = 1.0;
        m_threshold = m_rng.uniform_open_low();
    }

    double time() const noexcept { return m_time; }

    double population(int level) const { return std::norm(m_psi[level]) / norm2(m_psi); }

    const std::vector<std::uint64_t>& jump_counts() const noexcept { return m_jumps; }

    void reset_jump_counts() { std::fill(m_jumps.begin(), m_jumps.end(), 0); }

    /// Advances by one fixed step dt.
    void step() { advance(m_step, m_dt); }

    /// Advances to absolute time t_target with full steps and one partial step.
    void advance_to(double t_target)
    {
        const double span = t_target - m_time;
        if (span <= 0.0) return;
        const auto full = static_cast<long>(std::floor(span / m_dt + 1e-9));
        for (long k = 0; k < full; ++k) step();
        const double rest = t_target - m_time;
        if (rest > 1e-12) advance(evolution_operator(m_h, rest), rest);
        m_time = t_target;
    }

private:
    void advance(const Op& prop, double h)
    {
        double remaining = h;
        double chunk = h;
        int refinements = 0;
        while (remaining > 1e-15) {
            const Op* op = &prop;
            Op sub;
            if (chunk != m_dt) {
                sub = evolution_operator(m_h, chunk);
                op = &sub;
            }
            const double n0 = norm2(m_psi);
            const Ket next = act(*op, m_psi);
            const double n1 = norm2(next);
            if (!std::isfinite(n1) || n1 < 1e-280) {
                if (++refinements > 20)
                    throw Error("quantum-jump trajectory: norm underflow between jumps");
                chunk *= 0.5;
                continue;
            }
            refinements = 0;
            if (n1 > m_threshold) {
                m_psi = next;
                m_time += chunk;
                remaining -= chunk;
                chunk = remaining;
                continue;
            }
            // locate the jump by first-order interpolation of the norm
            const double theta = std::clamp((n0 - m_threshold) / (n0 - n1), 0.0, 1.0);
            const double t_jump = theta * chunk;
            if (t_jump > 0.0) m_psi = act(evolution_operator(m_h, t_jump), m_psi);
            jump();
            m_time += t_jump;
            remaining -= t_jump;
            chunk = remaining;
        }
    }

    void jump()
    {
        double total = 0.0;
        std::array<double, 4> weight{};
        for (std::size_t k = 0; k < m_channels.size(); ++k) {
            weight[k] = m_channels[k].rate * std::norm(m_psi[m_channels[k].from]);
            total += weight[k];
        }
        if (!(total > 0.0))
            throw Error("quantum-jump trajectory: jump requested with no active channel");
        const double pick = m_rng.uniform() * total;
        std::size_t chosen = m_channels.size() - 1;
        double acc = 0.0;
        for (std::size_t k = 0; k < m_channels.size(); ++k) {
            acc += weight[k];
            if (pick < acc && weight[k] > 0.0) {
                chosen = k;
                break;
            }
        }
        ++m_jumps[chosen];
        m_psi = Ket{};
        m_psi[m_channels[chosen].to] = 1.0;
        m_threshold = m_rng.uniform_open_low();
    }

    Op m_h;
    std::vector<JumpChannel> m_channels;
    double m_dt;
    Op m_step;
    Rng m_rng;
    std::vector<std::uint64_t> m_jumps;
    Ket m_psi{};
    double m_threshold = 1.0;
    double m_time = 0.0;
};

/// Neumaier-compensated mean and standard error of the mean.
inline TrajectoryEstimate estimate(const std::vector<double>& samples,
                                   std::string quantity)
{
    const std::size_t n = samples.size();
    double sum = 0.0, comp = 0.0;
    for (double x : samples) {
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    const double mean = (sum + comp) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double se =
        n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    return {mean, se, n, std::move(quantity)};
}

inline int initial_level(const std::array<double, 3>& cumulative, Rng& rng)
{
    const double u = rng.uniform();
    if (u < cumulative[0]) return 0;
    if (u < cumulative[1]) return 1;
    return 2;
}

inline std::array<double, 3> diagonal_cdf(const DensityMatrix& rho0)
{
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && std::abs(rho0(i, j)) > 1e-14)
                throw std::invalid_argument(
                    "quantum-jump oracle: initial state must be diagonal");
    const double p1 = rho0.population(0), p2 = rho0.population(1);
    return {p1, p1 + p2, 1.0};
}

// Stream tags keep the stationary and conditional ensembles independent.
inline constexpr std::uint64_t stream_conditional = 0;
inline constexpr std::uint64_t stream_stationary = 1ull << 40;

} // namespace mcwf

inline void check_trajectory_inputs(const SystemParams& params, std::size_t n,
                                    const TrajectoryOptions& opts)
{
    validate(params);
    if (n < 100)
        throw std::invalid_argument("quantum-jump oracle: need at least 100 trajectories");
    if (!(opts.dt > 0.0))
        throw std::invalid_argument("quantum-jump oracle: dt must be positive");
}

namespace detail {

using PopulationSamples = std::array<std::vector<std::vector<double>>, 3>;

// samples[level][time index][trajectory]
inline PopulationSamples sample_populations(const SystemParams& params,
                                            const DensityMatrix& rho0,
                                            const std::vector<double>& sample_times,
                                            std::size_t n, std::uint64_t seed,
                                            const TrajectoryOptions& opts)
{
    for (std::size_t k = 0; k < sample_times.size(); ++k)
        if (sample_times[k] < 0.0 || (k > 0 && !(sample_times[k] > sample_times[k - 1])))
            throw std::invalid_argument(
                "quantum-jump oracle: sample times must be non-negative and increasing");
    const auto cdf = mcwf::diagonal_cdf(rho0);
    const std::size_t m = sample_times.size();

    PopulationSamples samples;
    for (auto& s : samples) s.assign(m, std::vector<double>(n, 0.0));

    parallel_for(n, opts.threads, [&](std::size_t k) {
        mcwf::Rng rng(seed, mcwf::stream_conditional + k);
        const int start = mcwf::initial_level(cdf, rng);
        mcwf::Trajectory traj(params, opts.dt, start, rng);
        for (std::size_t s = 0; s < m; ++s) {
            traj.advance_to(sample_times[s]);
            for (int level = 0; level < 3; ++level)
                samples[level][s][k] = traj.population(level);
        }
    });
    return samples;
}

inline std::string population_label(int level, const std::string& when)
{
    return "rho" + std::to_string(level + 1) + std::to_string(level + 1) + "(" + when + ")";
}

} // namespace detail

/**
 * Ensemble-averaged level populations at the requested sample times for
 * trajectories started from the (diagonal) initial state.
 */
inline PopulationEstimates run_trajectories(const SystemParams& params,
                                            const DensityMatrix& rho0,
                                            const std::vector<double>& sample_times,
                                            std::size_t n, std::uint64_t seed,
                                            const TrajectoryOptions& opts = {})
{
    check_trajectory_inputs(params, n, opts);
    const auto samples =
        detail::sample_populations(params, rho0, sample_times, n, seed, opts);

    PopulationEstimates out;
    out.times = sample_times;
    for (int level = 0; level < 3; ++level) {
        out.populations[level].reserve(sample_times.size());
        for (std::size_t s = 0; s < sample_times.size(); ++s)
            out.populations[level].push_back(mcwf::estimate(
                samples[level][s],
                detail::population_label(level, "t=" + std::to_string(sample_times[s]))));
    }
    return out;
}

/// Samples every 0.1/gamma21 from 0 to t_end.
inline PopulationEstimates run_trajectories(const SystemParams& params,
                                            const DensityMatrix& rho0, double t_end,
                                            std::size_t n, std::uint64_t seed,
                                            const TrajectoryOptions& opts = {})
{
    std::vector<double> times;
    const auto count = static_cast<std::size_t>(std::floor(t_end / 0.1 + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) times.push_back(0.1 * static_cast<double>(k));
    if (t_end - times.back() > 1e-12) times.push_back(t_end);
    return run_trajectories(params, rho0, times, n, seed, opts);
}

namespace detail {

// Per-trajectory time averages over the stationary window; also returns
// the per-trajectory samples so g2 can pair them for the jackknife.
inline StationaryEstimates stationary_run(const SystemParams& params, std::size_t n,
                                          std::uint64_t seed,
                                          const TrajectoryOptions& opts,
                                          std::array<std::vector<double>, 3>& samples)
{
    const auto channels = jump_channels(params);
    std::vector<std::vector<std::uint64_t>> jumps(n);
    for (auto& s : samples) s.assign(n, 0.0);

    const auto window_steps =
        static_cast<long>(std::llround(opts.averaging_window / opts.dt));
    if (window_steps < 1)
        throw std::invalid_argument("stationary run: averaging window shorter than dt");

    parallel_for(n, opts.threads, [&](std::size_t k) {
        mcwf::Rng rng(seed, mcwf::stream_stationary + k);
        mcwf::Trajectory traj(params, opts.dt, 0, rng);
        traj.advance_to(opts.equilibration);
        traj.reset_jump_counts();
        std::array<double, 3> acc{};
        for (long s = 0; s < window_steps; ++s) {
            traj.step();
            for (int level = 0; level < 3; ++level) acc[level] += traj.population(level);
        }
        for (int level = 0; level < 3; ++level)
            samples[level][k] = acc[level] / static_cast<double>(window_steps);
        jumps[k] = traj.jump_counts();
    });

    StationaryEstimates out;
    out.channels = channels;
    out.jump_counts.assign(channels.size(), 0);
    for (const auto& j : jumps)
        for (std::size_t c = 0; c < channels.size(); ++c) out.jump_counts[c] += j[c];
    out.observation_time =
        static_cast<double>(window_steps) * opts.dt * static_cast<double>(n);
    for (int level = 0; level < 3; ++level)
        out.populations[level] = mcwf::estimate(
            samples[level], detail::population_label(level, "stationary"));
    return out;
}

} // namespace detail

/**
 * Stationary populations from n independent trajectories started in |1>,
 * equilibrated for opts.equilibration and time averaged over
 * opts.averaging_window. Jumps per channel during the window are counted.
 */
inline StationaryEstimates stationary_populations(const SystemParams& params,
                                                  std::size_t n, std::uint64_t seed,
                                                  const TrajectoryOptions& opts = {})
{
    check_trajectory_inputs(params, n, opts);
    std::array<std::vector<double>, 3> samples;
    return detail::stationary_run(params, n, seed, opts, samples);
}

/**
 * G(tau) = rho_jj(tau | reset) / rho_jj,ss estimated from two independent
 * trajectory ensembles of equal size; standard errors by leave-one-out
 * jackknife over paired trajectories.
 */
inline G2Estimates g2_from_trajectories(const SystemParams& params, Transition transition,
                                        const std::vector<double>& taus, std::size_t n,
                                        std::uint64_t seed,
                                        const TrajectoryOptions& opts = {})
{
    check_trajectory_inputs(params, n, opts);
    const int level = emitting_level(transition);

    std::array<std::vector<double>, 3> stationary_samples;
    const StationaryEstimates stationary =
        detail::stationary_run(params, n, seed, opts, stationary_samples);
    const std::vector<double>& b = stationary_samples[level];
    const double b_mean = stationary.populations[level].mean;
    if (!(b_mean > 1e-10))
        throw NormalizationError("g2_from_trajectories: stationary population of the "
                                 "emitting level vanishes for the " +
                                 std::string(to_string(transition)) + " transition");

    const auto cond = detail::sample_populations(params, reset_state(transition),
                                                 taus, n, seed, opts);
    const auto& a = cond[level];

    double b_sum = 0.0;
    for (double x : b) b_sum += x;
    const double nn = static_cast<double>(n);

    G2Estimates out;
    out.taus = taus;
    out.stationary = stationary.populations[level];
    out.equilibrium = stationary;
    for (std::size_t s = 0; s < taus.size(); ++s) {
        double a_sum = 0.0;
        for (double x : a[s]) a_sum += x;
        const double g = (a_sum / nn) / (b_sum / nn);
        std::vector<double> loo(n);
        double loo_mean = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            loo[k] = (a_sum - a[s][k]) / (b_sum - b[k]);
            loo_mean += loo[k];
        }
        loo_mean /= nn;
        double ss = 0.0;
        for (double x : loo) ss += (x - loo_mean) * (x - loo_mean);
        const double se = std::sqrt((nn - 1.0) / nn * ss);
        out.values.push_back({g, se, n,
                              "G(" + std::string(to_string(transition)) +
                                  ", tau=" + std::to_string(taus[s]) + ")"});
    }
    return out;
}

} // namespace cascade

#endif
