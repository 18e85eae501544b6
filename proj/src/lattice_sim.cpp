#include "cgmldp/lattice_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <functional>
#include <limits>
#include <thread>

#include "cgmldp/errors.hpp"
#include "cgmldp/rng.hpp"

namespace cgmldp {

namespace {

// Stream layout: draws are keyed (seed, stream, index) with the replicate
// folded into the stream id, so any cell of any replicate is addressable
// directly.
namespace streams {
constexpr std::uint64_t kEnvA = 1;
constexpr std::uint64_t kEnvB = 2;
constexpr std::uint64_t kBulk = 3;
constexpr std::uint64_t kRow0 = 4;
constexpr std::uint64_t kCol0 = 5;
}  // namespace streams

std::uint64_t stream_id(std::uint64_t base, std::uint64_t replicate) {
    return base | (replicate << 8);
}

std::uint64_t cell_index(int i, int j) {
    return (std::uint64_t(std::uint32_t(i)) << 32) | std::uint32_t(j);
}

int mc_dim(double scale, int n) {
    const int d = int(std::floor(double(n) * scale));
    if (d < 1) throw DomainError("simulated rectangle has an empty side; increase n");
    return d;
}

}  // namespace

const char* to_string(SampleMode m) {
    return m == SampleMode::Quenched ? "quenched" : "annealed";
}

double law_quantile(const ParameterLaw& law, double u) {
    if (!(u > 0.0) || u > 1.0) throw DomainError("quantile requires u in (0, 1]");
    switch (law.kind()) {
        case LawKind::PointMass:
            return law.atoms()[0].x;
        case LawKind::FiniteDiscrete: {
            double acc = 0.0;
            for (const Atom& a : law.atoms()) {
                acc += a.p;
                if (u <= acc) return a.x;
            }
            return law.atoms().back().x;
        }
        case LawKind::UniformInterval:
            return law.lo() + u * (law.hi() - law.lo());
        case LawKind::PolyInterval:
            // CDF ((x-lo)/span)^(k+1)
            return law.lo() +
                   (law.hi() - law.lo()) * std::pow(u, 1.0 / double(law.degree() + 1));
    }
    return law.ess_inf();
}

EnvSample sample_env(const ParameterLaw& alpha, const ParameterLaw& beta, int m, int n,
                     std::uint64_t seed, SampleMode mode, std::uint64_t replicate) {
    if (m < 1 || n < 1) throw DomainError("environment needs m, n >= 1");
    const std::uint64_t env_rep = mode == SampleMode::Quenched ? 0 : replicate;
    const CounterRng rng(seed);
    EnvSample env;
    env.seed = seed;
    env.mode = mode;
    env.replicate = replicate;
    env.a.resize(m);
    env.b.resize(n);
    for (int i = 0; i < m; ++i)
        env.a[i] = law_quantile(alpha, rng.uniform(stream_id(streams::kEnvA, env_rep), i + 1));
    for (int j = 0; j < n; ++j)
        env.b[j] = law_quantile(beta, rng.uniform(stream_id(streams::kEnvB, env_rep), j + 1));
    return env;
}

WeightGrid sample_weights(const EnvSample& env) {
    const int m = int(env.a.size()), n = int(env.b.size());
    const CounterRng rng(env.seed);
    const std::uint64_t bulk_stream = stream_id(streams::kBulk, env.replicate);
    WeightGrid grid;
    grid.m = m;
    grid.n = n;
    grid.bulk.resize(std::size_t(m) * n);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j)
            grid.bulk[std::size_t(i - 1) * n + (j - 1)] =
                rng.exponential(bulk_stream, cell_index(i, j), env.a[i - 1] + env.b[j - 1]);
    return grid;
}

WeightGrid sample_weights_stationary(const EnvSample& env, double z) {
    const double a_min = *std::min_element(env.a.begin(), env.a.end());
    const double b_min = *std::min_element(env.b.begin(), env.b.end());
    if (!(z > -a_min) || !(z < b_min))
        throw DomainError("stationary boundary requires z in (-min a_i, min b_j)");
    WeightGrid grid = sample_weights(env);
    grid.stationary = true;
    grid.z = z;
    const CounterRng rng(env.seed);
    grid.row0.resize(grid.m);
    grid.col0.resize(grid.n);
    for (int i = 1; i <= grid.m; ++i)
        grid.row0[i - 1] =
            rng.exponential(stream_id(streams::kRow0, env.replicate), i, env.a[i - 1] + z);
    for (int j = 1; j <= grid.n; ++j)
        grid.col0[j - 1] =
            rng.exponential(stream_id(streams::kCol0, env.replicate), j, env.b[j - 1] - z);
    return grid;
}

PassageTable stationary_passage_times(const WeightGrid& grid) {
    if (!grid.stationary)
        throw DomainError("stationary_passage_times needs a grid with boundary weights");
    return passage_times(grid);
}

PassageTable passage_times(const WeightGrid& grid) {
    PassageTable table(grid.m, grid.n, grid.stationary);
    if (grid.stationary) {
        for (int i = 1; i <= grid.m; ++i) table.at(i, 0) = table.at(i - 1, 0) + grid.row0[i - 1];
        for (int j = 1; j <= grid.n; ++j) table.at(0, j) = table.at(0, j - 1) + grid.col0[j - 1];
    }
    for (int i = 1; i <= grid.m; ++i)
        for (int j = 1; j <= grid.n; ++j)
            table.at(i, j) = std::max(table.at(i - 1, j), table.at(i, j - 1)) + grid.w(i, j);
    return table;
}

double passage_corner(const WeightGrid& grid) {
    // Roll along the shorter side.
    const bool transpose = grid.m < grid.n;
    const int rows = transpose ? grid.n : grid.m;
    const int cols = transpose ? grid.m : grid.n;
    std::vector<double> row(std::size_t(cols) + 1, 0.0);
    if (grid.stationary) {
        const std::vector<double>& edge = transpose ? grid.row0 : grid.col0;
        for (int j = 1; j <= cols; ++j) row[j] = row[j - 1] + edge[j - 1];
    }
    for (int i = 1; i <= rows; ++i) {
        if (grid.stationary) {
            const std::vector<double>& edge = transpose ? grid.col0 : grid.row0;
            row[0] += edge[i - 1];
        }
        for (int j = 1; j <= cols; ++j) {
            const double w = transpose ? grid.w(j, i) : grid.w(i, j);
            row[j] = std::max(row[j], row[j - 1]) + w;
        }
    }
    return row[cols];
}

BurkeReport burke_check(const ParameterLaw& alpha, const ParameterLaw& beta, double z, int m,
                        int n, int reps, std::uint64_t seed) {
    if (reps < 2) throw DomainError("burke_check needs reps >= 2");
    const EnvSample base_env = sample_env(alpha, beta, m, n, seed, SampleMode::Quenched);
    const double a_min = *std::min_element(base_env.a.begin(), base_env.a.end());
    const double b_min = *std::min_element(base_env.b.begin(), base_env.b.end());
    if (!(z > -a_min) || !(z < b_min))
        throw DomainError("stationary boundary requires z in (-min a_i, min b_j)");

    const int k = m / 2, l = n / 2;
    const int nv = (m - k) + (n - l);

    // Per-replicate increment vectors, filled in parallel, reduced serially.
    std::vector<std::vector<double>> inc_i(reps), inc_j(reps), inc_v(reps);
    parallel_for(std::size_t(reps), [&](std::size_t rep) {
        EnvSample env = base_env;
        env.replicate = rep;
        const PassageTable g = passage_times(sample_weights_stationary(env, z));
        std::vector<double>&vi = inc_i[rep], &vj = inc_j[rep], &vv = inc_v[rep];
        vi.resize(m);
        vj.resize(n);
        vv.reserve(nv);
        for (int i = 1; i <= m; ++i) vi[i - 1] = g.at(i, n) - g.at(i - 1, n);
        for (int j = 1; j <= n; ++j) vj[j - 1] = g.at(m, j) - g.at(m, j - 1);
        for (int i = k + 1; i <= m; ++i) vv.push_back(g.at(i, l) - g.at(i - 1, l));
        for (int j = l + 1; j <= n; ++j) vv.push_back(g.at(k, j) - g.at(k, j - 1));
    });

    BurkeReport report;
    report.z = z;
    report.m = m;
    report.n = n;
    report.reps = reps;

    auto summarize = [&](int count, const std::vector<std::vector<double>>& data,
                         std::vector<double>& mean, std::vector<double>& se) {
        mean.assign(count, 0.0);
        se.assign(count, 0.0);
        for (int r = 0; r < reps; ++r)
            for (int c = 0; c < count; ++c) mean[c] += data[r][c];
        for (int c = 0; c < count; ++c) mean[c] /= reps;
        for (int r = 0; r < reps; ++r)
            for (int c = 0; c < count; ++c) {
                const double d = data[r][c] - mean[c];
                se[c] += d * d;
            }
        for (int c = 0; c < count; ++c) se[c] = std::sqrt(se[c] / (reps - 1) / reps);
    };
    summarize(m, inc_i, report.mean_i, report.se_i);
    summarize(n, inc_j, report.mean_j, report.se_j);

    report.expected_i.resize(m);
    report.expected_j.resize(n);
    for (int i = 0; i < m; ++i) report.expected_i[i] = 1.0 / (base_env.a[i] + z);
    for (int j = 0; j < n; ++j) report.expected_j[j] = 1.0 / (base_env.b[j] - z);
    for (int i = 0; i < m; ++i)
        if (std::abs(report.mean_i[i] - report.expected_i[i]) > 4.0 * report.se_i[i])
            ++report.mean_failures;
    for (int j = 0; j < n; ++j)
        if (std::abs(report.mean_j[j] - report.expected_j[j]) > 4.0 * report.se_j[j])
            ++report.mean_failures;
    report.means_pass = report.mean_failures == 0;

    // Pairwise correlations of the family that Burke's property makes jointly
    // independent: row increments above (k, l) and column increments east of it.
    std::vector<double> mv(nv, 0.0), sv(nv, 0.0);
    for (int r = 0; r < reps; ++r)
        for (int c = 0; c < nv; ++c) mv[c] += inc_v[r][c];
    for (int c = 0; c < nv; ++c) mv[c] /= reps;
    for (int r = 0; r < reps; ++r)
        for (int c = 0; c < nv; ++c) {
            const double d = inc_v[r][c] - mv[c];
            sv[c] += d * d;
        }
    for (int c = 0; c < nv; ++c) sv[c] = std::sqrt(sv[c] / reps);
    report.corr_threshold = 4.0 / std::sqrt(double(reps));
    for (int a = 0; a < nv; ++a) {
        for (int b = a + 1; b < nv; ++b) {
            double cov = 0.0;
            for (int r = 0; r < reps; ++r)
                cov += (inc_v[r][a] - mv[a]) * (inc_v[r][b] - mv[b]);
            const double corr = cov / reps / (sv[a] * sv[b]);
            report.max_abs_corr = std::max(report.max_abs_corr, std::abs(corr));
            if (std::abs(corr) > report.corr_threshold) ++report.corr_failures;
        }
    }
    report.corr_pass = report.corr_failures == 0;
    return report;
}

TasepPositions tasep_positions(const PassageTable& table, double t) {
    if (table.stationary())
        throw DomainError("tasep_positions needs a bulk table (zero boundary)");
    if (t < 0.0) throw DomainError("tasep_positions requires t >= 0");
    TasepPositions out;
    out.time = t;
    out.position.resize(table.rows());
    out.unreliable.resize(table.rows());
    for (int i = 1; i <= table.rows(); ++i) {
        // G(i, .) is nondecreasing; binary search the last j with G <= t.
        int lo = 0, hi = table.cols();
        while (lo < hi) {
            const int mid = (lo + hi + 1) / 2;
            if (table.at(i, mid) <= t) lo = mid;
            else hi = mid - 1;
        }
        out.position[i - 1] = -i + lo;
        out.unreliable[i - 1] = (lo == table.cols()) ? 1 : 0;
    }
    return out;
}

std::vector<double> mc_corner_samples(const ParameterLaw& alpha, const ParameterLaw& beta,
                                      Direction dir, int n, int reps, std::uint64_t seed,
                                      SampleMode mode) {
    validate(dir);
    if (reps < 1) throw DomainError("need reps >= 1");
    const int m_dim = mc_dim(dir.s, n);
    const int n_dim = mc_dim(dir.t, n);
    std::vector<double> values(reps);
    parallel_for(std::size_t(reps), [&](std::size_t rep) {
        const EnvSample env = sample_env(alpha, beta, m_dim, n_dim, seed, mode, rep);
        values[rep] = passage_corner(sample_weights(env)) / double(n);
    });
    return values;
}

McEstimate mc_shape_estimate(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                             int n, int reps, std::uint64_t seed, SampleMode mode) {
    const std::vector<double> v = mc_corner_samples(alpha, beta, dir, n, reps, seed, mode);
    McEstimate est;
    for (double x : v) est.mean += x;
    est.mean /= double(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - est.mean) * (x - est.mean);
        est.stderr_of_mean = std::sqrt(ss / double(v.size() - 1) / double(v.size()));
    }
    return est;
}

McLyapunovEstimate mc_lyapunov_estimate(const ParameterLaw& alpha, const ParameterLaw& beta,
                                        Direction dir, double lambda, int n, int reps,
                                        std::uint64_t seed, SampleMode mode) {
    if (lambda < 0.0) throw DomainError("mc_lyapunov_estimate requires lambda >= 0");
    McLyapunovEstimate est;
    est.heavy_tail_warning = lambda > 0.5 * (alpha.ess_inf() + beta.ess_inf());
    if (lambda == 0.0) return est;
    const std::vector<double> v = mc_corner_samples(alpha, beta, dir, n, reps, seed, mode);
    // log-sum-exp of lambda * n * value
    double peak = -std::numeric_limits<double>::infinity();
    for (double x : v) peak = std::max(peak, lambda * double(n) * x);
    double acc = 0.0;
    for (double x : v) acc += std::exp(lambda * double(n) * x - peak);
    est.value = (peak + std::log(acc / double(v.size()))) / double(n);
    return est;
}

ExtReal mc_tail_estimate(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                         double r, int n, int reps, std::uint64_t seed, SampleMode mode) {
    const std::vector<double> v = mc_corner_samples(alpha, beta, dir, n, reps, seed, mode);
    int hits = 0;
    for (double x : v)
        if (x >= r) ++hits;
    if (hits == 0) return ExtReal::infinity();
    return -std::log(double(hits) / double(v.size())) / double(n);
}

ExtReal mc_left_tail_estimate(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                              double r, int n, int reps, std::uint64_t seed, SampleMode mode) {
    const std::vector<double> v = mc_corner_samples(alpha, beta, dir, n, reps, seed, mode);
    int hits = 0;
    for (double x : v)
        if (x <= r) ++hits;
    if (hits == 0) return ExtReal::infinity();
    return -std::log(double(hits) / double(v.size())) / double(n);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (const char* cap = std::getenv("CGMLDP_THREADS")) {
        const long parsed = std::strtol(cap, nullptr, 10);
        if (parsed >= 1) workers = unsigned(parsed);
    }
    if (workers < 1) workers = 1;
    workers = std::min<std::size_t>(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cgmldp
