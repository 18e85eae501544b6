#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cgmldp/ext_real.hpp"
#include "cgmldp/param_law.hpp"
#include "cgmldp/shape.hpp"

namespace cgmldp {

enum class SampleMode { Quenched, Annealed };

const char* to_string(SampleMode m);

/// One draw of the parameter sequences. In quenched mode every replicate
/// shares the environment of replicate 0; in annealed mode each replicate
/// resamples it.
struct EnvSample {
    std::vector<double> a;  // length m
    std::vector<double> b;  // length n
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::Quenched;
    std::uint64_t replicate = 0;
};

/// Exponential weights for one rectangle; optionally with the stationary
/// boundary row/column (rates a_i + z and b_j - z, W(0,0) = 0).
struct WeightGrid {
    int m = 0, n = 0;
    std::vector<double> bulk;  // row-major, (i,j) in [1,m]x[1,n] at (i-1)*n + (j-1)
    bool stationary = false;
    double z = 0.0;
    std::vector<double> row0;  // W(i,0), i = 1..m
    std::vector<double> col0;  // W(0,j), j = 1..n

    [[nodiscard]] double w(int i, int j) const { return bulk[std::size_t(i - 1) * n + (j - 1)]; }
};

/// Last-passage values over the sampled rectangle. Bulk tables satisfy
/// G(i,0) = G(0,j) = 0; stationary tables carry the boundary sums.
class PassageTable {
public:
    PassageTable(int m, int n, bool stationary)
        : m_(m), n_(n), stationary_(stationary), g_(std::size_t(m + 1) * (n + 1), 0.0) {}

    [[nodiscard]] int rows() const { return m_; }
    [[nodiscard]] int cols() const { return n_; }
    [[nodiscard]] bool stationary() const { return stationary_; }
    [[nodiscard]] double at(int i, int j) const { return g_[std::size_t(i) * (n_ + 1) + j]; }
    double& at(int i, int j) { return g_[std::size_t(i) * (n_ + 1) + j]; }

private:
    int m_, n_;
    bool stationary_;
    std::vector<double> g_;
};

EnvSample sample_env(const ParameterLaw& alpha, const ParameterLaw& beta, int m, int n,
                     std::uint64_t seed, SampleMode mode, std::uint64_t replicate = 0);

WeightGrid sample_weights(const EnvSample& env);
WeightGrid sample_weights_stationary(const EnvSample& env, double z);

/// Full dynamic-programming table in O(mn).
PassageTable passage_times(const WeightGrid& grid);

/// Full table for a stationary grid (boundary weights required).
PassageTable stationary_passage_times(const WeightGrid& grid);

/// Corner value G(m,n) only, with O(min(m,n)) rolling memory.
double passage_corner(const WeightGrid& grid);

/// Inverse-CDF draw from a law at a uniform u in (0, 1].
double law_quantile(const ParameterLaw& law, double u);

/// Stationarity diagnostics for the boundary model: increment means against
/// 1/(a_i+z) and 1/(b_j-z), and pairwise correlations of the increment family
/// that the stationary structure makes independent.
struct BurkeReport {
    double z = 0.0;
    int m = 0, n = 0, reps = 0;
    std::vector<double> mean_i, se_i, expected_i;  // I(i, n), i = 1..m
    std::vector<double> mean_j, se_j, expected_j;  // J(m, j), j = 1..n
    int mean_failures = 0;
    bool means_pass = false;
    double max_abs_corr = 0.0;
    double corr_threshold = 0.0;
    int corr_failures = 0;
    bool corr_pass = false;
};

BurkeReport burke_check(const ParameterLaw& alpha, const ParameterLaw& beta, double z, int m,
                        int n, int reps, std::uint64_t seed);

/// Particle positions sigma(i, t) = -i + max{ j : G(i,j) <= t } from a bulk
/// table. A row is flagged unreliable when the max hits the table edge, since
/// the true max ranges over all of N.
struct TasepPositions {
    double time = 0.0;
    std::vector<long long> position;  // index i-1 holds sigma(i, t)
    std::vector<char> unreliable;
};

TasepPositions tasep_positions(const PassageTable& table, double t);

/// Per-replicate corner values G(floor(n s), floor(n t)) / n.
std::vector<double> mc_corner_samples(const ParameterLaw& alpha, const ParameterLaw& beta,
                                      Direction dir, int n, int reps, std::uint64_t seed,
                                      SampleMode mode);

struct McEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
};

McEstimate mc_shape_estimate(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                             int n, int reps, std::uint64_t seed, SampleMode mode);

struct McLyapunovEstimate {
    double value = 0.0;
    bool heavy_tail_warning = false;  // lambda above half the finiteness threshold
};

McLyapunovEstimate mc_lyapunov_estimate(const ParameterLaw& alpha, const ParameterLaw& beta,
                                        Direction dir, double lambda, int n, int reps,
                                        std::uint64_t seed, SampleMode mode);

/// -n^{-1} log of the empirical frequency of {G >= n r}; +inf at frequency 0.
ExtReal mc_tail_estimate(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                         double r, int n, int reps, std::uint64_t seed, SampleMode mode);

/// Same for the left tail {G <= n r}.
ExtReal mc_left_tail_estimate(const ParameterLaw& alpha, const ParameterLaw& beta, Direction dir,
                              double r, int n, int reps, std::uint64_t seed, SampleMode mode);

/// Runs fn(i) for i in [0, count); worker count is capped by CGMLDP_THREADS.
/// Callers must write results into disjoint slots so that the outcome does
/// not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace cgmldp
