#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thermolab/models.hpp"
#include "thermolab/qcore.hpp"

namespace thermolab::mbl {

struct TimeGrid {
    enum class Spacing { linear, log };
    std::vector<double> points;  // strictly increasing, >= 2 entries
    Spacing spacing = Spacing::log;

    static TimeGrid logspace(double tmin, double tmax, int n);
    static TimeGrid linspace(double tmin, double tmax, int n);
    // 200 log-spaced points on [1e-1, 1e3] (units 1/J)
    static TimeGrid log_default();
};

// Disorder-averaged time series; one column per observable/site.
struct DisorderAveragedSeries {
    std::vector<double> times;
    Eigen::MatrixXd mean;    // (n_times x n_cols)
    Eigen::MatrixXd stderr_; // sample std / sqrt(N_dis)
    std::vector<std::string> columns;
    int n_dis = 0;
    std::uint64_t seed = 0;
};

enum class InitialState { neel_x, neel_y, neel_z };

struct RunConfig {
    models::XXZParams params;
    TimeGrid grid = TimeGrid::log_default();
    int n_dis = 1;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    // dense evolution needs ~3 complex D x D matrices
    std::uint64_t memory_budget_bytes = 4ull << 30;
};

// <sigma^axis_i>(t) for every site, plus the staggered magnetization
// m_s(t) = (1/L) sum_i (-1)^i <sigma^axis_i>(t). The initial state is the
// Neel state along the same axis.
struct MagnetizationRun {
    DisorderAveragedSeries per_site;
    DisorderAveragedSeries staggered;
};

MagnetizationRun local_magnetization_run(const RunConfig& cfg, models::Axis axis);

// Single-site entropies S_n(t), their average S(t), and the total
// correlations T_t = L*S(t).
struct EntropyRun {
    DisorderAveragedSeries per_site;  // S_n(t)
    DisorderAveragedSeries average;   // S(t)
    DisorderAveragedSeries total;     // T_t
};

EntropyRun local_entropies_run(const RunConfig& cfg, InitialState psi0);

// Half-chain entanglement entropy S_{L/2}(t); L must be even.
DisorderAveragedSeries halfchain_entropy_run(const RunConfig& cfg,
                                             InitialState psi0);

// Least-squares fit of series local minima against ln t, after a centered
// box smoothing of width 5. Needs a log grid spanning >= 2 decades inside
// [tmin, tmax] and >= 4 minima.
struct LogFitResult {
    double intercept = 0.0;
    double slope = 0.0;
    double r2 = 0.0;
    std::vector<double> minima_times;
    std::vector<double> minima_values;
    int smoothing_width = 5;
};

LogFitResult log_modulation_fit(const std::vector<double>& times,
                                const std::vector<double>& values, double tmin,
                                double tmax);

// Time average of a series column over [tmin, tmax].
double window_average(const DisorderAveragedSeries& series, int column,
                      double tmin, double tmax);

qcore::PureState initial_state(int L, InitialState which);

}  // namespace thermolab::mbl
