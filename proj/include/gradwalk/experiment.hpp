#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gradwalk/analysis.hpp"
#include "gradwalk/pharmonic_catalog.hpp"
#include "gradwalk/step_measures.hpp"
#include "gradwalk/walk_engine.hpp"

namespace gradwalk {

/// Cutoff exponent used by the rate regime when none is configured.
inline constexpr double kDefaultAPrime = 0.2;

/// Parameters of an epsilon sweep. The config-file keys are the CLI flag
/// names without dashes: fn, p, n, eps, eta, a-prime, regime, samples, seed,
/// workers, out, grad-zero-tol, step-cap.
struct ExperimentConfig {
    std::string fn_id = "linear";
    double p = 2.0;
    std::size_t n = 2;
    std::vector<double> eps;  ///< strictly decreasing
    Regime regime = Regime::EtaCut;
    std::optional<double> eta;
    std::optional<double> a_prime;  ///< rate regime; kDefaultAPrime if unset
    double grad_zero_tol = kGradZeroTol;
    std::uint64_t samples = 10'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::uint64_t step_cap = kDefaultStepCap;
    std::string out;  ///< CSV path; empty for none

    /// Throws ConfigError describing the first problem found.
    void validate() const;

    /// Regime rule for one sweep cell.
    RegimeConfig regime_for(double epsilon) const;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown or repeated
/// keys are errors.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(std::string const& path);

/// Splits "0.1,0.05,0.025" into numbers. Throws ConfigError on bad tokens.
std::vector<double> parse_real_list(std::string const& text);

/// One CSV row: the estimate at one grid point for one epsilon.
struct CsvRecord {
    std::string fn_id;
    std::string regime;
    double p = 0.0;
    std::size_t n = 0;
    double epsilon = 0.0;
    std::vector<double> x0;
    double estimate = 0.0;
    double std_error = 0.0;
    double abs_error = 0.0;
    std::uint64_t n_samples = 0;
    double mean_steps = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(CsvRecord const&, CsvRecord const&) = default;
};

inline constexpr char const* kCsvHeader =
    "fn_id,regime,p,n,epsilon,x0,estimate,stderr,abs_error,n_samples,mean_steps,seed";

/// Writes the header and rows; reals with 17 significant digits.
void write_csv(std::ostream& out, std::vector<CsvRecord> const& rows);
/// Reads rows written by write_csv; lines starting with '#' are skipped.
std::vector<CsvRecord> read_csv(std::istream& in);

/// Summary of one epsilon of a sweep.
struct SweepRecord {
    double epsilon = 0.0;
    double sup_error = 0.0;
    double max_std_error = 0.0;
    Regime regime = Regime::EtaCut;
    std::string fn_id;
    double p = 0.0;
    std::size_t n = 0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

struct ResidualSummary {
    bool ran = false;
    std::string note;  ///< why the check was skipped, if it was
    Point x;
    std::vector<double> eps;
    std::vector<double> residuals;
    std::vector<double> ratios;
    bool passed = true;
};

/// dpp_residual at x for each eps; ratios of successive residuals must be at
/// least 7 unless both residuals sit below the quadrature floor 1e-13.
ResidualSummary residual_order_check(TestFunction const& fn, Point const& x, double p,
                                     std::vector<double> const& eps);

struct ExperimentReport {
    std::vector<SweepRecord> sweep;
    std::vector<CsvRecord> rows;
    std::optional<double> fitted_rate;  ///< empty if fewer than 3 signal-dominated errors
    DriftSuiteSummary drift;
    ResidualSummary residual;
    bool passed = false;

    /// "PASS ..." or "FAIL ..." with the worst drift margin and sup error.
    std::string summary_line() const;
};

/// Runs the sweep (eps list x default grid) and the drift/residual checks.
/// Writes the CSV (rows, then '#' summary lines) when cfg.out is set.
ExperimentReport run_experiment(ExperimentConfig const& cfg);

/// Errors that are >= 4 standard errors; ones below are treated as noise and
/// excluded from the rate fit.
inline constexpr double kSignalToNoise = 4.0;

}  // namespace gradwalk
