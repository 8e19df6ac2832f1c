#pragma once

// Front end shared by the `ctsep` executable and the tests: threshold tables,
// (x, y) grid scans, dimension sweeps and the self-verification run.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctsep/analytic.hpp"

namespace ctsep::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kVerification = 3 };

enum class OutputFormat { csv, json };

/// Environment variable holding the default worker count.
inline constexpr const char* kParallelismEnv = "CTSEP_PARALLELISM";

/// CTSEP_PARALLELISM if set to a positive integer, otherwise 1.
int default_parallelism();

struct Range {
    double lo = 0.0;
    double hi = 1.0;
    int steps = 201;

    /// i-th of `steps` evenly spaced points; the last one is exactly hi.
    [[nodiscard]] double at(int i) const noexcept;
};

struct ScanConfig {
    BipartiteShape shape;
    Range x_range;
    Range y_range;
    std::optional<double> p;
    OutputFormat format = OutputFormat::csv;
    std::string output_path; // empty: stdout
    int parallelism = 1;
    bool tagged_rows = true; // append named-point and hyperbola rows

    /// Throws std::invalid_argument on lo > hi, steps < 2, parallelism < 1,
    /// d2 < d1 or p outside [0,1].
    void validate() const;
    /// 201 x 201 over [0, 1.2 sqrt(d2+1)]^2.
    static ScanConfig with_defaults(const BipartiteShape& shape);
};

struct ScanRow {
    double x = 0.0;
    double y = 0.0;
    double p_xy = 0.0;
    int a_sign = 0;
    bool on_hyperbola = false;
    std::string tag; // grid | dV | CCNR | Fei | ESIC | hyperbola
    std::optional<double> margin; // analytic criterion margin at config.p
};

std::vector<ScanRow> scan_rows(const ScanConfig& config);
std::string render_scan(const ScanConfig& config, const std::vector<ScanRow>& rows);

struct SweepRow {
    int d1 = 2;
    int d2 = 2;
    double dv_minus_er = 0.0;
    double e_minus_er = 0.0;
    double f_minus_er = 0.0;
    double r_minus_er = 0.0;
};

/// Rows for 2 <= d1 <= min(d1_max, d2), d1 <= d2 <= d2_max, ordered by (d1, d2).
std::vector<SweepRow> sweep_rows(int d1_max, int d2_max, int parallelism = 1);
std::string render_sweep(int d1_max, int d2_max, const std::vector<SweepRow>& rows, OutputFormat format);

/// Analytic thresholds next to their bisection-over-SVD counterparts.
struct ThresholdTable {
    BipartiteShape shape;
    ThresholdSet analytic;
    ThresholdSet numeric;
    double max_abs_diff = 0.0;
};

ThresholdTable threshold_table(const BipartiteShape& shape, int parallelism = 1);
enum class TableFormat { text, csv, json };
std::string render_thresholds(const ThresholdTable& table, TableFormat format);

struct CheckResult {
    std::string name;
    bool passed = true;
    int samples = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    std::vector<std::string> failures;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    int sizes = 0;
    std::vector<CheckResult> checks;

    [[nodiscard]] bool passed() const noexcept;
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Runs the invariant suite with `sizes` random samples per randomized check.
VerifyReport run_verify(std::uint64_t seed, int sizes);

/// Formats a double with 17 significant digits ('.' decimal point).
std::string format_double(double v);

/// Entry point used by main(); returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ctsep::cli
