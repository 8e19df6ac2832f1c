#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ctsep/cli.hpp"
#include "parallel.hpp"

namespace ctsep::cli {

int default_parallelism() {
    if (const char* env = std::getenv(kParallelismEnv)) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
    }
    return 1;
}

double Range::at(int i) const noexcept {
    if (i >= steps - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void ScanConfig::validate() const {
    shape.require_ordered();
    for (const Range* r : {&x_range, &y_range}) {
        if (!(r->lo <= r->hi)) throw std::invalid_argument("scan range requires lo <= hi");
        if (r->lo < 0.0) throw std::invalid_argument("scan range must be nonnegative");
        if (r->steps < 2) throw std::invalid_argument("scan range requires steps >= 2");
    }
    if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
    if (p && !(*p >= 0.0 && *p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
}

ScanConfig ScanConfig::with_defaults(const BipartiteShape& shape) {
    ScanConfig c;
    c.shape = shape;
    const double hi = 1.2 * std::sqrt(shape.d2 + 1.0);
    c.x_range = {0.0, hi, 201};
    c.y_range = {0.0, hi, 201};
    return c;
}

namespace {

int sign_of(double a) {
    if (std::abs(a) <= kLinearTolerance) return 0;
    return a > 0.0 ? 1 : -1;
}

ScanRow evaluate_point(const ScanConfig& config, double x, double y, std::string tag) {
    const CriterionParams params{x, y};
    ScanRow row;
    row.x = x;
    row.y = y;
    row.p_xy = p_xy_threshold(config.shape, params);
    row.a_sign = sign_of(quadratic_case(config.shape, params).a);
    row.tag = std::move(tag);
    if (config.p)
        row.margin = analytic_cxy_norm(config.shape, params, *config.p) - norm_bound(x, y, config.shape);
    return row;
}

// A grid point is flagged when the curve passes within half a grid cell of it
// (first-order distance |residual| / |gradient|).
bool near_hyperbola(const Hyperbola& h, double x, double y, double half_cell) {
    const double res = h.residual(x, y);
    const double gx = 2.0 * h.x_coefficient * x;
    const double gy = -2.0 * h.y_coefficient * y;
    const double grad = std::hypot(gx, gy);
    if (grad == 0.0) return std::abs(res) <= 1e-12;
    return std::abs(res) / grad <= half_cell;
}

} // namespace

std::vector<ScanRow> scan_rows(const ScanConfig& config) {
    config.validate();
    const Hyperbola curve = hyperbola_and_min(config.shape).curve;
    const double hx = (config.x_range.hi - config.x_range.lo) / (config.x_range.steps - 1);
    const double hy = (config.y_range.hi - config.y_range.lo) / (config.y_range.steps - 1);
    const double half_cell = 0.5 * std::max(hx, hy);

    const auto nx = static_cast<std::size_t>(config.x_range.steps);
    const auto ny = static_cast<std::size_t>(config.y_range.steps);
    std::vector<ScanRow> rows(nx * ny);
    detail::parallel_for(rows.size(), config.parallelism, [&](std::size_t k) {
        const double x = config.x_range.at(static_cast<int>(k / ny));
        const double y = config.y_range.at(static_cast<int>(k % ny));
        ScanRow row = evaluate_point(config, x, y, "grid");
        row.on_hyperbola = near_hyperbola(curve, x, y, half_cell);
        rows[k] = std::move(row);
    });
    if (!config.tagged_rows) return rows;

    for (const NamedCriterion which :
         {NamedCriterion::de_vicente, NamedCriterion::ccnr, NamedCriterion::fei, NamedCriterion::esic}) {
        const CriterionParams pt = named_point(which, config.shape);
        ScanRow row = evaluate_point(config, pt.x, pt.y, to_string(which));
        row.on_hyperbola = std::abs(curve.residual(pt.x, pt.y)) <= 1e-12;
        rows.push_back(std::move(row));
    }
    // Trace of the curve of minima, sampled in x from its vertex.
    const double x_start = std::max(config.x_range.lo, curve.x_vertex());
    const int samples = config.x_range.steps;
    for (int i = 0; i < samples; ++i) {
        const double x = x_start + (config.x_range.hi - x_start) * i / (samples - 1.0);
        const auto y = curve.y_at(x);
        if (!y || *y < config.y_range.lo || *y > config.y_range.hi) continue;
        ScanRow row = evaluate_point(config, x, *y, "hyperbola");
        row.on_hyperbola = true;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> sweep_rows(int d1_max, int d2_max, int parallelism) {
    if (d1_max < 2 || d2_max < 2) throw std::invalid_argument("sweep bounds must be >= 2");
    std::vector<BipartiteShape> shapes;
    for (int d1 = 2; d1 <= d1_max; ++d1)
        for (int d2 = d1; d2 <= d2_max; ++d2) shapes.emplace_back(d1, d2);
    std::vector<SweepRow> rows(shapes.size());
    detail::parallel_for(shapes.size(), parallelism, [&](std::size_t i) {
        const ThresholdSet t = named_thresholds(shapes[i]);
        rows[i] = {shapes[i].d1, shapes[i].d2, t.p_dv - t.p_er, t.p_e - t.p_er, t.p_f - t.p_er, t.p_r - t.p_er};
    });
    return rows;
}

ThresholdTable threshold_table(const BipartiteShape& shape, int parallelism) {
    shape.require_ordered();
    ThresholdTable table;
    table.shape = shape;
    table.analytic = named_thresholds(shape);

    const StateFamily family = isotropic_family(shape);
    const HyperbolaMinimum hm = hyperbola_and_min(shape);
    // A representative point on the curve of minima: y~ = 1.
    const double y_min_point = std::sqrt(shape.d2 - 1.0);
    const double x_min_point = std::sqrt((hm.curve.rhs + hm.curve.y_coefficient * y_min_point * y_min_point) /
                                         hm.curve.x_coefficient);

    struct Job {
        double ThresholdSet::*field;
        Criterion criterion;
    };
    auto named = [&](NamedCriterion which) -> Criterion {
        return [which](const DensityMatrix& rho) { return named_criterion(rho, which); };
    };
    const std::vector<Job> jobs = {
        {&ThresholdSet::p_ppt, [](const DensityMatrix& rho) { return ppt_test(rho); }},
        {&ThresholdSet::p_dv, named(NamedCriterion::de_vicente)},
        {&ThresholdSet::p_r, named(NamedCriterion::ccnr)},
        {&ThresholdSet::p_f, named(NamedCriterion::fei)},
        {&ThresholdSet::p_e, named(NamedCriterion::esic)},
        {&ThresholdSet::p_er, [](const DensityMatrix& rho) { return enhanced_realignment(rho); }},
        {&ThresholdSet::p_min,
         [=](const DensityMatrix& rho) { return xy_criterion(rho, {x_min_point, y_min_point}); }},
    };
    std::vector<double> values(jobs.size());
    detail::parallel_for(jobs.size(), parallelism,
                         [&](std::size_t i) { values[i] = detection_threshold_numeric(family, jobs[i].criterion); });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        table.numeric.*(jobs[i].field) = values[i];
        table.max_abs_diff = std::max(table.max_abs_diff, std::abs(values[i] - table.analytic.*(jobs[i].field)));
    }
    return table;
}

namespace {

constexpr double kTableAgreement = 1e-8;

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::ios_base::failure("cannot open output file '" + path + "'");
    file << content;
    file.flush();
    if (!file) throw std::ios_base::failure("failed writing output file '" + path + "'");
}

const std::map<std::string, OutputFormat> kFormats{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Correlation-tensor separability criteria: thresholds, scans, sweeps and self-verification",
                 "ctsep"};
    app.require_subcommand(1);
    int parallelism = default_parallelism();
    app.add_option("-j,--parallelism", parallelism,
                   std::string("worker threads (default from ") + kParallelismEnv + ", else 1)")
        ->check(CLI::Range(1, 1024));

    auto* thresholds = app.add_subcommand("thresholds", "analytic thresholds with bisection cross-check");
    int td1 = 0;
    int td2 = 0;
    std::string table_format = "text";
    thresholds->add_option("d1", td1, "first factor dimension")->required();
    thresholds->add_option("d2", td2, "second factor dimension (>= d1)")->required();
    thresholds->add_option("--format", table_format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    auto* scan = app.add_subcommand("scan", "p_xy over an (x, y) grid");
    int sd1 = 0;
    int sd2 = 0;
    std::optional<double> xmax;
    std::optional<double> ymax;
    double xmin = 0.0;
    double ymin = 0.0;
    int steps = 201;
    std::optional<double> scan_p;
    std::string scan_out;
    OutputFormat scan_format = OutputFormat::csv;
    bool no_tagged = false;
    scan->add_option("--d1", sd1, "first factor dimension")->required();
    scan->add_option("--d2", sd2, "second factor dimension (>= d1)")->required();
    scan->add_option("--xmin", xmin, "lower x bound (default 0)");
    scan->add_option("--ymin", ymin, "lower y bound (default 0)");
    scan->add_option("--xmax", xmax, "upper x bound (default 1.2 sqrt(d2+1))");
    scan->add_option("--ymax", ymax, "upper y bound (default 1.2 sqrt(d2+1))");
    scan->add_option("--steps", steps, "grid points per axis (>= 2)");
    scan->add_option("--p", scan_p, "also report the analytic criterion margin at this p");
    scan->add_option("--out", scan_out, "output path (default stdout)");
    scan->add_option("--format", scan_format, "csv or json")->transform(CLI::CheckedTransformer(kFormats));
    scan->add_flag("--no-tagged", no_tagged, "omit named-point and hyperbola rows");

    auto* sweep = app.add_subcommand("sweep", "threshold differences against p_ER over dimension pairs");
    int d1_max = 0;
    int d2_max = 0;
    std::string sweep_out;
    OutputFormat sweep_format = OutputFormat::csv;
    sweep->add_option("--d1-max", d1_max, "largest d1")->required();
    sweep->add_option("--d2-max", d2_max, "largest d2")->required();
    sweep->add_option("--out", sweep_out, "output path (default stdout)");
    sweep->add_option("--format", sweep_format, "csv or json")->transform(CLI::CheckedTransformer(kFormats));

    auto* verify = app.add_subcommand("verify", "run the invariant suite; exit 3 on any failure");
    std::uint64_t seed = 20240101;
    int sizes = 100;
    std::string verify_out;
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--sizes", sizes, "random samples per randomized check")->check(CLI::Range(1, 100000));
    verify->add_option("--out", verify_out, "also write the JSON summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (*thresholds) {
            if (td1 < 2 || td2 < td1) {
                err << "error: thresholds requires 2 <= d1 <= d2, got d1=" << td1 << ", d2=" << td2 << "\n";
                return kUsage;
            }
            const ThresholdTable table = threshold_table({td1, td2}, parallelism);
            const TableFormat fmt = table_format == "json"  ? TableFormat::json
                                    : table_format == "csv" ? TableFormat::csv
                                                            : TableFormat::text;
            out << render_thresholds(table, fmt);
            if (table.max_abs_diff > kTableAgreement) {
                err << "error: analytic and numeric thresholds disagree by " << table.max_abs_diff << "\n";
                return kNumerical;
            }
            return kOk;
        }
        if (*scan) {
            if (sd1 < 2 || sd2 < sd1) {
                err << "error: scan requires 2 <= d1 <= d2\n";
                return kUsage;
            }
            ScanConfig config = ScanConfig::with_defaults({sd1, sd2});
            config.x_range = {xmin, xmax.value_or(config.x_range.hi), steps};
            config.y_range = {ymin, ymax.value_or(config.y_range.hi), steps};
            config.p = scan_p;
            config.format = scan_format;
            config.output_path = scan_out;
            config.parallelism = parallelism;
            config.tagged_rows = !no_tagged;
            try {
                config.validate();
            } catch (const std::invalid_argument& e) {
                err << "error: " << e.what() << "\n";
                return kUsage;
            }
            write_output(config.output_path, render_scan(config, scan_rows(config)), out);
            return kOk;
        }
        if (*sweep) {
            if (d1_max < 2 || d2_max < 2) {
                err << "error: sweep bounds must be >= 2\n";
                return kUsage;
            }
            write_output(sweep_out, render_sweep(d1_max, d2_max, sweep_rows(d1_max, d2_max, parallelism), sweep_format),
                         out);
            return kOk;
        }
        if (*verify) {
            const VerifyReport report = run_verify(seed, sizes);
            const std::string doc = report.to_json().dump(2) + "\n";
            out << doc;
            if (!verify_out.empty()) write_output(verify_out, doc, out);
            if (!report.passed()) {
                for (const auto& c : report.checks)
                    if (!c.passed) err << "FAILED: " << c.name << "\n";
                return kVerification;
            }
            return kOk;
        }
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
    return kUsage;
}

} // namespace ctsep::cli
