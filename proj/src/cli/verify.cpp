#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ctsep/cli.hpp"

namespace ctsep::cli {

namespace {

std::string describe(const BipartiteShape& s, double p, double x, double y) {
    std::ostringstream o;
    o << to_string(s) << " p=" << format_double(p) << " x=" << format_double(x) << " y=" << format_double(y);
    return o.str();
}

class Check {
  public:
    Check(std::string name, double tolerance) {
        result_.name = std::move(name);
        result_.tolerance = tolerance;
    }

    // Records |error| against the tolerance.
    void observe(double error, const std::string& context) {
        ++result_.samples;
        const double e = std::abs(error);
        if (!(e <= result_.max_error)) result_.max_error = e;
        if (!(e <= result_.tolerance)) fail(context + " error=" + format_double(e));
    }
    void expect(bool ok, const std::string& context) {
        ++result_.samples;
        if (!ok) fail(context);
    }
    CheckResult finish() && { return std::move(result_); }

  private:
    void fail(std::string msg) {
        result_.passed = false;
        // Keep the report readable when a check fails wholesale.
        if (result_.failures.size() < 20) result_.failures.push_back(std::move(msg));
    }
    CheckResult result_;
};

std::vector<BipartiteShape> shapes_with_dim_at_most(int max_dim) {
    std::vector<BipartiteShape> out;
    for (int d1 = 2; d1 * d1 <= max_dim; ++d1)
        for (int d2 = d1; d1 * d2 <= max_dim; ++d2) out.emplace_back(d1, d2);
    return out;
}

CheckResult check_norm_and_spectrum(Rng& rng, int sizes, CheckResult& spectrum_out) {
    Check norm("cxy_norm_identity", 1e-10);
    Check spectrum("cxy_spectrum_identity", 1e-10);
    const auto shapes = shapes_with_dim_at_most(60);
    std::uniform_int_distribution<std::size_t> pick(0, shapes.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coord(0.0, 3.0);
    for (int i = 0; i < sizes; ++i) {
        const BipartiteShape s = shapes[pick(rng)];
        const double p = unit(rng);
        const double x = coord(rng);
        const double y = coord(rng);
        const std::string ctx = describe(s, p, x, y);
        const CorrelationMatrix c = scale_correlation(canonical_correlation(isotropic({s, p})), x, y);
        norm.observe(trace_norm(c.entries) - analytic_cxy_norm(s, {x, y}, p), ctx);

        const RealVector numeric = hermitian_spectrum(c.entries * c.entries.adjoint());
        const std::vector<double> expected = analytic_cxy_spectrum(s, {x, y}, p);
        double worst = 0.0;
        for (std::size_t k = 0; k < expected.size(); ++k)
            worst = std::max(worst, std::abs(numeric(static_cast<Eigen::Index>(k)) - expected[k]));
        spectrum.observe(worst, ctx);
    }
    spectrum_out = std::move(spectrum).finish();
    return std::move(norm).finish();
}

CheckResult check_no_false_positives(Rng& rng, int sizes) {
    Check check("no_false_positives", kDetectionTolerance);
    std::vector<BipartiteShape> shapes;
    for (int d1 = 2; d1 <= 3; ++d1)
        for (int d2 = d1; d2 <= 4; ++d2) shapes.emplace_back(d1, d2);
    std::uniform_int_distribution<std::size_t> pick(0, shapes.size() - 1);
    std::uniform_int_distribution<int> terms(1, 20);
    for (int i = 0; i < sizes; ++i) {
        const BipartiteShape s = shapes[pick(rng)];
        const int n = terms(rng);
        std::uniform_real_distribution<double> coord(0.0, std::sqrt(s.d2 + 1.0));
        const double x = coord(rng);
        const double y = coord(rng);
        const DensityMatrix rho = random_separable_state(s, n, rng);
        std::vector<CriterionReport> reports = {
            named_criterion(rho, NamedCriterion::de_vicente), named_criterion(rho, NamedCriterion::ccnr),
            named_criterion(rho, NamedCriterion::fei),        named_criterion(rho, NamedCriterion::esic),
            enhanced_realignment(rho),                        ppt_test(rho),
            xy_criterion(rho, {x, y})};
        for (const auto& r : reports)
            check.expect(!r.detected, "sample " + std::to_string(i) + " " + to_string(s) + " terms=" +
                                          std::to_string(n) + " " + r.criterion_id +
                                          " margin=" + format_double(r.margin));
    }
    return std::move(check).finish();
}

CheckResult check_threshold_agreement(Rng& rng, int sizes) {
    Check check("threshold_numeric_agreement", 1e-8);
    const std::vector<BipartiteShape> shapes = {{2, 2}, {2, 3}, {3, 3}, {2, 5}, {3, 4}};
    std::uniform_int_distribution<std::size_t> pick(0, shapes.size() - 1);
    std::uniform_real_distribution<double> coord(0.0, 2.0);
    const int n = std::max(1, std::min(sizes, 12));
    for (int i = 0; i < n; ++i) {
        const BipartiteShape s = shapes[pick(rng)];
        const double x = coord(rng);
        const double y = coord(rng);
        const double analytic = p_xy_threshold(s, {x, y});
        const double numeric = detection_threshold_numeric(
            isotropic_family(s), [&](const DensityMatrix& rho) { return xy_criterion(rho, {x, y}); });
        check.observe(numeric - analytic, describe(s, analytic, x, y));
    }
    return std::move(check).finish();
}

CheckResult check_minimum_equivalence() {
    Check check("p_min_equals_p_er", 1e-12);
    for (int d1 = 2; d1 <= 30; ++d1)
        for (int d2 = d1; d2 <= 30; ++d2) {
            const BipartiteShape s{d1, d2};
            check.observe(dv_scale(s) / std::sqrt(1.0 + asymmetry(s)) - p_er_closed(s), to_string(s));
        }
    return std::move(check).finish();
}

CheckResult check_root_ordering() {
    Check check("root_ordering", 1e-10);
    for (const BipartiteShape s : {BipartiteShape{2, 3}, BipartiteShape{2, 5}, BipartiteShape{3, 7}}) {
        const RootOrdering r = root_ordering_polynomials(s);
        const ThresholdSet t = named_thresholds(s);
        check.observe(r.f_r(t.p_r), to_string(s) + " f_R(p_R)");
        check.observe(r.f_e(t.p_e), to_string(s) + " f_E(p_E)");
        check.observe(r.f_e(r.x0) - r.f_r(r.x0), to_string(s) + " f_E(x0)-f_R(x0)");
        for (int k = 1; k <= 10; ++k) {
            const double t_k = r.x0 * (1.0 + 0.25 * k);
            check.expect(r.f_e(t_k) < r.f_r(t_k), to_string(s) + " f_E<f_R at " + format_double(t_k));
        }
    }
    for (int d1 = 2; d1 <= 30; ++d1)
        for (int d2 = d1 + 1; d2 <= 30; ++d2) {
            const ThresholdSet t = named_thresholds({d1, d2});
            check.expect(t.p_e < t.p_r, "p_E < p_R at " + to_string(BipartiteShape{d1, d2}));
        }
    return std::move(check).finish();
}

CheckResult check_esic_witness() {
    Check check("esic_beats_ccnr_witness", kDetectionTolerance);
    const BipartiteShape s{2, 3};
    const double p = 0.5 * (p_e_closed(s) + p_r_closed(s));
    const DensityMatrix rho = isotropic({s, p});
    const CriterionReport esic = named_criterion(rho, NamedCriterion::esic);
    const CriterionReport ccnr = named_criterion(rho, NamedCriterion::ccnr);
    check.expect(esic.detected, "ESIC misses rho_p at p=" + format_double(p));
    check.expect(!ccnr.detected, "CCNR detects rho_p at p=" + format_double(p));
    return std::move(check).finish();
}

CheckResult check_ppt_boundary() {
    Check check("ppt_boundary", 1e-10);
    for (const BipartiteShape s : {BipartiteShape{2, 2}, BipartiteShape{2, 3}, BipartiteShape{3, 3},
                                   BipartiteShape{2, 5}, BipartiteShape{3, 4}}) {
        const double boundary = p_ppt(s);
        check.observe(ppt_test(isotropic({s, boundary})).lhs, to_string(s) + " at boundary");
        check.expect(ppt_test(isotropic({s, boundary + 1e-6})).lhs > 0.0, to_string(s) + " above boundary");
        check.expect(ppt_test(isotropic({s, boundary - 1e-6})).lhs < 0.0, to_string(s) + " below boundary");
    }
    return std::move(check).finish();
}

} // namespace

bool VerifyReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json doc;
    doc["seed"] = seed;
    doc["sizes"] = sizes;
    doc["passed"] = passed();
    doc["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        doc["checks"].push_back({{"name", c.name},
                                 {"passed", c.passed},
                                 {"samples", c.samples},
                                 {"max_error", c.max_error},
                                 {"tolerance", c.tolerance},
                                 {"failures", c.failures}});
    }
    return doc;
}

VerifyReport run_verify(std::uint64_t seed, int sizes) {
    if (sizes < 1) throw std::invalid_argument("verify: sizes must be >= 1");
    VerifyReport report;
    report.seed = seed;
    report.sizes = sizes;
    Rng rng(seed);
    CheckResult spectrum;
    report.checks.push_back(check_norm_and_spectrum(rng, sizes, spectrum));
    report.checks.push_back(std::move(spectrum));
    report.checks.push_back(check_no_false_positives(rng, sizes));
    report.checks.push_back(check_threshold_agreement(rng, sizes));
    report.checks.push_back(check_minimum_equivalence());
    report.checks.push_back(check_root_ordering());
    report.checks.push_back(check_esic_witness());
    report.checks.push_back(check_ppt_boundary());
    return report;
}

} // namespace ctsep::cli
