#include "ctsep/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctsep {

namespace {

constexpr double kNamedCrossCheck = 1e-10;
constexpr double kMinimumCrossCheck = 1e-12;

void require_ordered_params(const BipartiteShape& shape, const CriterionParams& params) {
    shape.require_ordered();
    params.validate();
}

} // namespace

double asymmetry(const BipartiteShape& shape) {
    const double d1 = shape.d1;
    const double d2 = shape.d2;
    return (d2 - d1) / (d2 * (d1 - 1.0) * (d1 + 1.0) * (d1 + 1.0));
}

double dv_scale(const BipartiteShape& shape) {
    const double d1 = shape.d1;
    const double d2 = shape.d2;
    return d1 / (d1 * d1 - 1.0) * std::sqrt((d1 - 1.0) * (d2 - 1.0) / (d1 * d2));
}

XYReduced reduce(const BipartiteShape& shape, const CriterionParams& params) {
    require_ordered_params(shape, params);
    return {params.x * params.x / (shape.d1 - 1.0), params.y * params.y / (shape.d2 - 1.0), asymmetry(shape),
            dv_scale(shape)};
}

QuadraticCase quadratic_case(const BipartiteShape& shape, const CriterionParams& params) {
    require_ordered_params(shape, params);
    const double d1 = shape.d1;
    const double d2 = shape.d2;
    const double x2 = params.x * params.x;
    const double y2 = params.y * params.y;
    const double k = (d1 * d1 - 1.0) / d1;
    const double bound = norm_bound(params.x, params.y, shape);

    QuadraticCase q;
    q.a = k * k - x2 * (d2 - d1) / (d1 * d1 * d2);
    q.b = -2.0 * k * bound;
    // N^2 - x^2 y^2/(d1 d2) and b^2 - 4ac expanded so that every term is
    // nonnegative: the textbook forms cancel catastrophically near the double
    // root (y = 0, d1 = d2) and shift p_- by ~sqrt(eps).
    q.c = ((d1 - 1.0) * (d2 - 1.0) + (d1 - 1.0) * y2 + (d2 - 1.0) * x2) / (d1 * d2);
    q.discriminant = 4.0 * x2 * (k * k * y2 / (d1 * d2) + (d2 - d1) / (d1 * d1 * d2) * q.c);
    q.p0 = bound / k;
    const double root = std::sqrt(q.discriminant);
    if (std::abs(q.a) > kLinearTolerance) {
        // (-b - sqrt(D)) / 2a rewritten through p_- p_+ = c/a; no cancellation
        // because -b > 0.
        q.p_minus = 2.0 * q.c / (-q.b + root);
        q.p_plus = (-q.b + root) / (2.0 * q.a);
    } else {
        q.p_minus = -q.c / q.b;
    }
    return q;
}

double p_xy_threshold(const BipartiteShape& shape, const CriterionParams& params) {
    const QuadraticCase q = quadratic_case(shape, params);
    // x = 0: the square-root term drops out and the criterion is linear in p,
    // with boundary exactly p_0 (a double root of the quadratic).
    if (params.x == 0.0) return q.p0;
    return q.p_minus;
}

std::optional<double> p_xy_closed_form(const BipartiteShape& shape, const CriterionParams& params) {
    const XYReduced r = reduce(shape, params);
    const double denom = 1.0 - r.gamma * r.x_tilde;
    if (std::abs(denom) <= kPoleTolerance) return std::nullopt;
    const double first = std::sqrt((1.0 + r.x_tilde) * (1.0 + r.y_tilde));
    const double second = std::sqrt(r.x_tilde * ((1.0 + r.gamma) * r.y_tilde + r.gamma * r.x_tilde + r.gamma));
    return r.gamma_scale * (first - second) / denom;
}

double p_ppt(const BipartiteShape& shape) { return 1.0 / (shape.d2 + 1.0); }

double p_dv_closed(const BipartiteShape& shape) {
    shape.require_ordered();
    return dv_scale(shape);
}

double p_r_closed(const BipartiteShape& shape) {
    shape.require_ordered();
    const double d1 = shape.d1;
    const double d2 = shape.d2;
    const double num = (d1 * d1 - 1.0) * d2 - std::sqrt(d1 * d1 * d1 * d2 - 3.0 * d1 * d2 + d2 * d2 + 1.0);
    return num / (d2 * d1 * d1 * d1 - 2.0 * d1 * d2 + 1.0);
}

double p_e_closed(const BipartiteShape& shape) {
    shape.require_ordered();
    const double d1 = shape.d1;
    const double d2 = shape.d2;
    const double d1_3 = d1 * d1 * d1;
    const double inner =
        (d1_3 * d2 * d2 - 2.0 * d1 * d2 * d2 + 3.0 * d2 * d2 + (d1_3 - 5.0 * d1) * d2 + d1 + 1.0) / (d1 + 1.0);
    const double num = 2.0 * (d1 - 1.0) * d2 - std::sqrt(inner);
    return num / (d1 * d1 * d2 - d1 * d2 - d2 + 1.0);
}

double p_er_closed(const BipartiteShape& shape) {
    shape.require_ordered();
    const double d1 = shape.d1;
    const double d2 = shape.d2;
    return std::sqrt((d2 - 1.0) / (d2 * (d1 * d1 + d1 - 1.0) - 1.0));
}

ThresholdSet named_thresholds(const BipartiteShape& shape) {
    shape.require_ordered();
    ThresholdSet t;
    t.p_ppt = p_ppt(shape);
    t.p_dv = p_dv_closed(shape);
    t.p_r = p_r_closed(shape);
    t.p_e = p_e_closed(shape);
    t.p_f = p_xy_threshold(shape, named_point(NamedCriterion::fei, shape));
    t.p_er = p_er_closed(shape);
    t.p_min = hyperbola_and_min(shape).p_min;

    const struct {
        const char* name;
        double closed;
        NamedCriterion which;
    } checks[] = {{"p_dV", t.p_dv, NamedCriterion::de_vicente},
                  {"p_R", t.p_r, NamedCriterion::ccnr},
                  {"p_E", t.p_e, NamedCriterion::esic}};
    for (const auto& check : checks) {
        const double via_root = p_xy_threshold(shape, named_point(check.which, shape));
        if (std::abs(via_root - check.closed) > kNamedCrossCheck) {
            throw InternalConsistencyError(std::string(check.name) + " closed form " + std::to_string(check.closed) +
                                           " disagrees with quadratic root " + std::to_string(via_root) +
                                           " for shape " + to_string(shape));
        }
    }
    return t;
}

double Hyperbola::x_vertex() const noexcept { return std::sqrt(rhs / x_coefficient); }

std::optional<double> Hyperbola::y_at(double x) const noexcept {
    const double y2 = (x_coefficient * x * x - rhs) / y_coefficient;
    if (y2 < 0.0) return std::nullopt;
    return std::sqrt(y2);
}

HyperbolaMinimum hyperbola_and_min(const BipartiteShape& shape) {
    shape.require_ordered();
    const double gamma = asymmetry(shape);
    HyperbolaMinimum out;
    out.curve.x_coefficient = 1.0 / (shape.d1 - 1.0);
    out.curve.y_coefficient = (1.0 + gamma) / (shape.d2 - 1.0);
    out.curve.rhs = gamma;
    out.p_min = dv_scale(shape) / std::sqrt(1.0 + gamma);
    const double closed = p_er_closed(shape);
    if (std::abs(out.p_min - closed) > kMinimumCrossCheck) {
        throw InternalConsistencyError("Gamma/sqrt(1+gamma) = " + std::to_string(out.p_min) +
                                       " disagrees with closed-form minimum " + std::to_string(closed));
    }
    return out;
}

double stationarity_residual(const BipartiteShape& shape, const CriterionParams& params) {
    const XYReduced r = reduce(shape, params);
    return (1.0 + r.gamma) * r.y_tilde - (r.x_tilde - r.gamma);
}

namespace {

void require_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1], got " + std::to_string(p));
}

// x^2/(d1 d2) (y^2 + p^2 (d2-d1)/d1): the eigenvalue of C_xy C_xy^dagger along |1_{d1}>.
double cxy_identity_eigenvalue(const BipartiteShape& shape, const CriterionParams& params, double p) {
    const double d1 = shape.d1;
    const double d2 = shape.d2;
    return params.x * params.x / (d1 * d2) * (params.y * params.y + p * p * (d2 - d1) / d1);
}

} // namespace

double analytic_cxy_norm(const BipartiteShape& shape, const CriterionParams& params, double p) {
    require_ordered_params(shape, params);
    require_probability(p);
    const double d1 = shape.d1;
    return (d1 * d1 - 1.0) / d1 * p + std::sqrt(cxy_identity_eigenvalue(shape, params, p));
}

std::vector<double> analytic_cxy_spectrum(const BipartiteShape& shape, const CriterionParams& params, double p) {
    require_ordered_params(shape, params);
    require_probability(p);
    const double d1 = shape.d1;
    std::vector<double> out(static_cast<std::size_t>(shape.d1 * shape.d1 - 1), p * p / (d1 * d1));
    out.push_back(cxy_identity_eigenvalue(shape, params, p));
    std::sort(out.begin(), out.end());
    return out;
}

double analytic_er_norm(const BipartiteShape& shape, double p) {
    shape.require_ordered();
    require_probability(p);
    const double d1 = shape.d1;
    return (d1 * d1 - 1.0) / d1 * p;
}

double QuadraticPolynomial::lowest_root() const {
    if (a == 0.0) {
        if (b == 0.0) throw NumericalError("lowest_root: constant polynomial");
        return -c / b;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) throw NumericalError("lowest_root: no real roots");
    const double s = std::sqrt(disc);
    // Stable pair of roots, then pick the smaller.
    const double q = -0.5 * (b + std::copysign(s, b));
    const double r1 = q / a;
    const double r2 = q != 0.0 ? c / q : r1;
    return std::min(r1, r2);
}

RootOrdering root_ordering_polynomials(const BipartiteShape& shape) {
    if (!(shape.d2 > shape.d1)) {
        throw DimensionError("root_ordering_polynomials requires d2 > d1, got " + to_string(shape));
    }
    const double d1 = shape.d1;
    const double d2 = shape.d2;
    const double d1_3 = d1 * d1 * d1;
    const double linear = -4.0 * d2 * (d1 * d1 - 1.0);
    RootOrdering out;
    out.f_r = {2.0 * (d1_3 * d2 - 2.0 * d1 * d2 + 1.0), linear, 2.0 * (d1 * d2 - 1.0)};
    out.f_e = {d1_3 * d2 - 2.0 * d1 * d2 + d1 - d2 + 1.0, linear, 3.0 * d1 * d2 - d1 - d2 - 1.0};
    out.x0 = std::sqrt((d2 - 1.0) / ((d1 + 1.0) * d1 * d2 - (d2 + 1.0)));
    return out;
}

} // namespace ctsep
