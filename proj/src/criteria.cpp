#include "ctsep/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctsep {

void CriterionParams::validate() const {
    if (!(x >= 0.0) || !(y >= 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw std::invalid_argument("criterion parameters must be finite and nonnegative, got x=" +
                                    std::to_string(x) + ", y=" + std::to_string(y));
    }
}

CriterionReport make_report(std::string id, double lhs, double rhs, double tolerance) {
    CriterionReport r;
    r.criterion_id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = lhs - rhs;
    r.tolerance = tolerance;
    r.detected = r.margin > tolerance;
    return r;
}

std::string to_string(NamedCriterion which) {
    switch (which) {
    case NamedCriterion::de_vicente: return "dV";
    case NamedCriterion::ccnr: return "CCNR";
    case NamedCriterion::fei: return "Fei";
    case NamedCriterion::esic: return "ESIC";
    }
    return "?";
}

CriterionParams named_point(NamedCriterion which, const BipartiteShape& shape) {
    const double d1 = shape.d1;
    const double d2 = shape.d2;
    switch (which) {
    case NamedCriterion::de_vicente: return {0.0, 0.0};
    case NamedCriterion::ccnr: return {1.0, 1.0};
    case NamedCriterion::fei: return {std::sqrt(2.0 / d1), std::sqrt(2.0 / d2)};
    case NamedCriterion::esic: return {std::sqrt(d1 + 1.0), std::sqrt(d2 + 1.0)};
    }
    throw std::invalid_argument("unknown named criterion");
}

CriterionReport xy_criterion(const DensityMatrix& rho, const CriterionParams& params, double tolerance) {
    params.validate();
    const CorrelationMatrix scaled = scale_correlation(canonical_correlation(rho), params.x, params.y);
    const double lhs = trace_norm(scaled.entries);
    const double rhs = norm_bound(params.x, params.y, rho.shape());
    return make_report("XY(" + std::to_string(params.x) + "," + std::to_string(params.y) + ")", lhs, rhs, tolerance);
}

CriterionReport named_criterion(const DensityMatrix& rho, NamedCriterion which, double tolerance) {
    CriterionReport r = xy_criterion(rho, named_point(which, rho.shape()), tolerance);
    r.criterion_id = to_string(which);
    return r;
}

CriterionReport enhanced_realignment(const DensityMatrix& rho, double tolerance) {
    const Marginals m = marginals(rho);
    const ComplexMatrix centered = rho.matrix() - kron(m.first, m.second);
    const double lhs = trace_norm(realign(centered, rho.shape()));
    // Purities are real for Hermitian marginals; clamp round-off below zero.
    const double mixed_a = std::max(0.0, 1.0 - (m.first * m.first).trace().real());
    const double mixed_b = std::max(0.0, 1.0 - (m.second * m.second).trace().real());
    return make_report("ER", lhs, std::sqrt(mixed_a) * std::sqrt(mixed_b), tolerance);
}

CriterionReport ppt_test(const DensityMatrix& rho, double tolerance) {
    const RealVector spec = hermitian_spectrum(partial_transpose(rho.matrix(), rho.shape(), Factor::second));
    return make_report("PPT", -spec(0), 0.0, tolerance);
}

double detection_threshold_numeric(const StateFamily& family, const Criterion& criterion, Bracket bracket,
                                   double abs_tolerance) {
    if (!(bracket.lo < bracket.hi)) throw std::invalid_argument("detection_threshold_numeric: empty bracket");
    auto margin = [&](double p) { return criterion(family(p)).margin; };
    double lo = bracket.lo;
    double hi = bracket.hi;
    if (margin(lo) > 0.0) throw BracketError("criterion always detects on bracket");
    if (margin(hi) <= 0.0) throw BracketError("criterion never detects on bracket");
    while (hi - lo > abs_tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (margin(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return lo;
}

StateFamily isotropic_family(const BipartiteShape& shape) {
    return [shape](double p) { return isotropic({shape, p}); };
}

} // namespace ctsep
