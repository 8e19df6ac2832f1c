#pragma once

// Closed-form detection thresholds of the XY criteria for the generalized
// isotropic family rho_p on C^{d1} (x) C^{d2}, d2 >= d1.
//
// Separability of rho_p under the (x, y) criterion reduces to
//
//   (d1^2-1)/d1 p + x/sqrt(d1 d2) sqrt(y^2 + p^2 (d2-d1)/d1) <= N_{x,d1} N_{y,d2},
//
// whose boundary is the lower root p_- of the quadratic a p^2 + b p + c
// (after squaring on the branch p <= p_0). Everything in this header is plain
// arithmetic; the numerical counterparts live in criteria.hpp.

#include <optional>
#include <vector>

#include "ctsep/criteria.hpp"

namespace ctsep {

/// Raised when two closed forms that must agree do not.
class InternalConsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// gamma = (d2-d1) / (d2 (d1-1) (d1+1)^2); zero iff d1 == d2.
double asymmetry(const BipartiteShape& shape);
/// Gamma = d1/(d1^2-1) sqrt((d1-1)(d2-1)/(d1 d2)); equals the de Vicente threshold.
double dv_scale(const BipartiteShape& shape);

/// Reduced coordinates x~ = x^2/(d1-1), y~ = y^2/(d2-1) together with the
/// shape constants gamma and Gamma.
struct XYReduced {
    double x_tilde = 0.0;
    double y_tilde = 0.0;
    double gamma = 0.0;
    double gamma_scale = 0.0; // Gamma
};

XYReduced reduce(const BipartiteShape& shape, const CriterionParams& params);

/// Quadratic a p^2 + b p + c >= 0 obtained by squaring the criterion.
struct QuadraticCase {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double discriminant = 0.0;
    double p_minus = 0.0;
    std::optional<double> p_plus; // absent when |a| <= kLinearTolerance
    double p0 = 0.0;              // d1/(d1^2-1) N_x N_y

    [[nodiscard]] double evaluate(double p) const noexcept { return (a * p + b) * p + c; }
};

inline constexpr double kLinearTolerance = 1e-12;
inline constexpr double kPoleTolerance = 1e-8;

QuadraticCase quadratic_case(const BipartiteShape& shape, const CriterionParams& params);

/// Threshold p_xy: rho_p passes the (x, y) criterion iff p <= p_xy.
double p_xy_threshold(const BipartiteShape& shape, const CriterionParams& params);

/// The rational closed form of p_xy in reduced coordinates. Empty inside the
/// |1 - gamma x~| <= kPoleTolerance neighbourhood of its removable pole.
std::optional<double> p_xy_closed_form(const BipartiteShape& shape, const CriterionParams& params);

// Closed forms at the named points.
double p_ppt(const BipartiteShape& shape);
double p_dv_closed(const BipartiteShape& shape);
double p_r_closed(const BipartiteShape& shape);
double p_e_closed(const BipartiteShape& shape);
/// sqrt((d2-1) / (d2 (d1^2+d1-1) - 1)).
double p_er_closed(const BipartiteShape& shape);

struct ThresholdSet {
    double p_ppt = 0.0;
    double p_dv = 0.0;
    double p_r = 0.0;
    double p_f = 0.0;
    double p_e = 0.0;
    double p_er = 0.0;
    double p_min = 0.0;
};

/// All thresholds for one shape. p_dv, p_r and p_e come from their closed
/// forms and are cross-checked against p_xy_threshold at the named points;
/// p_f is p_xy at the Fei point. Throws InternalConsistencyError when a check
/// disagrees by more than 1e-10.
ThresholdSet named_thresholds(const BipartiteShape& shape);

/// x^2/(d1-1) - (1+gamma) y^2/(d2-1) = gamma, the locus of minimal p_xy.
struct Hyperbola {
    double x_coefficient = 0.0; // 1/(d1-1)
    double y_coefficient = 0.0; // (1+gamma)/(d2-1)
    double rhs = 0.0;           // gamma

    [[nodiscard]] double residual(double x, double y) const noexcept {
        return x_coefficient * x * x - y_coefficient * y * y - rhs;
    }
    [[nodiscard]] bool degenerate() const noexcept { return rhs == 0.0; }
    /// Smallest x on the curve (its vertex, y = 0).
    [[nodiscard]] double x_vertex() const noexcept;
    /// y >= 0 on the curve for this x, if any.
    [[nodiscard]] std::optional<double> y_at(double x) const noexcept;
};

struct HyperbolaMinimum {
    Hyperbola curve;
    double p_min = 0.0; // Gamma / sqrt(1 + gamma)
};

/// The curve of minima and the minimal threshold. Throws
/// InternalConsistencyError if Gamma/sqrt(1+gamma) and p_er_closed differ by
/// more than 1e-12.
HyperbolaMinimum hyperbola_and_min(const BipartiteShape& shape);

/// (1+gamma) y~ - (x~ - gamma); vanishes exactly on the hyperbola.
double stationarity_residual(const BipartiteShape& shape, const CriterionParams& params);

/// Closed-form ||C_xy||_1 for rho_p.
double analytic_cxy_norm(const BipartiteShape& shape, const CriterionParams& params, double p);

/// Eigenvalues of C_xy C_xy^dagger for rho_p, ascending: d1^2-1 copies of
/// p^2/d1^2 and x^2/(d1 d2) (y^2 + p^2 (d2-d1)/d1). The d1^2 x d2^2 matrix
/// C_xy has no further nonzero singular values.
std::vector<double> analytic_cxy_spectrum(const BipartiteShape& shape, const CriterionParams& params, double p);

/// Closed-form ||R(rho_p - rho_1 (x) rho_2)||_1 = (d1^2-1) p / d1.
double analytic_er_norm(const BipartiteShape& shape, double p);

struct QuadraticPolynomial {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    [[nodiscard]] double operator()(double t) const noexcept { return (a * t + b) * t + c; }
    /// Smaller real root; throws NumericalError when there is none.
    [[nodiscard]] double lowest_root() const;
};

/// Quadratics whose lowest roots are p_R and p_E, and the point x_0 where they
/// cross (f_E > f_R on (-x_0, x_0), f_E < f_R beyond).
struct RootOrdering {
    QuadraticPolynomial f_r;
    QuadraticPolynomial f_e;
    double x0 = 0.0;
};

/// Requires d2 > d1.
RootOrdering root_ordering_polynomials(const BipartiteShape& shape);

} // namespace ctsep
