#pragma once

// Numerical evaluation of the correlation-tensor separability criteria on a
// given state: the XY family ||D_x C D_y||_1 <= N_x N_y and its named points,
// the enhanced realignment criterion, and the PPT test.

#include <functional>
#include <string>

#include "ctsep/bases.hpp"

namespace ctsep {

/// A margin above this value certifies entanglement; |margin| <= tolerance is
/// reported as a boundary case.
inline constexpr double kDetectionTolerance = 1e-9;

struct CriterionParams {
    double x = 1.0;
    double y = 1.0;

    /// Throws std::invalid_argument unless x, y >= 0 and finite.
    void validate() const;
};

struct CriterionReport {
    std::string criterion_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // lhs - rhs
    double tolerance = kDetectionTolerance;
    bool detected = false; // margin > tolerance

    [[nodiscard]] bool boundary() const noexcept { return margin >= -tolerance && margin <= tolerance; }
};

CriterionReport make_report(std::string id, double lhs, double rhs, double tolerance = kDetectionTolerance);

enum class NamedCriterion { de_vicente, ccnr, fei, esic };

std::string to_string(NamedCriterion which);
/// The (x, y) point realizing a named criterion: dV (0,0), CCNR (1,1),
/// Fei (sqrt(2/d1), sqrt(2/d2)), ESIC (sqrt(d1+1), sqrt(d2+1)).
CriterionParams named_point(NamedCriterion which, const BipartiteShape& shape);

/// ||D_x C^can D_y||_1 against N_{x,d1} N_{y,d2}.
CriterionReport xy_criterion(const DensityMatrix& rho, const CriterionParams& params,
                             double tolerance = kDetectionTolerance);

CriterionReport named_criterion(const DensityMatrix& rho, NamedCriterion which,
                                double tolerance = kDetectionTolerance);

/// ||R(rho - rho_A (x) rho_B)||_1 against sqrt(1 - Tr rho_A^2) sqrt(1 - Tr rho_B^2).
CriterionReport enhanced_realignment(const DensityMatrix& rho, double tolerance = kDetectionTolerance);

/// lhs = -lambda_min(rho^{T_B}), rhs = 0.
CriterionReport ppt_test(const DensityMatrix& rho, double tolerance = kDetectionTolerance);

using StateFamily = std::function<DensityMatrix(double)>;
using Criterion = std::function<CriterionReport(const DensityMatrix&)>;

/// Raised when the criterion margin has no sign change on the bracket.
class BracketError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Bracket {
    double lo = 0.0;
    double hi = 1.0;
};

inline constexpr double kBisectionTolerance = 1e-10;

/// Largest parameter on the bracket for which `criterion` does not detect
/// entanglement of `family(p)`, found by bisection on margin(p) = 0. Assumes
/// the margin is nondecreasing in p.
double detection_threshold_numeric(const StateFamily& family, const Criterion& criterion, Bracket bracket = {},
                                   double abs_tolerance = kBisectionTolerance);

/// Isotropic family rho_p for a fixed shape.
StateFamily isotropic_family(const BipartiteShape& shape);

} // namespace ctsep
