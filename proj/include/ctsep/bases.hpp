#pragma once

#include <string>
#include <vector>

#include "ctsep/states.hpp"

namespace ctsep {

/// Tolerance for the orthonormality / tracelessness checks on a basis.
inline constexpr double kBasisTolerance = 1e-12;

/// Orthonormal Hermitian operator basis {G_0, ..., G_{d^2-1}} of d x d
/// matrices with G_0 = I / sqrt(d) and the remaining elements traceless.
class OperatorBasis {
  public:
    /// Validates the canonical-basis invariants; throws std::invalid_argument
    /// naming the first violated one.
    OperatorBasis(int dim, std::vector<ComplexMatrix> elements, std::string tag);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
    [[nodiscard]] const ComplexMatrix& operator[](std::size_t i) const { return elements_[i]; }
    [[nodiscard]] const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
    [[nodiscard]] const std::string& tag() const noexcept { return tag_; }

  private:
    int dim_;
    std::vector<ComplexMatrix> elements_;
    std::string tag_;
};

/// I/sqrt(d), then the normalized generalized Gell-Mann matrices: symmetric
/// (|i><j| + |j><i|)/sqrt(2) for i<j, antisymmetric -i(|i><j| - |j><i|)/sqrt(2)
/// for i<j, then the d-1 normalized traceless diagonals.
OperatorBasis gell_mann_basis(int d);

/// C_ab = Tr(rho G_a (x) G_b), a d1^2 x d2^2 matrix tagged with the basis pair.
struct CorrelationMatrix {
    BipartiteShape shape;
    ComplexMatrix entries;
    std::string basis_tag;
};

CorrelationMatrix correlation_matrix(const DensityMatrix& rho, const OperatorBasis& b1, const OperatorBasis& b2);

/// Correlation matrix in the Gell-Mann bases of both factors.
CorrelationMatrix canonical_correlation(const DensityMatrix& rho);

/// D_x C D_y with D_x = diag(x, 1, ..., 1): first row times x, first column times y.
CorrelationMatrix scale_correlation(const CorrelationMatrix& c, double x, double y);

/// N_{x,d} = sqrt((d - 1 + x^2) / d).
double local_norm_factor(double x, int d);

/// N_{x,d1} N_{y,d2}.
double norm_bound(double x, double y, const BipartiteShape& shape);

} // namespace ctsep
