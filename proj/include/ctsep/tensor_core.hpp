#pragma once

// Dense complex linear algebra on bipartite operators: Kronecker products,
// row-major vectorization, realignment, partial transpose / trace and the
// trace norm.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ctsep {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised for dimension mismatches and other shape errors.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine fails or its input violates a numerical
/// precondition (non-finite entries, non-Hermitian input, ...).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Absolute per-entry tolerance used to accept a matrix as Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;
/// Singular values below this fraction of the largest one count as zero.
inline constexpr double kSvdRelativeZero = 1e-12;

/// Factor dimensions of C^{d1} (x) C^{d2}.
struct BipartiteShape {
    int d1 = 2;
    int d2 = 2;

    BipartiteShape() = default;
    BipartiteShape(int first, int second);

    [[nodiscard]] int dim() const noexcept { return d1 * d2; }
    [[nodiscard]] bool ordered() const noexcept { return d2 >= d1; }
    /// Same shape with factors swapped if needed so that d2 >= d1.
    [[nodiscard]] BipartiteShape normalized() const noexcept;
    /// Throws DimensionError unless d2 >= d1.
    void require_ordered() const;

    friend bool operator==(const BipartiteShape&, const BipartiteShape&) = default;
};

std::string to_string(const BipartiteShape& shape);

enum class Factor { first, second };

/// Builds a rows x cols matrix from row-major entries; rejects NaN/Inf and a
/// wrong entry count.
ComplexMatrix make_matrix(Eigen::Index rows, Eigen::Index cols, const std::vector<Complex>& entries);

/// Throws NumericalError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a, const char* what);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// |A> = sum_ij A_ij |i>|j>, i.e. row-major stacking, so <A|B> = Tr(A^dagger B).
ComplexVector vectorize(const ComplexMatrix& a);

/// Realignment R: (d1 d2) x (d1 d2) -> d1^2 x d2^2 with R(A (x) B) = |A><B*|.
///
/// Entry map: R[(i d1 + j), (k d2 + l)] = rho[(i d2 + k), (j d2 + l)]. The
/// map only permutes entries.
ComplexMatrix realign(const ComplexMatrix& rho, const BipartiteShape& shape);

/// Transpose on the indices of one tensor factor.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const BipartiteShape& shape, Factor factor);

/// Reduced operator on the kept factor.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const BipartiteShape& shape, Factor keep);

/// Singular values in descending order; values below kSvdRelativeZero times
/// the largest are flushed to zero.
RealVector singular_values(const ComplexMatrix& a);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

/// Largest per-entry deviation |a - a^dagger|.
double hermiticity_defect(const ComplexMatrix& a);

/// Eigenvalues of a Hermitian matrix in ascending order. Rejects inputs whose
/// hermiticity defect exceeds kHermitianTolerance.
RealVector hermitian_spectrum(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);

} // namespace ctsep
