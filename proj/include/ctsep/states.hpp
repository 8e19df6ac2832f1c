#pragma once

// Bipartite density matrices and the state families used throughout:
// generalized isotropic states, the Werner-like swap mixture, and random
// product / separable states for property checks.

#include <random>

#include "ctsep/tensor_core.hpp"

namespace ctsep {

/// Tolerance for accepting a matrix as a state (Hermiticity, trace, PSD).
inline constexpr double kStateTolerance = 1e-10;

/// Raised when a constructed operator is not a valid density matrix.
class InvalidStateError : public std::domain_error {
  public:
    InvalidStateError(const std::string& what, double min_eigenvalue)
        : std::domain_error(what), min_eigenvalue_(min_eigenvalue) {}
    [[nodiscard]] double min_eigenvalue() const noexcept { return min_eigenvalue_; }

  private:
    double min_eigenvalue_;
};

/// Hermitian, unit-trace, positive semidefinite operator on C^{d1} (x) C^{d2}.
class DensityMatrix {
  public:
    /// Validates and wraps `m`. Throws DimensionError on a size mismatch,
    /// NumericalError on non-finite or non-Hermitian input and
    /// InvalidStateError for a wrong trace or a negative eigenvalue.
    static DensityMatrix from_matrix(ComplexMatrix m, BipartiteShape shape);

    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] const BipartiteShape& shape() const noexcept { return shape_; }
    [[nodiscard]] double min_eigenvalue() const noexcept { return min_eigenvalue_; }

  private:
    DensityMatrix(ComplexMatrix m, BipartiteShape shape, double min_eig)
        : matrix_(std::move(m)), shape_(shape), min_eigenvalue_(min_eig) {}

    ComplexMatrix matrix_;
    BipartiteShape shape_;
    double min_eigenvalue_;
};

struct IsotropicParams {
    BipartiteShape shape;
    double p = 0.0;
};

struct WernerParams {
    BipartiteShape shape;
    double q = 0.0;
};

/// |psi+> = sum_i |e_i>|f_i> / sqrt(d1), with f_i the first d1 computational
/// basis vectors of the second factor. Requires d2 >= d1.
ComplexVector max_entangled_vector(const BipartiteShape& shape);

/// rho_p = (1-p)/(d1 d2) I + p |psi+><psi+|, 0 <= p <= 1.
DensityMatrix isotropic(const IsotropicParams& params);

/// rho_q = (1-q)/(d1 d2) I + (q/d1) sum_ij |e_i><e_j| (x) |f_j><f_i|.
/// The valid q range is checked numerically; a non-PSD result throws
/// InvalidStateError carrying the offending eigenvalue.
DensityMatrix werner_like(const WernerParams& params);

struct Marginals {
    ComplexMatrix first;
    ComplexMatrix second;
};

/// Closed-form marginals of rho_p: I/d1 and (1-p)/d2 I + (p/d1) sum_i |f_i><f_i|.
/// The identity coefficient (1-p)/d2 is the one that makes the second
/// marginal unit-trace; it agrees with partial_trace of rho_p.
Marginals isotropic_marginals(const IsotropicParams& params);

/// Both reduced states of rho via partial_trace.
Marginals marginals(const DensityMatrix& rho);

// Sampling helpers. All draw from a caller-owned engine so runs are
// reproducible from a seed.
using Rng = std::mt19937_64;

ComplexVector random_unit_vector(int dim, Rng& rng);
/// Full-rank Ginibre state G G^dagger / Tr on C^dim.
ComplexMatrix random_local_state(int dim, Rng& rng);
/// Complex Gaussian matrix (unnormalized), for operator-level tests.
ComplexMatrix random_complex_matrix(int rows, int cols, Rng& rng);
/// Haar-ish unitary from the QR decomposition of a Gaussian matrix.
ComplexMatrix random_unitary(int dim, Rng& rng);

DensityMatrix random_product_state(const BipartiteShape& shape, Rng& rng);
/// Convex mixture of `terms` random product states with random weights.
DensityMatrix random_separable_state(const BipartiteShape& shape, int terms, Rng& rng);
/// Random (generically entangled) full-rank bipartite state.
DensityMatrix random_state(const BipartiteShape& shape, Rng& rng);

} // namespace ctsep
