#include "ctsep/states.hpp"

#include <cmath>

namespace ctsep {

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, BipartiteShape shape) {
    const Eigen::Index n = shape.dim();
    if (m.rows() != n || m.cols() != n) {
        throw DimensionError("density matrix for shape " + to_string(shape) + " must be " + std::to_string(n) +
                             "x" + std::to_string(n));
    }
    require_finite(m, "density matrix");
    const RealVector spec = hermitian_spectrum(m);
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kStateTolerance || std::abs(m.trace().imag()) > kStateTolerance) {
        throw InvalidStateError("density matrix trace is " + std::to_string(tr) + ", expected 1", spec(0));
    }
    if (spec(0) < -kStateTolerance) {
        throw InvalidStateError("density matrix is not positive semidefinite (min eigenvalue " +
                                    std::to_string(spec(0)) + ")",
                                spec(0));
    }
    return DensityMatrix(std::move(m), shape, spec(0));
}

ComplexVector max_entangled_vector(const BipartiteShape& shape) {
    shape.require_ordered();
    ComplexVector v = ComplexVector::Zero(shape.dim());
    const double amp = 1.0 / std::sqrt(static_cast<double>(shape.d1));
    for (int i = 0; i < shape.d1; ++i) v(i * shape.d2 + i) = amp;
    return v;
}

DensityMatrix isotropic(const IsotropicParams& params) {
    if (!(params.p >= 0.0 && params.p <= 1.0)) {
        throw std::invalid_argument("isotropic: p must lie in [0,1], got " + std::to_string(params.p));
    }
    const BipartiteShape& s = params.shape;
    const ComplexVector psi = max_entangled_vector(s);
    const double n = s.dim();
    ComplexMatrix m = ComplexMatrix::Identity(s.dim(), s.dim()) * ((1.0 - params.p) / n);
    m += params.p * psi * psi.adjoint();
    return DensityMatrix::from_matrix(std::move(m), s);
}

DensityMatrix werner_like(const WernerParams& params) {
    const BipartiteShape& s = params.shape;
    s.require_ordered();
    if (!std::isfinite(params.q)) throw std::invalid_argument("werner_like: q must be finite");
    const double n = s.dim();
    ComplexMatrix m = ComplexMatrix::Identity(s.dim(), s.dim()) * ((1.0 - params.q) / n);
    // |e_i><e_j| (x) |f_j><f_i| has its single unit entry at row (i,j), column (j,i).
    for (int i = 0; i < s.d1; ++i)
        for (int j = 0; j < s.d1; ++j) m(i * s.d2 + j, j * s.d2 + i) += params.q / s.d1;
    try {
        return DensityMatrix::from_matrix(std::move(m), s);
    } catch (const InvalidStateError& e) {
        throw InvalidStateError("werner_like: q = " + std::to_string(params.q) + " gives a non-physical operator: " +
                                    e.what(),
                                e.min_eigenvalue());
    }
}

Marginals isotropic_marginals(const IsotropicParams& params) {
    const BipartiteShape& s = params.shape;
    s.require_ordered();
    Marginals out;
    out.first = ComplexMatrix::Identity(s.d1, s.d1) / static_cast<double>(s.d1);
    out.second = ComplexMatrix::Identity(s.d2, s.d2) * ((1.0 - params.p) / s.d2);
    for (int i = 0; i < s.d1; ++i) out.second(i, i) += params.p / s.d1;
    return out;
}

Marginals marginals(const DensityMatrix& rho) {
    return {partial_trace(rho.matrix(), rho.shape(), Factor::first),
            partial_trace(rho.matrix(), rho.shape(), Factor::second)};
}

ComplexMatrix random_complex_matrix(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    return g;
}

ComplexVector random_unit_vector(int dim, Rng& rng) {
    ComplexVector v = random_complex_matrix(dim, 1, rng).col(0);
    return v / v.norm();
}

ComplexMatrix random_local_state(int dim, Rng& rng) {
    const ComplexMatrix g = random_complex_matrix(dim, dim, rng);
    ComplexMatrix r = g * g.adjoint();
    r /= r.trace().real();
    // Remove round-off anti-Hermitian residue.
    return 0.5 * (r + r.adjoint());
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
    const ComplexMatrix g = random_complex_matrix(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        const Complex d = r(i, i);
        if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
    }
    return q;
}

DensityMatrix random_product_state(const BipartiteShape& shape, Rng& rng) {
    const ComplexMatrix a = random_local_state(shape.d1, rng);
    const ComplexMatrix b = random_local_state(shape.d2, rng);
    return DensityMatrix::from_matrix(kron(a, b), shape);
}

DensityMatrix random_separable_state(const BipartiteShape& shape, int terms, Rng& rng) {
    if (terms < 1) throw std::invalid_argument("random_separable_state: need at least one term");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> w(static_cast<std::size_t>(terms));
    double total = 0.0;
    for (auto& wi : w) {
        // Exponential weights give a flat Dirichlet distribution.
        wi = -std::log(1.0 - unit(rng));
        total += wi;
    }
    ComplexMatrix m = ComplexMatrix::Zero(shape.dim(), shape.dim());
    for (const double wi : w) {
        const ComplexMatrix a = random_local_state(shape.d1, rng);
        const ComplexMatrix b = random_local_state(shape.d2, rng);
        m += (wi / total) * kron(a, b);
    }
    return DensityMatrix::from_matrix(0.5 * (m + m.adjoint()), shape);
}

DensityMatrix random_state(const BipartiteShape& shape, Rng& rng) {
    return DensityMatrix::from_matrix(random_local_state(shape.dim(), rng), shape);
}

} // namespace ctsep
