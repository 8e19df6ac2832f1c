#include "ctsep/bases.hpp"

#include <cmath>
#include <stdexcept>

namespace ctsep {

OperatorBasis::OperatorBasis(int dim, std::vector<ComplexMatrix> elements, std::string tag)
    : dim_(dim), elements_(std::move(elements)), tag_(std::move(tag)) {
    if (dim_ < 2) throw std::invalid_argument("operator basis dimension must be >= 2");
    const std::size_t n = static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_);
    if (elements_.size() != n) {
        throw std::invalid_argument("operator basis needs " + std::to_string(n) + " elements, got " +
                                    std::to_string(elements_.size()));
    }
    for (std::size_t a = 0; a < n; ++a) {
        const ComplexMatrix& g = elements_[a];
        if (g.rows() != dim_ || g.cols() != dim_) throw std::invalid_argument("operator basis element has wrong size");
        if (hermiticity_defect(g) > kBasisTolerance)
            throw std::invalid_argument("operator basis element " + std::to_string(a) + " is not Hermitian");
        if (a > 0 && std::abs(g.trace()) > kBasisTolerance)
            throw std::invalid_argument("operator basis element " + std::to_string(a) + " is not traceless");
    }
    const ComplexMatrix g0 = ComplexMatrix::Identity(dim_, dim_) / std::sqrt(static_cast<double>(dim_));
    if ((elements_[0] - g0).cwiseAbs().maxCoeff() > kBasisTolerance)
        throw std::invalid_argument("operator basis element 0 must be I/sqrt(d)");
    // Gram matrix of HS inner products: column a of `stacked` is |G_a>.
    ComplexMatrix stacked(n, n);
    for (std::size_t a = 0; a < n; ++a) stacked.col(static_cast<Eigen::Index>(a)) = vectorize(elements_[a]);
    const ComplexMatrix gram = stacked.adjoint() * stacked;
    const double defect = (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (defect > kBasisTolerance)
        throw std::invalid_argument("operator basis is not orthonormal (Gram defect " + std::to_string(defect) + ")");
}

OperatorBasis gell_mann_basis(int d) {
    if (d < 2) throw std::invalid_argument("gell_mann_basis: d must be >= 2, got " + std::to_string(d));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(d * d));
    out.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            ComplexMatrix g = ComplexMatrix::Zero(d, d);
            g(i, j) = inv_sqrt2;
            g(j, i) = inv_sqrt2;
            out.push_back(std::move(g));
        }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            ComplexMatrix g = ComplexMatrix::Zero(d, d);
            g(i, j) = Complex(0.0, -inv_sqrt2);
            g(j, i) = Complex(0.0, inv_sqrt2);
            out.push_back(std::move(g));
        }
    for (int k = 1; k < d; ++k) {
        ComplexMatrix g = ComplexMatrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
        for (int i = 0; i < k; ++i) g(i, i) = norm;
        g(k, k) = -k * norm;
        out.push_back(std::move(g));
    }
    return OperatorBasis(d, std::move(out), "gell-mann-" + std::to_string(d));
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho, const OperatorBasis& b1, const OperatorBasis& b2) {
    const BipartiteShape& s = rho.shape();
    if (b1.dim() != s.d1 || b2.dim() != s.d2) {
        throw DimensionError("correlation_matrix: basis dimensions (" + std::to_string(b1.dim()) + "," +
                             std::to_string(b2.dim()) + ") do not match state shape " + to_string(s));
    }
    const ComplexMatrix& r = rho.matrix();
    const int d1 = s.d1;
    const int d2 = s.d2;
    ComplexMatrix c(d1 * d1, d2 * d2);
    ComplexMatrix reduced(d2, d2);
    for (std::size_t a = 0; a < b1.size(); ++a) {
        // reduced = Tr_1[(G_a (x) I) rho]
        const ComplexMatrix& ga = b1[a];
        reduced.setZero();
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d1; ++j) {
                const Complex g = ga(j, i);
                if (g == Complex(0.0, 0.0)) continue;
                reduced += g * r.block(i * d2, j * d2, d2, d2);
            }
        for (std::size_t b = 0; b < b2.size(); ++b)
            c(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                (reduced.array() * b2[b].transpose().array()).sum();
    }
    return {s, std::move(c), b1.tag() + "|" + b2.tag()};
}

CorrelationMatrix canonical_correlation(const DensityMatrix& rho) {
    return correlation_matrix(rho, gell_mann_basis(rho.shape().d1), gell_mann_basis(rho.shape().d2));
}

CorrelationMatrix scale_correlation(const CorrelationMatrix& c, double x, double y) {
    if (!(x >= 0.0) || !(y >= 0.0)) {
        throw std::invalid_argument("scale_correlation: x and y must be nonnegative, got x=" + std::to_string(x) +
                                    ", y=" + std::to_string(y));
    }
    CorrelationMatrix out = c;
    out.entries.row(0) *= x;
    out.entries.col(0) *= y;
    return out;
}

double local_norm_factor(double x, int d) { return std::sqrt((d - 1 + x * x) / d); }

double norm_bound(double x, double y, const BipartiteShape& shape) {
    if (!(x >= 0.0) || !(y >= 0.0)) throw std::invalid_argument("norm_bound: x and y must be nonnegative");
    return local_norm_factor(x, shape.d1) * local_norm_factor(y, shape.d2);
}

} // namespace ctsep
