#include "ctsep/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ctsep {

namespace {

void require_square_bipartite(const ComplexMatrix& rho, const BipartiteShape& shape, const char* what) {
    const Eigen::Index n = shape.dim();
    if (rho.rows() != n || rho.cols() != n) {
        throw DimensionError(std::string(what) + ": expected " + std::to_string(n) + "x" + std::to_string(n) +
                             " operator for shape " + to_string(shape) + ", got " + std::to_string(rho.rows()) +
                             "x" + std::to_string(rho.cols()));
    }
}

} // namespace

BipartiteShape::BipartiteShape(int first, int second) : d1(first), d2(second) {
    if (d1 < 2 || d2 < 2) {
        throw DimensionError("bipartite factor dimensions must be >= 2, got " + std::to_string(d1) + "x" +
                             std::to_string(d2));
    }
}

BipartiteShape BipartiteShape::normalized() const noexcept {
    BipartiteShape out = *this;
    if (out.d1 > out.d2) std::swap(out.d1, out.d2);
    return out;
}

void BipartiteShape::require_ordered() const {
    if (!ordered()) throw DimensionError("shape " + to_string(*this) + " violates d2 >= d1");
}

std::string to_string(const BipartiteShape& shape) {
    return "(" + std::to_string(shape.d1) + "," + std::to_string(shape.d2) + ")";
}

ComplexMatrix make_matrix(Eigen::Index rows, Eigen::Index cols, const std::vector<Complex>& entries) {
    if (rows <= 0 || cols <= 0) throw DimensionError("make_matrix: dimensions must be positive");
    if (static_cast<Eigen::Index>(entries.size()) != rows * cols) {
        throw DimensionError("make_matrix: expected " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(entries.size()));
    }
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = entries[static_cast<std::size_t>(r * cols + c)];
    require_finite(m, "make_matrix");
    return m;
}

void require_finite(const ComplexMatrix& a, const char* what) {
    if (!a.allFinite()) throw NumericalError(std::string(what) + ": non-finite entry");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

ComplexVector vectorize(const ComplexMatrix& a) {
    ComplexVector v(a.size());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
    return v;
}

ComplexMatrix realign(const ComplexMatrix& rho, const BipartiteShape& shape) {
    require_square_bipartite(rho, shape, "realign");
    const int d1 = shape.d1;
    const int d2 = shape.d2;
    ComplexMatrix out(d1 * d1, d2 * d2);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j)
            for (int k = 0; k < d2; ++k)
                for (int l = 0; l < d2; ++l) out(i * d1 + j, k * d2 + l) = rho(i * d2 + k, j * d2 + l);
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const BipartiteShape& shape, Factor factor) {
    require_square_bipartite(rho, shape, "partial_transpose");
    const int d1 = shape.d1;
    const int d2 = shape.d2;
    ComplexMatrix out(rho.rows(), rho.cols());
    for (int i = 0; i < d1; ++i)
        for (int k = 0; k < d2; ++k)
            for (int j = 0; j < d1; ++j)
                for (int l = 0; l < d2; ++l) {
                    const Complex v = rho(i * d2 + k, j * d2 + l);
                    if (factor == Factor::second)
                        out(i * d2 + l, j * d2 + k) = v;
                    else
                        out(j * d2 + k, i * d2 + l) = v;
                }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const BipartiteShape& shape, Factor keep) {
    require_square_bipartite(rho, shape, "partial_trace");
    const int d1 = shape.d1;
    const int d2 = shape.d2;
    if (keep == Factor::first) {
        ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d1; ++j)
                for (int k = 0; k < d2; ++k) out(i, j) += rho(i * d2 + k, j * d2 + k);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
    for (int k = 0; k < d2; ++k)
        for (int l = 0; l < d2; ++l)
            for (int i = 0; i < d1; ++i) out(k, l) += rho(i * d2 + k, i * d2 + l);
    return out;
}

RealVector singular_values(const ComplexMatrix& a) {
    require_finite(a, "singular_values");
    Eigen::BDCSVD<ComplexMatrix> svd(a);
    if (svd.info() != Eigen::Success) throw NumericalError("singular_values: SVD did not converge");
    RealVector s = svd.singularValues();
    if (s.size() == 0) return s;
    const double cutoff = kSvdRelativeZero * s(0);
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) < cutoff) s(i) = 0.0;
    return s;
}

double trace_norm(const ComplexMatrix& a) { return singular_values(a).sum(); }

double hermiticity_defect(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

RealVector hermitian_spectrum(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("hermitian_spectrum: matrix is not square");
    require_finite(a, "hermitian_spectrum");
    const double defect = hermiticity_defect(a);
    if (defect > kHermitianTolerance) {
        throw NumericalError("hermitian_spectrum: input is not Hermitian (max |a - a^dagger| = " +
                             std::to_string(defect) + ")");
    }
    // Symmetrize so the solver sees an exactly Hermitian matrix.
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("hermitian_spectrum: eigen-solver failed");
    return solver.eigenvalues();
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

} // namespace ctsep
