#include <doctest.h>

#include "ctsep/analytic.hpp"
#include "ctsep/tensor_core.hpp"
#include "oracles.hpp"

using namespace ctsep;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                                          static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) m(i, i) = v, ++i;
    return m;
}

ComplexMatrix unit(int d, int i, int j) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

} // namespace

TEST_CASE("shape validation and normalization") {
    CHECK_THROWS_AS(BipartiteShape(1, 3), DimensionError);
    CHECK_THROWS_AS(BipartiteShape(2, 0), DimensionError);
    const BipartiteShape swapped{4, 2};
    CHECK_FALSE(swapped.ordered());
    CHECK(swapped.normalized() == BipartiteShape{2, 4});
    CHECK_THROWS_AS(swapped.require_ordered(), DimensionError);
    CHECK(BipartiteShape{3, 5}.dim() == 15);
}

TEST_CASE("make_matrix enforces entry count and finiteness") {
    CHECK_THROWS_AS(make_matrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
    CHECK_THROWS_AS(make_matrix(1, 2, {1.0, std::nan("")}), NumericalError);
    const ComplexMatrix m = make_matrix(2, 3, {1, 2, 3, 4, 5, 6});
    CHECK(m(1, 0) == Complex(4.0));
    CHECK(m(0, 2) == Complex(3.0));
}

TEST_CASE("kron") {
    CHECK(oracle::max_abs_diff(kron(ComplexMatrix(ComplexMatrix::Identity(2, 2)), ComplexMatrix(ComplexMatrix::Identity(3, 3))),
                               ComplexMatrix::Identity(6, 6)) == 0.0);
    CHECK(oracle::max_abs_diff(kron(diag({1, 2}), diag({1, 0})), diag({1, 0, 2, 0})) == 0.0);

    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = random_complex_matrix(2, 2, rng);
        const ComplexMatrix b = random_complex_matrix(2, 2, rng);
        const ComplexVector v = random_complex_matrix(2, 1, rng).col(0);
        const ComplexVector w = random_complex_matrix(2, 1, rng).col(0);
        const ComplexVector lhs = kron(a, b) * oracle::kron_vec(v, w);
        const ComplexVector rhs = oracle::kron_vec(a * v, b * w);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("vectorize is row-major and realizes the HS inner product") {
    const ComplexVector v = vectorize(unit(2, 0, 1));
    CHECK(v.size() == 4);
    CHECK(v(1) == Complex(1.0));
    CHECK(v.cwiseAbs().sum() == doctest::Approx(1.0));
    for (int d = 2; d <= 5; ++d) {
        const ComplexVector one = vectorize(ComplexMatrix::Identity(d, d));
        CHECK(std::abs(one.dot(one) - Complex(d)) < 1e-15);
    }
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = random_complex_matrix(3, 3, rng);
        const ComplexMatrix b = random_complex_matrix(3, 3, rng);
        // Eigen's dot conjugates the first argument.
        CHECK(std::abs(vectorize(a).dot(vectorize(b)) - oracle::hs_inner(a, b)) < 1e-12);
    }
}

TEST_CASE("realign on products is |A><B*|") {
    const BipartiteShape s{2, 2};
    const ComplexMatrix a = unit(2, 0, 1);
    const ComplexMatrix b = unit(2, 1, 0);
    const ComplexMatrix expected = vectorize(a) * vectorize(b.conjugate()).adjoint();
    CHECK(oracle::max_abs_diff(realign(kron(a, b), s), expected) == 0.0);

    Rng rng(5);
    for (const BipartiteShape shape : {BipartiteShape{2, 3}, BipartiteShape{3, 2}, BipartiteShape{3, 4}}) {
        const ComplexMatrix ra = random_complex_matrix(shape.d1, shape.d1, rng);
        const ComplexMatrix rb = random_complex_matrix(shape.d2, shape.d2, rng);
        const ComplexMatrix want = vectorize(ra) * vectorize(rb.conjugate()).adjoint();
        CHECK(oracle::max_abs_diff(realign(kron(ra, rb), shape), want) < 1e-14);
    }
    CHECK_THROWS_AS(realign(ComplexMatrix::Identity(5, 5), s), DimensionError);
}

TEST_CASE("realign of the maximally mixed state is rank one") {
    for (int d = 2; d <= 4; ++d) {
        const BipartiteShape s{d, d};
        const ComplexMatrix mixed = ComplexMatrix::Identity(d * d, d * d) / static_cast<double>(d * d);
        const RealVector sv = singular_values(realign(mixed, s));
        CHECK(sv(0) == doctest::Approx(1.0 / d).epsilon(1e-14));
        CHECK(sv.tail(sv.size() - 1).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("CCNR saturation for rho_p at d=3, p=1/4") {
    // Closed form: (d^2-1)/d p + 1/d = 8/3 * 1/4 + 1/3 = 1.
    const BipartiteShape s{3, 3};
    const ComplexMatrix rho = oracle::isotropic_entries(s, 0.25);
    CHECK(trace_norm(realign(rho, s)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("realign property: Frobenius norm preserved") {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<int> dim(2, 5);
        const BipartiteShape s{dim(rng), dim(rng)};
        const ComplexMatrix m = random_complex_matrix(s.dim(), s.dim(), rng);
        CHECK(frobenius_norm(realign(m, s)) == doctest::Approx(frobenius_norm(m)).epsilon(1e-13));
    }
}

TEST_CASE("partial transpose") {
    Rng rng(23);
    const BipartiteShape s{2, 3};
    const ComplexMatrix a = random_complex_matrix(2, 2, rng);
    const ComplexMatrix b = random_complex_matrix(3, 3, rng);
    CHECK(oracle::max_abs_diff(partial_transpose(kron(a, b), s, Factor::second), kron(a, b.transpose())) < 1e-15);
    CHECK(oracle::max_abs_diff(partial_transpose(kron(a, b), s, Factor::first), kron(a.transpose(), b)) < 1e-15);

    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = random_complex_matrix(6, 6, rng);
        for (const Factor f : {Factor::first, Factor::second}) {
            const ComplexMatrix pt = partial_transpose(rho, s, f);
            CHECK(oracle::max_abs_diff(partial_transpose(pt, s, f), rho) == 0.0);
            CHECK(std::abs(pt.trace() - rho.trace()) < 1e-13);
        }
    }

    // PT of rho_p at d=2: eigenvalues (1-p)/4 +- p/2, so p=1/2 gives -1/8.
    const BipartiteShape qubits{2, 2};
    const RealVector spec =
        hermitian_spectrum(partial_transpose(oracle::isotropic_entries(qubits, 0.5), qubits, Factor::second));
    CHECK(spec(0) == doctest::Approx(-0.125).epsilon(1e-14));
    CHECK_THROWS_AS(partial_transpose(ComplexMatrix::Identity(4, 4), s, Factor::second), DimensionError);
}

TEST_CASE("partial trace") {
    Rng rng(29);
    const BipartiteShape s{2, 3};
    const ComplexMatrix ra = random_complex_matrix(2, 2, rng);
    const ComplexMatrix rb = random_complex_matrix(3, 3, rng);
    const ComplexMatrix prod = kron(ra, rb);
    CHECK(oracle::max_abs_diff(partial_trace(prod, s, Factor::first), ra * rb.trace()) < 1e-12);
    CHECK(oracle::max_abs_diff(partial_trace(prod, s, Factor::second), rb * ra.trace()) < 1e-12);

    CHECK(oracle::max_abs_diff(partial_trace(oracle::isotropic_entries(s, 0.2), s, Factor::second),
                               oracle::isotropic_second_marginal(s, 0.2)) < 1e-15);

    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix m = random_complex_matrix(6, 6, rng);
        CHECK(std::abs(partial_trace(m, s, Factor::first).trace() - m.trace()) < 1e-12);
        CHECK(std::abs(partial_trace(m, s, Factor::second).trace() - m.trace()) < 1e-12);
    }
    CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(5, 5), s, Factor::first), DimensionError);
}

TEST_CASE("trace norm") {
    CHECK(trace_norm(ComplexMatrix::Identity(4, 4)) == doctest::Approx(4.0));
    CHECK(trace_norm(diag({1, -2})) == doctest::Approx(3.0));
    Rng rng(31);
    for (int d = 2; d <= 6; ++d) CHECK(trace_norm(random_unitary(d, rng)) == doctest::Approx(d).epsilon(1e-13));

    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(trace_norm(bad), NumericalError);
}

TEST_CASE("trace norm dominates |trace|") {
    Rng rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + trial % 6;
        const ComplexMatrix m = random_complex_matrix(d, d, rng);
        CHECK(trace_norm(m) >= std::abs(m.trace()) - 1e-12);
    }
}

TEST_CASE("hermitian spectrum") {
    const RealVector one = hermitian_spectrum(ComplexMatrix::Identity(3, 3));
    CHECK(one.size() == 3);
    CHECK((one.array() - 1.0).abs().maxCoeff() < 1e-15);
    const RealVector two = hermitian_spectrum(diag({3, -1}));
    CHECK(two(0) == doctest::Approx(-1.0));
    CHECK(two(1) == doctest::Approx(3.0));

    ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_spectrum(skew), NumericalError);
    CHECK_THROWS_AS(hermitian_spectrum(ComplexMatrix::Zero(2, 3)), DimensionError);

    // PSD constructions stay nonnegative.
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix g = random_complex_matrix(5, 3, rng);
        CHECK(hermitian_spectrum(g * g.adjoint())(0) >= -1e-10);
    }
}

TEST_CASE("spectrum of C_xy C_xy^dagger matches the two-level formula") {
    // Built in the matrix-unit basis: C_xy = D_x R(rho_p) D_y.
    const BipartiteShape s{2, 3};
    const double p = 0.2;
    const ComplexMatrix c = oracle::identity_rescaler(2, 1.0) * realign(oracle::isotropic_entries(s, p), s) *
                            oracle::identity_rescaler(3, 1.0);
    const RealVector numeric = hermitian_spectrum(c * c.adjoint());
    // (d1^2-1) copies of p^2/d1^2 and x^2/(d1 d2) (y^2 + p^2 (d2-d1)/d1), x=y=1.
    std::vector<double> expected(3, p * p / 4.0);
    expected.push_back(1.0 / 6.0 * (1.0 + p * p * 0.5));
    std::sort(expected.begin(), expected.end());
    REQUIRE(numeric.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(numeric(k) == doctest::Approx(expected[static_cast<std::size_t>(k)]).epsilon(1e-12));
}

TEST_CASE("product states factorize under partial trace") {
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const BipartiteShape s{2 + trial % 2, 3 + trial % 3};
        const ComplexMatrix a = random_local_state(s.d1, rng);
        const ComplexMatrix b = random_local_state(s.d2, rng);
        const ComplexMatrix rho = kron(a, b);
        CHECK(oracle::max_abs_diff(partial_trace(rho, s, Factor::first), a) <= 1e-12);
        CHECK(oracle::max_abs_diff(partial_trace(rho, s, Factor::second), b) <= 1e-12);
    }
}
