#include <doctest.h>

#include "ctsep/analytic.hpp"
#include "ctsep/bases.hpp"
#include "oracles.hpp"

using namespace ctsep;

TEST_CASE("Gell-Mann basis for d=2 is the Pauli basis") {
    const OperatorBasis b = gell_mann_basis(2);
    REQUIRE(b.size() == 4);
    const double h = 1.0 / std::sqrt(2.0);
    ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    sz << 1, 0, 0, -1;
    CHECK(oracle::max_abs_diff(b[0], ComplexMatrix::Identity(2, 2) * h) < 1e-16);
    CHECK(oracle::max_abs_diff(b[1], sx * h) < 1e-16);
    CHECK(oracle::max_abs_diff(b[2], sy * h) < 1e-16);
    CHECK(oracle::max_abs_diff(b[3], sz * h) < 1e-16);
    CHECK_THROWS_AS(gell_mann_basis(1), std::invalid_argument);
}

TEST_CASE("Gell-Mann basis is canonical") {
    for (int d = 2; d <= 6; ++d) {
        const OperatorBasis b = gell_mann_basis(d);
        REQUIRE(b.size() == static_cast<std::size_t>(d * d));
        double worst = 0.0;
        for (std::size_t a = 0; a < b.size(); ++a)
            for (std::size_t c = 0; c < b.size(); ++c)
                worst = std::max(worst, std::abs(oracle::hs_inner(b[a], b[c]) - (a == c ? 1.0 : 0.0)));
        CHECK(worst <= 1e-12);
        for (std::size_t a = 0; a < b.size(); ++a) {
            CHECK(hermiticity_defect(b[a]) == 0.0);
            if (a > 0) CHECK(std::abs(b[a].trace()) <= 1e-12);
        }
    }
}

TEST_CASE("OperatorBasis rejects non-canonical sets") {
    auto elems = gell_mann_basis(2).elements();
    auto wrong_count = elems;
    wrong_count.pop_back();
    CHECK_THROWS_AS(OperatorBasis(2, wrong_count, "x"), std::invalid_argument);
    auto scaled = elems;
    scaled[2] *= 2.0;
    CHECK_THROWS_AS(OperatorBasis(2, scaled, "x"), std::invalid_argument);
    auto swapped = elems;
    std::swap(swapped[0], swapped[3]);
    CHECK_THROWS_AS(OperatorBasis(2, swapped, "x"), std::invalid_argument);
    auto nonherm = elems;
    nonherm[1](0, 1) = Complex(0.0, 1.0 / std::sqrt(2.0));
    CHECK_THROWS_AS(OperatorBasis(2, nonherm, "x"), std::invalid_argument);
}

TEST_CASE("correlation matrix of the maximally mixed state") {
    const BipartiteShape s{2, 3};
    const DensityMatrix rho = isotropic({s, 0.0});
    const CorrelationMatrix c = canonical_correlation(rho);
    CHECK(c.entries.rows() == 4);
    CHECK(c.entries.cols() == 9);
    CHECK(std::abs(c.entries(0, 0) - 1.0 / std::sqrt(6.0)) < 1e-15);
    ComplexMatrix rest = c.entries;
    rest(0, 0) = 0.0;
    CHECK(rest.cwiseAbs().maxCoeff() < 1e-15);
    CHECK(c.basis_tag == "gell-mann-2|gell-mann-3");
}

TEST_CASE("correlation matrix agrees with brute force and is real") {
    Rng rng(101);
    for (const BipartiteShape s : {BipartiteShape{2, 2}, BipartiteShape{2, 3}, BipartiteShape{3, 3}}) {
        const DensityMatrix rho = random_state(s, rng);
        const OperatorBasis b1 = gell_mann_basis(s.d1);
        const OperatorBasis b2 = gell_mann_basis(s.d2);
        const CorrelationMatrix c = correlation_matrix(rho, b1, b2);
        CHECK(oracle::max_abs_diff(c.entries, oracle::correlation_brute(rho.matrix(), b1, b2)) < 1e-14);
        CHECK(c.entries.imag().cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(std::abs(c.entries(0, 0) - 1.0 / std::sqrt(static_cast<double>(s.dim()))) < 1e-14);
    }
    CHECK_THROWS_AS(correlation_matrix(isotropic({{2, 3}, 0.1}), gell_mann_basis(3), gell_mann_basis(3)),
                    DimensionError);
}

TEST_CASE("canonical and realignment singular values agree for rho_p") {
    const BipartiteShape s{2, 3};
    const DensityMatrix rho = isotropic({s, 0.3});
    const RealVector a = singular_values(canonical_correlation(rho).entries);
    const RealVector b = singular_values(realign(rho.matrix(), s));
    CHECK(oracle::max_abs_diff(a, b) <= 1e-12);
}

TEST_CASE("basis independence of the singular values") {
    Rng rng(103);
    for (int trial = 0; trial < 12; ++trial) {
        const BipartiteShape s{2 + trial % 2, 2 + trial % 3};
        const BipartiteShape shape = s.normalized();
        const DensityMatrix rho = random_state(shape, rng);
        const OperatorBasis r1 = oracle::rotated_basis(gell_mann_basis(shape.d1), rng);
        const OperatorBasis r2 = oracle::rotated_basis(gell_mann_basis(shape.d2), rng);
        const RealVector a = singular_values(canonical_correlation(rho).entries);
        const RealVector b = singular_values(correlation_matrix(rho, r1, r2).entries);
        CHECK(oracle::max_abs_diff(a, b) <= 1e-10);
    }
}

TEST_CASE("scale_correlation") {
    Rng rng(107);
    const CorrelationMatrix c = canonical_correlation(random_state({2, 3}, rng));
    CHECK(oracle::max_abs_diff(scale_correlation(c, 1.0, 1.0).entries, c.entries) == 0.0);

    const CorrelationMatrix zeroed = scale_correlation(c, 0.0, 0.0);
    CHECK(zeroed.entries.row(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(zeroed.entries.col(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(oracle::max_abs_diff(ComplexMatrix(zeroed.entries.bottomRightCorner(3, 8)), ComplexMatrix(c.entries.bottomRightCorner(3, 8))) == 0.0);

    const CorrelationMatrix xy = scale_correlation(c, 1.7, 0.3);
    CHECK(std::abs(xy.entries(0, 0) - 1.7 * 0.3 * c.entries(0, 0)) < 1e-16);
    // Composition is exact.
    CHECK((scale_correlation(scale_correlation(c, 1.7, 1.0), 1.0, 0.3).entries - xy.entries).cwiseAbs().maxCoeff() ==
          0.0);

    CHECK_THROWS_AS(scale_correlation(c, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(scale_correlation(c, 1.0, -2.0), std::invalid_argument);
}

TEST_CASE("scaled canonical trace norm matches the closed form for rho_p") {
    const BipartiteShape s{2, 4};
    const double p = 0.2;
    const double x = 1.5;
    const double y = 0.7;
    const double numeric = trace_norm(scale_correlation(canonical_correlation(isotropic({s, p})), x, y).entries);
    // (d1^2-1)/d1 p + x/sqrt(d1 d2) sqrt(y^2 + p^2 (d2-d1)/d1)
    const double closed = 1.5 * p + x / std::sqrt(8.0) * std::sqrt(y * y + p * p * 1.0);
    CHECK(numeric == doctest::Approx(closed).epsilon(1e-13));
    CHECK(analytic_cxy_norm(s, {x, y}, p) == doctest::Approx(closed).epsilon(1e-15));
}

TEST_CASE("sandwich identity in the matrix-unit basis") {
    Rng rng(109);
    std::uniform_real_distribution<double> coord(0.0, 3.0);
    for (int trial = 0; trial < 15; ++trial) {
        const BipartiteShape s = BipartiteShape{2 + trial % 2, 2 + trial % 4}.normalized();
        const DensityMatrix rho = trial % 3 == 0 ? random_state(s, rng) : isotropic({s, (trial % 10) / 10.0});
        const double x = coord(rng);
        const double y = coord(rng);
        const RealVector via_canonical = singular_values(scale_correlation(canonical_correlation(rho), x, y).entries);
        CHECK(oracle::max_abs_diff(via_canonical, oracle::sandwich_singular_values(rho, x, y)) <= 1e-10);
    }
}

TEST_CASE("norm bound") {
    for (int d1 = 2; d1 <= 5; ++d1)
        for (int d2 = d1; d2 <= 7; ++d2) CHECK(norm_bound(1.0, 1.0, {d1, d2}) == doctest::Approx(1.0));
    CHECK(local_norm_factor(0.0, 2) == doctest::Approx(std::sqrt(0.5)));
    for (int d = 2; d <= 9; ++d) CHECK(local_norm_factor(std::sqrt(d + 1.0), d) == doctest::Approx(std::sqrt(2.0)));
    CHECK(norm_bound(0.0, 0.0, {2, 3}) == doctest::Approx(std::sqrt(0.5 * 2.0 / 3.0)));
    CHECK_THROWS_AS(norm_bound(-1.0, 0.0, {2, 3}), std::invalid_argument);
}
