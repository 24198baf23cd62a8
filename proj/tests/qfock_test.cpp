#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "gpfock/qfock.hpp"

using namespace gpfock;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd unit(int dim, int k) { return VectorXd::Unit(dim, k); }

VectorXd random_unit(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
    return v / v.norm();
}

}  // namespace

TEST_CASE("inversion counts") {
    CHECK(inversions({0, 1, 2, 3}) == 0);
    CHECK(inversions({3, 2, 1, 0}) == 6);
    CHECK(inversions({1, 0, 2}) == 1);
}

TEST_CASE("level-two Gram matrix is identity plus q times the flip") {
    const double q = 0.37;
    const MatrixXd t2 = tensor_gram(2, 2, q);
    MatrixXd expected = MatrixXd::Identity(4, 4);
    expected(1, 2) += q;
    expected(2, 1) += q;
    expected(0, 0) += q;
    expected(3, 3) += q;
    CHECK((t2 - expected).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-14));

    for (int d : {2, 3}) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> solver(tensor_gram(d, 2, q));
        const VectorXd ev = solver.eigenvalues();
        const int antisym = d * (d - 1) / 2;
        for (int i = 0; i < ev.size(); ++i)
            CHECK(ev(i) == doctest::Approx(i < antisym ? 1 - q : 1 + q).epsilon(1e-13));
    }
}

TEST_CASE("level-three Gram matrix at q = 1 is six times the symmetrizer") {
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(tensor_gram(2, 3, 1.0));
    for (double ev : solver.eigenvalues())
        CHECK((std::abs(ev) < 1e-10 || std::abs(ev - 6.0) < 1e-10));
    CHECK(solver.eigenvalues().maxCoeff() == doctest::Approx(6.0));
}

TEST_CASE("level-one Gram matrix is the identity") {
    CHECK((tensor_gram(3, 1, 0.8) - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Gram matrices commute with tensor powers of orthogonals") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double q : {-0.9, 0.5}) {
        MatrixXd m(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = gauss(rng);
        const MatrixXd orthogonal = Eigen::HouseholderQR<MatrixXd>(m).householderQ();

        const FockSpace space(q, 2, 3);
        const FockOperator gamma = second_quantize(space, orthogonal);
        for (int n = 2; n <= 3; ++n) {
            const MatrixXd block = gamma.matrix().block(space.offset(n), space.offset(n),
                                                        space.level_dim(n), space.level_dim(n));
            const MatrixXd commutator = space.gram(n) * block - block * space.gram(n);
            CHECK(commutator.cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
}

TEST_CASE("deformed inner product") {
    const FockSpace space(0.6, 2, 2);
    const FockVector vac = FockVector::vacuum(space);
    CHECK(q_inner(space, vac, vac) == doctest::Approx(1.0));

    FockVector e1(space);
    e1.level(1) = unit(2, 0);
    CHECK(q_inner(space, e1, e1) == doctest::Approx(1.0));

    FockVector e12(space), e21(space);
    e12.level(2) = VectorXd::Zero(4);
    e12.level(2)(1) = 1.0;  // e1 (x) e2
    e21.level(2) = VectorXd::Zero(4);
    e21.level(2)(2) = 1.0;  // e2 (x) e1
    CHECK(q_inner(space, e12, e21) == doctest::Approx(0.6));

    const FockSpace other(0.6, 2, 3);
    CHECK_THROWS_AS(q_inner(other, vac, vac), input_error);
}

TEST_CASE("creation and annihilation formulas") {
    const double q = -0.4;
    const FockSpace space(q, 2, 3);
    const VectorXd xi = (VectorXd(2) << 0.8, -0.6).finished();

    // creation from the vacuum
    const FockVector created = creation(space, xi).apply(FockVector::vacuum(space));
    CHECK((created.level(1) - xi).norm() == doctest::Approx(0.0));

    // annihilation at level one returns the pairing times the vacuum
    FockVector mu(space);
    mu.level(1) = (VectorXd(2) << 0.3, 0.7).finished();
    const FockVector dropped = annihilation(space, xi).apply(mu);
    CHECK(dropped.level(0)(0) == doctest::Approx(xi.dot(mu.level(1))));

    // the two-factor annihilation formula, written out
    std::mt19937_64 rng(5);
    const VectorXd m1 = random_unit(2, rng), m2 = random_unit(2, rng);
    FockVector tensor(space);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) tensor.level(2)(2 * i + j) = m1(i) * m2(j);
    const FockVector out = annihilation(space, xi).apply(tensor);
    const VectorXd expected = m1.dot(xi) * m2 + q * m2.dot(xi) * m1;
    CHECK((out.level(1) - expected).norm() == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("creation and annihilation are mutually adjoint") {
    std::mt19937_64 rng(7);
    for (double q : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
        const FockSpace space(q, 2, 4);
        for (int level = 0; level + 1 <= 4; ++level) {
            for (int trial = 0; trial < 25; ++trial) {
                const VectorXd xi = random_unit(2, rng);
                FockVector mu(space), nu(space);
                mu.level(level) = random_unit(space.level_dim(level), rng);
                nu.level(level + 1) = random_unit(space.level_dim(level + 1), rng);
                const double lhs = q_inner(space, creation(space, xi).apply(mu), nu);
                const double rhs = q_inner(space, mu, annihilation(space, xi).apply(nu));
                CHECK(std::abs(lhs - rhs) <= 1e-10);
            }
        }
    }
}

TEST_CASE("field operator and vacuum moments") {
    const double q = 0.3;
    const FockSpace space(q, 2, 6);
    const VectorXd e1 = unit(2, 0);
    const FockVector applied = field_operator(space, e1).apply(FockVector::vacuum(space));
    CHECK((applied.level(1) - e1).norm() == doctest::Approx(0.0));

    CHECK(vacuum_moment(space, e1, 2) == doctest::Approx(1.0));
    CHECK(vacuum_moment(space, e1, 4) == doctest::Approx(2.0 + q));
    CHECK(vacuum_moment(space, e1, 6) ==
          doctest::Approx(5.0 + 6.0 * q + 3.0 * q * q + q * q * q));
    CHECK(vacuum_moment(space, e1, 3) == 0.0);
    CHECK_THROWS_AS(vacuum_moment(space, e1, 8), input_error);
    CHECK_THROWS_AS(vacuum_moment(space, 2.0 * e1, 2), input_error);
}

TEST_CASE("pair partition counts") {
    CHECK(pair_partition_oracle(0.5, 2) == doctest::Approx(1.0));
    CHECK(pair_partition_oracle(0.5, 4) == doctest::Approx(2.5));
    CHECK(pair_partition_oracle(1.0, 6) == doctest::Approx(15.0));
    CHECK(pair_partition_oracle(0.0, 8) == doctest::Approx(14.0));  // Catalan
    CHECK(pair_partition_oracle(1.0, 8) == doctest::Approx(105.0));
    CHECK(pair_partition_oracle(0.7, 5) == 0.0);
}

TEST_CASE("Wick words satisfy their defining property") {
    const FockSpace space(0.5, 2, 4);
    const VectorXd e1 = unit(2, 0), e2 = unit(2, 1);

    // a single factor gives the field operator
    const FockOperator w1 = wick(space, {e2});
    const FockOperator field = field_operator(space, e2);
    CHECK((w1.matrix() - field.matrix()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

    // repeated factors; the defining property is checked inside wick()
    const FockOperator w2 = wick(space, {e1, e1});
    const FockVector img = w2.apply(FockVector::vacuum(space));
    CHECK(img.level(2)(0) == doctest::Approx(1.0));
    CHECK(img.level(0)(0) == doctest::Approx(0.0));

    CHECK_NOTHROW(wick(space, {e1, e2, e1}));

    // linear combinations at level 2
    VectorXd coeffs = VectorXd::Zero(4);
    coeffs(1) = 0.5;
    coeffs(2) = -1.5;
    CHECK_NOTHROW(wick(space, 2, coeffs));

    CHECK_THROWS_WITH_AS(wick(space, {e1, e1, e1, e1, e1}),
                         doctest::Contains("required cap"), input_error);
}

TEST_CASE("Wick words multiply consistently at q = 0") {
    // products of Wick words applied to the vacuum match direct applications
    const FockSpace space(0.0, 2, 4);
    const VectorXd e1 = unit(2, 0), e2 = unit(2, 1);
    const FockOperator a = wick(space, {e1, e2});
    const FockOperator b = wick(space, {e2});
    const FockVector lhs = a.compose(b).apply(FockVector::vacuum(space));
    const FockVector rhs = a.apply(b.apply(FockVector::vacuum(space)));
    for (int n = 0; n <= 3; ++n)
        CHECK((lhs.level(n) - rhs.level(n)).norm() == doctest::Approx(0.0));
}

TEST_CASE("second quantization") {
    const FockSpace space(0.5, 2, 3);
    const FockOperator id = second_quantize(space, MatrixXd::Identity(2, 2));
    CHECK((id.matrix() - MatrixXd::Identity(space.total_dim(), space.total_dim()))
              .cwiseAbs()
              .maxCoeff() == doctest::Approx(0.0));

    const double c = std::cos(0.7);
    const FockOperator damped = second_quantize(space, c * MatrixXd::Identity(2, 2));
    for (int n = 0; n <= 3; ++n) {
        const MatrixXd block = damped.matrix().block(space.offset(n), space.offset(n),
                                                     space.level_dim(n), space.level_dim(n));
        CHECK((block - std::pow(c, n) * MatrixXd::Identity(space.level_dim(n),
                                                           space.level_dim(n)))
                  .cwiseAbs()
                  .maxCoeff() == doctest::Approx(0.0).epsilon(1e-13));
    }

    // at a quarter turn every positive level dies
    const FockOperator killed =
        second_quantize(space, std::cos(M_PI / 2) * MatrixXd::Identity(2, 2));
    for (int n = 1; n <= 3; ++n)
        CHECK(killed.matrix()
                  .block(space.offset(n), space.offset(n), space.level_dim(n),
                         space.level_dim(n))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-15);

    CHECK_THROWS_AS(second_quantize(space, 2.0 * MatrixXd::Identity(2, 2)), input_error);
}

TEST_CASE("scaled projections have the compact decay profile") {
    const FockSpace space(0.4, 2, 4);
    const double c = 0.6;
    MatrixXd p = MatrixXd::Zero(2, 2);
    p(0, 0) = 1.0;  // rank-one projection
    const FockOperator op = second_quantize(space, c * p);
    for (int n = 1; n <= 4; ++n) {
        const MatrixXd block = op.matrix().block(space.offset(n), space.offset(n),
                                                 space.level_dim(n), space.level_dim(n));
        const VectorXd sv = block.jacobiSvd().singularValues();
        CHECK(sv(0) == doctest::Approx(std::pow(c, n)));
        // everything off the range of the projection power vanishes
        CHECK(sv.tail(sv.size() - 1).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("rotation deformation") {
    const Splitting split{2, 2};
    const FockSpace space(0.5, 4, 3);

    const FockOperator at_zero = rotation_deformation(space, split, 0.0);
    CHECK((at_zero.matrix() - MatrixXd::Identity(space.total_dim(), space.total_dim()))
              .cwiseAbs()
              .maxCoeff() == doctest::Approx(0.0));

    // a quarter turn moves the first summand onto the second at level 1
    const FockOperator quarter = rotation_deformation(space, split, M_PI / 2);
    FockVector v(space);
    v.level(1) = unit(4, 0);
    const FockVector moved = quarter.apply(v);
    CHECK(moved.level(1)(2) == doctest::Approx(1.0));
    CHECK(std::abs(moved.level(1)(0)) <= 1e-15);

    // inverse rotation composes to the identity
    const FockOperator there = rotation_deformation(space, split, 0.8);
    const FockOperator back = rotation_deformation(space, split, -0.8);
    CHECK((there.compose(back).matrix() -
           MatrixXd::Identity(space.total_dim(), space.total_dim()))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);

    // the deformed inner product is preserved
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        FockVector x(space), y(space);
        for (int n = 0; n <= 3; ++n) {
            x.level(n) = random_unit(space.level_dim(n), rng);
            y.level(n) = random_unit(space.level_dim(n), rng);
        }
        CHECK(std::abs(q_inner(space, there.apply(x), there.apply(y)) -
                       q_inner(space, x, y)) <= 1e-10);
    }

    CHECK_THROWS_AS(rotation_deformation(space, Splitting{3, 1}, 0.5), input_error);
}

TEST_CASE("conditional projection") {
    const Splitting split{1, 1};
    const FockSpace space(0.5, 2, 3);
    const FockOperator expectation = conditional_projection(space, split);

    const FockVector vac = FockVector::vacuum(space);
    CHECK((expectation.apply(vac).level(0) - vac.level(0)).norm() == doctest::Approx(0.0));

    // kills any simple tensor with a second-summand factor
    FockVector mixed(space);
    mixed.level(2)(1) = 1.0;  // e1 (x) e2
    CHECK(expectation.apply(mixed).level(2).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

    // idempotent and q-self-adjoint
    CHECK((expectation.compose(expectation).matrix() - expectation.matrix())
              .cwiseAbs()
              .maxCoeff() <= 1e-14);
    std::mt19937_64 rng(13);
    FockVector x(space), y(space);
    for (int n = 0; n <= 3; ++n) {
        x.level(n) = random_unit(space.level_dim(n), rng);
        y.level(n) = random_unit(space.level_dim(n), rng);
    }
    CHECK(std::abs(q_inner(space, expectation.apply(x), y) -
                   q_inner(space, x, expectation.apply(y))) <= 1e-10);
}

TEST_CASE("compressed rotation acts as a pure damping on first-summand levels") {
    const Splitting split{1, 1};
    const FockSpace space(0.5, 2, 4);
    const FockOperator expectation = conditional_projection(space, split);
    for (double t : {0.3, 1.1}) {
        const FockOperator compressed =
            expectation.compose(rotation_deformation(space, split, t)).compose(expectation);
        for (int n = 1; n <= 4; ++n) {
            // the all-first-summand basis tensor sits at local index 0
            FockVector v(space);
            v.level(n)(0) = 1.0;
            const FockVector image = compressed.apply(v);
            CHECK(image.level(n)(0) == doctest::Approx(std::pow(std::cos(t), n)));
        }
    }
}

TEST_CASE("compressed multiplication stays in the band") {
    const Splitting split{1, 1};
    const VectorXd f = unit(2, 1);

    for (int n : {1, 2, 3}) {
        const FockSpace space(0.5, 2, n + 2);
        WickWordSpec side{1, f};
        WickWordSpec middle{n, VectorXd::Zero(space.level_dim(n))};
        middle.coeffs(0) = 1.0;  // e1 tensor power
        const PhiMapResult r = phi_map(space, split, side, side, middle);
        CHECK(r.off_band_mass <= 1e-9);
        CHECK(r.band_lo == std::max(0, n - 2));
        CHECK(r.band_hi == std::min(n + 2, space.cap()));
    }

    // scalar middle word: the image is the expectation of x y, levels <= 2
    const FockSpace space(0.5, 2, 2);
    WickWordSpec side{1, f};
    WickWordSpec scalar{0, VectorXd::Ones(1)};
    const PhiMapResult r = phi_map(space, split, side, side, scalar);
    CHECK(r.off_band_mass <= 1e-12);
    CHECK(r.band_hi == 2);

    CHECK_THROWS_WITH_AS(
        phi_map(FockSpace(0.5, 2, 2), split, WickWordSpec{1, f}, WickWordSpec{1, f},
                WickWordSpec{1, unit(2, 0)}),
        doctest::Contains("required cap"), input_error);

    // side words must touch the second summand
    CHECK_THROWS_AS(phi_map(FockSpace(0.5, 2, 3), split, WickWordSpec{1, unit(2, 0)},
                            WickWordSpec{1, f}, WickWordSpec{1, unit(2, 0)}),
                    input_error);
}

TEST_CASE("compression band holds with room above") {
    // with cap above the reachable levels, mass beyond n + 2 must still vanish
    const Splitting split{1, 1};
    const int n = 2;
    const FockSpace space(0.5, 2, n + 4);
    WickWordSpec side{1, unit(2, 1)};
    WickWordSpec middle{n, VectorXd::Zero(space.level_dim(n))};
    middle.coeffs(0) = 1.0;
    const PhiMapResult r = phi_map(space, split, side, side, middle);
    CHECK(r.band_hi == n + 2);
    CHECK(r.off_band_mass <= 1e-9);
    for (int level = n + 3; level <= space.cap(); ++level)
        CHECK(r.image.level(level).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("moments at the endpoints of the deformation range") {
    // q = -1 and q = 1 stay meaningful on the truncated space
    const FockSpace fermionic(-1.0, 2, 4);
    const FockSpace bosonic(1.0, 2, 4);
    const VectorXd e1 = unit(2, 0);
    CHECK(vacuum_moment(fermionic, e1, 4) == doctest::Approx(1.0));  // 2 + q
    CHECK(vacuum_moment(bosonic, e1, 4) == doctest::Approx(3.0));
    CHECK(pair_partition_oracle(-1.0, 6) == doctest::Approx(1.0));  // 5 - 6 + 3 - 1
    CHECK(pair_partition_oracle(1.0, 4) == doctest::Approx(3.0));
}

TEST_CASE("compression ratios shrink like powers of q") {
    const Splitting split{1, 1};
    const double q = 0.5;
    const FockSpace space(q, 2, 6);
    WickWordSpec side{1, unit(2, 1)};

    double previous = 0.0;
    for (int n = 1; n <= 4; ++n) {
        WickWordSpec middle{n, VectorXd::Zero(space.level_dim(n))};
        middle.coeffs(0) = 1.0;
        const double ratio = phi_map(space, split, side, side, middle).norm_ratio;
        if (n > 1) CHECK(ratio / previous <= q + 0.05);
        previous = ratio;
    }
}

TEST_CASE("space construction guards") {
    CHECK_THROWS_AS(FockSpace(1.5, 2, 2), input_error);
    CHECK_THROWS_AS(FockSpace(0.5, 0, 2), input_error);
    Budget tiny;
    tiny.max_matrix_bytes = 1024;
    CHECK_THROWS_AS(FockSpace(0.5, 3, 5, tiny), budget_error);
}
