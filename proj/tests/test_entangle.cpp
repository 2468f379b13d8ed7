#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lde/entangle.hpp"

using namespace lde;

namespace {

Vector qubit_pair_state(std::initializer_list<Complex> amps) {
    Vector v(4);
    int i = 0;
    for (Complex a : amps)
        v[i++] = a;
    v.normalize();
    return v;
}

ProbePairState pure_state(const Vector& v) {
    ProbePairState s;
    s.rho = v * v.adjoint();
    return s;
}

const Vector singlet = qubit_pair_state({0.0, 1.0, -1.0, 0.0});

// fixed corpus of separable two-qubit states: product pures and mixtures
std::vector<ProbePairState> separable_corpus() {
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto random_qubit = [&] {
        Eigen::Vector2cd q;
        q << Complex(dist(rng), dist(rng)), Complex(dist(rng), dist(rng));
        q.normalize();
        return q;
    };
    std::vector<ProbePairState> corpus;
    for (int i = 0; i < 6; ++i) {
        DenseMatrix rho = DenseMatrix::Zero(4, 4);
        const int pieces = 1 + i % 3;
        std::vector<double> weights;
        double total = 0.0;
        for (int p = 0; p < pieces; ++p) {
            weights.push_back(std::abs(dist(rng)) + 0.1);
            total += weights.back();
        }
        for (int p = 0; p < pieces; ++p) {
            const Eigen::Vector2cd qa = random_qubit();
            const Eigen::Vector2cd qb = random_qubit();
            Vector product(4);
            for (int ia = 0; ia < 2; ++ia)
                for (int ib = 0; ib < 2; ++ib)
                    product[ia * 2 + ib] = qa[ia] * qb[ib];
            rho += (weights[static_cast<std::size_t>(p)] / total) * (product * product.adjoint());
        }
        ProbePairState s;
        s.rho = rho;
        corpus.push_back(s);
    }
    return corpus;
}

} // namespace

TEST_CASE("negativity anchors") {
    CHECK(negativity(pure_state(singlet)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(negativity(pure_state(qubit_pair_state({1.0, 0.0, 0.0, 0.0}))) ==
          doctest::Approx(0.0));

    // Werner-type mixture: p * singlet + (1-p)/3 * triplet projector, p = 3/4
    DenseMatrix triplet = DenseMatrix::Identity(4, 4) - singlet * singlet.adjoint();
    ProbePairState werner;
    werner.rho = 0.75 * (singlet * singlet.adjoint()) + (0.25 / 3.0) * triplet;
    CHECK(negativity(werner) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("negativity is independent of the transposed side") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        Vector v(4);
        for (int i = 0; i < 4; ++i)
            v[i] = Complex(dist(rng), dist(rng));
        v.normalize();
        const ProbePairState s = pure_state(v);
        CHECK(std::abs(negativity(s, TransposeSide::a) - negativity(s, TransposeSide::b)) <=
              1e-12);
    }
}

TEST_CASE("negativity vanishes on the separable corpus") {
    for (const ProbePairState& s : separable_corpus())
        CHECK(negativity(s) <= 1e-12);
}

TEST_CASE("negativity stays within the two-qubit range") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        Vector v(4);
        for (int i = 0; i < 4; ++i)
            v[i] = Complex(dist(rng), dist(rng));
        v.normalize();
        const double n = negativity(pure_state(v));
        CHECK(n >= 0.0);
        CHECK(n <= 0.5 + 1e-12);
    }
}

TEST_CASE("invalid states are rejected") {
    ProbePairState bad;
    bad.rho = DenseMatrix::Identity(4, 4); // trace 4
    CHECK_THROWS_AS(negativity(bad), InvalidState);

    bad.rho = 0.25 * DenseMatrix::Identity(4, 4);
    bad.rho(0, 1) = Complex(0.0, 0.3); // not Hermitian
    CHECK_THROWS_AS(negativity(bad), InvalidState);

    bad.rho = DenseMatrix::Zero(4, 4);
    bad.rho(0, 0) = 1.5;
    bad.rho(1, 1) = -0.5; // negative weight
    CHECK_THROWS_AS(negativity(bad), InvalidState);
}

TEST_CASE("thermal state limits") {
    const DenseMatrix h = heisenberg_pair_matrix(1.0);

    const ProbePairState mixed = thermal_state(h, 0.0);
    CHECK((mixed.rho - 0.25 * DenseMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-14);

    const ProbePairState cold = thermal_state(h, 50.0);
    CHECK(negativity(cold) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::real((singlet.adjoint() * cold.rho * singlet)(0)) ==
          doctest::Approx(1.0).epsilon(1e-10));

    const ProbePairState flat = thermal_state(DenseMatrix::Zero(4, 4), 2.0);
    CHECK((flat.rho - 0.25 * DenseMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-14);

    CHECK_THROWS_AS(thermal_state(h, -1.0), Error);
}

TEST_CASE("thermal entanglement threshold is ln(3)/(4J)") {
    const double beta_star = entanglement_threshold(heisenberg_pair_matrix(1.0));
    CHECK(std::abs(beta_star - std::log(3.0) / 4.0) <= 1e-6);

    // threshold scales as 1/J
    const double beta_star_2 = entanglement_threshold(heisenberg_pair_matrix(2.0));
    CHECK(std::abs(beta_star_2 - std::log(3.0) / 8.0) <= 1e-6);
}

TEST_CASE("negativity switches on exactly at the threshold") {
    const DenseMatrix h = heisenberg_pair_matrix(1.0);
    const double beta_star = std::log(3.0) / 4.0;
    for (double delta : {0.2, 0.1, 0.02, 0.004}) {
        CHECK(negativity(thermal_state(h, beta_star - delta)) <= 1e-10);
        CHECK(negativity(thermal_state(h, beta_star + delta)) > 1e-10);
    }
    // monotone growth above threshold for the antiferromagnetic pair
    double previous = 0.0;
    for (double beta = beta_star + 0.05; beta < beta_star + 1.0; beta += 0.1) {
        const double n = negativity(thermal_state(h, beta));
        CHECK(n > previous);
        previous = n;
    }
}

TEST_CASE("ferromagnetic coupling never entangles") {
    CHECK_THROWS_AS(entanglement_threshold(heisenberg_pair_matrix(-1.0)), NeverEntangled);
    for (double beta : {0.1, 0.5, 2.0, 20.0})
        CHECK(negativity(thermal_state(heisenberg_pair_matrix(-1.0), beta)) <= 1e-12);
    CHECK_THROWS_AS(entanglement_threshold(DenseMatrix::Zero(4, 4)), NeverEntangled);
}

TEST_CASE("threshold is stable under bracketing changes") {
    // halving the initial bracket step must not move the result beyond 1e-8;
    // emulate by scaling H, where beta* scales exactly inversely
    const double j = 0.37;
    const double a = entanglement_threshold(heisenberg_pair_matrix(j));
    const double b = entanglement_threshold(heisenberg_pair_matrix(2.0 * j));
    CHECK(std::abs(a - 2.0 * b) <= 2e-8);
}

TEST_CASE("thermal scan fills the curve and the threshold") {
    const ThermalCurve curve =
        thermal_scan(heisenberg_pair_matrix(1.0), {0.1, 0.2, 0.3, 0.4, 0.5}, true);
    REQUIRE(curve.points.size() == 5);
    CHECK(curve.points[0].negativity == 0.0);
    CHECK(curve.points[1].negativity == 0.0);
    CHECK(curve.points[2].negativity > 0.0);
    CHECK(curve.points[4].negativity > curve.points[3].negativity);
    REQUIRE(curve.threshold_beta.has_value());
    CHECK(std::abs(*curve.threshold_beta - std::log(3.0) / 4.0) <= 1e-6);
}
