#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "support.hpp"
#include "wqd/error.hpp"
#include "wqd/info.hpp"
#include "wqd/maps.hpp"
#include "wqd/states.hpp"

using namespace wqd;
using wqd::test::max_abs_diff;

namespace {

ComplexMatrix proj(Complex a, Complex b) {
    Eigen::VectorXcd v(2);
    v << a, b;
    return v * v.adjoint();
}

const Pvm& computational() {
    static const Pvm p = pvm_from_bloch(BlochAngles(0.0, 0.0));
    return p;
}

} // namespace

TEST_CASE("strength and angle types") {
    CHECK_NOTHROW(MonitoringStrength(0.0));
    CHECK_NOTHROW(MonitoringStrength(1.0));
    CHECK_THROWS_AS(MonitoringStrength(1.5), ValidationError);
    CHECK_THROWS_AS(MonitoringStrength(-0.1), ValidationError);
    CHECK_THROWS_AS(WeakStrength{std::numeric_limits<double>::infinity()}, ValidationError);
    CHECK_THROWS_AS(BlochAngles(-0.1, 0.0), ValidationError);
    CHECK_THROWS_AS(BlochAngles(0.0, 2.0 * std::numbers::pi), ValidationError);

    const auto c = BlochAngles::canonical(4.0, -0.5);
    CHECK(c.theta() == std::numbers::pi);
    CHECK(c.phi() == doctest::Approx(2.0 * std::numbers::pi - 0.5));
}

TEST_CASE("pvm_from_bloch") {
    const double r = 1.0 / std::numbers::sqrt2;
    const Pvm z = pvm_from_bloch(BlochAngles(0.0, 0.0));
    CHECK(max_abs_diff(z[0], proj(1, 0)) < 1e-15);
    CHECK(max_abs_diff(z[1], proj(0, 1)) < 1e-15);

    const Pvm flipped = pvm_from_bloch(BlochAngles(std::numbers::pi, 0.0));
    CHECK(max_abs_diff(flipped[0], proj(0, 1)) < 1e-15);
    CHECK(max_abs_diff(flipped[1], proj(1, 0)) < 1e-15);

    const Pvm x = pvm_from_bloch(BlochAngles(std::numbers::pi / 2, 0.0));
    CHECK(max_abs_diff(x[0], proj(r, r)) < 1e-15);
    CHECK(max_abs_diff(x[1], proj(r, -r)) < 1e-15);
}

TEST_CASE("collapse") {
    const auto singlet = bell(3);
    const auto out = collapse(singlet, computational(), 0, Side::B);
    CHECK(out.probability == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(max_abs_diff(out.state.marginal(Side::A), proj(0, 1)) < 1e-15);
    CHECK(max_abs_diff(out.state.marginal(Side::B), proj(1, 0)) < 1e-15);

    ComplexMatrix ra(2, 2);
    ra << 0.6, 0.1, 0.1, 0.4;
    const auto eigen_b = product(ra, computational()[1]);
    const auto same = collapse(eigen_b, computational(), 1, Side::B);
    CHECK(same.probability == doctest::Approx(1.0));
    CHECK(max_abs_diff(same.state.matrix(), eigen_b.matrix()) < 1e-15);
    CHECK_THROWS_AS(collapse(eigen_b, computational(), 0, Side::B), ZeroProbabilityError);
    CHECK_THROWS_AS(collapse(eigen_b, computational(), 2, Side::B), ValidationError);
    CHECK_THROWS_AS(collapse(random_density(2, 3, 2, 1), computational(), 0, Side::B), DimensionError);

    std::mt19937_64 rng(1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = random_density(2, 2, 4, seed);
        const Pvm pvm = test::random_qubit_pvm(rng);
        for (Side side : {Side::A, Side::B}) {
            double total = 0.0;
            for (std::size_t b = 0; b < 2; ++b) {
                const auto c = collapse(rho, pvm, b, side);
                total += c.probability;
                CHECK(max_abs_diff(c.state.marginal(side), pvm[b]) < 1e-12);
            }
            CHECK(std::abs(total - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("weak_collapse") {
    const auto rho = random_density(2, 2, 4, 77);
    std::mt19937_64 rng(2);
    const Pvm pvm = test::random_qubit_pvm(rng);
    CHECK(max_abs_diff(weak_collapse(rho, pvm, 0, MonitoringStrength(0.0), Side::B).matrix(), rho.matrix()) == 0.0);
    const auto strong = collapse(rho, pvm, 0, Side::B).state.matrix();
    CHECK(max_abs_diff(weak_collapse(rho, pvm, 0, MonitoringStrength(1.0), Side::B).matrix(), strong) < 1e-15);

    // Iterating the weak collapse walks monotonically towards the collapse output.
    DensityMatrix state = rho;
    double previous = max_abs_diff(state.matrix(), strong);
    for (int n = 1; n <= 20; ++n) {
        state = weak_collapse(state, pvm, 0, MonitoringStrength(0.3), Side::B);
        CHECK_NOTHROW(DensityMatrix(state.matrix(), 2, 2));
        const double d = max_abs_diff(state.matrix(), strong);
        CHECK(d < previous);
        previous = d;
    }
    CHECK(previous < 1e-2);
}

TEST_CASE("unrevealed_projective") {
    const auto singlet = bell(3);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(1, 1) = 0.5;
    expected(2, 2) = 0.5;
    CHECK(max_abs_diff(unrevealed_projective(singlet, computational(), Side::B).matrix(), expected) < 1e-15);

    std::mt19937_64 rng(4);
    const Pvm pvm = test::random_qubit_pvm(rng);
    const std::vector<double> w{0.3, 0.7};
    const std::vector<ComplexMatrix> a{random_density(2, 1, 2, 1).matrix(), random_density(2, 1, 1, 2).matrix()};
    const auto qc = quantum_classical(w, a, pvm);
    CHECK(max_abs_diff(unrevealed_projective(qc, pvm, Side::B).matrix(), qc.matrix()) < 1e-12);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = random_density(2, 3, 3, seed);
        const Pvm p3 = Pvm::from_basis(test::random_unitary(3, rng));
        const auto once = unrevealed_projective(rho, p3, Side::B);
        CHECK(std::abs(once.matrix().trace() - Complex(1.0)) <= 1e-12);
        CHECK(max_abs_diff(unrevealed_projective(once, p3, Side::B).matrix(), once.matrix()) < 1e-12);
        const Pvm p2 = test::random_qubit_pvm(rng);
        const auto a_side = unrevealed_projective(rho, p2, Side::A);
        CHECK(max_abs_diff(a_side.marginal(Side::B), rho.marginal(Side::B)) < 1e-12);
    }

    // Degenerate (rank-2) projectors are accepted by the channel maps.
    ComplexMatrix p01 = ComplexMatrix::Zero(3, 3), p2 = ComplexMatrix::Zero(3, 3);
    p01(0, 0) = p01(1, 1) = 1.0;
    p2(2, 2) = 1.0;
    const auto rho3 = random_density(2, 3, 6, 3);
    CHECK_NOTHROW(DensityMatrix(unrevealed_projective(rho3, Pvm({p01, p2}), Side::B).matrix(), 2, 3));
}

TEST_CASE("monitoring") {
    const auto rho = random_density(2, 2, 4, 31);
    std::mt19937_64 rng(6);
    const Pvm pvm = test::random_qubit_pvm(rng);
    CHECK(max_abs_diff(monitoring(rho, pvm, MonitoringStrength(0.0), Side::B).matrix(), rho.matrix()) == 0.0);
    CHECK(max_abs_diff(monitoring(rho, pvm, MonitoringStrength(1.0), Side::B).matrix(),
                       unrevealed_projective(rho, pvm, Side::B).matrix()) < 1e-15);

    const auto werner = werner_singlet(WernerParameter(0.5));
    for (int k = 0; k < 5; ++k) {
        const auto ev = hermitian_eigenvalues(
            monitoring(werner, test::random_qubit_pvm(rng), MonitoringStrength(0.5), Side::B).matrix());
        const double expected[] = {0.125, 0.125, 0.25, 0.5};
        for (int i = 0; i < 4; ++i) CHECK(std::abs(ev[static_cast<std::size_t>(i)] - expected[i]) < 1e-12);
    }

    SUBCASE("non-signaling, absorption, monotonicity") {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto state = random_density(2, 2 + static_cast<int>(seed % 2), 2 + static_cast<int>(seed % 3), seed);
            const Side side = seed % 3 == 0 ? Side::A : Side::B;
            const Pvm p = state.dim(side) == 2 ? test::random_qubit_pvm(rng)
                                               : Pvm::from_basis(test::random_unitary(state.dim(side), rng));
            const MonitoringStrength eps(u(rng));
            const auto m = monitoring(state, p, eps, side);
            CHECK(max_abs_diff(m.marginal(other(side)), state.marginal(other(side))) <= 1e-10);
            CHECK(max_abs_diff(unrevealed_projective(m, p, side).matrix(),
                               unrevealed_projective(state, p, side).matrix()) <= 1e-10);
            CHECK(quantum_mutual_info(m) <= quantum_mutual_info(state) + 1e-9);
        }
    }
}

TEST_CASE("monitoring_power") {
    const auto rho = random_density(2, 2, 4, 12);
    std::mt19937_64 rng(8);
    const Pvm pvm = test::random_qubit_pvm(rng);
    const MonitoringStrength eps(0.5);
    CHECK(max_abs_diff(monitoring_power(rho, pvm, eps, 0, Side::B).matrix(), rho.matrix()) == 0.0);
    CHECK(max_abs_diff(monitoring_power(rho, pvm, eps, 1, Side::B).matrix(),
                       monitoring(rho, pvm, eps, Side::B).matrix()) < 1e-15);
    CHECK(max_abs_diff(monitoring_power(rho, pvm, eps, 50, Side::B).matrix(),
                       unrevealed_projective(rho, pvm, Side::B).matrix()) <= 1e-10);
    CHECK_THROWS_AS(monitoring_power(rho, pvm, eps, -1, Side::B), ValidationError);

    for (int n = 1; n <= 10; ++n) {
        DensityMatrix composed = rho;
        for (int k = 0; k < n; ++k) composed = monitoring(composed, pvm, MonitoringStrength(0.3), Side::B);
        CHECK(max_abs_diff(monitoring_power(rho, pvm, MonitoringStrength(0.3), n, Side::B).matrix(),
                           composed.matrix()) <= 1e-10);
    }
}

TEST_CASE("dichotomic operators and channel") {
    const double r = 1.0 / std::numbers::sqrt2;
    const auto zero = dichotomic_operators(WeakStrength(0.0), computational());
    CHECK(max_abs_diff(zero.plus, r * identity(2)) < 1e-15);
    CHECK(max_abs_diff(zero.minus, r * identity(2)) < 1e-15);

    const auto sharp = dichotomic_operators(WeakStrength(20.0), computational());
    CHECK(max_abs_diff(sharp.plus, computational()[1]) <= 1e-8);
    CHECK(max_abs_diff(sharp.minus, computational()[0]) <= 1e-8);

    std::mt19937_64 rng(9);
    for (double x : {-3.0, -0.7, 0.0, 0.4, 1.0, 5.0}) {
        const auto ops = dichotomic_operators(WeakStrength(x), test::random_qubit_pvm(rng));
        CHECK(max_abs_diff(ops.plus * ops.plus + ops.minus * ops.minus, identity(2)) <= 1e-12);
    }

    ComplexMatrix p01 = ComplexMatrix::Zero(3, 3), p2 = ComplexMatrix::Zero(3, 3), p1 = ComplexMatrix::Zero(3, 3);
    p01(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    p2(2, 2) = 1.0;
    CHECK_THROWS_AS(dichotomic_operators(WeakStrength(1.0), Pvm({p01, p1, p2})), ValidationError);

    const auto rho = random_density(2, 2, 4, 44);
    const Pvm pvm = test::random_qubit_pvm(rng);
    CHECK(max_abs_diff(dichotomic_channel(rho, WeakStrength(0.0), pvm, Side::B).matrix(), rho.matrix()) < 1e-15);
    const double x_half = std::log(2.0 + std::sqrt(3.0));  // cosh x = 2
    CHECK(max_abs_diff(dichotomic_channel(rho, WeakStrength(x_half), pvm, Side::B).matrix(),
                       monitoring(rho, pvm, MonitoringStrength(0.5), Side::B).matrix()) <= 1e-12);
    CHECK(max_abs_diff(dichotomic_channel(rho, WeakStrength(20.0), pvm, Side::B).matrix(),
                       unrevealed_projective(rho, pvm, Side::B).matrix()) <= 1e-8);

    for (double x : {-2.0, -0.5, 0.0, 0.5, 2.0})
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto state = random_density(2, 2, 1 + static_cast<int>(seed % 4), 200 + seed);
            const Side side = seed % 2 == 0 ? Side::A : Side::B;
            const Pvm p = test::random_qubit_pvm(rng);
            CHECK(max_abs_diff(dichotomic_channel(state, WeakStrength(x), p, side).matrix(),
                               monitoring(state, p, MonitoringStrength(1.0 - 1.0 / std::cosh(x)), side).matrix()) <= 1e-10);
        }
}

TEST_CASE("stinespring_dilation") {
    std::mt19937_64 rng(10);
    const auto rho = random_density(2, 2, 4, 55);
    const Pvm pvm = test::random_qubit_pvm(rng);

    const auto none = stinespring_dilation(pvm, MonitoringStrength(0.0), 2, 2);
    CHECK(none.dim_ancilla() == 3);
    CHECK(max_abs_diff(none.apply(rho).matrix(), rho.matrix()) < 1e-15);
    // Ancilla stays in |x_0>: only the k = 0 block is populated.
    const ComplexMatrix big = none.dilate(rho);
    CHECK(max_abs_diff(partial_trace(big, 4, 3, Side::A), [] {
              ComplexMatrix m = ComplexMatrix::Zero(3, 3);
              m(0, 0) = 1.0;
              return m;
          }()) < 1e-15);

    const auto full = stinespring_dilation(pvm, MonitoringStrength(1.0), 2, 2);
    CHECK(max_abs_diff(full.apply(rho).matrix(), unrevealed_projective(rho, pvm, Side::B).matrix()) < 1e-15);

    const auto weak = stinespring_dilation(pvm, MonitoringStrength(0.3), 2, 2);
    CHECK(max_abs_diff(weak.matrix().adjoint() * weak.matrix(), identity(4)) <= 1e-10);
    CHECK(max_abs_diff(weak.apply(rho).matrix(), monitoring(rho, pvm, MonitoringStrength(0.3), Side::B).matrix()) <= 1e-10);

    const Pvm p3 = Pvm::from_basis(test::random_unitary(3, rng));
    const auto qutrit = stinespring_dilation(p3, MonitoringStrength(0.6), 2, 3);
    const auto rho3 = random_density(2, 3, 5, 6);
    CHECK(max_abs_diff(qutrit.apply(rho3).matrix(), monitoring(rho3, p3, MonitoringStrength(0.6), Side::B).matrix()) <= 1e-10);
    const auto a_side = stinespring_dilation(pvm, MonitoringStrength(0.6), 2, 3, Side::A);
    CHECK(max_abs_diff(a_side.apply(rho3).matrix(), monitoring(rho3, pvm, MonitoringStrength(0.6), Side::A).matrix()) <= 1e-10);

    CHECK_THROWS_AS(stinespring_dilation(p3, MonitoringStrength(0.5), 2, 2), DimensionError);
}
