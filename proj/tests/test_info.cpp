#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "support.hpp"
#include "wqd/error.hpp"
#include "wqd/info.hpp"
#include "wqd/maps.hpp"
#include "wqd/quantifiers.hpp"
#include "wqd/states.hpp"

using namespace wqd;

namespace {

const double kLn2 = std::numbers::ln2;

JointDistribution random_joint(std::mt19937_64& rng, int nx, int ny, bool with_zeros) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixXd p(nx, ny);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) p(x, y) = (with_zeros && u(rng) < 0.3) ? 0.0 : u(rng);
    if (p.sum() == 0.0) p(0, 0) = 1.0;
    p /= p.sum();
    return JointDistribution(p);
}

} // namespace

TEST_CASE("shannon_entropy") {
    CHECK(shannon_entropy(std::vector<double>{1.0, 0.0}) == 0.0);
    CHECK(shannon_entropy(std::vector<double>{0.5, 0.5}) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(std::abs(shannon_entropy(std::vector<double>{0.125, 0.125, 0.125, 0.625}) - 1.0735428464085232) < 1e-14);
    CHECK_THROWS_AS(shannon_entropy(std::vector<double>{1.2, -0.2}), ValidationError);
    CHECK_THROWS_AS(shannon_entropy(std::vector<double>{0.5, 0.6}), ValidationError);
}

TEST_CASE("classical mutual information, both forms") {
    Eigen::MatrixXd indep(2, 3);
    const double px[] = {0.3, 0.7};
    const double py[] = {0.2, 0.5, 0.3};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 3; ++y) indep(x, y) = px[x] * py[y];
    const JointDistribution product_joint(indep);
    CHECK(std::abs(classical_mutual_info_i(product_joint)) < 1e-15);
    CHECK(std::abs(classical_mutual_info_j(product_joint)) < 1e-15);

    Eigen::MatrixXd corr(2, 2);
    corr << 0.5, 0.0, 0.0, 0.5;
    CHECK(classical_mutual_info_i(JointDistribution(corr)) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(classical_mutual_info_j(JointDistribution(corr)) == doctest::Approx(kLn2).epsilon(1e-15));

    Eigen::MatrixXd bad(2, 2);
    bad << 0.5, 0.5, 0.5, -0.5;
    CHECK_THROWS_AS(JointDistribution{bad}, ValidationError);
    bad << 0.5, 0.5, 0.5, 0.5;
    CHECK_THROWS_AS(JointDistribution{bad}, ValidationError);

    SUBCASE("I equals J on random tables") {
        std::mt19937_64 rng(17);
        double worst = 0.0;
        for (int n = 0; n < 1000; ++n) {
            const auto j = random_joint(rng, 1 + n % 5, 1 + (n / 5) % 5, n % 2 == 0);
            const double i_val = classical_mutual_info_i(j);
            CHECK(i_val >= -1e-15);
            worst = std::max(worst, std::abs(i_val - classical_mutual_info_j(j)));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("von_neumann_entropy") {
    CHECK(von_neumann_entropy(bell(3)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(von_neumann_entropy(bell(3))) < 1e-12);
    CHECK(von_neumann_entropy(ComplexMatrix(0.5 * identity(2))) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(std::abs(von_neumann_entropy(werner_singlet(WernerParameter(0.5))) - 1.0735428464085232) < 1e-12);

    ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
    negative(0, 0) = 1.1;
    negative(1, 1) = -0.1;
    CHECK_THROWS_AS(von_neumann_entropy(negative), ValidationError);
    CHECK_THROWS_AS(von_neumann_entropy(ComplexMatrix(identity(2))), ValidationError);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = random_density(2, 3, 6, seed);
        const double s = von_neumann_entropy(rho);
        CHECK(s >= 0.0);
        CHECK(s <= std::log(6.0) + 1e-12);
    }
}

TEST_CASE("quantum_mutual_info") {
    ComplexMatrix ra(2, 2), rb(2, 2);
    ra << 0.7, 0.2, 0.2, 0.3;
    rb << 0.5, Complex(0.0, 0.1), Complex(0.0, -0.1), 0.5;
    CHECK(std::abs(quantum_mutual_info(product(ra, rb))) < 1e-12);
    CHECK(std::abs(quantum_mutual_info(bell(3)) - 2.0 * kLn2) < 1e-12);
    CHECK(std::abs(quantum_mutual_info(werner_singlet(WernerParameter(0.5))) - 0.31275151471136742) < 1e-12);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto rho = random_density(2 + static_cast<int>(seed % 2), 2, 1 + static_cast<int>(seed % 4), seed);
        CHECK(quantum_mutual_info(rho) >= -1e-9);
    }
}

TEST_CASE("mutual_info_gap") {
    const auto rho = random_density(2, 2, 3, 8);
    CHECK(mutual_info_gap(rho, rho) == 0.0);

    const auto singlet = werner_singlet(WernerParameter(1.0));
    const auto dephased = unrevealed_projective(singlet, pvm_from_bloch(BlochAngles(0.0, 0.0)), Side::B);
    CHECK(std::abs(mutual_info_gap(singlet, dephased) - kLn2) < 1e-12);

    CHECK_THROWS_AS(mutual_info_gap(rho, random_density(2, 3, 2, 1)), DimensionError);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto state = random_density(2, 2, 1 + static_cast<int>(seed % 4), 1000 + seed);
        const auto monitored = monitoring(state, test::random_qubit_pvm(rng), MonitoringStrength(u(rng)), Side::B);
        CHECK(mutual_info_gap(state, monitored) >= -1e-9);
    }
}

TEST_CASE("joint-entropy identity for rank-1 PVMs") {
    std::mt19937_64 rng(21);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int db = 2 + static_cast<int>(seed % 2);
        const auto rho = random_density(2, db, 1 + static_cast<int>(seed % (2 * db)), seed);
        const Pvm pvm = db == 2 ? test::random_qubit_pvm(rng) : Pvm::from_basis(test::random_unitary(db, rng));
        const double lhs = von_neumann_entropy(unrevealed_projective(rho, pvm, Side::B));
        ComplexMatrix dephased_b = ComplexMatrix::Zero(db, db);
        const ComplexMatrix rho_b = rho.marginal(Side::B);
        for (const auto& p : pvm.projectors()) dephased_b += p * rho_b * p;
        const double rhs = von_neumann_entropy(dephased_b) + conditional_entropy_term(rho, pvm, Side::B);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst <= 1e-9);
}
