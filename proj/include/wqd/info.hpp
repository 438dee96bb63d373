#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "wqd/linalg.hpp"

namespace wqd {

// Joint probability table p(x, y); rows index x, columns index y.
class JointDistribution {
public:
    explicit JointDistribution(Eigen::MatrixXd probs);

    const Eigen::MatrixXd& probs() const noexcept { return probs_; }
    std::vector<double> marginal_x() const;
    std::vector<double> marginal_y() const;

private:
    Eigen::MatrixXd probs_;
};

// All quantities below are in nats.

// -sum p ln p with 0 ln 0 = 0. Entries must be >= 0 and sum to 1 within 1e-12.
double shannon_entropy(std::span<const double> p);

// H(X) + H(Y) - H(X,Y).
double classical_mutual_info_i(const JointDistribution& j);

// H(X) - sum_y p_y H(X|y); outcomes with p_y = 0 contribute nothing.
double classical_mutual_info_j(const JointDistribution& j);

// -sum lambda ln lambda over the spectrum. Eigenvalues in [-1e-10, 0) are
// clipped to zero; anything more negative is a ValidationError.
double von_neumann_entropy(const ComplexMatrix& m);
double von_neumann_entropy(const DensityMatrix& rho);

// Entropy of an already computed spectrum, with the same clipping rule.
double spectral_entropy(std::span<const double> eigenvalues);

// S(rho_A) + S(rho_B) - S(rho).
double quantum_mutual_info(const DensityMatrix& rho);

// I(rho) - I(sigma).
double mutual_info_gap(const DensityMatrix& rho, const DensityMatrix& sigma);

} // namespace wqd
