#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "wqd/linalg.hpp"
#include "wqd/maps.hpp"

namespace wqd {

// Mixing weight of the Werner-singlet family, in [0, 1].
class WernerParameter {
public:
    explicit WernerParameter(double mu);
    double value() const noexcept { return mu_; }

private:
    double mu_;
};

// (1 - mu) I/4 + mu |s><s| with |s> = (|01> - |10>)/sqrt(2).
DensityMatrix werner_singlet(WernerParameter mu);

// Closed-form weak discord of werner_singlet(mu) under monitoring of strength eps:
// (1/4) sum_{i=-1..1} sum_{j=0..1} (-1)^j l_ij ln l_ij, l_ij = 1 + mu[1 + 2i(1 - j eps)].
double werner_wqd_closed_form(double mu, double eps);

// Bell states: 0 = (|00>+|11>)/sqrt2, 1 = (|00>-|11>)/sqrt2,
// 2 = (|01>+|10>)/sqrt2, 3 = (|01>-|10>)/sqrt2 (singlet).
DensityMatrix bell(int index);

DensityMatrix product(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b);

// Pure qubit state with Bloch angles (theta, phi).
ComplexMatrix qubit_pure_state(const BlochAngles& angles);

// sum_b p_b rho_{A|b} (x) B_b. The PVM must be rank-1.
DensityMatrix quantum_classical(std::span<const double> weights, std::span<const ComplexMatrix> a_states,
                                const Pvm& pvm);

// sum_{a,b} p_{a,b} A_a (x) B_b for rank-1 PVMs on both sides.
DensityMatrix classical_classical(const Eigen::MatrixXd& weights, const Pvm& pvm_a, const Pvm& pvm_b);

// rho = G G^dagger / Tr(G G^dagger) with G a (dim_a dim_b) x rank matrix of
// standard complex normals. Normals come from Box-Muller over std::mt19937_64
// (53-bit uniforms), so a seed reproduces the same state on every platform.
DensityMatrix random_density(int dim_a, int dim_b, int rank, std::uint64_t seed);

// Textual state description, `kind:key=value,...`:
//   werner:mu=0.5
//   bell:index=3
//   random:dA=2,dB=2,rank=4,seed=42
//   product:ax=..,ay=..,az=..,bx=..,by=..,bz=..          (qubit Bloch vectors, default 0)
//   quantum_classical:p=0.5,ta0=..,pa0=..,ta1=..,pa1=..,theta=..,phi=..
//       p|a0><a0| (x) B_+ + (1-p)|a1><a1| (x) B_-; a0/a1 given by Bloch angles
//       (defaults |0> and |+>), B from (theta, phi) (default computational).
//   classical_classical:p00=..,p01=..,p10=..,p11=..,theta_a=..,phi_a=..,theta_b=..,phi_b=..
struct StateSpec {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> parameters;

    // Throws ParseError on malformed text or unknown kinds/keys.
    static StateSpec parse(std::string_view text);

    // Builds the state; throws ValidationError for out-of-range parameters.
    DensityMatrix build() const;
};

} // namespace wqd
