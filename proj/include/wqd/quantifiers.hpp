#pragma once

#include <optional>

#include "wqd/linalg.hpp"
#include "wqd/maps.hpp"
#include "wqd/optimizer.hpp"

namespace wqd {

// Optimized value of a discord-like functional (nats) with its optimal
// measurement. For maximized functionals (classical correlations) the
// diagnostics refer to the minimized negative.
struct QuantifierResult {
    double value = 0.0;
    BlochAngles measurement_b;
    std::optional<BlochAngles> measurement_a;  // set by the symmetric quantifiers
    OptimizerDiagnostics diagnostics;
};

// sum_b p_b S(rho_{u|b}) where u is the side opposite to `side` and
// rho_{u|b} its marginal after outcome b. Outcomes with p_b <= 1e-14 are skipped.
double conditional_entropy_term(const DensityMatrix& rho, const Pvm& pvm, Side side = Side::B);

// Discord for a fixed B-side PVM: sum_b p_b S(rho_{A|b}) + S(rho_B) - S(rho).
double discord_fixed(const DensityMatrix& rho, const Pvm& pvm);
// Minimum of discord_fixed over rank-1 qubit PVMs (dim_b must be 2).
QuantifierResult discord(const DensityMatrix& rho, const OptimizerConfig& config = {});

// Classically accessible correlations S(rho_A) - sum_b p_b S(rho_{A|b}),
// maximized over qubit PVMs on B.
double classical_correlations_fixed(const DensityMatrix& rho, const Pvm& pvm);
QuantifierResult classical_correlations(const DensityMatrix& rho, const OptimizerConfig& config = {});

// Conditional-entropy discord with the dichotomic operators built from `pvm`.
double super_discord_fixed(const DensityMatrix& rho, WeakStrength x, const Pvm& pvm);
// Minimized over the Bloch angles of {Pi_0, Pi_1}; x is fixed by the caller.
QuantifierResult super_discord(const DensityMatrix& rho, WeakStrength x, const OptimizerConfig& config = {});

// sum_b p_b S(C^eps_b(rho)) + S(rho_B) - S(rho), with C^eps_b the weak
// collapse onto outcome b. Requires eps in (0, 1].
double weak_collapse_discord_fixed(const DensityMatrix& rho, const Pvm& pvm, MonitoringStrength eps);
QuantifierResult weak_collapse_discord(const DensityMatrix& rho, MonitoringStrength eps,
                                       const OptimizerConfig& config = {});

// I(rho) - I(M_B^eps(rho)).
double weak_discord_fixed(const DensityMatrix& rho, const Pvm& pvm, MonitoringStrength eps);
QuantifierResult weak_discord(const DensityMatrix& rho, MonitoringStrength eps,
                              const OptimizerConfig& config = {});

// I(rho) - I(Phi_A Phi_B(rho)), minimized over both sides (qubits only).
double sym_discord_fixed(const DensityMatrix& rho, const Pvm& pvm_a, const Pvm& pvm_b);
QuantifierResult sym_discord(const DensityMatrix& rho, const OptimizerConfig& config = {});

// I(rho) - I(M_A^eps_a M_B^eps_b(rho)), minimized over both sides (qubits only).
double sym_weak_discord_fixed(const DensityMatrix& rho, const Pvm& pvm_a, const Pvm& pvm_b,
                              MonitoringStrength eps_a, MonitoringStrength eps_b);
QuantifierResult sym_weak_discord(const DensityMatrix& rho, MonitoringStrength eps_a,
                                  MonitoringStrength eps_b, const OptimizerConfig& config = {});

// Split of the weak discord at its optimal observable B_eps:
//   destroyed_total = I(rho) - I(Phi(rho))
//   surviving       = I(rho~) - I(Phi(rho~)),  rho~ = M^eps(rho)
//   difference      = destroyed_total - surviving  (equals the weak discord)
struct InterpretationDecomposition {
    double destroyed_total = 0.0;
    double surviving = 0.0;
    double difference = 0.0;
    QuantifierResult weak;
};

InterpretationDecomposition interpretation_decomposition(const DensityMatrix& rho, MonitoringStrength eps,
                                                         const OptimizerConfig& config = {});

} // namespace wqd
