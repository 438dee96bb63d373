#include "wqd/quantifiers.hpp"

#include <string>

#include "wqd/error.hpp"
#include "wqd/info.hpp"

namespace wqd {

namespace {

void require_qubit_b(const DensityMatrix& rho, const char* what) {
    if (rho.dim_b() != 2)
        throw UnsupportedDimensionError(std::string(what) +
                                        ": minimization runs over qubit PVMs; dim_b must be 2, got " +
                                        std::to_string(rho.dim_b()));
}

void require_two_qubits(const DensityMatrix& rho, const char* what) {
    if (rho.dim_a() != 2 || rho.dim_b() != 2)
        throw UnsupportedDimensionError(std::string(what) + ": symmetric minimization needs two qubits, got " +
                                        std::to_string(rho.dim_a()) + "x" + std::to_string(rho.dim_b()));
}

// sum_s p_s S(Tr_side[K_s rho K_s^dagger] / p_s) for embedded Kraus operators.
double averaged_conditional_entropy(const DensityMatrix& rho, std::initializer_list<const ComplexMatrix*> kraus,
                                    Side measured) {
    double total = 0.0;
    for (const ComplexMatrix* k : kraus) {
        const ComplexMatrix branch = (*k) * rho.matrix() * k->adjoint();
        const double p = branch.trace().real();
        if (p <= kMinOutcomeProbability) continue;
        total += p * von_neumann_entropy(partial_trace(branch, rho.dim_a(), rho.dim_b(), measured) / p);
    }
    return total;
}

QuantifierResult from_minimum(const BlochMinimum& m) {
    QuantifierResult r;
    r.value = m.value;
    r.measurement_b = m.angles;
    r.diagnostics = m.diagnostics;
    return r;
}

QuantifierResult from_pair_minimum(const BlochPairMinimum& m) {
    QuantifierResult r;
    r.value = m.value;
    r.measurement_a = m.first;
    r.measurement_b = m.second;
    r.diagnostics = m.diagnostics;
    return r;
}

} // namespace

double conditional_entropy_term(const DensityMatrix& rho, const Pvm& pvm, Side side) {
    if (pvm.dim() != rho.dim(side))
        throw DimensionError("conditional_entropy_term: PVM does not act on the measured side");
    double total = 0.0;
    for (const auto& proj : pvm.projectors()) {
        const ComplexMatrix e = embed(proj, side, rho.dim_a(), rho.dim_b());
        total += averaged_conditional_entropy(rho, {&e}, side);
    }
    return total;
}

double discord_fixed(const DensityMatrix& rho, const Pvm& pvm) {
    return conditional_entropy_term(rho, pvm, Side::B) + von_neumann_entropy(rho.marginal(Side::B)) -
           von_neumann_entropy(rho);
}

QuantifierResult discord(const DensityMatrix& rho, const OptimizerConfig& config) {
    require_qubit_b(rho, "discord");
    const double s_b = von_neumann_entropy(rho.marginal(Side::B));
    const double s = von_neumann_entropy(rho);
    return from_minimum(minimize_bloch(
        [&](const BlochAngles& b) { return conditional_entropy_term(rho, pvm_from_bloch(b)) + s_b - s; },
        config));
}

double classical_correlations_fixed(const DensityMatrix& rho, const Pvm& pvm) {
    return von_neumann_entropy(rho.marginal(Side::A)) - conditional_entropy_term(rho, pvm, Side::B);
}

QuantifierResult classical_correlations(const DensityMatrix& rho, const OptimizerConfig& config) {
    require_qubit_b(rho, "classical_correlations");
    const double s_a = von_neumann_entropy(rho.marginal(Side::A));
    auto r = from_minimum(minimize_bloch(
        [&](const BlochAngles& b) { return conditional_entropy_term(rho, pvm_from_bloch(b)) - s_a; },
        config));
    r.value = -r.value;
    return r;
}

double super_discord_fixed(const DensityMatrix& rho, WeakStrength x, const Pvm& pvm) {
    if (pvm.dim() != rho.dim_b()) throw DimensionError("super_discord: PVM does not act on side B");
    const auto ops = dichotomic_operators(x, pvm);
    const ComplexMatrix plus = embed(ops.plus, Side::B, rho.dim_a(), rho.dim_b());
    const ComplexMatrix minus = embed(ops.minus, Side::B, rho.dim_a(), rho.dim_b());
    return averaged_conditional_entropy(rho, {&plus, &minus}, Side::B) +
           von_neumann_entropy(rho.marginal(Side::B)) - von_neumann_entropy(rho);
}

QuantifierResult super_discord(const DensityMatrix& rho, WeakStrength x, const OptimizerConfig& config) {
    require_qubit_b(rho, "super_discord");
    return from_minimum(minimize_bloch(
        [&](const BlochAngles& b) { return super_discord_fixed(rho, x, pvm_from_bloch(b)); }, config));
}

double weak_collapse_discord_fixed(const DensityMatrix& rho, const Pvm& pvm, MonitoringStrength eps) {
    if (!(eps.value() > 0.0)) throw ValidationError("weak_collapse_discord: eps must lie in (0, 1]");
    if (pvm.dim() != rho.dim_b()) throw DimensionError("weak_collapse_discord: PVM does not act on side B");
    double total = 0.0;
    for (std::size_t b = 0; b < pvm.size(); ++b) {
        const ComplexMatrix e = embed(pvm[b], Side::B, rho.dim_a(), rho.dim_b());
        const double p = (e * rho.matrix() * e).trace().real();
        if (p <= kMinOutcomeProbability) continue;
        total += p * von_neumann_entropy(weak_collapse(rho, pvm, b, eps, Side::B));
    }
    return total + von_neumann_entropy(rho.marginal(Side::B)) - von_neumann_entropy(rho);
}

QuantifierResult weak_collapse_discord(const DensityMatrix& rho, MonitoringStrength eps,
                                       const OptimizerConfig& config) {
    require_qubit_b(rho, "weak_collapse_discord");
    return from_minimum(minimize_bloch(
        [&](const BlochAngles& b) { return weak_collapse_discord_fixed(rho, pvm_from_bloch(b), eps); },
        config));
}

double weak_discord_fixed(const DensityMatrix& rho, const Pvm& pvm, MonitoringStrength eps) {
    return mutual_info_gap(rho, monitoring(rho, pvm, eps, Side::B));
}

QuantifierResult weak_discord(const DensityMatrix& rho, MonitoringStrength eps, const OptimizerConfig& config) {
    require_qubit_b(rho, "weak_discord");
    const double info = quantum_mutual_info(rho);
    return from_minimum(minimize_bloch(
        [&](const BlochAngles& b) {
            return info - quantum_mutual_info(monitoring(rho, pvm_from_bloch(b), eps, Side::B));
        },
        config));
}

double sym_discord_fixed(const DensityMatrix& rho, const Pvm& pvm_a, const Pvm& pvm_b) {
    return mutual_info_gap(
        rho, unrevealed_projective(unrevealed_projective(rho, pvm_b, Side::B), pvm_a, Side::A));
}

QuantifierResult sym_discord(const DensityMatrix& rho, const OptimizerConfig& config) {
    require_two_qubits(rho, "sym_discord");
    const double info = quantum_mutual_info(rho);
    return from_pair_minimum(minimize_bloch_pair(
        [&](const BlochAngles& a, const BlochAngles& b) {
            const auto measured = unrevealed_projective(
                unrevealed_projective(rho, pvm_from_bloch(b), Side::B), pvm_from_bloch(a), Side::A);
            return info - quantum_mutual_info(measured);
        },
        config));
}

double sym_weak_discord_fixed(const DensityMatrix& rho, const Pvm& pvm_a, const Pvm& pvm_b,
                              MonitoringStrength eps_a, MonitoringStrength eps_b) {
    return mutual_info_gap(
        rho, monitoring(monitoring(rho, pvm_b, eps_b, Side::B), pvm_a, eps_a, Side::A));
}

QuantifierResult sym_weak_discord(const DensityMatrix& rho, MonitoringStrength eps_a,
                                  MonitoringStrength eps_b, const OptimizerConfig& config) {
    require_two_qubits(rho, "sym_weak_discord");
    const double info = quantum_mutual_info(rho);
    return from_pair_minimum(minimize_bloch_pair(
        [&](const BlochAngles& a, const BlochAngles& b) {
            const auto monitored = monitoring(monitoring(rho, pvm_from_bloch(b), eps_b, Side::B),
                                              pvm_from_bloch(a), eps_a, Side::A);
            return info - quantum_mutual_info(monitored);
        },
        config));
}

InterpretationDecomposition interpretation_decomposition(const DensityMatrix& rho, MonitoringStrength eps,
                                                         const OptimizerConfig& config) {
    InterpretationDecomposition out;
    out.weak = weak_discord(rho, eps, config);
    const Pvm optimal = pvm_from_bloch(out.weak.measurement_b);
    const auto monitored = monitoring(rho, optimal, eps, Side::B);
    out.destroyed_total = mutual_info_gap(rho, unrevealed_projective(rho, optimal, Side::B));
    out.surviving = mutual_info_gap(monitored, unrevealed_projective(monitored, optimal, Side::B));
    out.difference = out.destroyed_total - out.surviving;
    return out;
}

} // namespace wqd
