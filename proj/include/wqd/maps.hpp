#pragma once

#include <cstddef>

#include "wqd/linalg.hpp"

namespace wqd {

// Monitoring intensity epsilon in [0, 1]. The endpoints are the identity map
// and the full projective dephasing.
class MonitoringStrength {
public:
    explicit MonitoringStrength(double epsilon);
    double value() const noexcept { return epsilon_; }

private:
    double epsilon_;
};

// Strength x of the dichotomic weak-measurement operators; any finite real.
class WeakStrength {
public:
    explicit WeakStrength(double x);
    double value() const noexcept { return x_; }

private:
    double x_;
};

// Polar/azimuthal angles of a rank-1 qubit PVM: theta in [0, pi], phi in [0, 2 pi).
class BlochAngles {
public:
    BlochAngles() = default;
    BlochAngles(double theta, double phi);

    // Clamps theta into [0, pi] and wraps phi into [0, 2 pi).
    static BlochAngles canonical(double theta, double phi);

    double theta() const noexcept { return theta_; }
    double phi() const noexcept { return phi_; }

    friend bool operator==(const BlochAngles&, const BlochAngles&) = default;

private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

// {|+><+|, |-><-|} with |+> = cos(t/2)|0> + e^{i p} sin(t/2)|1> and
// |-> = -sin(t/2)|0> + e^{i p} cos(t/2)|1>.
Pvm pvm_from_bloch(const BlochAngles& angles);

// Probability below which an outcome counts as impossible.
inline constexpr double kMinOutcomeProbability = 1e-14;

struct CollapseOutcome {
    DensityMatrix state;
    double probability;
};

// Normalized post-measurement state for `outcome` of a PVM on `side`.
// Throws ZeroProbabilityError when the outcome has probability <= 1e-14.
CollapseOutcome collapse(const DensityMatrix& rho, const Pvm& pvm, std::size_t outcome, Side side);

// (1 - eps) rho + eps * collapse(rho).
DensityMatrix weak_collapse(const DensityMatrix& rho, const Pvm& pvm, std::size_t outcome,
                            MonitoringStrength eps, Side side);

// sum_b P_b rho P_b with P_b the embedded projectors (non-selective measurement).
DensityMatrix unrevealed_projective(const DensityMatrix& rho, const Pvm& pvm, Side side);

// (1 - eps) rho + eps * unrevealed_projective(rho).
DensityMatrix monitoring(const DensityMatrix& rho, const Pvm& pvm, MonitoringStrength eps, Side side);

// n-fold monitoring via (1-eps)^n rho + [1 - (1-eps)^n] unrevealed_projective(rho).
// n = 0 returns rho.
DensityMatrix monitoring_power(const DensityMatrix& rho, const Pvm& pvm, MonitoringStrength eps,
                               int n, Side side);

struct DichotomicOperators {
    ComplexMatrix plus;
    ComplexMatrix minus;
};

// P_(+/-) = sqrt((1 -/+ tanh x)/2) Pi_0 + sqrt((1 +/- tanh x)/2) Pi_1 for a
// two-outcome PVM {Pi_0, Pi_1}.
DichotomicOperators dichotomic_operators(WeakStrength x, const Pvm& pvm);

// sum_s P_s rho P_s with the dichotomic operators embedded on `side`.
DensityMatrix dichotomic_channel(const DensityMatrix& rho, WeakStrength x, const Pvm& pvm, Side side);

// Isometry V : H_A (x) H_B -> H_A (x) H_B (x) H_X whose traced-out action is
// monitoring. Kraus set {sqrt(1-eps) I, sqrt(eps) P_b}, ancilla |X| = 1 + |pvm|,
// ancilla index k labels Kraus operator k.
class StinespringIsometry {
public:
    StinespringIsometry(ComplexMatrix v, int dim_a, int dim_b, int dim_ancilla);

    const ComplexMatrix& matrix() const noexcept { return v_; }
    int dim_ancilla() const noexcept { return dim_ancilla_; }
    int dim_system() const noexcept { return dim_a_ * dim_b_; }

    // V rho V^dagger on the enlarged space (system-then-ancilla ordering).
    ComplexMatrix dilate(const DensityMatrix& rho) const;
    // Tr_X[V rho V^dagger].
    DensityMatrix apply(const DensityMatrix& rho) const;

private:
    ComplexMatrix v_;
    int dim_a_;
    int dim_b_;
    int dim_ancilla_;
};

StinespringIsometry stinespring_dilation(const Pvm& pvm, MonitoringStrength eps, int dim_a, int dim_b,
                                         Side side = Side::B);

} // namespace wqd
