#include "wqd/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "wqd/error.hpp"

namespace wqd {

namespace {

void check_side(const DensityMatrix& rho, const Pvm& pvm, Side side) {
    if (pvm.dim() != rho.dim(side))
        throw DimensionError("PVM acts on dimension " + std::to_string(pvm.dim()) +
                             ", measured subsystem has dimension " + std::to_string(rho.dim(side)));
}

ComplexMatrix dephase(const DensityMatrix& rho, const Pvm& pvm, Side side) {
    check_side(rho, pvm, side);
    ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (const auto& p : pvm.projectors()) {
        const ComplexMatrix e = embed(p, side, rho.dim_a(), rho.dim_b());
        out.noalias() += e * rho.matrix() * e;
    }
    return out;
}

} // namespace

MonitoringStrength::MonitoringStrength(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw ValidationError("monitoring strength must lie in [0, 1], got " + std::to_string(epsilon));
}

WeakStrength::WeakStrength(double x) : x_(x) {
    if (!std::isfinite(x)) throw ValidationError("weak-measurement strength must be finite");
}

BlochAngles::BlochAngles(double theta, double phi) : theta_(theta), phi_(phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw ValidationError("theta must lie in [0, pi], got " + std::to_string(theta));
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
        throw ValidationError("phi must lie in [0, 2 pi), got " + std::to_string(phi));
}

BlochAngles BlochAngles::canonical(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw ValidationError("Bloch angles must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double t = std::clamp(theta, 0.0, std::numbers::pi);
    double p = std::fmod(phi, two_pi);
    if (p < 0.0) p += two_pi;
    if (p >= two_pi) p = 0.0;
    return BlochAngles(t, p);
}

Pvm pvm_from_bloch(const BlochAngles& angles) {
    const double c = std::cos(angles.theta() / 2.0);
    const double s = std::sin(angles.theta() / 2.0);
    const Complex phase = std::polar(1.0, angles.phi());
    ComplexMatrix basis(2, 2);
    basis << c, -s,
             phase * s, phase * c;
    return Pvm::from_basis(basis);
}

CollapseOutcome collapse(const DensityMatrix& rho, const Pvm& pvm, std::size_t outcome, Side side) {
    check_side(rho, pvm, side);
    if (outcome >= pvm.size())
        throw ValidationError("collapse: outcome index " + std::to_string(outcome) + " out of range");
    const ComplexMatrix e = embed(pvm[outcome], side, rho.dim_a(), rho.dim_b());
    ComplexMatrix unnormalized = e * rho.matrix() * e;
    const double p = unnormalized.trace().real();
    if (!(p > kMinOutcomeProbability))
        throw ZeroProbabilityError("collapse: outcome " + std::to_string(outcome) +
                                   " has probability " + std::to_string(p));
    unnormalized /= p;
    return {DensityMatrix::trusted(std::move(unnormalized), rho.dim_a(), rho.dim_b()), p};
}

DensityMatrix weak_collapse(const DensityMatrix& rho, const Pvm& pvm, std::size_t outcome,
                            MonitoringStrength eps, Side side) {
    const auto c = collapse(rho, pvm, outcome, side);
    const double e = eps.value();
    return DensityMatrix::trusted((1.0 - e) * rho.matrix() + e * c.state.matrix(), rho.dim_a(),
                                  rho.dim_b());
}

DensityMatrix unrevealed_projective(const DensityMatrix& rho, const Pvm& pvm, Side side) {
    return DensityMatrix::trusted(dephase(rho, pvm, side), rho.dim_a(), rho.dim_b());
}

DensityMatrix monitoring(const DensityMatrix& rho, const Pvm& pvm, MonitoringStrength eps, Side side) {
    const double e = eps.value();
    return DensityMatrix::trusted((1.0 - e) * rho.matrix() + e * dephase(rho, pvm, side), rho.dim_a(),
                                  rho.dim_b());
}

DensityMatrix monitoring_power(const DensityMatrix& rho, const Pvm& pvm, MonitoringStrength eps,
                               int n, Side side) {
    if (n < 0) throw ValidationError("monitoring_power: n must be non-negative");
    check_side(rho, pvm, side);
    if (n == 0) return rho;
    const double keep = std::pow(1.0 - eps.value(), n);
    return DensityMatrix::trusted(keep * rho.matrix() + (1.0 - keep) * dephase(rho, pvm, side),
                                  rho.dim_a(), rho.dim_b());
}

DichotomicOperators dichotomic_operators(WeakStrength x, const Pvm& pvm) {
    if (pvm.size() != 2)
        throw ValidationError("dichotomic operators need a two-outcome PVM, got " +
                              std::to_string(pvm.size()) + " outcomes");
    const double t = std::tanh(x.value());
    const double lo = std::sqrt((1.0 - t) / 2.0);
    const double hi = std::sqrt((1.0 + t) / 2.0);
    return {lo * pvm[0] + hi * pvm[1], hi * pvm[0] + lo * pvm[1]};
}

DensityMatrix dichotomic_channel(const DensityMatrix& rho, WeakStrength x, const Pvm& pvm, Side side) {
    check_side(rho, pvm, side);
    const auto ops = dichotomic_operators(x, pvm);
    const ComplexMatrix plus = embed(ops.plus, side, rho.dim_a(), rho.dim_b());
    const ComplexMatrix minus = embed(ops.minus, side, rho.dim_a(), rho.dim_b());
    ComplexMatrix out = plus * rho.matrix() * plus;
    out.noalias() += minus * rho.matrix() * minus;
    return DensityMatrix::trusted(std::move(out), rho.dim_a(), rho.dim_b());
}

StinespringIsometry::StinespringIsometry(ComplexMatrix v, int dim_a, int dim_b, int dim_ancilla)
    : v_(std::move(v)), dim_a_(dim_a), dim_b_(dim_b), dim_ancilla_(dim_ancilla) {
    if (v_.rows() != dim_a_ * dim_b_ * dim_ancilla_ || v_.cols() != dim_a_ * dim_b_)
        throw DimensionError("StinespringIsometry: matrix shape does not match dimensions");
}

ComplexMatrix StinespringIsometry::dilate(const DensityMatrix& rho) const {
    if (rho.dim_a() != dim_a_ || rho.dim_b() != dim_b_)
        throw DimensionError("StinespringIsometry: state dimensions do not match");
    return v_ * rho.matrix() * v_.adjoint();
}

DensityMatrix StinespringIsometry::apply(const DensityMatrix& rho) const {
    return DensityMatrix::trusted(partial_trace(dilate(rho), dim_system(), dim_ancilla_, Side::B),
                                  dim_a_, dim_b_);
}

StinespringIsometry stinespring_dilation(const Pvm& pvm, MonitoringStrength eps, int dim_a, int dim_b,
                                         Side side) {
    if (pvm.dim() != (side == Side::A ? dim_a : dim_b))
        throw DimensionError("stinespring_dilation: PVM dimension does not match the measured side");
    const int dim = dim_a * dim_b;
    const int ancilla = 1 + static_cast<int>(pvm.size());

    std::vector<ComplexMatrix> kraus;
    kraus.reserve(static_cast<std::size_t>(ancilla));
    kraus.emplace_back(std::sqrt(1.0 - eps.value()) * identity(dim));
    for (const auto& p : pvm.projectors())
        kraus.emplace_back(std::sqrt(eps.value()) * embed(p, side, dim_a, dim_b));

    // V|psi> = sum_k (K_k|psi>) (x) |k>.
    ComplexMatrix v = ComplexMatrix::Zero(dim * ancilla, dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < ancilla; ++k)
            v.row(i * ancilla + k) = kraus[static_cast<std::size_t>(k)].row(i);
    return StinespringIsometry(std::move(v), dim_a, dim_b, ancilla);
}

} // namespace wqd
