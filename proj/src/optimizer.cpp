#include "wqd/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "wqd/error.hpp"

namespace wqd {

namespace {

constexpr double kGridTie = 1e-9;
constexpr double kRefineGain = 1e-12;
constexpr double kSimplexSize = 1e-6;

double checked(double v) {
    if (!std::isfinite(v)) throw ValidationError("objective returned a non-finite value");
    return v;
}

std::vector<double> grid(int n, double hi, bool inclusive) {
    std::vector<double> g(static_cast<std::size_t>(n));
    const double step = inclusive ? hi / (n - 1) : hi / n;
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = i * step;
    if (inclusive) g.back() = hi;
    return g;
}

struct Vertex {
    std::vector<double> x;
    double f;
};

// One Nelder-Mead descent; returns iterations used.
int descend(const std::function<double(std::span<const double>)>& f, std::vector<Vertex>& simplex,
            int max_iter, double ftol, int& evaluations) {
    const std::size_t n = simplex.size() - 1;
    auto eval = [&](const std::vector<double>& x) {
        ++evaluations;
        return checked(f(x));
    };
    auto point = [&](const std::vector<double>& centroid, const std::vector<double>& worst, double t) {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (worst[i] - centroid[i]);
        return p;
    };

    int it = 0;
    for (; it < max_iter; ++it) {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        double size = 0.0;
        for (std::size_t v = 1; v <= n; ++v)
            for (std::size_t i = 0; i < n; ++i)
                size = std::max(size, std::abs(simplex[v].x[i] - simplex[0].x[i]));
        if (simplex[n].f - simplex[0].f <= ftol && size <= kSimplexSize) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);

        const auto& worst = simplex[n].x;
        auto xr = point(centroid, worst, -1.0);
        const double fr = eval(xr);
        if (fr < simplex[0].f) {
            auto xe = point(centroid, worst, -2.0);
            const double fe = eval(xe);
            simplex[n] = fe < fr ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
            continue;
        }
        if (fr < simplex[n - 1].f) {
            simplex[n] = {std::move(xr), fr};
            continue;
        }
        // Outside contraction when the reflection beat the worst, inside otherwise.
        const bool outside = fr < simplex[n].f;
        auto xc = point(centroid, worst, outside ? -0.5 : 0.5);
        const double fc = eval(xc);
        if (fc < (outside ? fr : simplex[n].f)) {
            simplex[n] = {std::move(xc), fc};
            continue;
        }
        for (std::size_t v = 1; v <= n; ++v) {
            for (std::size_t i = 0; i < n; ++i)
                simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
            simplex[v].f = eval(simplex[v].x);
        }
    }
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    return it;
}

std::vector<Vertex> initial_simplex(const std::function<double(std::span<const double>)>& f,
                                    const std::vector<double>& start, double start_value,
                                    std::span<const double> steps, int& evaluations) {
    std::vector<Vertex> simplex{{start, start_value}};
    for (std::size_t i = 0; i < start.size(); ++i) {
        auto x = start;
        x[i] += steps[i];
        ++evaluations;
        const double fx = checked(f(x));
        simplex.push_back({std::move(x), fx});
    }
    return simplex;
}

} // namespace

void OptimizerConfig::validate() const {
    if (theta_points < 2 || phi_points < 2 || joint_theta_points < 2 || joint_phi_points < 2)
        throw ValidationError("optimizer grid counts must be >= 2");
    if (refine_max_iter < 0) throw ValidationError("refine_max_iter must be non-negative");
    if (!(refine_tol > 0.0)) throw ValidationError("refine_tol must be positive");
}

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> start, std::span<const double> steps, int max_iter,
                          double ftol) {
    if (start.empty() || steps.size() != start.size())
        throw DimensionError("nelder_mead: start and steps must have the same non-zero length");
    SimplexResult out;
    const double f0 = checked(f(start));
    out.evaluations = 1;
    auto simplex = initial_simplex(f, start, f0, steps, out.evaluations);
    out.iterations = descend(f, simplex, max_iter, ftol, out.evaluations);

    if (out.iterations < max_iter) {
        std::vector<double> small(steps.begin(), steps.end());
        for (double& s : small) s *= 0.25;
        auto restart = initial_simplex(f, simplex[0].x, simplex[0].f, small, out.evaluations);
        out.iterations += descend(f, restart, max_iter - out.iterations, ftol, out.evaluations);
        if (restart[0].f < simplex[0].f) simplex = std::move(restart);
    }
    out.point = simplex[0].x;
    out.value = simplex[0].f;
    return out;
}

BlochMinimum minimize_bloch(const BlochObjective& objective, const OptimizerConfig& config) {
    config.validate();
    const auto thetas = grid(config.theta_points, std::numbers::pi, true);
    const auto phis = grid(config.phi_points, 2.0 * std::numbers::pi, false);

    std::vector<double> values;
    values.reserve(thetas.size() * phis.size());
    for (double t : thetas)
        for (double p : phis) values.push_back(checked(objective(BlochAngles(t, p))));

    const double lowest = *std::min_element(values.begin(), values.end());
    const auto best = static_cast<std::size_t>(
        std::find_if(values.begin(), values.end(), [&](double v) { return v <= lowest + kGridTie; }) -
        values.begin());
    const double t0 = thetas[best / phis.size()];
    const double p0 = phis[best % phis.size()];

    BlochMinimum out;
    out.angles = BlochAngles(t0, p0);
    out.value = values[best];
    out.diagnostics.grid_best = values[best];
    out.diagnostics.evaluations = static_cast<int>(values.size());

    auto f = [&](std::span<const double> x) {
        return objective(BlochAngles::canonical(x[0], x[1]));
    };
    const std::array<double, 2> steps{0.5 * (thetas[1] - thetas[0]), 0.5 * (phis[1] - phis[0])};
    const auto refined = nelder_mead(f, {t0, p0}, steps, config.refine_max_iter, config.refine_tol);
    out.diagnostics.refined = refined.value;
    out.diagnostics.iterations = refined.iterations;
    out.diagnostics.evaluations += refined.evaluations;
    if (refined.value < out.value - kRefineGain) {
        out.angles = BlochAngles::canonical(refined.point[0], refined.point[1]);
        out.value = refined.value;
    }
    return out;
}

BlochPairMinimum minimize_bloch_pair(const BlochPairObjective& objective, const OptimizerConfig& config) {
    config.validate();
    const auto thetas = grid(config.joint_theta_points, std::numbers::pi, true);
    const auto phis = grid(config.joint_phi_points, 2.0 * std::numbers::pi, false);

    std::vector<BlochAngles> side;
    side.reserve(thetas.size() * phis.size());
    for (double t : thetas)
        for (double p : phis) side.emplace_back(t, p);

    std::vector<double> values;
    values.reserve(side.size() * side.size());
    for (const auto& a : side)
        for (const auto& b : side) values.push_back(checked(objective(a, b)));

    const double lowest = *std::min_element(values.begin(), values.end());
    const auto best = static_cast<std::size_t>(
        std::find_if(values.begin(), values.end(), [&](double v) { return v <= lowest + kGridTie; }) -
        values.begin());
    const BlochAngles a0 = side[best / side.size()];
    const BlochAngles b0 = side[best % side.size()];

    BlochPairMinimum out;
    out.first = a0;
    out.second = b0;
    out.value = values[best];
    out.diagnostics.grid_best = values[best];
    out.diagnostics.evaluations = static_cast<int>(values.size());

    auto f = [&](std::span<const double> x) {
        return objective(BlochAngles::canonical(x[0], x[1]), BlochAngles::canonical(x[2], x[3]));
    };
    const double dt = 0.5 * (thetas[1] - thetas[0]);
    const double dp = 0.5 * (phis[1] - phis[0]);
    const std::array<double, 4> steps{dt, dp, dt, dp};
    const auto refined = nelder_mead(f, {a0.theta(), a0.phi(), b0.theta(), b0.phi()}, steps,
                                     config.refine_max_iter, config.refine_tol);
    out.diagnostics.refined = refined.value;
    out.diagnostics.iterations = refined.iterations;
    out.diagnostics.evaluations += refined.evaluations;
    if (refined.value < out.value - kRefineGain) {
        out.first = BlochAngles::canonical(refined.point[0], refined.point[1]);
        out.second = BlochAngles::canonical(refined.point[2], refined.point[3]);
        out.value = refined.value;
    }
    return out;
}

} // namespace wqd
