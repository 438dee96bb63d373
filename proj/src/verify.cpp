#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "wqd/cli.hpp"
#include "wqd/error.hpp"
#include "wqd/info.hpp"
#include "wqd/maps.hpp"
#include "wqd/quantifiers.hpp"
#include "wqd/states.hpp"

namespace wqd::cli {

namespace {

constexpr std::pair<Suite, std::string_view> kSuiteNames[] = {
    {Suite::maps, "maps"},   {Suite::theorem1, "theorem1"},   {Suite::hierarchy, "hierarchy"},
    {Suite::sqd, "sqd"},     {Suite::classical, "classical"}, {Suite::all, "all"},
};

struct Observation {
    int property;
    double deviation;
    std::string input;
};

using Sample = std::vector<Observation>;

struct PropertyDef {
    const char* name;
    double tolerance;
};

// Evaluates `samples` independent samples (possibly in parallel) and folds the
// observations in sample order, so the report does not depend on scheduling.
std::vector<PropertyResult> run_properties(const char* suite, std::vector<PropertyDef> defs, int samples, int jobs,
                                           const std::function<Sample(int)>& one) {
    std::vector<Sample> per_sample(samples);
    parallel_for(samples, jobs, [&](int i) { per_sample[i] = one(i); });
    std::vector<PropertyResult> out;
    for (const auto& d : defs) {
        PropertyResult p;
        p.suite = suite;
        p.name = d.name;
        p.tolerance = d.tolerance;
        out.push_back(p);
    }
    std::vector<std::vector<bool>> seen(defs.size(), std::vector<bool>(samples, false));
    for (int i = 0; i < samples; ++i)
        for (const auto& o : per_sample[i]) {
            auto& p = out[o.property];
            if (!seen[o.property][i]) {
                seen[o.property][i] = true;
                ++p.samples;
            }
            if (o.deviation > p.max_deviation || std::isnan(o.deviation)) {
                p.max_deviation = std::isnan(o.deviation) ? INFINITY : o.deviation;
                p.worst_input = o.input;
            }
        }
    return out;
}

double uniform(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

BlochAngles random_angles(std::mt19937_64& engine) {
    const double theta = std::acos(std::clamp(1.0 - 2.0 * uniform(engine), -1.0, 1.0));
    return BlochAngles::canonical(theta, 2.0 * std::numbers::pi * uniform(engine));
}

std::string angles_text(const BlochAngles& b, const char* suffix = "") {
    return std::string("theta") + suffix + "=" + format_number(b.theta()) + " phi" + suffix + "=" +
           format_number(b.phi());
}

struct RandomState {
    std::string spec;
    DensityMatrix rho;
};

RandomState random_state(std::uint64_t seed, int dim_a, int dim_b) {
    const int rank = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(dim_a * dim_b));
    const std::string spec = "random:dA=" + std::to_string(dim_a) + ",dB=" + std::to_string(dim_b) +
                             ",rank=" + std::to_string(rank) + ",seed=" + std::to_string(seed);
    return {spec, StateSpec::parse(spec).build()};
}

double max_abs(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// PVM onto the eigenbasis of a random density matrix.
Pvm random_pvm(int dim, std::uint64_t seed) {
    const auto basis = random_density(dim, 1, dim, seed).matrix();
    const Eigen::MatrixXcd dense = basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    return Pvm::from_basis(es.eigenvectors());
}

std::vector<PropertyResult> maps_suite(int samples, std::uint64_t seed, int jobs) {
    enum { nonsig, absorb, compose, dichot, dilation, joint };
    return run_properties(
        "maps",
        {{"non_signaling", 1e-10},
         {"absorption", 1e-10},
         {"composition", 1e-10},
         {"dichotomic_equivalence", 1e-10},
         {"dilation", 1e-10},
         {"joint_entropy", 1e-9}},
        samples, jobs, [&](int i) {
            const std::uint64_t s = sample_seed(seed, i);
            const int da = 2 + i % 2;
            const int db = 2 + (i / 2) % 2;
            const auto st = random_state(s, da, db);
            std::mt19937_64 aux(s ^ 0x5bd1e995u);
            const double eps_v = uniform(aux);
            const MonitoringStrength eps(eps_v);
            const BlochAngles angles = random_angles(aux);
            const Pvm pvm_b = db == 2 ? pvm_from_bloch(angles) : random_pvm(db, s + 1);
            const std::string input = "state=" + st.spec + " eps=" + format_number(eps_v) +
                                      (db == 2 ? " " + angles_text(angles) : " pvm=eigenbasis of random:dA=3,dB=1,rank=3,seed=" +
                                                                                  std::to_string(s + 1));
            const auto& rho = st.rho;
            Sample out;

            const auto m = monitoring(rho, pvm_b, eps, Side::B);
            out.push_back({nonsig, max_abs(m.marginal(Side::A), rho.marginal(Side::A)), input});
            out.push_back({absorb,
                           max_abs(unrevealed_projective(m, pvm_b, Side::B).matrix(),
                                   unrevealed_projective(rho, pvm_b, Side::B).matrix()),
                           input});
            if (da == 2) {
                const Pvm pvm_a = pvm_from_bloch(angles);
                const auto ma = monitoring(rho, pvm_a, eps, Side::A);
                out.push_back({nonsig, max_abs(ma.marginal(Side::B), rho.marginal(Side::B)), input + " side=A"});
                out.push_back({absorb,
                               max_abs(unrevealed_projective(ma, pvm_a, Side::A).matrix(),
                                       unrevealed_projective(rho, pvm_a, Side::A).matrix()),
                               input + " side=A"});
            }

            DensityMatrix composed = rho;
            for (int n = 1; n <= 10; ++n) {
                composed = monitoring(composed, pvm_b, eps, Side::B);
                out.push_back({compose,
                               max_abs(monitoring_power(rho, pvm_b, eps, n, Side::B).matrix(), composed.matrix()),
                               input + " n=" + std::to_string(n)});
            }

            if (db == 2)
                for (double x : {-2.0, -0.5, 0.5, 1.0, 2.0}) {
                    const auto lhs = dichotomic_channel(rho, WeakStrength(x), pvm_b, Side::B);
                    const auto rhs = monitoring(rho, pvm_b, MonitoringStrength(1.0 - 1.0 / std::cosh(x)), Side::B);
                    out.push_back({dichot, max_abs(lhs.matrix(), rhs.matrix()), input + " x=" + format_number(x)});
                }

            const auto v = stinespring_dilation(pvm_b, eps, da, db);
            out.push_back({dilation, max_abs(v.apply(rho).matrix(), m.matrix()), input});
            out.push_back({dilation, max_abs(v.matrix().adjoint() * v.matrix(), identity(da * db)), input + " (V^dag V)"});

            const ComplexMatrix rho_b = rho.marginal(Side::B);
            ComplexMatrix dephased_b = ComplexMatrix::Zero(db, db);
            for (const auto& p : pvm_b.projectors()) dephased_b += p * rho_b * p;
            const double lhs = von_neumann_entropy(unrevealed_projective(rho, pvm_b, Side::B));
            const double rhs = von_neumann_entropy(dephased_b) + conditional_entropy_term(rho, pvm_b, Side::B);
            out.push_back({joint, std::abs(lhs - rhs), input});
            return out;
        });
}

std::vector<PropertyResult> theorem1_suite(int samples, std::uint64_t seed, const OptimizerConfig& cfg, int jobs) {
    enum { below_qd, nonneg, eps0, eps1, decomposition, surviving };
    return run_properties(
        "theorem1",
        {{"wqd_le_qd", 1e-7},
         {"wqd_nonnegative", 1e-9},
         {"wqd_vanishes_at_eps0", 1e-9},
         {"wqd_equals_qd_at_eps1", 1e-6},
         {"decomposition_equals_wqd", 1e-7},
         {"surviving_term_vanishes_at_eps1", 1e-9}},
        samples, jobs, [&](int i) {
            const auto st = random_state(sample_seed(seed, i), 2, 2);
            const auto& rho = st.rho;
            const std::string in = "state=" + st.spec;
            Sample out;
            const double qd = discord(rho, cfg).value;
            for (double e : {0.25, 0.5, 0.75}) {
                double w = 0.0;
                const std::string where = in + " eps=" + format_number(e);
                if (e == 0.5) {
                    const auto d = interpretation_decomposition(rho, MonitoringStrength(e), cfg);
                    w = d.weak.value;
                    out.push_back({decomposition, std::abs(d.difference - w), where});
                } else {
                    w = weak_discord(rho, MonitoringStrength(e), cfg).value;
                }
                out.push_back({below_qd, w - qd, where});
                out.push_back({nonneg, -w, where});
            }
            out.push_back({eps0, std::abs(weak_discord(rho, MonitoringStrength(0.0), cfg).value), in + " eps=0"});
            const auto full = interpretation_decomposition(rho, MonitoringStrength(1.0), cfg);
            out.push_back({eps1, std::abs(full.weak.value - qd), in + " eps=1"});
            out.push_back({surviving, std::abs(full.surviving), in + " eps=1"});
            return out;
        });
}

std::vector<PropertyResult> hierarchy_suite(int samples, std::uint64_t seed, const OptimizerConfig& cfg, int jobs) {
    enum { sym_ge_qd, syw_le_sym, syw_ge_w, witness_qd, witness_sym };
    const MonitoringStrength half(0.5);
    auto props = run_properties(
        "hierarchy",
        {{"syqd_ge_qd", 1e-7},
         {"sywqd_le_syqd", 1e-7},
         {"sywqd_ge_wqd", 1e-7},
         {"witness_qd_zero", 1e-7},
         {"witness_syqd_above_0.01", 0.0}},
        samples + 1, jobs, [&](int i) {
            Sample out;
            if (i == samples) {
                // quantum-classical state with non-orthogonal A-side components
                const std::string spec = "quantum_classical:p=0.5";
                const auto rho = StateSpec::parse(spec).build();
                out.push_back({witness_qd, std::abs(discord(rho, cfg).value), "state=" + spec});
                out.push_back({witness_sym, 0.01 - sym_discord(rho, cfg).value, "state=" + spec});
                return out;
            }
            const auto st = random_state(sample_seed(seed, i), 2, 2);
            const auto& rho = st.rho;
            const std::string in = "state=" + st.spec + " eps_a=0.5 eps_b=0.5";
            const double qd = discord(rho, cfg).value;
            const double sym = sym_discord(rho, cfg).value;
            const double syw = sym_weak_discord(rho, half, half, cfg).value;
            const double w = weak_discord(rho, half, cfg).value;
            out.push_back({sym_ge_qd, qd - sym, in});
            out.push_back({syw_le_sym, syw - sym, in});
            out.push_back({syw_ge_w, w - syw, in});
            return out;
        });
    return props;
}

std::vector<PropertyResult> sqd_suite(int samples, std::uint64_t seed, const OptimizerConfig& cfg, int jobs) {
    enum { x0, ge_qd, frakd_bound, frakd_entropy };
    const double werner_mu[] = {0.25, 0.5, 0.75};
    return run_properties(
        "sqd",
        {{"sqd_x0_equals_mutual_info", 1e-8},
         {"sqd_ge_qd", 1e-7},
         {"frakd_ge_eps_qd_plus_entropy_b", 1e-7},
         {"frakd_small_eps_above_entropy_b", 0.0}},
        samples + 3, jobs, [&](int i) {
            Sample out;
            if (i >= samples) {
                const double mu = werner_mu[i - samples];
                const auto rho = werner_singlet(WernerParameter(mu));
                const double s_b = von_neumann_entropy(rho.marginal(Side::B));
                const double f = weak_collapse_discord(rho, MonitoringStrength(1e-3), cfg).value;
                out.push_back({frakd_entropy, (s_b - 1e-6) - f, "state=werner:mu=" + format_number(mu) + " eps=0.001"});
                return out;
            }
            const auto st = random_state(sample_seed(seed, i), 2, 2);
            const auto& rho = st.rho;
            const std::string in = "state=" + st.spec;
            out.push_back({x0, std::abs(super_discord(rho, WeakStrength(0.0), cfg).value - quantum_mutual_info(rho)),
                           in + " x=0"});
            const double qd = discord(rho, cfg).value;
            for (double x : {0.5, 1.0, 2.0})
                out.push_back({ge_qd, qd - super_discord(rho, WeakStrength(x), cfg).value, in + " x=" + format_number(x)});
            const double eps = 0.5;
            const double s_b = von_neumann_entropy(rho.marginal(Side::B));
            const double f = weak_collapse_discord(rho, MonitoringStrength(eps), cfg).value;
            out.push_back({frakd_bound, eps * qd + (1.0 - eps) * s_b - f, in + " eps=0.5"});
            return out;
        });
}

std::vector<PropertyResult> classical_suite(int samples, std::uint64_t seed, const OptimizerConfig& cfg, int jobs) {
    enum { i_eq_j, decomposition };
    const int state_samples = std::min(samples, 50);
    return run_properties(
        "classical",
        {{"mutual_info_forms_agree", 1e-12}, {"mutual_info_equals_qd_plus_c", 1e-7}},
        samples, jobs, [&](int i) {
            Sample out;
            const std::uint64_t s = sample_seed(seed, i);
            std::mt19937_64 engine(s);
            const int rows = 1 + static_cast<int>(engine() % 5);
            const int cols = 1 + static_cast<int>(engine() % 5);
            Eigen::MatrixXd p(rows, cols);
            for (int x = 0; x < rows; ++x)
                for (int y = 0; y < cols; ++y) p(x, y) = uniform(engine) < 0.2 ? 0.0 : uniform(engine);
            if (p.sum() == 0.0) p(0, 0) = 1.0;
            p /= p.sum();
            const JointDistribution table(p);
            out.push_back({i_eq_j, std::abs(classical_mutual_info_i(table) - classical_mutual_info_j(table)),
                           "table seed=" + std::to_string(s) + " shape=" + std::to_string(rows) + "x" +
                               std::to_string(cols)});
            if (i < state_samples) {
                const auto st = random_state(s, 2, 2);
                const double gap = quantum_mutual_info(st.rho) - discord(st.rho, cfg).value -
                                   classical_correlations(st.rho, cfg).value;
                out.push_back({decomposition, std::abs(gap), "state=" + st.spec});
            }
            return out;
        });
}

std::string deviation_text(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

} // namespace

Suite parse_suite(std::string_view name) {
    for (const auto& [s, n] : kSuiteNames)
        if (n == name) return s;
    throw ParseError("unknown suite '" + std::string(name) + "'");
}

std::string_view name_of(Suite s) {
    for (const auto& [k, n] : kSuiteNames)
        if (k == s) return n;
    return "?";
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

VerifyReport verify(Suite suite, int samples, std::uint64_t seed, const OptimizerConfig& optimizer, int jobs) {
    if (samples < 1) throw ValidationError("verify needs at least one sample");
    optimizer.validate();
    VerifyReport report;
    report.samples = samples;
    report.seed = seed;
    auto add = [&](std::vector<PropertyResult> props) {
        for (auto& p : props) report.properties.push_back(std::move(p));
    };
    const bool all = suite == Suite::all;
    if (all || suite == Suite::maps) add(maps_suite(samples, seed, jobs));
    if (all || suite == Suite::theorem1) add(theorem1_suite(samples, seed, optimizer, jobs));
    if (all || suite == Suite::hierarchy) add(hierarchy_suite(samples, seed, optimizer, jobs));
    if (all || suite == Suite::sqd) add(sqd_suite(samples, seed, optimizer, jobs));
    if (all || suite == Suite::classical) add(classical_suite(samples, seed, optimizer, jobs));
    return report;
}

bool VerifyReport::pass() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.pass(); });
}

nlohmann::ordered_json VerifyReport::json() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["samples"] = samples;
    j["pass"] = pass();
    j["properties"] = nlohmann::ordered_json::array();
    for (const auto& p : properties) {
        nlohmann::ordered_json e;
        e["suite"] = p.suite;
        e["property"] = p.name;
        e["samples"] = p.samples;
        e["max_deviation"] = p.max_deviation;
        e["tolerance"] = p.tolerance;
        e["pass"] = p.pass();
        e["worst_input"] = p.worst_input;
        j["properties"].push_back(std::move(e));
    }
    return j;
}

std::string VerifyReport::text() const {
    std::string out = "seed " + std::to_string(seed) + ", samples " + std::to_string(samples) + "\n";
    char line[512];
    std::snprintf(line, sizeof line, "%-10s %-34s %8s %14s %10s  %s\n", "suite", "property", "samples",
                  "max_deviation", "tolerance", "result");
    out += line;
    for (const auto& p : properties) {
        std::snprintf(line, sizeof line, "%-10s %-34s %8d %14s %10s  %s\n", p.suite.c_str(), p.name.c_str(),
                      p.samples, deviation_text(p.max_deviation).c_str(), deviation_text(p.tolerance).c_str(),
                      p.pass() ? "pass" : "FAIL");
        out += line;
        if (!p.pass()) out += "    worst at " + p.worst_input + "\n";
    }
    out += pass() ? "all properties pass\n" : "some properties FAIL\n";
    return out;
}

} // namespace wqd::cli
