#include "wqd/states.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "wqd/error.hpp"

namespace wqd {

namespace {

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

// Uniform double in (0, 1) from the top 53 bits of the engine output.
double open_uniform(std::mt19937_64& engine) {
    for (;;) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

ComplexMatrix bloch_vector_state(double x, double y, double z) {
    if (x * x + y * y + z * z > 1.0 + 1e-12)
        throw ValidationError("Bloch vector lies outside the unit ball");
    ComplexMatrix m(2, 2);
    m << 0.5 * (1.0 + z), Complex(0.5 * x, -0.5 * y),
         Complex(0.5 * x, 0.5 * y), 0.5 * (1.0 - z);
    return m;
}

bool rank_one(const Pvm& pvm) {
    for (const auto& p : pvm.projectors())
        if (std::abs(p.trace().real() - 1.0) > kStateTolerance) return false;
    return true;
}

const std::map<std::string, std::set<std::string>, std::less<>>& known_keys() {
    static const std::map<std::string, std::set<std::string>, std::less<>> keys{
        {"werner", {"mu"}},
        {"bell", {"index"}},
        {"random", {"dA", "dB", "rank", "seed"}},
        {"product", {"ax", "ay", "az", "bx", "by", "bz"}},
        {"quantum_classical", {"p", "ta0", "pa0", "ta1", "pa1", "theta", "phi"}},
        {"classical_classical", {"p00", "p01", "p10", "p11", "theta_a", "phi_a", "theta_b", "phi_b"}},
    };
    return keys;
}

class Params {
public:
    explicit Params(const StateSpec& spec) {
        for (const auto& [k, v] : spec.parameters) values_[k] = v;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    double real(const std::string& key, double fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        double v = 0.0;
        const auto& s = it->second;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
            throw ParseError("parameter '" + key + "': '" + s + "' is not a number");
        return v;
    }

    double required_real(const std::string& key) const {
        if (!has(key)) throw ParseError("missing parameter '" + key + "'");
        return real(key, 0.0);
    }

    template <class Int>
    Int integer(const std::string& key, Int fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        Int v{};
        const auto& s = it->second;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw ParseError("parameter '" + key + "': '" + s + "' is not an integer");
        return v;
    }

private:
    std::map<std::string, std::string> values_;
};

} // namespace

WernerParameter::WernerParameter(double mu) : mu_(mu) {
    if (!(mu >= 0.0 && mu <= 1.0))
        throw ValidationError("Werner parameter mu must lie in [0, 1], got " + std::to_string(mu));
}

DensityMatrix werner_singlet(WernerParameter mu) {
    const double m = mu.value();
    ComplexMatrix rho = (1.0 - m) / 4.0 * identity(4);
    const ComplexMatrix singlet = bell(3).matrix();
    rho += m * singlet;
    return DensityMatrix(std::move(rho), 2, 2);
}

double werner_wqd_closed_form(double mu, double eps) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw ValidationError("closed form: mu must lie in [0, 1]");
    if (!(eps >= 0.0 && eps <= 1.0)) throw ValidationError("closed form: eps must lie in [0, 1]");
    double sum = 0.0;
    for (int i = -1; i <= 1; ++i)
        for (int j = 0; j <= 1; ++j) {
            const double lambda = 1.0 + mu * (1.0 + 2.0 * i * (1.0 - j * eps));
            sum += (j == 0 ? 1.0 : -1.0) * xlogx(lambda);
        }
    return sum / 4.0;
}

DensityMatrix bell(int index) {
    if (index < 0 || index > 3) throw ValidationError("Bell index must be 0..3");
    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    switch (index) {
        case 0: psi(0) = r; psi(3) = r; break;
        case 1: psi(0) = r; psi(3) = -r; break;
        case 2: psi(1) = r; psi(2) = r; break;
        default: psi(1) = r; psi(2) = -r; break;
    }
    return DensityMatrix(psi * psi.adjoint(), 2, 2);
}

DensityMatrix product(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
    validate_state_matrix(rho_a);
    validate_state_matrix(rho_b);
    return DensityMatrix(kron(rho_a, rho_b), static_cast<int>(rho_a.rows()), static_cast<int>(rho_b.rows()));
}

ComplexMatrix qubit_pure_state(const BlochAngles& angles) {
    return pvm_from_bloch(angles)[0];
}

DensityMatrix quantum_classical(std::span<const double> weights, std::span<const ComplexMatrix> a_states,
                                const Pvm& pvm) {
    if (weights.size() != pvm.size() || a_states.size() != pvm.size())
        throw DimensionError("quantum_classical: need one weight and one A-state per projector");
    if (!rank_one(pvm)) throw ValidationError("quantum_classical: PVM must be rank-1");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw ValidationError("quantum_classical: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("quantum_classical: weights must sum to 1");
    const int dim_a = static_cast<int>(a_states.front().rows());
    ComplexMatrix rho = ComplexMatrix::Zero(dim_a * pvm.dim(), dim_a * pvm.dim());
    for (std::size_t b = 0; b < pvm.size(); ++b) {
        if (a_states[b].rows() != dim_a) throw DimensionError("quantum_classical: A-states differ in size");
        validate_state_matrix(a_states[b]);
        rho += weights[b] * kron(a_states[b], pvm[b]);
    }
    return DensityMatrix(std::move(rho), dim_a, pvm.dim());
}

DensityMatrix classical_classical(const Eigen::MatrixXd& weights, const Pvm& pvm_a, const Pvm& pvm_b) {
    if (weights.rows() != static_cast<Eigen::Index>(pvm_a.size()) ||
        weights.cols() != static_cast<Eigen::Index>(pvm_b.size()))
        throw DimensionError("classical_classical: weight table does not match the PVMs");
    if (!rank_one(pvm_a) || !rank_one(pvm_b))
        throw ValidationError("classical_classical: PVMs must be rank-1");
    if (weights.minCoeff() < 0.0 || std::abs(weights.sum() - 1.0) > 1e-12)
        throw ValidationError("classical_classical: weights must be a probability table");
    ComplexMatrix rho = ComplexMatrix::Zero(pvm_a.dim() * pvm_b.dim(), pvm_a.dim() * pvm_b.dim());
    for (std::size_t a = 0; a < pvm_a.size(); ++a)
        for (std::size_t b = 0; b < pvm_b.size(); ++b)
            rho += weights(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
                   kron(pvm_a[a], pvm_b[b]);
    return DensityMatrix(std::move(rho), pvm_a.dim(), pvm_b.dim());
}

DensityMatrix random_density(int dim_a, int dim_b, int rank, std::uint64_t seed) {
    if (dim_a <= 0 || dim_b <= 0 || dim_a * dim_b > kMaxTotalDim)
        throw DimensionError("random_density: unsupported dimensions");
    const int dim = dim_a * dim_b;
    if (rank < 1 || rank > dim)
        throw ValidationError("random_density: rank must lie in [1, " + std::to_string(dim) + "]");

    std::mt19937_64 engine(seed);
    // Box-Muller: each draw yields one complex normal with E|z|^2 = 1.
    auto complex_normal = [&engine] {
        const double u1 = open_uniform(engine);
        const double u2 = open_uniform(engine);
        const double r = std::sqrt(-std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return Complex(r * std::cos(angle), r * std::sin(angle));
    };
    ComplexMatrix g(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < rank; ++k) g(i, k) = complex_normal();

    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(std::move(rho), dim_a, dim_b);
}

StateSpec StateSpec::parse(std::string_view text) {
    StateSpec spec;
    const auto colon = text.find(':');
    spec.kind = std::string(text.substr(0, colon));
    const auto keys = known_keys().find(spec.kind);
    if (keys == known_keys().end()) throw ParseError("unknown state kind '" + spec.kind + "'");
    if (colon == std::string_view::npos) return spec;

    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
            throw ParseError("malformed parameter '" + std::string(item) + "' (expected key=value)");
        std::string key(item.substr(0, eq));
        if (keys->second.count(key) == 0)
            throw ParseError("unknown parameter '" + key + "' for state kind '" + spec.kind + "'");
        for (const auto& [k, v] : spec.parameters)
            if (k == key) throw ParseError("duplicate parameter '" + key + "'");
        spec.parameters.emplace_back(std::move(key), std::string(item.substr(eq + 1)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
        if (rest.empty()) throw ParseError("trailing comma in state spec");
    }
    return spec;
}

DensityMatrix StateSpec::build() const {
    const Params p(*this);
    constexpr double pi = std::numbers::pi;
    if (kind == "werner") return werner_singlet(WernerParameter(p.required_real("mu")));
    if (kind == "bell") {
        if (!p.has("index")) throw ParseError("missing parameter 'index'");
        return bell(p.integer<int>("index", 0));
    }
    if (kind == "random") {
        const int da = p.integer<int>("dA", 2);
        const int db = p.integer<int>("dB", 2);
        return random_density(da, db, p.integer<int>("rank", da * db), p.integer<std::uint64_t>("seed", 0));
    }
    if (kind == "product")
        return product(bloch_vector_state(p.real("ax", 0), p.real("ay", 0), p.real("az", 0)),
                       bloch_vector_state(p.real("bx", 0), p.real("by", 0), p.real("bz", 0)));
    if (kind == "quantum_classical") {
        const double w = p.real("p", 0.5);
        const std::vector<double> weights{w, 1.0 - w};
        const std::vector<ComplexMatrix> a_states{
            qubit_pure_state(BlochAngles(p.real("ta0", 0.0), p.real("pa0", 0.0))),
            qubit_pure_state(BlochAngles(p.real("ta1", pi / 2), p.real("pa1", 0.0)))};
        return quantum_classical(weights, a_states,
                                 pvm_from_bloch(BlochAngles(p.real("theta", 0.0), p.real("phi", 0.0))));
    }
    if (kind == "classical_classical") {
        Eigen::MatrixXd w(2, 2);
        w << p.real("p00", 0.5), p.real("p01", 0.0), p.real("p10", 0.0), p.real("p11", 0.5);
        return classical_classical(w, pvm_from_bloch(BlochAngles(p.real("theta_a", 0.0), p.real("phi_a", 0.0))),
                                   pvm_from_bloch(BlochAngles(p.real("theta_b", 0.0), p.real("phi_b", 0.0))));
    }
    throw ParseError("unknown state kind '" + kind + "'");
}

} // namespace wqd
