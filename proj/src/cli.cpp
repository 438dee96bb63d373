#include "wqd/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include <CLI11.hpp>
#include <unistd.h>

#include "wqd/error.hpp"
#include "wqd/info.hpp"
#include "wqd/states.hpp"

namespace wqd::cli {

namespace {

double parse_double(std::string_view text, std::string_view what) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size() || !std::isfinite(v))
        throw ParseError(std::string(what) + ": not a number: '" + s + "'");
    return v;
}

} // namespace

GridSpec GridSpec::parse(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
        throw ParseError("grid must look like lo:hi:n, got '" + std::string(text) + "'");
    GridSpec g;
    g.lo = parse_double(text.substr(0, first), "grid lo");
    g.hi = parse_double(text.substr(first + 1, second - first - 1), "grid hi");
    const double n = parse_double(text.substr(second + 1), "grid n");
    if (n < 1 || n != std::floor(n) || n > 1e6) throw ParseError("grid n must be a positive integer");
    g.n = static_cast<int>(n);
    if (g.hi < g.lo) throw ParseError("grid hi must not be below lo");
    return g;
}

double GridSpec::at(int i) const {
    if (n == 1) return lo;
    if (i == n - 1) return hi;
    return lo + (hi - lo) * i / (n - 1);
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0.00000000";
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.8e", value);
    const int exponent = std::atoi(std::strchr(buf, 'e') + 1);
    const int decimals = std::max(0, 8 - exponent);
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

double round_significant(double value) {
    if (!std::isfinite(value)) return value;
    return std::stod(format_number(value));
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot replace '" + path.string() + "': " + ec.message());
    }
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    jobs = std::min(jobs, n);
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
}

// ---- quantify ----

namespace {

constexpr std::pair<Quantifier, std::string_view> kQuantifierNames[] = {
    {Quantifier::qd, "qd"},       {Quantifier::wqd, "wqd"},     {Quantifier::sqd, "sqd"},
    {Quantifier::frakd, "frakd"}, {Quantifier::syqd, "syqd"},   {Quantifier::sywqd, "sywqd"},
    {Quantifier::classical, "classical"}, {Quantifier::mutual_info, "mutual_info"},
};

void expect(bool present, bool wanted, Quantifier q, const char* flag) {
    if (wanted && !present)
        throw ParseError(std::string(name_of(q)) + " needs " + flag);
    if (!wanted && present)
        throw ParseError(std::string(flag) + " does not apply to " + std::string(name_of(q)));
}

} // namespace

Quantifier parse_quantifier(std::string_view name) {
    for (const auto& [q, n] : kQuantifierNames)
        if (n == name) return q;
    throw ParseError("unknown quantifier '" + std::string(name) + "'");
}

std::string_view name_of(Quantifier q) {
    for (const auto& [k, n] : kQuantifierNames)
        if (k == q) return n;
    return "?";
}

double QuantifyReport::display_value() const {
    return request.log_base == LogBase::two ? value_nats / std::numbers::ln2 : value_nats;
}

nlohmann::ordered_json QuantifyReport::json() const {
    nlohmann::ordered_json j;
    j["quantifier"] = name_of(request.quantifier);
    j["state"] = request.state;
    if (request.epsilon) j["epsilon"] = *request.epsilon;
    if (request.epsilon_a) j["epsilon_a"] = *request.epsilon_a;
    if (request.x) j["x"] = *request.x;
    j["value"] = display_value();
    j["unit"] = request.log_base == LogBase::two ? "bits" : "nats";
    j["value_nats"] = value_nats;
    if (result) {
        if (result->measurement_a) {
            j["theta_a"] = result->measurement_a->theta();
            j["phi_a"] = result->measurement_a->phi();
        }
        j["theta_b"] = result->measurement_b.theta();
        j["phi_b"] = result->measurement_b.phi();
        j["grid_best"] = result->diagnostics.grid_best;
        j["refined"] = result->diagnostics.refined;
        j["iterations"] = result->diagnostics.iterations;
        j["evaluations"] = result->diagnostics.evaluations;
    }
    return j;
}

std::string QuantifyReport::text() const {
    std::string out;
    const auto j = json();
    for (const auto& item : j.items()) {
        const std::string& key = item.key();
        const auto& v = item.value();
        std::string shown;
        if (v.is_number_float())
            shown = format_number(v.get<double>());
        else if (v.is_string())
            shown = v.get<std::string>();
        else
            shown = v.dump();
        out += key;
        out.append(key.size() < 12 ? 12 - key.size() : 1, ' ');
        out += shown + "\n";
    }
    return out;
}

QuantifyReport quantify(const QuantifyRequest& request) {
    const Quantifier q = request.quantifier;
    const bool needs_eps = q == Quantifier::wqd || q == Quantifier::frakd || q == Quantifier::sywqd;
    expect(request.epsilon.has_value(), needs_eps, q, "--epsilon");
    if (request.epsilon_a && q != Quantifier::sywqd)
        throw ParseError("--epsilon-a does not apply to " + std::string(name_of(q)));
    expect(request.x.has_value(), q == Quantifier::sqd, q, "--x");
    request.optimizer.validate();

    const DensityMatrix rho = StateSpec::parse(request.state).build();
    const OptimizerConfig& cfg = request.optimizer;

    QuantifyReport report;
    report.request = request;
    if (q == Quantifier::sywqd && !report.request.epsilon_a) report.request.epsilon_a = request.epsilon;

    switch (q) {
    case Quantifier::qd: report.result = discord(rho, cfg); break;
    case Quantifier::wqd: report.result = weak_discord(rho, MonitoringStrength(*request.epsilon), cfg); break;
    case Quantifier::sqd: report.result = super_discord(rho, WeakStrength(*request.x), cfg); break;
    case Quantifier::frakd:
        report.result = weak_collapse_discord(rho, MonitoringStrength(*request.epsilon), cfg);
        break;
    case Quantifier::syqd: report.result = sym_discord(rho, cfg); break;
    case Quantifier::sywqd:
        report.result = sym_weak_discord(rho, MonitoringStrength(*report.request.epsilon_a),
                                         MonitoringStrength(*request.epsilon), cfg);
        break;
    case Quantifier::classical: report.result = classical_correlations(rho, cfg); break;
    case Quantifier::mutual_info: report.value_nats = quantum_mutual_info(rho); return report;
    }
    report.value_nats = report.result->value;
    return report;
}

// ---- sweep ----

std::vector<SweepRecord> sweep(const GridSpec& mu, const GridSpec& epsilon, const OptimizerConfig& optimizer,
                               int jobs) {
    for (const GridSpec* g : {&mu, &epsilon})
        if (g->n < 1 || g->lo < 0.0 || g->hi > 1.0 || g->hi < g->lo)
            throw ValidationError("sweep grids must be non-empty and lie in [0, 1]");
    optimizer.validate();

    std::vector<double> qd(mu.n);
    parallel_for(mu.n, jobs, [&](int i) {
        qd[i] = discord(werner_singlet(WernerParameter(mu.at(i))), optimizer).value;
    });

    std::vector<SweepRecord> records(static_cast<std::size_t>(mu.n) * epsilon.n);
    parallel_for(static_cast<int>(records.size()), jobs, [&](int k) {
        const int i = k / epsilon.n;
        const int j = k % epsilon.n;
        SweepRecord& r = records[k];
        r.mu = mu.at(i);
        r.epsilon = epsilon.at(j);
        const auto w = weak_discord(werner_singlet(WernerParameter(r.mu)), MonitoringStrength(r.epsilon), optimizer);
        r.wqd_numeric = w.value;
        r.wqd_closed_form = werner_wqd_closed_form(r.mu, r.epsilon);
        r.qd = qd[i];
        r.theta_opt = w.measurement_b.theta();
        r.phi_opt = w.measurement_b.phi();
    });
    return records;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::string out(kSweepHeader);
    out += '\n';
    for (const auto& r : records) {
        for (double v : {r.mu, r.epsilon, r.wqd_numeric, r.wqd_closed_form, r.qd, r.theta_opt, r.phi_opt}) {
            out += format_number(v);
            out += ',';
        }
        out.back() = '\n';
    }
    return out;
}

std::string sweep_json(const std::vector<SweepRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["mu"] = round_significant(r.mu);
        j["epsilon"] = round_significant(r.epsilon);
        j["wqd_numeric"] = round_significant(r.wqd_numeric);
        j["wqd_closed_form"] = round_significant(r.wqd_closed_form);
        j["qd"] = round_significant(r.qd);
        j["theta_opt"] = round_significant(r.theta_opt);
        j["phi_opt"] = round_significant(r.phi_opt);
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

// ---- entry point ----

namespace {

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content << std::flush;
        return;
    }
    write_atomically(out_path, content);
}

void add_optimizer_flags(CLI::App* cmd, OptimizerConfig& cfg) {
    cmd->add_option("--theta-points", cfg.theta_points, "polar grid points on [0, pi]")->capture_default_str();
    cmd->add_option("--phi-points", cfg.phi_points, "azimuthal grid points on [0, 2 pi)")->capture_default_str();
}

int report_error(const char* kind, const std::exception& e, int code) {
    std::cerr << "wqd: " << kind << ": " << e.what() << "\n";
    return code;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"Discord-type correlation quantifiers for bipartite density matrices"};
    app.require_subcommand(1);

    OptimizerConfig cfg;
    std::string out_path;
    std::string format;
    int jobs = 1;

    QuantifyRequest request;
    std::string quantifier_name;
    std::string log_base = "e";
    double eps = 0.0, eps_a = 0.0, x = 0.0;
    auto* quantify_cmd = app.add_subcommand("quantify", "evaluate one quantifier for one state");
    quantify_cmd->add_option("--state", request.state, "state spec, e.g. werner:mu=0.5")->required();
    quantify_cmd->add_option("--quantifier", quantifier_name, "qd|wqd|sqd|frakd|syqd|sywqd|classical|mutual_info")
        ->required()
        ->check(CLI::IsMember({"qd", "wqd", "sqd", "frakd", "syqd", "sywqd", "classical", "mutual_info"}));
    auto* eps_opt = quantify_cmd->add_option("--epsilon", eps, "monitoring strength (B side) in [0, 1]");
    auto* eps_a_opt = quantify_cmd->add_option("--epsilon-a", eps_a, "A-side strength for sywqd (default --epsilon)");
    auto* x_opt = quantify_cmd->add_option("--x", x, "weak-measurement strength for sqd");
    quantify_cmd->add_option("--log-base", log_base, "unit of the displayed value")
        ->check(CLI::IsMember({"e", "2"}))
        ->capture_default_str();
    quantify_cmd->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
    quantify_cmd->add_option("--out", out_path, "output file (default stdout)");
    add_optimizer_flags(quantify_cmd, cfg);

    std::string mu_grid = "0:1:11", eps_grid = "0:1:11";
    auto* sweep_cmd = app.add_subcommand("sweep", "Werner-singlet weak discord over a (mu, epsilon) grid");
    sweep_cmd->add_option("--mu-grid", mu_grid, "lo:hi:n")->capture_default_str();
    sweep_cmd->add_option("--epsilon-grid", eps_grid, "lo:hi:n")->capture_default_str();
    sweep_cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", out_path, "output file (default stdout)");
    sweep_cmd->add_option("--jobs", jobs, "worker threads (0 = all cores)")->capture_default_str();
    add_optimizer_flags(sweep_cmd, cfg);

    std::string suite_name = "all";
    int samples = 20;
    std::uint64_t seed = 1;
    auto* verify_cmd = app.add_subcommand("verify", "sample-based checks of the library identities and bounds");
    verify_cmd->add_option("--suite", suite_name, "maps|theorem1|hierarchy|sqd|classical|all")
        ->check(CLI::IsMember({"maps", "theorem1", "hierarchy", "sqd", "classical", "all"}))
        ->capture_default_str();
    verify_cmd->add_option("--samples", samples, "random samples per property")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify_cmd->add_option("--seed", seed, "base seed")->capture_default_str();
    verify_cmd->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
    verify_cmd->add_option("--out", out_path, "output file (default stdout)");
    verify_cmd->add_option("--jobs", jobs, "worker threads (0 = all cores)")->capture_default_str();
    add_optimizer_flags(verify_cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseFailure;
    }

    try {
        if (*quantify_cmd) {
            request.quantifier = parse_quantifier(quantifier_name);
            if (*eps_opt) request.epsilon = eps;
            if (*eps_a_opt) request.epsilon_a = eps_a;
            if (*x_opt) request.x = x;
            request.log_base = log_base == "2" ? LogBase::two : LogBase::e;
            request.optimizer = cfg;
            const auto report = quantify(request);
            emit(out_path, format == "json" ? report.json().dump(2) + "\n" : report.text());
            return kOk;
        }
        if (*sweep_cmd) {
            const auto records = sweep(GridSpec::parse(mu_grid), GridSpec::parse(eps_grid), cfg, jobs);
            emit(out_path, format == "json" ? sweep_json(records) : sweep_csv(records));
            return kOk;
        }
        const auto report = verify(parse_suite(suite_name), samples, seed, cfg, jobs);
        emit(out_path, format == "json" ? report.json().dump(2) + "\n" : report.text());
        if (!report.pass()) {
            for (const auto& p : report.properties)
                if (!p.pass())
                    std::cerr << "wqd: FAIL " << p.suite << "/" << p.name << " (seed " << seed
                              << "): max deviation " << p.max_deviation << " > " << p.tolerance << " at "
                              << p.worst_input << "\n";
            return kVerifyFailed;
        }
        return kOk;
    } catch (const ParseError& e) {
        return report_error("parse error", e, kParseFailure);
    } catch (const UnsupportedDimensionError& e) {
        return report_error("unsupported dimension", e, kUnsupportedDimension);
    } catch (const IoError& e) {
        return report_error("i/o error", e, kIoFailure);
    } catch (const Error& e) {
        return report_error("validation error", e, kValidationFailure);
    }
}

} // namespace wqd::cli
