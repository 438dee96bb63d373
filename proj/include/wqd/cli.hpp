#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wqd/optimizer.hpp"
#include "wqd/quantifiers.hpp"

namespace wqd::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kParseFailure = 2,
    kUnsupportedDimension = 3,
    kValidationFailure = 4,
    kIoFailure = 5,
};

// `lo:hi:n`, n >= 1 evenly spaced points including both ends (n = 1 gives lo).
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    int n = 11;

    static GridSpec parse(std::string_view text);
    double at(int i) const;
};

// 9 significant digits, fixed notation.
std::string format_number(double value);

// Rounds to what format_number prints.
double round_significant(double value);

// Writes to a sibling temporary file and renames it over `path`. Throws IoError.
void write_atomically(const std::filesystem::path& path, const std::string& content);

// Runs fn(0..n-1) on up to `jobs` threads (0 = hardware concurrency).
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

// ---- quantify ----

enum class Quantifier { qd, wqd, sqd, frakd, syqd, sywqd, classical, mutual_info };

Quantifier parse_quantifier(std::string_view name);
std::string_view name_of(Quantifier q);

enum class LogBase { e, two };

struct QuantifyRequest {
    std::string state;
    Quantifier quantifier = Quantifier::qd;
    std::optional<double> epsilon;
    std::optional<double> epsilon_a;
    std::optional<double> x;
    OptimizerConfig optimizer;
    LogBase log_base = LogBase::e;
};

struct QuantifyReport {
    QuantifyRequest request;
    double value_nats = 0.0;
    std::optional<QuantifierResult> result;  // empty for mutual_info

    double display_value() const;
    std::string text() const;
    nlohmann::ordered_json json() const;
};

// Checks parameter compatibility (ParseError), builds the state and evaluates.
QuantifyReport quantify(const QuantifyRequest& request);

// ---- sweep ----

struct SweepRecord {
    double mu = 0.0;
    double epsilon = 0.0;
    double wqd_numeric = 0.0;
    double wqd_closed_form = 0.0;
    double qd = 0.0;
    double theta_opt = 0.0;
    double phi_opt = 0.0;
};

// Werner-singlet sweep, rows mu-major then epsilon. Grids must lie in [0, 1].
std::vector<SweepRecord> sweep(const GridSpec& mu, const GridSpec& epsilon, const OptimizerConfig& optimizer,
                               int jobs = 1);

inline constexpr std::string_view kSweepHeader = "mu,epsilon,wqd_numeric,wqd_closed_form,qd,theta_opt,phi_opt";

std::string sweep_csv(const std::vector<SweepRecord>& records);
std::string sweep_json(const std::vector<SweepRecord>& records);

// ---- verify ----

enum class Suite { maps, theorem1, hierarchy, sqd, classical, all };

Suite parse_suite(std::string_view name);
std::string_view name_of(Suite s);

// A property passes when every observed deviation is <= tolerance. For
// equalities the deviation is |lhs - rhs|, for lhs <= rhs it is lhs - rhs.
struct PropertyResult {
    std::string suite;
    std::string name;
    double tolerance = 0.0;
    int samples = 0;
    double max_deviation = -std::numeric_limits<double>::infinity();
    std::string worst_input;

    bool pass() const { return max_deviation <= tolerance; }
};

struct VerifyReport {
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<PropertyResult> properties;

    bool pass() const;
    std::string text() const;
    nlohmann::ordered_json json() const;
};

VerifyReport verify(Suite suite, int samples, std::uint64_t seed, const OptimizerConfig& optimizer, int jobs = 1);

// Seed of the i-th random state of a verification run.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

// ---- entry point ----

int run(int argc, char** argv);

} // namespace wqd::cli
