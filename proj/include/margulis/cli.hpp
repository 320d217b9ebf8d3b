#ifndef MARGULIS_CLI_HPP
#define MARGULIS_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "margulis/channel_sim.hpp"
#include "margulis/decoder.hpp"
#include "margulis/finite_group.hpp"
#include "margulis/girth_search.hpp"

namespace margulis::cli {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr const char* results_format_tag = "margulis-results/1";
inline constexpr const char* manifest_format_tag = "margulis-manifest/1";

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_usage = 2,
    exit_budget = 3,
    exit_io = 4,
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a command runs out of its search or trial budget.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Provenance record written next to every primary output as
/// `<output>.manifest.json` (or `manifest.json` inside an output directory).
struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::string code_hash;  // FNV-1a 64 of the input or output code file, hex
    std::uint64_t seed = 0;
    std::string version = tool_version;
    std::string started_at;   // UTC, ISO 8601
    std::string finished_at;  // UTC, ISO 8601
    std::vector<std::string> outputs;

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
std::string utc_timestamp();
std::string file_hash(const std::filesystem::path& path);

/// "1,2,3" -> {1, 2, 3}. Throws UsageError.
std::vector<std::uint32_t> parse_index_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
/// "m:q,m:q" -> pairs. Throws UsageError.
std::vector<std::pair<int, int>> parse_pair_list(const std::string& text);

struct SearchCommand {
    std::string group;  // cyclic:N | product:N1,N2,... | sl2:P
    SearchConfig search;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out;
    bool progress = false;
};

struct BuildCommand {
    std::string group;
    std::string a;  // element indices, "i,j,k"
    std::string b;
    int margulis_eta = 0;  // > 0 selects Margulis generators from (m, q) pairs
    std::string a_pairs;
    std::string b_pairs;
    std::filesystem::path out;
};

struct SimulateCommand {
    std::filesystem::path code;
    std::string eps;  // comma separated
    DecoderConfig decoder;
    std::string variant = "nms";
    SimConfig sim;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out;       // CSV
    std::filesystem::path json_out;  // defaults to <out> with extension .json
};

struct DiagnoseCommand {
    std::filesystem::path code;
    std::string mode;  // girth | census | automorphism | stab-experiment | entropy-trace
    std::filesystem::path out_dir;
    int depth = 3;
    std::string checks;  // census: checks that get a DOT file; default first three signatures
    int max_rows = 1;
    std::size_t max_weight = 16;
    std::size_t per_stabilizer = 20;
    std::size_t max_attempts = 2000;
    std::string rows;   // entropy-trace: rows of H_X summed into the stabilizer
    std::string error;  // entropy-trace: error positions; default first half of the support
    double eps = 0.05;
    DecoderConfig decoder;
    std::string variant = "nms";
    std::optional<std::uint64_t> seed;
};

struct InfoCommand {
    std::filesystem::path code;
};

int cmd_search(const SearchCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_build(const BuildCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_diagnose(const DiagnoseCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_info(const InfoCommand& cmd, std::ostream& out, std::ostream& err);

/// Parses arguments (without the program name) and dispatches. Exceptions
/// are mapped to exit codes: UsageError / std::invalid_argument -> 2,
/// BudgetExhausted / SearchExhausted -> 3, IoError / FormatError -> 4,
/// anything else -> 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace margulis::cli

#endif  // MARGULIS_CLI_HPP
