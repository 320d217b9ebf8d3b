#include "margulis/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "margulis/code_io.hpp"
#include "margulis/diagnostics.hpp"
#include "margulis/tanner_graph.hpp"

namespace margulis::cli {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Manifest and small helpers

json RunManifest::to_json() const {
    return json{{"format", manifest_format_tag},
                {"command", command},
                {"config", config},
                {"code_hash", code_hash},
                {"seed", seed},
                {"version", version},
                {"started_at", started_at},
                {"finished_at", finished_at},
                {"outputs", outputs}};
}

RunManifest RunManifest::from_json(const json& j) {
    if (j.value("format", "") != manifest_format_tag) throw FormatError("not a run manifest");
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config");
    m.code_hash = j.at("code_hash").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.started_at = j.at("started_at").get<std::string>();
    m.finished_at = j.at("finished_at").get<std::string>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    return m;
}

namespace {

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    return os;
}

void write_text(const fs::path& path, const std::string& text) {
    auto os = open_output(path);
    os << text;
    if (!os) throw IoError("failed writing " + path.string());
}

CssCode load_code_file(const fs::path& path) {
    if (!fs::exists(path)) throw IoError("code file not found: " + path.string());
    try {
        return load_code(path);
    } catch (const FormatError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw IoError(e.what());
    }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
    if (seed) return *seed;
    std::random_device rd;
    std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    err << "seed: " << s << " (generated; pass --seed to reproduce)\n";
    return s;
}

GroupSpec parse_group(const std::string& text) {
    try {
        return GroupSpec::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

DecoderConfig resolve_decoder(DecoderConfig cfg, const std::string& variant) {
    try {
        cfg.variant = parse_variant(variant);
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

json decoder_json(const DecoderConfig& cfg) {
    return json{{"variant", to_string(cfg.variant)},
                {"beta", cfg.beta},
                {"max_iters", cfg.max_iters},
                {"osd0", cfg.osd0}};
}

fs::path manifest_path(const fs::path& output) { return fs::path(output.string() + ".manifest.json"); }

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, sep)) {
        auto b = cur.find_first_not_of(" \t");
        auto e = cur.find_last_not_of(" \t");
        parts.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
    }
    // getline drops an empty final field.
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

std::string join_indices(const std::vector<GroupElement>& elems) {
    std::string s;
    for (std::size_t i = 0; i < elems.size(); ++i) s += (i ? "," : "") + std::to_string(elems[i].index);
    return s;
}

std::string girth_text(const std::optional<int>& g) { return g ? std::to_string(*g) : "acyclic"; }

}  // namespace

void write_manifest(const fs::path& path, const RunManifest& manifest) {
    write_text(path, manifest.to_json().dump(2) + "\n");
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string file_hash(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return hex64(fnv1a64(ss.str()));
}

std::vector<std::uint32_t> parse_index_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    if (text.empty()) return out;
    for (const auto& part : split(text, ',')) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(part, &used);
            if (used != part.size() || v < 0 || v > 0xffffffffLL) throw std::invalid_argument(part);
            out.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
            throw UsageError("invalid index '" + part + "' in list '" + text + "'");
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    for (const auto& part : split(text, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("invalid number '" + part + "' in list '" + text + "'");
        }
    }
    return out;
}

std::vector<std::pair<int, int>> parse_pair_list(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    if (text.empty()) return out;
    for (const auto& part : split(text, ',')) {
        auto colon = part.find(':');
        try {
            if (colon == std::string::npos) throw std::invalid_argument(part);
            std::size_t u1 = 0, u2 = 0;
            std::string l = part.substr(0, colon), r = part.substr(colon + 1);
            int m = std::stoi(l, &u1);
            int q = std::stoi(r, &u2);
            if (u1 != l.size() || u2 != r.size()) throw std::invalid_argument(part);
            out.emplace_back(m, q);
        } catch (const std::exception&) {
            throw UsageError("invalid pair '" + part + "' (expected m:q)");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_search(const SearchCommand& cmd, std::ostream& out, std::ostream& err) {
    if (cmd.out.empty()) throw UsageError("search: --out is required");
    const GroupSpec spec = parse_group(cmd.group);
    SearchConfig cfg = cmd.search;
    cfg.seed = resolve_seed(cmd.seed, err);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    RunManifest manifest;
    manifest.command = "search";
    manifest.started_at = utc_timestamp();
    manifest.seed = cfg.seed;
    manifest.config = json{{"group", spec.to_string()},
                           {"r", cfg.r},
                           {"target_girth", cfg.target_girth},
                           {"seed", cfg.seed},
                           {"max_restarts", cfg.max_restarts},
                           {"max_replacements", cfg.max_replacements_per_restart},
                           {"workers", cfg.workers}};

    FiniteGroup group(spec);
    std::function<void(const SearchEvent&)> on_event;
    if (cmd.progress) {
        on_event = [&err](const SearchEvent& e) {
            json depths = json::object();
            for (auto [d, c] : e.collision_depths) depths[std::to_string(d)] = c;
            err << json{{"event", "restart"},
                        {"restart", e.restart},
                        {"replacements", e.replacements},
                        {"collision_depths", depths},
                        {"success", e.success}}
                       .dump()
                << '\n';
        };
    }

    SearchResult result;
    try {
        result = get_generators(group, cfg, on_event);
    } catch (const SearchExhausted& e) {
        err << "search: " << e.what() << " (" << e.stats().replacements << " replacements)\n";
        throw;
    }
    CssCode code = build_searched_code(group, result, cfg);
    write_text(cmd.out, serialize_code(code));

    manifest.code_hash = file_hash(cmd.out);
    manifest.outputs = {cmd.out.filename().string()};
    manifest.finished_at = utc_timestamp();
    write_manifest(manifest_path(cmd.out), manifest);

    out << "n=" << code.n << " k=" << code.k << " girth=" << result.girth << " restart=" << result.restart_index
        << " replacements=" << result.stats.replacements << '\n';
    out << "A=" << join_indices(code.gens.a) << " B=" << join_indices(code.gens.b) << '\n';
    return exit_ok;
}

int cmd_build(const BuildCommand& cmd, std::ostream& out, std::ostream& err) {
    if (cmd.out.empty()) throw UsageError("build: --out is required");
    const GroupSpec spec = parse_group(cmd.group);
    FiniteGroup group(spec);

    GeneratorSets gens;
    try {
        if (cmd.margulis_eta > 0) {
            if (spec.kind != GroupKind::special_linear_2)
                throw UsageError("build: Margulis generators need an sl2 group");
            auto pa = parse_pair_list(cmd.a_pairs);
            auto pb = parse_pair_list(cmd.b_pairs);
            gens.a = margulis_generators(group, cmd.margulis_eta, pa);
            gens.b = margulis_generators(group, cmd.margulis_eta, pb);
        } else {
            for (auto i : parse_index_list(cmd.a)) gens.a.push_back(group.from_index(i));
            for (auto i : parse_index_list(cmd.b)) gens.b.push_back(group.from_index(i));
        }
        gens.validate();
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(std::string("build: ") + e.what());
    }

    RunManifest manifest;
    manifest.command = "build";
    manifest.started_at = utc_timestamp();
    manifest.config = json{{"group", spec.to_string()}, {"A", join_indices(gens.a)}, {"B", join_indices(gens.b)}};
    if (cmd.margulis_eta > 0)
        manifest.config.update(json{{"eta", cmd.margulis_eta}, {"a_pairs", cmd.a_pairs}, {"b_pairs", cmd.b_pairs}});

    CssCode code = build_2bga(group, gens);
    code.girth_certificate = code_girth(code);
    write_text(cmd.out, serialize_code(code));

    manifest.code_hash = file_hash(cmd.out);
    manifest.outputs = {cmd.out.filename().string()};
    manifest.finished_at = utc_timestamp();
    write_manifest(manifest_path(cmd.out), manifest);

    out << "n=" << code.n << " k=" << code.k << " girth=" << girth_text(code.girth_certificate) << '\n';
    if (code.k == 0) err << "warning: k = 0, the code encodes no logical qubits\n";
    return exit_ok;
}

int cmd_simulate(const SimulateCommand& cmd, std::ostream& out, std::ostream& err) {
    if (cmd.out.empty()) throw UsageError("simulate: --out is required");
    SimConfig sim = cmd.sim;
    sim.eps = parse_double_list(cmd.eps);
    if (sim.eps.empty()) throw UsageError("simulate: --eps needs at least one value");
    sim.seed = resolve_seed(cmd.seed, err);
    try {
        sim.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const DecoderConfig decoder = resolve_decoder(cmd.decoder, cmd.variant);
    const CssCode code = load_code_file(cmd.code);

    RunManifest manifest;
    manifest.command = "simulate";
    manifest.started_at = utc_timestamp();
    manifest.seed = sim.seed;
    manifest.code_hash = file_hash(cmd.code);

    // Worker count and batch size are left out: they never change results.
    json config{{"code_hash", manifest.code_hash},
                {"eps", sim.eps},
                {"min_samples", sim.min_samples},
                {"min_failures", sim.min_failures},
                {"max_trials", sim.max_trials},
                {"seed", sim.seed},
                {"decoder", decoder_json(decoder)}};
    manifest.config = config;
    manifest.config["workers"] = sim.workers;

    std::vector<LerPoint> points;
    for (double eps : sim.eps) {
        points.push_back(run_point(code, eps, sim, decoder));
        const auto& p = points.back();
        out << "eps=" << p.eps << " trials=" << p.trials << " failures=" << p.failures << " ler=" << p.ler
            << (p.censored ? " (censored)" : "") << '\n';
    }

    {
        auto os = open_output(cmd.out);
        write_ler_csv(os, points);
        if (!os) throw IoError("failed writing " + cmd.out.string());
    }

    json rows = json::array();
    for (const auto& p : points)
        rows.push_back(json{{"eps", p.eps},
                            {"trials", p.trials},
                            {"failures", p.failures},
                            {"ler", p.ler},
                            {"ci_low", p.ci_low},
                            {"ci_high", p.ci_high},
                            {"censored", p.censored},
                            {"x_failures", p.x_failures},
                            {"z_failures", p.z_failures},
                            {"non_converged", p.non_converged}});
    json doc{{"format", results_format_tag},
             {"config", config},
             {"code", {{"group", code.group.to_string()}, {"n", code.n}, {"k", code.k}}},
             {"points", rows}};
    fs::path json_out = cmd.json_out.empty() ? fs::path(cmd.out).replace_extension(".json") : cmd.json_out;
    write_text(json_out, doc.dump(2) + "\n");

    manifest.outputs = {cmd.out.filename().string(), json_out.filename().string()};
    manifest.finished_at = utc_timestamp();
    write_manifest(manifest_path(cmd.out), manifest);
    return exit_ok;
}

namespace {

std::string census_signature(const CycleCensus& census) {
    std::string s;
    for (auto [len, count] : census) s += (s.empty() ? "" : ";") + std::to_string(len) + ":" + std::to_string(count);
    return s.empty() ? "none" : s;
}

void write_experiment(const fs::path& dir, const StabilizerExperiment& exp, const EntropyTrace& trace, json extra,
                      std::vector<std::string>& outputs) {
    {
        auto os = open_output(dir / "trace.csv");
        write_trace_csv(os, trace);
    }
    {
        auto os = open_output(dir / "phase_portrait.csv");
        write_phase_portrait_csv(os, trace);
    }
    json doc = std::move(extra);
    doc["stabilizer"] = exp.stabilizer.support();
    doc["error"] = exp.error.support();
    doc["iterations"] = trace.iterations;
    doc["converged"] = trace.converged;
    doc["zero_at"] = trace.zero_at ? json(*trace.zero_at) : json(nullptr);
    doc["final_W"] = trace.weights.empty() ? json(nullptr) : json(trace.weights.back());
    write_text(dir / "experiment.json", doc.dump(2) + "\n");
    outputs.insert(outputs.end(), {"trace.csv", "phase_portrait.csv", "experiment.json"});
}

}  // namespace

int cmd_diagnose(const DiagnoseCommand& cmd, std::ostream& out, std::ostream& err) {
    static const std::set<std::string> modes{"girth", "census", "automorphism", "stab-experiment", "entropy-trace"};
    if (!modes.count(cmd.mode)) throw UsageError("diagnose: unknown mode '" + cmd.mode + "'");
    if (cmd.out_dir.empty()) throw UsageError("diagnose: --out-dir is required");
    if (cmd.depth < 0 || cmd.depth > 3) throw UsageError("diagnose: --depth must lie in [0, 3]");
    const CssCode code = load_code_file(cmd.code);
    const DecoderConfig decoder = resolve_decoder(cmd.decoder, cmd.variant);
    const fs::path dir = cmd.out_dir;

    RunManifest manifest;
    manifest.command = "diagnose " + cmd.mode;
    manifest.started_at = utc_timestamp();
    manifest.code_hash = file_hash(cmd.code);
    manifest.config = json{{"mode", cmd.mode}};
    int status = exit_ok;

    if (cmd.mode == "girth") {
        auto gx = girth(TannerGraph(code.hx));
        auto gz = girth(TannerGraph(code.hz));
        auto g = code_girth(code);
        write_text(dir / "girth.csv", "graph,girth\nx," + girth_text(gx) + "\nz," + girth_text(gz) + "\nmin," +
                                          girth_text(g) + "\n");
        manifest.outputs = {"girth.csv"};
        out << "girth: " << girth_text(g) << " (x " << girth_text(gx) << ", z " << girth_text(gz) << ")\n";
        if (code.girth_certificate) {
            bool match = g == code.girth_certificate;
            out << "certificate: " << *code.girth_certificate << (match ? " (matches)" : " (MISMATCH)") << '\n';
            if (!match) status = exit_failure;
        }
    } else if (cmd.mode == "census") {
        manifest.config["depth"] = cmd.depth;
        const TannerGraph graph = TannerGraph::from_code(code, CheckSide::x);
        std::map<std::string, std::vector<std::size_t>> by_signature;
        std::ostringstream csv;
        csv << "check,cycle_length,count\n";
        std::vector<std::string> signature_of(graph.num_checks());
        for (std::size_t c = 0; c < graph.num_checks(); ++c) {
            auto census = neighborhood_cycle_census(graph, c, cmd.depth);
            for (auto [len, count] : census) csv << c << ',' << len << ',' << count << '\n';
            signature_of[c] = census_signature(census);
            by_signature[signature_of[c]].push_back(c);
        }
        write_text(dir / "census.csv", csv.str());

        std::ostringstream sig_csv;
        sig_csv << "signature,checks,first_check\n";
        for (const auto& [sig, checks] : by_signature) sig_csv << sig << ',' << checks.size() << ',' << checks[0] << '\n';
        write_text(dir / "signatures.csv", sig_csv.str());
        manifest.outputs = {"census.csv", "signatures.csv"};

        std::vector<std::uint32_t> dot_checks = parse_index_list(cmd.checks);
        if (dot_checks.empty()) {
            // One representative per signature in check order, at most three.
            std::set<std::string> taken;
            for (std::size_t c = 0; c < signature_of.size() && dot_checks.size() < 3; ++c)
                if (taken.insert(signature_of[c]).second) dot_checks.push_back(static_cast<std::uint32_t>(c));
        }
        for (auto c : dot_checks) {
            if (c >= graph.num_checks()) throw UsageError("diagnose: check index out of range");
            std::string name = "neighborhood_" + std::to_string(c) + ".dot";
            write_text(dir / name, neighborhood_dot(graph, c, cmd.depth));
            manifest.outputs.push_back(name);
        }
        out << "distinct signatures: " << by_signature.size() << '\n';
        for (const auto& [sig, checks] : by_signature) out << "  " << sig << " x" << checks.size() << '\n';
    } else if (cmd.mode == "automorphism") {
        FiniteGroup group(code.group);
        const TannerGraph graph(code.hx);
        std::ostringstream csv;
        csv << "h,element,automorphism,normalizes_a\n";
        std::size_t count = 0;
        std::size_t agree = 0;
        for (auto h : group.enumerate()) {
            bool aut = is_automorphism(graph, natural_right_action(group, code, h));
            bool norm = group.normalizes(h, code.gens.a);
            count += aut;
            agree += aut == norm;
            csv << h.index << ",\"" << group.format(h) << "\"," << aut << ',' << norm << '\n';
        }
        write_text(dir / "automorphism.csv", csv.str());
        manifest.outputs = {"automorphism.csv"};
        out << "automorphisms: " << count << " of " << group.order() << '\n';
        if (count == group.order()) out << "all |G| actions are automorphisms\n";
        out << "agreement with normalizer test: " << agree << " of " << group.order() << '\n';
        if (agree != group.order()) status = exit_failure;
    } else if (cmd.mode == "stab-experiment") {
        const std::uint64_t seed = resolve_seed(cmd.seed, err);
        manifest.seed = seed;
        manifest.config.update(json{{"max_rows", cmd.max_rows},
                                    {"max_weight", cmd.max_weight},
                                    {"per_stabilizer", cmd.per_stabilizer},
                                    {"max_attempts", cmd.max_attempts},
                                    {"eps", cmd.eps},
                                    {"seed", seed},
                                    {"decoder", decoder_json(decoder)}});
        if (cmd.max_rows < 1 || cmd.max_rows > 3) throw UsageError("diagnose: --max-rows must lie in [1, 3]");
        auto candidates = find_candidate_symmetric_stabilizers(code, cmd.max_rows, cmd.max_weight);
        std::vector<BinVector> supports;
        for (const auto& c : candidates) supports.push_back(c.support);
        out << "symmetric stabilizer candidates: " << candidates.size() << '\n';
        auto found = find_converging_injection(code, supports, decoder, cmd.eps, cmd.per_stabilizer,
                                               cmd.max_attempts, seed);
        if (!found) throw BudgetExhausted("no half-weight injection reached W = 0 within the attempt budget");
        const auto it = std::find_if(candidates.begin(), candidates.end(), [&](const SymmetricStabilizer& s) {
            return s.support == found->experiment.stabilizer;
        });
        json extra{{"attempts", found->attempts}, {"rows", it->rows}, {"partition", it->partition}};
        write_experiment(dir, found->experiment, found->trace, std::move(extra), manifest.outputs);
        out << "W reached 0 at iteration " << *found->trace.zero_at << " after " << found->attempts
            << " injections (stabilizer weight " << found->experiment.stabilizer.weight() << ")\n";
    } else {  // entropy-trace
        auto rows = parse_index_list(cmd.rows);
        if (rows.empty()) throw UsageError("diagnose: entropy-trace needs --rows");
        BinVector support(code.n);
        for (auto r : rows) {
            if (r >= code.hx.rows()) throw UsageError("diagnose: row index out of range");
            support ^= code.hx.row(r);
        }
        BinVector error(code.n);
        auto positions = parse_index_list(cmd.error);
        if (positions.empty()) {
            auto vars = support.support();
            for (std::size_t i = 0; i < vars.size() / 2; ++i) error.set(vars[i]);
        } else {
            for (auto q : positions) {
                if (q >= code.n) throw UsageError("diagnose: error position out of range");
                error.set(q);
            }
        }
        StabilizerExperiment exp{support, error, decoder, cmd.eps};
        try {
            validate_experiment(code, exp);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        manifest.config.update(json{{"rows", rows}, {"error", error.support()}, {"eps", cmd.eps},
                                    {"decoder", decoder_json(decoder)}});
        auto trace = run_stabilizer_experiment(code, exp);
        write_experiment(dir, exp, trace, json{{"rows", rows}}, manifest.outputs);
        if (trace.zero_at)
            out << "W reached 0 at iteration " << *trace.zero_at << '\n';
        else
            out << "W did not reach 0 in " << trace.iterations << " iterations; final W = " << trace.weights.back()
                << '\n';
    }

    manifest.finished_at = utc_timestamp();
    write_manifest(dir / "manifest.json", manifest);
    return status;
}

int cmd_info(const InfoCommand& cmd, std::ostream& out, std::ostream& err) {
    const CssCode code = load_code_file(cmd.code);
    FiniteGroup group(code.group);
    out << "format: " << code_format_tag << '\n';
    out << "group: " << code.group.to_string() << '\n';
    out << "order: " << group.order() << '\n';
    out << "n: " << code.n << '\n';
    out << "k: " << code.k << '\n';
    out << "d_v: " << code.dv << '\n';
    out << "d_c: " << code.dc << '\n';
    out << "girth: " << (code.girth_certificate ? std::to_string(*code.girth_certificate) : "not certified") << '\n';
    out << "A: " << join_indices(code.gens.a) << '\n';
    out << "B: " << join_indices(code.gens.b) << '\n';
    for (auto a : code.gens.a) out << "  a" << a.index << " = " << group.format(a) << '\n';
    for (auto b : code.gens.b) out << "  b" << b.index << " = " << group.format(b) << '\n';
    if (code.search)
        out << "search: seed=" << code.search->seed << " target_girth=" << code.search->target_girth
            << " restart=" << code.search->restart_index << '\n';
    if (code.k == 0) err << "warning: k = 0, the code encodes no logical qubits\n";
    return exit_ok;
}

// ---------------------------------------------------------------------------
// Argument parsing

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-block group-algebra quantum LDPC code workbench", "margulis"};
    app.set_config("--config", "", "TOML/INI configuration file; command-line flags take precedence");
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    auto add_decoder = [](CLI::App* sub, DecoderConfig& cfg, std::string& variant) {
        sub->add_option("--decoder", variant, "bp, ms or nms")->capture_default_str();
        sub->add_option("--beta", cfg.beta, "nMS normalization")->capture_default_str();
        sub->add_option("--max-iters", cfg.max_iters, "Iteration budget")->capture_default_str();
        sub->add_flag("--osd0", cfg.osd0, "OSD-0 post-processing after non-convergence");
    };

    SearchCommand search;
    auto* s = app.add_subcommand("search", "Random generator search with girth control");
    s->add_option("--group", search.group, "cyclic:N | product:N1,N2,... | sl2:P")->required();
    s->add_option("--r", search.search.r, "Generators per set")->capture_default_str();
    s->add_option("--girth", search.search.target_girth, "Target girth (4, 6 or 8)")->capture_default_str();
    s->add_option("--seed", search.seed, "RNG seed");
    s->add_option("--restarts", search.search.max_restarts)->capture_default_str();
    s->add_option("--replacements", search.search.max_replacements_per_restart, "Per restart")->capture_default_str();
    s->add_option("--workers", search.search.workers)->capture_default_str();
    s->add_option("--out", search.out, "Code file to write")->required();
    s->add_flag("--progress", search.progress, "Line-delimited JSON progress events on stderr");

    BuildCommand build;
    auto* b = app.add_subcommand("build", "Build a code from explicit generators");
    b->add_option("--group", build.group)->required();
    b->add_option("--a", build.a, "Element indices of A, comma separated");
    b->add_option("--b", build.b, "Element indices of B, comma separated");
    b->add_option("--margulis-eta", build.margulis_eta, "Use Margulis generators with this eta");
    b->add_option("--a-pairs", build.a_pairs, "m:q pairs for A");
    b->add_option("--b-pairs", build.b_pairs, "m:q pairs for B");
    b->add_option("--out", build.out)->required();

    SimulateCommand sim;
    auto* m = app.add_subcommand("simulate", "Monte-Carlo logical error rate under depolarizing noise");
    m->add_option("--code", sim.code)->required();
    m->add_option("--eps", sim.eps, "Depolarizing probabilities, comma separated")->required();
    add_decoder(m, sim.decoder, sim.variant);
    m->add_option("--min-samples", sim.sim.min_samples)->capture_default_str();
    m->add_option("--min-failures", sim.sim.min_failures)->capture_default_str();
    m->add_option("--max-trials", sim.sim.max_trials)->capture_default_str();
    m->add_option("--seed", sim.seed);
    m->add_option("--workers", sim.sim.workers)->capture_default_str();
    m->add_option("--out", sim.out, "CSV output")->required();
    m->add_option("--json", sim.json_out, "JSON output (default: CSV path with .json)");

    DiagnoseCommand diag;
    auto* d = app.add_subcommand("diagnose", "Structural and decoder diagnostics");
    d->add_option("--code", diag.code)->required();
    d->add_option("--mode", diag.mode, "girth | census | automorphism | stab-experiment | entropy-trace")
        ->required();
    d->add_option("--out-dir", diag.out_dir)->required();
    d->add_option("--depth", diag.depth, "Neighborhood depth for census")->capture_default_str();
    d->add_option("--checks", diag.checks, "Checks rendered as DOT (census)");
    d->add_option("--max-rows", diag.max_rows, "Rows of H_X summed per candidate stabilizer")->capture_default_str();
    d->add_option("--max-weight", diag.max_weight)->capture_default_str();
    d->add_option("--per-stabilizer", diag.per_stabilizer, "Injections tried per stabilizer")->capture_default_str();
    d->add_option("--max-attempts", diag.max_attempts)->capture_default_str();
    d->add_option("--rows", diag.rows, "entropy-trace: rows of H_X forming the stabilizer");
    d->add_option("--error", diag.error, "entropy-trace: error positions");
    d->add_option("--eps", diag.eps, "Prior depolarizing probability")->capture_default_str();
    d->add_option("--seed", diag.seed);
    add_decoder(d, diag.decoder, diag.variant);

    InfoCommand info;
    auto* i = app.add_subcommand("info", "Summarize a code file");
    i->add_option("--code", info.code)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (s->parsed()) return cmd_search(search, out, err);
        if (b->parsed()) return cmd_build(build, out, err);
        if (m->parsed()) return cmd_simulate(sim, out, err);
        if (d->parsed()) return cmd_diagnose(diag, out, err);
        if (i->parsed()) return cmd_info(info, out, err);
        throw UsageError("no command given");
    } catch (const SearchExhausted& e) {
        err << "error: " << e.what() << '\n';
        return exit_budget;
    } catch (const BudgetExhausted& e) {
        err << "error: " << e.what() << '\n';
        return exit_budget;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace margulis::cli
