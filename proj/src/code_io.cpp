#include "margulis/code_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace margulis {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

namespace {

json group_to_json(const GroupSpec& g) {
    std::string kind = g.kind == GroupKind::cyclic               ? "cyclic"
                       : g.kind == GroupKind::product_of_cyclics ? "product"
                                                                 : "sl2";
    return {{"kind", kind}, {"params", g.params}};
}

GroupSpec group_from_json(const json& j) {
    std::string text = j.at("kind").get<std::string>() + ":";
    auto params = j.at("params").get<std::vector<int>>();
    for (std::size_t i = 0; i < params.size(); ++i) text += (i ? "," : "") + std::to_string(params[i]);
    try {
        return GroupSpec::parse(text);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("code file group: ") + e.what());
    }
}

std::vector<std::uint32_t> indices(const std::vector<GroupElement>& set) {
    std::vector<std::uint32_t> out;
    for (auto g : set) out.push_back(g.index);
    return out;
}

}  // namespace

std::string serialize_code(const CssCode& code) {
    json doc;
    doc["format"] = code_format_tag;
    doc["group"] = group_to_json(code.group);
    doc["generators"] = {{"A", indices(code.gens.a)}, {"B", indices(code.gens.b)}};
    doc["n"] = code.n;
    doc["k"] = code.k;
    doc["d_v"] = code.dv;
    doc["d_c"] = code.dc;
    doc["girth_certificate"] = code.girth_certificate ? json(*code.girth_certificate) : json(nullptr);
    if (code.search)
        doc["search"] = {{"seed", code.search->seed},
                         {"target_girth", code.search->target_girth},
                         {"restart_index", code.search->restart_index}};
    else
        doc["search"] = nullptr;
    doc["H_X"] = matrix_to_json(code.hx);
    doc["H_Z"] = matrix_to_json(code.hz);
    doc["checksum"] = hex64(fnv1a64(doc.dump()));
    return doc.dump(1) + "\n";
}

CssCode deserialize_code(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("code file is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw FormatError("code file must be a JSON object");
        if (doc.value("format", std::string()) != code_format_tag)
            throw FormatError("code file format tag mismatch: expected " + std::string(code_format_tag));
        std::string stored = doc.at("checksum").get<std::string>();
        doc.erase("checksum");
        if (stored != hex64(fnv1a64(doc.dump()))) throw FormatError("code file checksum mismatch");

        CssCode code;
        code.group = group_from_json(doc.at("group"));
        FiniteGroup group(code.group);
        for (auto i : doc.at("generators").at("A").get<std::vector<std::uint32_t>>())
            code.gens.a.push_back(group.from_index(i));
        for (auto i : doc.at("generators").at("B").get<std::vector<std::uint32_t>>())
            code.gens.b.push_back(group.from_index(i));
        code.hx = matrix_from_json(doc.at("H_X"));
        code.hz = matrix_from_json(doc.at("H_Z"));
        code.n = doc.at("n").get<std::size_t>();
        code.k = doc.at("k").get<std::size_t>();
        code.dv = doc.at("d_v").get<std::size_t>();
        code.dc = doc.at("d_c").get<std::size_t>();
        if (!doc.at("girth_certificate").is_null()) code.girth_certificate = doc["girth_certificate"].get<int>();
        if (!doc.at("search").is_null()) {
            const auto& s = doc["search"];
            code.search = SearchInfo{s.at("seed").get<std::uint64_t>(), s.at("target_girth").get<int>(),
                                     s.at("restart_index").get<std::size_t>()};
        }

        CssCode rebuilt = assemble_2bga(group, code.gens.a, code.gens.b);
        if (rebuilt.hx != code.hx || rebuilt.hz != code.hz)
            throw FormatError("stored matrices disagree with the stored generators");
        if (rebuilt.n != code.n || rebuilt.k != code.k || rebuilt.dv != code.dv || rebuilt.dc != code.dc)
            throw FormatError("stored parameters disagree with the stored matrices");
        return code;
    } catch (const json::exception& e) {
        throw FormatError(std::string("code file: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw FormatError(std::string("code file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("code file: ") + e.what());
    }
}

void save_code(const std::filesystem::path& path, const CssCode& code) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << serialize_code(code);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

CssCode load_code(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_code(buf.str());
}

}  // namespace margulis
