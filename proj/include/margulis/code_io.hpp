#ifndef MARGULIS_CODE_IO_HPP
#define MARGULIS_CODE_IO_HPP

#include <filesystem>
#include <string>

#include "margulis/code_builder.hpp"
#include "margulis/matrix_io.hpp"

namespace margulis {

inline constexpr const char* code_format_tag = "margulis-code/1";

/// JSON document holding the group spec, generator indices, hex dumps of
/// H_X/H_Z, parameters, girth certificate, search provenance and an FNV-1a
/// checksum over everything else.
std::string serialize_code(const CssCode& code);
/// Throws FormatError on malformed content, version mismatch, checksum
/// mismatch or matrices that disagree with the stored generators.
CssCode deserialize_code(const std::string& text);

void save_code(const std::filesystem::path& path, const CssCode& code);
CssCode load_code(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

}  // namespace margulis

#endif  // MARGULIS_CODE_IO_HPP
