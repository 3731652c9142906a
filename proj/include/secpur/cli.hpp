#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "secpur/ingest.hpp"
#include "secpur/serialize.hpp"

namespace secpur::cli {

/// Parses arguments (argv[0] is the program name), runs the subcommand and returns the
/// exit code: 0 success, 2 input error, 3 numeric error, 4 configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs a subcommand from its fully resolved configuration, writing into out_dir.
/// This is what both the parser and `replay` end up calling.
void execute(const std::string& subcommand, const json& config, const std::filesystem::path& out_dir,
             std::ostream& out);

/// {"tool","version","subcommand","seed","input":{"path","digest"}|null,"config"}
json make_manifest(const std::string& subcommand, const json& config);

/// FNV-1a 64-bit digest of a file's bytes, as "fnv1a64:<hex>".
std::string file_digest(const std::filesystem::path& path);

IngestOptions ingest_options_from_json(const json& j);

const char* version();

}  // namespace secpur::cli
