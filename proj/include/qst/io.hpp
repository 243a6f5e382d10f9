#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qst/analogue.hpp"
#include "qst/chain.hpp"
#include "qst/dynamics.hpp"
#include "qst/ga.hpp"
#include "qst/spectra.hpp"

namespace qst::io {

using nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

// Parsers throw StructuralError (or ContractError from the domain types) on
// malformed input; callers map both to the input-error exit code.

json to_json(const ChainSpec& spec);
ChainSpec chain_from_json(const json& j);

json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const json& j);

json to_json(const GAConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
GAConfig ga_config_from_json(const json& j);

/// "t_Jmax,F,Fav" (first column raw t when `raw_time`).
void write_trace_csv(std::ostream& os, const FidelityTrace& tr, bool raw_time = false);
json peaks_json(const FidelityTrace& tr, bool raw_time = false);

/// "generation,best_f,best_Fmax,best_Q,best_sigma".
void write_history_csv(std::ostream& os, const std::vector<GenerationRecord>& history);

struct AnalogueDiagnostics {
    std::vector<int> nodes;
    double ladder_residual = 0.0;
    double commutator_residual = 0.0;
    std::vector<double> x_pairs;
    bool zero_mode = false;
};
json to_json(const AnalogueDiagnostics& d);

/// Provenance written next to every CLI output.
struct RunManifest {
    std::string subcommand;
    std::vector<std::string> inputs;
    json parameters = json::object();
    std::optional<std::uint64_t> seed;
    std::string output_dir;
    std::string tool_version = kToolVersion;
    std::vector<std::string> argv;  // arguments after the program name
};
json to_json(const RunManifest& m);
RunManifest manifest_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string dump(const json& j);

}  // namespace qst::io
