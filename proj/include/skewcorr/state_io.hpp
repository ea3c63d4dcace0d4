#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "skewcorr/channels.hpp"
#include "skewcorr/linalg.hpp"

// JSON file formats. Complex matrices are stored as separate real and
// imaginary 2-D arrays:
//   state:   {"dims": [dA, dB], "re": [[...]], "im": [[...]]}
//   channel: {"kraus": [{"re": [[...]], "im": [[...]]}, ...]}

namespace skewcorr {

std::string dump_state(const BipartiteState& state);
BipartiteState parse_state(std::string_view text);

std::string dump_kraus(const KrausMap& map);
/// Parses without requiring trace preservation.
KrausMap parse_kraus(std::string_view text);
QuantumChannel parse_channel(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
/// Throws Error(Io) when the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

BipartiteState read_state_file(const std::filesystem::path& path);
KrausMap read_kraus_file(const std::filesystem::path& path);
QuantumChannel read_channel_file(const std::filesystem::path& path);

}  // namespace skewcorr
