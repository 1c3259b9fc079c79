#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "sp4tj/jacquet.hpp"

namespace sp4tj::cli {

using Json = nlohmann::ordered_json;

enum class Command { verify, tables, orbits };
enum class Format { json, csv, text };

struct RunConfig {
  Command command = Command::verify;
  int q = 3;
  int gamma = 1;
  std::string suite = "all";  // orbits decomposability tables siegel klingen all
  std::string group = "all";  // tables command: gl2 sl2 o2 t2 l all
  Format format = Format::json;
  std::string out;  // empty means stdout
  bool deep = false;
  bool timings = true;
  std::uint64_t seed = 1;
};

inline constexpr const char* kVersion = "0.1.0";

/// Usage problems, or nullopt when the config can run.
std::optional<std::string> validate(const RunConfig& config);

struct RunResult {
  Json report;
  bool pass = true;
};

/// Runs the selected command. Throws on integrality failures.
RunResult run(const RunConfig& config);

Json orbits_section(int q, bool with_points);
Json decomposability_section(int q);
Json tables_section(int q, std::uint64_t seed);
Json theorem_section(const std::vector<VerificationReport>& reports, bool timings);

std::string render(const RunResult& result, const RunConfig& config);
/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::string& path, const std::string& content);

/// Recomputes every theorem verdict from the report's own multiplicity
/// vectors; false (with a reason) on any disagreement.
bool revalidate(const Json& report, std::string* why = nullptr);

}  // namespace sp4tj::cli
