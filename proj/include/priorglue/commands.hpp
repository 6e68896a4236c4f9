#pragma once

#include "priorglue/io.hpp"
#include "priorglue/sheaf_laws.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace priorglue {

// Process exit codes. Stable contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;  // GC violation, or failed demo/selftest assertions
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNoEvidence = 3;

/// A report document plus the exit code the CLI should return. `report`
/// always has "command", "input_digest", "status" and "result" keys.
/// `diagnostic` is for standard error and is empty on success.
struct CommandResult {
  int exit_code = kExitOk;
  Json report;
  std::string diagnostic;
};

struct InputDocument {
  std::string name;
  std::string text;
};

/// Throws MalformedInput if the file cannot be read.
InputDocument read_input(const std::filesystem::path& path);

CommandResult run_check_gc(const InputDocument& input);
CommandResult run_check_gc(const std::filesystem::path& path);

/// Without `evidence` the maximal candidate from find_evidence is used.
CommandResult run_glue(const InputDocument& input, const std::optional<std::vector<std::string>>& evidence);
CommandResult run_glue(const std::filesystem::path& path, const std::optional<std::vector<std::string>>& evidence);

CommandResult run_survivors(const InputDocument& input);
CommandResult run_survivors(const std::filesystem::path& path);

CommandResult run_oracle(const InputDocument& input, std::uint64_t grid);
CommandResult run_oracle(const std::filesystem::path& path, std::uint64_t grid);

const std::vector<std::string>& demo_names();
/// Unknown names give an input-error result (UnknownDemo).
CommandResult run_demo(std::string_view name);

/// Runs every law, or only `law` when given.
CommandResult run_selftest(const TrialConfig& cfg, const std::optional<std::string>& law);

/// The bundled demo inputs as credence documents.
std::string fixture_document(std::string_view demo_name);

}  // namespace priorglue
