#pragma once

// Command-line front end: one JSON document in, one JSON report out.
//
// Exit status: 0 pass, 1 fail with a certificate in the report, 2 input error.

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace atlas::cli {

inline constexpr std::array<std::string_view, 9> kCommands = {
    "check-atlas", "equivalence-report", "nerve", "refine", "check-hypercover",
    "cech",        "homology",           "check-descent", "corpus",
};

inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kInputError = 2;

/// Command-line overrides; unset fields fall back to the document's
/// "options" section, then to defaults.
struct Options {
  std::string command;
  std::optional<std::size_t> truncation;
  std::optional<std::size_t> nmax;
  std::optional<std::size_t> kmax;
  std::optional<std::size_t> count;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  bool timing = false;
};

struct Result {
  int status = kPass;
  nlohmann::json report;
};

/// Runs one command. Schema and invariant problems come back as status 2
/// with an "error" field naming the offending path; nothing is thrown.
Result run(const Options& options, const nlohmann::json& document);

/// Parses argv, reads the document (file or stdin), writes the report.
int main(int argc, char** argv);

}  // namespace atlas::cli
