#ifndef VTGI_CLI_HPP
#define VTGI_CLI_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace vtgi::cli
{

enum ExitCode : int
{
  kSuccess = 0,
  kNegative = 1, // NOT_GI, not isomorphic, factorization not confirmed
  kUnknown = 2,  // a limit was hit
  kInputError = 3,
  kInternalError = 4,
};

struct CommandResult
{
  int exit_code = kSuccess;
  nlohmann::ordered_json payload; // null for --help
  std::string summary;            // for standard error, or the help text
};

/// Runs one command; args exclude the program name. Never throws.
CommandResult run(std::vector<std::string> const &args);

} // namespace vtgi::cli

#endif // VTGI_CLI_HPP
