#pragma once

#include <string>
#include <vector>

namespace ladderwalk::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 ok, 1 usage error, 2 runtime error, 3 verify failures.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // without argv[0]

}  // namespace ladderwalk::cli
