#pragma once

// Command-line front end. Every invocation writes exactly one JSON document to
// `out` with a "status" of "ok", "verified-false" or "invalid-input" and a run
// manifest; diagnostics go to `err`.
//
// Exit codes: 0 success or true, 1 verified false, 2 invalid input.

#include <iostream>
#include <string>
#include <vector>

namespace sympforge::cli {

inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;
inline constexpr int kInvalid = 2;

/// `args` excludes the program name. `--in -` reads from `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in = std::cin);

}  // namespace sympforge::cli
