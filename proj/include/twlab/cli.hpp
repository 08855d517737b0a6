#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twlab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

/// Entry point of the twlab command: gen, tw, reduce, solve, verify.
/// Results go to `out`; the resolved configuration and diagnostics to `err`.
auto run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) -> int;

/// Same, with args excluding the program name.
auto run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) -> int;

} // namespace twlab::cli
