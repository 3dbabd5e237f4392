#pragma once
/// @file cli.hpp
/// @brief Command-line front end. main() forwards here; tests call it directly.

#include <iosfwd>
#include <string>
#include <vector>

namespace halfdisk::cli
{
    inline constexpr int kExitOk = 0;
    inline constexpr int kExitFailure = 1;
    inline constexpr int kExitConfig = 2;
    inline constexpr int kExitViolated = 3;

    /// @p args excludes the program name. Output goes to @p out unless --out names a file.
    int run (const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace halfdisk::cli
