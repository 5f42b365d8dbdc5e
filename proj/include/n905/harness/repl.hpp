#pragma once

#include <iostream>
#include <string>

#include "n905/agent/agent.hpp"

namespace n905 {

struct ReplOptions {
    std::string game_spec_path;
    std::string rules_path;
    std::string hasa_path;   // optional; empty disables the provider view
    std::string facts_path;  // optional
    GameMode mode = GameMode::Full;
};

/// Human-play loop: one command per line, prints the observation and the
/// cumulative reward. "debug kg" prints the extractor+provider view of the
/// current belief graph; "quit" exits. Returns the final cumulative reward.
int repl(std::istream& in, std::ostream& out, const ReplOptions& opts);

}  // namespace n905
