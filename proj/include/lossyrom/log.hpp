// log.hpp — minimal leveled logging to stderr, controlled by the
// LOSSYROM_LOG environment variable ({error, info, debug}; default info).

#pragma once

#include <string>

namespace lossyrom::log {

enum class Level { error = 0, info = 1, debug = 2 };

Level level();                 // current level, read once from LOSSYROM_LOG
void set_level(Level lvl);     // override (used by the CLI and tests)

void error(const std::string& msg);
void info(const std::string& msg);
void debug(const std::string& msg);

}  // namespace lossyrom::log
