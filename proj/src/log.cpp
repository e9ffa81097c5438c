#include "lossyrom/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace lossyrom::log {

namespace {

Level parse_env() {
    const char* env = std::getenv("LOSSYROM_LOG");
    if (env == nullptr) return Level::info;
    if (std::strcmp(env, "error") == 0) return Level::error;
    if (std::strcmp(env, "debug") == 0) return Level::debug;
    return Level::info;
}

Level g_level = parse_env();

}  // namespace

Level level() { return g_level; }
void set_level(Level lvl) { g_level = lvl; }

void error(const std::string& msg) {
    std::fprintf(stderr, "[error] %s\n", msg.c_str());
}

void info(const std::string& msg) {
    if (g_level >= Level::info) std::fprintf(stderr, "[info] %s\n", msg.c_str());
}

void debug(const std::string& msg) {
    if (g_level >= Level::debug) std::fprintf(stderr, "[debug] %s\n", msg.c_str());
}

}  // namespace lossyrom::log
