#pragma once

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string_view>

namespace grapde::log {

enum class Level { quiet = 0, info = 1, debug = 2 };

/// Verbosity from GRAPDE_LOG: "0"/"quiet", "1"/"info", "2"/"debug". Unset means quiet.
inline Level level()
{
    static const Level lvl = [] {
        const char* env = std::getenv("GRAPDE_LOG");
        if (!env) {
            return Level::quiet;
        }
        const std::string_view s(env);
        if (s == "2" || s == "debug") {
            return Level::debug;
        }
        if (s == "1" || s == "info") {
            return Level::info;
        }
        return Level::quiet;
    }();
    return lvl;
}

template <class... Args>
void write(Level at, const Args&... args)
{
    if (static_cast<int>(level()) < static_cast<int>(at)) {
        return;
    }
    static std::mutex m;
    std::lock_guard lock(m);
    std::cerr << "[grapde] ";
    (std::cerr << ... << args);
    std::cerr << '\n';
}

template <class... Args>
void info(const Args&... args)
{
    write(Level::info, args...);
}

template <class... Args>
void debug(const Args&... args)
{
    write(Level::debug, args...);
}

} // namespace grapde::log
