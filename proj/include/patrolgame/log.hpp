#pragma once

#include <string>

namespace patrolgame::log {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

// Read once from PATROL_GAMES_LOG (error, warn, info, debug or 0-3); default warn.
Level level();
void set_level(Level level);
void write(Level level, const std::string& message);

inline void info(const std::string& message) { write(Level::kInfo, message); }
inline void debug(const std::string& message) { write(Level::kDebug, message); }
inline void warn(const std::string& message) { write(Level::kWarn, message); }

}  // namespace patrolgame::log
