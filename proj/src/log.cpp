#include "patrolgame/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>

namespace patrolgame::log {

namespace {

Level from_env() {
  const char* raw = std::getenv("PATROL_GAMES_LOG");
  if (!raw) return Level::kWarn;
  const std::string v(raw);
  if (v == "error" || v == "0") return Level::kError;
  if (v == "info" || v == "2") return Level::kInfo;
  if (v == "debug" || v == "3") return Level::kDebug;
  return Level::kWarn;
}

std::atomic<int>& current() {
  static std::atomic<int> lvl{static_cast<int>(from_env())};
  return lvl;
}

const char* tag(Level l) {
  switch (l) {
    case Level::kError: return "error";
    case Level::kWarn: return "warn";
    case Level::kInfo: return "info";
    case Level::kDebug: return "debug";
  }
  return "?";
}

}  // namespace

Level level() { return static_cast<Level>(current().load()); }
void set_level(Level l) { current() = static_cast<int>(l); }

void write(Level l, const std::string& message) {
  if (static_cast<int>(l) > current().load()) return;
  static std::mutex m;
  std::lock_guard lock(m);
  std::cerr << "[patrolgames " << tag(l) << "] " << message << '\n';
}

}  // namespace patrolgame::log
