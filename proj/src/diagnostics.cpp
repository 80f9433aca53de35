#include "sdwave/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace sdw {

namespace {

std::mutex &sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink &sink() {
  static WarningSink s = [](const std::string &msg) { std::cerr << "warning: " << msg << '\n'; };
  return s;
}

} // namespace

void warn(const std::string &message) {
  std::lock_guard lock(sink_mutex());
  if (sink()) sink()(message);
}

WarningSink set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex());
  WarningSink old = std::move(sink());
  sink() = std::move(s);
  return old;
}

} // namespace sdw
