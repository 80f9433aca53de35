#ifndef SDWAVE_DIAGNOSTICS_HPP
#define SDWAVE_DIAGNOSTICS_HPP

#include <functional>
#include <string>

namespace sdw {

using WarningSink = std::function<void(const std::string &)>;

/// Emits a warning through the installed sink (stderr by default).
void warn(const std::string &message);

/// Replaces the process-wide sink and returns the previous one.
WarningSink set_warning_sink(WarningSink sink);

} // namespace sdw

#endif
