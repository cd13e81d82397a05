#pragma once

#include <functional>
#include <string_view>

namespace biblio {

using WarningSink = std::function<void(std::string_view)>;

/// Process-wide destination for non-fatal warnings. Defaults to stderr.
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

/// Installs a sink for the lifetime of the guard and restores the previous
/// one on destruction.
class ScopedWarningSink {
public:
  explicit ScopedWarningSink(WarningSink sink);
  ~ScopedWarningSink();
  ScopedWarningSink(const ScopedWarningSink &) = delete;
  ScopedWarningSink &operator=(const ScopedWarningSink &) = delete;

private:
  WarningSink previous_;
};

} // namespace biblio
