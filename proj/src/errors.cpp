#include "polder/errors.hpp"

#include <cstdio>

namespace polder {

namespace {

void default_warning_sink(Warning, const std::string& message) {
  std::fprintf(stderr, "polder: warning: %s\n", message.c_str());
}

WarningSink g_sink = &default_warning_sink;

} // namespace

WarningSink set_warning_sink(WarningSink sink) {
  WarningSink old = g_sink;
  g_sink = sink;
  return old;
}

void warn(Warning code, const std::string& message) {
  if (g_sink) g_sink(code, message);
}

} // namespace polder
