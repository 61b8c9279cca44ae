#include "gsp/common.hpp"
#include "gsp/log.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdio>
#include <cstdlib>

namespace gsp {

namespace {

std::string describe_sigma(double sigma) {
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "sampling condition violated: sigma_max(B Dbar) = %.6f", sigma);
  return buf;
}

} // namespace

SamplingConditionError::SamplingConditionError(double sigma_bdc)
    : NumericalError(describe_sigma(sigma_bdc)), sigma_(sigma_bdc) {}

Tolerances Tolerances::from_profile(const std::string &name) {
  if (name == "default" || name == "standard")
    return standard();
  if (name == "strict")
    return strict();
  throw InputError("unknown tolerance profile '" + name + "'");
}

spdlog::logger &logger() {
  static std::shared_ptr<spdlog::logger> instance = [] {
    auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
    auto l = std::make_shared<spdlog::logger>("gsp", sink);
    l->set_pattern("[%l] %v");
    auto level = spdlog::level::warn;
    if (const char *env = std::getenv("GSP_LOG_LEVEL"); env != nullptr)
      level = spdlog::level::from_str(env);
    l->set_level(level);
    return l;
  }();
  return *instance;
}

} // namespace gsp
