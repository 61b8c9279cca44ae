#pragma once

#include <spdlog/logger.h>

#include <memory>

namespace gsp {

/// Library-wide diagnostic logger writing to stderr.
///
/// The level is taken from the GSP_LOG_LEVEL environment variable
/// (trace, debug, info, warn, err, critical, off) on first use and
/// defaults to warn.
spdlog::logger &logger();

} // namespace gsp
