#pragma once

#include <string>
#include <vector>

namespace gm::cli {

/// Dispatches one toolkit command. Exit statuses:
///   0  completed; nothing found beyond the known pair {31, 8191}
///   1  usage error
///   2  I/O, format, or state error (tables, checkpoint, factoring)
///   3  completed and emitted an unexpected solution or survivor
int run(int argc, const char* const* argv);

/// Same, for callers that assemble arguments (no program name).
int run(const std::vector<std::string>& args);

}  // namespace gm::cli
