#pragma once

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

#include "goormaghtigh/tables.hpp"

namespace gmtest {

/// Default sieve tables (pmax = 1024), built once per test binary.
inline const std::vector<gm::SieveTable>& default_tables() {
    static const std::vector<gm::SieveTable> tables = gm::build_default_tables(1024);
    return tables;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir() {
    static std::atomic<int> counter{0};
    auto dir = std::filesystem::temp_directory_path() /
               ("goormaghtigh_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace gmtest
