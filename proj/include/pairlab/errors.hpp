#pragma once

#include <stdexcept>
#include <string>

namespace pairlab {

// CLI maps these to the documented exit codes: config/format 2, I/O 3,
// analysis failure 4.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct AnalysisError : std::runtime_error {
    explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pairlab
