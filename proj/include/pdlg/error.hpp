#pragma once

#include <stdexcept>
#include <string>

namespace pdlg {

// bad configuration or malformed on-disk data; CLI exit code 2
struct CorpusError : std::runtime_error {
  explicit CorpusError(const std::string& what) : std::runtime_error(what) {}
};

// training diverged (non-finite loss/params); CLI exit code 3
struct TrainingError : std::runtime_error {
  explicit TrainingError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pdlg
