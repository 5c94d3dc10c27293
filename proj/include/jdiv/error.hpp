#pragma once

#include <stdexcept>
#include <string>

namespace jdiv {

/// Base class for every error the pipeline raises on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input files unreadable, malformed, or semantically unusable.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration value or flag combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A stage was invoked before the stage that produces its input artifact.
class MissingArtifactError : public Error {
 public:
  MissingArtifactError(const std::string& path, const std::string& stage)
      : Error("missing artifact '" + path + "': run the '" + stage +
              "' stage first"),
        stage_(stage) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace jdiv
