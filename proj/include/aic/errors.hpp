#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace aic {

// Library errors carry a stable class code (used verbatim in CLI JSON output
// and tested against) plus a human-readable detail message.
class error : public std::runtime_error {
 public:
  error(std::string cls, const std::string& detail)
      : std::runtime_error(cls + ": " + detail), cls_(std::move(cls)) {}

  const std::string& cls() const { return cls_; }

 private:
  std::string cls_;
};

}  // namespace aic
