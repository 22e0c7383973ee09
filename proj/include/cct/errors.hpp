#pragma once

#include <stdexcept>
#include <string>

namespace cct {

// Domain error with a stable machine-readable category. The CLI maps these
// to exit code 1 and prints "error: <category>: <detail>".
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& detail)
        : std::runtime_error("error: " + category + ": " + detail),
          category_(std::move(category)),
          detail_(detail) {}

    const std::string& category() const noexcept { return category_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string category_;
    std::string detail_;
};

}  // namespace cct
