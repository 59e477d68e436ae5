#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace crlab {

// Structured failures. `code()` is a stable machine-readable tag, `what()` a
// human sentence, `detail()` optional extra data (e.g. a witness vector or
// offending triple) already formatted as text. Ops that can fail for domain
// reasons throw one of these; plain programming errors use logic_error.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg, std::string detail = "")
        : std::runtime_error(code + ": " + msg),
          code_(std::move(code)), detail_(std::move(detail)) {}

    const std::string& code() const { return code_; }
    const std::string& detail() const { return detail_; }

private:
    std::string code_;
    std::string detail_;
};

} // namespace crlab
