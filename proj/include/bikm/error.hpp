#ifndef BIKM_ERROR_HPP
#define BIKM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bikm {

// All recoverable failures carry a stable machine-readable kind so the CLI
// can emit structured diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

namespace errors {
inline Error invalid_partition(const std::string& msg) { return Error("invalid-partition", msg); }
inline Error dimension_mismatch(const std::string& msg) { return Error("dimension-mismatch", msg); }
inline Error config(const std::string& msg) { return Error("config", msg); }
inline Error size_cap(const std::string& msg) { return Error("size-cap", msg); }
inline Error projection_failure(const std::string& msg) { return Error("projection-failure", msg); }
inline Error solver_stall(const std::string& msg) { return Error("solver-stall", msg); }
inline Error numeric_failure(const std::string& msg) { return Error("numeric-failure", msg); }
inline Error invariant_failure(const std::string& msg) { return Error("invariant-failure", msg); }
inline Error domain(const std::string& msg) { return Error("domain", msg); }
inline Error io(const std::string& msg) { return Error("io", msg); }
} // namespace errors

} // namespace bikm

#endif
