#pragma once

#include <stdexcept>
#include <string>

namespace polychain {

// All library errors carry a stable kind tag so the CLI can report them
// uniformly and callers can branch without string matching on messages.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define POLYCHAIN_DEFINE_ERROR(Name)                          \
    class Name : public Error {                               \
    public:                                                   \
        explicit Name(const std::string& msg)                 \
            : Error(#Name, msg) {}                            \
    };

POLYCHAIN_DEFINE_ERROR(GroupMismatch)
POLYCHAIN_DEFINE_ERROR(DimensionMismatch)
POLYCHAIN_DEFINE_ERROR(TypeMismatch)
POLYCHAIN_DEFINE_ERROR(ZeroDimensional)
POLYCHAIN_DEFINE_ERROR(NonGenericLevel)
POLYCHAIN_DEFINE_ERROR(NonGenericPoint)
POLYCHAIN_DEFINE_ERROR(NonGenericBox)
POLYCHAIN_DEFINE_ERROR(NotTensorRepresentable)
POLYCHAIN_DEFINE_ERROR(NotGridAligned)
POLYCHAIN_DEFINE_ERROR(SpecInvalid)
POLYCHAIN_DEFINE_ERROR(SearchBudgetExceeded)
POLYCHAIN_DEFINE_ERROR(UsageError)
POLYCHAIN_DEFINE_ERROR(ParseError)

#undef POLYCHAIN_DEFINE_ERROR

} // namespace polychain
