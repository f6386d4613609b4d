#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lforge {

enum class ErrorKind {
    invalid_pair,
    kind,              // sequence kind does not match the pair (e.g. Lucas on a non-Lucas pair)
    modulus,
    domain,
    unit,              // prime divides Q, ratio is not a p-adic unit
    search_exhausted,
    budget,
    internal_invariant,
    parse,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace lforge
