#pragma once

#include <stdexcept>
#include <string>

namespace zres {

// Violated precondition / unsupported input. CLI exit code 3.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Two independent computation routes disagreed, or an internal invariant
// that should hold by construction was violated. CLI exit code 4.
class consistency_error : public std::runtime_error {
public:
    explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zres
