#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cg {

// Malformed input or a violated precondition.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured resource cap would be exceeded.
struct CapExceeded : Error {
    explicit CapExceeded(const std::string& what) : Error(what) {}
};

// An operation refused because its input failed validation.
struct Refused : Error {
    explicit Refused(const std::string& what) : Error(what) {}
};

struct Caps {
    int events = 20;     // configuration enumeration
    int iso = 12;        // isomorphism and 2-cell search (carrier events)
    int fspace = 4;      // function-space constructions (events per side)
};

// Process-wide defaults, read once from CG_CAPS ("events=20,iso=12,fspace=4").
const Caps& default_caps();
void set_default_caps(const Caps& caps);
Caps parse_caps(const std::string& spec, Caps base);

}  // namespace cg
