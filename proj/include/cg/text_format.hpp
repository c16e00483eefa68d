#pragma once

#include <string>

#include "cg/errors.hpp"
#include "cg/event_structure.hpp"

namespace cg {

struct ParseError : Error {
    ParseError(int line, int column, const std::string& msg);
    int line, column;
};

// es <name> / event <id> <+|-|0> [level=<k>] / cover <id> <id> / conflict <id>...
EventStructure parse_es(const std::string& text);
std::string write_es(const EventStructure& e);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace cg
