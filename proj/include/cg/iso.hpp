#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cg/event_structure.hpp"

namespace cg {

enum class IsoVerdict { found, none, unknown };

struct IsoResult {
    IsoVerdict verdict = IsoVerdict::none;
    std::vector<int> witness;  // event of a -> event of b
    explicit operator bool() const { return verdict == IsoVerdict::found; }
};

// Isomorphism a ≅ b preserving polarity, ≤, Con and, when given, the labels
// (label_a[e] == label_b[f(e)]). Exhaustive; "unknown" above `cap` events.
IsoResult find_iso(const EventStructure& a, const EventStructure& b,
                   const std::vector<int>* label_a = nullptr,
                   const std::vector<int>* label_b = nullptr, int cap = -1);

// Verifies a candidate isomorphism.
bool check_iso(const EventStructure& a, const EventStructure& b, const std::vector<int>& f,
               const std::vector<int>* label_a = nullptr, const std::vector<int>* label_b = nullptr);

}  // namespace cg
