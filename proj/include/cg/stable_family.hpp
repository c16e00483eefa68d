#pragma once

#include <string>
#include <vector>

#include "cg/event_structure.hpp"

namespace cg {

// Explicit finite family of configurations over a set of events.
struct StableFamily {
    std::string name;
    std::vector<std::string> ids;
    std::vector<Polarity> pol;
    std::vector<int> levels;
    std::vector<Mask> configs;  // sorted by config_order, unique

    int size() const { return static_cast<int>(ids.size()); }
    bool contains(Mask x) const;
    int index(const std::string& id) const;
    std::string show(Mask x) const;
};

// Sorts and deduplicates; missing polarities default to +.
StableFamily make_family(std::string name, std::vector<std::string> ids, std::vector<Mask> configs,
                         std::vector<Polarity> pol = {}, std::vector<int> levels = {});

// z1, z2 compatible: some member contains z1 ∪ z2
bool compatible(const StableFamily& f, Mask z1, Mask z2);
std::vector<Mask> maximal_members(const StableFamily& f);

Report validate_family(const StableFamily& f);
StableFamily family_of(const EventStructure& e, int cap = -1);

// [e]_x
Mask prime(const StableFamily& f, int e, Mask x);

struct PrResult {
    EventStructure es;
    std::vector<Mask> primes;  // underlying set of each event of es
    std::vector<int> top;      // the event of the family each prime is prime for

    Mask theta(Mask z) const;  // configuration of es -> member of the family
    Mask phi(Mask x) const;    // member of the family -> configuration of es
};

// Pr(F). Events are named after their top event, with "#k" for repeats.
PrResult pr(const StableFamily& f);
// θ and φ are mutually inverse order isomorphisms between C(Pr F) and F
Report check_pr_iso(const PrResult& p, const StableFamily& f);

// F over A ⊎ B (ids "L.a", "R.b"), G over B ⊎ C (ids "L.b", "R.c").
// Result over A ⊎ C: { x∥z | ∃y. x∥y ∈ F, y∥z ∈ G }.
StableFamily relational_compose(const StableFamily& f, const StableFamily& g);

}  // namespace cg
