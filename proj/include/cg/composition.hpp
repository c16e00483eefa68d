#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cg/stable_family.hpp"
#include "cg/strategy.hpp"

namespace cg {

struct Pullback {
    EventStructure es;          // Pr of the secured bijections
    ESMap pi1, pi2;             // total projections into the two sources
    StableFamily family;        // the secured bijections themselves
};

// σ : S → B, τ : T → B total maps into the same B.
Pullback pullback(const ESMap& sigma, const ESMap& tau, int cap = -1);

struct Interaction {
    EventStructure es;      // carrier; events over B are neutral
    EventStructure game;    // A⊥ ∥ B⁰ ∥ C with tags "L.", "M.", "R."
    std::vector<int> label;
    std::vector<int> left;   // event of σ's carrier, or -1
    std::vector<int> right;  // event of τ's carrier, or -1

    Mask x_of(Mask z) const;  // z = y ⊛ x
    Mask y_of(Mask z) const;
};

struct HiddenEvent {
    std::string id;        // interaction event
    std::string sigma_id;  // partner in σ
    std::string tau_id;    // partner in τ
};

struct Composite {
    Strategy strategy;
    Interaction interaction;
    std::vector<HiddenEvent> provenance;
};

Interaction interaction(const Strategy& sigma, const Strategy& tau, int cap = -1);
Composite compose_full(const Strategy& sigma, const Strategy& tau, int cap = -1);
// τ ⊙ σ
Strategy compose(const Strategy& sigma, const Strategy& tau, int cap = -1);

}  // namespace cg
