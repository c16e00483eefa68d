#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cg/event_structure.hpp"
#include "cg/iso.hpp"

namespace cg {

// σ : S → A, a total labelling of a carrier into a game. When the game is
// A⊥∥B (ids "L.a", "R.b") the two component games are kept alongside.
struct Strategy {
    std::string name;
    EventStructure carrier;
    EventStructure game;
    std::vector<int> label;
    std::optional<EventStructure> src, tgt;

    bool is_arrow() const { return src.has_value(); }
    const EventStructure& source() const;
    const EventStructure& target() const;
    ESMap as_map() const { return {carrier, game, label}; }
    Mask image(Mask x) const;
};

// A⊥∥B with side tags "L." and "R."
EventStructure arrow_game(const EventStructure& a, const EventStructure& b);

Strategy make_strategy(std::string name, EventStructure carrier, EventStructure game,
                       std::vector<int> label);
Strategy make_arrow(std::string name, EventStructure carrier, const EventStructure& a,
                    const EventStructure& b, std::vector<int> label);
// Reads an arrow game's components back; carriers and labels stay.
Strategy as_arrow(const Strategy& s, const EventStructure& a, const EventStructure& b);

Report check_strategy(const Strategy& s, int cap = -1);

// CC_A : A⊥∥A with c̄ ≤ c for every + event c
Strategy copycat(const EventStructure& a);

// [X]⁻ ∈ Con ⇒ X ∈ Con for all X, reduced to minimal conflicts
bool is_deterministic(const Strategy& s, Mask* witness = nullptr);

bool is_plus_maximal(const EventStructure& e, Mask x);

struct TwoCell {
    std::vector<int> fn;  // carrier of σ -> carrier of σ′
};
Report check_two_cell(const TwoCell& f, const Strategy& s, const Strategy& t, bool rigid = false);
// Every 2-cell σ ⇒ σ′ (up to `limit`).
std::vector<TwoCell> find_two_cells(const Strategy& s, const Strategy& t, bool rigid = false,
                                    std::size_t limit = 16);

IsoResult strategies_isomorphic(const Strategy& s, const Strategy& t, int cap = -1);

}  // namespace cg
