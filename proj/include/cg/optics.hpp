#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cg/function_space.hpp"
#include "cg/functional.hpp"

namespace cg {

// Player part A1 and Opponent part A2 of a game, as purely Player / purely
// Opponent games on the events of each polarity in index order.
struct Sides {
    EventStructure p, n;
};
Sides sides(const EventStructure& a);

// σ : A → B between dialectica games read as A1∥B2⊥ → B1∥A2⊥, and back.
Strategy to_player_form(const Strategy& s);
Strategy from_player_form(const Strategy& s, const EventStructure& a, const EventStructure& b);

// Same structure and index order, possibly different ids.
Strategy reassociate(const Strategy& s, const EventStructure& a, const EventStructure& b);

// F : A1 → B1∥Q,  G : Q∥B2⊥ → A2⊥
struct Presentation {
    EventStructure a, b, q;
    Strategy f, g;
};

Report validate_presentation(const Presentation& p);
Strategy optic_of_presentation(const Presentation& p);
Presentation identity_presentation(const EventStructure& a);
// residual P∥Q
Presentation compose_presentations(const Presentation& p, const Presentation& q);
// kinds "endpoints", "forward", "backward", "optic"
Report presentations_equivalent(const Presentation& p, const Presentation& p2, const Strategy& f);

// X∥Y → C  ↦  X → [Y ⊸ C]
Strategy curry(const Strategy& s, const EventStructure& x, const EventStructure& y, const FunctionSpace& space);
// [Y ⊸ C]∥Y → C, the lift of (F, y) ↦ {c | ∃y′ ⊆ y. (y′, c) ∈ F}
Strategy apply_strategy(const FunctionSpace& space, const EventStructure& y, const EventStructure& c);
// residual [B2⊥ ⊸ A2⊥]; F = σ⁺, G = apply
Presentation canonical_presentation(const Strategy& s, const Caps& caps = default_caps());

// dOp[A, B] = Πˢ x:A1. Σ y:B1. [B2(y) ⊸ A2(x)] between container games.
// Ambient elements of the Σ part are either b ∈ B1 or (y′, a), y′ a set of
// Opponent moves of B, a an Opponent move of A.
struct DOp {
    EventStructure a, b;
    struct Ambient {
        int b = -1;  // event of B, or -1
        Mask y = 0;  // over B
        int a = -1;  // event of A, or -1
    };
    std::vector<Ambient> ambient;
    FamilyFunctor functor;
    FunctionSpace space;

    const EventStructure& es() const { return space.es(); }
    int ambient_index(int b_event) const;
    int ambient_index(Mask y, int a_event) const;
    // x of an element (x, j) as a mask over A
    Mask element_x(int element) const;
    // d_o of the prime of event e, over A⊥∥B
    Mask position(int e) const;
    // the Player move of A⊥∥B at the top of e
    int move(int e) const;
};

DOp dop_family(const EventStructure& a, const EventStructure& b, const Caps& caps = default_caps());

// Strategy with Player events `plus` whose position function sends [s] to
// position[s] and s to move[s].
Strategy strategy_of_position(const std::string& name, const EventStructure& plus,
                              const std::vector<Mask>& position, const std::vector<int>& move,
                              const EventStructure& a, const EventStructure& b);
// do[A, B]
Strategy do_strategy(const DOp& d);

struct SigmaPlus {
    EventStructure plus;     // S⁺
    std::vector<int> event;  // S⁺ → dOp
    std::vector<int> of;     // S⁺ index → carrier index
};
// Refused when σ does not respect the access levels
SigmaPlus sigma_plus(const Strategy& s, const DOp& d);
// d_o ∘ σ⁺ = d
bool check_triangle(const Strategy& s, const DOp& d, const SigmaPlus& sp);

// Reachable values of a dependent optic at x ∈ C(A1): pairs (y, table) where
// table sends each configuration of B2(y) to a set of Opponent moves of A.
struct OpticValue {
    Mask y;
    std::vector<std::pair<Mask, Mask>> table;
    auto operator<=>(const OpticValue&) const = default;
};
std::set<OpticValue> optic_values(const DOp& d, const SigmaPlus& sp, Mask x);
// let (y, F′) ⇐ F(x) in let (z, G′) ⇐ G(y) in (z, F′⊙G′)
std::set<OpticValue> let_values(const DOp& f, const SigmaPlus& fs, const DOp& g, const SigmaPlus& gs, Mask x);

}  // namespace cg
