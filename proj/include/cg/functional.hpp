#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cg/game_extensions.hpp"
#include "cg/lifting.hpp"
#include "cg/strategy.hpp"

namespace cg {

// Union of the carrier configurations whose Opponent image lies within
// `input` (a mask of Opponent events of the game). Refused when the union
// is inconsistent.
Mask largest_response(const Strategy& s, Mask input);

// σ deterministic between purely Player games: x ↦ (σz) ∩ B
ConfigFunction extract_stable_function(const Strategy& s);

struct StableSpan {
    std::string name;
    EventStructure a, b, vertex;
    std::vector<int> out;   // vertex event ↦ event of b
    std::vector<Mask> dem;  // vertex event e ↦ dem([e]) over a

    Mask demand(Mask w) const;
    Mask output(Mask w) const;
};

Report validate_span(const StableSpan& sp);
StableSpan extract_stable_span(const Strategy& s);
Strategy strategy_of_span(const StableSpan& sp);
StableSpan identity_span(const EventStructure& a);
StableSpan span_compose(const StableSpan& f, const StableSpan& g);
// { out w | w ∈ C(E), dem w ⊆ x }
std::set<Mask> span_outputs(const StableSpan& sp, Mask x);
// let y ⇐ F(x) in G(y), at the level of reachable outputs
std::set<Mask> let_outputs(const StableSpan& f, const StableSpan& g, Mask x);

// S = ⟨f, g⟩ : C(A1)×C(B2) → C(A2)×C(B1); masks over the original games
struct GoIPair {
    EventStructure a, b;
    std::map<std::pair<Mask, Mask>, std::pair<Mask, Mask>> table;
    std::pair<Mask, Mask> operator()(Mask x1, Mask y2) const;
    bool operator==(const GoIPair& o) const { return table == o.table; }
};

// configurations of the Player / Opponent part of a game, as masks over it
std::vector<Mask> player_configs(const EventStructure& a);
std::vector<Mask> opponent_configs(const EventStructure& a);

GoIPair goi_pair(const Strategy& s);
struct TraceResult {
    GoIPair pair;
    int max_rounds = 0;
};
TraceResult goi_trace_compose(const GoIPair& s, const GoIPair& t);
// W_A(x, g(x,y)) ⇒ W_B(f(x,y), y)
bool goi_winning(const GoIPair& p, const WinningConditions& wa, const WinningConditions& wb);
// f_B! ⊙ σ ⊙ f_A*
Strategy goi_embed(const Strategy& s);

struct Lens {
    EventStructure a, b;
    std::map<Mask, Mask> fwd;                         // C(A1) → C(B1)
    std::map<std::pair<Mask, Mask>, Mask> bwd;        // C(A1)×C(B2) → C(A2)
    bool operator==(const Lens& o) const { return fwd == o.fwd && bwd == o.bwd; }
    bool bwd_uses_x() const;
};

// order defaults to 1 ≺ 2
Lens extract_lens(const Strategy& s, const AccessOrder* order = nullptr);
Lens compose_lenses(const Lens& l, const Lens& m);
bool lens_winning(const Lens& l, const WinningConditions& wa, const WinningConditions& wb);

// bwd keyed by (x, y) with y ∈ C(B2(fwd x))
struct DependentLens {
    EventStructure a, b;
    std::map<Mask, Mask> fwd;
    std::map<std::pair<Mask, Mask>, Mask> bwd;
    bool operator==(const DependentLens& o) const { return fwd == o.fwd && bwd == o.bwd; }
};

// no Player move depends on an Opponent move of the same side's level 2
bool respects_container_levels(const Strategy& s, std::pair<int, int>* witness = nullptr);
DependentLens extract_dependent_lens(const Strategy& s);
DependentLens compose_dependent_lenses(const DependentLens& l, const DependentLens& m);
bool dependent_lens_winning(const DependentLens& l, const WinningConditions& wa,
                            const WinningConditions& wb);

// Plumbing. game_map sends events of s.game to events of arrow_game(a, b)
// and must be an isomorphism.
Strategy retype(const Strategy& s, const EventStructure& a, const EventStructure& b,
                const std::vector<int>& game_map, const std::string& name = "");
// σ∥τ : A∥C → B∥D
Strategy strategy_parallel(const Strategy& s, const Strategy& t);
// P∥Q → Q∥P
Strategy swap_strategy(const EventStructure& p, const EventStructure& q);

}  // namespace cg
