#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cg/event_structure.hpp"
#include "cg/strategy.hpp"

namespace cg {

struct WinningConditions {
    EventStructure game;
    std::vector<Mask> wins;  // sorted by config_order
    bool contains(Mask x) const;
};

WinningConditions make_wins(const EventStructure& game, std::vector<Mask> wins);
WinningConditions all_wins(const EventStructure& game);
WinningConditions wins_where(const EventStructure& game, const std::function<bool(Mask)>& p);
Report validate_wins(const WinningConditions& w);

WinningConditions winning_dual(const WinningConditions& w);
WinningConditions winning_parallel(const WinningConditions& a, const WinningConditions& b);
// conditions on A⊥∥B for strategies A → B
WinningConditions winning_arrow(const WinningConditions& a, const WinningConditions& b);

struct WinningReport {
    bool winning = true;
    std::vector<Mask> losing;  // +-maximal carrier configurations landing outside W
};
WinningReport check_winning_strategy(const Strategy& s, const WinningConditions& w);

// Finite preorder on access levels; levels are non-negative integers.
struct AccessOrder {
    std::string name;
    std::vector<int> levels;
    std::vector<std::pair<int, int>> prec;  // generating pairs k ⪯ k′

    bool contains(int k) const;
    bool leq(int a, int b) const;  // reflexive-transitive closure
};

AccessOrder numeric_order(const std::vector<int>& levels);   // k ⪯ k′ iff k ≤ k′
AccessOrder discrete_order(const std::vector<int>& levels);  // only k ⪯ k
Report validate_levelled_game(const EventStructure& game, const AccessOrder& order);
// s ≤ s′ ⇒ l σ(s) ⪯ l σ(s′)
bool check_lambda_strategy(const Strategy& s, const AccessOrder& order,
                           std::pair<int, int>* witness = nullptr);

struct GameClass {
    std::string tag;  // purelyPlayer, purelyOpponent, GoI, dialectica, girardVariant, comb, container, treeLike
    int n = 0;        // comb arity
};

bool is_purely_player(const EventStructure& a);
bool is_purely_opponent(const EventStructure& a);
bool is_goi_game(const EventStructure& a);
bool is_dialectica(const EventStructure& a, const AccessOrder& order);
bool is_girard_variant(const EventStructure& a, const AccessOrder& order);
int comb_arity(const EventStructure& a, const AccessOrder& order);  // 0 when not a comb game
bool is_container(const EventStructure& a);
bool is_tree_like(const EventStructure& a);

// Without an explicit order the numeric order on the levels present is used.
std::vector<GameClass> classify_game(const EventStructure& a, const AccessOrder* order = nullptr);
bool has_class(const std::vector<GameClass>& cs, const std::string& tag);

struct ContainerParts {
    EventStructure a1;  // Player moves
    // Opponent moves of A2(x) as a mask over A
    std::function<Mask(Mask)> a2_events;
    EventStructure a2(Mask x_in_a) const;
    EventStructure whole;
};
ContainerParts container_parts(const EventStructure& a);
// every configuration splits uniquely as x ∪ y, x ∈ C(A1), y ∈ C(A2(x))
bool check_container_decomposition(const EventStructure& a);

}  // namespace cg
