#pragma once

#include <set>
#include <string>
#include <vector>

#include "cg/event_structure.hpp"
#include "cg/text_format.hpp"

namespace cg::testing {

// Compact builder: "a+ b- c+ | a<b b<c | a#c a#b#d"
EventStructure es(const std::string& name, const std::string& spec);

EventStructure F0();
EventStructure F1P();
EventStructure F1N();
EventStructure F2CO();
EventStructure F2CF();
EventStructure F2SEQ();
EventStructure DLX();
EventStructure RACE();   // n(-), p(+) concurrent, conflict {n,p}

struct NamedGame {
    std::string name;
    EventStructure game;
};
// The shared corpus of games (≤ 10 events each).
std::vector<NamedGame> game_corpus();

std::set<Mask> as_set(const std::vector<Mask>& v);

// Brute force: every subset that is down-closed under the transitive closure of
// the covers and contains no conflict.
std::vector<Mask> brute_configurations(const EventStructure& e);

}  // namespace cg::testing

#include "cg/strategy.hpp"

namespace cg::testing {

// Carrier from the compact spec; labels "carrierId:gameId ...". Game is A⊥∥B.
Strategy strat(const std::string& name, const std::string& carrier, const EventStructure& a,
               const EventStructure& b, const std::string& labels);
// Same, into a single game.
Strategy strat_in(const std::string& name, const std::string& carrier, const EventStructure& g,
                  const std::string& labels);

EventStructure DLXB();  // s+@1, t-@2
Strategy dlx_pipeline(); // DLX -> DLXB: q<s, q<r, t<r

// Brute force: every subset X with [X]⁻ consistent is consistent.
bool brute_deterministic(const Strategy& s);

}  // namespace cg::testing

namespace cg::testing {

Strategy dlx_back();   // DLXB -> DLX: s<q, s<t, r<t
Strategy dlx_flat();   // DLX -> DLXB: q<s, t<r
Strategy dlx2_merge(); // DLX2 -> DLX: q after q1,q2; r1 after r,q1; r2 after r
// deterministic strategies between dialectica games
std::vector<Strategy> dialectica_strategies();

EventStructure CQ();  // q+ r- | q<r, a container game
// plays q at once; answers r on the left after both r and the left q
Strategy eager();

}  // namespace cg::testing
