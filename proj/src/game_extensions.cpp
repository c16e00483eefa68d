#include "cg/game_extensions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cg {

bool WinningConditions::contains(Mask x) const {
    return std::binary_search(wins.begin(), wins.end(), x, config_order);
}

WinningConditions make_wins(const EventStructure& game, std::vector<Mask> wins) {
    std::sort(wins.begin(), wins.end(), config_order);
    wins.erase(std::unique(wins.begin(), wins.end()), wins.end());
    return {game, std::move(wins)};
}

WinningConditions all_wins(const EventStructure& game) {
    return make_wins(game, all_configurations(game));
}

WinningConditions wins_where(const EventStructure& game, const std::function<bool(Mask)>& p) {
    std::vector<Mask> w;
    for (Mask x : all_configurations(game))
        if (p(x)) w.push_back(x);
    return make_wins(game, w);
}

Report validate_wins(const WinningConditions& w) {
    Report r;
    for (Mask x : w.wins)
        if (!w.game.is_config(x)) r.add("wins", w.game.show(x) + " is not a configuration", {x});
    return r;
}

WinningConditions winning_dual(const WinningConditions& w) {
    std::vector<Mask> out;
    for (Mask x : all_configurations(w.game))
        if (!w.contains(x)) out.push_back(x);
    return make_wins(dual(w.game), out);
}

WinningConditions winning_parallel(const WinningConditions& a, const WinningConditions& b) {
    auto g = parallel(a.game, b.game);
    int k = a.game.size();
    return wins_where(g, [&](Mask x) {
        return a.contains(left_part(k, x)) || b.contains(right_part(k, x));
    });
}

WinningConditions winning_arrow(const WinningConditions& a, const WinningConditions& b) {
    auto w = winning_parallel(winning_dual(a), b);
    w.game = arrow_game(a.game, b.game);
    return w;
}

WinningReport check_winning_strategy(const Strategy& s, const WinningConditions& w) {
    if (!(s.game == w.game)) throw Error("winning conditions are for a different game");
    WinningReport r;
    for (Mask x : all_configurations(s.carrier))
        if (is_plus_maximal(s.carrier, x) && !w.contains(s.image(x))) {
            r.winning = false;
            r.losing.push_back(x);
        }
    return r;
}

bool AccessOrder::contains(int k) const {
    return std::find(levels.begin(), levels.end(), k) != levels.end();
}

bool AccessOrder::leq(int a, int b) const {
    if (a == b) return true;
    std::set<int> seen{a};
    std::vector<int> todo{a};
    while (!todo.empty()) {
        int c = todo.back();
        todo.pop_back();
        for (auto [u, v] : prec)
            if (u == c && seen.insert(v).second) {
                if (v == b) return true;
                todo.push_back(v);
            }
    }
    return false;
}

AccessOrder numeric_order(const std::vector<int>& levels) {
    AccessOrder o{"numeric", levels, {}};
    std::sort(o.levels.begin(), o.levels.end());
    o.levels.erase(std::unique(o.levels.begin(), o.levels.end()), o.levels.end());
    for (std::size_t i = 0; i + 1 < o.levels.size(); ++i) o.prec.emplace_back(o.levels[i], o.levels[i + 1]);
    return o;
}

AccessOrder discrete_order(const std::vector<int>& levels) {
    AccessOrder o{"discrete", levels, {}};
    std::sort(o.levels.begin(), o.levels.end());
    o.levels.erase(std::unique(o.levels.begin(), o.levels.end()), o.levels.end());
    return o;
}

Report validate_levelled_game(const EventStructure& g, const AccessOrder& order) {
    Report r;
    for (int e = 0; e < g.size(); ++e)
        if (!order.contains(g.level(e)))
            r.add("level", g.id(e) + " has no level in " + order.name, {}, {e});
    if (!r.ok()) return r;
    for (auto [a, b] : g.covers())
        if (!order.leq(g.level(a), g.level(b)))
            r.add("level", g.id(a) + " <= " + g.id(b) + " against the access order", {}, {a, b});
    return r;
}

bool check_lambda_strategy(const Strategy& s, const AccessOrder& order, std::pair<int, int>* w) {
    const auto& c = s.carrier;
    for (int b = 0; b < c.size(); ++b) {
        Mask below = c.down(b) & ~bit(b);
        for (int a : members(below))
            if (!order.leq(s.game.level(s.label[a]), s.game.level(s.label[b]))) {
                if (w) *w = {a, b};
                return false;
            }
    }
    return true;
}

bool is_purely_player(const EventStructure& a) { return a.neg() == 0 && a.neutral() == 0; }
bool is_purely_opponent(const EventStructure& a) { return a.pos() == 0 && a.neutral() == 0; }

namespace {

bool cross_conflict(const EventStructure& a) {
    return std::any_of(a.conflicts().begin(), a.conflicts().end(),
                       [&](Mask c) { return (c & a.pos()) && (c & a.neg()); });
}

std::vector<int> levels_present(const EventStructure& a) {
    std::vector<int> l(a.levels());
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    return l;
}

bool polarity_levels(const EventStructure& a) {
    for (int e = 0; e < a.size(); ++e)
        if (a.level(e) != (a.pol(e) == Polarity::plus ? 1 : 2)) return false;
    return true;
}

}  // namespace

bool is_goi_game(const EventStructure& a) {
    if (!a.is_game()) return false;
    for (auto [x, y] : a.covers())
        if (a.pol(x) != a.pol(y)) return false;
    return !cross_conflict(a);
}

bool is_dialectica(const EventStructure& a, const AccessOrder& o) {
    return is_goi_game(a) && polarity_levels(a) && o.contains(1) && o.contains(2) && o.leq(1, 2) &&
           !o.leq(2, 1);
}

bool is_girard_variant(const EventStructure& a, const AccessOrder& o) {
    return is_goi_game(a) && polarity_levels(a) && o.contains(1) && o.contains(2) &&
           !o.leq(1, 2) && !o.leq(2, 1);
}

int comb_arity(const EventStructure& a, const AccessOrder& o) {
    if (!a.is_game() || a.size() == 0) return 0;
    auto lv = levels_present(a);
    int n = static_cast<int>(lv.size());
    for (int i = 0; i < n; ++i)
        if (lv[i] != i + 1) return 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (o.leq(i, j) != (i <= j)) return 0;
    Polarity first = Polarity::neutral;
    for (int e = 0; e < a.size(); ++e)
        if (a.level(e) == 1) first = a.pol(e);
    for (int e = 0; e < a.size(); ++e) {
        bool odd = a.level(e) % 2 == 1;
        Polarity want = odd ? first : flip(first);
        if (a.pol(e) != want) return 0;
    }
    for (auto [x, y] : a.covers())
        if (a.level(x) != a.level(y)) return 0;
    for (Mask c : a.conflicts()) {
        int l = -1;
        bool same = true;
        for_each_bit(c, [&](int e) {
            if (l < 0) l = a.level(e);
            else if (a.level(e) != l) same = false;
        });
        if (!same) return 0;
    }
    return n;
}

bool is_container(const EventStructure& a) {
    if (!a.is_game()) return false;
    for (auto [x, y] : a.covers())
        if (a.pol(x) == Polarity::minus && a.pol(y) == Polarity::plus) return false;
    return !cross_conflict(a);
}

bool is_tree_like(const EventStructure& a) {
    for (int x = 0; x < a.size(); ++x)
        for (int y = x + 1; y < a.size(); ++y)
            if (a.consistent(bit(x) | bit(y)) && !a.leq(x, y) && !a.leq(y, x)) return false;
    return true;
}

std::vector<GameClass> classify_game(const EventStructure& a, const AccessOrder* order) {
    AccessOrder fallback = numeric_order(levels_present(a));
    const AccessOrder& o = order ? *order : fallback;
    std::vector<GameClass> out;
    if (is_purely_player(a)) out.push_back({"purelyPlayer"});
    if (is_purely_opponent(a)) out.push_back({"purelyOpponent"});
    if (is_goi_game(a)) out.push_back({"GoI"});
    if (is_dialectica(a, o)) out.push_back({"dialectica"});
    if (is_girard_variant(a, o)) out.push_back({"girardVariant"});
    if (int n = comb_arity(a, o)) out.push_back({"comb", n});
    if (is_container(a)) out.push_back({"container"});
    if (is_tree_like(a)) out.push_back({"treeLike"});
    return out;
}

bool has_class(const std::vector<GameClass>& cs, const std::string& tag) {
    return std::any_of(cs.begin(), cs.end(), [&](const GameClass& c) { return c.tag == tag; });
}

EventStructure ContainerParts::a2(Mask x) const {
    auto e = hide(whole, a2_events(x));
    e.name = whole.name + "_2";
    return e;
}

ContainerParts container_parts(const EventStructure& a) {
    if (!is_container(a)) throw Refused("'" + a.name + "' is not a container game");
    ContainerParts p;
    p.whole = a;
    p.a1 = hide(a, a.pos());
    p.a1.name = a.name + "_1";
    // x is given over A's indices
    p.a2_events = [a](Mask x) {
        Mask out = 0;
        for_each_bit(a.neg(), [&](int o) {
            if (subset(a.down(o) & a.pos(), x)) out |= bit(o);
        });
        return out;
    };
    return p;
}

bool check_container_decomposition(const EventStructure& a) {
    auto p = container_parts(a);
    std::set<Mask> from_pairs;
    auto pos = members(a.pos());
    for (Mask x1 : all_configurations(p.a1)) {
        Mask x = 0;
        for (int i = 0; i < static_cast<int>(pos.size()); ++i)
            if (has(x1, i)) x |= bit(pos[i]);
        Mask evs = p.a2_events(x);
        auto idx = members(evs);
        for (Mask y2 : all_configurations(p.a2(x))) {
            Mask y = 0;
            for (int i = 0; i < static_cast<int>(idx.size()); ++i)
                if (has(y2, i)) y |= bit(idx[i]);
            if (!from_pairs.insert(x | y).second) return false;
        }
    }
    auto cs = all_configurations(a);
    return from_pairs == std::set<Mask>(cs.begin(), cs.end());
}

}  // namespace cg
