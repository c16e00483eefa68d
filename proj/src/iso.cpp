#include "cg/iso.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace cg {

namespace {

using Signature = std::tuple<int, int, int, int, int, std::vector<int>>;

Signature signature(const EventStructure& e, int a, const std::vector<int>* label) {
    std::vector<int> conflict_sizes;
    for (Mask c : e.conflicts())
        if (has(c, a)) conflict_sizes.push_back(count(c));
    std::sort(conflict_sizes.begin(), conflict_sizes.end());
    return {static_cast<int>(e.pol(a)), label ? (*label)[a] : 0, count(e.down(a)),
            count(e.up(a)), count(e.preds(a)), conflict_sizes};
}

Mask image(const std::vector<int>& f, Mask x) {
    Mask y = 0;
    for_each_bit(x, [&](int e) { y |= bit(f[e]); });
    return y;
}

struct Search {
    const EventStructure& a;
    const EventStructure& b;
    std::vector<std::vector<int>> candidates;
    std::vector<int> order;
    std::vector<int> f;
    Mask used = 0;
    Mask assigned = 0;
    std::set<Mask> b_conflicts;

    bool consistent_step(int x, int y) {
        bool ok = true;
        for_each_bit(assigned, [&](int u) {
            if (!ok) return;
            int v = f[u];
            if (a.leq(u, x) != b.leq(v, y) || a.leq(x, u) != b.leq(y, v)) ok = false;
        });
        if (!ok) return false;
        Mask dom = assigned | bit(x);
        for (Mask c : a.conflicts())
            if (has(c, x) && subset(c, dom)) {
                Mask img = 0;
                for_each_bit(c, [&](int u) { img |= bit(u == x ? y : f[u]); });
                if (!b_conflicts.count(img)) return false;
            }
        return true;
    }

    bool run(std::size_t k) {
        if (k == order.size()) {
            std::set<Mask> mapped;
            for (Mask c : a.conflicts()) mapped.insert(image(f, c));
            return mapped == b_conflicts;
        }
        int x = order[k];
        for (int y : candidates[x]) {
            if (has(used, y) || !consistent_step(x, y)) continue;
            f[x] = y;
            used |= bit(y);
            assigned |= bit(x);
            if (run(k + 1)) return true;
            used &= ~bit(y);
            assigned &= ~bit(x);
            f[x] = -1;
        }
        return false;
    }
};

}  // namespace

bool check_iso(const EventStructure& a, const EventStructure& b, const std::vector<int>& f,
               const std::vector<int>* la, const std::vector<int>* lb) {
    if (a.size() != b.size() || static_cast<int>(f.size()) != a.size()) return false;
    Mask seen = 0;
    for (int x = 0; x < a.size(); ++x) {
        int y = f[x];
        if (y < 0 || y >= b.size() || has(seen, y)) return false;
        seen |= bit(y);
        if (a.pol(x) != b.pol(y)) return false;
        if (la && lb && (*la)[x] != (*lb)[y]) return false;
    }
    for (int x = 0; x < a.size(); ++x)
        for (int u = 0; u < a.size(); ++u)
            if (a.leq(u, x) != b.leq(f[u], f[x])) return false;
    std::set<Mask> mapped, target(b.conflicts().begin(), b.conflicts().end());
    for (Mask c : a.conflicts()) mapped.insert(image(f, c));
    return mapped == target;
}

IsoResult find_iso(const EventStructure& a, const EventStructure& b, const std::vector<int>* la,
                   const std::vector<int>* lb, int cap) {
    if (cap < 0) cap = default_caps().iso;
    IsoResult res;
    if (a.size() != b.size() || a.conflicts().size() != b.conflicts().size() ||
        a.covers().size() != b.covers().size())
        return res;
    if (a.size() > cap) {
        res.verdict = IsoVerdict::unknown;
        return res;
    }
    if ((la == nullptr) != (lb == nullptr)) throw Error("find_iso: labels on one side only");
    Search s{a, b, {}, {}, std::vector<int>(a.size(), -1), 0, 0,
             std::set<Mask>(b.conflicts().begin(), b.conflicts().end())};
    std::vector<Signature> sb;
    for (int y = 0; y < b.size(); ++y) sb.push_back(signature(b, y, lb));
    std::multiset<Signature> ma, mb(sb.begin(), sb.end());
    s.candidates.resize(a.size());
    for (int x = 0; x < a.size(); ++x) {
        auto sx = signature(a, x, la);
        ma.insert(sx);
        for (int y = 0; y < b.size(); ++y)
            if (sb[y] == sx) s.candidates[x].push_back(y);
    }
    if (ma != mb) return res;
    // causal order first, fewest candidates first among equals
    for (int x = 0; x < a.size(); ++x) s.order.push_back(x);
    std::stable_sort(s.order.begin(), s.order.end(), [&](int x, int y) {
        int dx = count(a.down(x)), dy = count(a.down(y));
        if (dx != dy) return dx < dy;
        return s.candidates[x].size() < s.candidates[y].size();
    });
    if (s.run(0)) {
        res.verdict = IsoVerdict::found;
        res.witness = s.f;
    }
    return res;
}

}  // namespace cg
