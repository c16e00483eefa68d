#include "cg/stable_family.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace cg {

bool StableFamily::contains(Mask x) const {
    return std::binary_search(configs.begin(), configs.end(), x, config_order);
}

int StableFamily::index(const std::string& id) const {
    auto it = std::find(ids.begin(), ids.end(), id);
    return it == ids.end() ? -1 : static_cast<int>(it - ids.begin());
}

std::string StableFamily::show(Mask x) const {
    std::string out = "{";
    bool first = true;
    for_each_bit(x, [&](int e) {
        if (!first) out += ",";
        out += ids[e];
        first = false;
    });
    return out + "}";
}

StableFamily make_family(std::string name, std::vector<std::string> ids, std::vector<Mask> configs,
                         std::vector<Polarity> pol, std::vector<int> levels) {
    if (ids.size() > static_cast<std::size_t>(max_events))
        throw CapExceeded("family '" + name + "' has more than 64 events");
    std::unordered_set<std::string> seen;
    for (const auto& id : ids)
        if (!seen.insert(id).second) throw Error("duplicate event id '" + id + "'");
    if (pol.empty()) pol.assign(ids.size(), Polarity::plus);
    if (levels.empty()) levels.assign(ids.size(), -1);
    if (pol.size() != ids.size() || levels.size() != ids.size())
        throw Error("family attribute size mismatch");
    Mask all = low_bits(static_cast<int>(ids.size()));
    for (Mask x : configs)
        if (!subset(x, all)) throw Error("family member outside the event set");
    std::sort(configs.begin(), configs.end(), config_order);
    configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
    return {std::move(name), std::move(ids), std::move(pol), std::move(levels), std::move(configs)};
}

std::vector<Mask> maximal_members(const StableFamily& f) {
    std::vector<Mask> out;
    for (auto it = f.configs.rbegin(); it != f.configs.rend(); ++it)
        if (std::none_of(out.begin(), out.end(), [&](Mask m) { return subset(*it, m); }))
            out.push_back(*it);
    return out;
}

bool compatible(const StableFamily& f, Mask z1, Mask z2) {
    Mask u = z1 | z2;
    return std::any_of(f.configs.begin(), f.configs.end(), [&](Mask w) { return subset(u, w); });
}

Report validate_family(const StableFamily& f) {
    Report r;
    if (!f.contains(0)) r.add("complete", "empty configuration missing", {0});
    auto maxima = maximal_members(f);
    std::unordered_set<Mask> in(f.configs.begin(), f.configs.end());
    const auto& cs = f.configs;
    bool complete_bad = false, stable_bad = false;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            Mask u = cs[i] | cs[j];
            if (!in.count(u)) {
                bool compat = std::any_of(maxima.begin(), maxima.end(),
                                          [&](Mask w) { return subset(u, w); });
                if (!compat) continue;
                if (!complete_bad) {
                    r.add("complete", "union of " + f.show(cs[i]) + " and " + f.show(cs[j]) +
                                          " missing", {cs[i], cs[j]});
                    complete_bad = true;
                }
            }
            if (!stable_bad && !in.count(cs[i] & cs[j])) {
                r.add("stable", "intersection of " + f.show(cs[i]) + " and " + f.show(cs[j]) +
                                    " missing", {cs[i], cs[j]});
                stable_bad = true;
            }
        }
    // e, e′ coincide in x when every sub-member of x has both or neither
    bool coincident = false;
    for (Mask x : cs) {
        if (coincident) break;
        std::vector<Mask> meet(f.size(), ~Mask{0});
        for (Mask y : cs)
            if (subset(y, x)) for_each_bit(y, [&](int e) { meet[e] &= y; });
        for_each_bit(x, [&](int e) {
            for_each_bit(x & ~bit(e), [&](int e2) {
                if (!coincident && e < e2 && has(meet[e], e2) && has(meet[e2], e)) {
                    r.add("coincidence-free",
                          f.ids[e] + " and " + f.ids[e2] + " are not separated in " + f.show(x),
                          {x}, {e, e2});
                    coincident = true;
                }
            });
        });
    }
    return r;
}

StableFamily family_of(const EventStructure& e, int cap) {
    return make_family(e.name, e.ids(), all_configurations(e, cap), e.polarities(), e.levels());
}

Mask prime(const StableFamily& f, int e, Mask x) {
    if (!f.contains(x)) throw Error("prime: " + f.show(x) + " is not a member");
    if (e < 0 || !has(x, e)) throw Error("prime: event not in " + f.show(x));
    Mask m = x;
    for (Mask y : f.configs)
        if (has(y, e) && subset(y, x)) m &= y;
    return m;
}

Mask PrResult::theta(Mask z) const {
    Mask x = 0;
    for_each_bit(z, [&](int p) { x |= primes[p]; });
    return x;
}

Mask PrResult::phi(Mask x) const {
    Mask z = 0;
    for (int p = 0; p < static_cast<int>(primes.size()); ++p)
        if (subset(primes[p], x)) z |= bit(p);
    return z;
}

PrResult pr(const StableFamily& f) {
    std::map<Mask, int> prime_top;
    for (Mask x : f.configs)
        for_each_bit(x, [&](int e) { prime_top.emplace(prime(f, e, x), e); });
    if (prime_top.size() > static_cast<std::size_t>(max_events))
        throw CapExceeded("Pr(" + f.name + ") has " + std::to_string(prime_top.size()) +
                          " events, more than 64");
    PrResult out;
    for (auto& [p, e] : prime_top) out.primes.push_back(p);
    std::sort(out.primes.begin(), out.primes.end(), config_order);
    std::vector<std::string> ids;
    std::vector<Polarity> pol;
    std::vector<int> lv;
    std::unordered_map<std::string, int> seen;
    for (Mask p : out.primes) {
        int e = prime_top[p];
        out.top.push_back(e);
        int k = ++seen[f.ids[e]];
        ids.push_back(k == 1 ? f.ids[e] : f.ids[e] + "#" + std::to_string(k));
        pol.push_back(f.pol[e]);
        lv.push_back(f.levels[e]);
    }
    int n = static_cast<int>(out.primes.size());
    std::vector<Mask> down(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (subset(out.primes[a], out.primes[b])) down[b] |= bit(a);
    std::vector<Mask> configs;
    for (Mask x : f.configs) configs.push_back(out.phi(x));
    bool any_level = std::any_of(lv.begin(), lv.end(), [](int l) { return l >= 0; });
    out.es = from_order_and_configs("Pr(" + f.name + ")", ids, pol, down, configs,
                                    any_level ? lv : std::vector<int>{});
    return out;
}

Report check_pr_iso(const PrResult& p, const StableFamily& f) {
    Report r;
    auto cs = all_configurations(p.es, max_events);
    if (cs.size() != f.configs.size())
        r.add("iso", "C(Pr F) has " + std::to_string(cs.size()) + " members, F has " +
                         std::to_string(f.configs.size()));
    for (Mask z : cs) {
        Mask x = p.theta(z);
        if (!f.contains(x)) r.add("iso", "theta(" + p.es.show(z) + ") not in F", {z});
        else if (p.phi(x) != z) r.add("iso", "phi(theta(" + p.es.show(z) + ")) differs", {z});
    }
    for (Mask x : f.configs) {
        Mask z = p.phi(x);
        if (!p.es.is_config(z)) r.add("iso", "phi(" + f.show(x) + ") not a configuration", {x});
        else if (p.theta(z) != x) r.add("iso", "theta(phi(" + f.show(x) + ")) differs", {x});
    }
    // monotone both ways: θ and φ preserve inclusion by construction as unions; check on pairs
    for (Mask x : f.configs)
        for (Mask y : f.configs)
            if (subset(x, y) != subset(p.phi(x), p.phi(y)))
                r.add("iso", "order not preserved at " + f.show(x) + ", " + f.show(y), {x, y});
    return r;
}

StableFamily relational_compose(const StableFamily& f, const StableFamily& g) {
    auto split = [](const StableFamily& s, std::vector<int>& left, std::vector<int>& right) {
        for (int i = 0; i < s.size(); ++i) {
            const auto& id = s.ids[i];
            if (id.rfind("L.", 0) == 0) left.push_back(i);
            else if (id.rfind("R.", 0) == 0) right.push_back(i);
            else throw Error("relational_compose: event '" + id + "' is not side-tagged");
        }
    };
    std::vector<int> fa, fb, gb, gc;
    split(f, fa, fb);
    split(g, gb, gc);
    if (fb.size() != gb.size()) throw Error("relational_compose: middle event sets differ");
    // middle events matched by name
    std::vector<int> g_of_f(f.size(), -1);
    for (int i : fb) {
        std::string name = f.ids[i].substr(2);
        int j = g.index("L." + name);
        if (j < 0) throw Error("relational_compose: middle event '" + name + "' missing on the right");
        g_of_f[i] = j;
    }
    auto middle_of_f = [&](Mask x) {
        Mask y = 0;
        for (int i : fb)
            if (has(x, i)) y |= bit(g_of_f[i]);
        return y;
    };
    Mask gb_mask = 0;
    for (int j : gb) gb_mask |= bit(j);

    std::vector<std::string> ids;
    std::vector<Polarity> pol;
    std::vector<int> lv;
    for (int i : fa) ids.push_back(f.ids[i]), pol.push_back(f.pol[i]), lv.push_back(f.levels[i]);
    for (int j : gc) ids.push_back(g.ids[j]), pol.push_back(g.pol[j]), lv.push_back(g.levels[j]);
    int na = static_cast<int>(fa.size());
    auto a_part = [&](Mask x) {
        Mask out = 0;
        for (int k = 0; k < na; ++k)
            if (has(x, fa[k])) out |= bit(k);
        return out;
    };
    auto c_part = [&](Mask z) {
        Mask out = 0;
        for (int k = 0; k < static_cast<int>(gc.size()); ++k)
            if (has(z, gc[k])) out |= bit(na + k);
        return out;
    };
    std::unordered_map<Mask, std::vector<Mask>> by_middle;
    for (Mask z : g.configs) by_middle[z & gb_mask].push_back(c_part(z));
    std::vector<Mask> configs;
    for (Mask x : f.configs) {
        auto it = by_middle.find(middle_of_f(x));
        if (it == by_middle.end()) continue;
        for (Mask c : it->second) configs.push_back(a_part(x) | c);
    }
    return make_family(f.name + ";" + g.name, ids, configs, pol, lv);
}

}  // namespace cg
