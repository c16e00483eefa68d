#include "cg/function_space.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <unordered_map>

namespace cg {

namespace {

Mask expand(Mask local, Mask visible) {
    Mask out = 0;
    int i = 0;
    for_each_bit(visible, [&](int e) {
        if (has(local, i)) out |= bit(e);
        ++i;
    });
    return out;
}

StableFamily family_over(std::string name, std::vector<std::string> ids, std::vector<Mask> configs) {
    return make_family(std::move(name), std::move(ids), std::move(configs));
}

struct Builder {
    std::vector<FsElement> elements;
    std::vector<std::string> ids;
    std::unordered_map<Mask, std::vector<int>> by_x;

    void add(const StableFamily& base, Mask x, int b, const std::string& bid) {
        if (elements.size() >= static_cast<std::size_t>(max_events))
            throw CapExceeded("function space has more than 64 candidate elements");
        by_x[x].push_back(static_cast<int>(elements.size()));
        elements.push_back({x, b});
        ids.push_back(element_id(base, x, bid));
    }
};

// {b | ∃x′ ⊆ x. (x′, b) ∈ f}; false on two distinct x′ for one b
bool output_at(const std::vector<FsElement>& els, Mask f, Mask x, Mask& out) {
    std::array<Mask, max_events> at;
    out = 0;
    bool ok = true;
    for_each_bit(f, [&](int e) {
        const auto& el = els[e];
        if (!subset(el.x, x)) return;
        if (has(out, el.b)) {
            if (at[el.b] != el.x) ok = false;
            return;
        }
        at[el.b] = el.x;
        out |= bit(el.b);
    });
    return ok;
}

bool globally_unique(const std::vector<FsElement>& els, Mask f, const StableFamily& base) {
    std::array<Mask, max_events> at;
    Mask seen = 0, u = 0;
    bool ok = true;
    for_each_bit(f, [&](int e) {
        const auto& el = els[e];
        u |= el.x;
        if (has(seen, el.b)) {
            if (at[el.b] != el.x) ok = false;
            return;
        }
        at[el.b] = el.x;
        seen |= bit(el.b);
    });
    return ok && base.contains(u);
}

// Members reachable from ∅ where each step m → m ∪ {e} is checked by step(m, e).
// Layer by layer; c is tried only from c \ {e} with e the largest event whose
// removal leaves a member, so every member is produced once.
std::vector<Mask> grow_steps(int n, bool ok0, const std::function<bool(Mask, int)>& step, std::size_t limit) {
    std::vector<Mask> out;
    if (!ok0) return out;
    std::vector<Mask> layer{0};
    out.push_back(0);
    while (!layer.empty()) {
        std::vector<Mask> next;
        for (Mask m : layer)
            for (int e = 0; e < n; ++e) {
                if (has(m, e)) continue;
                Mask c = m | bit(e);
                bool canonical = true;
                for_each_bit(c & ~low_bits(e + 1), [&](int h) {
                    if (canonical && std::binary_search(layer.begin(), layer.end(), c & ~bit(h))) canonical = false;
                });
                if (!canonical || !step(m, e)) continue;
                if (out.size() + next.size() >= limit)
                    throw CapExceeded("family enumeration exceeded " + std::to_string(limit) + " members");
                next.push_back(c);
            }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

// A candidate is a member when global(f) holds and at(f, i) holds at every base
// configuration i. Adding (x, b) only changes outputs at configurations above x.
SpaceFamily finish(std::string name, Builder& bld, const std::vector<Mask>& base,
                   const std::function<bool(Mask, std::size_t)>& at, const std::function<bool(Mask)>& global) {
    SpaceFamily out;
    out.elements = bld.elements;
    std::vector<std::vector<std::size_t>> above(bld.elements.size());
    for (std::size_t e = 0; e < bld.elements.size(); ++e)
        for (std::size_t i = 0; i < base.size(); ++i)
            if (subset(bld.elements[e].x, base[i])) above[e].push_back(i);
    bool ok0 = global(0);
    for (std::size_t i = 0; i < base.size() && ok0; ++i) ok0 = at(0, i);
    auto members = grow_steps(
        static_cast<int>(bld.ids.size()), ok0,
        [&](Mask m, int e) {
            Mask c = m | bit(e);
            if (!global(c)) return false;
            for (std::size_t i : above[e])
                if (!at(c, i)) return false;
            return true;
        },
        200000);
    out.family = family_over(std::move(name), bld.ids, members);
    return out;
}

}  // namespace

int FamilyFunctor::at(Mask x) const {
    auto it = std::lower_bound(base.configs.begin(), base.configs.end(), x, config_order);
    if (it == base.configs.end() || *it != x) throw Error("functor applied outside its base: " + base.show(x));
    return static_cast<int>(it - base.configs.begin());
}

FamilyFunctor constant_functor(const StableFamily& a, const StableFamily& b) {
    FamilyFunctor f{a, b.ids, {}, {}};
    std::unordered_set<Mask> m(b.configs.begin(), b.configs.end());
    for (std::size_t i = 0; i < a.configs.size(); ++i) {
        f.events.push_back(low_bits(b.size()));
        f.members.push_back(m);
    }
    return f;
}

FamilyFunctor functor_of_fibres(const EventStructure& a, const EventStructure& ambient,
                                const std::function<Mask(Mask)>& fibre) {
    FamilyFunctor f{family_of(a), ambient.ids(), {}, {}};
    for (Mask x : f.base.configs) {
        Mask m = fibre(x);
        f.events.push_back(m);
        std::unordered_set<Mask> ms;
        for (Mask v : all_configurations(hide(ambient, m))) ms.insert(expand(v, m));
        f.members.push_back(std::move(ms));
    }
    return f;
}

Report validate_functor(const FamilyFunctor& f) {
    Report r;
    const auto& cs = f.base.configs;
    auto show = [&](Mask x) { return f.base.show(x); };
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) {
            Mask x = cs[i], y = cs[j];
            if (i != j && subset(x, y)) {
                if (!subset(f.events[i], f.events[j])) {
                    r.add("monotone", "events at " + show(x) + " not within those at " + show(y), {x, y});
                    continue;
                }
                for (Mask v : f.members[j])
                    if (subset(v, f.events[i]) && !f.members[i].count(v))
                        r.add("substructure", "fibre at " + show(x) + " is not a substructure at " + show(y), {x, y});
                for (Mask v : f.members[i])
                    if (!f.members[j].count(v))
                        r.add("substructure", "fibre at " + show(x) + " is not a substructure at " + show(y), {x, y});
            }
            if (i < j && f.base.contains(x | y) && f.base.contains(x & y)) {
                int k = f.at(x & y);
                if (f.events[k] != (f.events[i] & f.events[j]))
                    r.add("stable", "meet of " + show(x) + " and " + show(y) + " not preserved", {x, y});
            }
        }
    return r;
}

std::vector<Mask> grow_family(int n, const std::function<bool(Mask)>& ok, std::size_t limit) {
    return grow_steps(n, ok(0), [&](Mask m, int e) { return ok(m | bit(e)); }, limit);
}

int SpaceFamily::element(Mask x, int b) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i].x == x && elements[i].b == b) return static_cast<int>(i);
    return -1;
}

Mask output_of(const SpaceFamily& s, Mask f, Mask x) {
    Mask out = 0;
    for_each_bit(f, [&](int e) {
        if (subset(s.elements[e].x, x)) out |= bit(s.elements[e].b);
    });
    return out;
}

std::string element_id(const StableFamily& a, Mask x, const std::string& b) {
    return a.show(x) + ">" + b;
}

SpaceFamily fn_space_family(const StableFamily& a, const StableFamily& b) {
    Builder bld;
    for (Mask x : a.configs)
        for (int j = 0; j < b.size(); ++j) bld.add(a, x, j, b.ids[j]);
    auto at = [&](Mask f, std::size_t i) {
        Mask out;
        return output_at(bld.elements, f, a.configs[i], out) && b.contains(out);
    };
    return finish("[" + a.name + "->" + b.name + "]", bld, a.configs, at, [](Mask) { return true; });
}

SpaceFamily span_space_family(const StableFamily& a, const StableFamily& b) {
    Builder bld;
    for (Mask x : a.configs)
        for (int j = 0; j < b.size(); ++j) bld.add(a, x, j, b.ids[j]);
    auto at = [&](Mask f, std::size_t i) {
        Mask out;
        return output_at(bld.elements, f, a.configs[i], out) && b.contains(out);
    };
    return finish("[" + a.name + "-o" + b.name + "]", bld, a.configs, at,
                  [&](Mask f) { return globally_unique(bld.elements, f, a); });
}

SpaceFamily pi_family(const FamilyFunctor& f) {
    Builder bld;
    for (std::size_t i = 0; i < f.base.configs.size(); ++i)
        for_each_bit(f.events[i], [&](int j) { bld.add(f.base, f.base.configs[i], j, f.ambient[j]); });
    auto at = [&](Mask s, std::size_t i) {
        Mask out;
        return output_at(bld.elements, s, f.base.configs[i], out) && f.members[i].count(out);
    };
    return finish("Pi", bld, f.base.configs, at, [](Mask) { return true; });
}

SpaceFamily pis_family(const FamilyFunctor& f) {
    Builder bld;
    for (std::size_t i = 0; i < f.base.configs.size(); ++i)
        for_each_bit(f.events[i], [&](int j) { bld.add(f.base, f.base.configs[i], j, f.ambient[j]); });
    auto at = [&](Mask s, std::size_t i) {
        Mask out;
        return output_at(bld.elements, s, f.base.configs[i], out) && f.members[i].count(out);
    };
    return finish("Pis", bld, f.base.configs, at, [&](Mask s) { return globally_unique(bld.elements, s, f.base); });
}

StableFamily sigma_family(const FamilyFunctor& f) {
    int na = f.base.size();
    if (na + static_cast<int>(f.ambient.size()) > max_events)
        throw CapExceeded("dependent sum has more than 64 elements");
    std::vector<std::string> ids;
    for (const auto& s : f.base.ids) ids.push_back("L." + s);
    for (const auto& s : f.ambient) ids.push_back("R." + s);
    std::vector<Mask> ms;
    for (std::size_t i = 0; i < f.base.configs.size(); ++i)
        for (Mask y : f.members[i]) ms.push_back(f.base.configs[i] | (y << na));
    return family_over("Sigma", ids, ms);
}

namespace {

void check_space_caps(const EventStructure& a, const EventStructure& b, const Caps& caps) {
    if (a.size() > caps.fspace || b.size() > caps.fspace)
        throw CapExceeded("function space of '" + a.name + "' and '" + b.name + "' exceeds the cap of " +
                          std::to_string(caps.fspace) + " events");
    for (const auto* e : {&a, &b})
        if (e->neg() || e->neutral()) throw Error("function space needs purely Player games ('" + e->name + "')");
}

}  // namespace

FunctionSpace function_space(const EventStructure& a, const EventStructure& b, const Caps& caps) {
    check_space_caps(a, b, caps);
    FunctionSpace out{fn_space_family(family_of(a), family_of(b)), {}};
    out.pr = pr(out.space.family);
    out.pr.es.name = "[" + a.name + "->" + b.name + "]";
    return out;
}

FunctionSpace span_function_space(const EventStructure& a, const EventStructure& b, const Caps& caps) {
    check_space_caps(a, b, caps);
    FunctionSpace out{span_space_family(family_of(a), family_of(b)), {}};
    out.pr = pr(out.space.family);
    out.pr.es.name = "[" + a.name + "-o" + b.name + "]";
    return out;
}

FunctionSpace dependent_product(const FamilyFunctor& f) {
    FunctionSpace out{pi_family(f), {}};
    out.pr = pr(out.space.family);
    return out;
}

FunctionSpace span_dependent_product(const FamilyFunctor& f) {
    FunctionSpace out{pis_family(f), {}};
    out.pr = pr(out.space.family);
    return out;
}

PrResult dependent_sum(const FamilyFunctor& f) { return pr(sigma_family(f)); }

Mask stable_trace(const ConfigFunction& f, const SpaceFamily& space) {
    Mask t = 0;
    for (std::size_t i = 0; i < space.elements.size(); ++i) {
        auto [x, b] = space.elements[i];
        if (!has(f(x), b)) continue;
        bool minimal = true;
        for (Mask y : f.domain())
            if (y != x && subset(y, x) && has(f(y), b)) minimal = false;
        if (minimal) t |= bit(static_cast<int>(i));
    }
    return t;
}

std::vector<ConfigFunction> all_stable_functions(const EventStructure& a, const EventStructure& b) {
    auto ca = all_configurations(a), cb = all_configurations(b);
    double total = 1;
    for (std::size_t i = 0; i < ca.size(); ++i) total *= static_cast<double>(cb.size());
    if (total > 2e6) throw CapExceeded("too many tables to enumerate");
    std::vector<std::size_t> pick(ca.size(), 0);
    std::vector<ConfigFunction> out;
    std::unordered_map<Mask, std::size_t> pos;
    for (std::size_t i = 0; i < ca.size(); ++i) pos[ca[i]] = i;
    while (true) {
        auto val = [&](Mask x) { return cb[pick[pos.at(x)]]; };
        bool ok = true;
        for (std::size_t i = 0; i < ca.size() && ok; ++i)
            for (std::size_t j = 0; j < ca.size() && ok; ++j) {
                Mask x = ca[i], y = ca[j];
                if (subset(x, y) && !subset(val(x), val(y))) ok = false;
                if (a.is_config(x | y) && val(x & y) != (val(x) & val(y))) ok = false;
            }
        if (ok) out.push_back(tabulate("f" + std::to_string(out.size()), a, b, val));
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == cb.size()) pick[k++] = 0;
        if (k == pick.size()) break;
    }
    return out;
}

bool stable_leq(const ConfigFunction& f, const ConfigFunction& g) {
    auto d = f.domain();
    for (Mask x : d)
        for (Mask y : d)
            if (subset(x, y) && f(x) != (f(y) & g(x))) return false;
    return true;
}

bool same_family(const StableFamily& f, const StableFamily& g) {
    return f.ids == g.ids && f.configs == g.configs;
}

}  // namespace cg
