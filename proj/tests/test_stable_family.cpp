#include <gtest/gtest.h>

#include "cg/iso.hpp"
#include "cg/stable_family.hpp"
#include "support.hpp"

using namespace cg;
using namespace cg::testing;

namespace {

StableFamily fam(std::vector<std::string> ids, std::vector<std::vector<std::string>> members) {
    std::vector<Mask> cs;
    for (const auto& m : members) {
        Mask x = 0;
        for (const auto& s : m) x |= bit(static_cast<int>(std::find(ids.begin(), ids.end(), s) - ids.begin()));
        cs.push_back(x);
    }
    return make_family("f", ids, cs);
}

}  // namespace

TEST(StableFamily, ValidateExamples) {
    for (const auto& g : game_corpus()) EXPECT_TRUE(validate_family(family_of(g.game)).ok()) << g.name;
    auto nosep = fam({"a", "b"}, {{}, {"a", "b"}});
    EXPECT_TRUE(validate_family(nosep).has("coincidence-free"));
    auto noempty = fam({"a", "b"}, {{"a"}, {"b"}});
    EXPECT_TRUE(validate_family(noempty).has("complete"));
}

TEST(StableFamily, FamilyOf) {
    EXPECT_EQ(family_of(F2SEQ()).configs, (std::vector<Mask>{0, 1, 3}));
    EXPECT_EQ(family_of(F0()).configs, std::vector<Mask>{0});
    EXPECT_EQ(family_of(F2CF()).configs, (std::vector<Mask>{0, 1, 2}));
}

TEST(StableFamily, Primes) {
    auto seq = family_of(F2SEQ());
    EXPECT_EQ(prime(seq, 1, 3), Mask{3});
    EXPECT_EQ(prime(seq, 0, 3), Mask{1});
    auto co = family_of(F2CO());
    EXPECT_EQ(prime(co, 0, 3), Mask{1});
    auto f = fam({"a", "b", "c"}, {{}, {"a"}, {"b"}, {"a", "b"}, {"a", "c"}, {"a", "b", "c"}});
    ASSERT_TRUE(validate_family(f).ok());
    EXPECT_EQ(prime(f, 2, 7), Mask{5});
    EXPECT_THROW(prime(f, 2, 3), Error);
}

TEST(StableFamily, PrimesAgreeOnCompatibleMembers) {
    for (const auto& g : game_corpus()) {
        if (g.game.size() > 8) continue;
        auto f = family_of(g.game);
        for (Mask x : f.configs)
            for (Mask y : f.configs) {
                if (!compatible(f, x, y)) continue;
                for_each_bit(x & y, [&](int e) { EXPECT_EQ(prime(f, e, x), prime(f, e, y)); });
            }
    }
}

TEST(Pr, UnitIsAnIsomorphism) {
    for (const auto& g : game_corpus()) {
        auto f = family_of(g.game);
        auto p = pr(f);
        EXPECT_TRUE(check_pr_iso(p, f).ok()) << g.name;
        EXPECT_TRUE(find_iso(p.es, g.game, nullptr, nullptr, 16)) << g.name;
    }
    EXPECT_EQ(pr(make_family("e", {}, {0})).es.size(), 0);
}

TEST(Pr, NonEventStructureFamily) {
    // b is enabled by a or by c alone; two primes for b
    auto f = fam({"a", "b", "c"},
                 {{}, {"a"}, {"c"}, {"a", "b"}, {"c", "b"}});
    ASSERT_TRUE(validate_family(f).ok());
    auto p = pr(f);
    EXPECT_EQ(p.es.size(), 4);
    EXPECT_TRUE(validate_event_structure(p.es).ok());
    EXPECT_TRUE(check_pr_iso(p, f).ok());
    EXPECT_GE(p.es.index("b#2"), 0);
}

// Full quantified axioms over every subfamily Z.
Report brute_validate(const StableFamily& f) {
    Report r;
    int n = static_cast<int>(f.configs.size());
    if (!f.contains(0)) r.add("complete", "");
    for (int z = 1; z < (1 << n); ++z) {
        Mask u = 0, m = ~Mask{0};
        for (int i = 0; i < n; ++i)
            if (z >> i & 1) u |= f.configs[i], m &= f.configs[i];
        bool compat = std::any_of(f.configs.begin(), f.configs.end(),
                                  [&](Mask w) { return subset(u, w); });
        if (!compat) continue;
        if (!f.contains(u) && !r.has("complete")) r.add("complete", "");
        if (!f.contains(m) && !r.has("stable")) r.add("stable", "");
    }
    for (Mask x : f.configs)
        for_each_bit(x, [&](int e) {
            for_each_bit(x & ~bit(e), [&](int e2) {
                bool sep = std::any_of(f.configs.begin(), f.configs.end(), [&](Mask y) {
                    return subset(y, x) && has(y, e) != has(y, e2);
                });
                if (!sep && !r.has("coincidence-free")) r.add("coincidence-free", "");
            });
        });
    return r;
}

TEST(StableFamily, BinaryReductionMatchesBruteForce) {
    const int events = 3;
    const int subsets = 1 << events;
    int checked = 0;
    for (int fm = 0; fm < (1 << subsets); ++fm) {
        if (std::popcount(static_cast<unsigned>(fm)) > 4) continue;
        std::vector<Mask> cs;
        for (int s = 0; s < subsets; ++s)
            if (fm >> s & 1) cs.push_back(static_cast<Mask>(s));
        auto f = make_family("t", {"a", "b", "c"}, cs);
        auto fast = validate_family(f);
        auto slow = brute_validate(f);
        for (const char* k : {"complete", "stable", "coincidence-free"})
            EXPECT_EQ(fast.has(k), slow.has(k)) << k << " family " << fm;
        ++checked;
    }
    EXPECT_EQ(checked, 163);
}

TEST(RelationalCompose, CopycatFamilyIsIdentity) {
    // C_A = { x∥y | y ⊑ x } over A⊥∥A
    for (const auto& g : game_corpus()) {
        if (g.game.size() > 4) continue;
        const auto& a = g.game;
        auto cs = all_configurations(a);
        int k = a.size();
        std::vector<Mask> cc;
        for (Mask x : cs)
            for (Mask y : cs)
                if (scott_leq(a, y, x)) cc.push_back(join(k, x, y));
        auto game = parallel(dual(a), a);
        auto ca = make_family("C", game.ids(), cc, game.polarities());
        // G over A ⊎ C with C = F2SEQ: arbitrary family of pairs
        auto tgt = parallel(a, F2SEQ());
        auto gcs = all_configurations(tgt);
        std::vector<Mask> pick;
        for (std::size_t i = 0; i < gcs.size(); i += 2) pick.push_back(gcs[i]);
        pick.push_back(0);
        auto gf = make_family("G", tgt.ids(), pick, tgt.polarities());
        auto comp = relational_compose(ca, gf);
        // C_A ∘ G is G only up to the Scott order; with G down-closed in that order it is G
        std::set<Mask> expect;
        for (Mask x : cs)
            for (Mask z : gf.configs)
                if (scott_leq(a, left_part(k, z), x)) expect.insert(join(k, x, right_part(k, z)));
        EXPECT_EQ(as_set(comp.configs), expect) << g.name;
    }
}

TEST(RelationalCompose, EmptyMiddleIsProduct) {
    auto f = make_family("F", {"L.a"}, {0, 1});
    auto g = make_family("G", {"R.c", "R.d"}, {0, 1, 3});
    auto h = relational_compose(f, g);
    EXPECT_EQ(h.configs.size(), 6u);
}
