#pragma once

#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cg/lifting.hpp"
#include "cg/stable_family.hpp"

namespace cg {

// x ↦ 𝓑(x) over a stable family 𝒜; every 𝓑(x) is a family over a shared
// ambient set of elements, 𝓑(x) ⊴ 𝓑(x′) when x ⊆ x′.
struct FamilyFunctor {
    StableFamily base;
    std::vector<std::string> ambient;
    std::vector<Mask> events;                        // per base member
    std::vector<std::unordered_set<Mask>> members;   // per base member

    int at(Mask x) const;  // position of x among base.configs
};

FamilyFunctor constant_functor(const StableFamily& a, const StableFamily& b);
// x ↦ the substructure of `ambient` on fibre(x); fibres must be down-closed in ambient.
FamilyFunctor functor_of_fibres(const EventStructure& a, const EventStructure& ambient,
                                const std::function<Mask(Mask)>& fibre);
// kinds "monotone", "substructure", "stable"
Report validate_functor(const FamilyFunctor& f);

// Members reachable from ∅ through single-element steps that satisfy `ok`.
std::vector<Mask> grow_family(int n, const std::function<bool(Mask)>& ok,
                              std::size_t limit = 200000);

// Element (x, b) of a function-space family.
struct FsElement {
    Mask x;
    int b;
};

struct SpaceFamily {
    StableFamily family;
    std::vector<FsElement> elements;  // index = family event
    int element(Mask x, int b) const;  // -1 when absent
};

// {b | (x′, b) ∈ f, x′ ⊆ x}
Mask output_of(const SpaceFamily& s, Mask f, Mask x);

std::string element_id(const StableFamily& a, Mask x, const std::string& b);

SpaceFamily fn_space_family(const StableFamily& a, const StableFamily& b);    // [𝒜 → 𝓑]
SpaceFamily span_space_family(const StableFamily& a, const StableFamily& b);  // [𝒜 ⊸ 𝓑]
SpaceFamily pi_family(const FamilyFunctor& f);                                // Π
SpaceFamily pis_family(const FamilyFunctor& f);                               // Πˢ
// Σ: elements "L.a" then "R.b"
StableFamily sigma_family(const FamilyFunctor& f);

struct FunctionSpace {
    SpaceFamily space;
    PrResult pr;
    const EventStructure& es() const { return pr.es; }
    // the family element at the top of each event of es
    const FsElement& top(int e) const { return space.elements[pr.top[e]]; }
};

FunctionSpace function_space(const EventStructure& a, const EventStructure& b, const Caps& caps = default_caps());
FunctionSpace span_function_space(const EventStructure& a, const EventStructure& b, const Caps& caps = default_caps());
FunctionSpace dependent_product(const FamilyFunctor& f);
FunctionSpace span_dependent_product(const FamilyFunctor& f);
PrResult dependent_sum(const FamilyFunctor& f);

// trace of a stable function: (x, b) with x minimal such that b ∈ f(x)
Mask stable_trace(const ConfigFunction& f, const SpaceFamily& space);
// brute force over all tables C(A) → C(B)
std::vector<ConfigFunction> all_stable_functions(const EventStructure& a, const EventStructure& b);
// f ≤ g in the stable order
bool stable_leq(const ConfigFunction& f, const ConfigFunction& g);

bool same_family(const StableFamily& f, const StableFamily& g);

}  // namespace cg
