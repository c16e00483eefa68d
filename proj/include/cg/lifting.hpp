#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cg/stable_family.hpp"
#include "cg/strategy.hpp"

namespace cg {

// Extensional map C(source) → C(target).
struct ConfigFunction {
    std::string name;
    EventStructure source, target;
    std::unordered_map<Mask, Mask> table;

    Mask operator()(Mask x) const;
    std::vector<Mask> domain() const;  // sorted
};

ConfigFunction tabulate(std::string name, const EventStructure& source,
                        const EventStructure& target, const std::function<Mask(Mask)>& f);
Report validate_cfun(const ConfigFunction& f);
ConfigFunction identity_cfun(const EventStructure& a);
ConfigFunction cfun_of_map(const ESMap& m);
ConfigFunction compose_cfun(const ConfigFunction& f, const ConfigFunction& g);  // g ∘ f
// Same table read between the duals.
ConfigFunction dual_cfun(const ConfigFunction& f);

struct AffineStableReport {
    bool polarity = true;
    bool plus_continuous = true;      // vacuous on finite games
    bool minus_image_finite = true;   // vacuous on finite games
    bool affine = true;
    bool stable = true;
    Report witnesses;
    bool ok() const { return polarity && plus_continuous && minus_image_finite && affine && stable; }
};

AffineStableReport check_affine_stable(const ConfigFunction& f);
Report check_additive_stable(const ConfigFunction& f);
// x ⊆⁻ x1, x ⊆⁻ x2, f x1 ∪ f x2 ∈ C(B) ⇒ x1 ∪ x2 ∈ C(A)
bool reflects_minus_compatibility(const ConfigFunction& f);

// { x∥y ∈ C(A⊥∥B) | y ⊑_B f(x) }
StableFamily lift_family(const ConfigFunction& f);
// { y∥x ∈ C(B⊥∥A) | g(x) ⊑_B y }
StableFamily colift_family(const ConfigFunction& g);
// max : Pr(F) → game, as a strategy
Strategy strategy_of_family(const StableFamily& f, const EventStructure& a,
                            const EventStructure& b, const std::string& name);

Strategy lift(const ConfigFunction& f);    // f_!
Strategy colift(const ConfigFunction& g);  // g*

// Standard maps
ConfigFunction projector(const EventStructure& a, const EventStructure& b);  // A∥B → B
ConfigFunction left_projector(const EventStructure& a, const EventStructure& b);  // A∥B → A
ConfigFunction duplicator(const EventStructure& a);                          // A → A∥A
ConfigFunction detector(const EventStructure& a, const std::vector<Mask>& xs);
ConfigFunction blocker(const EventStructure& a, Mask y);
// f_A : A → A⁺∥A⁻, x ↦ x⁺∥x⁻
EventStructure split_game(const EventStructure& a);
ConfigFunction split_cfun(const EventStructure& a);
EventStructure detector_game();  // single + event ⊞
EventStructure blocker_game();   // single − event ⊟

struct FunctorialityReport {
    bool families_equal = false;  // relational composite equals the family of g∘f
    IsoResult composite_iso;      // lift(g) ⊙ lift(f) ≅ lift(g∘f)
    bool ok() const { return families_equal && static_cast<bool>(composite_iso); }
};
FunctorialityReport check_functoriality(const ConfigFunction& f, const ConfigFunction& g,
                                        int iso_cap = -1);

// C_A = { x∥x′ | x′ ⊑ x } over A⊥∥A
StableFamily copycat_family(const EventStructure& a);

struct AdjunctionReport {
    bool unit = false;      // C_A ⊆ F*∘F_!
    bool counit = false;    // F_!∘F* ⊆ C_B
    bool triangle1 = false; // C_A∘F* ⊆ F*∘F_!∘F* ⊆ F*∘C_B, outer equal
    bool triangle2 = false; // F_!∘C_A ⊆ F_!∘F*∘F_! ⊆ C_B∘F_!, outer equal
    Report witnesses;
    bool ok() const { return unit && counit && triangle1 && triangle2; }
};
AdjunctionReport adjunction_check(const ConfigFunction& f);

}  // namespace cg
