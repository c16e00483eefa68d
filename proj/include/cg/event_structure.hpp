#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cg/bits.hpp"
#include "cg/errors.hpp"

namespace cg {

enum class Polarity { plus, minus, neutral };

char polarity_char(Polarity p);
Polarity flip(Polarity p);

struct Violation {
    std::string kind;
    std::string detail;
    std::vector<Mask> sets;
    std::vector<int> events;
};

struct Report {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(const std::string& kind) const;
    void add(std::string kind, std::string detail, std::vector<Mask> sets = {},
             std::vector<int> events = {});
    void merge(const Report& other, const std::string& prefix = "");
    std::string str() const;
};

// Finite event structure with polarity. Consistency is given by minimal
// conflict sets: X is consistent iff no conflict is contained in X.
class EventStructure {
public:
    EventStructure() = default;

    std::string name;

    int size() const { return static_cast<int>(ids_.size()); }
    Mask all() const { return low_bits(size()); }
    const std::string& id(int e) const { return ids_[e]; }
    const std::vector<std::string>& ids() const { return ids_; }
    Polarity pol(int e) const { return pol_[e]; }
    const std::vector<Polarity>& polarities() const { return pol_; }
    int level(int e) const { return level_[e]; }
    const std::vector<int>& levels() const { return level_; }
    bool has_levels() const;

    // immediate causality, as (cause, effect); the transitive reduction when acyclic
    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    const std::vector<Mask>& conflicts() const { return conflicts_; }
    bool acyclic() const { return acyclic_; }

    int index(const std::string& id) const;   // -1 if absent
    int at(const std::string& id) const;      // throws if absent
    Mask mask_of(const std::vector<std::string>& ids) const;

    Mask down(int e) const { return down_[e]; }      // [e], reflexive
    Mask up(int e) const { return up_[e]; }          // events above e, reflexive
    Mask preds(int e) const { return preds_[e]; }    // immediate causes
    Mask down(Mask x) const;
    bool leq(int a, int b) const { return has(down_[b], a); }
    bool consistent(Mask x) const;
    bool down_closed(Mask x) const;
    bool is_config(Mask x) const { return down_closed(x) && consistent(x); }

    Mask with(Polarity p) const;
    Mask pos() const { return with(Polarity::plus); }
    Mask neg() const { return with(Polarity::minus); }
    Mask neutral() const { return with(Polarity::neutral); }
    bool is_game() const { return neutral() == 0; }

    std::string show(Mask x) const;

    friend EventStructure make_es(std::string name, std::vector<std::string> ids,
                                  std::vector<Polarity> pol,
                                  std::vector<std::pair<int, int>> covers,
                                  std::vector<Mask> conflicts, std::vector<int> levels);
    friend bool operator==(const EventStructure& a, const EventStructure& b);

private:
    std::vector<std::string> ids_;
    std::vector<Polarity> pol_;
    std::vector<int> level_;
    std::vector<std::pair<int, int>> covers_;
    std::vector<Mask> conflicts_;
    std::vector<Mask> down_, up_, preds_;
    bool acyclic_ = true;
    std::unordered_map<std::string, int> index_;
};

// Normalises covers to the transitive reduction (when acyclic) and conflicts
// to sorted minimal sets. Throws Error on duplicate ids or out-of-range indices.
EventStructure make_es(std::string name, std::vector<std::string> ids, std::vector<Polarity> pol,
                       std::vector<std::pair<int, int>> covers, std::vector<Mask> conflicts,
                       std::vector<int> levels = {});

// Event structure with the given order whose configurations are exactly
// `configs` (which must be down-closed sets closed under the usual axioms).
EventStructure from_order_and_configs(std::string name, std::vector<std::string> ids,
                                      std::vector<Polarity> pol, const std::vector<Mask>& down,
                                      const std::vector<Mask>& configs,
                                      std::vector<int> levels = {});

Report validate_event_structure(const EventStructure& e);

// All finite configurations, sorted by (size, mask).
std::vector<Mask> all_configurations(const EventStructure& e, int cap = -1);
bool config_order(Mask a, Mask b);

// y ⊑ x: y has more Opponent and fewer Player moves
bool scott_leq(const EventStructure& a, Mask y, Mask x);
bool inc_minus(const EventStructure& a, Mask x, Mask y);   // x ⊆⁻ y
bool inc_plus(const EventStructure& a, Mask x, Mask y);    // x ⊆⁺ y (+ or neutral)

EventStructure dual(const EventStructure& a);
EventStructure parallel(const EventStructure& a, const EventStructure& b,
                        const std::string& ltag = "L.", const std::string& rtag = "R.");
Mask left_part(int left_size, Mask x);
Mask right_part(int left_size, Mask x);
inline Mask join(int left_size, Mask l, Mask r) { return l | (r << left_size); }

EventStructure hide(const EventStructure& e, Mask visible);
// index map from hide(e, visible) back into e
std::vector<int> hidden_index(Mask visible);

EventStructure rename(const EventStructure& e, const std::vector<std::string>& ids,
                      const std::string& name = "");
EventStructure with_levels(const EventStructure& e, std::vector<int> levels);

bool is_race_free(const EventStructure& a, Mask* wx = nullptr, Mask* wy = nullptr,
                  Mask* wz = nullptr);

// Partial map between event structures; fn[e] = -1 where undefined.
struct ESMap {
    EventStructure source;
    EventStructure target;
    std::vector<int> fn;

    bool total() const;
    Mask domain() const;
    Mask image(Mask x) const;
};

ESMap identity_map(const EventStructure& e);
ESMap compose_maps(const ESMap& g, const ESMap& f);  // g ∘ f
Report check_map(const ESMap& f, int cap = -1);
bool is_rigid(const ESMap& f);

struct Factorization {
    ESMap projection;    // source -> source↓V, identity on V
    ESMap defined_part;  // source↓V -> target, total
};
Factorization factorize_map(const ESMap& f);

}  // namespace cg
