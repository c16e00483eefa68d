#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cg/game_extensions.hpp"
#include "cg/lifting.hpp"
#include "cg/optics.hpp"
#include "cg/text_format.hpp"

namespace cg {

// Looks up an es file named inside another file.
using Resolver = std::function<EventStructure(const std::string& ref)>;
Resolver directory_resolver(const std::string& dir);

// header keyword: es family strategy cfun wins levels lens goi dlens span presentation manifest
std::string file_kind(const std::string& text);

// family <name> / [event <id> <+|-|0>] / config <id>...
StableFamily parse_family(const std::string& text);
std::string write_family(const StableFamily& f);

// strategy <name> / carrier <es> / game <es> | source <es> target <es> / label <carrier-id> <game-id>
struct StrategyRefs {
    std::string carrier, game, source, target;
};
Strategy parse_strategy(const std::string& text, const Resolver& resolve);
std::string write_strategy(const Strategy& s, const StrategyRefs& refs);

// cfun <name> <source> <target> / map <ids> -> <ids>
ConfigFunction parse_cfun(const std::string& text, const Resolver& resolve);
std::string write_cfun(const ConfigFunction& f, const std::string& source_ref, const std::string& target_ref);

// wins <game> / config <ids>
WinningConditions parse_wins(const std::string& text, const Resolver& resolve);
std::string write_wins(const WinningConditions& w, const std::string& game_ref);

// levels <name> / level <k>... / prec <k> <k′>
AccessOrder parse_levels(const std::string& text);
std::string write_levels(const AccessOrder& o);

// lens <name> <source> <target> / fwd <ids> -> <ids> / bwd <ids> | <ids> -> <ids>
Lens parse_lens(const std::string& text, const Resolver& resolve);
std::string write_lens(const Lens& l, const std::string& source_ref, const std::string& target_ref);
// dlens, same layout
DependentLens parse_dlens(const std::string& text, const Resolver& resolve);
std::string write_dlens(const DependentLens& l, const std::string& source_ref, const std::string& target_ref);
// goi <name> <source> <target> / map <x1> | <y2> -> <x2> | <y1>
GoIPair parse_goi(const std::string& text, const Resolver& resolve);
std::string write_goi(const GoIPair& p, const std::string& source_ref, const std::string& target_ref);
// span <name> <source> <target> <vertex> / out <v> <b> / dem <v> <ids>
StableSpan parse_span(const std::string& text, const Resolver& resolve);
std::string write_span(const StableSpan& sp, const std::string& source_ref, const std::string& target_ref,
                       const std::string& vertex_ref);

// Files on disk. Referenced es files sit next to the referencing file and are
// named <stem>.<role>.es.
std::string dir_of(const std::string& path);
std::string stem_of(const std::string& path);
EventStructure load_es(const std::string& path);
void save_es(const EventStructure& e, const std::string& path);
Strategy load_strategy(const std::string& path);
void save_strategy(const Strategy& s, const std::string& path);
void save_lens(const Lens& l, const std::string& path);
void save_dlens(const DependentLens& l, const std::string& path);
void save_goi(const GoIPair& p, const std::string& path);
void save_span(const StableSpan& sp, const std::string& path);
void save_cfun(const ConfigFunction& f, const std::string& path);

// presentation <name> / source <es> / target <es> / residual <es> /
// forward <strategy> / backward <strategy> / optic <strategy>
Presentation load_presentation(const std::string& path);
void save_presentation(const Presentation& p, const std::string& path);

struct Manifest {
    std::string name;
    std::vector<std::string> items;  // paths relative to the manifest
};
Manifest parse_manifest(const std::string& text);

using Object = std::variant<EventStructure, StableFamily, Strategy, ConfigFunction, WinningConditions, AccessOrder,
                            Lens, DependentLens, GoIPair, StableSpan, Presentation, Manifest>;
std::string kind_of(const Object& o);
std::string name_of(const Object& o);
Object load_object(const std::string& path);
// the validator for the object's kind
Report validate_object(const Object& o);

// Loaded objects by name; a second object under a taken name must be equal to the first.
class Workspace {
public:
    const Object& load(const std::string& path);
    const std::map<std::string, Object>& objects() const { return by_name_; }

private:
    std::map<std::string, Object> by_name_;
    std::map<std::string, std::string> path_of_;
};

}  // namespace cg
