#pragma once

#include <json.hpp>

#include "hklat/brill_noether.hpp"
#include "hklat/hk_model.hpp"
#include "hklat/monodromy.hpp"

namespace hklat {

using json = nlohmann::json;

// integers render as JSON numbers while they fit, decimal strings beyond;
// rationals always render as exact "num/den" strings (never decimals)
json int_json(const Int& v);
json rat_json(const Rat& v);

Int int_from_json(const json& j, const std::string& field);
Rat rat_from_json(const json& j, const std::string& field);

// thrown on malformed input documents; carries the offending field
struct JsonFieldError : std::invalid_argument {
    std::string field;
    JsonFieldError(const std::string& f, const std::string& what)
        : std::invalid_argument("field '" + f + "': " + what), field(f) {}
};

void to_json(json& j, const HKModel& m);
void from_json(const json& j, HKModel& m);

void to_json(json& j, const DivisorClass& d);
void from_json(const json& j, DivisorClass& d);

void to_json(json& j, const CurveClass& c);
void from_json(const json& j, CurveClass& c);

void to_json(json& j, const OrbitInvariant& inv);
void from_json(const json& j, OrbitInvariant& inv);

void to_json(json& j, const NormalForm& nf);
void from_json(const json& j, NormalForm& nf);

void to_json(json& j, const Witness& w);

// lattice description: JSON array of "U" | "E8neg" | even integer, e.g. ["U","U",-2]
IntegerLattice lattice_from_json(const json& j);
Vec vec_from_json(const json& j, int rank, const std::string& field);

}  // namespace hklat
