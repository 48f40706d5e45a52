#include "hklat/json_io.hpp"

namespace hklat {

json int_json(const Int& v) {
    if (v.fits_slong_p()) return static_cast<int64_t>(v.get_si());
    return v.get_str();
}

json rat_json(const Rat& v) { return v.get_str(); }

Int int_from_json(const json& j, const std::string& field) {
    if (!j.contains(field)) throw JsonFieldError(field, "missing");
    const json& v = j.at(field);
    if (v.is_number_integer()) return Int(static_cast<long>(v.get<int64_t>()));
    if (v.is_string()) {
        try {
            return Int(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw JsonFieldError(field, "not an integer");
        }
    }
    throw JsonFieldError(field, "expected an integer or decimal string");
}

Rat rat_from_json(const json& j, const std::string& field) {
    if (!j.contains(field)) throw JsonFieldError(field, "missing");
    const json& v = j.at(field);
    try {
        if (v.is_number_integer()) return Rat(static_cast<long>(v.get<int64_t>()));
        if (v.is_string()) {
            Rat r(v.get<std::string>());
            r.canonicalize();
            return r;
        }
    } catch (const std::invalid_argument&) {
        throw JsonFieldError(field, "not a rational");
    }
    throw JsonFieldError(field, "expected a rational \"num/den\" string");
}

void to_json(json& j, const HKModel& m) {
    j = json{{"family", family_name(m.family)}, {"n", m.n}, {"s", int_json(m.s)}};
}

void from_json(const json& j, HKModel& m) {
    if (!j.contains("family") || !j.at("family").is_string()) throw JsonFieldError("family", "missing or not a string");
    Family f;
    try {
        f = family_from_name(j.at("family").get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw JsonFieldError("family", e.what());
    }
    Int n = int_from_json(j, "n");
    if (!n.fits_sint_p()) throw JsonFieldError("n", "out of range");
    m = model(f, static_cast<int>(n.get_si()), int_from_json(j, "s"));
}

void to_json(json& j, const DivisorClass& d) { j = json{{"a", int_json(d.a)}, {"b", int_json(d.b)}}; }

void from_json(const json& j, DivisorClass& d) {
    d.a = int_from_json(j, "a");
    d.b = int_from_json(j, "b");
    if (d.a == 0 && d.b == 0) throw JsonFieldError("a", "divisor class must be nonzero");
}

void to_json(json& j, const CurveClass& c) { j = json{{"a", int_json(c.a)}, {"mu", int_json(c.mu)}}; }

void from_json(const json& j, CurveClass& c) {
    c.a = int_from_json(j, "a");
    c.mu = int_from_json(j, "mu");
    if (c.a == 0 && c.mu == 0) throw JsonFieldError("a", "curve class must be nonzero");
}

void to_json(json& j, const OrbitInvariant& inv) {
    j = json{{"square", rat_json(inv.square)},
             {"divisibility", int_json(inv.divisibility)},
             {"residue", int_json(inv.residue)}};
}

void from_json(const json& j, OrbitInvariant& inv) {
    inv.square = rat_from_json(j, "square");
    inv.divisibility = int_from_json(j, "divisibility");
    inv.residue = int_from_json(j, "residue");
    if (inv.divisibility < 1) throw JsonFieldError("divisibility", "must be positive");
}

void to_json(json& j, const NormalForm& nf) {
    j = json{{"family", family_name(nf.family)},
             {"n", nf.n},
             {"s", int_json(nf.s)},
             {"t", int_json(nf.t)},
             {"mu", int_json(nf.mu)}};
}

void from_json(const json& j, NormalForm& nf) {
    if (!j.contains("family") || !j.at("family").is_string()) throw JsonFieldError("family", "missing or not a string");
    nf.family = family_from_name(j.at("family").get<std::string>());
    Int n = int_from_json(j, "n");
    nf.n = static_cast<int>(n.get_si());
    nf.s = int_from_json(j, "s");
    nf.t = int_from_json(j, "t");
    nf.mu = int_from_json(j, "mu");
}

void to_json(json& j, const Witness& w) {
    j = json{{"p", int_json(w.p)},
             {"delta", int_json(w.delta)},
             {"g", int_json(w.g)},
             {"alpha", int_json(w.alpha)},
             {"severi_dim", int_json(w.severi_dim)},
             {"series_dim", int_json(w.series_dim)},
             {"rho", int_json(w.rho)},
             {"genericity", "asserted-by-theorem"}};
}

IntegerLattice lattice_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw JsonFieldError("lattice", "expected a nonempty array of summands");
    std::vector<IntegerLattice> parts;
    for (const auto& part : j) {
        if (part.is_string()) {
            std::string s = part.get<std::string>();
            if (s == "U")
                parts.push_back(lattice_U());
            else if (s == "E8neg")
                parts.push_back(lattice_E8neg());
            else
                throw JsonFieldError("lattice", "unknown summand '" + s + "' (expected U, E8neg, or an even integer)");
        } else if (part.is_number_integer()) {
            parts.push_back(lattice_rank1(Int(static_cast<long>(part.get<int64_t>()))));
        } else {
            throw JsonFieldError("lattice", "summand must be a string or an even integer");
        }
    }
    return direct_sum(parts);
}

Vec vec_from_json(const json& j, int rank, const std::string& field) {
    if (!j.is_array()) throw JsonFieldError(field, "expected an array of integers");
    if (static_cast<int>(j.size()) != rank)
        throw JsonFieldError(field, "expected " + std::to_string(rank) + " coordinates, got " + std::to_string(j.size()));
    Vec v(rank);
    for (int i = 0; i < rank; ++i) {
        const json& c = j.at(i);
        if (c.is_number_integer())
            v[i] = Int(static_cast<long>(c.get<int64_t>()));
        else if (c.is_string())
            v[i] = Int(c.get<std::string>());
        else
            throw JsonFieldError(field + "[" + std::to_string(i) + "]", "not an integer");
    }
    return v;
}

}  // namespace hklat
