#include "hklat/hk_model.hpp"

#include <stdexcept>

namespace hklat {

std::string family_name(Family f) { return f == Family::K3Hilb ? "k3hilb" : "kummer"; }

Family family_from_name(const std::string& s) {
    if (s == "k3hilb") return Family::K3Hilb;
    if (s == "kummer") return Family::Kummer;
    throw std::invalid_argument("unknown family '" + s + "' (expected k3hilb or kummer)");
}

HKModel model(Family family, int n, const Int& s) {
    if (n < 2) throw std::invalid_argument("model: n must be >= 2");
    if (s < 1) throw std::invalid_argument("model: s must be >= 1");
    return HKModel{family, n, s};
}

bool divisor_primitive(const DivisorClass& d) {
    if (d.a == 0 && d.b == 0) throw std::invalid_argument("divisor class must be nonzero");
    return gcd(d.a, d.b) == 1;
}

bool curve_primitive(const CurveClass& c) {
    if (c.a == 0 && c.mu == 0) throw std::invalid_argument("curve class must be nonzero");
    return gcd(c.a, c.mu) == 1;
}

Int q_divisor(const HKModel& m, const DivisorClass& d) {
    return d.a * d.a * 2 * m.s + d.b * d.b * m.q_exc();
}

Rat q_curve(const HKModel& m, const CurveClass& c) {
    Rat out(c.a * c.a * 2 * m.s);
    out -= make_rat(c.mu * c.mu, m.disc_order());
    out.canonicalize();
    return out;
}

CurveClass phi(const HKModel& m, const DivisorClass& d) {
    // q(aH + bB, -) evaluated on curves: the B-component pairs through
    // q(B) = -disc_order and B.tau = -1, so the tau-coefficient is -b*disc_order
    return CurveClass{d.a, -d.b * m.disc_order()};
}

Int degree(const HKModel& m, const DivisorClass& d, const CurveClass& c) {
    // tau-coefficient of c is -mu and B.tau = -1
    return d.a * c.a * 2 * m.s + d.b * c.mu;
}

DualDivisor dual_divisor(const HKModel& m, const CurveClass& c) {
    if (c.a != 1) throw std::invalid_argument("dual_divisor: curve class must have H-coefficient 1");
    if (c.mu < 0) throw std::invalid_argument("dual_divisor: mu must be >= 0");
    Int e = gcd(m.disc_order(), c.mu);  // mu == 0 gives e = disc_order
    Int t = m.disc_order() / e;
    return DualDivisor{DivisorClass{t, -c.mu / e}, t};
}

ProportionalDivisor primitive_dual_divisor(const HKModel& m, const CurveClass& c) {
    if (!curve_primitive(c)) throw std::invalid_argument("primitive_dual_divisor: curve class must be primitive");
    // phi^{-1}(aH - mu*tau) = aH - (mu/disc_order)B, cleared to a primitive
    // integral class
    Int am = c.a * m.disc_order();
    Int g = gcd(am, c.mu);
    return ProportionalDivisor{DivisorClass{am / g, -c.mu / g}, m.disc_order() / g};
}

Int fold_residue(const Int& c, const Int& order) {
    Int r = mod_pos(c, order);
    Int folded = order - r;
    return r < folded ? r : folded;
}

OrbitInvariant divisor_invariants(const HKModel& m, const DivisorClass& d) {
    if (!divisor_primitive(d)) throw std::invalid_argument("divisor_invariants: class must be primitive");
    // divisibility in the full ambient lattice: H pairs to gcd a, B to disc_order*b
    Int div = gcd(d.a, m.disc_order() * d.b);
    // [D/div] = (b*disc_order/div) [B/disc_order]
    Int residue = fold_residue(d.b * m.disc_order() / div, m.disc_order());
    return OrbitInvariant{Rat(q_divisor(m, d)), div, residue};
}

IntegerLattice ambient_lattice(const HKModel& m) {
    IntegerLattice u = lattice_U();
    if (m.family == Family::K3Hilb) {
        IntegerLattice e8 = lattice_E8neg();
        return direct_sum({u, u, u, e8, e8, lattice_rank1(m.q_exc())});
    }
    return direct_sum({u, u, u, lattice_rank1(m.q_exc())});
}

Vec embed_divisor(const HKModel& m, const DivisorClass& d) {
    int rank = m.family == Family::K3Hilb ? 23 : 7;
    Vec v(rank, Int(0));
    v[0] = d.a;
    v[1] = d.a * m.s;
    v[rank - 1] = d.b;
    return v;
}

namespace {

std::string term(const Int& coeff, const std::string& sym, bool leading) {
    std::string out;
    if (coeff == 0) return out;
    if (coeff > 0 && !leading) out += "+";
    if (coeff == -1)
        out += "-";
    else if (coeff != 1)
        out += coeff.get_str() + "*";
    out += sym;
    return out;
}

}  // namespace

std::string format_divisor(const DivisorClass& d) {
    std::string out = term(d.a, "H", true);
    out += term(d.b, "B", out.empty());
    return out.empty() ? "0" : out;
}

std::string format_curve(Family f, const CurveClass& c) {
    std::string sym = f == Family::K3Hilb ? "tau" : "eta";
    std::string out = term(c.a, "H", true);
    out += term(-c.mu, sym, out.empty());
    return out.empty() ? "0" : out;
}

}  // namespace hklat
