#pragma once

#include <string>

#include "hklat/lattice.hpp"

namespace hklat {

enum class Family { K3Hilb, Kummer };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

// Rank-2 Neron-Severi model of a Hilbert scheme of n points on a K3 surface
// of degree 2s (family K3Hilb), or of a generalized Kummer 2n-fold attached to
// an abelian surface of degree 2s (family Kummer). Divisor basis {H, B} with
// q(H) = 2s and B half the exceptional divisor; curve basis {H, tau}. For the
// Kummer family B and tau play the roles of e and eta.
struct HKModel {
    Family family = Family::K3Hilb;
    int n = 2;
    Int s = 1;

    // order of the ambient discriminant group: 2n-2, resp. 2n+2
    Int disc_order() const { return family == Family::K3Hilb ? Int(2 * n - 2) : Int(2 * n + 2); }
    // q(B) = -2(n-1), resp. q(e) = -2(n+1)
    Int q_exc() const { return -disc_order(); }
    // arithmetic genus of the polarization
    Int genus() const { return s + 1; }
};

HKModel model(Family family, int n, const Int& s);

struct DivisorClass {
    Int a, b;  // aH + bB
};

struct CurveClass {
    Int a, mu;  // aH - mu*tau
};

Int q_divisor(const HKModel& m, const DivisorClass& d);
Rat q_curve(const HKModel& m, const CurveClass& c);

// duality embedding on the {H, B} basis; lands on integral curve classes and
// preserves q
CurveClass phi(const HKModel& m, const DivisorClass& d);

// intersection pairing; (2H-5B).(H-5tau) = 2*14 - 25 = 3 on the Fano model
Int degree(const HKModel& m, const DivisorClass& d, const CurveClass& c);

// primitive divisor dual to H - mu*tau: t*H - (mu/e)B with e = gcd(disc_order, mu),
// t = disc_order/e; phi of it is t*(H - mu*tau)
struct DualDivisor {
    DivisorClass d;
    Int t;
};
DualDivisor dual_divisor(const HKModel& m, const CurveClass& c);

// primitive divisor proportional to an arbitrary primitive curve class
// (a >= 1): phi(d) = k * c
struct ProportionalDivisor {
    DivisorClass d;
    Int k;
};
ProportionalDivisor primitive_dual_divisor(const HKModel& m, const CurveClass& c);

// complete monodromy-orbit invariant of a primitive divisor class: square,
// ambient divisibility, and the discriminant residue sign-folded to
// [0, disc_order/2]
struct OrbitInvariant {
    Rat square;
    Int divisibility;
    Int residue;

    bool operator==(const OrbitInvariant&) const = default;
};
OrbitInvariant divisor_invariants(const HKModel& m, const DivisorClass& d);

Int fold_residue(const Int& c, const Int& order);

// full second-cohomology lattice: U^3 + E8(-1)^2 + <-2(n-1)> for K3Hilb,
// U^3 + <-2(n+1)> for Kummer; B is the last basis vector, H = e1 + s*f1
IntegerLattice ambient_lattice(const HKModel& m);
Vec embed_divisor(const HKModel& m, const DivisorClass& d);

bool divisor_primitive(const DivisorClass& d);
bool curve_primitive(const CurveClass& c);

std::string format_divisor(const DivisorClass& d);
std::string format_curve(Family f, const CurveClass& c);

}  // namespace hklat
