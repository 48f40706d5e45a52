#pragma once

#include <cstdint>
#include <vector>

#include "hklat/hk_model.hpp"
#include "hklat/lattice.hpp"

namespace hklat {

enum class ExecPolicy { Serial, Parallel };

// Eichler's criterion: on a lattice with two declared hyperbolic summands,
// two primitive vectors lie in the same stable-orthogonal-group orbit iff
// they share square and discriminant class (compared exactly, not up to sign).
bool eichler_equivalent(const IntegerLattice& l, const Vec& v, const Vec& w);

enum class OracleResult { Reached, NotReachedWithinBound };

// Breadth-first search over images of v under the Eichler transvections
//   x -> x + (x.e)a - (x.a)e - q(a)/2 (x.e)e
// with e running over the declared isotropic basis vectors and a over the
// +-basis vectors orthogonal to e; states with a coordinate exceeding
// coeff_bound are pruned. Form and discriminant class are asserted at every
// step. Deterministic for fixed inputs.
OracleResult orbit_oracle(const IntegerLattice& l, const Vec& v, const Vec& w, long coeff_bound = 16);

// Connectivity census used to validate the criterion against the oracle:
// partitions the seeds into buckets of equal (square, disc class) and into
// bounded transvection components; within a bucket, two seeds are mutually
// reachable within the bound iff they share a component (generator set is
// closed under inverses, so bounded paths reverse).
struct OrbitCensus {
    long long buckets = 0;
    long long components = 0;
    long long equivalent_pairs = 0;  // ordered seed pairs, equal square and class
    long long reached_pairs = 0;     // of those, pairs in one bounded component
    long long states_explored = 0;
};
OrbitCensus orbit_census(const IntegerLattice& l, const std::vector<Vec>& seeds, long coeff_bound,
                         ExecPolicy policy = ExecPolicy::Serial);

// all primitive vectors of l with coordinates in [-box, box]
std::vector<Vec> primitive_box_vectors(const IntegerLattice& l, long box);

// Input filter for normal forms: t divides the discriminant order, residue
// has exact order t, and square/t^2 matches the discriminant form value of
// the residue mod 2Z.
bool realizable(Family family, int n, const Int& square, const Int& t, const Int& residue);

// Monodromy-orbit representative (S^[n] of a degree-2s K3, divisor
// tH - (mu/e)B with e = gcd(2n-2, mu)); Kummer analogue with 2n+2.
struct NormalForm {
    Family family = Family::K3Hilb;
    int n = 2;
    Int s;
    Int t;
    Int mu;

    bool operator==(const NormalForm&) const = default;
};

struct NoRepresentative : std::runtime_error {
    explicit NoRepresentative(const std::string& what) : std::runtime_error(what) {}
};

// canonical mu: disc_order + residue for a nontrivial residue (the window
// [2n-1, 3n-3] resp. [2n+3, 3n+3]), disc_order itself for the trivial one;
// solves 2s t^2 - (mu/e)^2 disc_order = square for s. Requires a realizable
// invariant with positive square.
NormalForm mu_normal_form(Family family, int n, const OrbitInvariant& inv);

DivisorClass normal_form_divisor(const NormalForm& nf);
HKModel normal_form_model(const NormalForm& nf);

}  // namespace hklat
