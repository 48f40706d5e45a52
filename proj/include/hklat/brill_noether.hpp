#pragma once

#include <optional>
#include <string>

#include "hklat/hk_model.hpp"

namespace hklat {

// Existence query for the Severi variety of delta-nodal curves in |H| (genus
// p) whose normalizations carry a pencil of degree n (K3Hilb) or n+1 (Kummer).
struct SeveriQuery {
    Family family = Family::K3Hilb;
    Int p;      // arithmetic genus, p = s + 1
    Int delta;  // number of nodes
    int n;      // points of the Hilbert scheme / Kummer parameter
};

// floor((p-delta)/(2n-2)), resp. floor((p-delta-1)/(2n+2))
Int severi_alpha(const SeveriQuery& q);

bool severi_exists(const SeveriQuery& q);

struct SeveriDims {
    Int severi_dim;  // dimension of the Severi variety
    Int series_dim;  // dimension of the space of pencils on a general member
};
SeveriDims severi_dims(const SeveriQuery& q);

// class of the induced rational curve: H - (p-delta+n-1)tau, resp.
// H - (p-delta+n)eta
CurveClass curve_class_of_severi(const SeveriQuery& q, const HKModel& m);

// Brill-Noether number rho(g, 1, k) = g - 2(g - k + 1)
Int brill_noether_rho(const Int& g, const Int& k);

struct Witness {
    Int p, delta, g, alpha;
    Int severi_dim, series_dim, rho;
    // genericity conditions (base-point-free pencil, non-neutral nodes) are
    // existence statements asserted by the underlying theory, not computed
    bool genericity_asserted = true;
};

struct WitnessOutcome {
    std::optional<Witness> witness;
    std::string reason;  // set when witness is absent

    explicit operator bool() const { return witness.has_value(); }
};

// Severi data for the target curve class H - mu*tau on a degree-2s model:
// geometric genus g = mu - (n-1) (Kummer: mu - n), delta = p - g forced.
// Requires q(H - mu*tau) >= 0.
WitnessOutcome witness(Family family, int n, const Int& s, const Int& mu);

}  // namespace hklat
