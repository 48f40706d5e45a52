#include "hklat/brill_noether.hpp"

#include <stdexcept>

namespace hklat {

namespace {

void validate_query(const SeveriQuery& q) {
    if (q.n < 2) throw std::invalid_argument("severi: n must be >= 2");
    if (q.p < 2) throw std::invalid_argument("severi: p must be >= 2");
    if (q.delta < 0) throw std::invalid_argument("severi: delta must be >= 0");
    if (q.family == Family::K3Hilb) {
        if (q.delta > q.p) throw std::invalid_argument("severi: delta must be <= p");
    } else {
        if (q.delta > q.p - 2) throw std::invalid_argument("severi: delta must be <= p-2");
    }
}

}  // namespace

Int severi_alpha(const SeveriQuery& q) {
    if (q.family == Family::K3Hilb) return floor_div(q.p - q.delta, Int(2 * q.n - 2));
    return floor_div(q.p - q.delta - 1, Int(2 * q.n + 2));
}

bool severi_exists(const SeveriQuery& q) {
    validate_query(q);
    Int alpha = severi_alpha(q);
    if (q.family == Family::K3Hilb)
        return q.delta >= alpha * (q.p - q.delta - (q.n - 1) * (alpha + 1));
    return q.delta >= alpha * (q.p - q.delta - 1 - (q.n + 1) * (alpha + 1));
}

SeveriDims severi_dims(const SeveriQuery& q) {
    if (!severi_exists(q)) throw std::invalid_argument("severi_dims: empty Severi locus");
    const Int g = q.p - q.delta;
    const Int total = q.family == Family::K3Hilb ? Int(2 * q.n - 2) : Int(2 * q.n);
    SeveriDims out;
    out.severi_dim = g < total ? g : total;
    out.series_dim = g < total ? Int(total - g) : Int(0);
    if (out.severi_dim + out.series_dim != total)
        throw std::logic_error("severi_dims: family dimension mismatch");
    return out;
}

CurveClass curve_class_of_severi(const SeveriQuery& q, const HKModel& m) {
    if (q.family != m.family) throw std::invalid_argument("curve_class_of_severi: family mismatch");
    if (m.genus() != q.p) throw std::invalid_argument("curve_class_of_severi: model degree does not match genus p");
    Int mu = q.p - q.delta + (q.family == Family::K3Hilb ? q.n - 1 : q.n);
    return CurveClass{Int(1), mu};
}

Int brill_noether_rho(const Int& g, const Int& k) { return g - 2 * (g - k + 1); }

WitnessOutcome witness(Family family, int n, const Int& s, const Int& mu) {
    if (n < 2 || s < 1) throw std::invalid_argument("witness: need n >= 2 and s >= 1");
    if (mu < 0) throw std::invalid_argument("witness: mu must be >= 0");
    HKModel m = model(family, n, s);
    if (q_curve(m, CurveClass{Int(1), mu}) < 0)
        throw std::invalid_argument("witness: q(H - mu*tau) < 0");

    Int g = family == Family::K3Hilb ? mu - (n - 1) : mu - n;
    Int p = s + 1;
    Int delta = p - g;
    if (g < 0) return {std::nullopt, "negative geometric genus g = " + g.get_str()};
    if (delta < 0) return {std::nullopt, "delta = p - g = " + delta.get_str() + " < 0 (genus exceeds p)"};
    if (family == Family::Kummer && delta > p - 2)
        return {std::nullopt, "delta = " + delta.get_str() + " exceeds p-2"};

    SeveriQuery q{family, p, delta, n};
    if (!severi_exists(q)) return {std::nullopt, "Severi existence inequality fails"};

    SeveriDims dims = severi_dims(q);
    Witness w;
    w.p = p;
    w.delta = delta;
    w.g = g;
    w.alpha = severi_alpha(q);
    w.severi_dim = dims.severi_dim;
    w.series_dim = dims.series_dim;
    w.rho = brill_noether_rho(g, family == Family::K3Hilb ? Int(n) : Int(n + 1));
    return {w, ""};
}

}  // namespace hklat
