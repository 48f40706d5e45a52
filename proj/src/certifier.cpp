#include "hklat/certifier.hpp"

#include <algorithm>
#include <stdexcept>

namespace hklat {

std::string reason_name(FailureReason r) {
    switch (r) {
        case FailureReason::Unrealizable: return "UNREALIZABLE";
        case FailureReason::NoIntegralS: return "NO_INTEGRAL_S";
        case FailureReason::WitnessMissing: return "WITNESS_MISSING";
        case FailureReason::EichlerMismatch: return "EICHLER_MISMATCH";
    }
    return "UNKNOWN";
}

bool certified(const CertifyResult& r) { return std::holds_alternative<Certificate>(r); }
const Certificate& get_certificate(const CertifyResult& r) { return std::get<Certificate>(r); }
const CertifyFailure& get_failure(const CertifyResult& r) { return std::get<CertifyFailure>(r); }

namespace {

Check make_check(std::string name, json inputs, json expected, json actual, bool pass) {
    return Check{std::move(name), std::move(inputs), std::move(expected), std::move(actual), pass};
}

// reflection along B: negates the B-coordinate, an isometry acting as -1 on
// the discriminant group
Vec reflect_exc(Vec v) {
    v.back() = -v.back();
    return v;
}

// shared tail of the positive and square-zero chains: normal-form checks,
// Eichler match on ambient embeddings, Severi witness checks
std::optional<CertifyFailure> run_chain(Certificate& cert) {
    const HKModel& m = cert.input_model;
    const NormalForm& nf = cert.normal_form;
    const HKModel nf_model = normal_form_model(nf);
    const DivisorClass nf_div = normal_form_divisor(nf);

    cert.checks.push_back(make_check("normal_form_square", json{{"normal_form", nf}, {"divisor", nf_div}},
                                     rat_json(cert.invariant.square), rat_json(Rat(q_divisor(nf_model, nf_div))),
                                     Rat(q_divisor(nf_model, nf_div)) == cert.invariant.square));

    OrbitInvariant nf_inv = divisor_invariants(nf_model, nf_div);
    cert.checks.push_back(make_check("normal_form_invariant", json{{"divisor", nf_div}, {"model", nf_model}},
                                     json(cert.invariant), json(nf_inv), nf_inv == cert.invariant));

    // Eichler equivalence of the two ambient embeddings; the residue fold may
    // require composing with the reflection along B
    IntegerLattice ambient = ambient_lattice(m);
    Vec v = embed_divisor(m, cert.dual);
    Vec w = embed_divisor(nf_model, nf_div);
    bool direct = eichler_equivalent(ambient, v, w);
    bool reflected = direct ? false : eichler_equivalent(ambient, reflect_exc(v), w);
    cert.checks.push_back(make_check(
        "eichler_orbit_match", json{{"v", json(cert.dual)}, {"w", json(nf_div)}, {"lattice", ambient.name}},
        true, json{{"direct", direct}, {"reflected", reflected}}, direct || reflected));
    if (!(direct || reflected))
        return CertifyFailure{FailureReason::EichlerMismatch,
                              "ambient embeddings are not equivalent under the stable orthogonal group",
                              json{{"invariant", cert.invariant}, {"normal_form", nf}}};

    WitnessOutcome wo = witness(nf.family, nf.n, nf.s, nf.mu);
    cert.checks.push_back(make_check("witness_found", json{{"s", int_json(nf.s)}, {"mu", int_json(nf.mu)}}, true,
                                     static_cast<bool>(wo), static_cast<bool>(wo)));
    if (!wo)
        return CertifyFailure{FailureReason::WitnessMissing, wo.reason, json{{"normal_form", nf}}};
    cert.witness = *wo.witness;
    const Witness& wit = cert.witness;

    SeveriQuery query{nf.family, wit.p, wit.delta, nf.n};
    Int alpha = severi_alpha(query);
    Int rhs = nf.family == Family::K3Hilb ? Int(alpha * (wit.p - wit.delta - (nf.n - 1) * (alpha + 1)))
                                          : Int(alpha * (wit.p - wit.delta - 1 - (nf.n + 1) * (alpha + 1)));
    cert.checks.push_back(make_check(
        "severi_inequality",
        json{{"p", int_json(wit.p)}, {"delta", int_json(wit.delta)}, {"n", nf.n}, {"alpha", int_json(alpha)}},
        json{{"delta_at_least", int_json(rhs)}}, json{{"delta", int_json(wit.delta)}}, wit.delta >= rhs));

    Int family_dim = nf.family == Family::K3Hilb ? Int(2 * nf.n - 2) : Int(2 * nf.n);
    cert.checks.push_back(make_check(
        "severi_dims", json{{"g", int_json(wit.g)}},
        json{{"total", int_json(family_dim)}},
        json{{"severi_dim", int_json(wit.severi_dim)}, {"series_dim", int_json(wit.series_dim)}},
        wit.severi_dim + wit.series_dim == family_dim));

    CurveClass nf_curve{Int(1), nf.mu};
    CurveClass from_severi = curve_class_of_severi(query, nf_model);
    cert.checks.push_back(make_check("witness_curve_class", json{{"query", json{{"p", int_json(wit.p)},
                                                                                {"delta", int_json(wit.delta)}}}},
                                     format_curve(nf.family, nf_curve), format_curve(nf.family, from_severi),
                                     from_severi.a == nf_curve.a && from_severi.mu == nf_curve.mu));

    // degree of the witnessed curve against the dual divisor equals q/t
    Int deg = degree(nf_model, nf_div, nf_curve);
    Rat expected_deg = cert.invariant.square / Rat(nf.t);
    bool deg_ok = Rat(deg) == expected_deg && (cert.zero_square ? deg == 0 : deg > 0);
    cert.checks.push_back(make_check("witness_degree", json{{"divisor", nf_div}, {"curve", json(nf_curve)}},
                                     rat_json(expected_deg), int_json(deg), deg_ok));

    for (const auto& c : cert.checks)
        if (!c.pass && c.name != "eichler_orbit_match" && c.name != "witness_found")
            throw std::logic_error("certificate self-consistency check failed: " + c.name);
    cert.valid = true;
    return std::nullopt;
}

Certificate start_certificate(const HKModel& m, const CurveClass& canonical) {
    Certificate cert;
    cert.input_model = m;
    cert.curve = canonical;
    return cert;
}

CurveClass canonicalize_curve(const CurveClass& c) {
    if (!curve_primitive(c)) throw std::invalid_argument("certify: curve class must be primitive");
    if (c.a < 1) throw std::invalid_argument("certify: curve class must lie on the polarization side (a >= 1)");
    return CurveClass{c.a, Int(abs(c.mu))};
}

}  // namespace

CertifyResult certify_positive(const HKModel& m, const CurveClass& c) {
    CurveClass canon = canonicalize_curve(c);
    Rat q = q_curve(m, canon);
    if (q <= 0) throw std::invalid_argument("certify_positive: q(curve) must be positive");

    Certificate cert = start_certificate(m, canon);
    cert.input_curve = c;
    cert.checks.push_back(make_check("curve_square_positive", json{{"curve", json(canon)}}, "q > 0", rat_json(q), true));

    ProportionalDivisor pd = primitive_dual_divisor(m, canon);
    cert.dual = pd.d;
    cert.dual_k = pd.k;
    CurveClass image = phi(m, pd.d);
    bool roundtrip = divisor_primitive(pd.d) && image.a == pd.k * canon.a && image.mu == pd.k * canon.mu;
    cert.checks.push_back(make_check("dual_divisor_roundtrip",
                                     json{{"divisor", json(pd.d)}, {"k", int_json(pd.k)}},
                                     json{{"phi", json(CurveClass{pd.k * canon.a, pd.k * canon.mu})}},
                                     json{{"phi", json(image)}}, roundtrip));
    if (!roundtrip) throw std::logic_error("certify_positive: duality roundtrip failed");

    cert.invariant = divisor_invariants(m, pd.d);
    bool real = realizable(m.family, m.n, cert.invariant.square.get_num(), cert.invariant.divisibility,
                           cert.invariant.residue);
    cert.checks.push_back(
        make_check("invariant_realizable", json(cert.invariant), true, real, real));
    if (!real)
        return CertifyFailure{FailureReason::Unrealizable, "invariant fails the realizability congruences",
                              json(cert.invariant)};

    try {
        cert.normal_form = mu_normal_form(m.family, m.n, cert.invariant);
    } catch (const NoRepresentative& e) {
        return CertifyFailure{FailureReason::NoIntegralS, e.what(), json(cert.invariant)};
    }

    if (auto fail = run_chain(cert)) return *fail;
    return cert;
}

CertifyResult certify_zero(const HKModel& m, const CurveClass& c) {
    CurveClass canon = canonicalize_curve(c);
    Rat q = q_curve(m, canon);
    if (q != 0) throw std::invalid_argument("certify_zero: q(curve) must be zero");
    // q = 0 with gcd(a, mu) = 1 forces a = 1
    if (canon.a != 1) throw std::logic_error("certify_zero: primitive square-zero class must have a = 1");

    Certificate cert = start_certificate(m, canon);
    cert.input_curve = c;
    cert.zero_square = true;
    cert.checks.push_back(make_check("curve_square_zero", json{{"curve", json(canon)}}, "q = 0", rat_json(q), true));

    DualDivisor dd = dual_divisor(m, canon);
    cert.dual = dd.d;
    cert.dual_k = dd.t;
    cert.invariant = divisor_invariants(m, dd.d);

    // scan the window [2(n-1), 3(n-1)] (inclusive lower endpoint; the strict
    // range often has no integral solution) for b with matching residue and
    // 2s(2n-2) = b^2 solvable
    const Int md = m.disc_order();
    const Int b_lo = md;
    const Int b_hi = md + md / 2;
    json scan = json::array();
    std::optional<Int> found_b, found_s;
    for (Int b = b_lo; b <= b_hi; ++b) {
        if (fold_residue(b, md) != cert.invariant.residue) continue;
        Int bb = b * b;
        if (!divides(2 * md, bb)) {
            scan.push_back(json{{"b", int_json(b)}, {"reason", "NO_INTEGRAL_S"}});
            continue;
        }
        found_b = b;
        found_s = bb / (2 * md);
        scan.push_back(json{{"b", int_json(b)}, {"s", int_json(*found_s)}});
        break;
    }
    cert.checks.push_back(make_check("square_zero_scan",
                                     json{{"window", json::array({int_json(b_lo), int_json(b_hi)})},
                                          {"residue", int_json(cert.invariant.residue)}},
                                     "integral s with matching residue", scan, found_b.has_value()));
    if (!found_b)
        return CertifyFailure{FailureReason::NoIntegralS,
                              "no b in the window has an integral s (flagged open range question)", scan};

    cert.endpoint_used = (*found_b == b_lo);
    Int e = gcd(md, *found_b);
    cert.normal_form = NormalForm{m.family, m.n, *found_s, md / e, *found_b};

    if (auto fail = run_chain(cert)) return *fail;
    return cert;
}

CertifyResult certify(const HKModel& m, const CurveClass& c) {
    CurveClass canon = canonicalize_curve(c);
    Rat q = q_curve(m, canon);
    if (q > 0) return certify_positive(m, c);
    if (q == 0) return certify_zero(m, c);
    throw std::invalid_argument("certify: negative Beauville-Bogomolov square is refused (q = " + q.get_str() + ")");
}

CertifyResult certify(const HKModel& m, const DivisorClass& d) {
    if (!divisor_primitive(d)) throw std::invalid_argument("certify: divisor class must be primitive");
    if (q_divisor(m, d) < 0)
        throw std::invalid_argument("certify: negative Beauville-Bogomolov square is refused (q = " +
                                    q_divisor(m, d).get_str() + ")");
    DivisorClass canon = d;
    if (canon.a < 0 || (canon.a == 0 && canon.b < 0)) canon = DivisorClass{Int(-canon.a), Int(-canon.b)};
    CurveClass image = phi(m, canon);
    Int g = gcd(image.a, image.mu);
    CurveClass curve{image.a / g, image.mu / g};

    CertifyResult res = certify(m, curve);
    if (certified(res)) {
        Certificate cert = get_certificate(res);
        cert.input_divisor = d;
        cert.input_curve.reset();
        return cert;
    }
    return res;
}

bool revalidate(const Certificate& cert) {
    CertifyResult redo = cert.input_divisor ? certify(cert.input_model, *cert.input_divisor)
                                            : certify(cert.input_model, *cert.input_curve);
    if (!certified(redo)) return false;
    return json(cert).dump() == json(get_certificate(redo)).dump();
}

void to_json(json& j, const Check& c) {
    j = json{{"name", c.name}, {"inputs", c.inputs}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}};
}

void to_json(json& j, const Certificate& cert) {
    j = json{{"input", json{{"model", cert.input_model}}},
             {"curve", cert.curve},
             {"dual_divisor", json{{"divisor", cert.dual}, {"k", int_json(cert.dual_k)}}},
             {"invariant", cert.invariant},
             {"normal_form", cert.normal_form},
             {"witness", cert.witness},
             {"zero_square", cert.zero_square},
             {"endpoint_used", cert.endpoint_used},
             {"checks", cert.checks},
             {"valid", cert.valid}};
    if (cert.input_divisor)
        j["input"]["divisor"] = *cert.input_divisor;
    else
        j["input"]["curve"] = *cert.input_curve;
}

void to_json(json& j, const CertifyFailure& f) {
    j = json{{"reason", reason_name(f.reason)}, {"detail", f.detail}, {"context", f.context}};
}

std::vector<OrbitInvariant> enumerate_positive_invariants(Family family, int n, const Int& square_bound) {
    if (n < 2) throw std::invalid_argument("coverage: n must be >= 2");
    if (square_bound <= 0) throw std::invalid_argument("coverage: square bound must be positive");
    const Int m = family == Family::K3Hilb ? Int(2 * n - 2) : Int(2 * n + 2);

    // (t, residue) pairs: folded residues carry their exact order
    std::vector<std::pair<Int, Int>> tr;
    for (Int r = 0; r <= m / 2; ++r) tr.emplace_back(m / gcd(m, r), r);
    std::sort(tr.begin(), tr.end());

    std::vector<OrbitInvariant> out;
    for (Int sq = 2; sq <= square_bound; sq += 2)
        for (const auto& [t, r] : tr)
            if (realizable(family, n, sq, t, r)) out.push_back(OrbitInvariant{Rat(sq), t, r});
    std::stable_sort(out.begin(), out.end(), [](const OrbitInvariant& a, const OrbitInvariant& b) {
        if (a.square != b.square) return a.square < b.square;
        if (a.divisibility != b.divisibility) return a.divisibility < b.divisibility;
        return a.residue < b.residue;
    });
    return out;
}

CoverageReport coverage(Family family, int n, const Int& square_bound, ExecPolicy policy) {
    CoverageReport report;
    report.family = family;
    report.n = n;
    report.square_bound = square_bound;
    const Int m = family == Family::K3Hilb ? Int(2 * n - 2) : Int(2 * n + 2);

    std::vector<OrbitInvariant> orbits = enumerate_positive_invariants(family, n, square_bound);
    const int no = static_cast<int>(orbits.size());
    std::vector<CertifyResult> results(no, CertifyFailure{});

    // representative distinct from the normal form: mu shifted by the
    // discriminant order, s adjusted to keep the square
    auto certify_orbit = [&](int i) {
        NormalForm nf = mu_normal_form(family, n, orbits[i]);
        Int alt_mu = nf.mu + m;
        Int alt_s = nf.s + nf.mu + m / 2;
        HKModel alt = model(family, n, alt_s);
        CertifyResult r = certify_positive(alt, CurveClass{Int(1), alt_mu});
        if (certified(r) && get_certificate(r).normal_form != nf)
            throw std::logic_error("coverage: representative did not reproduce its normal form");
        results[i] = std::move(r);
    };

    if (policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int i = 0; i < no; ++i) certify_orbit(i);
    } else {
        for (int i = 0; i < no; ++i) certify_orbit(i);
    }

    report.positive.total = no;
    for (int i = 0; i < no; ++i) {
        if (certified(results[i])) {
            report.positive.certified += 1;
            report.positive.certificates.push_back(get_certificate(results[i]));
        } else {
            const CertifyFailure& f = get_failure(results[i]);
            report.positive.failures.push_back(CoverageFailure{"positive", json(orbits[i]), f.reason, f.detail});
        }
    }

    // square-zero window: every b, solvable or not, is reported
    for (Int b = m; b <= m + m / 2; ++b) {
        report.zero.total += 1;
        Int bb = b * b;
        if (!divides(2 * m, bb)) {
            report.zero.failures.push_back(
                CoverageFailure{"zero", json{{"b", int_json(b)}, {"in_strict_window", b > m}},
                                FailureReason::NoIntegralS,
                                "2s*" + m.get_str() + " = " + bb.get_str() + " has no integral solution"});
            continue;
        }
        Int s = bb / (2 * m);
        CertifyResult r = certify_zero(model(family, n, s), CurveClass{Int(1), b});
        if (certified(r)) {
            report.zero.certified += 1;
            report.zero.certificates.push_back(get_certificate(r));
            if (get_certificate(r).endpoint_used)
                report.notes.push_back("square-zero b = " + b.get_str() +
                                       " uses the inclusive window endpoint 2(n-1)");
        } else {
            const CertifyFailure& f = get_failure(r);
            report.zero.failures.push_back(
                CoverageFailure{"zero", json{{"b", int_json(b)}, {"in_strict_window", b > m}}, f.reason, f.detail});
        }
    }
    if (family == Family::Kummer)
        report.notes.push_back("square-zero window for the Kummer family follows the K3 case by analogy");
    return report;
}

void to_json(json& j, const CoverageReport& r, bool include_certificates) {
    auto section = [&](const CoverageSection& s) {
        json out{{"total", s.total}, {"certified", s.certified}};
        json fails = json::array();
        for (const auto& f : s.failures)
            fails.push_back(json{{"kind", f.kind}, {"data", f.data}, {"reason", reason_name(f.reason)},
                                 {"detail", f.detail}});
        out["failures"] = fails;
        if (include_certificates) {
            json certs = json::array();
            for (const auto& c : s.certificates) certs.push_back(json(c));
            out["certificates"] = certs;
        } else {
            json orbits = json::array();
            for (const auto& c : s.certificates)
                orbits.push_back(json{{"invariant", c.invariant}, {"normal_form", c.normal_form}});
            out["orbits"] = orbits;
        }
        return out;
    };
    j = json{{"family", family_name(r.family)},
             {"n", r.n},
             {"square_bound", int_json(r.square_bound)},
             {"positive", section(r.positive)},
             {"zero", section(r.zero)},
             {"orbits_total", r.orbits_total()},
             {"orbits_certified", r.orbits_certified()},
             {"notes", r.notes}};
}

}  // namespace hklat
