#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hklat/certifier.hpp"

using namespace hklat;

namespace {

bool check_passed(const Certificate& cert, const std::string& name) {
    for (const auto& c : cert.checks)
        if (c.name == name) return c.pass;
    return false;
}

}  // namespace

TEST_CASE("Fano certificate end to end") {
    HKModel m = model(Family::K3Hilb, 2, Int(7));
    CertifyResult r = certify_positive(m, CurveClass{Int(1), Int(5)});
    REQUIRE(certified(r));
    const Certificate& cert = get_certificate(r);

    CHECK(cert.valid);
    CHECK(cert.dual.a == 2);
    CHECK(cert.dual.b == -5);
    CHECK(cert.invariant.square == 6);
    CHECK(cert.invariant.divisibility == 2);
    CHECK(cert.invariant.residue == 1);
    CHECK(cert.normal_form.s == 3);
    CHECK(cert.normal_form.t == 2);
    CHECK(cert.normal_form.mu == 3);
    CHECK(cert.witness.p == 4);
    CHECK(cert.witness.delta == 2);
    CHECK(cert.witness.g == 2);
    CHECK(cert.witness.alpha == 1);
    CHECK(check_passed(cert, "eichler_orbit_match"));
    CHECK(check_passed(cert, "severi_inequality"));
    CHECK(check_passed(cert, "witness_degree"));
    for (const auto& c : cert.checks) CHECK(c.pass);

    CHECK(revalidate(cert));
}

TEST_CASE("trivial-residue certificate via H") {
    for (int n : {2, 3, 5}) {
        HKModel m = model(Family::K3Hilb, n, Int(4));
        CertifyResult r = certify(m, CurveClass{Int(1), Int(0)});
        REQUIRE(certified(r));
        const Certificate& cert = get_certificate(r);
        CHECK(cert.normal_form.mu == 2 * n - 2);
        CHECK(cert.normal_form.t == 1);
        CHECK(cert.normal_form.s == 4 + n - 1);
        CHECK(cert.witness.g == n - 1);
        CHECK(cert.witness.alpha == 0);
        CHECK(revalidate(cert));
    }
}

TEST_CASE("divisor input routes through its primitive dual curve") {
    HKModel m = model(Family::K3Hilb, 2, Int(7));
    CertifyResult r = certify(m, DivisorClass{Int(2), Int(-5)});
    REQUIRE(certified(r));
    const Certificate& cert = get_certificate(r);
    CHECK(cert.curve.a == 1);
    CHECK(cert.curve.mu == 5);
    CHECK(cert.normal_form.mu == 3);
    REQUIRE(cert.input_divisor.has_value());
    CHECK(revalidate(cert));
}

TEST_CASE("residue folding and the reflected eichler branch") {
    // mu = -5 is the reflected Fano class; certificates canonicalize to mu = 5
    HKModel m = model(Family::K3Hilb, 2, Int(7));
    CertifyResult r = certify(m, CurveClass{Int(1), Int(-5)});
    REQUIRE(certified(r));
    CHECK(get_certificate(r).curve.mu == 5);

    // n=5: mu = 5 has raw dual residue 3 (lower half of Z/8) while the normal
    // form carries 8 - 3 = 5; only the reflection along B matches the classes
    HKModel m5 = model(Family::K3Hilb, 5, Int(2));
    CertifyResult rd = certify(m5, CurveClass{Int(1), Int(5)});
    REQUIRE(certified(rd));
    const Certificate& cert = get_certificate(rd);
    bool saw_reflected = false;
    for (const auto& c : cert.checks)
        if (c.name == "eichler_orbit_match") saw_reflected = c.actual.at("reflected") == true;
    CHECK(saw_reflected);
    CHECK(revalidate(cert));

    // mu = 11 has raw dual residue 5 = 8 - 3: the direct comparison holds
    CertifyResult ru = certify(model(Family::K3Hilb, 5, Int(8)), CurveClass{Int(1), Int(11)});
    REQUIRE(certified(ru));
    bool saw_direct = false;
    for (const auto& c : get_certificate(ru).checks)
        if (c.name == "eichler_orbit_match") saw_direct = c.actual.at("direct") == true;
    CHECK(saw_direct);
}

TEST_CASE("square-zero certificates") {
    // n=2: H - 2tau on a degree-2 K3; the window forces b=2, s=1
    HKModel m = model(Family::K3Hilb, 2, Int(1));
    CertifyResult r = certify(m, CurveClass{Int(1), Int(2)});
    REQUIRE(certified(r));
    const Certificate& cert = get_certificate(r);
    CHECK(cert.zero_square);
    CHECK(cert.endpoint_used);  // b = 2(n-1) = 2
    CHECK(cert.normal_form.s == 1);
    CHECK(cert.normal_form.mu == 2);
    CHECK(cert.witness.p == 2);
    CHECK(cert.witness.delta == 1);
    CHECK(cert.witness.g == 1);
    CHECK(revalidate(cert));

    // n=3: b=4, s=2 with witness (p=3, delta=1, g=2)
    HKModel m3 = model(Family::K3Hilb, 3, Int(2));
    CertifyResult r3 = certify(m3, CurveClass{Int(1), Int(4)});
    REQUIRE(certified(r3));
    const Certificate& cert3 = get_certificate(r3);
    CHECK(cert3.normal_form.s == 2);
    CHECK(cert3.normal_form.mu == 4);
    CHECK(cert3.witness.p == 3);
    CHECK(cert3.witness.delta == 1);
    CHECK(cert3.witness.g == 2);

    // a zero class whose mu sits far outside the window still certifies
    // through the window representative: n=2, mu=6, s=9
    HKModel m9 = model(Family::K3Hilb, 2, Int(9));
    CertifyResult r9 = certify(m9, CurveClass{Int(1), Int(6)});
    REQUIRE(certified(r9));
    CHECK(get_certificate(r9).normal_form.mu == 2);

    // square-zero divisor input dispatches through its dual curve
    CertifyResult rd = certify(model(Family::K3Hilb, 2, Int(1)), DivisorClass{Int(1), Int(-1)});
    REQUIRE(certified(rd));
    CHECK(get_certificate(rd).zero_square);
    CHECK(revalidate(get_certificate(rd)));
}

TEST_CASE("every actual square-zero class certifies") {
    // mu = km +- b implies mu^2 = b^2 mod 2m (m even), so the window scan
    // always finds an integral s for a class that exists
    for (int fam = 0; fam < 2; ++fam) {
        Family family = fam ? Family::Kummer : Family::K3Hilb;
        for (int n = 2; n <= 10; ++n) {
            Int m = family == Family::K3Hilb ? Int(2 * n - 2) : Int(2 * n + 2);
            for (Int mu = 1; mu <= 6 * m; ++mu) {
                if (!divides(2 * m, mu * mu)) continue;
                Int s = mu * mu / (2 * m);
                if (s < 1) continue;
                CertifyResult r = certify_zero(model(family, n, s), CurveClass{Int(1), mu});
                REQUIRE(certified(r));
                CHECK(get_certificate(r).valid);
            }
        }
    }
}

TEST_CASE("negative squares are refused everywhere") {
    HKModel m = model(Family::K3Hilb, 2, Int(1));
    CHECK_THROWS_AS(certify(m, CurveClass{Int(1), Int(5)}), std::invalid_argument);
    CHECK_THROWS_AS(certify_positive(m, CurveClass{Int(1), Int(5)}), std::invalid_argument);
    CHECK_THROWS_AS(certify_zero(m, CurveClass{Int(1), Int(5)}), std::invalid_argument);
    CHECK_THROWS_AS(certify(m, DivisorClass{Int(0), Int(1)}), std::invalid_argument);
    CHECK_THROWS_AS(certify(m, CurveClass{Int(2), Int(4)}), std::invalid_argument);  // imprimitive

    // Kummer: H - 7*eta with s=2 has q = 4 - 49/6 < 0 even though mu sits in
    // the witness window
    HKModel kum = model(Family::Kummer, 2, Int(2));
    CHECK(q_curve(kum, CurveClass{Int(1), Int(7)}) < 0);
    CHECK_THROWS_AS(certify_positive(kum, CurveClass{Int(1), Int(7)}), std::invalid_argument);
    CHECK_THROWS_AS(certify(kum, CurveClass{Int(1), Int(7)}), std::invalid_argument);
}

TEST_CASE("coverage sweep at n=2") {
    CoverageReport rep = coverage(Family::K3Hilb, 2, Int(10), ExecPolicy::Serial);
    // positive orbits with square <= 10: five trivial-residue squares plus the
    // Fano orbit (6, 2, 1)
    CHECK(rep.positive.total == 6);
    CHECK(rep.positive.certified == 6);
    CHECK(rep.positive.failures.empty());
    bool fano_seen = false;
    for (const auto& cert : rep.positive.certificates)
        if (cert.invariant == OrbitInvariant{Rat(6), Int(2), Int(1)}) fano_seen = true;
    CHECK(fano_seen);

    // zero window [2,3]: b=2 certifies, b=3 has no integral s
    CHECK(rep.zero.total == 2);
    CHECK(rep.zero.certified == 1);
    REQUIRE(rep.zero.failures.size() == 1);
    CHECK(rep.zero.failures[0].reason == FailureReason::NoIntegralS);
    CHECK(rep.zero.failures[0].data.at("b") == 3);

    CHECK(rep.orbits_total() == rep.orbits_certified() + static_cast<long long>(rep.positive.failures.size()) +
                                    static_cast<long long>(rep.zero.failures.size()));

    // enumeration matches the realizable filter by definition
    CHECK(static_cast<long long>(enumerate_positive_invariants(Family::K3Hilb, 2, Int(10)).size()) ==
          rep.positive.total);
}

TEST_CASE("coverage Kummer n=2") {
    CoverageReport rep = coverage(Family::Kummer, 2, Int(10), ExecPolicy::Serial);
    CHECK(rep.positive.total == 7);
    CHECK(rep.positive.failures.empty());
    for (const auto& cert : rep.positive.certificates) {
        CHECK(cert.normal_form.mu >= 6);
        CHECK(cert.normal_form.mu <= 9);
    }

    // zero window [6, 9]: only b = 6 solves 12s = b^2
    CHECK(rep.zero.total == 4);
    CHECK(rep.zero.certified == 1);
    REQUIRE(rep.zero.certificates.size() == 1);
    CHECK(rep.zero.certificates[0].normal_form.s == 3);
    CHECK(rep.zero.certificates[0].normal_form.mu == 6);
    CHECK(rep.zero.failures.size() == 3);
    for (const auto& f : rep.zero.failures) CHECK(f.reason == FailureReason::NoIntegralS);
}

TEST_CASE("coverage serial and parallel reports are identical") {
    for (int n : {2, 3}) {
        CoverageReport a = coverage(Family::K3Hilb, n, Int(40), ExecPolicy::Serial);
        CoverageReport b = coverage(Family::K3Hilb, n, Int(40), ExecPolicy::Parallel);
        json ja, jb;
        to_json(ja, a, true);
        to_json(jb, b, true);
        CHECK(ja.dump() == jb.dump());
    }
}

TEST_CASE("coverage certificates revalidate byte-identically") {
    CoverageReport rep = coverage(Family::K3Hilb, 3, Int(30), ExecPolicy::Parallel);
    CHECK(rep.positive.failures.empty());
    for (const auto& cert : rep.positive.certificates) CHECK(revalidate(cert));
    for (const auto& cert : rep.zero.certificates) CHECK(revalidate(cert));
}

TEST_CASE("certificate JSON shape") {
    HKModel m = model(Family::K3Hilb, 2, Int(7));
    Certificate cert = get_certificate(certify(m, CurveClass{Int(1), Int(5)}));
    json j = cert;
    CHECK(j.at("valid") == true);
    CHECK(j.at("invariant").at("square") == "6");
    CHECK(j.at("normal_form").at("s") == 3);
    CHECK(j.at("input").at("model").at("s") == 7);
    for (const auto& c : j.at("checks")) {
        CHECK(c.contains("name"));
        CHECK(c.contains("inputs"));
        CHECK(c.contains("expected"));
        CHECK(c.contains("actual"));
        CHECK(c.at("pass") == true);
    }
}
