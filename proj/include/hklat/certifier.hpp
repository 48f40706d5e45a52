#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "hklat/brill_noether.hpp"
#include "hklat/json_io.hpp"
#include "hklat/monodromy.hpp"

namespace hklat {

enum class FailureReason { Unrealizable, NoIntegralS, WitnessMissing, EichlerMismatch };
std::string reason_name(FailureReason r);

struct Check {
    std::string name;
    json inputs;
    json expected;
    json actual;
    bool pass = false;
};

// Verifiable chain from an input class to a Severi witness of a rational
// curve in its monodromy orbit. Emitted only when every check passes.
struct Certificate {
    HKModel input_model;
    std::optional<DivisorClass> input_divisor;
    std::optional<CurveClass> input_curve;

    CurveClass curve;     // canonical primitive curve, a >= 1, mu >= 0
    DivisorClass dual;    // primitive divisor with phi(dual) = dual_k * curve
    Int dual_k;
    OrbitInvariant invariant;
    NormalForm normal_form;
    Witness witness;

    bool zero_square = false;
    bool endpoint_used = false;  // square-zero scan needed b = 2(n-1)
    std::vector<Check> checks;
    bool valid = false;
};

struct CertifyFailure {
    FailureReason reason;
    std::string detail;
    json context;
};

using CertifyResult = std::variant<Certificate, CertifyFailure>;

bool certified(const CertifyResult& r);
const Certificate& get_certificate(const CertifyResult& r);
const CertifyFailure& get_failure(const CertifyResult& r);

// primitive curve class with q > 0
CertifyResult certify_positive(const HKModel& m, const CurveClass& c);
// primitive curve class with q = 0; scans b over [2(n-1), 3(n-1)]
CertifyResult certify_zero(const HKModel& m, const CurveClass& c);
// dispatch on the sign of q; negative squares are refused
CertifyResult certify(const HKModel& m, const CurveClass& c);
CertifyResult certify(const HKModel& m, const DivisorClass& d);

// recompute the certificate from its recorded input and compare the
// serializations byte for byte
bool revalidate(const Certificate& cert);

void to_json(json& j, const Check& c);
void to_json(json& j, const Certificate& cert);
void to_json(json& j, const CertifyFailure& f);

struct CoverageFailure {
    std::string kind;  // "positive" | "zero"
    json data;
    FailureReason reason;
    std::string detail;
};

struct CoverageSection {
    long long total = 0;
    long long certified = 0;
    std::vector<Certificate> certificates;
    std::vector<CoverageFailure> failures;
};

struct CoverageReport {
    Family family = Family::K3Hilb;
    int n = 2;
    Int square_bound;
    CoverageSection positive;  // one entry per realizable positive-square orbit
    CoverageSection zero;      // one entry per b in the square-zero window
    std::vector<std::string> notes;

    long long orbits_total() const { return positive.total + zero.total; }
    long long orbits_certified() const { return positive.certified + zero.certified; }
};

// all realizable (square, t, residue) with 0 < square <= bound, in
// lexicographic order
std::vector<OrbitInvariant> enumerate_positive_invariants(Family family, int n, const Int& square_bound);

// certify every realizable positive-square orbit up to the bound (through a
// non-normal-form representative) plus the square-zero window; failures land
// in the report
CoverageReport coverage(Family family, int n, const Int& square_bound, ExecPolicy policy = ExecPolicy::Parallel);

void to_json(json& j, const CoverageReport& r, bool include_certificates = false);

}  // namespace hklat
