// hklat: exact lattice arithmetic for K3^[n] and generalized Kummer models —
// orbit invariants, Eichler normal forms, Severi existence tests, and
// end-to-end rational-curve certificates.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "hklat/certifier.hpp"

using namespace hklat;

namespace {

enum ExitCode { kOk = 0, kNegative = 1, kBadInput = 2, kInternal = 3 };

struct CliConfig {
    std::string format = "json";  // json | table
    long coeff_bound = 16;
    bool verbose = false;
};

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i) flatten(j.at(i), prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

void emit(const json& j, const CliConfig& cfg) {
    if (cfg.format == "table") {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(j, "", rows);
        size_t width = 0;
        for (auto& r : rows) width = std::max(width, r.first.size());
        for (auto& r : rows) std::cout << r.first << std::string(width - r.first.size() + 2, ' ') << r.second << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

void vlog(const CliConfig& cfg, const std::string& line) {
    if (cfg.verbose) std::cerr << "hklat: " << line << "\n";
}

json parse_json_arg(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw JsonFieldError(what, std::string("malformed JSON: ") + e.what());
    }
}

Int parse_int_arg(const std::string& text, const std::string& what) {
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw JsonFieldError(what, "not an integer");
    }
}

DivisorClass divisor_arg(const std::string& text) {
    DivisorClass d;
    from_json(parse_json_arg(text, "divisor"), d);
    return d;
}

CurveClass curve_arg(const std::string& text) {
    CurveClass c;
    from_json(parse_json_arg(text, "curve"), c);
    return c;
}

int run_invariants(const CliConfig& cfg, Family family, int n, const std::string& s,
                   const std::string& divisor, const std::string& curve) {
    HKModel m = model(family, n, parse_int_arg(s, "s"));
    DivisorClass d;
    json extra;
    if (!divisor.empty()) {
        d = divisor_arg(divisor);
    } else {
        CurveClass c = curve_arg(curve);
        if (c.a < 0 || (c.a == 0)) throw JsonFieldError("curve", "H-coefficient must be positive");
        ProportionalDivisor pd = primitive_dual_divisor(m, CurveClass{c.a, Int(abs(c.mu))});
        d = pd.d;
        extra = json{{"curve", c}, {"k", int_json(pd.k)}};
    }
    OrbitInvariant inv = divisor_invariants(m, d);
    json out{{"model", m}, {"divisor", d}, {"invariant", inv},
             {"q", rat_json(Rat(q_divisor(m, d)))}, {"dual_curve", phi(m, d)}};
    if (!extra.is_null()) out["from"] = extra;
    emit(out, cfg);
    return kOk;
}

int run_normal_form(const CliConfig& cfg, Family family, int n, const std::string& square,
                    const std::string& div, const std::string& residue, const std::string& s,
                    const std::string& divisor, const std::string& curve) {
    OrbitInvariant inv;
    if (!square.empty()) {
        inv.square = Rat(parse_int_arg(square, "square"));
        inv.divisibility = parse_int_arg(div, "divisibility");
        inv.residue = parse_int_arg(residue, "residue");
    } else {
        HKModel m = model(family, n, parse_int_arg(s, "s"));
        if (!divisor.empty()) {
            inv = divisor_invariants(m, divisor_arg(divisor));
        } else {
            CurveClass c = curve_arg(curve);
            ProportionalDivisor pd = primitive_dual_divisor(m, CurveClass{c.a, Int(abs(c.mu))});
            inv = divisor_invariants(m, pd.d);
        }
    }
    if (!realizable(family, n, inv.square.get_num(), inv.divisibility, inv.residue)) {
        emit(json{{"invariant", inv}, {"realizable", false}}, cfg);
        return kNegative;
    }
    NormalForm nf = mu_normal_form(family, n, inv);
    emit(json{{"invariant", inv}, {"realizable", true}, {"normal_form", nf},
              {"divisor", normal_form_divisor(nf)},
              {"dual_curve", format_curve(family, CurveClass{Int(1), nf.mu})}},
         cfg);
    return kOk;
}

int run_severi(const CliConfig& cfg, Family family, int n, const std::string& p, const std::string& delta) {
    SeveriQuery q{family, parse_int_arg(p, "p"), parse_int_arg(delta, "delta"), n};
    bool exists = severi_exists(q);
    json out{{"family", family_name(family)}, {"p", int_json(q.p)}, {"delta", int_json(q.delta)},
             {"n", n},        {"alpha", int_json(severi_alpha(q))},  {"exists", exists}};
    if (exists) {
        SeveriDims dims = severi_dims(q);
        out["severi_dim"] = int_json(dims.severi_dim);
        out["series_dim"] = int_json(dims.series_dim);
        if (q.p >= 2) {
            HKModel m = model(family, n, q.p - 1);
            out["curve_class"] = format_curve(family, curve_class_of_severi(q, m));
        }
    }
    emit(out, cfg);
    return exists ? kOk : kNegative;
}

int run_witness(const CliConfig& cfg, Family family, int n, const std::string& s, const std::string& mu) {
    WitnessOutcome w = witness(family, n, parse_int_arg(s, "s"), parse_int_arg(mu, "mu"));
    if (!w) {
        emit(json{{"witness", nullptr}, {"reason", w.reason}}, cfg);
        return kNegative;
    }
    emit(json{{"witness", *w.witness}}, cfg);
    return kOk;
}

int run_certify(const CliConfig& cfg, Family family, int n, const std::string& s,
                const std::string& divisor, const std::string& curve, bool verify) {
    if (verify) {
        json doc;
        try {
            doc = json::parse(std::cin);
        } catch (const json::parse_error& e) {
            throw JsonFieldError("certificate", std::string("malformed JSON on stdin: ") + e.what());
        }
        if (!doc.contains("input")) throw JsonFieldError("input", "missing");
        HKModel m;
        from_json(doc.at("input").at("model"), m);
        CertifyResult redo = [&]() -> CertifyResult {
            if (doc.at("input").contains("divisor")) {
                DivisorClass d;
                from_json(doc.at("input").at("divisor"), d);
                return certify(m, d);
            }
            CurveClass c;
            from_json(doc.at("input").at("curve"), c);
            return certify(m, c);
        }();
        if (!certified(redo)) {
            emit(json{{"verified", false}, {"failure", get_failure(redo)}}, cfg);
            return kNegative;
        }
        json recomputed = json(get_certificate(redo));
        bool identical = recomputed.dump() == doc.dump();
        emit(json{{"verified", identical}, {"certificate", recomputed}}, cfg);
        return identical ? kOk : kNegative;
    }

    HKModel m = model(family, n, parse_int_arg(s, "s"));
    CertifyResult r = divisor.empty() ? certify(m, curve_arg(curve)) : certify(m, divisor_arg(divisor));
    if (certified(r))
        vlog(cfg, "certified via normal form mu = " + get_certificate(r).normal_form.mu.get_str() + ", s = " +
                      get_certificate(r).normal_form.s.get_str());
    if (!certified(r)) {
        emit(json(get_failure(r)), cfg);
        return kNegative;
    }
    emit(json(get_certificate(r)), cfg);
    return kOk;
}

int run_coverage(const CliConfig& cfg, Family family, int n, const std::string& bound, bool serial, bool full) {
    CoverageReport rep = coverage(family, n, parse_int_arg(bound, "square-bound"),
                                  serial ? ExecPolicy::Serial : ExecPolicy::Parallel);
    vlog(cfg, std::to_string(rep.orbits_certified()) + "/" + std::to_string(rep.orbits_total()) +
                  " orbits certified (" + (serial ? "serial" : "parallel") + " sweep)");
    json out;
    to_json(out, rep, full);
    emit(out, cfg);
    return rep.positive.failures.empty() ? kOk : kNegative;
}

int run_oracle(const CliConfig& cfg, const std::string& lattice, const std::string& v, const std::string& w) {
    IntegerLattice l = lattice_from_json(parse_json_arg(lattice, "lattice"));
    Vec vv = vec_from_json(parse_json_arg(v, "v"), l.rank, "v");
    Vec wv = vec_from_json(parse_json_arg(w, "w"), l.rank, "w");
    bool criterion = eichler_equivalent(l, vv, wv);
    OracleResult res = orbit_oracle(l, vv, wv, cfg.coeff_bound);
    bool reached = res == OracleResult::Reached;
    if (reached && !criterion) throw std::logic_error("oracle reached a non-equivalent vector");
    emit(json{{"lattice", l.name},
              {"eichler_equivalent", criterion},
              {"oracle", reached ? "Reached" : "NotReachedWithinBound"},
              {"coeff_bound", cfg.coeff_bound}},
         cfg);
    return reached ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Beauville-Bogomolov lattice tool: invariants, normal forms, Severi tests, certificates"};
    app.require_subcommand(1);

    CliConfig cfg;
    app.add_option("--format", cfg.format, "output format: json or table")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
    app.add_option("--coeff-bound", cfg.coeff_bound, "coefficient bound for the transvection oracle")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--verbose", cfg.verbose, "extra diagnostics on stderr");

    std::string family_str = "k3hilb", s, p, delta, mu, square, div, residue, bound, divisor, curve, lattice, v, w;
    int n = 2;
    bool verify = false, serial = false, full = false;

    auto add_family = [&](CLI::App* cmd, bool with_n = true) {
        cmd->add_option("--family", family_str, "k3hilb or kummer")->check(CLI::IsMember({"k3hilb", "kummer"}));
        if (with_n) cmd->add_option("--n", n, "number of points (n >= 2)")->required();
    };

    CLI::App* inv_cmd = app.add_subcommand("invariants", "orbit invariant of a divisor or curve class");
    add_family(inv_cmd);
    inv_cmd->add_option("--s", s, "half the polarization square")->required();
    inv_cmd->add_option("--divisor", divisor, "divisor class JSON {\"a\":..,\"b\":..}");
    inv_cmd->add_option("--curve", curve, "curve class JSON {\"a\":..,\"mu\":..}");

    CLI::App* nf_cmd = app.add_subcommand("normal-form", "monodromy-orbit normal form of an invariant or class");
    add_family(nf_cmd);
    nf_cmd->add_option("--square", square, "invariant square");
    nf_cmd->add_option("--divisibility", div, "invariant divisibility");
    nf_cmd->add_option("--residue", residue, "invariant residue");
    nf_cmd->add_option("--s", s, "half the polarization square (with --divisor/--curve)");
    nf_cmd->add_option("--divisor", divisor, "divisor class JSON");
    nf_cmd->add_option("--curve", curve, "curve class JSON");

    CLI::App* sev_cmd = app.add_subcommand("severi", "Severi existence and dimensions");
    add_family(sev_cmd);
    sev_cmd->add_option("--p", p, "arithmetic genus")->required();
    sev_cmd->add_option("--delta", delta, "number of nodes")->required();

    CLI::App* wit_cmd = app.add_subcommand("witness", "Severi witness for the curve class H - mu*tau");
    add_family(wit_cmd);
    wit_cmd->add_option("--s", s, "half the polarization square")->required();
    wit_cmd->add_option("--mu", mu, "tau-coefficient")->required();

    CLI::App* cert_cmd = app.add_subcommand("certify", "rational-curve certificate for a class");
    add_family(cert_cmd, false);
    cert_cmd->add_option("--n", n, "number of points (n >= 2)");
    cert_cmd->add_option("--s", s, "half the polarization square");
    cert_cmd->add_option("--divisor", divisor, "divisor class JSON");
    cert_cmd->add_option("--curve", curve, "curve class JSON");
    cert_cmd->add_flag("--verify", verify, "re-validate a certificate JSON read from stdin");

    CLI::App* cov_cmd = app.add_subcommand("coverage", "certify every orbit up to a square bound");
    add_family(cov_cmd);
    cov_cmd->add_option("--square-bound", bound, "largest square to enumerate")->required();
    cov_cmd->add_flag("--serial", serial, "disable the parallel sweep");
    cov_cmd->add_flag("--full", full, "embed full certificates in the report");

    CLI::App* ora_cmd = app.add_subcommand("oracle", "transvection-orbit oracle on an explicit lattice");
    ora_cmd->add_option("--lattice", lattice, "summand list JSON, e.g. [\"U\",\"U\",-2]")->required();
    ora_cmd->add_option("--v", v, "start vector JSON array")->required();
    ora_cmd->add_option("--w", w, "target vector JSON array")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        Family family = family_from_name(family_str);
        if (inv_cmd->parsed()) {
            if (divisor.empty() == curve.empty())
                throw JsonFieldError("divisor", "provide exactly one of --divisor / --curve");
            return run_invariants(cfg, family, n, s, divisor, curve);
        }
        if (nf_cmd->parsed()) {
            if (square.empty() && divisor.empty() && curve.empty())
                throw JsonFieldError("square", "provide --square/--divisibility/--residue or --s with a class");
            if (!square.empty() && (div.empty() || residue.empty()))
                throw JsonFieldError("divisibility", "missing (required with --square)");
            if (square.empty() && s.empty()) throw JsonFieldError("s", "missing (required with --divisor/--curve)");
            return run_normal_form(cfg, family, n, square, div, residue, s, divisor, curve);
        }
        if (sev_cmd->parsed()) return run_severi(cfg, family, n, p, delta);
        if (wit_cmd->parsed()) return run_witness(cfg, family, n, s, mu);
        if (cert_cmd->parsed()) {
            if (!verify) {
                if (s.empty()) throw JsonFieldError("s", "missing");
                if (divisor.empty() == curve.empty())
                    throw JsonFieldError("curve", "provide exactly one of --divisor / --curve");
            }
            return run_certify(cfg, family, n, s, divisor, curve, verify);
        }
        if (cov_cmd->parsed()) return run_coverage(cfg, family, n, bound, serial, full);
        if (ora_cmd->parsed()) return run_oracle(cfg, lattice, v, w);
        std::cerr << "no subcommand\n";
        return kBadInput;
    } catch (const JsonFieldError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal failure: " << e.what() << "\n";
        return kInternal;
    }
}
