#include "hklat/monodromy.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hklat {

bool eichler_equivalent(const IntegerLattice& l, const Vec& v, const Vec& w) {
    if (l.hyperbolic_pairs.size() < 2)
        throw std::invalid_argument("eichler_equivalent: lattice has no declared U^2 summand");
    if (!is_primitive(l, v) || !is_primitive(l, w))
        throw std::invalid_argument("eichler_equivalent: vectors must be primitive");
    if (square(l, v) != square(l, w)) return false;
    DiscriminantGroup dg = discriminant_group(l);
    return disc_class(l, dg, v) == disc_class(l, dg, w);
}

namespace {

constexpr long kMagnitudeCap = 1L << 20;

long to_long_checked(const Int& x, const char* what) {
    if (!x.fits_slong_p() || x > kMagnitudeCap || x < -kMagnitudeCap)
        throw std::invalid_argument(std::string("orbit oracle: ") + what + " out of supported range");
    return x.get_si();
}

// Fixed-width working copy of a lattice plus its transvection generators and
// discriminant-class functionals. Read-only after construction.
struct OracleKernel {
    int rank;
    long bound;
    uint64_t radix;
    std::vector<long> gram;  // rank*rank
    struct Gen {
        int e;        // isotropic basis index
        int a;        // companion basis index, orthogonal to e
        long sa;      // +-1
        long half_qa; // q(a)/2
    };
    std::vector<Gen> gens;
    std::vector<long> factors;     // invariant factors > 1
    std::vector<long> class_rows;  // factors.size() x rank
    bool dense_visited;
    uint64_t space = 0;

    OracleKernel(const IntegerLattice& l, long coeff_bound) : rank(l.rank), bound(coeff_bound) {
        if (l.hyperbolic_pairs.size() < 2)
            throw std::invalid_argument("orbit oracle: lattice has no declared U^2 summand");
        if (bound < 1) throw std::invalid_argument("orbit oracle: coefficient bound must be positive");
        if (rank > 32) throw std::invalid_argument("orbit oracle: rank too large");
        radix = static_cast<uint64_t>(2 * bound + 1);

        unsigned __int128 sp = 1;
        for (int i = 0; i < rank; ++i) {
            sp *= radix;
            if (sp > static_cast<unsigned __int128>(std::numeric_limits<int64_t>::max()))
                throw std::invalid_argument("orbit oracle: state space too large for this rank/bound");
        }
        space = static_cast<uint64_t>(sp);
        dense_visited = space <= (uint64_t(1) << 28);

        gram.resize(static_cast<size_t>(rank) * rank);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j)
                gram[static_cast<size_t>(i) * rank + j] = to_long_checked(l.gram(i, j), "Gram entry");

        // isotropic basis vectors of the declared hyperbolic summands
        std::vector<int> isotropic;
        for (auto& p : l.hyperbolic_pairs) {
            isotropic.push_back(p.first);
            isotropic.push_back(p.second);
        }
        for (int e : isotropic)
            for (int a = 0; a < rank; ++a) {
                if (a == e) continue;                                      // identity
                if (gram[static_cast<size_t>(a) * rank + e] != 0) continue; // t(e,a) needs a orthogonal to e
                long qa = gram[static_cast<size_t>(a) * rank + a];
                gens.push_back(Gen{e, a, 1, qa / 2});
                gens.push_back(Gen{e, a, -1, qa / 2});
            }

        DiscriminantGroup dg = discriminant_group(l);
        for (size_t k = 0; k < dg.invariant_factors.size(); ++k) {
            factors.push_back(to_long_checked(dg.invariant_factors[k], "invariant factor"));
            for (int j = 0; j < rank; ++j)
                class_rows.push_back(to_long_checked(dg.class_rows(static_cast<int>(k), j), "class row entry"));
        }
    }

    uint64_t pack(const long* x) const {
        uint64_t key = 0;
        for (int i = rank - 1; i >= 0; --i) key = key * radix + static_cast<uint64_t>(x[i] + bound);
        return key;
    }
    void unpack(uint64_t key, long* x) const {
        for (int i = 0; i < rank; ++i) {
            x[i] = static_cast<long>(key % radix) - bound;
            key /= radix;
        }
    }
    void pairings(const long* x, long* y) const {
        for (int i = 0; i < rank; ++i) {
            long acc = 0;
            const long* row = gram.data() + static_cast<size_t>(i) * rank;
            for (int j = 0; j < rank; ++j) acc += row[j] * x[j];
            y[i] = acc;
        }
    }
    long square_of(const long* x) const {
        long y[32];
        pairings(x, y);
        long acc = 0;
        for (int i = 0; i < rank; ++i) acc += x[i] * y[i];
        return acc;
    }
    // discriminant data of x: div(x) followed by the class coefficients of
    // [x/div(x)]
    std::vector<long> class_key(const long* x) const {
        long y[32];
        pairings(x, y);
        long div = 0;
        for (int i = 0; i < rank; ++i) div = std::gcd(div, std::abs(y[i]));
        std::vector<long> key;
        key.push_back(div);
        for (size_t k = 0; k < factors.size(); ++k) {
            long c = 0;
            const long* row = class_rows.data() + k * rank;
            for (int j = 0; j < rank; ++j) c += row[j] * (y[j] / div);
            c %= factors[k];
            if (c < 0) c += factors[k];
            key.push_back(c);
        }
        return key;
    }
    // allocation-free comparison against a reference class key
    bool class_equals(const long* x, const std::vector<long>& ref) const {
        long y[32];
        pairings(x, y);
        long div = 0;
        for (int i = 0; i < rank; ++i) div = std::gcd(div, std::abs(y[i]));
        if (div != ref[0]) return false;
        for (size_t k = 0; k < factors.size(); ++k) {
            long c = 0;
            const long* row = class_rows.data() + k * rank;
            for (int j = 0; j < rank; ++j) c += row[j] * (y[j] / div);
            c %= factors[k];
            if (c < 0) c += factors[k];
            if (c != ref[k + 1]) return false;
        }
        return true;
    }
    bool in_box(const long* x) const {
        for (int i = 0; i < rank; ++i)
            if (x[i] > bound || x[i] < -bound) return false;
        return true;
    }
};

struct VisitedSet {
    bool dense;
    std::vector<bool> bits;
    std::unordered_set<uint64_t> set;

    VisitedSet(const OracleKernel& k) : dense(k.dense_visited) {
        if (dense)
            bits.assign(k.space, false);
        else
            set.reserve(1 << 16);
    }
    bool insert(uint64_t key) {
        if (dense) {
            if (bits[key]) return false;
            bits[key] = true;
            return true;
        }
        return set.insert(key).second;
    }
};

// BFS from `start`; reports every visited state through `on_state` (return
// false to stop the search). Asserts square and class conservation on every
// newly reached state.
template <typename OnState>
void transvection_bfs(const OracleKernel& k, uint64_t start, OnState&& on_state, long long* states_out) {
    long x[32], y[32], img[32];
    k.unpack(start, x);
    const long q0 = k.square_of(x);
    const std::vector<long> cls0 = k.class_key(x);

    VisitedSet visited(k);
    std::vector<uint64_t> queue;
    queue.push_back(start);
    visited.insert(start);
    long long states = 1;
    bool stop = !on_state(start);

    for (size_t head = 0; head < queue.size() && !stop; ++head) {
        k.unpack(queue[head], x);
        k.pairings(x, y);
        for (const auto& g : k.gens) {
            const long xe = y[g.e];
            const long xa = g.sa * y[g.a];
            if (xe == 0 && xa == 0) continue;
            for (int i = 0; i < k.rank; ++i) img[i] = x[i];
            // x + (x.e)a - (x.a)e - q(a)/2 (x.e)e
            img[g.a] += g.sa * xe;
            img[g.e] -= xa + g.half_qa * xe;
            if (!k.in_box(img)) continue;
            uint64_t key = k.pack(img);
            if (!visited.insert(key)) continue;
            if (k.square_of(img) != q0)
                throw std::logic_error("orbit oracle: transvection did not preserve the form");
            if (!k.class_equals(img, cls0))
                throw std::logic_error("orbit oracle: transvection moved the discriminant class");
            ++states;
            queue.push_back(key);
            if (!on_state(key)) {
                stop = true;
                break;
            }
        }
    }
    if (states_out) *states_out += states;
}

std::vector<long> to_longs(const Vec& v) {
    std::vector<long> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = to_long_checked(v[i], "coordinate");
    return out;
}

}  // namespace

OracleResult orbit_oracle(const IntegerLattice& l, const Vec& v, const Vec& w, long coeff_bound) {
    if (!is_primitive(l, v) || !is_primitive(l, w))
        throw std::invalid_argument("orbit_oracle: vectors must be primitive");
    if (square(l, v) != square(l, w)) throw std::invalid_argument("orbit_oracle: squares differ");
    if (v == w) return OracleResult::Reached;

    OracleKernel kernel(l, coeff_bound);
    std::vector<long> vl = to_longs(v), wl = to_longs(w);
    if (!kernel.in_box(vl.data()) || !kernel.in_box(wl.data()))
        throw std::invalid_argument("orbit_oracle: input coordinates exceed the coefficient bound");

    const uint64_t target = kernel.pack(wl.data());
    bool reached = false;
    transvection_bfs(
        kernel, kernel.pack(vl.data()),
        [&](uint64_t key) {
            if (key == target) {
                reached = true;
                return false;
            }
            return true;
        },
        nullptr);
    return reached ? OracleResult::Reached : OracleResult::NotReachedWithinBound;
}

std::vector<Vec> primitive_box_vectors(const IntegerLattice& l, long box) {
    std::vector<Vec> out;
    std::vector<long> x(l.rank, -box);
    while (true) {
        long g = 0;
        for (long c : x) g = std::gcd(g, std::abs(c));
        if (g == 1) {
            Vec v(l.rank);
            for (int i = 0; i < l.rank; ++i) v[i] = x[i];
            out.push_back(std::move(v));
        }
        int i = 0;
        while (i < l.rank && x[i] == box) x[i++] = -box;
        if (i == l.rank) break;
        ++x[i];
    }
    return out;
}

OrbitCensus orbit_census(const IntegerLattice& l, const std::vector<Vec>& seeds, long coeff_bound,
                         ExecPolicy policy) {
    OracleKernel kernel(l, coeff_bound);

    // bucket seeds by (square, div, class coefficients)
    std::map<std::vector<long>, std::vector<uint64_t>> buckets;
    for (const auto& s : seeds) {
        if (!is_primitive(l, s)) throw std::invalid_argument("orbit_census: seeds must be primitive");
        std::vector<long> sl = to_longs(s);
        if (!kernel.in_box(sl.data())) throw std::invalid_argument("orbit_census: seed exceeds coefficient bound");
        std::vector<long> key = kernel.class_key(sl.data());
        key.insert(key.begin(), kernel.square_of(sl.data()));
        buckets[key].push_back(kernel.pack(sl.data()));
    }

    std::vector<std::vector<uint64_t>> bucket_list;
    bucket_list.reserve(buckets.size());
    for (auto& kv : buckets) bucket_list.push_back(std::move(kv.second));

    const int nb = static_cast<int>(bucket_list.size());
    std::vector<long long> comp_count(nb, 0), eq_pairs(nb, 0), rc_pairs(nb, 0), states(nb, 0);

    auto process_bucket = [&](int bi) {
        std::vector<uint64_t>& members = bucket_list[bi];
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        const long long nmem = static_cast<long long>(members.size());
        eq_pairs[bi] = nmem * (nmem - 1);

        std::unordered_map<uint64_t, int> pending;  // member -> index, not yet assigned
        for (size_t i = 0; i < members.size(); ++i) pending.emplace(members[i], static_cast<int>(i));

        while (!pending.empty()) {
            uint64_t start = pending.begin()->first;
            // deterministic choice: smallest pending member
            for (auto& kv : pending) start = std::min(start, kv.first);
            long long found = 0;
            transvection_bfs(
                kernel, start,
                [&](uint64_t key) {
                    auto it = pending.find(key);
                    if (it != pending.end()) {
                        pending.erase(it);
                        ++found;
                    }
                    return !pending.empty();  // early stop once every member is placed
                },
                &states[bi]);
            comp_count[bi] += 1;
            rc_pairs[bi] += found * (found - 1);
        }
    };

    if (policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int bi = 0; bi < nb; ++bi) process_bucket(bi);
    } else {
        for (int bi = 0; bi < nb; ++bi) process_bucket(bi);
    }

    OrbitCensus census;
    census.buckets = nb;
    for (int bi = 0; bi < nb; ++bi) {
        census.components += comp_count[bi];
        census.equivalent_pairs += eq_pairs[bi];
        census.reached_pairs += rc_pairs[bi];
        census.states_explored += states[bi];
    }
    return census;
}

bool realizable(Family family, int n, const Int& square, const Int& t, const Int& residue) {
    if (n < 2) throw std::invalid_argument("realizable: n must be >= 2");
    if (t < 1) throw std::invalid_argument("realizable: divisibility must be positive");
    const Int m = family == Family::K3Hilb ? Int(2 * n - 2) : Int(2 * n + 2);
    if (!divides(t, m)) return false;
    const Int r = mod_pos(residue, m);
    if (m / gcd(m, r) != t) return false;  // exact order
    // square/t^2 == -r^2/m modulo 2Z
    Rat lhs = make_rat(square, t * t) + make_rat(r * r, m);
    return mod2z(lhs) == 0;
}

NormalForm mu_normal_form(Family family, int n, const OrbitInvariant& inv) {
    if (!is_integral(inv.square))
        throw std::invalid_argument("mu_normal_form: divisor-side invariant must have integral square");
    const Int sq = inv.square.get_num();
    if (sq <= 0) throw std::invalid_argument("mu_normal_form: square must be positive");
    if (!realizable(family, n, sq, inv.divisibility, inv.residue))
        throw std::invalid_argument("mu_normal_form: invariant fails the realizability filter");

    const Int m = family == Family::K3Hilb ? Int(2 * n - 2) : Int(2 * n + 2);
    const Int r = fold_residue(inv.residue, m);
    const Int mu = r == 0 ? m : m + r;
    const Int e = gcd(m, mu);
    const Int t = m / e;
    if (t != inv.divisibility) throw std::logic_error("mu_normal_form: divisibility drifted from residue order");

    // 2s t^2 - (mu/e)^2 m = square
    const Int num = sq + (mu / e) * (mu / e) * m;
    const Int den = 2 * t * t;
    if (!divides(den, num) || num <= 0)
        throw NoRepresentative("no positive integral s solves 2s*t^2 - (mu/e)^2*" + m.get_str() + " = " +
                               sq.get_str() + " at mu = " + mu.get_str());
    return NormalForm{family, n, num / den, t, mu};
}

DivisorClass normal_form_divisor(const NormalForm& nf) {
    const Int m = nf.family == Family::K3Hilb ? Int(2 * nf.n - 2) : Int(2 * nf.n + 2);
    return DivisorClass{nf.t, -nf.mu * nf.t / m};
}

HKModel normal_form_model(const NormalForm& nf) { return model(nf.family, nf.n, nf.s); }

}  // namespace hklat
