#include "hklat/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace hklat {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vec mat_vec(const Mat& m, const Vec& v) {
    if (static_cast<int>(v.size()) != m.cols) throw std::invalid_argument("mat_vec: dimension mismatch");
    Vec out(m.rows, Int(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out[i] += m(i, j) * v[j];
    return out;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
    Mat out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < b.cols; ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

namespace {

void validate_lattice(const IntegerLattice& l) {
    if (l.rank <= 0) throw std::invalid_argument("lattice: rank must be positive");
    if (l.gram.rows != l.rank || l.gram.cols != l.rank)
        throw std::invalid_argument("lattice: Gram matrix size mismatch");
    for (int i = 0; i < l.rank; ++i) {
        if (!is_even(l.gram(i, i))) throw std::invalid_argument("lattice: odd diagonal entry (lattice must be even)");
        for (int j = i + 1; j < l.rank; ++j)
            if (l.gram(i, j) != l.gram(j, i)) throw std::invalid_argument("lattice: Gram matrix not symmetric");
    }
    if (determinant(l) == 0) throw std::invalid_argument("lattice: degenerate Gram matrix");
}

}  // namespace

IntegerLattice lattice_U() {
    IntegerLattice l;
    l.rank = 2;
    l.gram = Mat(2, 2);
    l.gram(0, 1) = 1;
    l.gram(1, 0) = 1;
    l.hyperbolic_pairs = {{0, 1}};
    l.name = "U";
    validate_lattice(l);
    return l;
}

IntegerLattice lattice_E8neg() {
    // simple-root basis, Bourbaki numbering: chain 1-3-4-5-6-7-8, node 2 on 4
    static const int edges[7][2] = {{0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
    IntegerLattice l;
    l.rank = 8;
    l.gram = Mat(8, 8);
    for (int i = 0; i < 8; ++i) l.gram(i, i) = -2;
    for (auto& e : edges) {
        l.gram(e[0], e[1]) = 1;
        l.gram(e[1], e[0]) = 1;
    }
    l.name = "E8(-1)";
    validate_lattice(l);
    return l;
}

IntegerLattice lattice_rank1(const Int& k) {
    if (k == 0 || !is_even(k)) throw std::invalid_argument("rank1 lattice: k must be a nonzero even integer");
    IntegerLattice l;
    l.rank = 1;
    l.gram = Mat(1, 1);
    l.gram(0, 0) = k;
    l.name = "<" + k.get_str() + ">";
    validate_lattice(l);
    return l;
}

IntegerLattice direct_sum(const IntegerLattice& l1, const IntegerLattice& l2) {
    IntegerLattice l;
    l.rank = l1.rank + l2.rank;
    l.gram = Mat(l.rank, l.rank);
    for (int i = 0; i < l1.rank; ++i)
        for (int j = 0; j < l1.rank; ++j) l.gram(i, j) = l1.gram(i, j);
    for (int i = 0; i < l2.rank; ++i)
        for (int j = 0; j < l2.rank; ++j) l.gram(l1.rank + i, l1.rank + j) = l2.gram(i, j);
    l.hyperbolic_pairs = l1.hyperbolic_pairs;
    for (auto& p : l2.hyperbolic_pairs) l.hyperbolic_pairs.emplace_back(p.first + l1.rank, p.second + l1.rank);
    l.name = l1.name + " + " + l2.name;
    return l;
}

IntegerLattice direct_sum(const std::vector<IntegerLattice>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct_sum: no summands");
    IntegerLattice acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = direct_sum(acc, parts[i]);
    return acc;
}

Int evaluate(const IntegerLattice& l, const Vec& v, const Vec& w) {
    if (static_cast<int>(v.size()) != l.rank || static_cast<int>(w.size()) != l.rank)
        throw std::invalid_argument("evaluate: dimension mismatch");
    Int out = 0;
    for (int i = 0; i < l.rank; ++i) {
        if (v[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < l.rank; ++j) row += l.gram(i, j) * w[j];
        out += v[i] * row;
    }
    return out;
}

Int square(const IntegerLattice& l, const Vec& v) { return evaluate(l, v, v); }

bool is_primitive(const IntegerLattice& l, const Vec& v) {
    if (static_cast<int>(v.size()) != l.rank) throw std::invalid_argument("is_primitive: dimension mismatch");
    Int g = 0;
    for (auto& c : v) g = gcd(g, c);
    if (g == 0) throw std::invalid_argument("is_primitive: zero vector");
    return g == 1;
}

Int divisibility(const IntegerLattice& l, const Vec& v) {
    Vec pair = mat_vec(l.gram, v);
    Int g = 0;
    for (auto& c : pair) g = gcd(g, c);
    if (g == 0) throw std::invalid_argument("divisibility: zero vector");
    return g;
}

Int determinant(const IntegerLattice& l) {
    // Bareiss fraction-free elimination
    Mat a = l.gram;
    int n = a.rows;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

void swap_rows(Mat& m, int i, int j) {
    for (int c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}
void swap_cols(Mat& m, int i, int j) {
    for (int r = 0; r < m.rows; ++r) std::swap(m(r, i), m(r, j));
}
// row i -= q * row t
void row_sub(Mat& m, int i, int t, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < m.cols; ++c) m(i, c) -= q * m(t, c);
}
void col_sub(Mat& m, int j, int t, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < m.rows; ++r) m(r, j) -= q * m(r, t);
}

}  // namespace

SmithDecomposition smith_normal_form(Mat a) {
    const int n = a.rows, m = a.cols;
    Mat u = Mat::identity(n);
    Mat v = Mat::identity(m);

    int t = 0;
    while (t < n && t < m) {
        // pick the nonzero entry of smallest absolute value as pivot
        int pi = -1, pj = -1;
        for (int i = t; i < n; ++i)
            for (int j = t; j < m; ++j) {
                if (a(i, j) == 0) continue;
                if (pi < 0 || cmp(abs(a(i, j)), abs(a(pi, pj))) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // rest is zero
        if (pi != t) {
            swap_rows(a, pi, t);
            swap_rows(u, pi, t);
        }
        if (pj != t) {
            swap_cols(a, pj, t);
            swap_cols(v, pj, t);
        }

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < n; ++i) {
                if (a(i, t) == 0) continue;
                Int q = round_div(a(i, t), a(t, t));
                row_sub(a, i, t, q);
                row_sub(u, i, t, q);
                if (a(i, t) != 0) {
                    // remainder strictly smaller than pivot: promote it
                    swap_rows(a, i, t);
                    swap_rows(u, i, t);
                    clean = false;
                }
            }
            for (int j = t + 1; j < m; ++j) {
                if (a(t, j) == 0) continue;
                Int q = round_div(a(t, j), a(t, t));
                col_sub(a, j, t, q);
                col_sub(v, j, t, q);
                if (a(t, j) != 0) {
                    swap_cols(a, j, t);
                    swap_cols(v, j, t);
                    clean = false;
                }
            }
        }

        // pivot must divide the remaining submatrix for the divisor chain
        bool restart = false;
        for (int i = t + 1; i < n && !restart; ++i)
            for (int j = t + 1; j < m && !restart; ++j)
                if (!divides(a(t, t), a(i, j))) {
                    // fold row i into row t and re-reduce at the same corner
                    for (int c = 0; c < m; ++c) a(t, c) += a(i, c);
                    for (int c = 0; c < n; ++c) u(t, c) += u(i, c);
                    restart = true;
                }
        if (restart) continue;
        ++t;
    }

    for (int i = 0; i < std::min(n, m); ++i)
        if (a(i, i) < 0) {
            for (int c = 0; c < m; ++c) a(i, c) = -a(i, c);
            for (int c = 0; c < n; ++c) u(i, c) = -u(i, c);
        }

    return SmithDecomposition{std::move(a), std::move(u), std::move(v)};
}

DiscriminantGroup discriminant_group(const IntegerLattice& l) {
    SmithDecomposition snf = smith_normal_form(l.gram);
    DiscriminantGroup dg;
    std::vector<int> idx;
    for (int i = 0; i < l.rank; ++i) {
        const Int& d = snf.d(i, i);
        if (d == 0) throw std::invalid_argument("discriminant_group: degenerate lattice");
        dg.order *= d;
        if (d > 1) {
            idx.push_back(i);
            dg.invariant_factors.push_back(d);
        }
    }
    // generator i lifts to column i of v divided by its factor; pairing-vector
    // coefficients are read off by the matching rows of u
    dg.class_rows = Mat(static_cast<int>(idx.size()), l.rank);
    for (size_t k = 0; k < idx.size(); ++k) {
        int i = idx[k];
        std::vector<Rat> lift(l.rank);
        for (int r = 0; r < l.rank; ++r) lift[r] = make_rat(snf.v(r, i), dg.invariant_factors[k]);
        // q(lift) mod 2Z
        Rat q_lift(0);
        for (int r = 0; r < l.rank; ++r)
            for (int c = 0; c < l.rank; ++c) q_lift += lift[r] * Rat(l.gram(r, c)) * lift[c];
        dg.form_values.push_back(mod2z(q_lift));
        dg.generator_lifts.push_back(std::move(lift));
        for (int c = 0; c < l.rank; ++c) dg.class_rows(static_cast<int>(k), c) = snf.u(i, c);
    }
    return dg;
}

bool DiscElement::trivial() const {
    for (auto& c : coeffs)
        if (c != 0) return false;
    return true;
}

DiscElement disc_class(const IntegerLattice& l, const DiscriminantGroup& dg, const Vec& v) {
    if (!is_primitive(l, v)) throw std::invalid_argument("disc_class: vector must be primitive");
    Vec pair = mat_vec(l.gram, v);
    Int div = 0;
    for (auto& c : pair) div = gcd(div, c);
    Vec scaled(pair.size());
    for (size_t i = 0; i < pair.size(); ++i) scaled[i] = pair[i] / div;

    DiscElement e;
    e.coeffs.resize(dg.invariant_factors.size());
    for (size_t k = 0; k < dg.invariant_factors.size(); ++k) {
        Int c = 0;
        for (int j = 0; j < l.rank; ++j) c += dg.class_rows(static_cast<int>(k), j) * scaled[j];
        e.coeffs[k] = mod_pos(c, dg.invariant_factors[k]);
    }
    e.q_value = mod2z(make_rat(square(l, v), div * div));
    return e;
}

DiscElement disc_class(const IntegerLattice& l, const Vec& v) {
    return disc_class(l, discriminant_group(l), v);
}

Int element_order(const DiscriminantGroup& dg, const DiscElement& e) {
    Int ord = 1;
    for (size_t k = 0; k < dg.invariant_factors.size(); ++k)
        ord = lcm(ord, dg.invariant_factors[k] / gcd(dg.invariant_factors[k], e.coeffs[k]));
    return ord;
}

}  // namespace hklat
