#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hklat/arith.hpp"

namespace hklat {

using Vec = std::vector<Int>;

struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n);
    bool operator==(const Mat&) const = default;
};

Vec mat_vec(const Mat& m, const Vec& v);
Mat mat_mul(const Mat& a, const Mat& b);

// Even non-degenerate integral lattice given by its Gram matrix. Constructors
// record which basis-index pairs span hyperbolic-plane (U) summands; Eichler
// machinery requires at least two of them.
struct IntegerLattice {
    int rank = 0;
    Mat gram;
    std::vector<std::pair<int, int>> hyperbolic_pairs;
    std::string name;
};

IntegerLattice lattice_U();
IntegerLattice lattice_E8neg();
IntegerLattice lattice_rank1(const Int& k);  // <k>, k even and nonzero
IntegerLattice direct_sum(const IntegerLattice& l1, const IntegerLattice& l2);
IntegerLattice direct_sum(const std::vector<IntegerLattice>& parts);

Int evaluate(const IntegerLattice& l, const Vec& v, const Vec& w);
Int square(const IntegerLattice& l, const Vec& v);
bool is_primitive(const IntegerLattice& l, const Vec& v);

// positive generator of the ideal of pairings (v, L)
Int divisibility(const IntegerLattice& l, const Vec& v);

// exact determinant of the Gram matrix (fraction-free elimination)
Int determinant(const IntegerLattice& l);

// u * m * v == d with d diagonal, nonnegative, divisibility chain
// d(0,0) | d(1,1) | ..., and |det u| == |det v| == 1.
struct SmithDecomposition {
    Mat d, u, v;
};
SmithDecomposition smith_normal_form(Mat m);

struct DiscriminantGroup {
    std::vector<Int> invariant_factors;               // factors > 1 only, d1 | d2 | ...
    std::vector<std::vector<Rat>> generator_lifts;    // in L (x) Q; lift i has denominator factor i
    std::vector<Rat> form_values;                     // q(lift) mod 2Z, in [0, 2)
    Int order = 1;                                    // product of invariant factors == |det gram|

    // row i applied to the pairing vector of x in L^vee gives the coefficient
    // of x on generator i (mod invariant_factors[i])
    Mat class_rows;

    bool trivial() const { return invariant_factors.empty(); }
};
DiscriminantGroup discriminant_group(const IntegerLattice& l);

struct DiscElement {
    std::vector<Int> coeffs;  // reduced mod the invariant factors
    Rat q_value;              // in [0, 2)

    bool operator==(const DiscElement& o) const { return coeffs == o.coeffs; }
    bool operator!=(const DiscElement& o) const { return !(*this == o); }
    bool trivial() const;
};

// class of v/div(v) in the discriminant group; v must be primitive
DiscElement disc_class(const IntegerLattice& l, const Vec& v);
DiscElement disc_class(const IntegerLattice& l, const DiscriminantGroup& dg, const Vec& v);

Int element_order(const DiscriminantGroup& dg, const DiscElement& e);

}  // namespace hklat
