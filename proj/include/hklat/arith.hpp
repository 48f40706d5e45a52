#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hklat {

// Exact arithmetic only: arbitrary-precision integers and rationals.
// No floating point anywhere in the library.
using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// floor quotient
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// representative of a mod n in [0, n), n > 0
inline Int mod_pos(const Int& a, const Int& n) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

// quotient rounded to the nearest integer (ties toward -inf); keeps Smith
// reduction remainders at most |b|/2
inline Int round_div(const Int& a, const Int& b) {
    Int two_a = 2 * a + b;
    Int two_b = 2 * b;
    return floor_div(two_a, two_b);
}

inline bool is_even(const Int& a) { return mpz_even_p(a.get_mpz_t()) != 0; }

inline bool divides(const Int& d, const Int& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integral(const Rat& r) { return r.get_den() == 1; }

// canonical representative of r modulo 2Z in [0, 2)
inline Rat mod2z(const Rat& r) {
    Rat half = r / 2;
    Int fl = floor_div(half.get_num(), half.get_den());
    Rat out = r - 2 * Rat(fl);
    out.canonicalize();
    return out;
}

// exact decimal / "num/den" rendering (mpq never prints decimals)
inline std::string to_string(const Int& a) { return a.get_str(); }
inline std::string to_string(const Rat& r) { return r.get_str(); }

}  // namespace hklat
