// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// A CycNumber is stored in canonical form: the order N is the conductor of
// the element (never congruent to 2 mod 4), and the coefficient list is the
// sparse representation of the element in the power basis
// zeta_N^0, ..., zeta_N^{phi(N)-1}, i.e. reduced modulo the N-th cyclotomic
// polynomial.  Equality of canonical forms is field equality.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mirrorcat {

using Rat = mpq_class;

class CycError : public std::runtime_error {
public:
    explicit CycError(const std::string& what) : std::runtime_error(what) {}
};

class CycNumber {
public:
    // Exponent/coefficient pair: coeff * zeta_order^exp.
    using Term = std::pair<long, Rat>;

    CycNumber() : order_(1) {}
    CycNumber(long value);                 // NOLINT: implicit from integers is intended
    explicit CycNumber(const Rat& value);

    // zeta_order^exp, for order >= 1.
    static CycNumber zeta(long order, long exp = 1);
    // sum of coeff * zeta_order^exp over the given (not necessarily reduced) terms
    static CycNumber from_terms(long order, const std::vector<Term>& terms);

    long order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_rational() const { return order_ == 1; }
    // Requires is_rational().
    Rat as_rational() const;

    CycNumber operator-() const;
    CycNumber& operator+=(const CycNumber& rhs);
    CycNumber& operator-=(const CycNumber& rhs);
    CycNumber& operator*=(const CycNumber& rhs);
    CycNumber& operator/=(const CycNumber& rhs);

    friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
    friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
    friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
    friend CycNumber operator/(CycNumber a, const CycNumber& b) { return a /= b; }

    bool operator==(const CycNumber& rhs) const {
        return order_ == rhs.order_ && terms_ == rhs.terms_;
    }
    bool operator!=(const CycNumber& rhs) const { return !(*this == rhs); }

    // Complex conjugation, zeta -> zeta^{-1}.  Exact.
    CycNumber conj() const;
    CycNumber inverse() const;
    CycNumber pow(long k) const;

    // Galois map zeta -> zeta^k for gcd(k, order) = 1.
    CycNumber galois(long k) const;

    // Re-express in Q(zeta_to_order); to_order must be a multiple of order().
    CycNumber lifted(long to_order) const;

    bool is_self_conjugate() const { return *this == conj(); }

    // Floating approximation, zeta_N -> exp(2*pi*i/N).
    std::complex<double> embed() const;

    // Exact sign of a self-conjugate (hence real) element, certified by
    // interval arithmetic at escalating precision.  Returns -1, 0 or +1.
    // Throws CycError{"not a real element"} if the input is not self-conjugate,
    // or if the precision cap (in bits) is exhausted before the interval
    // excludes zero.
    int real_sign(long prec_cap_bits = 1 << 14) const;

    std::string str() const;

private:
    long order_;
    std::vector<Term> terms_;  // sorted by exponent, exponents in [0, phi(order)), coeffs nonzero

    static CycNumber reduce(long order, std::vector<Term> raw_terms);
    static CycNumber reduce_nocanon(long order, std::vector<Term> raw_terms);
    void canonicalize_order();
};

// a > 0 as a real number; precondition: a self-conjugate (else CycError).
bool is_real_positive(const CycNumber& a, long prec_cap_bits = 1 << 14);

inline CycNumber operator*(const Rat& r, const CycNumber& a) { return CycNumber(r) * a; }

// Euler phi and lcm helpers used across the library.
long euler_phi(long n);
long lcm_long(long a, long b);

}  // namespace mirrorcat
