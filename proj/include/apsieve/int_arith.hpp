#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace apsieve {

using BigInt = mpz_class;
using BigRat = mpq_class;

struct PrimePower {
    BigInt p;
    int e;
};

// b * y^2 = m with b squarefree, y >= 1, sign(b) = sign(m).
struct SquarefreeDecomp {
    BigInt b;
    BigInt y;
};

bool is_prime(const BigInt& n);

// Full factorization of |m|, m != 0. Trial division to 10^6, Pollard rho above.
std::vector<PrimePower> factorize(const BigInt& m);

SquarefreeDecomp squarefree_decompose(const BigInt& m);

inline BigInt squarefree_part(const BigInt& m) { return squarefree_decompose(m).b; }

// P(m): greatest prime factor, P(1) = 1. Requires m >= 1.
BigInt greatest_prime_factor(const BigInt& m);

// Legendre symbol (a/p) for odd prime p; primality of p is checked.
int jacobi_symbol(const BigInt& a, const BigInt& p);

// Exact integer square root if m is a perfect square.
std::optional<BigInt> perfect_sqrt(const BigInt& m);

std::optional<BigRat> perfect_sqrt(const BigRat& m);

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline long to_long(const BigInt& n) {
    if (!n.fits_slint_p()) throw std::overflow_error("to_long: out of range");
    return n.get_si();
}

// Primes in [2, bound], simple sieve.
std::vector<long> primes_up_to(long bound);

}  // namespace apsieve
