#include "apsieve/int_arith.hpp"

#include <algorithm>
#include <map>

namespace apsieve {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin below 2^64.
bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

BigInt pollard_rho(const BigInt& n) {
    if (n % 2 == 0) return 2;
    for (BigInt c = 1;; c += 1) {
        BigInt x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd(abs(x - y), n);
        }
        if (d != n) return d;
    }
}

void factor_rec(const BigInt& n, std::map<BigInt, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    BigInt d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<PrimePower> factorize(const BigInt& m) {
    if (m == 0) throw std::invalid_argument("factorize: zero input");
    BigInt n = abs(m);
    std::map<BigInt, int> acc;
    for (long p = 2; p <= 1000000 && n > 1; p = (p == 2 ? 3 : p + 2)) {
        if (BigInt(p) * p > n) break;
        while (n % p == 0) {
            acc[BigInt(p)] += 1;
            n /= p;
        }
    }
    if (n > 1) {
        if (is_prime(n)) {
            acc[n] += 1;
        } else {
            factor_rec(n, acc);
        }
    }
    std::vector<PrimePower> out;
    out.reserve(acc.size());
    for (auto& [p, e] : acc) out.push_back({p, e});
    return out;
}

SquarefreeDecomp squarefree_decompose(const BigInt& m) {
    if (m == 0) throw std::invalid_argument("squarefree_decompose: zero input");
    BigInt b = (m < 0) ? BigInt(-1) : BigInt(1);
    BigInt y = 1;
    for (const auto& [p, e] : factorize(m)) {
        if (e & 1) b *= p;
        for (int i = 0; i < e / 2; ++i) y *= p;
    }
    return {b, y};
}

BigInt greatest_prime_factor(const BigInt& m) {
    if (m < 1) throw std::invalid_argument("greatest_prime_factor: m must be >= 1");
    if (m == 1) return 1;
    auto fs = factorize(m);
    return fs.back().p;
}

int jacobi_symbol(const BigInt& a, const BigInt& p) {
    if (p <= 1 || p % 2 == 0 || !is_prime(p))
        throw std::invalid_argument("jacobi_symbol: p must be an odd prime");
    return mpz_jacobi(a.get_mpz_t(), p.get_mpz_t());
}

std::optional<BigInt> perfect_sqrt(const BigInt& m) {
    if (m < 0) return std::nullopt;
    if (mpz_perfect_square_p(m.get_mpz_t())) {
        BigInt r;
        mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
        return r;
    }
    return std::nullopt;
}

std::optional<BigRat> perfect_sqrt(const BigRat& m) {
    auto rn = perfect_sqrt(BigInt(m.get_num()));
    if (!rn) return std::nullopt;
    auto rd = perfect_sqrt(BigInt(m.get_den()));
    if (!rd) return std::nullopt;
    return BigRat(*rn, *rd);
}

std::vector<long> primes_up_to(long bound) {
    std::vector<bool> comp(bound + 1, false);
    std::vector<long> out;
    for (long i = 2; i <= bound; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (long j = i * i; j <= bound; j += i) comp[j] = true;
        }
    }
    return out;
}

}  // namespace apsieve
