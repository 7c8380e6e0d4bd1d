#pragma once

#include "apsieve/tuple_enum.hpp"

#include <string>
#include <vector>

namespace apsieve {

// Constraint on the squarefree part b of the product.
struct BCondition {
    enum Kind { ExactGPF, MaxGPF, One } kind = ExactGPF;
    long p0 = 5;

    static BCondition eq(long p) { return {ExactGPF, p}; }
    static BCondition le(long p) { return {MaxGPF, p}; }
    static BCondition one() { return {One, 1}; }
    bool accepts(const BigInt& b) const;
    long term_prime_bound(int k) const;  // bound on P(a_i) implied for single terms
};

struct SearchSpec {
    int k = 5;
    long n_min = -2000, n_max = 2000;
    long d_min = 1, d_max = 200;
    BCondition bcond = BCondition::eq(5);
    int jobs = 1;
};

// Exhaustive scan of the box; deterministic (d ascending, n ascending) order.
std::vector<Solution> search_box(const SearchSpec& s);

struct VerifyReport {
    bool ok;
    std::string reason;
    ATuple tuple;  // extracted when terms are nonzero
};

VerifyReport verify_solution(const BigInt& n, const BigInt& d, int k, const BigInt& b, const BigInt& y);

std::string solution_to_json(const Solution& s);

}  // namespace apsieve
