#pragma once

#include "apsieve/int_arith.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace apsieve {

// Coefficient tuple (a_0,...,a_{k-1}): squarefree parts of the progression terms.
struct ATuple {
    std::vector<BigInt> a;

    int k() const { return static_cast<int>(a.size()); }
    bool operator==(const ATuple& o) const { return a == o.a; }
    bool operator<(const ATuple& o) const { return a < o.a; }

    std::string str() const;
    std::string to_json() const;  // {"k":..., "a":[...]}
};

struct Progression {
    BigInt n;
    BigInt d;  // >= 1
    int k;
};

struct Solution {
    Progression prog;
    BigInt b;  // squarefree > 0
    BigInt y;  // > 0
    std::vector<BigInt> x;
    ATuple tuple;
};

struct TupleConstraints {
    long pmax_b = 5;
    int max_sign_changes = 1;
    bool positive_product = true;
    std::vector<std::pair<int, long>> forced_divisibility;  // (index, prime)
};

// All +-s with s squarefree and P(s) <= pmax, ascending by (|s|, s).
std::vector<BigInt> coefficient_alphabet(long pmax);

// Tuples over the alphabet with pairwise gcd(|a_i|,|a_j|) in {1, P(j-i)}, the
// sign-change bound, positive product and forced divisibility; lexicographic in
// the alphabet order.
std::vector<ATuple> generate_candidates(int k, const TupleConstraints& c);

ATuple mirror(const ATuple& t);

int sign_changes(const ATuple& t);

// a_i = squarefree part of n+id, x_i the cofactor root.  Throws if a term is zero
// or some P(a_i) exceeds max(pmax_b, k-1).
std::pair<ATuple, std::vector<BigInt>> extract_tuple(const Progression& p, long pmax_b);

// 2-adic reduction of the sub-progression at indices start, start+2, ..., start+2(count-1).
// Returns the halved tuple when every selected term is provably even under gcd(n,d)=1.
std::optional<ATuple> half_subprogression(const ATuple& t, int start, int count);

struct SubtupleHit {
    int offset;
    ATuple match;     // the known tuple (as stored)
    bool mirrored;    // matched against its mirror
};

std::optional<SubtupleHit> find_subtuple(const ATuple& t, const std::vector<ATuple>& known);

}  // namespace apsieve
