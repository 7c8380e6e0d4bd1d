#pragma once

#include "apsieve/tuple_enum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace apsieve {

struct SieveVerdict {
    long p;
    bool survives;
    std::pair<long, long> witness;  // (n mod p, d mod p) when survives

    std::string to_json(const ATuple& t) const;
};

// Decide whether some (n,d) mod p, not both zero, is consistent with n+id = a_i x_i^2.
// Full enumeration of (Z/p)^2; an Eliminated verdict is a finite proof.
SieveVerdict survives_mod_p(const ATuple& t, long p);

struct SieveReport {
    ATuple tuple;
    bool eliminated;
    long eliminating_prime;                 // valid when eliminated
    std::vector<SieveVerdict> witnesses;    // per surviving prime (full list when it survives all)
};

SieveReport sieve_tuple(const ATuple& t, const std::vector<long>& primes);

// Default prime list: all odd primes <= 31.
std::vector<long> default_sieve_primes();

struct SievePartition {
    std::vector<ATuple> survivors;
    std::vector<SieveReport> eliminated;
};

SievePartition auto_eliminate(const std::vector<ATuple>& tuples, const std::vector<long>& primes);

// Re-check an Eliminated certificate by full enumeration; true iff the verdict replays.
bool replay_certificate(const ATuple& t, long p);

}  // namespace apsieve
