#include "apsieve/congruence_sieve.hpp"

#include <sstream>

namespace apsieve {

namespace {

bool consistent_pair(const std::vector<long>& ared, long p, const std::vector<bool>& qrs,
                     long n, long d) {
    int k = static_cast<int>(ared.size());
    for (int i = 0; i < k; ++i) {
        long v = (n + static_cast<long>(i) * d) % p;
        if (ared[i] == 0) {
            if (v != 0) return false;
        } else {
            // v / a_i must be a square mod p (0 allowed: p may divide x_i)
            long inv = 1;
            // Fermat inverse
            long base = ared[i], e = p - 2;
            long acc = 1;
            while (e) {
                if (e & 1) acc = acc * base % p;
                base = base * base % p;
                e >>= 1;
            }
            inv = acc;
            long w = v * inv % p;
            if (!qrs[w]) return false;
        }
    }
    return true;
}

}  // namespace

SieveVerdict survives_mod_p(const ATuple& t, long p) {
    if (p < 3 || !is_prime(BigInt(p)))
        throw std::invalid_argument("survives_mod_p: p must be an odd prime");
    std::vector<bool> qrs(p, false);
    for (long x = 0; x < p; ++x) qrs[x * x % p] = true;
    std::vector<long> ared(t.k());
    for (int i = 0; i < t.k(); ++i) {
        BigInt r = t.a[i] % p;
        if (r < 0) r += p;
        ared[i] = to_long(r);
    }
    for (long n = 0; n < p; ++n) {
        for (long d = 0; d < p; ++d) {
            if (n == 0 && d == 0) continue;  // would force p | gcd(n,d)
            if (consistent_pair(ared, p, qrs, n, d)) return SieveVerdict{p, true, {n, d}};
        }
    }
    return SieveVerdict{p, false, {0, 0}};
}

std::string SieveVerdict::to_json(const ATuple& t) const {
    std::ostringstream os;
    os << "{\"tuple\":[";
    for (int i = 0; i < t.k(); ++i) {
        if (i) os << ",";
        os << t.a[i];
    }
    os << "],\"p\":" << p << ",\"outcome\":\"" << (survives ? "survives" : "eliminated") << "\"";
    if (survives)
        os << ",\"witness\":[" << witness.first << "," << witness.second << "]";
    else
        os << ",\"witness\":null";
    os << "}";
    return os.str();
}

std::vector<long> default_sieve_primes() { return {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}; }

SieveReport sieve_tuple(const ATuple& t, const std::vector<long>& primes) {
    SieveReport rep{t, false, 0, {}};
    for (long p : primes) {
        SieveVerdict v = survives_mod_p(t, p);
        if (!v.survives) {
            rep.eliminated = true;
            rep.eliminating_prime = p;
            rep.witnesses.push_back(v);
            return rep;
        }
        rep.witnesses.push_back(v);
    }
    return rep;
}

SievePartition auto_eliminate(const std::vector<ATuple>& tuples, const std::vector<long>& primes) {
    SievePartition part;
    for (const ATuple& t : tuples) {
        SieveReport rep = sieve_tuple(t, primes);
        if (rep.eliminated)
            part.eliminated.push_back(std::move(rep));
        else
            part.survivors.push_back(t);
    }
    return part;
}

bool replay_certificate(const ATuple& t, long p) {
    return !survives_mod_p(t, p).survives;
}

}  // namespace apsieve
