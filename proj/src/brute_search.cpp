#include "apsieve/brute_search.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace apsieve {

bool BCondition::accepts(const BigInt& b) const {
    if (b <= 0) return false;
    switch (kind) {
        case One: return b == 1;
        case ExactGPF: return b != 1 && greatest_prime_factor(b) == p0;
        case MaxGPF: return b == 1 || greatest_prime_factor(b) <= p0;
    }
    return false;
}

long BCondition::term_prime_bound(int k) const {
    // P(a_i) <= max(P(b), k-1): a prime > k-1 divides at most one term, so it
    // survives into b whenever it divides a term's squarefree part.
    long pb = (kind == One) ? 1 : p0;
    return std::max(pb, static_cast<long>(k - 1));
}

namespace {

struct SpfTable {
    std::vector<int32_t> spf;
    explicit SpfTable(long n) : spf(n + 1, 0) {
        for (long i = 2; i <= n; ++i) {
            if (spf[i] == 0) {
                for (long j = i; j <= n; j += i)
                    if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
            }
        }
    }
    // squarefree part and square-root cofactor of m != 0 (|m| <= table size)
    void decompose(long m, long& sf, long& rt) const {
        sf = m < 0 ? -1 : 1;
        rt = 1;
        long v = std::abs(m);
        while (v > 1) {
            long p = spf[v], e = 0;
            while (v % p == 0) { v /= p; ++e; }
            if (e & 1) sf *= p;
            for (int i = 0; i < e / 2; ++i) rt *= p;
        }
    }
    long gpf(long m) const {
        long v = std::abs(m), f = 1;
        while (v > 1) {
            f = spf[v];
            while (v % f == 0) v /= f;
        }
        return f;
    }
};

void scan_d(const SearchSpec& s, const SpfTable& tab, long d, std::vector<Solution>& out) {
    int k = s.k;
    long bound = s.bcond.term_prime_bound(k);
    std::vector<long> sf(k), rt(k);
    for (long n = s.n_min; n <= s.n_max; ++n) {
        if (gcd(BigInt(n), BigInt(d)) != 1) continue;
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            long term = n + i * d;
            if (term == 0) { ok = false; break; }
            tab.decompose(term, sf[i], rt[i]);
            if (tab.gpf(sf[i]) > bound) ok = false;  // early exit: this prime must enter b
        }
        if (!ok) continue;
        BigInt aprod = 1, xprod = 1;
        for (int i = 0; i < k; ++i) {
            aprod *= sf[i];
            xprod *= rt[i];
        }
        if (aprod <= 0) continue;
        auto dec = squarefree_decompose(aprod);
        if (!s.bcond.accepts(dec.b)) continue;
        Solution sol;
        sol.prog = Progression{BigInt(n), BigInt(d), k};
        sol.b = dec.b;
        sol.y = dec.y * xprod;
        for (int i = 0; i < k; ++i) {
            sol.tuple.a.push_back(BigInt(sf[i]));
            sol.x.push_back(BigInt(rt[i]));
        }
        out.push_back(std::move(sol));
    }
}

}  // namespace

std::vector<Solution> search_box(const SearchSpec& s) {
    if (s.d_min < 1 || s.d_max < s.d_min || s.n_max < s.n_min)
        throw std::invalid_argument("search_box: malformed ranges");
    long maxabs = std::max(std::abs(s.n_min), std::abs(s.n_max)) +
                  static_cast<long>(s.k) * std::max(std::abs(s.d_max), 1L);
    if (maxabs > 50'000'000) throw std::invalid_argument("search_box: box too large for table scan");
    SpfTable tab(maxabs);

    int jobs = std::max(1, s.jobs);
    std::vector<std::vector<Solution>> per_d(s.d_max - s.d_min + 1);
    if (jobs == 1) {
        for (long d = s.d_min; d <= s.d_max; ++d) scan_d(s, tab, d, per_d[d - s.d_min]);
    } else {
        std::vector<std::thread> ws;
        for (int w = 0; w < jobs; ++w) {
            ws.emplace_back([&, w]() {
                for (long d = s.d_min + w; d <= s.d_max; d += jobs) scan_d(s, tab, d, per_d[d - s.d_min]);
            });
        }
        for (auto& t : ws) t.join();
    }
    std::vector<Solution> out;  // deterministic (d, n) order
    for (auto& block : per_d)
        for (auto& sol : block) out.push_back(std::move(sol));
    return out;
}

VerifyReport verify_solution(const BigInt& n, const BigInt& d, int k, const BigInt& b, const BigInt& y) {
    VerifyReport rep{false, "", {}};
    if (gcd(n, d) != 1) {
        rep.reason = "gcd(n,d) != 1";
        return rep;
    }
    BigInt prod = 1;
    for (int i = 0; i < k; ++i) {
        BigInt term = n + i * d;
        if (term == 0) {
            rep.reason = "zero term";
            return rep;
        }
        prod *= term;
        rep.tuple.a.push_back(squarefree_part(term));
    }
    if (squarefree_part(b) != b || b <= 0) {
        rep.reason = "b not positive squarefree";
        return rep;
    }
    if (prod != b * y * y) {
        rep.reason = "product mismatch";
        return rep;
    }
    rep.ok = true;
    return rep;
}

std::string solution_to_json(const Solution& s) {
    std::ostringstream os;
    os << "{\"n\":" << s.prog.n << ",\"d\":" << s.prog.d << ",\"k\":" << s.prog.k
       << ",\"b\":" << s.b << ",\"y\":" << s.y << ",\"tuple\":[";
    for (size_t i = 0; i < s.tuple.a.size(); ++i) {
        if (i) os << ",";
        os << s.tuple.a[i];
    }
    os << "]}";
    return os.str();
}

}  // namespace apsieve
