#include "apsieve/tuple_enum.hpp"

#include <algorithm>
#include <sstream>

namespace apsieve {

std::string ATuple::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) os << ",";
        os << a[i];
    }
    os << ")";
    return os.str();
}

std::string ATuple::to_json() const {
    std::ostringstream os;
    os << "{\"k\":" << k() << ",\"a\":[";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) os << ",";
        os << a[i];
    }
    os << "]}";
    return os.str();
}

std::vector<BigInt> coefficient_alphabet(long pmax) {
    std::vector<long> ps;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        if (p <= pmax) ps.push_back(p);
    }
    std::vector<BigInt> vals{BigInt(1)};
    for (long p : ps) {
        size_t n = vals.size();
        for (size_t i = 0; i < n; ++i) vals.push_back(vals[i] * p);
    }
    std::vector<BigInt> out;
    for (const BigInt& v : vals) {
        out.push_back(-v);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [](const BigInt& x, const BigInt& y) {
        BigInt ax = abs(x), ay = abs(y);
        if (ax != ay) return ax < ay;
        return x < y;
    });
    return out;
}

namespace {

long small_gpf(long m) {
    m = std::abs(m);
    if (m <= 1) return 1;
    long f = 1;
    for (long d = 2; d * d <= m; ++d) {
        while (m % d == 0) {
            f = d;
            m /= d;
        }
    }
    return std::max(f, m > 1 ? m : 1);
}

}  // namespace

std::vector<ATuple> generate_candidates(int k, const TupleConstraints& c) {
    if (k < 4) throw std::invalid_argument("generate_candidates: k >= 4 required");
    std::vector<BigInt> alph = coefficient_alphabet(c.pmax_b);
    std::vector<long> dist_gcd(k);
    for (int d = 1; d < k; ++d) dist_gcd[d] = small_gpf(d);

    std::vector<ATuple> out;
    std::vector<BigInt> cur;
    std::function<void()> rec = [&]() {
        int i = static_cast<int>(cur.size());
        if (i == k) {
            int sc = 0;
            BigInt prod = 1;
            for (int j = 0; j + 1 < k; ++j)
                if (cur[j] * cur[j + 1] < 0) ++sc;
            for (const BigInt& x : cur) prod *= x;
            if (sc <= c.max_sign_changes && (!c.positive_product || prod > 0)) out.push_back(ATuple{cur});
            return;
        }
        for (const BigInt& x : alph) {
            bool ok = true;
            for (const auto& [idx, p] : c.forced_divisibility) {
                if (idx == i && x % p != 0) { ok = false; break; }
            }
            if (!ok) continue;
            for (int j = 0; j < i && ok; ++j) {
                BigInt g = gcd(abs(cur[j]), abs(x));
                if (g != 1 && g != dist_gcd[i - j]) ok = false;
            }
            if (!ok) continue;
            int sc = 0;
            for (int j = 0; j + 1 < i; ++j)
                if (cur[j] * cur[j + 1] < 0) ++sc;
            if (i > 0 && cur[i - 1] * x < 0) ++sc;
            if (sc > c.max_sign_changes) continue;
            cur.push_back(x);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

ATuple mirror(const ATuple& t) {
    ATuple m = t;
    std::reverse(m.a.begin(), m.a.end());
    return m;
}

int sign_changes(const ATuple& t) {
    int sc = 0;
    for (int i = 0; i + 1 < t.k(); ++i)
        if (t.a[i] * t.a[i + 1] < 0) ++sc;
    return sc;
}

std::pair<ATuple, std::vector<BigInt>> extract_tuple(const Progression& p, long pmax_b) {
    BigInt bound = std::max(pmax_b, static_cast<long>(p.k - 1));
    ATuple t;
    std::vector<BigInt> xs;
    for (int i = 0; i < p.k; ++i) {
        BigInt term = p.n + i * p.d;
        if (term == 0) throw std::invalid_argument("extract_tuple: zero term at index " + std::to_string(i));
        auto dec = squarefree_decompose(term);
        if (greatest_prime_factor(abs(dec.b)) > bound)
            throw std::invalid_argument("extract_tuple: prime bound exceeded at index " + std::to_string(i));
        t.a.push_back(dec.b);
        xs.push_back(dec.y);
    }
    return {t, xs};
}

std::optional<ATuple> half_subprogression(const ATuple& t, int start, int count) {
    int k = t.k();
    if (start < 0 || count < 1 || start + 2 * (count - 1) >= k)
        throw std::invalid_argument("half_subprogression: indices out of range");
    // parity assignments (n mod 2, d mod 2), gcd(n,d)=1 excludes (0,0)
    std::vector<std::pair<int, int>> live;
    for (int n2 = 0; n2 < 2; ++n2) {
        for (int d2 = 0; d2 < 2; ++d2) {
            if (n2 == 0 && d2 == 0) continue;
            bool ok = true;
            for (int i = 0; i < k && ok; ++i) {
                if (t.a[i] % 2 == 0 && (n2 + i * d2) % 2 != 0) ok = false;
            }
            if (ok) live.emplace_back(n2, d2);
        }
    }
    if (live.empty()) return std::nullopt;  // tuple has no consistent parity at all
    for (int j = 0; j < count; ++j) {
        int idx = start + 2 * j;
        for (auto [n2, d2] : live) {
            if ((n2 + idx * d2) % 2 != 0) return std::nullopt;  // not provably even
        }
    }
    ATuple out;
    for (int j = 0; j < count; ++j) {
        const BigInt& ai = t.a[start + 2 * j];
        out.a.push_back(ai % 2 == 0 ? BigInt(ai / 2) : BigInt(2 * ai));
    }
    return out;
}

std::optional<SubtupleHit> find_subtuple(const ATuple& t, const std::vector<ATuple>& known) {
    for (const ATuple& s : known) {
        if (s.k() > t.k()) continue;
        ATuple ms = mirror(s);
        for (int off = 0; off + s.k() <= t.k(); ++off) {
            bool eq = true, eqm = true;
            for (int j = 0; j < s.k(); ++j) {
                if (t.a[off + j] != s.a[j]) eq = false;
                if (t.a[off + j] != ms.a[j]) eqm = false;
                if (!eq && !eqm) break;
            }
            if (eq) return SubtupleHit{off, s, false};
            if (eqm) return SubtupleHit{off, s, true};
        }
    }
    return std::nullopt;
}

}  // namespace apsieve
