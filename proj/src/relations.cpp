#include "apsieve/curve_lab.hpp"

#include <algorithm>
#include <sstream>

namespace apsieve {

std::string TernaryRelation::str() const {
    std::ostringstream os;
    os << ci << "*x" << i << "^2 + " << cj << "*x" << j << "^2 = " << cm << "*x" << m << "^2";
    return os.str();
}

std::vector<TernaryRelation> pivot_system(const ATuple& t, int i, int j) {
    if (!(0 <= i && i < j && j < t.k())) throw std::invalid_argument("pivot_system: bad indices");
    if (t.a[i] == 0 || t.a[j] == 0) throw std::invalid_argument("pivot_system: zero pivot coefficient");
    std::vector<TernaryRelation> out;
    for (int m = 0; m < t.k(); ++m) {
        if (m == i || m == j) continue;
        // (j-m) a_i x_i^2 + (m-i) a_j x_j^2 = (j-i) a_m x_m^2
        BigInt ci = BigInt(j - m) * t.a[i];
        BigInt cj = BigInt(m - i) * t.a[j];
        BigInt cm = BigInt(j - i) * t.a[m];
        BigInt g = gcd(gcd(abs(ci), abs(cj)), abs(cm));
        ci /= g;
        cj /= g;
        cm /= g;
        if (cm < 0) {
            ci = -ci;
            cj = -cj;
            cm = -cm;
        }
        out.push_back(TernaryRelation{i, j, m, ci, cj, cm});
    }
    return out;
}

namespace {

// lam s^2 + mu t^2 = value-class c (squarefree, signed), (lam, mu) primitive.
SideRelation reduce_relation(BigInt lam, BigInt mu, BigInt raw_c) {
    BigInt g = gcd(abs(lam), abs(mu));
    lam /= g;
    mu /= g;
    // value/c in squares: dividing the form by g multiplies the class by g
    BigInt c = squarefree_part(raw_c * g);
    return SideRelation{lam, mu, c};
}

enum class RelKind { FieldFactorable, Split, Plain };

struct Classified {
    RelKind kind;
    int D = 0;  // for FieldFactorable
};

Classified classify(const SideRelation& r) {
    // lam s^2 + mu t^2 factors over Q(sqrt(-mu*lam / square)).
    BigInt disc = squarefree_part(-r.lam * r.mu);
    if (disc == 1) return {RelKind::Split, 0};
    if (disc == -1) return {RelKind::FieldFactorable, -1};
    if (disc == 3) return {RelKind::FieldFactorable, 3};
    return {RelKind::Plain, 0};
}

// Integral primitive K-linear form from a factorable relation:
// lam s^2 + mu t^2 = (1/lam)(lam s + g sqrt(D) t)(lam s - g sqrt(D) t), g^2 = -lam mu / D.
KLinearForm factor_form(const SideRelation& r, int D) {
    BigInt g2 = -r.lam * r.mu / D;
    auto g = perfect_sqrt(g2);
    if (!g) throw std::logic_error("factor_form: not factorable over the requested field");
    BigInt content = gcd(abs(r.lam), abs(*g));
    QuadField f(D);
    // positive orientation on both coefficients (the +sqrt(D) factor)
    QuadElem alpha(f, BigRat(abs(r.lam) / content), BigRat(0));
    QuadElem beta(f, BigRat(0), BigRat(*g / content));
    return KLinearForm{alpha, beta};
}

// Rational split form lam s^2 + mu t^2 = (a s + b t)(a s - b t)/content-ish:
// returns the positive-orientation factor a s + b t over K (v = 0).
KLinearForm split_form(const SideRelation& r, int D) {
    // -lam*mu = square * 1
    BigInt prod = -r.lam * r.mu;
    auto h = perfect_sqrt(prod);
    if (!h) throw std::logic_error("split_form: relation does not split");
    // lam s^2 + mu t^2 = (1/lam)(lam s + h t)(lam s - h t)
    BigInt content = gcd(abs(r.lam), abs(*h));
    QuadField f(D);
    QuadElem alpha(f, BigRat(abs(r.lam) / content), BigRat(0));
    QuadElem beta(f, BigRat(*h / content), BigRat(0));
    return KLinearForm{alpha, beta};
}

struct PatternScan {
    bool ok = false;
    int D = 0;
    bool p2 = false;  // Lemma-4 pattern: one field factorable + two splits
    std::vector<int> fact_ms;
    std::vector<int> split_ms;
};

PatternScan scan_pair(const std::vector<SideRelation>& rels, const std::vector<int>& ms, int wantD) {
    PatternScan s;
    std::vector<int> facts, splits;
    for (size_t idx = 0; idx < rels.size(); ++idx) {
        Classified c = classify(rels[idx]);
        if (c.kind == RelKind::FieldFactorable && c.D == wantD) facts.push_back(ms[idx]);
        if (c.kind == RelKind::Split) splits.push_back(ms[idx]);
    }
    if (facts.size() >= 2) {
        s.ok = true;
        s.D = wantD;
        s.p2 = false;
        s.fact_ms = {facts[0], facts[1]};
        return s;
    }
    if (facts.size() == 1 && splits.size() >= 2) {
        s.ok = true;
        s.D = wantD;
        s.p2 = true;
        s.fact_ms = {facts[0]};
        s.split_ms = {splits[0], splits[1]};
        return s;
    }
    return s;
}

// 2-adic evenness forcing: does every admissible primitive (s,t) mod 32 have t even?
// (or s even).  Admissible = all relations 2-adically square-compatible.
std::pair<bool, bool> forced_even(const std::vector<SideRelation>& rels) {
    bool t_even = true, s_even = true, any = false;
    const long M = 32;
    for (long s = 0; s < M; ++s) {
        for (long t = 0; t < M; ++t) {
            if (s % 2 == 0 && t % 2 == 0) continue;
            bool ok = true;
            for (const auto& r : rels) {
                BigInt V = r.lam * s * s + r.mu * t * t;
                Tri d = decide_square_qp(V * r.c, 2, 5);
                if (d == Tri::No) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                any = true;
                if (t % 2) t_even = false;
                if (s % 2) s_even = false;
            }
        }
    }
    if (!any) return {false, false};
    return {s_even, t_even};
}

}  // namespace

std::string CurveFamily::describe() const {
    std::ostringstream os;
    os << "tuple=" << tuple.str() << " pivots=(" << pivot_i << "," << pivot_j << ") D=" << D
       << " sigma=(" << sigma_i << "," << sigma_j << ") quad=[" << quad_a << "," << quad_b << ","
       << quad_c << "] cg=" << cg;
    return os.str();
}

CurveFamily derive_curve_family(const ATuple& t, std::optional<std::pair<int, int>> pivots) {
    std::vector<std::pair<int, int>> pairs;
    if (pivots) {
        pairs.push_back(*pivots);
    } else {
        for (int i = 0; i < t.k(); ++i)
            for (int j = i + 1; j < t.k(); ++j) pairs.emplace_back(i, j);
    }

    struct Choice {
        std::pair<int, int> pv;
        PatternScan scan;
        std::vector<SideRelation> rels;
        std::vector<int> ms;
        long sig_i, sig_j;
    };

    auto attempt = [&](std::pair<int, int> pv, int wantD, bool allow_p2) -> std::optional<Choice> {
        auto [i, j] = pv;
        if (t.a[i] == 0 || t.a[j] == 0) return std::nullopt;
        // raw relations in (s,t) = (x_j, x_i)
        std::vector<SideRelation> rels;
        std::vector<int> ms;
        for (int m = 0; m < t.k(); ++m) {
            if (m == i || m == j) continue;
            BigInt lam = BigInt(m - i) * t.a[j];
            BigInt mu = BigInt(j - m) * t.a[i];
            BigInt raw_c = BigInt(j - i) * t.a[m];
            rels.push_back(reduce_relation(lam, mu, raw_c));
            ms.push_back(m);
        }
        long sig_j = 1, sig_i = 1;
        // iterate parity forcing: substitute t = 2t' (or s = 2s') and re-reduce
        for (int rounds = 0; rounds < 4; ++rounds) {
            auto [se, te] = forced_even(rels);
            if (te) {
                for (auto& r : rels) r = reduce_relation(r.lam, r.mu * 4, r.c);
                sig_i *= 2;
            } else if (se) {
                for (auto& r : rels) r = reduce_relation(r.lam * 4, r.mu, r.c);
                sig_j *= 2;
            } else {
                break;
            }
        }
        PatternScan s = scan_pair(rels, ms, wantD);
        if (!s.ok || (s.p2 && !allow_p2)) return std::nullopt;
        return Choice{pv, s, rels, ms, sig_i, sig_j};
    };

    std::optional<Choice> chosen;
    for (int wantD : {-1, 3}) {
        for (bool p2 : {false, true}) {
            for (auto pv : pairs) {
                auto c = attempt(pv, wantD, p2);
                if (c && c->scan.p2 == p2) {
                    chosen = c;
                    break;
                }
            }
            if (chosen) break;
        }
        if (chosen) break;
    }
    if (!chosen) throw std::runtime_error("derive_curve_family: no construction pattern applies for " + t.str());

    const Choice& ch = *chosen;
    CurveFamily fam;
    fam.tuple = t;
    fam.pivot_i = ch.pv.first;
    fam.pivot_j = ch.pv.second;
    fam.D = ch.scan.D;
    fam.sigma_i = ch.sig_i;
    fam.sigma_j = ch.sig_j;
    fam.relations = ch.rels;

    auto rel_of_m = [&](int m) -> const SideRelation& {
        for (size_t idx = 0; idx < ch.ms.size(); ++idx)
            if (ch.ms[idx] == m) return ch.rels[idx];
        throw std::logic_error("rel_of_m");
    };

    std::vector<int> used;
    if (!ch.scan.p2) {
        for (int m : ch.scan.fact_ms) {
            fam.forms.push_back(factor_form(rel_of_m(m), fam.D));
            used.push_back(m);
        }
    } else {
        fam.forms.push_back(factor_form(rel_of_m(ch.scan.fact_ms[0]), fam.D));
        fam.forms.push_back(split_form(rel_of_m(ch.scan.split_ms[0]), fam.D));
        used.push_back(ch.scan.fact_ms[0]);
        used.push_back(ch.scan.split_ms[0]);
    }
    // quadratic side factor (for P2: the second split, providing both of its
    // linear factors).  For P1 prefer a split relation, then the smallest class.
    int quad_m = -1;
    if (ch.scan.p2) {
        quad_m = ch.scan.split_ms[1];
    } else {
        long best_rank = -1;
        for (size_t idx = 0; idx < ch.ms.size(); ++idx) {
            int m = ch.ms[idx];
            if (std::find(used.begin(), used.end(), m) != used.end()) continue;
            bool is_split = classify(ch.rels[idx]).kind == RelKind::Split;
            // order: split first, then |c| ascending, then m ascending
            long rank = (is_split ? 0 : 1000000) +
                        to_long(BigInt(abs(ch.rels[idx].c) * 100)) + m;
            if (best_rank < 0 || rank < best_rank) {
                best_rank = rank;
                quad_m = m;
            }
        }
    }
    if (quad_m < 0) throw std::runtime_error("derive_curve_family: no quadratic side relation");
    const SideRelation& qr = rel_of_m(quad_m);
    fam.quad_a = qr.lam;
    fam.quad_b = 0;
    fam.quad_c = qr.mu;
    fam.cg = qr.c;
    return fam;
}

}  // namespace apsieve
