#include "apsieve/curve_lab.hpp"
#include "apsieve/elliptic.hpp"

#include <algorithm>
#include <set>

namespace apsieve {

bool ECQ::on_curve(const ECPoint& P) const {
    if (!P) return true;
    const BigRat &x = P->first, &y = P->second;
    return y * y == x * x * x + a2 * x * x + a4 * x + a6;
}

ECPoint ECQ::add(const ECPoint& P, const ECPoint& Q) const {
    if (!P) return Q;
    if (!Q) return P;
    const BigRat &x1 = P->first, &y1 = P->second, &x2 = Q->first, &y2 = Q->second;
    if (x1 == x2 && y1 == -y2) return std::nullopt;
    BigRat lam;
    if (x1 == x2 && y1 == y2) {
        if (y1 == 0) return std::nullopt;
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4) / (2 * y1);
    } else {
        lam = (y2 - y1) / (x2 - x1);
    }
    BigRat x3 = lam * lam - a2 - x1 - x2;
    BigRat y3 = lam * (x1 - x3) - y1;
    return std::make_pair(x3, -y3 - BigRat(0));
}

ECPoint ECQ::neg(const ECPoint& P) const {
    if (!P) return P;
    return std::make_pair(P->first, -P->second);
}

int ECQ::order_bounded(const ECPoint& P, int maxn) const {
    ECPoint Q = P;
    for (int n = 1; n <= maxn; ++n) {
        if (!Q) return n;
        Q = add(Q, P);
    }
    return 0;
}

std::vector<ECPoint> torsion_points(const ECQ& e) {
    // Nagell-Lutz on an integral model: torsion (x, y) has integral coordinates
    // with y = 0 or y^2 | disc.
    BigInt A2(e.a2.get_num()), A4(e.a4.get_num()), A6(e.a6.get_num());
    if (e.a2.get_den() != 1 || e.a4.get_den() != 1 || e.a6.get_den() != 1)
        throw std::invalid_argument("torsion_points: integral model required");
    // disc of y^2 = x^3 + a2 x^2 + a4 x + a6 (up to the standard factor 16)
    BigInt b2 = 4 * A2, b4 = 2 * A4, b6 = 4 * A6;
    BigInt b8 = b2 * A6 - A4 * A4 * 1 + 0;
    b8 = 4 * A2 * A6 - A4 * A4;
    BigInt disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0) throw std::invalid_argument("torsion_points: singular curve");

    std::set<std::pair<BigRat, BigRat>> pts;
    auto add_if = [&](const BigInt& x, const BigInt& y) {
        ECPoint P = std::make_pair(BigRat(x), BigRat(y));
        if (!e.on_curve(P)) return;
        int ord = e.order_bounded(P, 12);
        if (ord > 0) {
            pts.insert(*P);
            pts.insert(std::make_pair(BigRat(x), BigRat(-y)));
        }
    };
    // y = 0: integer roots of the cubic divide A6 (or x = 0 when A6 = 0)
    {
        std::vector<BigInt> roots;
        if (A6 == 0) roots.push_back(0);
        BigInt c0 = A6;
        if (c0 != 0) {
            for (const auto& [p, ee] : factorize(c0)) (void)p, (void)ee;
            // enumerate divisors of |A6|
            std::vector<BigInt> divs{1};
            for (const auto& [p, ee] : factorize(c0)) {
                size_t n = divs.size();
                BigInt pe = 1;
                for (int i = 1; i <= ee; ++i) {
                    pe *= p;
                    for (size_t j = 0; j < n; ++j) divs.push_back(divs[j] * pe);
                }
            }
            for (const BigInt& d : divs)
                for (const BigInt& r : {d, BigInt(-d)})
                    if (((r * r + A2 * r + A4) * r + A6) == 0) roots.push_back(r);
        }
        for (const BigInt& r : roots) add_if(r, 0);
    }
    // y != 0: y^2 | disc
    BigInt adisc = abs(disc);
    std::vector<BigInt> ys{1};
    for (const auto& [p, ee] : factorize(adisc)) {
        size_t n = ys.size();
        BigInt pe = 1;
        for (int i = 1; i <= ee / 2; ++i) {
            pe *= p;
            for (size_t j = 0; j < n; ++j) ys.push_back(ys[j] * pe);
        }
    }
    for (const BigInt& y : ys) {
        // integer roots of x^3 + a2 x^2 + a4 x + (a6 - y^2)
        BigInt c0 = A6 - y * y;
        std::vector<BigInt> roots;
        if (c0 == 0) roots.push_back(0);
        else {
            std::vector<BigInt> divs{1};
            for (const auto& [p, ee] : factorize(c0)) {
                size_t n = divs.size();
                BigInt pe = 1;
                for (int i = 1; i <= ee; ++i) {
                    pe *= p;
                    for (size_t j = 0; j < n; ++j) divs.push_back(divs[j] * pe);
                }
            }
            for (const BigInt& d : divs)
                for (const BigInt& r : {d, BigInt(-d)})
                    if (((r * r + A2 * r + A4) * r + c0) == 0) roots.push_back(r);
        }
        for (const BigInt& r : roots) add_if(r, y);
    }
    std::vector<ECPoint> out;
    out.push_back(std::nullopt);
    for (const auto& p : pts) out.push_back(p);
    return out;
}

long count_points_mod_p(const std::array<BigInt, 4>& cubic, long p) {
    // y^2 = c3 x^3 + c2 x^2 + c1 x + c0 over F_p, projective count (one point at infinity
    // for a cubic model).
    std::vector<int> qr(p, 0);
    for (long t = 0; t < p; ++t) qr[t * t % p] = 1;
    std::array<long, 4> c;
    for (int i = 0; i < 4; ++i) {
        BigInt r = cubic[i] % p;
        if (r < 0) r += p;
        c[i] = to_long(r);
    }
    long n = 1;
    for (long x = 0; x < p; ++x) {
        long v = ((c[0] * x % p * x % p * x + c[1] * x % p * x + c[2] * x + c[3]) % p + p) % p;
        if (v == 0)
            n += 1;
        else if (qr[v])
            n += 2;
    }
    return n;
}

long torsion_bound_weierstrass(const WeierstrassModel& e, int min_good_primes, long pbound) {
    if (e.D != 1) throw std::invalid_argument("torsion_bound_weierstrass: rational model required");
    // integral model: scale x -> x/u^2, y -> y/u^3
    BigInt den = 1;
    for (const Coef* co : {&e.a2, &e.a4, &e.a6}) {
        BigInt d(co->first.get_den());
        den = den / gcd(den, d) * d;
    }
    BigRat u2(den * den), u4 = u2 * u2, u6 = u4 * u2;
    BigInt A2((e.a2.first * u2).get_num()), A4((e.a4.first * u4).get_num()), A6((e.a6.first * u6).get_num());
    BigInt b2 = 4 * A2, b4 = 2 * A4, b6 = 4 * A6, b8 = 4 * A2 * A6 - A4 * A4;
    BigInt disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0) throw std::invalid_argument("torsion_bound_weierstrass: singular");
    long g = 0;
    int used = 0;
    for (long p = 3; p <= pbound; p += 2) {
        if (!is_prime(BigInt(p))) continue;
        if (disc % p == 0) continue;
        long n = count_points_mod_p({BigInt(1), A2, A4, A6}, p);
        g = g == 0 ? n : to_long(gcd(BigInt(g), BigInt(n)));
        ++used;
        if (used >= min_good_primes && g <= 16) break;
    }
    if (used < min_good_primes)
        throw std::runtime_error("torsion_bound_weierstrass: not enough good primes below bound");
    return g;
}

}  // namespace apsieve
