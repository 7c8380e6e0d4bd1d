#include "apsieve/curve_lab.hpp"

#include <algorithm>
#include <sstream>

namespace apsieve {

namespace {

// (u, v) arithmetic relative to a shared D; valid for D = 1 as well.
Coef cmul(const Coef& a, const Coef& b, long D) {
    return {a.first * b.first + BigRat(D) * a.second * b.second,
            a.first * b.second + a.second * b.first};
}
Coef cadd(const Coef& a, const Coef& b) { return {a.first + b.first, a.second + b.second}; }
Coef csub(const Coef& a, const Coef& b) { return {a.first - b.first, a.second - b.second}; }
Coef cscale(const Coef& a, const BigRat& r) { return {a.first * r, a.second * r}; }
bool ciszero(const Coef& a) { return a.first == 0 && a.second == 0; }
Coef cdiv(const Coef& a, const Coef& b, long D) {
    BigRat n = b.first * b.first - BigRat(D) * b.second * b.second;
    Coef binv{b.first / n, -b.second / n};
    return cmul(a, binv, D);
}

std::vector<Coef> poly_mul(const std::vector<Coef>& a, const std::vector<Coef>& b, long D) {
    std::vector<Coef> out(a.size() + b.size() - 1, Coef{BigRat(0), BigRat(0)});
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] = cadd(out[i + j], cmul(a[i], b[j], D));
    return out;
}

}  // namespace

QuadElem GenusOneQuartic::coeff(int idx) const {
    if (D == 1) throw std::logic_error("GenusOneQuartic::coeff: rational curve");
    return QuadElem(QuadField(D), c[idx].first, c[idx].second);
}

BigRat GenusOneQuartic::rat_coeff(int idx) const {
    if (D != 1) throw std::logic_error("GenusOneQuartic::rat_coeff: quadratic field curve");
    return c[idx].first;
}

GenusOneQuartic build_quartic(const CurveFamily& fam, const QuadElem& delta) {
    long D = fam.D;
    if (delta.D() != D) throw std::invalid_argument("build_quartic: field mismatch");
    // lead = cg * delta
    Coef lead{delta.u() * BigRat(fam.cg), delta.v() * BigRat(fam.cg)};
    std::vector<Coef> poly{lead};
    GenusOneQuartic q;
    q.D = static_cast<int>(D);
    for (const auto& fm : fam.forms) {
        std::vector<Coef> lin{{fm.alpha.u(), fm.alpha.v()}, {fm.beta.u(), fm.beta.v()}};
        poly = poly_mul(poly, lin, D);
        QuadElem root = (-fm.beta) / fm.alpha;
        q.roots.push_back({root.u(), root.v()});
    }
    std::vector<Coef> quad{{BigRat(fam.quad_a), BigRat(0)},
                           {BigRat(fam.quad_b), BigRat(0)},
                           {BigRat(fam.quad_c), BigRat(0)}};
    poly = poly_mul(poly, quad, D);
    if (poly.size() != 5) throw std::logic_error("build_quartic: degree mismatch");
    for (int i = 0; i < 5; ++i) q.c[i] = poly[i];
    q.label = delta.str();
    GenusOneQuartic canon = canonicalize(q);
    canon.roots = q.roots;
    canon.label = q.label;
    // keep rational roots of the quadratic factor when it splits
    BigInt disc = fam.quad_b * fam.quad_b - 4 * fam.quad_a * fam.quad_c;
    if (auto r = perfect_sqrt(disc)) {
        if (fam.quad_a != 0) {
            canon.roots.push_back({BigRat(-fam.quad_b + *r) / BigRat(2 * fam.quad_a), BigRat(0)});
            canon.roots.push_back({BigRat(-fam.quad_b - *r) / BigRat(2 * fam.quad_a), BigRat(0)});
        }
    }
    return canon;
}

GenusOneQuartic quadruple_quartic(const ATuple& t, const std::vector<int>& alphas) {
    if (alphas.size() != 4) throw std::invalid_argument("quadruple_quartic: need 4 indices");
    BigInt prod = 1;
    for (int a : alphas) prod *= t.a[a];
    BigInt c = squarefree_part(prod);
    GenusOneQuartic q;
    q.D = 1;
    std::vector<Coef> poly{{BigRat(c), BigRat(0)}};
    for (int a : alphas) {
        std::vector<Coef> lin{{BigRat(1), BigRat(0)}, {BigRat(a), BigRat(0)}};  // X + a
        poly = poly_mul(poly, lin, 1);
        q.roots.push_back({BigRat(-a), BigRat(0)});
    }
    for (int i = 0; i < 5; ++i) q.c[i] = poly[i];
    GenusOneQuartic canon = canonicalize(q);
    canon.roots = q.roots;
    std::ostringstream lab;
    lab << "quadruple c=" << c << " alphas=";
    for (int a : alphas) lab << a;
    canon.label = lab.str();
    return canon;
}

GenusOneQuartic canonicalize(const GenusOneQuartic& q0) {
    GenusOneQuartic q = q0;
    // clear denominators with a square scaling
    BigInt l = 1;
    for (const auto& co : q.c) {
        BigInt d1(co.first.get_den()), d2(co.second.get_den());
        l = l / gcd(l, d1) * d1;
        l = l / gcd(l, d2) * d2;
    }
    BigRat l2(l * l);
    for (auto& co : q.c) co = cscale(co, l2);

    if (q.D == 1) {
        BigInt content = 0;
        for (const auto& co : q.c) content = gcd(content, BigInt(co.first.get_num()));
        if (content != 0) {
            BigInt h = squarefree_decompose(content).y;
            BigRat inv(BigInt(1), h * h);
            for (auto& co : q.c) co = cscale(co, inv);
        }
        return q;
    }

    QuadField f(q.D);
    // divide out prime squares from the common content
    auto divides_all = [&](const QuadElem& g) {
        for (const auto& co : q.c) {
            QuadElem x(f, co.first, co.second);
            if (x.is_zero()) continue;
            if (!(x / g).is_integral()) return false;
        }
        return true;
    };
    BigInt normprod = 0;
    for (const auto& co : q.c) {
        QuadElem x(f, co.first, co.second);
        if (!x.is_zero()) normprod = gcd(normprod, BigInt(x.norm().get_num()));
    }
    if (normprod > 1) {
        for (const auto& [p, e] : factorize(normprod)) {
            (void)e;
            for (const QuadElem& pi : primes_above(f, p)) {
                QuadElem pi2 = pi * pi;
                while (divides_all(pi2)) {
                    for (auto& co : q.c) {
                        QuadElem x(f, co.first, co.second);
                        QuadElem y = x / pi2;
                        co = {y.u(), y.v()};
                    }
                }
            }
        }
    }
    if (q.D == -1) {
        // orient by the first nonzero coefficient: u > 0, or u = 0 and v > 0
        for (const auto& co : q.c) {
            if (ciszero(co)) continue;
            bool flip = (co.first < 0) || (co.first == 0 && co.second < 0);
            if (flip)
                for (auto& x : q.c) x = cscale(x, BigRat(-1));
            break;
        }
        return q;
    }
    // D = 3: reduce the vector by eps^{+-2}; no sign flip available
    const QuadElem e2(3, 7, 4), e2i(3, 7, -4);
    auto height = [&](const GenusOneQuartic& qq) {
        BigRat h(0);
        for (const auto& co : qq.c) h += abs(co.first) + abs(co.second) * 2;
        return h;
    };
    bool improved = true;
    while (improved) {
        improved = false;
        for (const QuadElem& m : {e2, e2i}) {
            GenusOneQuartic trial = q;
            for (auto& co : trial.c) {
                QuadElem x(f, co.first, co.second);
                QuadElem y = x * m;
                co = {y.u(), y.v()};
            }
            if (height(trial) < height(q)) {
                q = trial;
                improved = true;
            }
        }
    }
    return q;
}

GenusOneQuartic neg_delta_curve(const GenusOneQuartic& q0) {
    if (q0.D != -1) throw std::invalid_argument("neg_delta_curve: field must contain i");
    GenusOneQuartic q = q0;
    for (auto& co : q.c) co = cscale(co, BigRat(-1));
    q.label = "-(" + q0.label + ")";
    return canonicalize(q);
}

std::pair<Coef, Coef> quartic_invariants(const GenusOneQuartic& q) {
    long D = q.D;
    const auto& a = q.c[0];
    const auto& b = q.c[1];
    const auto& cc = q.c[2];
    const auto& d = q.c[3];
    const auto& e = q.c[4];
    Coef I = cadd(csub(cscale(cmul(a, e, D), 12), cscale(cmul(b, d, D), 3)), cmul(cc, cc, D));
    Coef J = cscale(cmul(cmul(a, cc, D), e, D), 72);
    J = csub(J, cscale(cmul(cmul(a, d, D), d, D), 27));
    J = csub(J, cscale(cmul(cmul(b, b, D), e, D), 27));
    J = cadd(J, cscale(cmul(cmul(b, cc, D), d, D), 9));
    J = csub(J, cscale(cmul(cmul(cc, cc, D), cc, D), 2));
    // disc nonzero check: 4I^3 - J^2 != 0
    Coef I3 = cmul(cmul(I, I, D), I, D);
    Coef dd = csub(cscale(I3, 4), cmul(J, J, D));
    if (ciszero(dd)) throw std::invalid_argument("quartic_invariants: singular quartic");
    return {I, J};
}

WeierstrassModel jacobian_model(const GenusOneQuartic& q) {
    auto [I, J] = quartic_invariants(q);
    WeierstrassModel e;
    e.D = q.D;
    e.a2 = {BigRat(0), BigRat(0)};
    e.a4 = cscale(I, -27);
    e.a6 = cscale(J, -27);
    return e;
}

Coef j_invariant(const WeierstrassModel& e) {
    long D = e.D;
    // depress: A = a4 - a2^2/3, B = a6 - a2 a4 /3 + 2 a2^3/27
    Coef A = csub(e.a4, cscale(cmul(e.a2, e.a2, D), BigRat(1, 3)));
    Coef B = cadd(csub(e.a6, cscale(cmul(e.a2, e.a4, D), BigRat(1, 3))),
                  cscale(cmul(cmul(e.a2, e.a2, D), e.a2, D), BigRat(2, 27)));
    Coef A3 = cmul(cmul(A, A, D), A, D);
    Coef num = cscale(A3, BigRat(4 * 1728));
    Coef den = cadd(cscale(A3, 4), cscale(cmul(B, B, D), 27));
    if (ciszero(den)) throw std::invalid_argument("j_invariant: singular curve");
    return cdiv(num, den, D);
}

}  // namespace apsieve
