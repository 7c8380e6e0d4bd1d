#include "apsieve/padic.hpp"

namespace apsieve {

long padic_val(const BigInt& n, long p) {
    if (n == 0) throw std::invalid_argument("padic_val: zero");
    BigInt m = abs(n);
    long v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

namespace {

bool unit_square_qp(const BigInt& u, long p) {
    if (p == 2) {
        BigInt r;
        mpz_mod_ui(r.get_mpz_t(), u.get_mpz_t(), 8);
        return r == 1;
    }
    return jacobi_symbol(u, BigInt(p)) == 1;
}

}  // namespace

Tri decide_square_qp(const BigInt& val, long p, int k) {
    if (val == 0) return Tri::Unknown;
    long v = padic_val(val, p);
    int slack = (p == 2) ? 3 : 1;
    if (v + slack > k) return Tri::Unknown;
    if (v % 2) return Tri::No;
    BigInt u = val;
    for (long i = 0; i < v; ++i) u /= p;
    return unit_square_qp(u, p) ? Tri::Yes : Tri::No;
}

bool is_square_qp(const BigRat& val, long p) {
    if (val == 0) return true;
    BigInt n = BigInt(val.get_num()) * BigInt(val.get_den());
    long v = padic_val(n, p);
    if (v % 2) return false;
    BigInt u = n;
    for (long i = 0; i < v; ++i) u /= p;
    return unit_square_qp(u, p);
}

LocalQuad::LocalQuad(QuadField f, long p) : f_(f), p_(p), pi_(qe_zero(f)) {
    const int D = f.D;
    bool ram = (p == 2) || (D == 3 && p == 3);
    if (ram) {
        kind_ = Ramified;
        if (D == -1) {
            pi_ = QuadElem(-1, 1, 1);
            e_ = 2;
        } else if (p == 2) {
            pi_ = QuadElem(3, 1, 1);
            e_ = 2;
        } else {
            pi_ = QuadElem(3, 0, 1);
            e_ = 1;
        }
        if (p == 2) {
            // unit squares modulo pi^5; 8 = pi^6 so residues mod 8 suffice,
            // adding the pi^5 shift to each square.
            QuadElem pi5 = pi_ * pi_ * pi_ * pi_ * pi_;
            long su = mpz_class(pi5.u().get_num() % 8).get_si();
            long sv = mpz_class(pi5.v().get_num() % 8).get_si();
            su = (su % 8 + 8) % 8;
            sv = (sv % 8 + 8) % 8;
            for (long a = 0; a < 8; ++a) {
                for (long b = 0; b < 8; ++b) {
                    QuadElem w(f, BigRat(a), BigRat(b));
                    BigRat n = w.norm();
                    if (BigInt(n.get_num()) % 2 == 0) continue;  // not a unit
                    QuadElem w2 = w * w;
                    long cu = ((mpz_class(w2.u().get_num()).get_si() % 8) + 8) % 8;
                    long cv = ((mpz_class(w2.v().get_num()).get_si() % 8) + 8) % 8;
                    unit_squares_.insert({cu, cv});
                    unit_squares_.insert({(cu + su) % 8, (cv + sv) % 8});
                }
            }
        }
        return;
    }
    long dmod = ((D % p) + p) % p;
    bool split;
    if (dmod == 0)
        split = false;  // cannot happen for our D/p combinations
    else {
        BigInt leg = 0;
        split = jacobi_symbol(BigInt(D), BigInt(p)) == 1;
        (void)leg;
    }
    if (split) {
        kind_ = Split;
        prec_ = (p == 3) ? 24 : 18;
        pmod_ = 1;
        for (int i = 0; i < prec_; ++i) pmod_ *= p;
        // Hensel-lift sqrt(D) mod p^prec
        long r0 = -1;
        for (long x = 0; x < p; ++x) {
            if (((x * x - D) % p + p) % p == 0) {
                r0 = x;
                break;
            }
        }
        BigInt r = r0, mod = p;
        while (mod < pmod_) {
            mod = mod * mod;
            if (mod > pmod_) mod = pmod_;
            BigInt inv2r;
            BigInt two_r = 2 * r % mod;
            if (mpz_invert(inv2r.get_mpz_t(), two_r.get_mpz_t(), mod.get_mpz_t()) == 0)
                throw std::runtime_error("LocalQuad: Hensel lift failed");
            r = (r - (r * r - D) % mod * inv2r) % mod;
            if (r < 0) r += mod;
        }
        r_ = r % pmod_;
    } else {
        kind_ = Inert;
    }
}

Tri LocalQuad::decide_component(const BigInt& comp, int k) const {
    // comp is known mod p^min(k, prec): decide squareness in Q_p
    BigInt c = comp % pmod_;
    if (c < 0) c += pmod_;
    if (c == 0) return Tri::Unknown;
    long v = padic_val(c, p_);
    int eff = std::min(k, prec_ - 1);
    int slack = (p_ == 2) ? 3 : 1;
    if (v + slack > eff) return Tri::Unknown;
    if (v % 2) return Tri::No;
    BigInt u = c;
    for (long i = 0; i < v; ++i) u /= p_;
    return unit_square_qp(u, p_) ? Tri::Yes : Tri::No;
}

long LocalQuad::vpi_ramified(const QuadElem& w) const {
    BigRat n = w.norm();
    return padic_val(BigInt(n.get_num()), p_);
}

Tri LocalQuad::decide_square(const QuadElem& w, int k) const {
    if (w.is_zero()) return Tri::Unknown;
    if (kind_ == Split) {
        BigInt a(w.u().get_num()), b(w.v().get_num());
        Tri t1 = decide_component(a + b * r_, k);
        Tri t2 = decide_component(a - b * r_, k);
        if (t1 == Tri::No || t2 == Tri::No) return Tri::No;
        if (t1 == Tri::Yes && t2 == Tri::Yes) return Tri::Yes;
        return Tri::Unknown;
    }
    if (kind_ == Inert) {
        BigInt a(w.u().get_num()), b(w.v().get_num());
        long va = (a == 0) ? 1000000 : padic_val(a, p_);
        long vb = (b == 0) ? 1000000 : padic_val(b, p_);
        long v = std::min(va, vb);
        if (v + 1 > k) return Tri::Unknown;
        if (v % 2) return Tri::No;
        BigInt pa = 1;
        for (long i = 0; i < v; ++i) pa *= p_;
        BigInt au = a / pa, bu = b / pa;
        // unit in F_{p^2}: square iff u^((p^2-1)/2) = 1
        long p = p_;
        auto mulf = [&](std::pair<long, long> x, std::pair<long, long> y) {
            long D = f_.D;
            long ru = ((x.first * y.first + ((D % p + p) % p) * x.second % p * y.second) % p + p) % p;
            long rv = ((x.first * y.second + x.second * y.first) % p + p) % p;
            return std::make_pair(ru, rv);
        };
        std::pair<long, long> base{((mpz_class(au % p).get_si()) % p + p) % p,
                                   ((mpz_class(bu % p).get_si()) % p + p) % p};
        std::pair<long, long> acc{1, 0};
        long e = (p * p - 1) / 2;
        while (e) {
            if (e & 1) acc = mulf(acc, base);
            base = mulf(base, base);
            e >>= 1;
        }
        if (acc == std::make_pair(1L, 0L)) return Tri::Yes;
        return Tri::No;
    }
    // ramified
    long v = vpi_ramified(w);
    int need = 2 * e_ + 1;
    if (v + need > 2 * k) return Tri::Unknown;
    if (v % 2) return Tri::No;
    QuadElem y = w;
    for (long i = 0; i < v; ++i) y = y / pi_;
    if (!y.is_integral()) return Tri::No;
    if (p_ == 2) {
        long cu = ((mpz_class(y.u().get_num() % 8).get_si()) + 8) % 8;
        long cv = ((mpz_class(y.v().get_num() % 8).get_si()) + 8) % 8;
        return unit_squares_.count({cu, cv}) ? Tri::Yes : Tri::No;
    }
    // p = 3 ramified (D = 3): unit square iff residue in F_3 is 1
    long a3 = ((mpz_class(y.u().get_num() % 3).get_si()) + 3) % 3;
    return (a3 == 1) ? Tri::Yes : Tri::No;
}

std::vector<int> LocalQuad::valuation_parities(const QuadElem& w, int k) const {
    std::vector<int> out;
    if (w.is_zero()) {
        out.assign(kind_ == Split ? 2 : 1, -1);
        return out;
    }
    if (kind_ == Split) {
        BigInt a(w.u().get_num()), b(w.v().get_num());
        for (int s : {1, -1}) {
            BigInt c = (a + s * b * r_) % pmod_;
            if (c < 0) c += pmod_;
            if (c == 0) {
                out.push_back(-1);
                continue;
            }
            long v = padic_val(c, p_);
            if (v + 1 > std::min(static_cast<long>(k), static_cast<long>(prec_ - 1)))
                out.push_back(-1);
            else
                out.push_back(static_cast<int>(v % 2));
        }
        return out;
    }
    if (kind_ == Inert) {
        BigInt a(w.u().get_num()), b(w.v().get_num());
        long va = (a == 0) ? 1000000 : padic_val(a, p_);
        long vb = (b == 0) ? 1000000 : padic_val(b, p_);
        long v = std::min(va, vb);
        out.push_back(v + 1 > k ? -1 : static_cast<int>(v % 2));
        return out;
    }
    long v = vpi_ramified(w);
    out.push_back(v + 2 > 2 * k ? -1 : static_cast<int>(v % 2));
    return out;
}

bool LocalQuad::is_square_exact(const QuadElem& w) const {
    Tri t = decide_square(w, 1000);
    if (t == Tri::Unknown) throw std::runtime_error("LocalQuad: exact square test undecided");
    return t == Tri::Yes;
}

}  // namespace apsieve
