#include "apsieve/quadfield.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <tuple>

namespace apsieve {

bool QuadElem::is_unit() const {
    if (!is_integral()) return false;
    BigRat n = norm();
    return n == 1 || n == -1;
}

QuadElem QuadElem::operator/(const QuadElem& o) const {
    check(o);
    if (o.is_zero()) throw std::invalid_argument("QuadElem: division by zero");
    BigRat n = o.norm();
    // 1/(u+v s) = (u - v s)/norm
    QuadElem inv(field(), o.u_ / n, -o.v_ / n);
    return *this * inv;
}

std::string QuadElem::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadElem& x) {
    os << x.u();
    if (x.v() != 0) {
        os << (x.v() > 0 ? "+" : "") << x.v() << (x.D() == -1 ? "*i" : "*sqrt3");
    }
    return os;
}

namespace {

BigInt round_rat(const BigRat& q) {
    // nearest integer, ties toward zero side are fine for the Euclidean step
    BigInt num = q.get_num(), den = q.get_den();
    BigInt twice = 2 * num + den;  // floor((2n+d)/(2d)) = round(n/d) for positive
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), BigInt(2 * den).get_mpz_t());
    return r;
}

QuadElem round_to_integers(const QuadElem& x) {
    return QuadElem(x.field(), BigRat(round_rat(x.u())), BigRat(round_rat(x.v())));
}

}  // namespace

QuadElem quad_int_gcd(const QuadElem& a0, const QuadElem& b0) {
    if (!a0.is_integral() || !b0.is_integral())
        throw std::invalid_argument("quad_int_gcd: inputs must be algebraic integers");
    if (a0.is_zero() && b0.is_zero())
        throw std::invalid_argument("quad_int_gcd: gcd(0,0) undefined");
    QuadElem a = a0, b = b0;
    while (!b.is_zero()) {
        QuadElem q = round_to_integers(a / b);
        QuadElem r = a - b * q;
        a = b;
        b = r;
    }
    return a;
}

std::optional<QuadElem> is_square_in_field(const QuadElem& a) {
    QuadField f = a.field();
    if (a.is_zero()) return qe_zero(f);
    const BigRat D(f.D);
    if (a.v() == 0) {
        if (auto r = perfect_sqrt(a.u())) return QuadElem(f, *r, BigRat(0));
        if (auto r = perfect_sqrt(a.u() / D)) return QuadElem(f, BigRat(0), *r);
        return std::nullopt;
    }
    // beta = x + y s, x^2 + D y^2 = u, 2xy = v; x^2 is a root of t^2 - u t + D v^2/4
    auto nd = perfect_sqrt(a.norm());
    if (!nd) return std::nullopt;
    for (const BigRat& s : {*nd, BigRat(-*nd)}) {
        BigRat t = (a.u() + s) / 2;
        auto x = perfect_sqrt(t);
        if (x && *x != 0) {
            BigRat y = a.v() / (2 * *x);
            if (*x * *x + D * y * y == a.u()) return QuadElem(f, *x, y);
        }
    }
    return std::nullopt;
}

std::vector<QuadElem> primes_above(QuadField f, const BigInt& p) {
    if (!is_prime(p)) throw std::invalid_argument("primes_above: p must be prime");
    long pl = to_long(p);
    if (f.D == -1) {
        if (pl == 2) return {QuadElem(-1, 1, 1)};
        if (pl % 4 == 1) {
            for (long a = 1; a * a <= pl; ++a) {
                if (auto b = perfect_sqrt(BigInt(pl - a * a)))
                    return {QuadElem(-1, a, to_long(*b)), QuadElem(-1, a, -to_long(*b))};
            }
            throw std::runtime_error("primes_above: two-square decomposition failed");
        }
        return {QuadElem(QuadField(-1), BigRat(p), BigRat(0))};
    }
    // D = 3
    if (pl == 2) return {QuadElem(3, 1, 1)};
    if (pl == 3) return {QuadElem(3, 0, 1)};
    BigInt three(3);
    if (jacobi_symbol(three, p) == 1) {
        for (long b = 1; b <= 2 * pl; ++b) {
            for (long sgn : {1, -1}) {
                long a2 = sgn * pl + 3 * b * b;
                if (a2 < 0) continue;
                if (auto a = perfect_sqrt(BigInt(a2)))
                    return {QuadElem(3, to_long(*a), b), QuadElem(3, to_long(*a), -b)};
            }
        }
        throw std::runtime_error("primes_above: split prime representation failed");
    }
    return {QuadElem(QuadField(3), BigRat(p), BigRat(0))};
}

std::vector<QuadElem> unit_class_reps(QuadField f) {
    if (f.D == -1) return {QuadElem(-1, 1, 0), QuadElem(-1, 0, 1)};
    QuadElem eps(3, 2, 1);
    return {QuadElem(3, 1, 0), QuadElem(3, -1, 0), eps, -eps};
}

QuadElem reduce_by_unit_squares(const QuadElem& a) {
    if (a.D() != 3 || a.is_zero()) return a;
    const QuadElem e2(3, 7, 4);    // (2+sqrt3)^2
    const QuadElem e2i(3, 7, -4);  // (2-sqrt3)^2
    auto height = [](const QuadElem& x) {
        BigRat h = abs(x.u()) + abs(x.v()) * 2;
        return h;
    };
    QuadElem cur = a;
    bool improved = true;
    while (improved) {
        improved = false;
        for (const QuadElem& m : {e2, e2i}) {
            QuadElem nxt = cur * m;
            if (height(nxt) < height(cur)) {
                cur = nxt;
                improved = true;
            }
        }
    }
    return cur;
}

namespace {

// Order key for canonical class representatives.
auto canon_key(const QuadElem& x) {
    return std::tuple<BigRat, BigRat, BigRat, int, int>(
        abs(x.norm()), abs(x.u()), abs(x.v()),
        x.u() > 0 ? 0 : 1,
        x.v() > 0 ? 0 : 1);
}

}  // namespace

QuadElem squarefree_class(const QuadElem& a0) {
    if (a0.is_zero()) throw std::invalid_argument("squarefree_class: zero input");
    if (!a0.is_integral()) throw std::invalid_argument("squarefree_class: input must be integral");
    QuadElem a = a0;
    // divide out squares of primes dividing the norm
    BigInt n(a.norm().get_num());
    for (const auto& [p, e] : factorize(n)) {
        (void)e;
        for (const QuadElem& pi : primes_above(a.field(), p)) {
            while (true) {
                QuadElem q = a / (pi * pi);
                if (q.is_integral())
                    a = q;
                else
                    break;
            }
        }
    }
    // orbit under unit squares: {a, -a} for D=-1 (since -1 = i^2);
    // for D=3 unit squares are eps^{2k}, so reduce and compare a, a*eps^2-neighbourhood
    std::vector<QuadElem> orbit;
    if (a.D() == -1) {
        orbit = {a, -a};
    } else {
        QuadElem r = reduce_by_unit_squares(a);
        const QuadElem e2(3, 7, 4), e2i(3, 7, -4);
        for (const QuadElem& base : {r, r * e2, r * e2i}) orbit.push_back(base);
        // note: -1 is not a unit square in Z[sqrt3], so the sign is not free here
    }
    QuadElem best = orbit.front();
    for (const QuadElem& x : orbit) {
        if (canon_key(x) < canon_key(best)) best = x;
    }
    return best;
}

}  // namespace apsieve
