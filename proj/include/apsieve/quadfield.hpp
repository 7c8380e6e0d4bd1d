#pragma once

#include "apsieve/int_arith.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace apsieve {

// The two quadratic fields the curve constructions live in: Q(i) and Q(sqrt 3).
// Rings of integers are Z[i] and Z[sqrt 3]; both are norm-Euclidean.
struct QuadField {
    int D;
    explicit QuadField(int d) : D(d) {
        if (d != -1 && d != 3) throw std::invalid_argument("QuadField: D must be -1 or 3");
    }
    bool operator==(const QuadField& o) const { return D == o.D; }
};

// u + v*sqrt(D) with exact rational coordinates.
class QuadElem {
public:
    QuadElem(QuadField f, BigRat u, BigRat v) : D_(f.D), u_(std::move(u)), v_(std::move(v)) {
        u_.canonicalize();
        v_.canonicalize();
    }
    QuadElem(int D, long u, long v) : QuadElem(QuadField(D), BigRat(u), BigRat(v)) {}

    int D() const { return D_; }
    QuadField field() const { return QuadField(D_); }
    const BigRat& u() const { return u_; }
    const BigRat& v() const { return v_; }

    bool is_zero() const { return u_ == 0 && v_ == 0; }
    bool is_integral() const { return u_.get_den() == 1 && v_.get_den() == 1; }
    bool is_rational() const { return v_ == 0; }
    bool is_unit() const;

    QuadElem conjugate() const { return QuadElem(field(), u_, -v_); }
    BigRat norm() const { return u_ * u_ - BigRat(D_) * v_ * v_; }
    BigRat trace() const { return 2 * u_; }

    QuadElem operator-() const { return QuadElem(field(), -u_, -v_); }
    QuadElem operator+(const QuadElem& o) const { check(o); return QuadElem(field(), u_ + o.u_, v_ + o.v_); }
    QuadElem operator-(const QuadElem& o) const { check(o); return QuadElem(field(), u_ - o.u_, v_ - o.v_); }
    QuadElem operator*(const QuadElem& o) const {
        check(o);
        return QuadElem(field(), u_ * o.u_ + BigRat(D_) * v_ * o.v_, u_ * o.v_ + v_ * o.u_);
    }
    QuadElem operator*(const BigRat& c) const { return QuadElem(field(), u_ * c, v_ * c); }
    QuadElem operator/(const QuadElem& o) const;

    bool operator==(const QuadElem& o) const { return D_ == o.D_ && u_ == o.u_ && v_ == o.v_; }
    bool operator!=(const QuadElem& o) const { return !(*this == o); }

    std::string str() const;

private:
    void check(const QuadElem& o) const {
        if (D_ != o.D_) throw std::invalid_argument("QuadElem: field mismatch");
    }
    int D_;
    BigRat u_, v_;
};

std::ostream& operator<<(std::ostream& os, const QuadElem& x);

inline QuadElem qe_one(QuadField f) { return QuadElem(f, BigRat(1), BigRat(0)); }
inline QuadElem qe_zero(QuadField f) { return QuadElem(f, BigRat(0), BigRat(0)); }
inline QuadElem qe_gen(QuadField f) { return QuadElem(f, BigRat(0), BigRat(1)); }  // sqrt(D)

// gcd in the ring of integers, defined up to units. Inputs must be integral, not both zero.
QuadElem quad_int_gcd(const QuadElem& a, const QuadElem& b);

// sqrt in the field if it exists.
std::optional<QuadElem> is_square_in_field(const QuadElem& a);

// Canonical squarefree representative of a nonzero integral element modulo squares
// of integral elements and modulo unit squares.  Total order: |norm| ascending,
// then |u|, |v| ascending, then u > 0 preferred, then v > 0.
QuadElem squarefree_class(const QuadElem& a);

// Prime elements of O_K above the rational prime p.
std::vector<QuadElem> primes_above(QuadField f, const BigInt& p);

// Unit-square class representatives: {1, i} for D=-1; {1, -1, eps, -eps} for D=3.
std::vector<QuadElem> unit_class_reps(QuadField f);

// For D=3: multiply by eps^{+-2} until the coefficient height is minimal.
QuadElem reduce_by_unit_squares(const QuadElem& a);

}  // namespace apsieve
