#pragma once

#include "apsieve/quadfield.hpp"

#include <set>
#include <utility>

namespace apsieve {

// Three-valued local decisions: value known square / nonsquare / undecided at
// the given branch precision.
enum class Tri { Yes, No, Unknown };

// val is an exact integer attached to residues fixed mod p^k; perturbations
// change it by multiples of p^k.  Decide squareness in Q_p when stable.
Tri decide_square_qp(const BigInt& val, long p, int k);

// Same for an exact rational (no branch precision; fully decidable).
bool is_square_qp(const BigRat& val, long p);

long padic_val(const BigInt& n, long p);  // v_p(|n|), n != 0

// K tensor Q_p with exact decision procedures.
class LocalQuad {
public:
    enum Kind { Split, Inert, Ramified };

    LocalQuad(QuadField f, long p);

    Kind kind() const { return kind_; }
    long p() const { return p_; }
    int ramification() const { return e_; }

    // w integral, exact, components fixed mod p^k: squareness in K (x) Q_p.
    // For split p this requires squareness in both completions.
    Tri decide_square(const QuadElem& w, int k) const;

    // parity of v_pi(w) per prime above p (split: two entries); Unknown as -1.
    std::vector<int> valuation_parities(const QuadElem& w, int k) const;

    // exact full-precision square test for a fixed element (k = infinity)
    bool is_square_exact(const QuadElem& w) const;

private:
    Tri decide_component(const BigInt& comp, int k) const;
    long vpi_ramified(const QuadElem& w) const;

    QuadField f_;
    long p_;
    Kind kind_;
    int e_ = 1;
    int prec_ = 0;
    BigInt pmod_;        // p^prec
    BigInt r_;           // sqrt(D) mod p^prec for split p
    QuadElem pi_;        // uniformizer for ramified p
    std::set<std::pair<long, long>> unit_squares_;  // residues mod 8 (2-adic ramified)
};

}  // namespace apsieve
