#pragma once

#include "apsieve/padic.hpp"
#include "apsieve/tuple_enum.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace apsieve {

// ci*x_i^2 + cj*x_j^2 = cm*x_m^2, integer coefficients, primitive, cm > 0.
struct TernaryRelation {
    int i, j, m;
    BigInt ci, cj, cm;
    bool operator==(const TernaryRelation& o) const {
        return i == o.i && j == o.j && m == o.m && ci == o.ci && cj == o.cj && cm == o.cm;
    }
    std::string str() const;
};

// All relations (j-m)(n+id) + (m-i)(n+jd) = (j-i)(n+md) specialized through Eq.(2),
// one per m outside {i, j}.
std::vector<TernaryRelation> pivot_system(const ATuple& t, int i, int j);

// lam*s^2 + mu*t^2 lies in c * (nonzero squares); (lam, mu) primitive, c squarefree.
struct SideRelation {
    BigInt lam, mu, c;
};

// alpha*s + beta*t with coefficients in O_K.
struct KLinearForm {
    QuadElem alpha, beta;
};

// The per-tuple curve construction: pivot choice, variable scalings, the two
// K-linear curve factors, the quadratic side factor and its class, and every
// side relation used by the delta search.
struct CurveFamily {
    ATuple tuple;
    int pivot_i = 0, pivot_j = 0;
    int D = -1;
    long sigma_i = 1, sigma_j = 1;  // x_i = sigma_i * t, x_j = sigma_j * s
    std::vector<KLinearForm> forms;     // exactly two
    BigInt quad_a, quad_b, quad_c;      // quadratic factor qa X^2 + qb X + qc
    BigInt cg;                          // its value class
    std::vector<SideRelation> relations;
    std::string describe() const;
};

// Derive the family for a tuple; pivots chosen by the documented deterministic
// rule unless given explicitly.  Throws when no construction pattern applies.
CurveFamily derive_curve_family(const ATuple& t,
                                std::optional<std::pair<int, int>> pivots = std::nullopt);

// Squarefree delta classes of F1*F2 over admissible coprime specializations,
// canonical representatives.  Superset bounded by per-prime parity vectors under
// the side relations, then filtered by local solubility of the quartic.
std::vector<QuadElem> delta_candidates(const CurveFamily& fam);

// ---------------------------------------------------------------------------

struct GenusOneQuartic {
    int D = 1;  // 1 = rational field
    // descending coefficients c4..c0 as (u, v): u + v*sqrt(D)
    std::array<std::pair<BigRat, BigRat>, 5> c;
    // known K-rational roots (linear factors), used for point machinery
    std::vector<std::pair<BigRat, BigRat>> roots;
    std::string label;  // free-form (delta tag)

    QuadElem coeff(int idx) const;           // requires D != 1
    BigRat rat_coeff(int idx) const;         // requires D == 1
    bool is_rational() const { return D == 1; }
};

// Y^2 = cg * delta * F1(X) F2(X) * (qa X^2 + qb X + qc), expanded and canonically scaled.
GenusOneQuartic build_quartic(const CurveFamily& fam, const QuadElem& delta);

// Rational quartic c * prod (X + alpha) for the rank-0 stage.
GenusOneQuartic quadruple_quartic(const ATuple& t, const std::vector<int>& alphas);

// Canonical scaling: integral coefficients, square content removed, unit-square
// orientation fixed.  Idempotent; equal curves up to square scaling agree.
GenusOneQuartic canonicalize(const GenusOneQuartic& q);

// (X, Y) -> (X, iY) maps C_delta to C_{-delta}; returns the negated-label curve.
GenusOneQuartic neg_delta_curve(const GenusOneQuartic& q);

struct WeierstrassModel {
    int D = 1;
    std::pair<BigRat, BigRat> a2, a4, a6;  // y^2 = x^3 + a2 x^2 + a4 x + a6
};

// Field element as a raw (u, v) pair relative to the curve's D (v = 0 when D = 1).
using Coef = std::pair<BigRat, BigRat>;

// Classical binary-quartic invariants I, J.
std::pair<Coef, Coef> quartic_invariants(const GenusOneQuartic& q);

// Jacobian Y^2 = X^3 - 27 I X - 27 J.
WeierstrassModel jacobian_model(const GenusOneQuartic& q);

// Exact j-invariant of y^2 = x^3 + a2 x^2 + a4 x + a6.
Coef j_invariant(const WeierstrassModel& e);

// Local solubility of Y^2 = q(X) over every completion of the base field above
// the rational place p (p prime or 0 for the infinite place).
bool local_solubility(const GenusOneQuartic& q, long p);

// ---------------------------------------------------------------------------

struct RankZeroEnumeration {
    GenusOneQuartic curve;
    long torsion_bound = 0;     // gcd of good reduction counts
    long torsion_exact = 0;     // |E(Q)| from Nagell-Lutz
    std::vector<BigRat> xs;     // rational X-coordinates found (affine)
    bool infinity_points = false;
    bool complete = false;
};

class OracleStore;  // oracle_client.hpp

// Bounded search (numerator, denominator <= 10^4) plus torsion accounting;
// requires a rank-0 oracle record for the Jacobian.
RankZeroEnumeration rank0_points(const GenusOneQuartic& q, const OracleStore& oracle,
                                 long height = 10000);

enum class EliminationStatus { Eliminated, Survives, Unresolved };

struct TupleElimination {
    EliminationStatus status = EliminationStatus::Unresolved;
    std::vector<std::pair<BigInt, BigInt>> nd_candidates;  // for Survives
    std::string detail;
};

// Rank-0 elimination over the five quadruples of a k=5 tuple.
TupleElimination rank0_eliminate_tuple(const ATuple& t, const OracleStore& oracle);

// Solve n+i d = a_i (sigma_i q tau)^2, n+j d = a_j (sigma_j p tau)^2 for X = p/q,
// over the small scaling freedom; integral coprime results only.
std::vector<std::pair<BigInt, BigInt>> backsubstitute(const ATuple& t, int i, int j,
                                                      const BigRat& X, long sigma_i, long sigma_j);

// Resolution of one lemma-level curve C_delta through the oracle: either the
// Chabauty X-set, or (rank 0) a certified enumeration of rational-X points.
struct CurveResolution {
    enum Kind { XSet, Unresolved } kind = Unresolved;
    std::vector<BigRat> xs;
    std::string detail;
};

CurveResolution resolve_lemma_curve(const CurveFamily& fam, const QuadElem& delta,
                                    const OracleStore& oracle);

// Full lemma-level resolution of a tuple: derive family, enumerate deltas,
// resolve every curve, back-substitute. Returns admissible (n,d) with d >= 1
// normalized via mirror, or Unresolved if any curve lacks oracle data.
struct LemmaResolution {
    bool resolved = false;
    std::vector<std::pair<BigInt, BigInt>> nd;  // d >= 1, includes d = 1 entries
    std::vector<std::string> notes;
};

LemmaResolution resolve_tuple_by_curves(const ATuple& t, const OracleStore& oracle);

// gcd of #E(F_p) over good odd primes; torsion order upper bound.
long torsion_bound_weierstrass(const WeierstrassModel& e, int min_good_primes = 5, long pbound = 200);

}  // namespace apsieve
