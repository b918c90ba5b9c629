#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kkcoeff/admissible.hpp"
#include "kkcoeff/theory.hpp"

namespace kkcoeff {

// Finite-coefficient (mod q) theory of a graded base, realized on the split
// model: group at n is base_n/q (+) q-torsion of base_{n-1}, with the
// extension solved explicitly under the annihilator bound q (2q when
// q = 2 mod 4) and the resolution mode kept.
//
// Natural coordinates at degree n: one generator per generator of base_n
// (the cokernel part, order gcd(d_i, q), or q on free generators), followed
// by one generator per torsion factor d'_j of base_{n-1} (the torsion part,
// order gcd(d'_j, q), realized as the element (d'_j/g_j) e'_j).  All maps
// between coefficient theories are written in these coordinates and then
// conjugated into canonical ones.
struct ModQTheory {
    struct Degree {
        FgAbGroup group;
        ExtensionResolution resolution;
        std::vector<Int> natural_orders;
        std::size_t cok_count = 0;  // natural generators belonging to base_n
        IntMatrix to_canon;         // group coords <- natural coords
        IntMatrix from_canon;       // natural coords <- group coords
    };

    GradedTheory base;
    Int q;
    std::vector<Degree> degrees;  // size == base.period, residue-indexed

    const FgAbGroup& at(long long n) const;
    const Degree& degree(long long n) const;
    GradedTheory as_theory() const;
};

// Requires q >= 2.
ModQTheory mod_q(const GradedTheory& base, const Int& q);

// The integral Bockstein at degree n: projection to the torsion part
// followed by the inclusion of q-torsion into base_{n-1}.
GroupHom bockstein(const ModQTheory& m, long long n);
// Reduction at degree n: quotient of base_n onto the cokernel part.
GroupHom reduction(const ModQTheory& m, long long n);

// The coefficient transition for q | q': multiplication by q'/q on the
// cokernel part, inclusion of torsion layers on the torsion part.
// Functorial along divisibility chains.
DegreewiseMap transition(const ModQTheory& from, const ModQTheory& to);

struct VerifiedSequence {
    LongSequence seq;
    ExactnessReport report;
};

// ... -> M_{n+1} -d-> H_n -xq-> H_n -red-> M_n -d-> H_{n-1} -> ...
VerifiedSequence build_mod_q_sequence(const GradedTheory& base, const Int& q);

// ... -> M^(p)_n -> M^(pq)_n -> M^(q)_n -d-> M^(p)_{n-1} -> ...
// The boundary is the composite of the integral Bockstein of the q-theory
// with the reduction of the p-theory.
VerifiedSequence build_pq_sequence(const GradedTheory& base, const Int& p, const Int& q);

// The torsion theory: closed form (Q/Z)^rank(base_n) (+) torsion(base_{n-1});
// no extension ambiguity (Q/Z is injective).
struct TorsionTheory {
    GradedTheory base;
    std::vector<AdmissibleGroup> groups;  // residue-indexed

    const AdmissibleGroup& at(long long n) const;
};

TorsionTheory torsion(const GradedTheory& base);

// Degreewise rationalization.
std::vector<AdmissibleGroup> rational(const GradedTheory& base);

// A cofinal divisibility chain q_1 | q_2 | q_3 | ... through which the
// torsion theory is the colimit of the mod-q theories.  `supports` limits
// which primes the chain exhausts (the factorial chain exhausts all of
// them; a p-power chain only p).
struct DivisibilityIndex {
    std::string name;
    std::function<Int(long long)> value;    // k >= 1, monotone, value(k) | value(k+1)
    std::function<bool(const Int&)> supports;

    static DivisibilityIndex factorial();
    static DivisibilityIndex prime_powers(const Int& p);
};

// Brute-forces the direct limit of the mod-q_k groups along the chain:
// evaluates images of chain transitions on a doubling subsequence of
// indices and stops once the truncated profiles repeat and every supported
// prime power <= profile_bound divides the current chain value.  Throws a
// diagnostic when the hard index cap is hit first.  The profile is only
// meaningful at primes the chain supports.
std::vector<TruncatedProfile> colimit_oracle(const GradedTheory& base,
                                             const DivisibilityIndex& chain,
                                             const Int& profile_bound);

struct StructuralReport {
    struct Check {
        std::string label;
        bool pass = false;
        std::string detail;
    };
    std::vector<Check> checks;
    bool all_pass = true;

    void add(std::string label, bool pass, std::string detail = "");
};

// ... -> T_{n+1} -d-> H_n -r-> H_n (x) Q -> T_n -d-> H_{n-1} -> ...
// verified structurally: ker(r) is the torsion subgroup, coker(r) is
// (Q/Z)^rank, and both match the closed-form components of T at the
// adjacent degrees.
StructuralReport build_rational_torsion_sequence(const GradedTheory& base);

// ... -> M_n -> T_n -xq-> T_n -> M_{n-1} -> ...  verified by splicing:
// M_n must equal coker(xq on T_{n+1}) (+) ker(xq on T_n), with the
// kernel/cokernel computed through the admissible calculus.
StructuralReport build_qz_bockstein_sequence(const GradedTheory& base, const Int& q);

struct OrderBoundReport {
    struct Degree {
        int residue = 0;
        Int exponent;
        bool pass = false;
    };
    Int q;
    std::vector<Degree> degrees;
    bool pass = true;
};

// PASS iff every degree's exponent divides q, or divides 2q when
// q = 2 (mod 4).
OrderBoundReport order_bound_check(const ModQTheory& m);

// A degree-additive bilinear pairing of graded theories, given by integer
// values on canonical generator pairs.  forms[a][b] maps the generator pair
// (i of left_a, j of right_b) -- column i * right_b.gens() + j -- to
// out_{a+b+degree_shift}; construction rejects data incompatible with the
// generator orders (the non-bilinear inputs).
struct BilinearPairing {
    GradedTheory left, right, out;
    int degree_shift = 0;  // 0 integrally; -2 for mod-pq products
    std::vector<std::vector<IntMatrix>> forms;
};

BilinearPairing make_pairing(GradedTheory left, GradedTheory right, GradedTheory out,
                             std::vector<std::vector<IntMatrix>> forms, int degree_shift = 0);

// Evaluates the pairing on elements in canonical coordinates.
std::vector<Int> pair_elements(const BilinearPairing& p, long long a, const std::vector<Int>& x,
                               long long b, const std::vector<Int>& y);

// Associativity of a two-stage bracketing on every generator triple:
//   ab: A x B -> X      ab_c: X x C -> W
//   bc: B x C -> Y      a_bc: A x Y -> W
bool pairings_associative(const BilinearPairing& ab, const BilinearPairing& ab_c,
                          const BilinearPairing& bc, const BilinearPairing& a_bc);

// The induced pairing after tensoring with Q: torsion generators die and
// the forms restrict to the free parts (values kept integral).
BilinearPairing rational_product_transport(const BilinearPairing& p);

struct ContractReport {
    bool pass = true;
    std::vector<std::string> violations;

    void fail(std::string what);
};

// Contract checks for a candidate mod-p x mod-q -> mod-pq product: the
// shape (degree shift -2, the product drops two degrees), well-definedness
// on generator orders, and pq-annihilation of every value.  The pairing
// itself is user-supplied and no canonical normalization is derived here;
// associativity across two stages is pairings_associative.
ContractReport mod_pq_product_check(const BilinearPairing& candidate, const Int& p, const Int& q);

}  // namespace kkcoeff
