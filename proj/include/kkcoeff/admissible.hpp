#pragma once

#include <map>
#include <utility>
#include <vector>

#include "kkcoeff/fgab.hpp"

namespace kkcoeff {

// Finite direct sums of Z, Q, Q/Z and finite cyclic groups.  This is the
// smallest class containing the f.g. abelian groups that is closed under
// the operations the torsion and rational theories need: torsion subgroup,
// kernel/cokernel of multiplication, rationalization.  No general hom
// calculus exists here on purpose.
struct AdmissibleGroup {
    std::size_t z_rank = 0;
    std::size_t q_rank = 0;
    std::size_t qz_rank = 0;
    std::vector<Int> torsion;  // invariant factors, ascending divisibility chain

    bool is_zero() const {
        return z_rank == 0 && q_rank == 0 && qz_rank == 0 && torsion.empty();
    }
    bool operator==(const AdmissibleGroup&) const = default;

    static AdmissibleGroup zero() { return {}; }
    static AdmissibleGroup rationals(std::size_t n) { return {0, n, 0, {}}; }
    static AdmissibleGroup q_mod_z(std::size_t n) { return {0, 0, n, {}}; }

    std::string to_string() const;
};

// Normalizes an arbitrary list of finite cyclic orders (entries >= 1) plus
// explicit ranks into canonical form.
AdmissibleGroup make_admissible(std::size_t z_rank, std::size_t q_rank, std::size_t qz_rank,
                                const std::vector<Int>& cyclic_orders);

AdmissibleGroup direct_sum(const AdmissibleGroup& a, const AdmissibleGroup& b);

// Lossless embedding of the f.g. class and its partial inverse.
AdmissibleGroup from_fgab(const FgAbGroup& g);
// Throws std::domain_error when q_rank or qz_rank is nonzero.
FgAbGroup to_fgab(const AdmissibleGroup& g);

// Subgroup of elements of finite order: drops Z and Q summands.
AdmissibleGroup torsion_subgroup(const AdmissibleGroup& g);

// Q^rank(g); torsion is annihilated.
AdmissibleGroup rationalize(const FgAbGroup& g);

// Kernel and cokernel of multiplication by q (q >= 2), summand by summand:
//   Z    -> (0, Z/q)        Q   -> (0, 0)
//   Q/Z  -> (Z/q, 0)        Z/d -> (Z/gcd(d,q), Z/gcd(d,q))
// Both results are finite.
std::pair<AdmissibleGroup, AdmissibleGroup> mult_kernel_cokernel(const AdmissibleGroup& g,
                                                                 const Int& q);

// Finite certificate of torsion structure: for every prime power p^e <= bound,
// the rank of the p^e-torsion layer modulo the p^(e-1)-torsion.  Equal
// profiles at every bound is equivalent to equal torsion structure up to the
// bound; a Q/Z summand contributes one to every layer.
struct TruncatedProfile {
    Int bound;
    std::map<std::pair<Int, int>, std::size_t> layers;  // (p, e) -> rank, all p^e <= bound

    bool operator==(const TruncatedProfile&) const = default;
    std::string to_string() const;
};

// Requires bound >= 2.
TruncatedProfile truncated_profile(const AdmissibleGroup& g, const Int& bound);

std::vector<Int> primes_up_to(const Int& bound);
// All (p, e) with p prime and p^e <= bound, sorted.
std::vector<std::pair<Int, int>> prime_powers_up_to(const Int& bound);

}  // namespace kkcoeff
