#pragma once

#include "kkcoeff/int_matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kkcoeff {

// Finitely generated abelian group in invariant factor form:
//   Z/d1 + Z/d2 + ... + Z/dk + Z^rank,   2 <= d1 | d2 | ... | dk.
// Canonical generator order everywhere in this library: the k torsion
// generators first (ascending invariant factors), then the rank free
// generators.  Structural equality is isomorphism.
struct FgAbGroup {
    std::vector<Int> torsion;
    std::size_t rank = 0;

    static FgAbGroup zero() { return {}; }
    static FgAbGroup free_group(std::size_t r);
    static FgAbGroup cyclic(const Int& d);  // d = 0 gives Z, d = 1 gives 0

    bool operator==(const FgAbGroup& o) const = default;

    std::size_t gens() const { return torsion.size() + rank; }
    bool is_zero() const { return rank == 0 && torsion.empty(); }
    bool is_finite() const { return rank == 0; }
    Int order() const;     // finite groups only
    Int exponent() const;  // finite groups only

    // Order of the canonical generator i: invariant factor, or 0 if free.
    Int gen_order(std::size_t i) const;

    // Cyclic orders of all generators in canonical order (0 for free).
    std::vector<Int> cyclic_orders() const;

    // Relation lattice in Z^gens: columns d_i e_i for the torsion
    // coordinates.  gens x torsion.size().
    IntMatrix relation_lattice() const;

    std::string to_string() const;
};

// Canonical form of a direct sum of cyclic groups given by arbitrary orders
// (0 = free factor, 1s dropped).  Orders need not form a chain.
FgAbGroup from_cyclic_orders(std::vector<Int> orders);

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup torsion_subgroup_of(const FgAbGroup& g);

// Result of canonicalizing the presentation Z^n / <orders[j] e_j>:
// to_canon maps natural coordinates to canonical ones, from_canon is a
// section; to_canon * from_canon = I exactly, the other composite is the
// identity modulo relations.
struct Canonicalized {
    FgAbGroup group;
    IntMatrix to_canon;    // group.gens() x n
    IntMatrix from_canon;  // n x group.gens()
};

Canonicalized canonicalize_presentation(const std::vector<Int>& natural_orders);

// Homomorphism in canonical coordinates; matrix is target.gens() x
// source.gens(), column j the image of the j-th source generator.  Torsion
// rows are kept reduced mod the row's invariant factor.
struct GroupHom {
    FgAbGroup source, target;
    IntMatrix matrix;
};

// Validates well-definedness: for a source generator of order d, d times its
// image must vanish in the target.  Throws std::invalid_argument otherwise.
GroupHom make_hom(const FgAbGroup& source, const FgAbGroup& target, IntMatrix matrix);
bool well_defined(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& matrix);

GroupHom identity_hom(const FgAbGroup& g);
GroupHom zero_hom(const FgAbGroup& source, const FgAbGroup& target);
GroupHom multiplication_hom(const FgAbGroup& g, const Int& q);
GroupHom compose(const GroupHom& g, const GroupHom& f);  // g after f
bool hom_equal(const GroupHom& f, const GroupHom& g);

std::vector<Int> apply_hom(const GroupHom& f, const std::vector<Int>& x);

// A subgroup presented inside an ambient group: its canonical type plus the
// canonical generators written as ambient elements (ambient.gens() x
// type.gens()).
struct Subgroup {
    FgAbGroup type;
    IntMatrix embedding;
};

// A quotient of an ambient group: canonical type plus the projection matrix
// (type.gens() x ambient.gens()).
struct Quotient {
    FgAbGroup type;
    IntMatrix projection;
};

Subgroup kernel(const GroupHom& f);   // subgroup of f.source
Subgroup image(const GroupHom& f);    // subgroup of f.target
Quotient cokernel(const GroupHom& f);

// Type and ambient generators of L1/L2 for sublattices L2 <= L1 of Z^n given
// by generator columns.  Throws if L2 is not contained in L1.
Subgroup lattice_quotient(const IntMatrix& gen1, const IntMatrix& gen2);

// Inclusion hom of a computed subgroup, and the corestriction of f onto a
// subgroup of its target that contains the image.
GroupHom subgroup_inclusion(const FgAbGroup& ambient, const Subgroup& s);
GroupHom corestrict(const GroupHom& f, const FgAbGroup& ambient, const Subgroup& s);

FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup tor(const FgAbGroup& a, const FgAbGroup& b);

// Exactness of a finite run ... -> G_i -> G_{i+1} -> ...: at every interior
// node, image of the incoming map equals kernel of the outgoing map as
// subgroups.  Endpoints are not checked.
struct ExactnessReport {
    struct Node {
        std::string label;
        bool exact = false;
        std::string detail;  // image/kernel types on failure
    };
    std::vector<Node> nodes;
    bool all_exact = true;
};

ExactnessReport verify_exact(const std::vector<FgAbGroup>& groups,
                             const std::vector<GroupHom>& maps,
                             const std::vector<std::string>& labels = {});

// Extension problem 0 -> cokernel_term -> X -> kernel_term -> 0.  The value
// is always the direct sum; the mode records how canonical that choice is:
//   forced_unique : the direct sum is the only possible middle term
//                   (one side trivial, free quotient side, or the
//                   annihilator bound excludes everything else)
//   split_assumed : the split middle was chosen by convention
//   ambiguous     : an annihilator bound was given and several middle terms
//                   survive it; alternatives lists the others
// alternatives is exhaustive whenever both sides are finite and small enough
// to enumerate.
enum class ExtensionMode { split_assumed, forced_unique, ambiguous };

struct ExtensionResolution {
    FgAbGroup group;
    ExtensionMode mode = ExtensionMode::split_assumed;
    std::vector<FgAbGroup> alternatives;
    std::optional<Int> annihilator_bound;
};

const char* to_string(ExtensionMode m);

ExtensionResolution solve_extension(const FgAbGroup& kernel_term,
                                    const FgAbGroup& cokernel_term,
                                    const std::optional<Int>& annihilator_bound = std::nullopt);

// Middle terms of extensions of a finite quotient by a finite subgroup,
// optionally restricted to exponent dividing the bound.  Exposed for tests.
std::vector<FgAbGroup> extension_middle_terms(const FgAbGroup& sub, const FgAbGroup& quot,
                                              const std::optional<Int>& exponent_bound = std::nullopt);

// Does c^{nu}_{lambda mu} > 0?  Partitions are weakly decreasing.  This is
// the existence criterion for a p-group extension with subgroup type lambda,
// quotient type mu and total type nu (independent of the prime).
bool lr_coefficient_positive(const std::vector<int>& lambda, const std::vector<int>& mu,
                             const std::vector<int>& nu);

// Trial division; throws std::domain_error on composites above the guard.
std::vector<std::pair<Int, int>> factorize(Int n);

}  // namespace kkcoeff
