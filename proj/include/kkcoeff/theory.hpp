#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kkcoeff/fgab.hpp"

namespace kkcoeff {

// A graded periodic homology-theory value: one f.g. abelian group per
// residue class mod the period.  Period 2 is the complex case, 8 the real
// case; the equivariance label is metadata and never acts.
struct GradedTheory {
    std::string name;
    int period = 2;
    std::vector<FgAbGroup> groups;  // size == period, index = residue class
    std::optional<std::string> equivariance_label;

    const FgAbGroup& at(long long n) const;
    bool operator==(const GradedTheory&) const = default;
    std::string to_string() const;
};

// Validates period (2 or 8) and group count.
GradedTheory make_theory(std::string name, int period, std::vector<FgAbGroup> groups,
                         std::optional<std::string> equivariance = std::nullopt);

GradedTheory zero_theory(std::string name, int period);

// Degreewise shift: shift(t, k) evaluated at n is t at n + k.
GradedTheory shift(const GradedTheory& t, long long k);

// A graded map of theories: one hom per residue class.
struct DegreewiseMap {
    GradedTheory source;
    GradedTheory target;
    std::vector<GroupHom> homs;  // size == period

    const GroupHom& at(long long n) const;
};

// Validates matching periods and degreewise endpoints.
DegreewiseMap make_degreewise_map(GradedTheory source, GradedTheory target,
                                  std::vector<GroupHom> homs);

// The x m self-map in every degree.
DegreewiseMap multiplication_self_map(const GradedTheory& t, const Int& m);

// Cone of a graded map.  Degreewise the cone group solves
//   0 -> coker(f at n+1) -> cone_n -> ker(f at n) -> 0
// with the split model; delta and proj are the connecting and projection
// maps of the long sequence
//   ... -> A_{n+1} -f-> B_{n+1} -delta-> C_n -proj-> A_n -f-> B_n -> ...
// which is exact by construction for the split middle term.
struct MappingCone {
    GradedTheory cone;
    std::map<int, ExtensionResolution> resolutions;  // residue -> resolution
    std::map<int, GroupHom> delta;                   // target at r+1 -> cone at r
    std::map<int, GroupHom> proj;                    // cone at r -> source at r
};

MappingCone mapping_cone(const DegreewiseMap& f);

// The cone long exact sequence unrolled over enough degrees that every node
// type appears in the interior; ready for verify_exact.
struct LongSequence {
    std::vector<FgAbGroup> groups;
    std::vector<GroupHom> maps;
    std::vector<std::string> labels;
};

LongSequence puppe_sequence(const DegreewiseMap& f, const MappingCone& mc);

// K-groups of t (x) C_q: the cone of multiplication by q on the
// degree-shifted theory (the suspension direction), so that
//   result_n = t_n / q  (+)  q-torsion of t_{n-1}.
// Degrees are raw cone degrees; no further shift is applied here.
GradedTheory tensor_cone_q(const GradedTheory& t, const Int& q);

struct CatalogEntry {
    std::string name;
    GradedTheory theory;
    std::string provenance;
};

// The built-in desk universe: point, suspension, torus2, a synthetic mixed
// entry, and small Cuntz algebras.  O_N (N >= 2) and C_q(N) (N >= 2) are
// also resolvable on demand by name through find_entry.
std::vector<CatalogEntry> builtin_catalog();

// JSON catalog file: array of
//   {"name": str, "period": 2|8,
//    "groups": {"0": {"rank": int, "torsion": [int,...]}, ...},
//    "provenance": str, "equivariance": str|null}
// Degree keys are residue classes as decimal strings and must all be
// present; torsion lists must satisfy the divisibility chain.  Errors name
// the offending entry.
std::vector<CatalogEntry> load_catalog_file(const std::string& path);

// Throws when a name collides.
std::vector<CatalogEntry> merge_catalogs(std::vector<CatalogEntry> base,
                                         const std::vector<CatalogEntry>& extra);

// Resolves a static entry or a family pattern (O_N, C_q(N)).
std::optional<CatalogEntry> find_entry(const std::vector<CatalogEntry>& catalog,
                                       const std::string& name);

}  // namespace kkcoeff
