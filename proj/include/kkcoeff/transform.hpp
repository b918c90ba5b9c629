#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kkcoeff/coefficients.hpp"
#include "kkcoeff/theory.hpp"

namespace kkcoeff {

// A transformation of theories sampled per algebra: for each named algebra a
// degreewise map between its two theory values.  The assembly role is
// display metadata only (it prints as mu_A).
enum class TransformRole { generic, assembly };
const char* to_string(TransformRole r);

struct TransformCase {
    std::string algebra;
    DegreewiseMap map;  // carries source and target theories
};

struct TransformationSample {
    std::string name;
    TransformRole role = TransformRole::generic;
    std::vector<TransformCase> cases;
};

// JSON sample file:
//   {"name": str, "role": "generic"|"assembly",
//    "cases": [{"algebra": str, "source": <theory>, "target": <theory>,
//               "maps": {"0": [[int,...],...], "1": ...}}]}
// where <theory> is {"period": 2|8, "groups": {...}} as in catalog files and
// matrices are target.gens x source.gens in canonical coordinates.  Errors
// name the case, degree and generator.
TransformationSample load_sample_file(const std::string& path);

struct DegreeVerdict {
    int residue = 0;
    bool iso = false;
    std::string detail;
};

struct CaseVerdicts {
    std::string algebra;
    std::vector<DegreeVerdict> degrees;
    bool all_iso = true;
};

// The rationalized transformation: iso per degree iff the free-part block
// is square and has nonzero determinant.
std::vector<CaseVerdicts> induce_rational(const TransformationSample& t);

// The induced transformation on torsion theories, on closed forms: the
// (Q/Z)^rank component is an isomorphism iff the free-part block is
// unimodular over Z, the finite component iff the previous degree's map
// restricts bijectively to torsion subgroups.
std::vector<CaseVerdicts> induce_torsion(const TransformationSample& t);

// The induced map on mod-q split models: the map of cokernel parts induced
// degreewise, plus the restriction to q-torsion on the Tor parts.  Homs are
// returned in the models' canonical coordinates; iso verdicts via
// kernel/cokernel vanishing.
struct InducedModQ {
    std::string algebra;
    ModQTheory source_model;
    ModQTheory target_model;
    std::vector<GroupHom> homs;  // residue-indexed
    std::vector<DegreeVerdict> degrees;
    bool all_iso = true;
};

std::vector<InducedModQ> induce_mod_q(const TransformationSample& t, const Int& q);

// Primes at which the integral and rational verdicts can part ways: all
// primes dividing an invariant factor of any group in the sample, an
// elementary divisor of any map matrix, or an elementary divisor of any
// free-part block.  Outside this set the induced mod-p verdict provably
// equals the rational one.
std::vector<Int> relevant_primes(const TransformationSample& t);

// The equivalence battery: per algebra, the integral, rational, torsion and
// per-relevant-prime verdicts together with the literal biconditional
// comparisons
//   integral <=> rational and torsion
//   integral <=> rational and mod-p at every relevant prime
//   (rational and torsion) <=> (rational and all mod-p)
// A violated biconditional falsifies this implementation, never the input.
struct EquivalenceReport {
    struct Algebra {
        std::string algebra;
        bool integral_iso = false;
        bool rational_iso = false;
        bool torsion_iso = false;
        std::vector<std::pair<Int, bool>> mod_p;
        bool bicond_torsion = false;
        bool bicond_primes = false;
        bool bicond_parts = false;
    };
    std::vector<Int> prime_set;
    std::vector<Algebra> algebras;
    bool all_biconditionals_hold = true;
};

EquivalenceReport equivalence_report(const TransformationSample& t);

}  // namespace kkcoeff
