#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "kkcoeff/transform.hpp"

namespace kkcoeff {

// Deterministic input source for the property suites.  mt19937_64 output is
// pinned by the standard, so a seed identifies the whole run on every
// platform; values are drawn by plain modulo, nothing here needs uniformity.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }
    long long below(long long n) {
        return static_cast<long long>(raw() % static_cast<std::uint64_t>(n));
    }

private:
    std::mt19937_64 eng_;
};

FgAbGroup sample_group(SampleRng& rng, std::size_t max_rank, long long max_factor);
GradedTheory sample_theory(SampleRng& rng, int period, std::size_t max_rank,
                           long long max_factor);

// Arbitrary well-defined hom: free columns unconstrained, torsion columns
// restricted to the multiples the target orders admit.
GroupHom sample_hom(SampleRng& rng, const FgAbGroup& s, const FgAbGroup& t);
DegreewiseMap sample_map(SampleRng& rng, const GradedTheory& s, const GradedTheory& t);

// A transformation sample with the given number of cases; roughly one case
// in five is an identity so isomorphism verdicts stay represented.
TransformationSample sample_transformation(SampleRng& rng, const std::string& name, int cases,
                                           std::size_t max_rank, long long max_factor);

}  // namespace kkcoeff
