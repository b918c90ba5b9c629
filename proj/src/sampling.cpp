#include "kkcoeff/sampling.hpp"

namespace kkcoeff {

FgAbGroup sample_group(SampleRng& rng, std::size_t max_rank, long long max_factor) {
    std::vector<Int> orders;
    long long count = rng.below(4);
    for (long long i = 0; i < count; ++i) orders.push_back(Int(2 + rng.below(max_factor - 1)));
    FgAbGroup g = from_cyclic_orders(std::move(orders));
    g.rank = static_cast<std::size_t>(rng.below(static_cast<long long>(max_rank) + 1));
    return g;
}

GradedTheory sample_theory(SampleRng& rng, int period, std::size_t max_rank,
                           long long max_factor) {
    std::vector<FgAbGroup> groups;
    for (int r = 0; r < period; ++r) groups.push_back(sample_group(rng, max_rank, max_factor));
    return make_theory("sample-" + std::to_string(rng.below(100000)), period,
                       std::move(groups));
}

GroupHom sample_hom(SampleRng& rng, const FgAbGroup& s, const FgAbGroup& t) {
    IntMatrix m(t.gens(), s.gens());
    for (std::size_t j = 0; j < s.gens(); ++j) {
        Int d = s.gen_order(j);
        for (std::size_t i = 0; i < t.gens(); ++i) {
            if (d == 0) {
                m.at(i, j) = Int(rng.below(11) - 5);
            } else if (i < t.torsion.size()) {
                Int g = gcd(d, t.torsion[i]);
                Int step = t.torsion[i] / g;
                m.at(i, j) = step * Int(rng.below(static_cast<long long>(g)));
            }
        }
    }
    return make_hom(s, t, std::move(m));
}

DegreewiseMap sample_map(SampleRng& rng, const GradedTheory& s, const GradedTheory& t) {
    std::vector<GroupHom> homs;
    for (int r = 0; r < s.period; ++r) homs.push_back(sample_hom(rng, s.groups[r], t.groups[r]));
    return make_degreewise_map(s, t, std::move(homs));
}

TransformationSample sample_transformation(SampleRng& rng, const std::string& name, int cases,
                                           std::size_t max_rank, long long max_factor) {
    TransformationSample out;
    out.name = name;
    for (int c = 0; c < cases; ++c) {
        GradedTheory a = sample_theory(rng, 2, max_rank, max_factor);
        if (rng.below(5) == 0) {
            std::vector<GroupHom> homs;
            for (int r = 0; r < a.period; ++r) homs.push_back(identity_hom(a.groups[r]));
            GradedTheory b = a;
            out.cases.push_back({"case" + std::to_string(c),
                                 make_degreewise_map(std::move(a), std::move(b),
                                                     std::move(homs))});
        } else {
            GradedTheory b = sample_theory(rng, 2, max_rank, max_factor);
            out.cases.push_back({"case" + std::to_string(c), sample_map(rng, a, b)});
        }
    }
    return out;
}

}  // namespace kkcoeff
