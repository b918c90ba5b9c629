#include "kkcoeff/admissible.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kkcoeff {

std::string AdmissibleGroup::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    auto sep = [&] {
        if (!first) out << " + ";
        first = false;
    };
    for (const Int& d : torsion) {
        sep();
        out << "Z/" << d;
    }
    if (z_rank == 1) {
        sep();
        out << "Z";
    } else if (z_rank > 1) {
        sep();
        out << "Z^" << z_rank;
    }
    if (q_rank == 1) {
        sep();
        out << "Q";
    } else if (q_rank > 1) {
        sep();
        out << "Q^" << q_rank;
    }
    if (qz_rank == 1) {
        sep();
        out << "Q/Z";
    } else if (qz_rank > 1) {
        sep();
        out << "(Q/Z)^" << qz_rank;
    }
    return out.str();
}

AdmissibleGroup make_admissible(std::size_t z_rank, std::size_t q_rank, std::size_t qz_rank,
                                const std::vector<Int>& cyclic_orders) {
    for (const Int& d : cyclic_orders)
        if (d < 1) throw std::invalid_argument("make_admissible: cyclic order must be >= 1");
    FgAbGroup fin = from_cyclic_orders(cyclic_orders);
    return AdmissibleGroup{z_rank, q_rank, qz_rank, fin.torsion};
}

AdmissibleGroup direct_sum(const AdmissibleGroup& a, const AdmissibleGroup& b) {
    std::vector<Int> orders = a.torsion;
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    return make_admissible(a.z_rank + b.z_rank, a.q_rank + b.q_rank, a.qz_rank + b.qz_rank,
                           orders);
}

AdmissibleGroup from_fgab(const FgAbGroup& g) {
    return AdmissibleGroup{g.rank, 0, 0, g.torsion};
}

FgAbGroup to_fgab(const AdmissibleGroup& g) {
    if (g.q_rank != 0 || g.qz_rank != 0)
        throw std::domain_error("to_fgab: group has divisible summands");
    return FgAbGroup{g.torsion, g.z_rank};
}

AdmissibleGroup torsion_subgroup(const AdmissibleGroup& g) {
    return AdmissibleGroup{0, 0, g.qz_rank, g.torsion};
}

AdmissibleGroup rationalize(const FgAbGroup& g) {
    return AdmissibleGroup::rationals(g.rank);
}

std::pair<AdmissibleGroup, AdmissibleGroup> mult_kernel_cokernel(const AdmissibleGroup& g,
                                                                 const Int& q) {
    if (q < 2) throw std::invalid_argument("mult_kernel_cokernel: q must be >= 2");
    std::vector<Int> ker_orders, cok_orders;
    for (std::size_t i = 0; i < g.z_rank; ++i) cok_orders.push_back(q);
    for (std::size_t i = 0; i < g.qz_rank; ++i) ker_orders.push_back(q);
    for (const Int& d : g.torsion) {
        Int e = gcd(d, q);
        ker_orders.push_back(e);
        cok_orders.push_back(e);
    }
    return {make_admissible(0, 0, 0, ker_orders), make_admissible(0, 0, 0, cok_orders)};
}

std::vector<Int> primes_up_to(const Int& bound) {
    if (bound > 10'000'000) throw std::invalid_argument("primes_up_to: bound too large");
    long long b = bound.convert_to<long long>();
    std::vector<bool> composite(std::max<long long>(b + 1, 2), false);
    std::vector<Int> out;
    for (long long p = 2; p <= b; ++p) {
        if (composite[p]) continue;
        out.push_back(Int(p));
        for (long long m = p * p; m <= b; m += p) composite[m] = true;
    }
    return out;
}

std::vector<std::pair<Int, int>> prime_powers_up_to(const Int& bound) {
    std::vector<std::pair<Int, int>> out;
    for (const Int& p : primes_up_to(bound)) {
        Int pk = p;
        int e = 1;
        while (pk <= bound) {
            out.emplace_back(p, e);
            pk *= p;
            ++e;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

TruncatedProfile truncated_profile(const AdmissibleGroup& g, const Int& bound) {
    if (bound < 2) throw std::invalid_argument("truncated_profile: bound must be >= 2");
    TruncatedProfile prof;
    prof.bound = bound;
    for (const auto& [p, e] : prime_powers_up_to(bound)) {
        std::size_t rank = g.qz_rank;
        for (const Int& d : g.torsion) {
            // layer rank counts factors with p-adic valuation >= e
            Int pk = 1;
            for (int i = 0; i < e; ++i) pk *= p;
            if (d % pk == 0) ++rank;
        }
        prof.layers[{p, e}] = rank;
    }
    return prof;
}

std::string TruncatedProfile::to_string() const {
    std::ostringstream out;
    out << "bound " << bound << ":";
    bool any = false;
    for (const auto& [key, rank] : layers) {
        if (rank == 0) continue;
        any = true;
        out << " " << key.first << "^" << key.second << ":" << rank;
    }
    if (!any) out << " trivial";
    return out.str();
}

}  // namespace kkcoeff
