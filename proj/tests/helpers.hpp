#pragma once

// Brute-force oracles for the test suite.  Everything here works on explicit
// element sets of small finite groups and is kept independent of the library
// algorithms it cross-checks.

#include "kkcoeff/fgab.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace kktest {

using namespace kkcoeff;
using Vec = std::vector<Int>;

inline Vec reduce_elem(const FgAbGroup& g, Vec v) {
    for (std::size_t i = 0; i < g.torsion.size(); ++i) v[i] = mod_floor(v[i], g.torsion[i]);
    return v;
}

inline Vec add_elem(const FgAbGroup& g, const Vec& a, const Vec& b) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return reduce_elem(g, c);
}

inline Vec scale_elem(const FgAbGroup& g, const Int& k, const Vec& a) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = k * a[i];
    return reduce_elem(g, c);
}

// All elements of a finite group as coordinate tuples.
inline std::vector<Vec> enumerate_elements(const FgAbGroup& g) {
    if (!g.is_finite()) throw std::domain_error("enumerate_elements: infinite group");
    std::vector<Vec> out{Vec(g.torsion.size(), Int(0))};
    for (std::size_t i = 0; i < g.torsion.size(); ++i) {
        std::vector<Vec> next;
        for (const Vec& v : out)
            for (Int k = 0; k < g.torsion[i]; ++k) {
                Vec w = v;
                w[i] = k;
                next.push_back(std::move(w));
            }
        out = std::move(next);
    }
    return out;
}

inline std::set<Vec> image_set(const GroupHom& f) {
    std::set<Vec> out;
    for (const Vec& x : enumerate_elements(f.source)) out.insert(apply_hom(f, x));
    return out;
}

inline std::set<Vec> kernel_set(const GroupHom& f) {
    std::set<Vec> out;
    Vec zero(f.target.gens(), Int(0));
    for (const Vec& x : enumerate_elements(f.source))
        if (apply_hom(f, x) == zero) out.insert(x);
    return out;
}

// Isomorphism type of a finite subgroup given as an element set, recovered
// from torsion layer counts (independent of the Smith machinery).
inline FgAbGroup type_of_subset(const FgAbGroup& ambient, const std::set<Vec>& elems) {
    Int n = elems.size();
    std::map<Int, std::vector<int>> parts;
    for (const auto& pe_pair : factorize(n)) {
        const Int& p = pe_pair.first;
        // conj[e] = number of invariant factors with p-valuation >= e
        std::vector<int> conj;
        Int prev_count = 1;
        for (int e = 1;; ++e) {
            Int pe = 1;
            for (int t = 0; t < e; ++t) pe *= p;
            Int count = 0;
            for (const Vec& v : elems) {
                Vec w = scale_elem(ambient, pe, v);
                if (std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 0; })) ++count;
            }
            // count = p^(sum of min(e, v_p)); layer = log_p(count/prev)
            Int ratio = count / prev_count;
            int layer = 0;
            while (ratio > 1) {
                ratio /= p;
                ++layer;
            }
            if (layer == 0) break;
            conj.push_back(layer);
            prev_count = count;
        }
        std::vector<int> part;
        for (int i = 1; i <= (conj.empty() ? 0 : conj[0]); ++i) {
            int len = 0;
            for (int c : conj)
                if (c >= i) ++len;
            part.push_back(len);
        }
        if (!part.empty()) parts[p] = part;
    }
    std::size_t len = 0;
    for (auto& [p, part] : parts) len = std::max(len, part.size());
    std::vector<Int> factors(len, Int(1));
    for (auto& [p, part] : parts)
        for (std::size_t i = 0; i < part.size(); ++i) {
            Int pe = 1;
            for (int t = 0; t < part[i]; ++t) pe *= p;
            factors[i] *= pe;
        }
    std::reverse(factors.begin(), factors.end());
    FgAbGroup g;
    g.torsion = std::move(factors);
    return g;
}

// Subgroup generated by a list of elements, as an explicit set.
inline std::set<Vec> closure(const FgAbGroup& ambient, const std::vector<Vec>& gens) {
    std::set<Vec> s{Vec(ambient.torsion.size(), Int(0))};
    for (const Vec& g : gens) {
        std::set<Vec> next;
        for (const Vec& base : s) {
            Vec cur = base;
            do {
                next.insert(cur);
                cur = add_elem(ambient, cur, g);
            } while (cur != base);
        }
        s = std::move(next);
    }
    return s;
}

// Deterministic generators for fuzzing.  Raw engine output only.
struct TestRng {
    std::mt19937_64 eng;
    explicit TestRng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t next() { return eng(); }
    long below(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }
};

inline FgAbGroup random_finite_group(TestRng& rng, Int max_order) {
    std::vector<Int> orders;
    Int order = 1;
    int count = rng.below(4);
    for (int i = 0; i < count; ++i) {
        Int d = 2 + rng.below(8);
        if (order * d > max_order) break;
        order *= d;
        orders.push_back(d);
    }
    return from_cyclic_orders(std::move(orders));
}

inline FgAbGroup random_group(TestRng& rng, std::size_t max_rank, long max_factor) {
    FgAbGroup g = [&] {
        std::vector<Int> orders;
        int count = rng.below(4);
        for (int i = 0; i < count; ++i) orders.push_back(2 + rng.below(max_factor - 1));
        return from_cyclic_orders(std::move(orders));
    }();
    g.rank = static_cast<std::size_t>(rng.below(static_cast<long>(max_rank) + 1));
    return g;
}

// Arbitrary well-defined hom: free columns are unconstrained, a torsion
// column of order d can hit target coordinate i only in multiples of
// D_i / gcd(d, D_i).
inline GroupHom random_hom(TestRng& rng, const FgAbGroup& s, const FgAbGroup& t) {
    IntMatrix m(t.gens(), s.gens());
    for (std::size_t j = 0; j < s.gens(); ++j) {
        Int d = s.gen_order(j);
        for (std::size_t i = 0; i < t.gens(); ++i) {
            if (d == 0) {
                m.at(i, j) = rng.below(11) - 5;
            } else if (i < t.torsion.size()) {
                Int g = gcd(d, t.torsion[i]);
                Int step = t.torsion[i] / g;
                m.at(i, j) = step * Int(rng.below(static_cast<long>(g)));
            }
        }
    }
    return make_hom(s, t, std::move(m));
}

}  // namespace kktest
