#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "helpers.hpp"

using namespace kkcoeff;
using namespace kktest;

namespace {

// Brute-force oracle: enumerate all isomorphism types X admitting a short
// exact sequence 0 -> C -> X -> K -> 0, for finite C and K.  We enumerate
// candidate groups X with |X| = |C| * |K|, then for each X enumerate
// subgroups generated by up to three elements, and keep X when some
// subgroup S has type C and X/S has type K.
std::vector<FgAbGroup> all_groups_of_order(const Int& n) {
    std::vector<FgAbGroup> out;
    std::function<void(Int, Int, std::vector<Int>&)> rec = [&](Int rem, Int maxf,
                                                               std::vector<Int>& acc) {
        if (rem == 1) {
            std::vector<Int> sorted = acc;
            std::sort(sorted.begin(), sorted.end());
            // only keep divisibility chains: that is exactly the invariant
            // factor decompositions
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
                if (sorted[i + 1] % sorted[i] != 0) return;
            out.push_back(FgAbGroup{sorted, 0});
            return;
        }
        for (Int d = 2; d <= maxf; ++d) {
            if (rem % d != 0) continue;
            acc.push_back(d);
            rec(rem / d, d, acc);
            acc.pop_back();
        }
    };
    std::vector<Int> acc;
    rec(n, n, acc);
    std::sort(out.begin(), out.end(), [](const FgAbGroup& a, const FgAbGroup& b) {
        return a.torsion < b.torsion;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FgAbGroup quotient_type(const FgAbGroup& g, const std::set<Vec>& sub) {
    // type of g / <sub> via cosets: count element orders in the quotient
    std::vector<Vec> all = enumerate_elements(g);
    // coset representative map: canonical = lexicographically least member
    std::map<Vec, Vec> rep;
    for (const Vec& x : all) {
        Vec best = x;
        for (const Vec& s : sub) {
            Vec y = add_elem(g, x, s);
            if (y < best) best = y;
        }
        rep[x] = best;
    }
    std::set<Vec> cosets;
    for (auto& [x, r] : rep) cosets.insert(r);
    // build the quotient's subset structure: treat coset reps as elements,
    // and compute the type by counting p^e-torsion as in type_of_subset
    Int n = g.order() / Int(sub.size());
    if (n == 1) return FgAbGroup::zero();
    std::vector<Int> inv;
    std::vector<std::pair<Int, int>> fac = factorize(n);
    std::map<Int, std::vector<int>> partitions;
    for (auto& pe_pair : fac) {
        const Int& p = pe_pair.first;
        std::vector<int> layers;
        Int prev = 1;
        Int pk = 1;
        for (int e = 1;; ++e) {
            pk *= p;
            Int cnt = 0;
            for (const Vec& r : cosets) {
                Vec y = scale_elem(g, pk, r);
                if (rep[y] == rep[Vec(g.gens(), Int(0))]) ++cnt;
            }
            if (cnt == prev) break;
            Int layer = cnt / prev;
            int rk = 0;
            Int t = layer;
            while (t > 1) {
                t /= p;
                ++rk;
            }
            layers.push_back(rk);
            prev = cnt;
        }
        std::vector<int> parts;  // conjugate of layers
        for (int k = 1; k <= (layers.empty() ? 0 : layers[0]); ++k) {
            int cnt = 0;
            for (int l : layers)
                if (l >= k) ++cnt;
            parts.push_back(cnt);
        }
        partitions[p] = parts;
    }
    std::size_t maxlen = 0;
    for (auto& [p, parts] : partitions) maxlen = std::max(maxlen, parts.size());
    std::vector<Int> orders;
    for (std::size_t k = 0; k < maxlen; ++k) {
        Int o = 1;
        for (auto& [p, parts] : partitions)
            if (k < parts.size()) {
                Int pw = 1;
                for (int j = 0; j < parts[k]; ++j) pw *= p;
                o *= pw;
            }
        orders.push_back(o);
    }
    std::reverse(orders.begin(), orders.end());
    return from_cyclic_orders(orders);
}

std::vector<FgAbGroup> brute_middle_terms(const FgAbGroup& c, const FgAbGroup& k) {
    std::vector<FgAbGroup> result;
    Int n = c.order() * k.order();
    for (const FgAbGroup& x : all_groups_of_order(n)) {
        std::vector<Vec> elems = enumerate_elements(x);
        bool found = false;
        // subgroups generated by up to 3 elements; c has at most 3 factors here
        std::size_t m = elems.size();
        for (std::size_t i = 0; i < m && !found; ++i)
            for (std::size_t j = i; j < m && !found; ++j)
                for (std::size_t l = j; l < m && !found; ++l) {
                    std::set<Vec> sub = closure(x, {elems[i], elems[j], elems[l]});
                    if (Int(sub.size()) != c.order()) continue;
                    if (type_of_subset(x, sub) != c) continue;
                    if (quotient_type(x, sub) == k) found = true;
                }
        if (found) result.push_back(x);
    }
    return result;
}

}  // namespace

TEST_CASE("factorize") {
    auto f = factorize(Int(360));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<Int, int>{Int(2), 3});
    CHECK(f[1] == std::pair<Int, int>{Int(3), 2});
    CHECK(f[2] == std::pair<Int, int>{Int(5), 1});
    CHECK(factorize(Int(1)).empty());
    auto g = factorize(Int(97));
    REQUIRE(g.size() == 1);
    CHECK(g[0].first == 97);
}

TEST_CASE("littlewood-richardson positivity spot checks") {
    // c^nu_{lambda,mu} > 0 cases (partitions given largest part first)
    CHECK(lr_coefficient_positive({1}, {1}, {2}));
    CHECK(lr_coefficient_positive({1}, {1}, {1, 1}));
    CHECK(lr_coefficient_positive({2, 1}, {1}, {2, 2}));
    CHECK(lr_coefficient_positive({2, 1}, {1}, {3, 1}));
    CHECK(lr_coefficient_positive({2, 1}, {1}, {2, 1, 1}));
    CHECK(lr_coefficient_positive({2, 1}, {2, 1}, {3, 2, 1}));
    // zero cases
    CHECK(!lr_coefficient_positive({2}, {1, 1}, {2, 2}));
    CHECK(!lr_coefficient_positive({1}, {1}, {3}));
    CHECK(!lr_coefficient_positive({2, 1}, {1}, {4}));
    CHECK(!lr_coefficient_positive({3}, {1}, {2, 2}));
    // containment requirement
    CHECK(!lr_coefficient_positive({3}, {1}, {2, 1, 1}));
    // empty mu: nu must equal lambda
    CHECK(lr_coefficient_positive({2, 1}, {}, {2, 1}));
    CHECK(!lr_coefficient_positive({2, 1}, {}, {3}));
}

TEST_CASE("extension middle terms match subgroup enumeration") {
    TestRng rng(0xe001);
    int done = 0;
    while (done < 40) {
        FgAbGroup c = random_finite_group(rng, Int(8));
        FgAbGroup k = random_finite_group(rng, Int(8));
        Int n = c.order() * k.order();
        if (n > 32 || n == 1) continue;
        if (c.torsion.size() > 3) continue;
        ++done;
        std::vector<FgAbGroup> got = extension_middle_terms(c, k);
        std::vector<FgAbGroup> want = brute_middle_terms(c, k);
        CHECK(got == want);
        if (got != want) {
            MESSAGE("C = ", c.to_string(), "  K = ", k.to_string());
        }
    }
}

TEST_CASE("solve_extension modes") {
    FgAbGroup zero = FgAbGroup::zero();
    FgAbGroup z = FgAbGroup::free_group(1);
    FgAbGroup z2 = FgAbGroup::cyclic(Int(2));
    FgAbGroup z3 = FgAbGroup::cyclic(Int(3));
    FgAbGroup z4 = FgAbGroup::cyclic(Int(4));

    // trivial sides are forced
    auto r1 = solve_extension(z4, zero);
    CHECK(r1.group == z4);
    CHECK(r1.mode == ExtensionMode::forced_unique);
    auto r2 = solve_extension(zero, z4);
    CHECK(r2.group == z4);
    CHECK(r2.mode == ExtensionMode::forced_unique);

    // free kernel term splits
    auto r3 = solve_extension(z, z4);
    CHECK(r3.group == direct_sum(z4, z));
    CHECK(r3.mode == ExtensionMode::forced_unique);

    // coprime orders: only one candidate exists
    auto r4 = solve_extension(z2, z3);
    CHECK(r4.group == FgAbGroup::cyclic(Int(6)));
    CHECK(r4.mode == ExtensionMode::forced_unique);
    CHECK(r4.alternatives.empty());

    // Z/2 by Z/2 without bound: split assumed, Z/4 is the alternative
    auto r5 = solve_extension(z2, z2);
    CHECK(r5.group == FgAbGroup{{2, 2}, 0});
    CHECK(r5.mode == ExtensionMode::split_assumed);
    REQUIRE(r5.alternatives.size() == 1);
    CHECK(r5.alternatives[0] == z4);

    // annihilator bound 2 kills Z/4: forced
    auto r6 = solve_extension(z2, z2, Int(2));
    CHECK(r6.group == FgAbGroup{{2, 2}, 0});
    CHECK(r6.mode == ExtensionMode::forced_unique);

    // annihilator bound 4 keeps both: ambiguous
    auto r7 = solve_extension(z2, z2, Int(4));
    CHECK(r7.mode == ExtensionMode::ambiguous);
    CHECK(r7.alternatives.size() == 1);

    // infinite kernel term with torsion: split by convention
    auto r8 = solve_extension(FgAbGroup{{2}, 1}, z2);
    CHECK(r8.group == FgAbGroup{{2, 2}, 1});
    CHECK(r8.mode == ExtensionMode::split_assumed);

    // bound with an infinite side is rejected
    CHECK_THROWS_AS(solve_extension(z, z2, Int(4)), std::invalid_argument);
    // impossible bound is rejected rather than silently forced
    CHECK_THROWS_AS(solve_extension(z4, z4, Int(2)), std::invalid_argument);
}

TEST_CASE("solve_extension alternatives are closed under the bound") {
    TestRng rng(0xe002);
    int done = 0;
    while (done < 60) {
        FgAbGroup c = random_finite_group(rng, Int(16));
        FgAbGroup k = random_finite_group(rng, Int(16));
        if (c.order() * k.order() > 64) continue;
        ++done;
        Int bound = c.exponent() * k.exponent();
        auto res = solve_extension(c, k, bound);
        CHECK(res.group == direct_sum(c, k));
        CHECK(res.annihilator_bound == bound);
        for (const FgAbGroup& alt : res.alternatives) {
            CHECK(alt.order() == c.order() * k.order());
            CHECK(alt.exponent() <= bound);
            CHECK(alt != res.group);
        }
        // the split's exponent always satisfies the natural bound
        CHECK(res.group.exponent() <= bound);
    }
}

TEST_CASE("middle terms always include split and cyclic-compatible extremes") {
    TestRng rng(0xe003);
    int done = 0;
    while (done < 50) {
        FgAbGroup c = random_finite_group(rng, Int(8));
        FgAbGroup k = random_finite_group(rng, Int(8));
        if (c.order() * k.order() > 128 || c.order() * k.order() == 1) continue;
        ++done;
        std::vector<FgAbGroup> mids = extension_middle_terms(c, k);
        FgAbGroup split = direct_sum(c, k);
        CHECK(std::find(mids.begin(), mids.end(), split) != mids.end());
        // all middles have the right order, and both exponents divide the
        // middle's exponent (C embeds, K is a quotient)
        for (const FgAbGroup& m : mids) {
            CHECK(m.order() == c.order() * k.order());
            CHECK(m.exponent() % lcm(c.exponent(), k.exponent()) == 0);
        }
        // when both are cyclic the fully cyclic extension exists
        if (c.torsion.size() <= 1 && k.torsion.size() <= 1) {
            FgAbGroup cyc = FgAbGroup::cyclic(c.order() * k.order());
            CHECK(std::find(mids.begin(), mids.end(), cyc) != mids.end());
        }
    }
}
