#include "kkcoeff/fgab.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace kkcoeff {

const char* to_string(ExtensionMode m) {
    switch (m) {
        case ExtensionMode::split_assumed: return "split_assumed";
        case ExtensionMode::forced_unique: return "forced_unique";
        case ExtensionMode::ambiguous: return "ambiguous";
    }
    return "?";
}

std::vector<std::pair<Int, int>> factorize(Int n) {
    if (n < 1) throw std::domain_error("factorize: positive input required");
    std::vector<std::pair<Int, int>> out;
    auto strip = [&](const Int& p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    Int p = 5;
    // 6k +- 1 wheel; enough for every order this library enumerates.
    while (p * p <= n) {
        strip(p);
        strip(p + 2);
        p += 6;
        if (p > 1000000) break;
    }
    if (n > 1) {
        if (n > Int(1000000) * Int(1000000))
            throw std::domain_error("factorize: residue too large for trial division");
        out.emplace_back(n, 1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using Partition = std::vector<int>;  // weakly decreasing, positive parts

int psum(const Partition& p) {
    int s = 0;
    for (int x : p) s += x;
    return s;
}

// p-adic valuation; d must be a positive multiple of p^0.
int valuation(Int d, const Int& p) {
    int v = 0;
    while (d % p == 0) {
        d /= p;
        ++v;
    }
    return v;
}

// Per-prime partitions of a finite group's invariant factors (largest first).
std::map<Int, Partition> prime_partitions(const FgAbGroup& g) {
    std::map<Int, Partition> out;
    for (const Int& d : g.torsion)
        for (auto& [p, e] : factorize(d)) out[p].push_back(e);
    for (auto& [p, part] : out) std::sort(part.begin(), part.end(), std::greater<int>());
    return out;
}

// All partitions of n with at most max_part as largest part.
void gen_partitions(int n, int max_part, Partition& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        gen_partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

std::vector<Partition> partitions_bounded(int n, int max_part) {
    std::vector<Partition> out;
    Partition cur;
    if (max_part >= 1 || n == 0) gen_partitions(n, max_part, cur, out);
    return out;
}

// Reassemble invariant factors from per-prime partitions: the k-th largest
// parts multiply together.
FgAbGroup group_from_prime_partitions(const std::map<Int, Partition>& parts) {
    std::size_t len = 0;
    for (auto& [p, part] : parts) len = std::max(len, part.size());
    std::vector<Int> factors(len, Int(1));
    for (auto& [p, part] : parts)
        for (std::size_t i = 0; i < part.size(); ++i) {
            Int pe = 1;
            for (int e = 0; e < part[i]; ++e) pe *= p;
            factors[i] *= pe;
        }
    std::reverse(factors.begin(), factors.end());  // ascending divisibility
    FgAbGroup g;
    g.torsion = std::move(factors);
    return g;
}

}  // namespace

bool lr_coefficient_positive(const Partition& lambda, const Partition& mu, const Partition& nu) {
    if (psum(lambda) + psum(mu) != psum(nu)) return false;
    if (mu.empty()) return lambda == nu;
    const std::size_t rows = nu.size();
    if (lambda.size() > rows) return false;
    auto lam = [&](std::size_t i) { return i < lambda.size() ? lambda[i] : 0; };
    for (std::size_t i = 0; i < rows; ++i)
        if (lam(i) > nu[i]) return false;

    // Fill the skew shape nu/lambda with content mu row by row.  Constraints:
    // rows weakly increase left to right, columns strictly increase, and the
    // reverse reading word is a lattice word.  DFS with counts pruning.
    const std::size_t vals = mu.size();
    std::vector<int> counts(vals + 1, 0);
    // col_val[c] = value currently in column c of the previous row (0 = none)
    std::vector<int> col_prev(nu.empty() ? 0 : nu[0], 0);

    std::function<bool(std::size_t)> fill_row = [&](std::size_t r) -> bool {
        if (r == rows) {
            for (std::size_t v = 0; v < vals; ++v)
                if (counts[v + 1] != mu[v]) return false;
            return true;
        }
        const int lo = lam(r), hi = nu[r];
        // Choose values for cells lo..hi-1, weakly increasing; then check the
        // lattice condition right-to-left and recurse.
        std::vector<int> row(hi - lo, 0);
        std::function<bool(int, int)> place = [&](int c, int minval) -> bool {
            if (c == hi - lo) {
                // Lattice check processes the row right to left; value 1 is
                // unconstrained.
                std::vector<int> delta(vals + 1, 0);
                for (int i = c - 1; i >= 0; --i) {
                    int v = row[i];
                    delta[v]++;
                    if (v > 1 && counts[v] + delta[v] > counts[v - 1] + delta[v - 1]) return false;
                }
                for (std::size_t v = 1; v <= vals; ++v) counts[v] += delta[v];
                std::vector<int> old_cols(hi - lo);
                for (int i = 0; i < hi - lo; ++i) {
                    old_cols[i] = col_prev[lo + i];
                    col_prev[lo + i] = row[i];
                }
                // Cells of the next row below lambda columns have no entry.
                bool ok = fill_row(r + 1);
                for (int i = 0; i < hi - lo; ++i) col_prev[lo + i] = old_cols[i];
                for (std::size_t v = 1; v <= vals; ++v) counts[v] -= delta[v];
                return ok;
            }
            int above = col_prev[lo + c];
            for (int v = std::max(minval, above + 1); v <= static_cast<int>(vals); ++v) {
                // Cheap count bound: cannot exceed mu[v-1] copies of v.
                int used = counts[v];
                for (int i = 0; i < c; ++i)
                    if (row[i] == v) ++used;
                if (used >= mu[v - 1]) continue;
                row[c] = v;
                if (place(c + 1, v)) return true;
            }
            return false;
        };
        return place(0, 1);
    };
    return fill_row(0);
}

std::vector<FgAbGroup> extension_middle_terms(const FgAbGroup& sub, const FgAbGroup& quot,
                                              const std::optional<Int>& exponent_bound) {
    if (!sub.is_finite() || !quot.is_finite())
        throw std::invalid_argument("extension_middle_terms: finite groups required");
    auto lam_parts = prime_partitions(sub);
    auto mu_parts = prime_partitions(quot);
    std::map<Int, std::vector<Partition>> per_prime;
    std::vector<Int> primes;
    for (auto& [p, _] : lam_parts) primes.push_back(p);
    for (auto& [p, _] : mu_parts)
        if (!lam_parts.count(p)) primes.push_back(p);
    std::sort(primes.begin(), primes.end());

    for (const Int& p : primes) {
        Partition lambda = lam_parts.count(p) ? lam_parts[p] : Partition{};
        Partition mu = mu_parts.count(p) ? mu_parts[p] : Partition{};
        int n = psum(lambda) + psum(mu);
        int cap = exponent_bound ? valuation(*exponent_bound, p) : n;
        std::vector<Partition> nus;
        for (auto& nu : partitions_bounded(n, cap))
            if (lr_coefficient_positive(lambda, mu, nu)) nus.push_back(nu);
        per_prime[p] = std::move(nus);
    }

    std::vector<FgAbGroup> out;
    std::map<Int, Partition> choice;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == primes.size()) {
            out.push_back(group_from_prime_partitions(choice));
            return;
        }
        for (auto& nu : per_prime[primes[i]]) {
            choice[primes[i]] = nu;
            rec(i + 1);
        }
        choice.erase(primes[i]);
    };
    rec(0);
    std::sort(out.begin(), out.end(), [](const FgAbGroup& a, const FgAbGroup& b) {
        return a.torsion < b.torsion;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ExtensionResolution solve_extension(const FgAbGroup& kernel_term,
                                    const FgAbGroup& cokernel_term,
                                    const std::optional<Int>& annihilator_bound) {
    if (annihilator_bound && *annihilator_bound < 1)
        throw std::invalid_argument("solve_extension: annihilator bound must be >= 1");
    const FgAbGroup& k = kernel_term;
    const FgAbGroup& c = cokernel_term;
    ExtensionResolution res;
    res.group = direct_sum(c, k);
    res.annihilator_bound = annihilator_bound;

    // A bound asserts the middle term is annihilated by it, which is
    // contradictory when either side is infinite.
    if (annihilator_bound && (c.rank > 0 || k.rank > 0))
        throw std::invalid_argument("solve_extension: annihilator bound on an infinite extension");

    if (c.is_zero() || k.is_zero() || (k.rank > 0 && k.torsion.empty())) {
        // One side trivial, or free quotient side: the sequence splits and
        // the middle term is determined.
        if (annihilator_bound && !divides(res.group.exponent(), *annihilator_bound))
            throw std::invalid_argument(
                "solve_extension: annihilator bound excludes every extension");
        res.mode = ExtensionMode::forced_unique;
        return res;
    }

    if (c.rank > 0) {
        // Free part in the subgroup side: middle terms are not enumerated.
        res.mode = ExtensionMode::split_assumed;
        return res;
    }

    // Strip the free part of the quotient side; it always splits off.
    FgAbGroup kt = torsion_subgroup_of(k);
    const std::size_t extra_rank = k.rank;

    static const Int enumeration_guard = Int(1) << 30;
    if (c.order() * kt.order() > enumeration_guard) {
        res.mode = ExtensionMode::split_assumed;
        return res;
    }

    std::vector<FgAbGroup> middles = extension_middle_terms(c, kt, annihilator_bound);
    if (middles.empty())
        throw std::invalid_argument("solve_extension: annihilator bound excludes every extension");
    for (FgAbGroup& m : middles) m.rank = extra_rank;
    FgAbGroup split = res.group;
    for (const FgAbGroup& m : middles)
        if (!(m == split)) res.alternatives.push_back(m);

    if (res.alternatives.empty()) res.mode = ExtensionMode::forced_unique;
    else if (annihilator_bound) res.mode = ExtensionMode::ambiguous;
    else res.mode = ExtensionMode::split_assumed;
    return res;
}

}  // namespace kkcoeff
