// Acceptance battery: one line per criterion, nonzero exit on any failure.
// Time budgets and sample counts are pinned here, not configurable.

#include "kkcoeff/cli.hpp"
#include "kkcoeff/coefficients.hpp"
#include "kkcoeff/sampling.hpp"
#include "kkcoeff/theory.hpp"
#include "kkcoeff/transform.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace kkcoeff;

namespace {

constexpr double kConeValueBudget = 1.0;    // seconds, criterion 1
constexpr double kConeLemmaBudget = 5.0;    // seconds, criterion 2
constexpr double kColimitBudget = 60.0;     // seconds, criterion 5
constexpr double kEquivalenceBudget = 30.0; // seconds, criterion 9

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

void report(int n, const std::string& what, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", n, what.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

GradedTheory suspension_line() {
    return make_theory("suspension", 2, {FgAbGroup::zero(), FgAbGroup::free_group(1)});
}

// 1. Cone values: K_0(C_q) = Z/q, K_1(C_q) = 0 for q = 2..200, within budget.
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    GradedTheory susp = suspension_line();
    bool ok = true;
    long long bad = 0;
    for (long long q = 2; q <= 200; ++q) {
        MappingCone mc = mapping_cone(multiplication_self_map(susp, Int(q)));
        if (!(mc.cone.at(0) == FgAbGroup::cyclic(Int(q)) && mc.cone.at(1).is_zero())) {
            ok = false;
            bad = q;
        }
    }
    double dt = seconds_since(t0);
    std::string detail = "q = 2..200 in " + fmt_seconds(dt) + " of " +
                         fmt_seconds(kConeValueBudget);
    if (!ok) detail = "wrong value at q = " + std::to_string(bad);
    report(1, "K_0(C_q) = Z/q and K_1(C_q) = 0 from the cone construction", ok && dt < kConeValueBudget,
           detail);
}

// 2. cone(p_q: C_pq -> C_q) agrees degreewise with the C_p theory for
//    2 <= p, q <= 30, within budget.
void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    GradedTheory susp = suspension_line();
    std::map<long long, GradedTheory> cones;
    auto cone_of = [&](long long m) -> const GradedTheory& {
        auto it = cones.find(m);
        if (it == cones.end())
            it = cones.emplace(m, mapping_cone(multiplication_self_map(susp, Int(m))).cone)
                     .first;
        return it->second;
    };
    bool ok = true;
    std::string where;
    for (long long p = 2; p <= 30 && ok; ++p)
        for (long long q = 2; q <= 30 && ok; ++q) {
            const GradedTheory& cpq = cone_of(p * q);
            const GradedTheory& cq = cone_of(q);
            IntMatrix red(1, 1);
            red.at(0, 0) = 1;
            std::vector<GroupHom> homs{make_hom(cpq.groups[0], cq.groups[0], red),
                                       zero_hom(cpq.groups[1], cq.groups[1])};
            MappingCone mc = mapping_cone(make_degreewise_map(cpq, cq, std::move(homs)));
            if (mc.cone.groups != cone_of(p).groups) {
                ok = false;
                where = "p = " + std::to_string(p) + ", q = " + std::to_string(q);
            }
        }
    double dt = seconds_since(t0);
    report(2, "cone(p_q: C_pq -> C_q) = C_p theory for 2 <= p, q <= 30",
           ok && dt < kConeLemmaBudget,
           ok ? "841 pairs in " + fmt_seconds(dt) + " of " + fmt_seconds(kConeLemmaBudget)
              : where);
}

// 3. The mod-q sequence H_n -xq-> H_n -> H^(q)_n -> H_{n-1} is exact for
//    every catalog entry and every q <= 50.
void criterion_3() {
    bool ok = true;
    std::string where;
    long long count = 0;
    for (const CatalogEntry& e : builtin_catalog())
        for (long long q = 2; q <= 50; ++q) {
            ++count;
            if (!build_mod_q_sequence(e.theory, Int(q)).report.all_exact) {
                ok = false;
                where = e.name + " q = " + std::to_string(q);
            }
        }
    report(3, "mod-q long sequence exact on the whole catalog, q <= 50", ok,
           ok ? std::to_string(count) + " sequences, zero failures" : where);
}

// 4. The pq sequence H^(p) -> H^(pq) -> H^(q) -d-> H^(p)[-1] is exact for
//    every catalog entry and all 2 <= p, q <= 20.
void criterion_4() {
    bool ok = true;
    std::string where;
    long long count = 0;
    for (const CatalogEntry& e : builtin_catalog())
        for (long long p = 2; p <= 20; ++p)
            for (long long q = 2; q <= 20; ++q) {
                ++count;
                if (!build_pq_sequence(e.theory, Int(p), Int(q)).report.all_exact) {
                    ok = false;
                    where = e.name + " p = " + std::to_string(p) +
                            " q = " + std::to_string(q);
                }
            }
    report(4, "pq long sequence exact on the whole catalog, p, q <= 20", ok,
           ok ? std::to_string(count) + " sequences, zero failures" : where);
}

// 5. On 100 seeded random theories the closed-form torsion theory and the
//    factorial-chain colimit oracle have the same truncated profile at
//    bound 2^10 in every degree, within budget.
void criterion_5() {
    auto t0 = std::chrono::steady_clock::now();
    const Int bound = 1024;
    SampleRng rng(0xacc5);
    bool ok = true;
    std::string where;
    for (int i = 0; i < 100 && ok; ++i) {
        GradedTheory t = sample_theory(rng, 2, 3, 64);
        TorsionTheory tt = torsion(t);
        std::vector<TruncatedProfile> oracle =
            colimit_oracle(t, DivisibilityIndex::factorial(), bound);
        for (int r = 0; r < t.period; ++r)
            if (!(truncated_profile(tt.at(r), bound) == oracle[static_cast<std::size_t>(r)])) {
                ok = false;
                where = "theory " + std::to_string(i) + " degree " + std::to_string(r);
            }
    }
    double dt = seconds_since(t0);
    report(5, "H^T profiles match the colimit oracle at bound 2^10 on 100 random theories",
           ok && dt < kColimitBudget,
           ok ? "in " + fmt_seconds(dt) + " of " + fmt_seconds(kColimitBudget) : where);
}

// 6. The rational-torsion structural sequence holds for every catalog entry.
void criterion_6() {
    bool ok = true;
    std::string where;
    for (const CatalogEntry& e : builtin_catalog())
        if (!build_rational_torsion_sequence(e.theory).all_pass) {
            ok = false;
            where = e.name;
        }
    report(6, "rational/torsion structural sequence on the whole catalog", ok,
           ok ? "all entries" : where);
}

// 7. The Q/Z Bockstein splice holds for every catalog entry and q <= 20.
void criterion_7() {
    bool ok = true;
    std::string where;
    for (const CatalogEntry& e : builtin_catalog())
        for (long long q = 2; q <= 20; ++q)
            if (!build_qz_bockstein_sequence(e.theory, Int(q)).all_pass) {
                ok = false;
                where = e.name + " q = " + std::to_string(q);
            }
    report(7, "Q/Z Bockstein sequence on the whole catalog, q <= 20", ok,
           ok ? "all entries" : where);
}

// 8. q . H^(q)_n = 0 (2q when q = 2 mod 4) over the catalog and random
//    bases for q <= 100; a deliberately corrupted model must FAIL.
void criterion_8() {
    bool ok = true;
    std::string where;
    std::vector<GradedTheory> bases;
    for (const CatalogEntry& e : builtin_catalog()) bases.push_back(e.theory);
    SampleRng rng(0xacc8);
    for (int i = 0; i < 10; ++i) bases.push_back(sample_theory(rng, 2, 3, 64));
    for (const GradedTheory& t : bases)
        for (long long q = 2; q <= 100; ++q)
            if (!order_bound_check(mod_q(t, Int(q))).pass) {
                ok = false;
                where = t.name + " q = " + std::to_string(q);
            }
    // the planted failure: an exponent-25 group smuggled into a q = 5 model
    ModQTheory planted = mod_q(bases[0], 5);
    planted.degrees[0].group = FgAbGroup::cyclic(25);
    bool planted_fails = !order_bound_check(planted).pass;
    if (!planted_fails) where = "planted corruption went undetected";
    report(8, "order bound q . H^(q) = 0 over catalog and random bases, q <= 100",
           ok && planted_fails,
           ok && planted_fails ? "honest models pass, planted corruption detected" : where);
}

// 9. 500 seeded transformation samples: the isomorphism biconditionals all
//    hold.  Soundness: on 50 samples, the first 10 primes outside the
//    relevant set reproduce the rational verdict.  Within budget.
void criterion_9() {
    auto t0 = std::chrono::steady_clock::now();
    SampleRng rng(0xacc9);
    bool ok = true;
    std::string where;
    for (int i = 0; i < 500 && ok; ++i) {
        TransformationSample s = sample_transformation(
            rng, "acc-" + std::to_string(i), 1 + static_cast<int>(rng.below(2)), 2, 16);
        EquivalenceReport er = equivalence_report(s);
        if (!er.all_biconditionals_hold) {
            ok = false;
            where = "biconditional violated on sample " + std::to_string(i);
        }
    }
    for (int i = 0; i < 50 && ok; ++i) {
        TransformationSample s =
            sample_transformation(rng, "sound-" + std::to_string(i), 1, 2, 16);
        std::vector<Int> in_set = relevant_primes(s);
        std::vector<CaseVerdicts> rat = induce_rational(s);
        int used = 0;
        for (const Int& p : primes_up_to(200)) {
            if (used == 10) break;
            if (std::find(in_set.begin(), in_set.end(), p) != in_set.end()) continue;
            ++used;
            std::vector<InducedModQ> ind = induce_mod_q(s, p);
            for (std::size_t c = 0; c < ind.size(); ++c)
                if (ind[c].all_iso != rat[c].all_iso) {
                    ok = false;
                    where = "soundness sample " + std::to_string(i) + " p = " + p.str();
                }
        }
        if (ok && used != 10) {
            ok = false;
            where = "could not find 10 out-of-set primes";
        }
    }
    double dt = seconds_since(t0);
    report(9, "isomorphism biconditionals on 500 samples; out-of-set prime soundness on 50",
           ok && dt < kEquivalenceBudget,
           ok ? "in " + fmt_seconds(dt) + " of " + fmt_seconds(kEquivalenceBudget) : where);
}

// 10. Smith oracle: on 1000 random matrices up to 8x8 with entries in
//     [-50, 50], verify u m v = d directly, unimodularity of u and v,
//     exactness of the recorded inverses, and the divisor chain.
void criterion_10() {
    SampleRng rng(0xacc10);
    bool ok = true;
    std::string where;
    for (int i = 0; i < 1000 && ok; ++i) {
        std::size_t rows = 1 + static_cast<std::size_t>(rng.below(8));
        std::size_t cols = 1 + static_cast<std::size_t>(rng.below(8));
        IntMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = Int(rng.below(101) - 50);
        SmithResult sr = smith_normal_form(m);
        auto fail = [&](const std::string& what) {
            ok = false;
            where = "matrix " + std::to_string(i) + ": " + what;
        };
        if (!(sr.u * m * sr.v == sr.d)) fail("u m v != d");
        Int du = det(sr.u), dv = det(sr.v);
        if (!(du == 1 || du == -1)) fail("u not unimodular");
        if (!(dv == 1 || dv == -1)) fail("v not unimodular");
        if (!(sr.u * sr.u_inv == IntMatrix::identity(rows))) fail("u_inv wrong");
        if (!(sr.v * sr.v_inv == IntMatrix::identity(cols))) fail("v_inv wrong");
        std::size_t nonzero = 0;
        for (std::size_t r = 0; r < rows && ok; ++r)
            for (std::size_t c = 0; c < cols && ok; ++c) {
                if (r != c && sr.d.at(r, c) != 0) fail("d not diagonal");
                if (r == c && sr.d.at(r, c) < 0) fail("negative diagonal");
                if (r == c && sr.d.at(r, c) != 0) ++nonzero;
            }
        if (ok && nonzero != sr.rank) fail("rank mismatch");
        for (std::size_t k = 0; ok && k + 1 < sr.rank; ++k)
            if (!divides(sr.d.at(k, k), sr.d.at(k + 1, k + 1))) fail("divisor chain broken");
        for (std::size_t k = sr.rank; ok && k < std::min(rows, cols); ++k)
            if (sr.d.at(k, k) != 0) fail("nonzero past the rank");
    }
    report(10, "Smith normal form oracle on 1000 random matrices up to 8x8", ok,
           ok ? "u m v = d, unimodularity, inverses, divisor chain" : where);
}

// 11. Two runs of the full verify battery with one seed emit byte-identical
//     JSON.
void criterion_11() {
    std::vector<std::string> args{"verify", "--suite",         "all",  "--q-max", "6",
                                  "--p-max", "4",              "--profile-bound", "32",
                                  "--seed",  "7",              "--format",        "json"};
    std::ostringstream out1, err1, out2, err2;
    int c1 = run_cli(args, out1, err1);
    int c2 = run_cli(args, out2, err2);
    bool ok = c1 == 0 && c2 == 0 && out1.str() == out2.str() && !out1.str().empty();
    report(11, "full verify battery is byte-identical across runs at one seed", ok,
           ok ? std::to_string(out1.str().size()) + " bytes, identical"
              : "exit " + std::to_string(c1) + "/" + std::to_string(c2) +
                    (out1.str() == out2.str() ? "" : ", outputs differ"));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures == 0)
        std::printf("all 11 acceptance criteria pass\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
