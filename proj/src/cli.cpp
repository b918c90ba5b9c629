#include "kkcoeff/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "kkcoeff/coefficients.hpp"
#include "kkcoeff/report.hpp"
#include "kkcoeff/sampling.hpp"
#include "kkcoeff/transform.hpp"

namespace kkcoeff {

namespace {

// Anchor strings: the mathematical identity each suite instantiates.
const char* const kAnchorModQ = "H_n -xq-> H_n -> H^(q)_n -> H_{n-1} exact";
const char* const kAnchorPQ = "H^(p)_n -> H^(pq)_n -> H^(q)_n -> H^(p)_{n-1} exact";
const char* const kAnchorRatTors = "H^T_{n+1} -> H_n -> H_n (x) Q -> H^T_n exact";
const char* const kAnchorQZ = "H^(q)_n = coker(xq: H^T_{n+1}) (+) ker(xq: H^T_n)";
const char* const kAnchorConeValue = "K_0(C_q) = Z/q, K_1(C_q) = 0";
const char* const kAnchorConeLemma = "cone(p_q: C_pq -> C_q) = C_p theory";
const char* const kAnchorOrder = "q . H^(q)_n = 0 (2q when q = 2 mod 4)";
const char* const kAnchorColimit = "H^T_n = colim_q H^(q)_n";
const char* const kAnchorModel = "H^(q)_n = H_n/q (+) q-torsion(H_{n-1})";
const char* const kAnchorTorsion = "H^T_n = (Q/Z)^rank(H_n) (+) tors(H_{n-1})";
const char* const kAnchorRational = "H_n (x) Q = Q^rank(H_n)";
const char* const kAnchorBicondT = "mu iso <=> mu (x) Q iso and mu^T iso";
const char* const kAnchorBicondP = "mu iso <=> mu (x) Q iso and mu^(p) iso for all relevant p";
const char* const kAnchorBicondParts = "(mu (x) Q, mu^T) <=> (mu (x) Q, all mu^(p))";
const char* const kAnchorSound = "p outside S => (mu^(p) iso <=> mu (x) Q iso)";
const char* const kAnchorPrimeSet = "S = primes(invariant factors) U primes(elementary divisors)";

struct Options {
    std::string entry = "all";
    std::string coeff;
    std::string suite;
    long long q_max = 20;
    long long p_max = 12;
    long long profile_bound = 64;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string catalog_path;
    std::string sample_path;
    std::string show_name;
};

std::vector<CatalogEntry> load_catalog(const Options& o) {
    std::vector<CatalogEntry> cat = builtin_catalog();
    std::string path = o.catalog_path;
    if (path.empty())
        if (const char* env = std::getenv("KKCOEFF_CATALOG")) path = env;
    if (!path.empty()) cat = merge_catalogs(std::move(cat), load_catalog_file(path));
    return cat;
}

CatalogEntry resolve_entry(const std::vector<CatalogEntry>& cat, const std::string& raw) {
    std::string name = raw;
    if (name.rfind("cuntz:", 0) == 0) name = "O_" + name.substr(6);
    if (auto e = find_entry(cat, name)) return *e;
    throw std::runtime_error("unknown entry '" + raw + "'");
}

std::vector<CatalogEntry> selected_entries(const std::vector<CatalogEntry>& cat,
                                           const Options& o) {
    if (o.entry == "all") return cat;
    return {resolve_entry(cat, o.entry)};
}

std::string describe_resolution(const ExtensionResolution& res) {
    std::ostringstream os;
    os << res.group.to_string() << " [" << to_string(res.mode);
    if (res.annihilator_bound) os << ", bound " << *res.annihilator_bound;
    os << "]";
    for (const FgAbGroup& alt : res.alternatives) os << " alt " << alt.to_string();
    return os.str();
}

std::string entry_formula(const GradedTheory& t) {
    std::ostringstream os;
    for (int r = 0; r < t.period; ++r) {
        if (r) os << ", ";
        os << "K_" << r << " = " << t.groups[r].to_string();
    }
    return os.str();
}

std::string first_failure(const ExactnessReport& r) {
    for (const auto& node : r.nodes)
        if (!node.exact) return node.label + ": " + node.detail;
    return "";
}

std::string failing_labels(const StructuralReport& r) {
    std::string out;
    for (const auto& c : r.checks)
        if (!c.pass) out += (out.empty() ? "" : "; ") + c.label + ": " + c.detail;
    return out;
}

// --- verify suites ---------------------------------------------------------

void suite_mod_q(Report& rep, const std::vector<CatalogEntry>& entries, const Options& o) {
    for (const CatalogEntry& e : entries)
        for (long long q = 2; q <= o.q_max; ++q) {
            VerifiedSequence vs = build_mod_q_sequence(e.theory, Int(q));
            rep.add(e.name + " q=" + std::to_string(q), kAnchorModQ, vs.report.all_exact,
                    first_failure(vs.report));
        }
}

void suite_pq(Report& rep, const std::vector<CatalogEntry>& entries, const Options& o) {
    for (const CatalogEntry& e : entries)
        for (long long p = 2; p <= o.p_max; ++p)
            for (long long q = 2; q <= o.q_max; ++q) {
                VerifiedSequence vs = build_pq_sequence(e.theory, Int(p), Int(q));
                rep.add(e.name + " p=" + std::to_string(p) + " q=" + std::to_string(q),
                        kAnchorPQ, vs.report.all_exact, first_failure(vs.report));
            }
}

void suite_rational_torsion(Report& rep, const std::vector<CatalogEntry>& entries,
                            const Options&) {
    for (const CatalogEntry& e : entries) {
        StructuralReport sr = build_rational_torsion_sequence(e.theory);
        for (const auto& c : sr.checks)
            rep.add(e.name + ": " + c.label, kAnchorRatTors, c.pass, c.detail);
    }
}

void suite_qz_bockstein(Report& rep, const std::vector<CatalogEntry>& entries,
                        const Options& o) {
    for (const CatalogEntry& e : entries)
        for (long long q = 2; q <= o.q_max; ++q) {
            StructuralReport sr = build_qz_bockstein_sequence(e.theory, Int(q));
            rep.add(e.name + " q=" + std::to_string(q), kAnchorQZ, sr.all_pass,
                    failing_labels(sr));
        }
}

void suite_cone_lemma(Report& rep, const std::vector<CatalogEntry>&, const Options& o) {
    GradedTheory susp =
        make_theory("suspension", 2, {FgAbGroup::zero(), FgAbGroup::free_group(1)});
    // the cone theories themselves, out of the cone solver
    std::map<long long, GradedTheory> cones;
    auto cone_of = [&](long long m) -> const GradedTheory& {
        auto it = cones.find(m);
        if (it == cones.end()) {
            MappingCone mc = mapping_cone(multiplication_self_map(susp, Int(m)));
            it = cones.emplace(m, mc.cone).first;
        }
        return it->second;
    };
    for (long long q = 2; q <= o.q_max; ++q) {
        const GradedTheory& c = cone_of(q);
        bool pass = c.at(0) == FgAbGroup::cyclic(Int(q)) && c.at(1).is_zero();
        rep.add("C_" + std::to_string(q), kAnchorConeValue, pass,
                "K_0 = " + c.at(0).to_string() + ", K_1 = " + c.at(1).to_string());
    }
    for (long long p = 2; p <= o.p_max; ++p)
        for (long long q = 2; q <= o.q_max; ++q) {
            const GradedTheory& cpq = cone_of(p * q);
            const GradedTheory& cq = cone_of(q);
            const GradedTheory& cp = cone_of(p);
            IntMatrix red(1, 1);
            red.at(0, 0) = 1;
            std::vector<GroupHom> homs{make_hom(cpq.groups[0], cq.groups[0], red),
                                       zero_hom(cpq.groups[1], cq.groups[1])};
            MappingCone mc = mapping_cone(make_degreewise_map(cpq, cq, std::move(homs)));
            bool pass = mc.cone.groups == cp.groups;
            rep.add("p=" + std::to_string(p) + " q=" + std::to_string(q), kAnchorConeLemma,
                    pass, "cone: " + entry_formula(mc.cone));
        }
}

void suite_order_bound(Report& rep, const std::vector<CatalogEntry>& entries,
                       const Options& o) {
    auto run = [&](const std::string& name, const GradedTheory& t) {
        for (long long q = 2; q <= o.q_max; ++q) {
            OrderBoundReport ob = order_bound_check(mod_q(t, Int(q)));
            std::ostringstream detail;
            for (const auto& d : ob.degrees) {
                if (d.residue) detail << ", ";
                detail << "exp(H^(q)_" << d.residue << ") = " << d.exponent;
            }
            rep.add(name + " q=" + std::to_string(q), kAnchorOrder, ob.pass, detail.str());
        }
    };
    for (const CatalogEntry& e : entries) run(e.name, e.theory);
    SampleRng rng(o.seed);
    for (int i = 0; i < 10; ++i)
        run("random-" + std::to_string(i), sample_theory(rng, 2, 3, 64));
}

void suite_colimit(Report& rep, const std::vector<CatalogEntry>& entries, const Options& o) {
    Int bound(o.profile_bound);
    auto run = [&](const std::string& name, const GradedTheory& t) {
        TorsionTheory closed = torsion(t);
        std::vector<TruncatedProfile> got =
            colimit_oracle(t, DivisibilityIndex::factorial(), bound);
        bool pass = true;
        std::string detail;
        for (int r = 0; r < t.period; ++r) {
            TruncatedProfile want = truncated_profile(closed.at(r), bound);
            if (!(got[r] == want)) {
                pass = false;
                detail = "degree " + std::to_string(r) + ": closed " + want.to_string() +
                         " vs colimit " + got[r].to_string();
                break;
            }
        }
        rep.add(name, kAnchorColimit, pass, detail);
    };
    for (const CatalogEntry& e : entries) run(e.name, e.theory);
    SampleRng rng(o.seed);
    for (int i = 0; i < 15; ++i)
        run("random-" + std::to_string(i), sample_theory(rng, 2, 2, 16));
}

// Returns true when some biconditional was violated (the caller escalates
// the exit code: that outcome falsifies the implementation, not the data).
bool suite_equivalence(Report& rep, const std::vector<CatalogEntry>&, const Options& o) {
    bool violated = false;
    SampleRng rng(o.seed);
    for (int i = 0; i < 100; ++i) {
        TransformationSample s = sample_transformation(rng, "sample-" + std::to_string(i),
                                                       1 + static_cast<int>(rng.below(2)), 2,
                                                       16);
        EquivalenceReport er = equivalence_report(s);
        for (const auto& alg : er.algebras) {
            std::ostringstream verdicts;
            verdicts << "integral " << (alg.integral_iso ? "YES" : "NO") << ", rational "
                     << (alg.rational_iso ? "YES" : "NO") << ", torsion "
                     << (alg.torsion_iso ? "YES" : "NO");
            for (const auto& [p, iso] : alg.mod_p)
                verdicts << ", mod " << p << " " << (iso ? "YES" : "NO");
            std::string base = s.name + "/" + alg.algebra;
            rep.add(base + " integral<=>torsion", kAnchorBicondT, alg.bicond_torsion,
                    verdicts.str());
            rep.add(base + " integral<=>primes", kAnchorBicondP, alg.bicond_primes, "");
            rep.add(base + " parts agree", kAnchorBicondParts, alg.bicond_parts, "");
            violated = violated || !alg.bicond_torsion || !alg.bicond_primes ||
                       !alg.bicond_parts;
        }
    }
    // out-of-set primes cannot change the rational verdict
    for (int i = 0; i < 25; ++i) {
        TransformationSample s =
            sample_transformation(rng, "sound-" + std::to_string(i), 1, 2, 16);
        std::vector<Int> in_set = relevant_primes(s);
        std::vector<CaseVerdicts> rat = induce_rational(s);
        bool pass = true;
        std::string detail;
        int used = 0;
        for (long long pv : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) {
            Int p(pv);
            if (std::find(in_set.begin(), in_set.end(), p) != in_set.end()) continue;
            ++used;
            std::vector<InducedModQ> ind = induce_mod_q(s, p);
            for (std::size_t c = 0; c < ind.size(); ++c)
                if (ind[c].all_iso != rat[c].all_iso) {
                    pass = false;
                    detail = "p=" + p.str() + " case " + s.cases[c].algebra;
                }
        }
        rep.add(s.name, kAnchorSound, pass,
                pass ? std::to_string(used) + " primes checked" : detail);
    }
    return violated;
}

// --- commands --------------------------------------------------------------

void emit(const Report& rep, const Options& o, std::ostream& out) {
    if (o.format == "json")
        out << rep.to_json();
    else
        rep.print_text(out);
}

int cmd_compute(const Options& o, std::ostream& out) {
    std::vector<CatalogEntry> cat = load_catalog(o);
    CatalogEntry e = resolve_entry(cat, o.entry);
    Report rep;
    rep.command = "compute";
    rep.config = {{"entry", o.entry}, {"coeff", o.coeff}};
    if (o.coeff.rfind("mod:", 0) == 0) {
        Int q;
        try {
            q = Int(o.coeff.substr(4));
        } catch (const std::exception&) {
            throw std::runtime_error("--coeff mod:Q needs an integer modulus");
        }
        ModQTheory m = mod_q(e.theory, q);
        for (int r = 0; r < e.theory.period; ++r)
            rep.add("degree " + std::to_string(r), kAnchorModel,
                    true, describe_resolution(m.degrees[r].resolution));
    } else if (o.coeff == "torsion") {
        TorsionTheory t = torsion(e.theory);
        for (int r = 0; r < e.theory.period; ++r)
            rep.add("degree " + std::to_string(r), kAnchorTorsion, true,
                    t.at(r).to_string());
    } else if (o.coeff == "rational") {
        std::vector<AdmissibleGroup> g = rational(e.theory);
        for (int r = 0; r < e.theory.period; ++r)
            rep.add("degree " + std::to_string(r), kAnchorRational, true, g[r].to_string());
    } else {
        throw std::runtime_error("--coeff must be mod:Q, torsion or rational");
    }
    emit(rep, o, out);
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    std::vector<CatalogEntry> cat = load_catalog(o);
    std::vector<CatalogEntry> entries = selected_entries(cat, o);
    Report rep;
    rep.command = "verify";
    rep.config = {{"suite", o.suite},
                  {"entry", o.entry},
                  {"q-max", std::to_string(o.q_max)},
                  {"p-max", std::to_string(o.p_max)},
                  {"profile-bound", std::to_string(o.profile_bound)},
                  {"seed", std::to_string(o.seed)}};
    bool bicond_violated = false;
    auto want = [&](const char* s) { return o.suite == s || o.suite == "all"; };
    if (want("mod-q")) suite_mod_q(rep, entries, o);
    if (want("pq")) suite_pq(rep, entries, o);
    if (want("rational-torsion")) suite_rational_torsion(rep, entries, o);
    if (want("qz-bockstein")) suite_qz_bockstein(rep, entries, o);
    if (want("cone-lemma")) suite_cone_lemma(rep, entries, o);
    if (want("order-bound")) suite_order_bound(rep, entries, o);
    if (want("colimit-oracle")) suite_colimit(rep, entries, o);
    if (want("equivalence")) bicond_violated = suite_equivalence(rep, entries, o);
    emit(rep, o, out);
    if (bicond_violated) return 2;
    return rep.all_pass() ? 0 : 1;
}

int cmd_check_transform(const Options& o, std::ostream& out) {
    TransformationSample s = load_sample_file(o.sample_path);
    EquivalenceReport er = equivalence_report(s);
    Report rep;
    rep.command = "check-transform";
    rep.config = {{"sample", o.sample_path},
                  {"name", s.name},
                  {"role", to_string(s.role)}};
    std::ostringstream primes;
    for (const Int& p : er.prime_set) primes << (primes.tellp() > 0 ? ", " : "") << p;
    rep.add("relevant primes", kAnchorPrimeSet, true,
            er.prime_set.empty() ? "none" : primes.str());
    for (const auto& alg : er.algebras) {
        std::ostringstream verdicts;
        verdicts << "integral " << (alg.integral_iso ? "YES" : "NO") << ", rational "
                 << (alg.rational_iso ? "YES" : "NO") << ", torsion "
                 << (alg.torsion_iso ? "YES" : "NO");
        for (const auto& [p, iso] : alg.mod_p)
            verdicts << ", mod " << p << " " << (iso ? "YES" : "NO");
        rep.add(alg.algebra + ": integral<=>torsion", kAnchorBicondT, alg.bicond_torsion,
                verdicts.str());
        rep.add(alg.algebra + ": integral<=>primes", kAnchorBicondP, alg.bicond_primes, "");
        rep.add(alg.algebra + ": parts agree", kAnchorBicondParts, alg.bicond_parts, "");
    }
    emit(rep, o, out);
    return er.all_biconditionals_hold ? 0 : 2;
}

int cmd_catalog_list(const Options& o, std::ostream& out) {
    Report rep;
    rep.command = "catalog list";
    for (const CatalogEntry& e : load_catalog(o))
        rep.add(e.name, entry_formula(e.theory), true, e.provenance);
    emit(rep, o, out);
    return 0;
}

int cmd_catalog_show(const Options& o, std::ostream& out) {
    CatalogEntry e = resolve_entry(load_catalog(o), o.show_name);
    Report rep;
    rep.command = "catalog show";
    rep.config = {{"entry", e.name}};
    for (int r = 0; r < e.theory.period; ++r)
        rep.add("degree " + std::to_string(r),
                "K_" + std::to_string(r) + " = " + e.theory.groups[r].to_string(), true, "");
    rep.add("provenance", entry_formula(e.theory), true, e.provenance);
    if (e.theory.equivariance_label)
        rep.add("equivariance", entry_formula(e.theory), true, *e.theory.equivariance_label);
    emit(rep, o, out);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"exact-arithmetic engine for homology with mod-q, torsion and rational "
                 "coefficients"};
    app.require_subcommand(1);

    CLI::App* compute = app.add_subcommand("compute", "evaluate a coefficient theory");
    compute->add_option("--entry", o.entry, "catalog entry")->required();
    compute->add_option("--coeff", o.coeff, "mod:Q | torsion | rational")->required();

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", o.suite, "which suite")
        ->required()
        ->check(CLI::IsMember({"mod-q", "pq", "rational-torsion", "qz-bockstein",
                               "cone-lemma", "order-bound", "colimit-oracle", "equivalence",
                               "all"}));
    verify->add_option("--entry", o.entry, "catalog entry, or all");
    verify->add_option("--q-max", o.q_max, "largest modulus")->check(CLI::Range(2LL, 100000LL));
    verify->add_option("--p-max", o.p_max, "largest second modulus")
        ->check(CLI::Range(2LL, 100000LL));
    verify->add_option("--profile-bound", o.profile_bound, "truncation bound for profiles")
        ->check(CLI::Range(2LL, 1000000LL));
    verify->add_option("--seed", o.seed, "seed for the property suites");

    CLI::App* check = app.add_subcommand("check-transform", "equivalence battery on a sample");
    check->add_option("sample", o.sample_path, "sample JSON file")->required();

    CLI::App* catalog = app.add_subcommand("catalog", "inspect the entry catalog");
    catalog->require_subcommand(1);
    CLI::App* cat_list = catalog->add_subcommand("list", "list entries");
    CLI::App* cat_show = catalog->add_subcommand("show", "show one entry");
    cat_show->add_option("name", o.show_name, "entry name")->required();

    for (CLI::App* sub : {compute, verify, check, cat_list, cat_show}) {
        sub->add_option("--format", o.format, "text | json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--catalog", o.catalog_path, "extra catalog file (merged over "
                                                     "builtin; default $KKCOEFF_CATALOG)");
    }

    std::vector<std::string> argv_store;
    argv_store.push_back("kkcoeff");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (compute->parsed()) return cmd_compute(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        if (check->parsed()) return cmd_check_transform(o, out);
        if (cat_list->parsed()) return cmd_catalog_list(o, out);
        if (cat_show->parsed()) return cmd_catalog_show(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no command\n";
    return 1;
}

}  // namespace kkcoeff
