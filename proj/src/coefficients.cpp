#include "kkcoeff/coefficients.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kkcoeff {

namespace {

int residue(long long n, int period) {
    long long r = n % period;
    if (r < 0) r += period;
    return static_cast<int>(r);
}

std::string deg_label(const std::string& sym, long long n) {
    std::ostringstream os;
    os << sym << "[" << n << "]";
    return os.str();
}

std::string mod_sym(const Int& q) { return "H^(" + q.str() + ")"; }

// Annihilator bound of the mod-q theory: q, except 2q when q = 2 (mod 4).
Int mod_q_bound(const Int& q) { return q % 4 == 2 ? Int(2 * q) : q; }

}  // namespace

const FgAbGroup& ModQTheory::at(long long n) const { return degree(n).group; }

const ModQTheory::Degree& ModQTheory::degree(long long n) const {
    return degrees[static_cast<std::size_t>(residue(n, base.period))];
}

GradedTheory ModQTheory::as_theory() const {
    GradedTheory t;
    t.name = base.name + " mod " + q.str();
    t.period = base.period;
    t.equivariance_label = base.equivariance_label;
    for (const Degree& d : degrees) t.groups.push_back(d.group);
    return t;
}

ModQTheory mod_q(const GradedTheory& base, const Int& q) {
    if (q < 2) throw std::invalid_argument("mod_q: q must be at least 2");
    ModQTheory m;
    m.base = base;
    m.q = q;
    const Int bound = mod_q_bound(q);
    for (int r = 0; r < base.period; ++r) {
        const FgAbGroup& cur = base.groups[static_cast<std::size_t>(r)];
        const FgAbGroup& prev = base.groups[static_cast<std::size_t>(residue(r - 1, base.period))];
        ModQTheory::Degree d;
        std::vector<Int> cok_orders, tor_orders;
        for (const Int& di : cur.torsion) cok_orders.push_back(gcd(di, q));
        for (std::size_t i = 0; i < cur.rank; ++i) cok_orders.push_back(q);
        for (const Int& dj : prev.torsion) tor_orders.push_back(gcd(dj, q));
        d.cok_count = cok_orders.size();
        d.natural_orders = cok_orders;
        d.natural_orders.insert(d.natural_orders.end(), tor_orders.begin(), tor_orders.end());

        d.resolution = solve_extension(from_cyclic_orders(tor_orders),
                                       from_cyclic_orders(cok_orders), bound);
        Canonicalized canon = canonicalize_presentation(d.natural_orders);
        if (!(canon.group == d.resolution.group))
            throw std::logic_error("mod_q: split model coordinates disagree");
        d.group = canon.group;
        d.to_canon = std::move(canon.to_canon);
        d.from_canon = std::move(canon.from_canon);
        m.degrees.push_back(std::move(d));
    }
    return m;
}

GroupHom bockstein(const ModQTheory& m, long long n) {
    const ModQTheory::Degree& d = m.degree(n);
    const FgAbGroup& prev = m.base.at(n - 1);
    IntMatrix nat(prev.gens(), d.natural_orders.size());
    for (std::size_t j = 0; j < prev.torsion.size(); ++j) {
        Int g = gcd(prev.torsion[j], m.q);
        nat.at(j, d.cok_count + j) = prev.torsion[j] / g;
    }
    return make_hom(d.group, prev, nat * d.from_canon);
}

GroupHom reduction(const ModQTheory& m, long long n) {
    const ModQTheory::Degree& d = m.degree(n);
    const FgAbGroup& cur = m.base.at(n);
    IntMatrix nat(d.natural_orders.size(), cur.gens());
    for (std::size_t i = 0; i < d.cok_count; ++i) nat.at(i, i) = 1;
    return make_hom(cur, d.group, d.to_canon * nat);
}

DegreewiseMap transition(const ModQTheory& from, const ModQTheory& to) {
    if (!(from.base == to.base))
        throw std::invalid_argument("transition: theories have different bases");
    if (!divides(from.q, to.q))
        throw std::invalid_argument("transition: source modulus must divide target modulus");
    Int s = to.q / from.q;
    std::vector<GroupHom> homs;
    for (int r = 0; r < from.base.period; ++r) {
        const ModQTheory::Degree& a = from.degrees[static_cast<std::size_t>(r)];
        const ModQTheory::Degree& b = to.degrees[static_cast<std::size_t>(r)];
        const FgAbGroup& prev = from.base.at(r - 1);
        IntMatrix nat(b.natural_orders.size(), a.natural_orders.size());
        for (std::size_t i = 0; i < a.cok_count; ++i) nat.at(i, i) = s;
        for (std::size_t j = 0; j < prev.torsion.size(); ++j) {
            Int g = gcd(prev.torsion[j], from.q);
            Int gp = gcd(prev.torsion[j], to.q);
            nat.at(b.cok_count + j, a.cok_count + j) = gp / g;
        }
        homs.push_back(make_hom(a.group, b.group, b.to_canon * nat * a.from_canon));
    }
    return make_degreewise_map(from.as_theory(), to.as_theory(), std::move(homs));
}

VerifiedSequence build_mod_q_sequence(const GradedTheory& base, const Int& q) {
    ModQTheory m = mod_q(base, q);
    const long long top = 2 * base.period;
    LongSequence seq;
    seq.groups.push_back(m.at(top + 1));
    seq.labels.push_back(deg_label(mod_sym(q), top + 1));
    for (long long k = top; k >= 0; --k) {
        seq.maps.push_back(bockstein(m, k + 1));
        seq.groups.push_back(base.at(k));
        seq.labels.push_back(deg_label("H", k));
        seq.maps.push_back(multiplication_hom(base.at(k), q));
        seq.groups.push_back(base.at(k));
        seq.labels.push_back(deg_label("H", k));
        seq.maps.push_back(reduction(m, k));
        seq.groups.push_back(m.at(k));
        seq.labels.push_back(deg_label(mod_sym(q), k));
    }
    VerifiedSequence out;
    out.report = verify_exact(seq.groups, seq.maps, seq.labels);
    out.seq = std::move(seq);
    return out;
}

VerifiedSequence build_pq_sequence(const GradedTheory& base, const Int& p, const Int& q) {
    ModQTheory mp = mod_q(base, p);
    ModQTheory mq = mod_q(base, q);
    ModQTheory mpq = mod_q(base, p * q);
    DegreewiseMap iota = transition(mp, mpq);

    // pi: reduction of the modulus on the cokernel part; on the torsion part
    // the q-torsion layer sits inside the pq-torsion with index p g_q / g_pq.
    std::vector<GroupHom> pis;
    for (int r = 0; r < base.period; ++r) {
        const ModQTheory::Degree& a = mpq.degrees[static_cast<std::size_t>(r)];
        const ModQTheory::Degree& b = mq.degrees[static_cast<std::size_t>(r)];
        const FgAbGroup& prev = base.at(r - 1);
        IntMatrix nat(b.natural_orders.size(), a.natural_orders.size());
        for (std::size_t i = 0; i < a.cok_count; ++i) nat.at(i, i) = 1;
        for (std::size_t j = 0; j < prev.torsion.size(); ++j) {
            Int gq = gcd(prev.torsion[j], q);
            Int gpq = gcd(prev.torsion[j], p * q);
            nat.at(b.cok_count + j, a.cok_count + j) = p * gq / gpq;
        }
        pis.push_back(make_hom(a.group, b.group, b.to_canon * nat * a.from_canon));
    }

    const long long top = 2 * base.period;
    LongSequence seq;
    seq.groups.push_back(mp.at(top + 1));
    seq.labels.push_back(deg_label(mod_sym(p), top + 1));
    for (long long k = top + 1; k >= 1; --k) {
        int r = residue(k, base.period);
        seq.maps.push_back(iota.at(k));
        seq.groups.push_back(mpq.at(k));
        seq.labels.push_back(deg_label(mod_sym(p * q), k));
        seq.maps.push_back(pis[static_cast<std::size_t>(r)]);
        seq.groups.push_back(mq.at(k));
        seq.labels.push_back(deg_label(mod_sym(q), k));
        seq.maps.push_back(compose(reduction(mp, k - 1), bockstein(mq, k)));
        seq.groups.push_back(mp.at(k - 1));
        seq.labels.push_back(deg_label(mod_sym(p), k - 1));
    }
    VerifiedSequence out;
    out.report = verify_exact(seq.groups, seq.maps, seq.labels);
    out.seq = std::move(seq);
    return out;
}

const AdmissibleGroup& TorsionTheory::at(long long n) const {
    return groups[static_cast<std::size_t>(residue(n, base.period))];
}

TorsionTheory torsion(const GradedTheory& base) {
    TorsionTheory t;
    t.base = base;
    for (int r = 0; r < base.period; ++r) {
        const FgAbGroup& cur = base.groups[static_cast<std::size_t>(r)];
        const FgAbGroup& prev = base.groups[static_cast<std::size_t>(residue(r - 1, base.period))];
        t.groups.push_back(make_admissible(0, 0, cur.rank, prev.torsion));
    }
    return t;
}

std::vector<AdmissibleGroup> rational(const GradedTheory& base) {
    std::vector<AdmissibleGroup> out;
    for (const FgAbGroup& g : base.groups) out.push_back(rationalize(g));
    return out;
}

DivisibilityIndex DivisibilityIndex::factorial() {
    DivisibilityIndex d;
    d.name = "factorial";
    d.value = [](long long k) {
        Int v = 1;
        for (long long i = 2; i <= k; ++i) v *= i;
        return v;
    };
    d.supports = [](const Int&) { return true; };
    return d;
}

DivisibilityIndex DivisibilityIndex::prime_powers(const Int& p) {
    DivisibilityIndex d;
    d.name = "powers of " + p.str();
    d.value = [p](long long k) {
        Int v = 1;
        for (long long i = 0; i < k; ++i) v *= p;
        return v;
    };
    d.supports = [p](const Int& pr) { return pr == p; };
    return d;
}

std::vector<TruncatedProfile> colimit_oracle(const GradedTheory& base,
                                             const DivisibilityIndex& chain,
                                             const Int& profile_bound) {
    if (profile_bound < 2) throw std::invalid_argument("colimit_oracle: profile bound must be >= 2");
    if (profile_bound > 1000000)
        throw std::invalid_argument("colimit_oracle: profile bound too large");
    const auto powers = prime_powers_up_to(profile_bound);
    const long long cap = 16 * profile_bound.convert_to<long long>() + 64;

    // Doubling index subsequence 2, 3, 4, 6, 8, 12, ...: consecutive chain
    // values stay a bounded factor apart while the indices grow geometrically.
    auto next_index = [](long long k) { return k % 3 == 0 ? k / 3 * 4 : k / 2 * 3; };

    const int p = base.period;
    std::vector<TruncatedProfile> current(static_cast<std::size_t>(p));
    std::vector<TruncatedProfile> previous;
    long long k_lo = 2;
    Int q_lo = chain.value(k_lo);
    if (q_lo < 2) throw std::invalid_argument("colimit_oracle: chain value below 2");

    for (long long k_hi = next_index(k_lo);; k_lo = k_hi, k_hi = next_index(k_hi)) {
        if (k_hi > cap) {
            std::ostringstream os;
            os << "colimit_oracle: profiles failed to stabilize along chain '" << chain.name
               << "' by index " << cap;
            throw std::runtime_error(os.str());
        }
        Int q_hi = chain.value(k_hi);
        if (!divides(q_lo, q_hi))
            throw std::invalid_argument("colimit_oracle: chain is not a divisibility chain");
        Int s = q_hi / q_lo;

        // Image of the transition mod q_lo -> mod q_hi, degreewise.  All the
        // maps are diagonal in natural coordinates, so the image is a direct
        // sum of cyclics computed arithmetically: a cyclic of order o hit with
        // index c leaves Z/(o / gcd(o, c)).
        for (int r = 0; r < p; ++r) {
            const FgAbGroup& cur = base.groups[static_cast<std::size_t>(r)];
            const FgAbGroup& prev = base.groups[static_cast<std::size_t>(residue(r - 1, p))];
            std::vector<Int> orders;
            for (const Int& di : cur.torsion) {
                Int o = gcd(di, q_hi);
                orders.push_back(o / gcd(o, s));
            }
            for (std::size_t i = 0; i < cur.rank; ++i) orders.push_back(q_lo);
            for (const Int& dj : prev.torsion) orders.push_back(gcd(dj, q_lo));
            current[static_cast<std::size_t>(r)] =
                truncated_profile(make_admissible(0, 0, 0, orders), profile_bound);
        }

        if (!previous.empty() && previous == current) {
            bool complete = true;
            for (const auto& [pr, e] : powers) {
                if (!chain.supports(pr)) continue;
                Int pe = 1;
                for (int i = 0; i < e; ++i) pe *= pr;
                if (q_lo % pe != 0) {
                    complete = false;
                    break;
                }
            }
            if (complete) return current;
        }
        previous = current;
        q_lo = q_hi;
    }
}

void StructuralReport::add(std::string label, bool pass_, std::string detail) {
    all_pass = all_pass && pass_;
    checks.push_back({std::move(label), pass_, std::move(detail)});
}

namespace {

// Integral model of the rationalization of g: the projection onto the free
// coordinates.  Its kernel is the torsion subgroup.
GroupHom free_projection(const FgAbGroup& g) {
    IntMatrix m(g.rank, g.gens());
    for (std::size_t i = 0; i < g.rank; ++i) m.at(i, g.torsion.size() + i) = 1;
    return make_hom(g, FgAbGroup::free_group(g.rank), m);
}

std::string mismatch(const std::string& got, const std::string& want) {
    return "got " + got + ", wanted " + want;
}

}  // namespace

StructuralReport build_rational_torsion_sequence(const GradedTheory& base) {
    TorsionTheory t = torsion(base);
    std::vector<AdmissibleGroup> rat = rational(base);
    StructuralReport rep;
    for (int r = 0; r < base.period; ++r) {
        const FgAbGroup& cur = base.groups[static_cast<std::size_t>(r)];
        FgAbGroup tors = kernel(free_projection(cur)).type;

        rep.add(deg_label("ker(H -> H(x)Q)", r) + " = tors H",
                tors == torsion_subgroup_of(cur),
                mismatch(tors.to_string(), torsion_subgroup_of(cur).to_string()));

        // Image of T[n+1] -> H[n]: the divisible part dies, only the finite
        // cyclic component lands, and it must fill the whole torsion subgroup.
        FgAbGroup t_next_fin = from_cyclic_orders(t.at(r + 1).torsion);
        rep.add("finite part of T[" + std::to_string(r + 1) + "] = " + deg_label("tors H", r),
                t_next_fin == tors, mismatch(t_next_fin.to_string(), tors.to_string()));

        bool ranks = t.at(r).qz_rank == cur.rank &&
                     rat[static_cast<std::size_t>(r)].q_rank == cur.rank;
        std::ostringstream os;
        os << "qz rank " << t.at(r).qz_rank << ", Q-dim " << rat[static_cast<std::size_t>(r)].q_rank
           << ", rank " << cur.rank;
        rep.add(deg_label("(Q/Z)-rank T", r) + " = " + deg_label("dim_Q H(x)Q", r) + " = rank",
                ranks, os.str());
    }
    return rep;
}

StructuralReport build_qz_bockstein_sequence(const GradedTheory& base, const Int& q) {
    if (q < 2) throw std::invalid_argument("build_qz_bockstein_sequence: q must be at least 2");
    ModQTheory m = mod_q(base, q);
    TorsionTheory t = torsion(base);
    StructuralReport rep;
    for (int r = 0; r < base.period; ++r) {
        AdmissibleGroup cok = mult_kernel_cokernel(t.at(r + 1), q).second;
        AdmissibleGroup ker = mult_kernel_cokernel(t.at(r), q).first;
        FgAbGroup spliced = to_fgab(direct_sum(cok, ker));
        rep.add(deg_label(mod_sym(q), r) + " = coker(xq, T[" + std::to_string(r + 1) +
                    "]) + ker(xq, T[" + std::to_string(r) + "])",
                m.at(r) == spliced, mismatch(m.at(r).to_string(), spliced.to_string()));
    }
    return rep;
}

OrderBoundReport order_bound_check(const ModQTheory& m) {
    OrderBoundReport rep;
    rep.q = m.q;
    const Int bound = mod_q_bound(m.q);
    for (int r = 0; r < m.base.period; ++r) {
        OrderBoundReport::Degree d;
        d.residue = r;
        d.exponent = m.degrees[static_cast<std::size_t>(r)].group.exponent();
        d.pass = divides(d.exponent, bound);
        rep.pass = rep.pass && d.pass;
        rep.degrees.push_back(std::move(d));
    }
    return rep;
}

}  // namespace kkcoeff
