#include "kkcoeff/transform.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kkcoeff {

const char* to_string(TransformRole r) {
    return r == TransformRole::assembly ? "mu_A" : "generic";
}

namespace {

[[noreturn]] void sample_fail(const std::string& where, const std::string& what) {
    throw std::runtime_error("sample: " + where + ": " + what);
}

FgAbGroup parse_group(const std::string& where, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rank") || !j.contains("torsion"))
        sample_fail(where, "each degree needs {\"rank\": int, \"torsion\": [int,...]}");
    if (!j["rank"].is_number_integer() || j["rank"].get<long long>() < 0)
        sample_fail(where, "rank must be a nonnegative integer");
    if (!j["torsion"].is_array()) sample_fail(where, "torsion must be an array");
    std::vector<Int> torsion;
    for (const auto& d : j["torsion"]) {
        if (!d.is_number_integer() || d.get<long long>() < 2)
            sample_fail(where, "torsion entries must be integers >= 2");
        torsion.push_back(Int(d.get<long long>()));
    }
    for (std::size_t i = 0; i + 1 < torsion.size(); ++i)
        if (torsion[i + 1] % torsion[i] != 0)
            sample_fail(where, "torsion list violates the divisibility chain");
    return FgAbGroup{torsion, static_cast<std::size_t>(j["rank"].get<long long>())};
}

GradedTheory parse_theory(const std::string& where, const nlohmann::json& j,
                          const std::string& fallback_name) {
    if (!j.is_object()) sample_fail(where, "theory must be an object");
    if (!j.contains("period") || !j["period"].is_number_integer())
        sample_fail(where, "missing integer field 'period'");
    int period = j["period"].get<int>();
    if (period != 2 && period != 8) sample_fail(where, "period must be 2 or 8");
    if (!j.contains("groups") || !j["groups"].is_object())
        sample_fail(where, "missing object field 'groups'");
    std::vector<FgAbGroup> groups;
    for (int r = 0; r < period; ++r) {
        std::string key = std::to_string(r);
        if (!j["groups"].contains(key)) sample_fail(where, "missing degree class '" + key + "'");
        groups.push_back(parse_group(where + ": degree " + key, j["groups"][key]));
    }
    if (j["groups"].size() != static_cast<std::size_t>(period))
        sample_fail(where, "groups has extra degree keys");
    std::string name = fallback_name;
    if (j.contains("name")) {
        if (!j["name"].is_string()) sample_fail(where, "name must be a string");
        name = j["name"].get<std::string>();
    }
    return make_theory(std::move(name), period, std::move(groups));
}

IntMatrix parse_matrix(const std::string& where, const nlohmann::json& j, std::size_t rows,
                       std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        sample_fail(where, "matrix needs " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            sample_fail(where, "row " + std::to_string(r) + " needs " + std::to_string(cols) +
                                   " integer entries");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_number_integer())
                sample_fail(where, "matrix entries must be integers");
            m.at(r, c) = Int(j[r][c].get<long long>());
        }
    }
    return m;
}

}  // namespace

TransformationSample load_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("sample: cannot open file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("sample: parse error: ") + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("sample: top level must be an object");
    if (!doc.contains("name") || !doc["name"].is_string())
        throw std::runtime_error("sample: missing string field 'name'");
    TransformationSample out;
    out.name = doc["name"].get<std::string>();
    if (!doc.contains("role") || !doc["role"].is_string())
        sample_fail(out.name, "missing string field 'role'");
    std::string role = doc["role"].get<std::string>();
    if (role == "generic")
        out.role = TransformRole::generic;
    else if (role == "assembly")
        out.role = TransformRole::assembly;
    else
        sample_fail(out.name, "role must be \"generic\" or \"assembly\"");
    if (!doc.contains("cases") || !doc["cases"].is_array())
        sample_fail(out.name, "missing array field 'cases'");

    for (std::size_t ci = 0; ci < doc["cases"].size(); ++ci) {
        const auto& cj = doc["cases"][ci];
        std::string where = "case #" + std::to_string(ci);
        if (cj.is_object() && cj.contains("algebra") && cj["algebra"].is_string())
            where = "case '" + cj["algebra"].get<std::string>() + "'";
        if (!cj.is_object() || !cj.contains("algebra") || !cj["algebra"].is_string())
            sample_fail(where, "missing string field 'algebra'");
        if (!cj.contains("source") || !cj.contains("target") || !cj.contains("maps"))
            sample_fail(where, "needs 'source', 'target' and 'maps'");
        GradedTheory source = parse_theory(where + ": source", cj["source"], "source");
        GradedTheory target = parse_theory(where + ": target", cj["target"], "target");
        if (source.period != target.period) sample_fail(where, "source and target periods differ");
        if (!cj["maps"].is_object()) sample_fail(where, "'maps' must be an object");
        if (cj["maps"].size() != static_cast<std::size_t>(source.period))
            sample_fail(where, "'maps' needs exactly one matrix per degree class");
        std::vector<GroupHom> homs;
        for (int r = 0; r < source.period; ++r) {
            std::string key = std::to_string(r);
            if (!cj["maps"].contains(key)) sample_fail(where, "missing map for degree class '" + key + "'");
            std::string mwhere = where + ": map at degree " + key;
            IntMatrix m = parse_matrix(mwhere, cj["maps"][key], target.groups[r].gens(),
                                       source.groups[r].gens());
            // name the offending generator before handing to make_hom
            for (std::size_t g = 0; g < source.groups[r].gens(); ++g) {
                Int d = source.groups[r].gen_order(g);
                if (d == 0) continue;
                std::vector<Int> col(m.rows());
                bool ok = true;
                for (std::size_t rr = 0; rr < m.rows(); ++rr) {
                    col[rr] = d * m.at(rr, g);
                    Int o = target.groups[r].gen_order(rr);
                    if (o == 0 ? col[rr] != 0 : col[rr] % o != 0) ok = false;
                }
                if (!ok)
                    sample_fail(mwhere, "generator " + std::to_string(g) +
                                            " violates well-definedness in the target");
            }
            homs.push_back(make_hom(source.groups[r], target.groups[r], std::move(m)));
        }
        out.cases.push_back(
            {cj["algebra"].get<std::string>(),
             make_degreewise_map(std::move(source), std::move(target), std::move(homs))});
    }
    return out;
}

namespace {

IntMatrix free_block(const GroupHom& h) {
    IntMatrix b(h.target.rank, h.source.rank);
    for (std::size_t r = 0; r < h.target.rank; ++r)
        for (std::size_t c = 0; c < h.source.rank; ++c)
            b.at(r, c) = h.matrix.at(h.target.torsion.size() + r, h.source.torsion.size() + c);
    return b;
}

GroupHom torsion_restriction(const GroupHom& h) {
    FgAbGroup s{h.source.torsion, 0};
    FgAbGroup t{h.target.torsion, 0};
    IntMatrix b(t.gens(), s.gens());
    for (std::size_t r = 0; r < t.gens(); ++r)
        for (std::size_t c = 0; c < s.gens(); ++c) b.at(r, c) = h.matrix.at(r, c);
    return make_hom(std::move(s), std::move(t), std::move(b));
}

bool hom_bijective(const GroupHom& h) {
    return kernel(h).type.is_zero() && cokernel(h).type.is_zero();
}

CaseVerdicts case_rational(const TransformCase& c) {
    CaseVerdicts v;
    v.algebra = c.algebra;
    for (int r = 0; r < c.map.source.period; ++r) {
        const GroupHom& h = c.map.at(r);
        std::size_t ra = h.source.rank, rb = h.target.rank;
        bool iso;
        std::ostringstream os;
        os << "Q-dims " << ra << " -> " << rb;
        if (ra != rb) {
            iso = false;
        } else if (ra == 0) {
            iso = true;
        } else {
            Int dd = det(free_block(h));
            os << ", det " << dd;
            iso = dd != 0;
        }
        v.all_iso = v.all_iso && iso;
        v.degrees.push_back({r, iso, os.str()});
    }
    return v;
}

CaseVerdicts case_torsion(const TransformCase& c) {
    CaseVerdicts v;
    v.algebra = c.algebra;
    for (int r = 0; r < c.map.source.period; ++r) {
        const GroupHom& h = c.map.at(r);
        const GroupHom& hprev = c.map.at(r - 1);
        std::ostringstream os;
        bool qz_iso;
        if (h.source.rank != h.target.rank) {
            qz_iso = false;
            os << "(Q/Z)-ranks " << h.source.rank << " -> " << h.target.rank;
        } else if (h.source.rank == 0) {
            qz_iso = true;
            os << "no divisible part";
        } else {
            Int dd = det(free_block(h));
            qz_iso = dd == 1 || dd == -1;
            os << "(Q/Z)^" << h.source.rank << " det " << dd;
        }
        bool fin_iso = hom_bijective(torsion_restriction(hprev));
        os << "; finite part " << (fin_iso ? "bijective" : "not bijective");
        bool iso = qz_iso && fin_iso;
        v.all_iso = v.all_iso && iso;
        v.degrees.push_back({r, iso, os.str()});
    }
    return v;
}

InducedModQ case_mod_q(const TransformCase& c, const Int& q) {
    InducedModQ out;
    out.algebra = c.algebra;
    out.source_model = mod_q(c.map.source, q);
    out.target_model = mod_q(c.map.target, q);
    const int period = c.map.source.period;
    for (int r = 0; r < period; ++r) {
        const ModQTheory::Degree& sd = out.source_model.degrees[static_cast<std::size_t>(r)];
        const ModQTheory::Degree& td = out.target_model.degrees[static_cast<std::size_t>(r)];
        const GroupHom& h = c.map.at(r);
        const GroupHom& hprev = c.map.at(r - 1);
        IntMatrix nat(td.natural_orders.size(), sd.natural_orders.size());
        // cokernel parts: the map descends to the quotients by q
        for (std::size_t k = 0; k < td.cok_count; ++k)
            for (std::size_t i = 0; i < sd.cok_count; ++i) nat.at(k, i) = h.matrix.at(k, i);
        // Tor parts: restrict the previous degree's map to q-torsion and
        // re-express in the torsion-layer generators
        const FgAbGroup& sprev = c.map.source.at(r - 1);
        const FgAbGroup& tprev = c.map.target.at(r - 1);
        for (std::size_t j = 0; j < sprev.torsion.size(); ++j) {
            Int dj = sprev.torsion[j];
            Int scale = dj / gcd(dj, q);
            for (std::size_t k = 0; k < tprev.torsion.size(); ++k) {
                Int dk = tprev.torsion[k];
                Int layer = dk / gcd(dk, q);
                Int y = mod_floor(scale * hprev.matrix.at(k, j), dk);
                nat.at(td.cok_count + k, sd.cok_count + j) = y / layer;
            }
        }
        GroupHom ind = make_hom(sd.group, td.group, td.to_canon * nat * sd.from_canon);
        bool iso = hom_bijective(ind);
        std::ostringstream os;
        os << sd.group.to_string() << " -> " << td.group.to_string();
        out.degrees.push_back({r, iso, os.str()});
        out.all_iso = out.all_iso && iso;
        out.homs.push_back(std::move(ind));
    }
    return out;
}

void add_prime_factors(std::set<Int>& primes, const Int& n) {
    if (n <= 1) return;
    for (const auto& pe : factorize(n)) primes.insert(pe.first);
}

}  // namespace

std::vector<CaseVerdicts> induce_rational(const TransformationSample& t) {
    std::vector<CaseVerdicts> out;
    for (const TransformCase& c : t.cases) out.push_back(case_rational(c));
    return out;
}

std::vector<CaseVerdicts> induce_torsion(const TransformationSample& t) {
    std::vector<CaseVerdicts> out;
    for (const TransformCase& c : t.cases) out.push_back(case_torsion(c));
    return out;
}

std::vector<InducedModQ> induce_mod_q(const TransformationSample& t, const Int& q) {
    if (q < 2) throw std::invalid_argument("induce_mod_q: q must be at least 2");
    std::vector<InducedModQ> out;
    for (const TransformCase& c : t.cases) out.push_back(case_mod_q(c, q));
    return out;
}

std::vector<Int> relevant_primes(const TransformationSample& t) {
    std::set<Int> primes;
    for (const TransformCase& c : t.cases)
        for (int r = 0; r < c.map.source.period; ++r) {
            const GroupHom& h = c.map.at(r);
            for (const Int& d : h.source.torsion) add_prime_factors(primes, d);
            for (const Int& d : h.target.torsion) add_prime_factors(primes, d);
            for (const Int& d : smith_normal_form(h.matrix).divisors)
                add_prime_factors(primes, d);
            for (const Int& d : smith_normal_form(free_block(h)).divisors)
                add_prime_factors(primes, d);
        }
    return std::vector<Int>(primes.begin(), primes.end());
}

EquivalenceReport equivalence_report(const TransformationSample& t) {
    EquivalenceReport rep;
    rep.prime_set = relevant_primes(t);
    for (const TransformCase& c : t.cases) {
        EquivalenceReport::Algebra a;
        a.algebra = c.algebra;
        a.integral_iso = true;
        for (int r = 0; r < c.map.source.period; ++r)
            a.integral_iso = a.integral_iso && hom_bijective(c.map.at(r));
        a.rational_iso = case_rational(c).all_iso;
        a.torsion_iso = case_torsion(c).all_iso;
        bool all_p = true;
        for (const Int& p : rep.prime_set) {
            bool iso = case_mod_q(c, p).all_iso;
            all_p = all_p && iso;
            a.mod_p.emplace_back(p, iso);
        }
        a.bicond_torsion = a.integral_iso == (a.rational_iso && a.torsion_iso);
        a.bicond_primes = a.integral_iso == (a.rational_iso && all_p);
        a.bicond_parts = (a.rational_iso && a.torsion_iso) == (a.rational_iso && all_p);
        rep.all_biconditionals_hold =
            rep.all_biconditionals_hold && a.bicond_torsion && a.bicond_primes && a.bicond_parts;
        rep.algebras.push_back(std::move(a));
    }
    return rep;
}

}  // namespace kkcoeff
