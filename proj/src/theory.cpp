#include "kkcoeff/theory.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kkcoeff {

namespace {

int residue(long long n, int period) {
    long long r = n % period;
    if (r < 0) r += period;
    return static_cast<int>(r);
}

}  // namespace

const FgAbGroup& GradedTheory::at(long long n) const {
    return groups[residue(n, period)];
}

std::string GradedTheory::to_string() const {
    std::ostringstream out;
    out << name << " (period " << period << ")";
    if (equivariance_label) out << " [G=" << *equivariance_label << "]";
    for (int r = 0; r < period; ++r) out << "  [" << r << "] " << groups[r].to_string();
    return out.str();
}

GradedTheory make_theory(std::string name, int period, std::vector<FgAbGroup> groups,
                         std::optional<std::string> equivariance) {
    if (period != 2 && period != 8)
        throw std::invalid_argument("make_theory: period must be 2 or 8");
    if (groups.size() != static_cast<std::size_t>(period))
        throw std::invalid_argument("make_theory: need one group per residue class");
    return GradedTheory{std::move(name), period, std::move(groups), std::move(equivariance)};
}

GradedTheory zero_theory(std::string name, int period) {
    return make_theory(std::move(name), period,
                       std::vector<FgAbGroup>(period, FgAbGroup::zero()));
}

GradedTheory shift(const GradedTheory& t, long long k) {
    std::vector<FgAbGroup> groups;
    for (int r = 0; r < t.period; ++r) groups.push_back(t.at(r + k));
    std::ostringstream name;
    name << t.name << "[" << (k >= 0 ? "+" : "") << k << "]";
    return make_theory(name.str(), t.period, std::move(groups), t.equivariance_label);
}

const GroupHom& DegreewiseMap::at(long long n) const {
    return homs[residue(n, source.period)];
}

DegreewiseMap make_degreewise_map(GradedTheory source, GradedTheory target,
                                  std::vector<GroupHom> homs) {
    if (source.period != target.period)
        throw std::invalid_argument("make_degreewise_map: periods differ");
    if (homs.size() != static_cast<std::size_t>(source.period))
        throw std::invalid_argument("make_degreewise_map: need one hom per residue class");
    for (int r = 0; r < source.period; ++r) {
        if (!(homs[r].source == source.groups[r]) || !(homs[r].target == target.groups[r]))
            throw std::invalid_argument("make_degreewise_map: hom at degree " +
                                        std::to_string(r) + " has mismatched endpoints");
    }
    return DegreewiseMap{std::move(source), std::move(target), std::move(homs)};
}

DegreewiseMap multiplication_self_map(const GradedTheory& t, const Int& m) {
    std::vector<GroupHom> homs;
    for (int r = 0; r < t.period; ++r) homs.push_back(multiplication_hom(t.groups[r], m));
    return make_degreewise_map(t, t, std::move(homs));
}

MappingCone mapping_cone(const DegreewiseMap& f) {
    const int p = f.source.period;
    MappingCone mc;
    std::vector<FgAbGroup> cone_groups(p);
    for (int r = 0; r < p; ++r) {
        Quotient cok = cokernel(f.at(r + 1));
        Subgroup ker = kernel(f.at(r));
        ExtensionResolution res = solve_extension(ker.type, cok.type);

        // Split-model coordinates: cokernel generators first, then kernel
        // generators, re-canonicalized jointly.
        std::vector<Int> orders = cok.type.cyclic_orders();
        std::vector<Int> kord = ker.type.cyclic_orders();
        orders.insert(orders.end(), kord.begin(), kord.end());
        Canonicalized canon = canonicalize_presentation(orders);
        if (!(canon.group == res.group))
            throw std::logic_error("mapping_cone: split model coordinates disagree");

        std::vector<std::size_t> ccols, krows;
        for (std::size_t i = 0; i < cok.type.gens(); ++i) ccols.push_back(i);
        for (std::size_t i = 0; i < ker.type.gens(); ++i) krows.push_back(cok.type.gens() + i);
        GroupHom include_cok = make_hom(cok.type, canon.group, canon.to_canon.select_cols(ccols));
        GroupHom project_ker = make_hom(canon.group, ker.type, canon.from_canon.select_rows(krows));
        GroupHom embed_ker = make_hom(ker.type, f.source.groups[r], ker.embedding);

        GroupHom project_cok = make_hom(f.target.groups[residue(r + 1, p)], cok.type,
                                        cok.projection);
        mc.delta[r] = compose(include_cok, project_cok);
        mc.proj[r] = compose(embed_ker, project_ker);
        mc.resolutions[r] = res;
        cone_groups[r] = res.group;
    }
    mc.cone = make_theory("cone(" + f.source.name + "->" + f.target.name + ")", p,
                          std::move(cone_groups));
    return mc;
}

LongSequence puppe_sequence(const DegreewiseMap& f, const MappingCone& mc) {
    const int p = f.source.period;
    const long long top = 3LL * p - 1;
    LongSequence seq;
    auto label = [](const std::string& name, long long deg) {
        return name + "[" + std::to_string(deg) + "]";
    };
    for (long long k = top; k >= 0; --k) {
        seq.groups.push_back(f.source.at(k + 1));
        seq.labels.push_back(label(f.source.name, k + 1));
        seq.maps.push_back(f.at(k + 1));
        seq.groups.push_back(f.target.at(k + 1));
        seq.labels.push_back(label(f.target.name, k + 1));
        seq.maps.push_back(mc.delta.at(residue(k, p)));
        seq.groups.push_back(mc.cone.at(k));
        seq.labels.push_back(label(mc.cone.name, k));
        seq.maps.push_back(mc.proj.at(residue(k, p)));
    }
    seq.groups.push_back(f.source.at(0));
    seq.labels.push_back(label(f.source.name, 0));
    seq.maps.push_back(f.at(0));
    seq.groups.push_back(f.target.at(0));
    seq.labels.push_back(label(f.target.name, 0));
    return seq;
}

GradedTheory tensor_cone_q(const GradedTheory& t, const Int& q) {
    if (q < 2) throw std::invalid_argument("tensor_cone_q: q must be >= 2");
    GradedTheory suspended = shift(t, -1);
    MappingCone mc = mapping_cone(multiplication_self_map(suspended, q));
    GradedTheory out = mc.cone;
    std::ostringstream name;
    name << t.name << "(x)C_" << q;
    out.name = name.str();
    return out;
}

namespace {

GradedTheory cuntz_theory(const Int& n_minus_1) {
    std::ostringstream name;
    name << "O_" << (n_minus_1 + 1);
    return make_theory(name.str(), 2,
                       {FgAbGroup::cyclic(n_minus_1), FgAbGroup::zero()});
}

CatalogEntry cuntz_entry(const Int& n) {
    GradedTheory t = cuntz_theory(n - 1);
    return CatalogEntry{t.name, t, "Cuntz algebra: K_0 = Z/(N-1), K_1 = 0"};
}

CatalogEntry cone_entry(const Int& n) {
    GradedTheory susp = make_theory("suspension", 2, {FgAbGroup::zero(), FgAbGroup::free_group(1)});
    MappingCone mc = mapping_cone(multiplication_self_map(susp, n));
    std::ostringstream name;
    name << "C_q(" << n << ")";
    GradedTheory t = mc.cone;
    t.name = name.str();
    return CatalogEntry{name.str(), t,
                        "mapping cone of the degree-" + n.str() +
                            " power map on the suspension; K_0(C_q) = Z/q"};
}

// Parses a nonnegative decimal integer; nullopt on anything else.
std::optional<Int> parse_int(const std::string& s) {
    if (s.empty() || s.size() > 40) return std::nullopt;
    for (char c : s)
        if (c < '0' || c > '9') return std::nullopt;
    return Int(s);
}

}  // namespace

std::vector<CatalogEntry> builtin_catalog() {
    std::vector<CatalogEntry> cat;
    cat.push_back({"point",
                   make_theory("point", 2, {FgAbGroup::free_group(1), FgAbGroup::zero()}),
                   "K-theory of the scalars"});
    cat.push_back({"suspension",
                   make_theory("suspension", 2, {FgAbGroup::zero(), FgAbGroup::free_group(1)}),
                   "functions on the circle vanishing at a point; the degree-q power map "
                   "acts as multiplication by q in degree 1"});
    cat.push_back({"torus2",
                   make_theory("torus2", 2, {FgAbGroup::free_group(2), FgAbGroup::free_group(2)}),
                   "two-torus: rank two in each degree (Kunneth at the free level)"});
    cat.push_back({"mixed",
                   make_theory("mixed", 2,
                               {FgAbGroup{{12}, 1}, FgAbGroup::cyclic(Int(2))}),
                   "synthetic entry exercising free and torsion parts together"});
    cat.push_back(cuntz_entry(Int(2)));
    cat.push_back(cuntz_entry(Int(3)));
    cat.push_back(cuntz_entry(Int(4)));
    return cat;
}

std::optional<CatalogEntry> find_entry(const std::vector<CatalogEntry>& catalog,
                                       const std::string& name) {
    for (const CatalogEntry& e : catalog)
        if (e.name == name) return e;
    if (name.rfind("O_", 0) == 0) {
        if (auto n = parse_int(name.substr(2)); n && *n >= 2) return cuntz_entry(*n);
    }
    if (name.rfind("C_q(", 0) == 0 && name.back() == ')') {
        std::string inner = name.substr(4, name.size() - 5);
        if (auto n = parse_int(inner); n && *n >= 2) return cone_entry(*n);
    }
    return std::nullopt;
}

namespace {

[[noreturn]] void catalog_fail(const std::string& entry, const std::string& what) {
    throw std::runtime_error("catalog: entry '" + entry + "': " + what);
}

FgAbGroup parse_group(const std::string& entry, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rank") || !j.contains("torsion"))
        catalog_fail(entry, "each degree needs {\"rank\": int, \"torsion\": [int,...]}");
    if (!j["rank"].is_number_integer() || j["rank"].get<long long>() < 0)
        catalog_fail(entry, "rank must be a nonnegative integer");
    if (!j["torsion"].is_array()) catalog_fail(entry, "torsion must be an array");
    std::vector<Int> torsion;
    for (const auto& d : j["torsion"]) {
        if (!d.is_number_integer() || d.get<long long>() < 2)
            catalog_fail(entry, "torsion entries must be integers >= 2");
        torsion.push_back(Int(d.get<long long>()));
    }
    for (std::size_t i = 0; i + 1 < torsion.size(); ++i)
        if (torsion[i + 1] % torsion[i] != 0)
            catalog_fail(entry, "torsion list violates the divisibility chain");
    return FgAbGroup{torsion, static_cast<std::size_t>(j["rank"].get<long long>())};
}

}  // namespace

std::vector<CatalogEntry> load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("catalog: cannot open file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("catalog: parse error: ") + e.what());
    }
    if (!doc.is_array()) throw std::runtime_error("catalog: top level must be an array");

    std::vector<CatalogEntry> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& j = doc[i];
        std::string entry = "#" + std::to_string(i);
        if (j.is_object() && j.contains("name") && j["name"].is_string())
            entry = j["name"].get<std::string>();
        if (!j.is_object() || !j.contains("name") || !j["name"].is_string())
            catalog_fail(entry, "missing string field 'name'");
        if (!j.contains("period") || !j["period"].is_number_integer())
            catalog_fail(entry, "missing integer field 'period'");
        int period = j["period"].get<int>();
        if (period != 2 && period != 8) catalog_fail(entry, "period must be 2 or 8");
        if (!j.contains("groups") || !j["groups"].is_object())
            catalog_fail(entry, "missing object field 'groups'");
        std::vector<FgAbGroup> groups;
        for (int r = 0; r < period; ++r) {
            std::string key = std::to_string(r);
            if (!j["groups"].contains(key))
                catalog_fail(entry, "missing degree class '" + key + "'");
            groups.push_back(parse_group(entry, j["groups"][key]));
        }
        if (j["groups"].size() != static_cast<std::size_t>(period))
            catalog_fail(entry, "groups has extra degree keys");
        if (!j.contains("provenance") || !j["provenance"].is_string())
            catalog_fail(entry, "missing string field 'provenance'");
        std::optional<std::string> equivariance;
        if (j.contains("equivariance") && !j["equivariance"].is_null()) {
            if (!j["equivariance"].is_string())
                catalog_fail(entry, "equivariance must be a string or null");
            equivariance = j["equivariance"].get<std::string>();
        }
        out.push_back({entry,
                       make_theory(entry, period, std::move(groups), std::move(equivariance)),
                       j["provenance"].get<std::string>()});
    }
    return merge_catalogs({}, out);  // reuses the duplicate check
}

std::vector<CatalogEntry> merge_catalogs(std::vector<CatalogEntry> base,
                                         const std::vector<CatalogEntry>& extra) {
    for (const CatalogEntry& e : extra) {
        for (const CatalogEntry& b : base)
            if (b.name == e.name)
                throw std::runtime_error("catalog: duplicate entry name '" + e.name + "'");
        base.push_back(e);
    }
    return base;
}

}  // namespace kkcoeff
