#include "kkcoeff/fgab.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kkcoeff {

FgAbGroup FgAbGroup::free_group(std::size_t r) {
    FgAbGroup g;
    g.rank = r;
    return g;
}

FgAbGroup FgAbGroup::cyclic(const Int& d) {
    if (d < 0) throw std::invalid_argument("cyclic: negative order");
    FgAbGroup g;
    if (d == 0) g.rank = 1;
    else if (d > 1) g.torsion.push_back(d);
    return g;
}

Int FgAbGroup::order() const {
    if (rank > 0) throw std::domain_error("order: group is infinite");
    Int n = 1;
    for (const Int& d : torsion) n *= d;
    return n;
}

Int FgAbGroup::exponent() const {
    if (rank > 0) throw std::domain_error("exponent: group is infinite");
    return torsion.empty() ? Int(1) : torsion.back();
}

Int FgAbGroup::gen_order(std::size_t i) const {
    return i < torsion.size() ? torsion[i] : Int(0);
}

std::vector<Int> FgAbGroup::cyclic_orders() const {
    std::vector<Int> out = torsion;
    out.resize(gens(), Int(0));
    return out;
}

IntMatrix FgAbGroup::relation_lattice() const {
    IntMatrix r(gens(), torsion.size());
    for (std::size_t j = 0; j < torsion.size(); ++j) r.at(j, j) = torsion[j];
    return r;
}

std::string FgAbGroup::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Int& d : torsion) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    if (rank == 1) os << (first ? "Z" : " + Z");
    else if (rank > 1) os << (first ? "" : " + ") << "Z^" << rank;
    return os.str();
}

FgAbGroup from_cyclic_orders(std::vector<Int> orders) {
    FgAbGroup g;
    std::vector<Int> t;
    for (Int& d : orders) {
        if (d < 0) throw std::invalid_argument("from_cyclic_orders: negative order");
        if (d == 0) ++g.rank;
        else if (d > 1) t.push_back(std::move(d));
    }
    // gcd/lcm sweeps until every pair is comparable under divisibility.
    bool dirty = true;
    while (dirty) {
        dirty = false;
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j) {
                if (t[i] % t[j] == 0 || t[j] % t[i] == 0) continue;
                Int g1 = gcd(t[i], t[j]);
                Int l1 = t[i] / g1 * t[j];
                t[i] = g1;
                t[j] = l1;
                dirty = true;
            }
    }
    std::erase_if(t, [](const Int& d) { return d == 1; });
    std::sort(t.begin(), t.end());
    g.torsion = std::move(t);
    return g;
}

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Int> orders = a.torsion;
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    FgAbGroup g = from_cyclic_orders(std::move(orders));
    g.rank = a.rank + b.rank;
    return g;
}

FgAbGroup torsion_subgroup_of(const FgAbGroup& g) {
    FgAbGroup t;
    t.torsion = g.torsion;
    return t;
}

Canonicalized canonicalize_presentation(const std::vector<Int>& natural_orders) {
    const std::size_t n = natural_orders.size();
    SmithResult s = smith_normal_form(IntMatrix::diagonal(natural_orders));
    // Z^n / <orders> = Z^n / D under y = U x; keep coordinates with d != 1.
    std::vector<std::size_t> keep_torsion, keep_free;
    std::vector<Int> tors;
    for (std::size_t i = 0; i < n; ++i) {
        const Int& d = s.d.at(i, i);
        if (d == 1) continue;
        if (d == 0) keep_free.push_back(i);
        else {
            keep_torsion.push_back(i);
            tors.push_back(d);
        }
    }
    std::vector<std::size_t> keep = keep_torsion;
    keep.insert(keep.end(), keep_free.begin(), keep_free.end());

    Canonicalized c;
    c.group.torsion = std::move(tors);
    c.group.rank = keep_free.size();
    c.to_canon = s.u.select_rows(keep);
    c.from_canon = s.u_inv.select_cols(keep);
    return c;
}

namespace {

void normalize_matrix(const FgAbGroup& target, IntMatrix& m) {
    for (std::size_t i = 0; i < target.torsion.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m.at(i, j) = mod_floor(m.at(i, j), target.torsion[i]);
}

}  // namespace

bool well_defined(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& matrix) {
    if (matrix.rows() != target.gens() || matrix.cols() != source.gens()) return false;
    for (std::size_t j = 0; j < source.torsion.size(); ++j) {
        const Int& d = source.torsion[j];
        for (std::size_t i = 0; i < target.gens(); ++i) {
            const Int& m = matrix.at(i, j);
            if (i < target.torsion.size()) {
                if ((d * m) % target.torsion[i] != 0) return false;
            } else if (m != 0) {
                return false;  // torsion cannot map to a free coordinate
            }
        }
    }
    return true;
}

GroupHom make_hom(const FgAbGroup& source, const FgAbGroup& target, IntMatrix matrix) {
    if (matrix.rows() != target.gens() || matrix.cols() != source.gens())
        throw std::invalid_argument("make_hom: matrix shape does not match generator counts");
    if (!well_defined(source, target, matrix)) {
        for (std::size_t j = 0; j < source.torsion.size(); ++j)
            for (std::size_t i = 0; i < target.gens(); ++i) {
                bool bad = i < target.torsion.size()
                               ? (source.torsion[j] * matrix.at(i, j)) % target.torsion[i] != 0
                               : matrix.at(i, j) != 0;
                if (bad) {
                    std::ostringstream os;
                    os << "make_hom: image of generator " << j << " (order " << source.torsion[j]
                       << ") is not annihilated in target coordinate " << i;
                    throw std::invalid_argument(os.str());
                }
            }
        throw std::invalid_argument("make_hom: not well defined");
    }
    normalize_matrix(target, matrix);
    return GroupHom{source, target, std::move(matrix)};
}

GroupHom identity_hom(const FgAbGroup& g) {
    return GroupHom{g, g, IntMatrix::identity(g.gens())};
}

GroupHom zero_hom(const FgAbGroup& source, const FgAbGroup& target) {
    return GroupHom{source, target, IntMatrix(target.gens(), source.gens())};
}

GroupHom multiplication_hom(const FgAbGroup& g, const Int& q) {
    IntMatrix m(g.gens(), g.gens());
    for (std::size_t i = 0; i < g.gens(); ++i) m.at(i, i) = q;
    normalize_matrix(g, m);
    return GroupHom{g, g, std::move(m)};
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
    if (!(f.target == g.source)) throw std::invalid_argument("compose: middle groups differ");
    return make_hom(f.source, g.target, g.matrix * f.matrix);
}

bool hom_equal(const GroupHom& f, const GroupHom& g) {
    if (!(f.source == g.source) || !(f.target == g.target)) return false;
    IntMatrix a = f.matrix, b = g.matrix;
    normalize_matrix(f.target, a);
    normalize_matrix(g.target, b);
    return a == b;
}

std::vector<Int> apply_hom(const GroupHom& f, const std::vector<Int>& x) {
    std::vector<Int> y = f.matrix.apply(x);
    for (std::size_t i = 0; i < f.target.torsion.size(); ++i)
        y[i] = mod_floor(y[i], f.target.torsion[i]);
    return y;
}

Subgroup lattice_quotient(const IntMatrix& gen1, const IntMatrix& gen2) {
    if (gen1.rows() != gen2.rows())
        throw std::invalid_argument("lattice_quotient: ambient dimension mismatch");
    // Present L1/L2 on the columns of gen1: relations are the syzygies of
    // gen1 together with one expression of each gen2 column in terms of gen1.
    IntMatrix syz = kernel_lattice(gen1);
    auto expr = solve_linear(gen1, gen2);
    if (!expr) throw std::invalid_argument("lattice_quotient: L2 not contained in L1");
    Canonicalized c = [&] {
        IntMatrix pres = hstack(syz, *expr);
        SmithResult s = smith_normal_form(pres);
        // Same normalization as canonicalize_presentation, on a non-diagonal
        // presentation: Z^t / pres = Z^t / D under y = U x.
        std::vector<std::size_t> keep_torsion, keep_free;
        std::vector<Int> tors;
        for (std::size_t i = 0; i < gen1.cols(); ++i) {
            Int d = i < std::min(s.d.rows(), s.d.cols()) ? s.d.at(i, i) : Int(0);
            if (d == 1) continue;
            if (d == 0) keep_free.push_back(i);
            else {
                keep_torsion.push_back(i);
                tors.push_back(d);
            }
        }
        std::vector<std::size_t> keep = keep_torsion;
        keep.insert(keep.end(), keep_free.begin(), keep_free.end());
        Canonicalized out;
        out.group.torsion = std::move(tors);
        out.group.rank = keep_free.size();
        out.to_canon = s.u.select_rows(keep);
        out.from_canon = s.u_inv.select_cols(keep);
        return out;
    }();
    Subgroup s;
    s.type = c.group;
    s.embedding = gen1 * c.from_canon;
    return s;
}

namespace {

// Lattice in Z^{source.gens()} of all preimages of 0: x with f(x) = 0 as a
// group element.  Contains the source relation lattice.
IntMatrix kernel_preimage_lattice(const GroupHom& f) {
    IntMatrix rel_t = f.target.relation_lattice();
    IntMatrix block = hstack(f.matrix, rel_t);
    IntMatrix k = kernel_lattice(block);
    IntMatrix proj = k.submatrix_rows(0, f.source.gens());
    return hstack(proj, f.source.relation_lattice());
}

}  // namespace

Subgroup kernel(const GroupHom& f) {
    IntMatrix l = kernel_preimage_lattice(f);
    Subgroup s = lattice_quotient(l, f.source.relation_lattice());
    normalize_matrix(f.source, s.embedding);
    return s;
}

Subgroup image(const GroupHom& f) {
    IntMatrix rel = f.target.relation_lattice();
    Subgroup s = lattice_quotient(hstack(f.matrix, rel), rel);
    normalize_matrix(f.target, s.embedding);
    return s;
}

Quotient cokernel(const GroupHom& f) {
    // Z^{t} / (im f + relations): canonicalize the combined presentation.
    IntMatrix pres = hstack(f.matrix, f.target.relation_lattice());
    SmithResult s = smith_normal_form(pres);
    std::vector<std::size_t> keep_torsion, keep_free;
    std::vector<Int> tors;
    const std::size_t n = f.target.gens();
    for (std::size_t i = 0; i < n; ++i) {
        Int d = i < std::min(s.d.rows(), s.d.cols()) ? s.d.at(i, i) : Int(0);
        if (d == 1) continue;
        if (d == 0) keep_free.push_back(i);
        else {
            keep_torsion.push_back(i);
            tors.push_back(d);
        }
    }
    std::vector<std::size_t> keep = keep_torsion;
    keep.insert(keep.end(), keep_free.begin(), keep_free.end());
    Quotient q;
    q.type.torsion = std::move(tors);
    q.type.rank = keep_free.size();
    q.projection = s.u.select_rows(keep);
    return q;
}

GroupHom subgroup_inclusion(const FgAbGroup& ambient, const Subgroup& s) {
    return make_hom(s.type, ambient, s.embedding);
}

GroupHom corestrict(const GroupHom& f, const FgAbGroup& ambient, const Subgroup& s) {
    if (!(f.target == ambient)) throw std::invalid_argument("corestrict: ambient mismatch");
    // Express each generator image inside the subgroup: solve
    // embedding * y = f(e_j) modulo the ambient relations.
    IntMatrix lhs = hstack(s.embedding, ambient.relation_lattice());
    auto sol = solve_linear(lhs, f.matrix);
    if (!sol) throw std::invalid_argument("corestrict: image not contained in subgroup");
    return make_hom(f.source, s.type, sol->submatrix_rows(0, s.type.gens()));
}

FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Int> orders;
    std::vector<Int> ca = a.cyclic_orders(), cb = b.cyclic_orders();
    for (const Int& x : ca)
        for (const Int& y : cb) {
            if (x == 0 && y == 0) orders.push_back(0);
            else if (x == 0) orders.push_back(y);
            else if (y == 0) orders.push_back(x);
            else orders.push_back(gcd(x, y));
        }
    return from_cyclic_orders(std::move(orders));
}

FgAbGroup tor(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Int> orders;
    for (const Int& x : a.torsion)
        for (const Int& y : b.torsion) orders.push_back(gcd(x, y));
    return from_cyclic_orders(std::move(orders));
}

ExactnessReport verify_exact(const std::vector<FgAbGroup>& groups,
                             const std::vector<GroupHom>& maps,
                             const std::vector<std::string>& labels) {
    if (groups.size() < 3) throw std::invalid_argument("verify_exact: need at least 3 nodes");
    if (maps.size() + 1 != groups.size())
        throw std::invalid_argument("verify_exact: need one map per adjacent pair");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        std::ostringstream os;
        if (!(maps[i].source == groups[i])) {
            os << "verify_exact: map " << i << " source is " << maps[i].source.to_string()
               << ", node is " << groups[i].to_string();
            throw std::invalid_argument(os.str());
        }
        if (!(maps[i].target == groups[i + 1])) {
            os << "verify_exact: map " << i << " target is " << maps[i].target.to_string()
               << ", node is " << groups[i + 1].to_string();
            throw std::invalid_argument(os.str());
        }
    }

    ExactnessReport rep;
    for (std::size_t i = 1; i + 1 < groups.size(); ++i) {
        const GroupHom& in = maps[i - 1];
        const GroupHom& out = maps[i];
        IntMatrix im = hstack(in.matrix, groups[i].relation_lattice());
        IntMatrix ker = kernel_preimage_lattice(out);
        bool exact = lattice_contains(ker, im) && lattice_contains(im, ker);
        ExactnessReport::Node node;
        node.label = i < labels.size() ? labels[i] : "node " + std::to_string(i);
        node.exact = exact;
        if (!exact) {
            std::ostringstream os;
            os << "image " << lattice_quotient(im, groups[i].relation_lattice()).type.to_string()
               << " vs kernel "
               << lattice_quotient(ker, groups[i].relation_lattice()).type.to_string();
            node.detail = os.str();
            rep.all_exact = false;
        }
        rep.nodes.push_back(std::move(node));
    }
    return rep;
}

}  // namespace kkcoeff
