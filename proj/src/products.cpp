#include "kkcoeff/coefficients.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace kkcoeff {

namespace {

// Degreewise group equality; names and labels do not matter for pairing
// plumbing.
bool same_values(const GradedTheory& a, const GradedTheory& b) {
    return a.period == b.period && a.groups == b.groups;
}

// gcd of two generator orders with 0 = infinite: the order of the pair in
// the tensor product.
Int pair_order(const Int& a, const Int& b) { return gcd(a, b); }

std::vector<Int> reduce_in(const FgAbGroup& g, std::vector<Int> v) {
    for (std::size_t i = 0; i < g.torsion.size(); ++i) v[i] = mod_floor(v[i], g.torsion[i]);
    return v;
}

bool zero_in(const FgAbGroup& g, const std::vector<Int>& v) {
    std::vector<Int> r = reduce_in(g, v);
    for (const Int& x : r)
        if (x != 0) return false;
    return true;
}

std::vector<Int> form_column(const IntMatrix& form, std::size_t col) {
    std::vector<Int> v(form.rows());
    for (std::size_t r = 0; r < form.rows(); ++r) v[r] = form.at(r, col);
    return v;
}

std::string pair_name(int a, int b, std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << "generator pair (" << i << ", " << j << ") in degrees (" << a << ", " << b << ")";
    return os.str();
}

}  // namespace

BilinearPairing make_pairing(GradedTheory left, GradedTheory right, GradedTheory out,
                             std::vector<std::vector<IntMatrix>> forms, int degree_shift) {
    if (left.period != right.period || left.period != out.period)
        throw std::invalid_argument("pairing: theories have different periods");
    if (forms.size() != static_cast<std::size_t>(left.period))
        throw std::invalid_argument("pairing: one row of forms per left residue required");
    for (int a = 0; a < left.period; ++a) {
        if (forms[static_cast<std::size_t>(a)].size() != static_cast<std::size_t>(right.period))
            throw std::invalid_argument("pairing: one form per residue pair required");
        for (int b = 0; b < right.period; ++b) {
            const FgAbGroup& la = left.at(a);
            const FgAbGroup& rb = right.at(b);
            const FgAbGroup& target = out.at(a + b + degree_shift);
            IntMatrix& form = forms[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (form.rows() != target.gens() || form.cols() != la.gens() * rb.gens())
                throw std::invalid_argument("pairing: form shape does not match the groups");
            for (std::size_t i = 0; i < la.gens(); ++i)
                for (std::size_t j = 0; j < rb.gens(); ++j) {
                    std::size_t col = i * rb.gens() + j;
                    Int o = pair_order(la.gen_order(i), rb.gen_order(j));
                    std::vector<Int> v = form_column(form, col);
                    if (o != 0) {
                        for (Int& x : v) x *= o;
                        if (!zero_in(target, v))
                            throw std::invalid_argument("pairing: value of " + pair_name(a, b, i, j) +
                                                        " violates the generator orders");
                    }
                }
            // keep torsion rows reduced
            for (std::size_t r = 0; r < target.torsion.size(); ++r)
                for (std::size_t c = 0; c < form.cols(); ++c)
                    form.at(r, c) = mod_floor(form.at(r, c), target.torsion[r]);
        }
    }
    BilinearPairing p;
    p.left = std::move(left);
    p.right = std::move(right);
    p.out = std::move(out);
    p.degree_shift = degree_shift;
    p.forms = std::move(forms);
    return p;
}

std::vector<Int> pair_elements(const BilinearPairing& p, long long a, const std::vector<Int>& x,
                               long long b, const std::vector<Int>& y) {
    const FgAbGroup& la = p.left.at(a);
    const FgAbGroup& rb = p.right.at(b);
    const FgAbGroup& target = p.out.at(a + b + p.degree_shift);
    if (x.size() != la.gens() || y.size() != rb.gens())
        throw std::invalid_argument("pair_elements: coordinate sizes do not match");
    long long pa = ((a % p.left.period) + p.left.period) % p.left.period;
    long long pb = ((b % p.right.period) + p.right.period) % p.right.period;
    const IntMatrix& form =
        p.forms[static_cast<std::size_t>(pa)][static_cast<std::size_t>(pb)];
    std::vector<Int> acc(target.gens(), Int(0));
    for (std::size_t i = 0; i < la.gens(); ++i)
        for (std::size_t j = 0; j < rb.gens(); ++j) {
            Int c = x[i] * y[j];
            if (c == 0) continue;
            std::size_t col = i * rb.gens() + j;
            for (std::size_t r = 0; r < target.gens(); ++r) acc[r] += c * form.at(r, col);
        }
    return reduce_in(target, acc);
}

bool pairings_associative(const BilinearPairing& ab, const BilinearPairing& ab_c,
                          const BilinearPairing& bc, const BilinearPairing& a_bc) {
    if (!same_values(ab.out, ab_c.left) || !same_values(bc.out, a_bc.right) ||
        !same_values(ab.left, a_bc.left) || !same_values(ab.right, bc.left) ||
        !same_values(bc.right, ab_c.right) || !same_values(ab_c.out, a_bc.out))
        throw std::invalid_argument("pairings_associative: stages do not compose");
    if (ab.degree_shift != bc.degree_shift || ab_c.degree_shift != a_bc.degree_shift)
        throw std::invalid_argument("pairings_associative: stage degree shifts disagree");
    const int period = ab.left.period;
    const int s1 = ab.degree_shift;
    for (int a = 0; a < period; ++a)
        for (int b = 0; b < period; ++b)
            for (int c = 0; c < period; ++c) {
                const FgAbGroup& ga = ab.left.at(a);
                const FgAbGroup& gb = ab.right.at(b);
                const FgAbGroup& gc = bc.right.at(c);
                for (std::size_t i = 0; i < ga.gens(); ++i)
                    for (std::size_t j = 0; j < gb.gens(); ++j)
                        for (std::size_t k = 0; k < gc.gens(); ++k) {
                            std::vector<Int> ei(ga.gens(), Int(0)), fj(gb.gens(), Int(0)),
                                gk(gc.gens(), Int(0));
                            ei[i] = 1;
                            fj[j] = 1;
                            gk[k] = 1;
                            std::vector<Int> u = pair_elements(ab, a, ei, b, fj);
                            std::vector<Int> lhs = pair_elements(ab_c, a + b + s1, u, c, gk);
                            std::vector<Int> v = pair_elements(bc, b, fj, c, gk);
                            std::vector<Int> rhs = pair_elements(a_bc, a, ei, b + c + s1, v);
                            if (lhs != rhs) return false;
                        }
            }
    return true;
}

namespace {

GradedTheory free_skeleton(const GradedTheory& t) {
    GradedTheory s;
    s.name = t.name + " (x) Q";
    s.period = t.period;
    for (const FgAbGroup& g : t.groups) s.groups.push_back(FgAbGroup::free_group(g.rank));
    return s;
}

}  // namespace

BilinearPairing rational_product_transport(const BilinearPairing& p) {
    GradedTheory left = free_skeleton(p.left);
    GradedTheory right = free_skeleton(p.right);
    GradedTheory out = free_skeleton(p.out);
    std::vector<std::vector<IntMatrix>> forms;
    for (int a = 0; a < p.left.period; ++a) {
        forms.emplace_back();
        for (int b = 0; b < p.right.period; ++b) {
            const FgAbGroup& la = p.left.at(a);
            const FgAbGroup& rb = p.right.at(b);
            const FgAbGroup& target = p.out.at(a + b + p.degree_shift);
            const IntMatrix& form =
                p.forms[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            IntMatrix f(target.rank, la.rank * rb.rank);
            for (std::size_t i = 0; i < la.rank; ++i)
                for (std::size_t j = 0; j < rb.rank; ++j)
                    for (std::size_t r = 0; r < target.rank; ++r)
                        f.at(r, i * rb.rank + j) =
                            form.at(target.torsion.size() + r,
                                    (la.torsion.size() + i) * rb.gens() + rb.torsion.size() + j);
            forms.back().push_back(std::move(f));
        }
    }
    return make_pairing(std::move(left), std::move(right), std::move(out), std::move(forms),
                        p.degree_shift);
}

void ContractReport::fail(std::string what) {
    pass = false;
    violations.push_back(std::move(what));
}

ContractReport mod_pq_product_check(const BilinearPairing& candidate, const Int& p, const Int& q) {
    ContractReport rep;
    if (p < 2 || q < 2) {
        rep.fail("moduli must be at least 2");
        return rep;
    }
    if (candidate.degree_shift != -2) {
        std::ostringstream os;
        os << "product must land in degree n+m-2, but the supplied pairing lands in degree n+m";
        if (candidate.degree_shift != 0) os << (candidate.degree_shift > 0 ? "+" : "") << candidate.degree_shift;
        rep.fail(os.str());
    }
    const Int pq = p * q;
    if (candidate.forms.size() != static_cast<std::size_t>(candidate.left.period)) {
        rep.fail("one row of forms per left residue required");
        return rep;
    }
    for (int a = 0; a < candidate.left.period; ++a)
        for (int b = 0; b < candidate.right.period; ++b) {
            const FgAbGroup& la = candidate.left.at(a);
            const FgAbGroup& rb = candidate.right.at(b);
            const FgAbGroup& target = candidate.out.at(a + b + candidate.degree_shift);
            if (candidate.forms[static_cast<std::size_t>(a)].size() !=
                static_cast<std::size_t>(candidate.right.period)) {
                rep.fail("one form per residue pair required");
                return rep;
            }
            const IntMatrix& form =
                candidate.forms[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (form.rows() != target.gens() || form.cols() != la.gens() * rb.gens()) {
                std::ostringstream os;
                os << "form at degrees (" << a << ", " << b << ") has shape " << form.rows() << "x"
                   << form.cols() << ", but the degree-" << (a + b + candidate.degree_shift)
                   << " target needs " << target.gens() << "x" << la.gens() * rb.gens();
                rep.fail(os.str());
                continue;
            }
            for (std::size_t i = 0; i < la.gens(); ++i)
                for (std::size_t j = 0; j < rb.gens(); ++j) {
                    std::size_t col = i * rb.gens() + j;
                    std::vector<Int> v = form_column(form, col);
                    Int o = pair_order(la.gen_order(i), rb.gen_order(j));
                    if (o != 0) {
                        std::vector<Int> ov = v;
                        for (Int& x : ov) x *= o;
                        if (!zero_in(target, ov))
                            rep.fail("bilinearity fails at " + pair_name(a, b, i, j));
                    }
                    std::vector<Int> qv = v;
                    for (Int& x : qv) x *= pq;
                    if (!zero_in(target, qv))
                        rep.fail(pq.str() + " times the value of " + pair_name(a, b, i, j) +
                                 " is nonzero");
                }
        }
    return rep;
}

}  // namespace kkcoeff
