#include "kkcoeff/int_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace kkcoeff {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Int>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : a_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix multiply: shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Int& y = o.at(k, j);
                if (y != 0) r.at(i, j) += x * y;
            }
        }
    return r;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r = *this;
    for (Int& x : r.a_) x = -x;
    return r;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("IntMatrix apply: shape mismatch");
    std::vector<Int> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && x[j] != 0) r[i] += at(i, j) * x[j];
    return r;
}

IntMatrix IntMatrix::submatrix_cols(std::size_t first, std::size_t count) const {
    IntMatrix r(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) r.at(i, j) = at(i, first + j);
    return r;
}

IntMatrix IntMatrix::submatrix_rows(std::size_t first, std::size_t count) const {
    IntMatrix r(count, cols_);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(first + i, j);
    return r;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix r(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(idx[i], j);
    return r;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
    IntMatrix r(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) r.at(i, j) = at(i, idx[j]);
    return r;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << at(i, j);
        }
    }
    os << "]";
    return os.str();
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    IntMatrix r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: col mismatch");
    IntMatrix r(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t piv = k;
            while (piv < n && a.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = num / prev;  // exact by Bareiss
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

namespace {

// Elementary operations on the working matrix d, mirrored into the
// transforms so that u * m * v = d stays invariant:
//   row op E on d:  u <- E u,  u_inv <- u_inv E^{-1}
//   col op F on d:  v <- v F,  v_inv <- F^{-1} v_inv

struct SmithWork {
    IntMatrix d, u, u_inv, v, v_inv;

    void row_swap(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d.at(i, j), d.at(k, j));
        for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(i, j), u.at(k, j));
        for (std::size_t r = 0; r < u_inv.rows(); ++r) std::swap(u_inv.at(r, i), u_inv.at(r, k));
    }
    void row_negate(std::size_t i) {
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(i, j) = -d.at(i, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) = -u.at(i, j);
        for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv.at(r, i) = -u_inv.at(r, i);
    }
    // row_i -= q * row_k
    void row_sub(std::size_t i, std::size_t k, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(i, j) -= q * d.at(k, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) -= q * u.at(k, j);
        for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv.at(r, k) += q * u_inv.at(r, i);
    }
    void col_swap(std::size_t j, std::size_t k) {
        if (j == k) return;
        for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d.at(i, j), d.at(i, k));
        for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, j), v.at(i, k));
        for (std::size_t c = 0; c < v_inv.cols(); ++c) std::swap(v_inv.at(j, c), v_inv.at(k, c));
    }
    void col_negate(std::size_t j) {
        for (std::size_t i = 0; i < d.rows(); ++i) d.at(i, j) = -d.at(i, j);
        for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, j) = -v.at(i, j);
        for (std::size_t c = 0; c < v_inv.cols(); ++c) v_inv.at(j, c) = -v_inv.at(j, c);
    }
    // col_j -= q * col_k
    void col_sub(std::size_t j, std::size_t k, const Int& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < d.rows(); ++i) d.at(i, j) -= q * d.at(i, k);
        for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, j) -= q * v.at(i, k);
        for (std::size_t c = 0; c < v_inv.cols(); ++c) v_inv.at(k, c) += q * v_inv.at(j, c);
    }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithWork w{m, IntMatrix::identity(rows), IntMatrix::identity(rows),
                IntMatrix::identity(cols), IntMatrix::identity(cols)};
    const std::size_t steps = rows < cols ? rows : cols;

    for (std::size_t t = 0; t < steps; ++t) {
        // Deterministic pivot: minimal |entry| over the trailing block,
        // ties by position.
        std::size_t pi = t, pj = t;
        bool found = false;
        Int best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                const Int& x = w.d.at(i, j);
                if (x == 0) continue;
                Int a = abs(x);
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        for (;;) {
            // Reduce column t against the pivot; a nonzero remainder becomes
            // the new (smaller) pivot.
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (w.d.at(i, t) == 0) continue;
                Int q = w.d.at(i, t) / w.d.at(t, t);
                w.row_sub(i, t, q);
                if (w.d.at(i, t) != 0) {
                    w.row_swap(t, i);
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (w.d.at(t, j) == 0) continue;
                Int q = w.d.at(t, j) / w.d.at(t, t);
                w.col_sub(j, t, q);
                if (w.d.at(t, j) != 0) {
                    w.col_swap(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;

            // Pivot must divide the trailing block; fold in one offending row.
            bool fixed = true;
            for (std::size_t i = t + 1; i < rows && fixed; ++i)
                for (std::size_t j = t + 1; j < cols && fixed; ++j)
                    if (w.d.at(i, j) % w.d.at(t, t) != 0) {
                        w.row_sub(t, i, Int(-1));  // row_t += row_i
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (w.d.at(t, t) < 0) w.row_negate(t);
    }

    SmithResult r;
    r.d = std::move(w.d);
    r.u = std::move(w.u);
    r.u_inv = std::move(w.u_inv);
    r.v = std::move(w.v);
    r.v_inv = std::move(w.v_inv);
    for (std::size_t t = 0; t < steps; ++t)
        if (r.d.at(t, t) != 0) {
            r.divisors.push_back(r.d.at(t, t));
            ++r.rank;
        }
    return r;
}

std::optional<IntMatrix> solve_linear(const IntMatrix& m, const IntMatrix& rhs) {
    if (rhs.rows() != m.rows()) throw std::invalid_argument("solve_linear: shape mismatch");
    SmithResult s = smith_normal_form(m);
    // m x = b  <=>  d y = u b, x = v y.
    IntMatrix ub = s.u * rhs;
    IntMatrix y(m.cols(), rhs.cols());
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const Int& bi = ub.at(i, c);
            if (i < s.rank) {
                if (bi % s.d.at(i, i) != 0) return std::nullopt;
                if (i < m.cols()) y.at(i, c) = bi / s.d.at(i, i);
            } else if (bi != 0) {
                return std::nullopt;
            }
        }
    }
    return s.v * y;
}

std::optional<std::vector<Int>> solve_linear(const IntMatrix& m, const std::vector<Int>& b) {
    IntMatrix rhs(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs.at(i, 0) = b[i];
    auto x = solve_linear(m, rhs);
    if (!x) return std::nullopt;
    std::vector<Int> out(m.cols());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x->at(i, 0);
    return out;
}

IntMatrix kernel_lattice(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    // m x = 0  <=>  y = v^{-1} x supported beyond the rank.
    return s.v.submatrix_cols(s.rank, m.cols() - s.rank);
}

bool lattice_contains(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("lattice_contains: ambient mismatch");
    return solve_linear(a, b).has_value();
}

}  // namespace kkcoeff
