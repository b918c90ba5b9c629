#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace kkcoeff {

using Int = boost::multiprecision::cpp_int;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

// x mod m reduced into [0, m) for m > 0.
inline Int mod_floor(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

inline bool divides(const Int& a, const Int& b) {
    if (a == 0) return b == 0;
    return b % a == 0;
}

// Dense integer matrix, row major.  Degenerate shapes (0 x n, n x 0) are
// legal and behave as the corresponding empty linear maps.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(const std::vector<Int>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const = default;

    bool is_zero() const;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-() const;

    std::vector<Int> apply(const std::vector<Int>& x) const;

    IntMatrix submatrix_cols(std::size_t first, std::size_t count) const;
    IntMatrix submatrix_rows(std::size_t first, std::size_t count) const;
    IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
    IntMatrix select_cols(const std::vector<std::size_t>& idx) const;

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

// Exact determinant (Bareiss fraction-free elimination); matrix must be square.
Int det(const IntMatrix& m);

// Smith normal form u * m * v = d with u, v unimodular and d diagonal,
// d(0,0) | d(1,1) | ... , all diagonal entries >= 0, nonzero entries first.
// u_inv and v_inv are the exact inverses of u and v.
struct SmithResult {
    IntMatrix u, u_inv, v, v_inv, d;
    std::size_t rank = 0;           // number of nonzero diagonal entries
    std::vector<Int> divisors;      // the nonzero diagonal, in chain order
};

SmithResult smith_normal_form(const IntMatrix& m);

// One solution of m x = b over the integers, if any.
std::optional<std::vector<Int>> solve_linear(const IntMatrix& m, const std::vector<Int>& b);

// Columnwise solve of m x = rhs; present iff every column is solvable.
std::optional<IntMatrix> solve_linear(const IntMatrix& m, const IntMatrix& rhs);

// Basis of the lattice {x : m x = 0}, as columns.
IntMatrix kernel_lattice(const IntMatrix& m);

// Does the column lattice of a contain every column of b?
bool lattice_contains(const IntMatrix& a, const IntMatrix& b);

}  // namespace kkcoeff
