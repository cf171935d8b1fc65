#pragma once

#include "cylattice/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace cylattice {

// Dense matrix over arbitrary-precision integers. Row-major, value semantics.
class IntMat {
  public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

    static IntMat identity(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMat from_rows(const std::vector<IntVec>& rows) {
        if (rows.empty()) return IntMat(0, 0);
        IntMat m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            assert(rows[i].size() == m.cols_);
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVec row(std::size_t i) const {
        IntVec r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    IntMat transposed() const {
        IntMat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMat operator*(const IntMat& o) const {
        assert(cols_ == o.rows_);
        IntMat p(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += a * o.at(k, j);
            }
        return p;
    }

    IntVec operator*(const IntVec& x) const {
        assert(cols_ == x.size());
        IntVec y(rows_, Int(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += at(i, j) * x[j];
        return y;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

namespace detail {

inline void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

inline void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

inline void add_row_multiple(IntMat& m, std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(dst, j) += q * m.at(src, j);
}

inline void add_col_multiple(IntMat& m, std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, dst) += q * m.at(i, src);
}

} // namespace detail

// Smith normal form over Z with explicit min-abs pivoting. Returns the
// nonzero elementary divisors, positive and in divisibility order
// d1 | d2 | ... (deterministic for regression use).
inline std::vector<Int> smith_elementary_divisors(IntMat m) {
    using namespace detail;
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<Int> divisors;
    std::size_t t = 0;
    while (t < R && t < C) {
        // locate a nonzero entry of minimal absolute value in the trailing block
        std::optional<std::pair<std::size_t, std::size_t>> piv;
        Int best;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                if (m.at(i, j) == 0) continue;
                Int a = abs(m.at(i, j));
                if (!piv || a < best) {
                    piv = {i, j};
                    best = a;
                }
            }
        if (!piv) break;
        swap_rows(m, t, piv->first);
        swap_cols(m, t, piv->second);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (m.at(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(i, t).get_mpz_t(), m.at(t, t).get_mpz_t());
                add_row_multiple(m, i, t, -q);
                if (m.at(i, t) != 0) {
                    swap_rows(m, t, i); // strictly smaller remainder becomes the pivot
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (m.at(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(t, j).get_mpz_t(), m.at(t, t).get_mpz_t());
                add_col_multiple(m, j, t, -q);
                if (m.at(t, j) != 0) {
                    swap_cols(m, t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide the whole trailing block for divisibility order
            for (std::size_t i = t + 1; i < R && clean; ++i)
                for (std::size_t j = t + 1; j < C && clean; ++j)
                    if (m.at(i, j) % m.at(t, t) != 0) {
                        add_row_multiple(m, t, i, Int(1));
                        clean = false;
                    }
        }
        if (m.at(t, t) < 0)
            for (std::size_t j = t; j < C; ++j) m.at(t, j) = -m.at(t, j);
        divisors.push_back(m.at(t, t));
        ++t;
    }
    return divisors;
}

// Dense rational matrix used for exact linear solves.
class RatMat {
  public:
    RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

enum class LinearSolveStatus { Unique, Inconsistent, Underdetermined };

struct LinearSolveResult {
    LinearSolveStatus status;
    std::vector<Rat> solution; // populated only for Unique
};

// Solve A x = b exactly over Q. "Unique" requires full column rank.
inline LinearSolveResult solve_rational(const IntMat& a, const IntVec& b) {
    const std::size_t R = a.rows(), C = a.cols();
    assert(b.size() == R);
    RatMat m(R, C + 1);
    for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < C; ++j) m.at(i, j) = Rat(a.at(i, j));
        m.at(i, C) = Rat(b[i]);
    }
    std::vector<std::size_t> pivot_row_of_col(C, SIZE_MAX);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < C && rank < R; ++col) {
        std::size_t sel = SIZE_MAX;
        for (std::size_t i = rank; i < R; ++i)
            if (m.at(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel == SIZE_MAX) continue;
        for (std::size_t j = 0; j <= C; ++j) std::swap(m.at(rank, j), m.at(sel, j));
        Rat inv = m.at(rank, col);
        for (std::size_t j = col; j <= C; ++j) m.at(rank, j) /= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == rank || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (std::size_t j = col; j <= C; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        pivot_row_of_col[col] = rank;
        ++rank;
    }
    for (std::size_t i = rank; i < R; ++i)
        if (m.at(i, C) != 0) return {LinearSolveStatus::Inconsistent, {}};
    if (rank < C) return {LinearSolveStatus::Underdetermined, {}};
    std::vector<Rat> x(C);
    for (std::size_t col = 0; col < C; ++col) x[col] = m.at(pivot_row_of_col[col], C);
    return {LinearSolveStatus::Unique, std::move(x)};
}

// Exact inverse of an integer matrix whose inverse is again integral
// (det = +-1, e.g. a lattice isometry). Throws otherwise.
inline IntMat inverse_integral(const IntMat& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("inverse_integral: matrix must be square");
    IntMat inv(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        IntVec e(n, Int(0));
        e[col] = 1;
        LinearSolveResult sol = solve_rational(a, e);
        if (sol.status != LinearSolveStatus::Unique)
            throw std::invalid_argument("inverse_integral: matrix is singular");
        for (std::size_t row = 0; row < n; ++row) {
            Rat x = sol.solution[row];
            x.canonicalize();
            if (x.get_den() != 1)
                throw std::invalid_argument("inverse_integral: inverse is not integral");
            inv.at(row, col) = x.get_num();
        }
    }
    return inv;
}

inline std::size_t rational_rank(const IntMat& a) {
    const std::size_t R = a.rows(), C = a.cols();
    RatMat m(R, C);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) m.at(i, j) = Rat(a.at(i, j));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < C && rank < R; ++col) {
        std::size_t sel = SIZE_MAX;
        for (std::size_t i = rank; i < R; ++i)
            if (m.at(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel == SIZE_MAX) continue;
        for (std::size_t j = 0; j < C; ++j) std::swap(m.at(rank, j), m.at(sel, j));
        for (std::size_t i = rank + 1; i < R; ++i) {
            if (m.at(i, col) == 0) continue;
            Rat f = m.at(i, col) / m.at(rank, col);
            for (std::size_t j = col; j < C; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

} // namespace cylattice
