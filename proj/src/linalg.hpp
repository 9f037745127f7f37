#ifndef REGTENSOR_LINALG_HPP
#define REGTENSOR_LINALG_HPP

#include <optional>
#include <vector>

#include "error.hpp"

namespace regtensor {

/// Dense matrices over a field whose elements E support + - * ==,
/// is_zero() and inverse(). Row-major; every routine takes the field's zero
/// explicitly so empty shapes are well defined.
template <class E>
using Matrix = std::vector<std::vector<E>>;

template <class E>
struct Echelon {
    Matrix<E> rows;                  // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Gauss-Jordan elimination to reduced row echelon form. Canonical: equal row
/// spaces give identical results.
template <class E>
Echelon<E> rref(Matrix<E> m, std::size_t cols) {
    Echelon<E> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        E inv = m[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) {
            if (!m[r][j].is_zero()) m[r][j] = m[r][j] * inv;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            E f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) {
                if (!m[r][j].is_zero()) m[i][j] = m[i][j] - f * m[r][j];
            }
        }
        out.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

template <class E>
std::size_t rank(const Matrix<E>& m, std::size_t cols) {
    return rref(m, cols).rows.size();
}

/// Basis of {x : m x = 0}.
template <class E>
std::vector<std::vector<E>> nullspace(const Matrix<E>& m, std::size_t cols, const E& zero, const E& one) {
    Echelon<E> ech = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : ech.pivots) is_pivot[c] = true;
    std::vector<std::vector<E>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<E> v(cols, zero);
        v[free] = one;
        for (std::size_t i = 0; i < ech.rows.size(); ++i) v[ech.pivots[i]] = zero - ech.rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class E>
E dot(const std::vector<E>& a, const std::vector<E>& b, const E& zero) {
    E acc = zero;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero()) acc = acc + a[i] * b[i];
    }
    return acc;
}

/// Either a solution x of m x = b, or a certificate y with y^T m = 0 and
/// y^T b != 0 proving that no solution exists.
template <class E>
struct SolveResult {
    std::optional<std::vector<E>> solution;
    std::optional<std::vector<E>> obstruction;
};

template <class E>
SolveResult<E> solve(const Matrix<E>& m, std::size_t cols, const std::vector<E>& b, const E& zero, const E& one) {
    const std::size_t rows = m.size();
    if (b.size() != rows) fail(ErrorCode::ArityMismatch, "right-hand side has the wrong length");
    Matrix<E> aug(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        aug[i].reserve(cols + 1);
        aug[i].insert(aug[i].end(), m[i].begin(), m[i].end());
        aug[i].push_back(b[i]);
    }
    Echelon<E> ech = rref(std::move(aug), cols + 1);
    SolveResult<E> out;
    if (!ech.pivots.empty() && ech.pivots.back() == cols) {
        // Inconsistent: some y in the left kernel of m pairs nontrivially with b.
        Matrix<E> mt(cols, std::vector<E>(rows, zero));
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) mt[j][i] = m[i][j];
        }
        for (auto& y : nullspace(mt, rows, zero, one)) {
            if (!dot(y, b, zero).is_zero()) {
                out.obstruction = std::move(y);
                return out;
            }
        }
        fail(ErrorCode::InternalInconsistency, "inconsistent system without a left-kernel obstruction");
    }
    std::vector<E> x(cols, zero);
    for (std::size_t i = 0; i < ech.rows.size(); ++i) x[ech.pivots[i]] = ech.rows[i][cols];
    out.solution = std::move(x);
    return out;
}

template <class E>
std::vector<E> mat_vec(const Matrix<E>& m, const std::vector<E>& v, const E& zero) {
    std::vector<E> out(m.size(), zero);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!m[i][j].is_zero() && !v[j].is_zero()) out[i] = out[i] + m[i][j] * v[j];
        }
    }
    return out;
}

}  // namespace regtensor

#endif  // REGTENSOR_LINALG_HPP
