#include "paracr/linalg.hpp"

#include <algorithm>

#include "paracr/errors.hpp"

namespace paracr {

int rat_rank(RatMatrix m) {
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!m[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = rank + 1; r < rows; ++r) {
            if (m[r][col].is_zero()) continue;
            Rational f = m[r][col] / m[rank][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

RatMatrix rat_inverse(const RatMatrix& m) {
    const int n = static_cast<int>(m.size());
    RatMatrix a = m;
    RatMatrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = Rational(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw SingularJacobian("matrix not invertible");
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        Rational p = a[col][col];
        for (int c = 0; c < n; ++c) {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rational f = a[r][col];
            for (int c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

Series series_det(const SeriesMatrix& m) {
    const int n = static_cast<int>(m.size());
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    // Laplace expansion along the first row; fine for the 3x3 cases used here.
    Series acc = Series::zero(m[0][0].space(), m[0][0].trunc());
    for (int j = 0; j < n; ++j) {
        SeriesMatrix sub;
        for (int r = 1; r < n; ++r) {
            std::vector<Series> row;
            for (int c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            sub.push_back(std::move(row));
        }
        Series cof = m[0][j] * series_det(sub);
        acc = (j % 2 == 0) ? acc + cof : acc - cof;
    }
    return acc;
}

RatMatrix eval_matrix(const SeriesMatrix& m, const std::vector<Rational>& point) {
    RatMatrix out;
    for (const auto& row : m) {
        std::vector<Rational> r;
        for (const auto& s : row) r.push_back(s.evaluate(point));
        out.push_back(std::move(r));
    }
    return out;
}

static bool some_minor_nonzero(const SeriesMatrix& m, int size, int degree) {
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    std::vector<int> ri(size), ci(size);
    // enumerate row subsets
    std::vector<int> rsel(size);
    for (int i = 0; i < size; ++i) rsel[i] = i;
    while (true) {
        std::vector<int> csel(size);
        for (int i = 0; i < size; ++i) csel[i] = i;
        while (true) {
            SeriesMatrix sub;
            for (int r = 0; r < size; ++r) {
                std::vector<Series> row;
                for (int c = 0; c < size; ++c) row.push_back(m[rsel[r]][csel[c]]);
                sub.push_back(std::move(row));
            }
            if (!series_det(sub).is_zero_through(degree)) return true;
            int i = size - 1;
            while (i >= 0 && csel[i] == cols - size + i) --i;
            if (i < 0) break;
            ++csel[i];
            for (int j = i + 1; j < size; ++j) csel[j] = csel[j - 1] + 1;
        }
        int i = size - 1;
        while (i >= 0 && rsel[i] == rows - size + i) --i;
        if (i < 0) break;
        ++rsel[i];
        for (int j = i + 1; j < size; ++j) rsel[j] = rsel[j - 1] + 1;
    }
    return false;
}

int generic_rank_by_minors(const SeriesMatrix& m, int degree) {
    if (m.empty()) return 0;
    int maxs = std::min(m.size(), m[0].size());
    for (int s = maxs; s >= 1; --s)
        if (some_minor_nonzero(m, s, degree)) return s;
    return 0;
}

}  // namespace paracr
