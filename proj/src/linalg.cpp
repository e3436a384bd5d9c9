#include "crsing/linalg.hpp"

#include <stdexcept>

namespace crsing {

namespace {

// Row echelon, returns pivot columns.  Operates in place.
std::vector<int> echelon(Matrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        GaussianRational inv = GaussianRational(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            GaussianRational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

}  // namespace

int exact_rank(Matrix m) { return static_cast<int>(echelon(m).size()); }

std::vector<Row> kernel_basis(Matrix a) {
    if (a.empty()) return {};
    std::size_t cols = a[0].size();
    std::vector<int> pivots = echelon(a);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Row> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        Row v(cols);
        v[free_c] = GaussianRational(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            // row k has unit pivot at pivots[k]
            v[static_cast<std::size_t>(pivots[k])] = -a[k][free_c];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

GaussianRational determinant(Matrix a) {
    std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("determinant of non-square matrix");
    GaussianRational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return GaussianRational(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        GaussianRational inv = GaussianRational(1) / a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            GaussianRational f = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

std::optional<Row> solve(Matrix a, Row b) {
    std::size_t rows = a.size();
    if (rows == 0) return Row{};
    std::size_t cols = a[0].size();
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b.at(i));
    std::vector<int> pivots = echelon(a);
    Row x(cols);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        if (pivots[k] == static_cast<int>(cols)) return std::nullopt;  // 0 = 1 row
        x[static_cast<std::size_t>(pivots[k])] = a[k][cols];
    }
    return x;
}

std::optional<Matrix> inverse(Matrix a) {
    std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("inverse of non-square matrix");
    for (std::size_t i = 0; i < n; ++i) {
        a[i].resize(2 * n);
        a[i][n + i] = GaussianRational(1);
    }
    std::vector<int> pivots = echelon(a);
    // a singular left block pushes pivots into the augmented columns
    if (pivots.size() != n || pivots.back() >= static_cast<int>(n)) return std::nullopt;
    Matrix out(n, Row(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
    return out;
}

int intersection_dim(const std::vector<Row>& u, const std::vector<Row>& v) {
    // dim(U) + dim(V) - dim(U + V)
    auto rank_of = [](const std::vector<Row>& rows) {
        if (rows.empty()) return 0;
        Matrix m(rows.begin(), rows.end());
        return exact_rank(std::move(m));
    };
    std::vector<Row> joint = u;
    joint.insert(joint.end(), v.begin(), v.end());
    return rank_of(u) + rank_of(v) - rank_of(joint);
}

}  // namespace crsing
