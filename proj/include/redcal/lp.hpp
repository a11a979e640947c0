#pragma once

// Dense two-phase simplex for small standard-form LPs:
//   minimize c^T x  subject to  A x = b,  x >= 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace redcal::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
    Status status = Status::infeasible;
    double value = 0.0;
    std::vector<double> x;
    std::size_t iterations = 0;
};

namespace detail {

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    double& cost(std::size_t c) { return at(rows_, c); }

    void pivot(std::size_t pr, std::size_t pc) {
        const std::size_t w = cols_ + 1;
        double* prow = &data_[pr * w];
        const double inv = 1.0 / prow[pc];
        for (std::size_t c = 0; c < w; ++c) prow[c] *= inv;
        prow[pc] = 1.0;
        for (std::size_t r = 0; r <= rows_; ++r) {
            if (r == pr) continue;
            double* row = &data_[r * w];
            const double f = row[pc];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < w; ++c) row[c] -= f * prow[c];
            row[pc] = 0.0;
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

/// Runs simplex iterations on the current cost row. Columns at or beyond
/// `allowed` never enter. Returns false when unbounded.
inline bool iterate(Tableau& t, std::vector<std::size_t>& basis, std::size_t allowed, std::size_t& iters, double eps) {
    const std::size_t m = t.rows();
    const std::size_t bland_after = 50 * (m + t.cols()) + 1000;
    std::size_t local = 0;
    for (;;) {
        const bool bland = ++local > bland_after;
        std::size_t enter = allowed;
        double best = -eps;
        for (std::size_t c = 0; c < allowed; ++c) {
            const double d = t.cost(c);
            if (d < best) {
                enter = c;
                if (bland) break;
                best = d;
            }
        }
        if (enter == allowed) return true;
        std::size_t leave = m;
        double ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < m; ++r) {
            const double a = t.at(r, enter);
            if (a > eps) {
                const double q = t.rhs(r) / a;
                if (q < ratio - 1e-12 || (q <= ratio + 1e-12 && leave < m && basis[r] < basis[leave])) {
                    ratio = q;
                    leave = r;
                }
            }
        }
        if (leave == m) return false;
        t.pivot(leave, enter);
        basis[leave] = enter;
        ++iters;
    }
}

} // namespace detail

/// A is row-major with A.size() rows of c.size() columns.
inline Result minimize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                       const std::vector<double>& c, double eps = 1e-10) {
    const std::size_t m = A.size();
    const std::size_t n = c.size();
    detail::Tableau t(m, n + m);
    std::vector<std::size_t> basis(m);
    double scale = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
        const double sign = b[r] < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t.at(r, j) = sign * A[r][j];
        t.at(r, n + r) = 1.0;
        t.rhs(r) = sign * b[r];
        basis[r] = n + r;
        scale = std::max(scale, std::abs(b[r]));
    }
    // Phase 1: minimize the sum of artificials.
    for (std::size_t j = 0; j <= n + m; ++j) {
        if (j >= n && j < n + m) continue;
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += t.at(r, j);
        t.at(m, j) = -s;
    }
    Result res;
    detail::iterate(t, basis, n, res.iterations, eps);
    if (-t.at(m, n + m) > 1e-9 * scale) {
        res.status = Status::infeasible;
        return res;
    }
    // Drive remaining artificials out of the basis; rows that cannot pivot are redundant.
    for (std::size_t r = 0; r < m; ++r) {
        if (basis[r] < n) continue;
        std::size_t col = n;
        double best = eps;
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(t.at(r, j)) > best) {
                best = std::abs(t.at(r, j));
                col = j;
            }
        if (col < n) {
            t.pivot(r, col);
            basis[r] = col;
        }
    }
    // Phase 2.
    for (std::size_t j = 0; j <= n + m; ++j) t.at(m, j) = 0.0;
    for (std::size_t j = 0; j < n; ++j) t.at(m, j) = c[j];
    for (std::size_t r = 0; r < m; ++r) {
        if (basis[r] >= n) continue;
        const double cb = c[basis[r]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= n + m; ++j) t.at(m, j) -= cb * t.at(r, j);
    }
    if (!detail::iterate(t, basis, n, res.iterations, eps)) {
        res.status = Status::unbounded;
        return res;
    }
    res.status = Status::optimal;
    res.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] < n) res.x[basis[r]] = t.rhs(r);
    res.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

} // namespace redcal::lp
