// Dense two-phase primal simplex over an exact ordered field, Bland's rule.
#pragma once

#include <optional>
#include <vector>

#include "stpl/field.hpp"

namespace stpl::lp {

enum class Status { optimal, infeasible, unbounded };

template <class F>
struct Result {
    Status status = Status::infeasible;
    F value{};
    std::vector<F> x;
};

/// maximize c.x subject to A x = b, x >= 0. Rows of A have size c.size().
template <class F>
Result<F> maximize(std::vector<std::vector<F>> A, std::vector<F> b, const std::vector<F>& c) {
    const size_t m = A.size();
    const size_t n = c.size();
    for (size_t i = 0; i < m; ++i) {
        if (sign_of(b[i]) < 0) {
            for (auto& a : A[i]) a = -a;
            b[i] = -b[i];
        }
    }
    // Columns: n structural, m artificial, then rhs.
    const size_t cols = n + m;
    std::vector<std::vector<F>> T(m, std::vector<F>(cols + 1, F(0)));
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = F(1);
        T[i][cols] = b[i];
        basis[i] = n + i;
    }

    auto pivot = [&](size_t r, size_t col) {
        F p = T[r][col];
        for (auto& v : T[r]) v = v / p;
        for (size_t i = 0; i < m; ++i) {
            if (i == r || sign_of(T[i][col]) == 0) continue;
            F factor = T[i][col];
            for (size_t j = 0; j <= cols; ++j)
                if (sign_of(T[r][j]) != 0) T[i][j] = T[i][j] - factor * T[r][j];
        }
        basis[r] = col;
    };

    // Runs the simplex loop for objective `obj` (maximize), restricted to
    // columns marked usable. Returns false when unbounded.
    auto run = [&](const std::vector<F>& obj, const std::vector<bool>& usable) {
        for (;;) {
            // reduced cost_j = obj_j - sum_i obj_{basis_i} T[i][j]
            std::optional<size_t> enter;
            for (size_t j = 0; j < cols && !enter; ++j) {
                if (!usable[j]) continue;
                bool in_basis = false;
                for (size_t i = 0; i < m; ++i) in_basis = in_basis || basis[i] == j;
                if (in_basis) continue;
                F rc = obj[j];
                for (size_t i = 0; i < m; ++i)
                    if (sign_of(T[i][j]) != 0 && sign_of(obj[basis[i]]) != 0)
                        rc = rc - obj[basis[i]] * T[i][j];
                if (sign_of(rc) > 0) enter = j;
            }
            if (!enter) return true;
            std::optional<size_t> leave;
            F best{};
            for (size_t i = 0; i < m; ++i) {
                if (sign_of(T[i][*enter]) <= 0) continue;
                F ratio = T[i][cols] / T[i][*enter];
                if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, *enter);
        }
    };

    // Phase 1: maximize -sum(artificials).
    std::vector<F> obj1(cols, F(0));
    for (size_t i = 0; i < m; ++i) obj1[n + i] = F(-1);
    std::vector<bool> all(cols, true);
    run(obj1, all);
    Result<F> res;
    for (size_t i = 0; i < m; ++i)
        if (basis[i] >= n && sign_of(T[i][cols]) != 0) return res;  // infeasible
    // Drive zero-level artificials out of the basis where possible.
    for (size_t i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        for (size_t j = 0; j < n; ++j) {
            if (sign_of(T[i][j]) != 0) {
                pivot(i, j);
                break;
            }
        }
    }
    std::vector<F> obj2(cols, F(0));
    for (size_t j = 0; j < n; ++j) obj2[j] = c[j];
    std::vector<bool> structural(cols, false);
    for (size_t j = 0; j < n; ++j) structural[j] = true;
    if (!run(obj2, structural)) {
        res.status = Status::unbounded;
        return res;
    }
    res.status = Status::optimal;
    res.x.assign(n, F(0));
    for (size_t i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = T[i][cols];
    res.value = F(0);
    for (size_t j = 0; j < n; ++j) res.value = res.value + c[j] * res.x[j];
    return res;
}

}  // namespace stpl::lp
