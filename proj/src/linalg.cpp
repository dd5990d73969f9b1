#include "locres/linalg.hpp"

#include "locres/errors.hpp"

#include <algorithm>

namespace locres {

Rat det(const RatMat& m) {
    std::size_t n = m.size();
    RatMat a(m);
    Rat d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            d = -d;
        }
        d *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return d;
}

std::size_t rank(RatMat a) {
    std::size_t rows = a.size();
    if (rows == 0) return 0;
    std::size_t cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
    std::size_t n = a.size();
    if (n == 0) return RatVec{};
    RatMat m(a);
    RatVec rhs(b);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    RatVec x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = rhs[k] / m[k][k];
    return x;
}

std::optional<RatVec> coords_in_basis(const std::vector<RatVec>& cols, const RatVec& y) {
    std::size_t n = y.size();
    if (cols.size() != n) return std::nullopt;
    RatMat a(n, RatVec(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a[r][c] = cols[c][r];
    return solve(a, y);
}

std::optional<RatVec> find_positive_point(const std::vector<LinearForm>& forms) {
    if (forms.empty()) return RatVec{};
    std::size_t l = forms[0].dim();
    // Fourier-Motzkin on sum_k c_k x_k >= 1 per form.  Row layout: l
    // coefficients followed by the constant: c . x >= rhs.
    struct Row {
        RatVec c;
        Rat rhs;
    };
    std::vector<Row> rows;
    for (const auto& f : forms) {
        if (f.dim() != l) throw algebra_error("find_positive_point: dimension mismatch");
        rows.push_back({f.coeffs(), Rat(1)});
    }
    std::vector<std::vector<Row>> stages; // rows prior to eliminating each variable
    for (std::size_t k = l; k-- > 0;) {
        stages.push_back(rows);
        std::vector<Row> next;
        std::vector<const Row*> pos, neg;
        for (const auto& r : rows) {
            if (r.c[k] > 0) pos.push_back(&r);
            else if (r.c[k] < 0) neg.push_back(&r);
            else {
                Row t = r;
                t.c[k] = 0;
                next.push_back(std::move(t));
            }
        }
        // x_k >= (rhs - rest)/c for pos rows, x_k <= ... for neg rows:
        // feasibility requires each pos lower bound <= each neg upper bound.
        for (const Row* p : pos)
            for (const Row* q : neg) {
                // combine to eliminate x_k: (-q.c[k]) * p + p.c[k] * q
                Row t;
                t.c.assign(l, Rat(0));
                Rat a = -q->c[k], b = p->c[k];
                for (std::size_t j = 0; j < l; ++j) t.c[j] = a * p->c[j] + b * q->c[j];
                t.rhs = a * p->rhs + b * q->rhs;
                t.c[k] = 0;
                next.push_back(std::move(t));
            }
        rows = std::move(next);
    }
    for (const auto& r : rows)
        if (r.rhs > 0) return std::nullopt; // 0 >= positive: infeasible
    // Back-substitute, choosing a value within the interval at each stage;
    // stages[i] holds the system just before variable l-1-i was eliminated.
    RatVec x(l, Rat(0));
    for (std::size_t i = stages.size(); i-- > 0;) {
        std::size_t k = l - 1 - i;
        bool have_lo = false, have_hi = false;
        Rat lo, hi;
        for (const auto& r : stages[i]) {
            Rat rest = r.rhs;
            for (std::size_t j = 0; j < l; ++j)
                if (j != k) rest -= r.c[j] * x[j];
            if (r.c[k] > 0) {
                Rat bound = rest / r.c[k];
                if (!have_lo || bound > lo) lo = bound, have_lo = true;
            } else if (r.c[k] < 0) {
                Rat bound = rest / r.c[k];
                if (!have_hi || bound < hi) hi = bound, have_hi = true;
            } else if (rest > 0) {
                return std::nullopt;
            }
        }
        if (have_lo && have_hi) {
            if (lo > hi) return std::nullopt;
            x[k] = (lo + hi) / 2;
        } else if (have_lo) {
            x[k] = lo + 1;
        } else if (have_hi) {
            x[k] = hi - 1;
        } else {
            x[k] = 0;
        }
    }
    for (const auto& f : forms)
        if (f.pair(x) <= 0) throw algebra_error("find_positive_point: internal witness failure");
    return x;
}

bool in_cone_span(const std::vector<RatVec>& gens, const RatVec& y) {
    // y in cone(gens)?  Solved as LP feasibility via Fourier-Motzkin on the
    // coefficient variables; generator counts here are tiny.
    bool all_zero = true;
    for (const Rat& q : y)
        if (q != 0) all_zero = false;
    if (all_zero) return true;
    if (gens.empty()) return false;
    std::size_t n = gens.size(), l = y.size();
    // Feasibility of { s >= 0, G s = y }: eliminate s with FM over the
    // combined inequality system s_j >= 0, +/-(G s - y) >= 0.
    struct Row {
        RatVec c;
        Rat rhs;
    }; // c . s >= rhs
    std::vector<Row> rows;
    for (std::size_t j = 0; j < n; ++j) {
        Row r;
        r.c.assign(n, Rat(0));
        r.c[j] = 1;
        r.rhs = 0;
        rows.push_back(r);
    }
    for (std::size_t k = 0; k < l; ++k) {
        Row a, b;
        a.c.assign(n, Rat(0));
        b.c.assign(n, Rat(0));
        for (std::size_t j = 0; j < n; ++j) {
            a.c[j] = gens[j][k];
            b.c[j] = -gens[j][k];
        }
        a.rhs = y[k];
        b.rhs = -y[k];
        rows.push_back(a);
        rows.push_back(b);
    }
    for (std::size_t k = n; k-- > 0;) {
        std::vector<Row> next;
        std::vector<const Row*> pos, neg;
        for (const auto& r : rows) {
            if (r.c[k] > 0) pos.push_back(&r);
            else if (r.c[k] < 0) neg.push_back(&r);
            else next.push_back(r);
        }
        for (const Row* p : pos)
            for (const Row* q : neg) {
                Row t;
                t.c.assign(n, Rat(0));
                Rat a = -q->c[k], b = p->c[k];
                for (std::size_t j = 0; j < n; ++j) t.c[j] = a * p->c[j] + b * q->c[j];
                t.rhs = a * p->rhs + b * q->rhs;
                t.c[k] = 0;
                next.push_back(std::move(t));
            }
        rows = std::move(next);
    }
    for (const auto& r : rows)
        if (r.rhs > 0) return false;
    return true;
}

} // namespace locres
