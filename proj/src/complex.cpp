#include "stpl/complex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "stpl/lp.hpp"

namespace stpl {

bool Subcomplex::contains(size_t idx) const {
    return std::binary_search(members.begin(), members.end(), idx);
}

template <class F>
Point<F> lift_point(const Point<Rational>& p) {
    Point<F> out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(FieldTraits<F>::from_rational(c));
    return out;
}

template <class F>
Point<Rational> standard_part(const Point<F>& p) {
    Point<Rational> out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(FieldTraits<F>::standard_part(c));
    return out;
}

template <class F>
bool lex_less(const Point<F>& a, const Point<F>& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        auto c = a[i] <=> b[i];
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

namespace {

template <class F>
bool box_contains(const std::pair<Point<F>, Point<F>>& box, const Point<F>& x) {
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] < box.first[i] || box.second[i] < x[i]) return false;
    return true;
}

template <class F>
F box_gap(const std::pair<Point<F>, Point<F>>& a, const std::pair<Point<F>, Point<F>>& b) {
    F gap(0);
    for (size_t i = 0; i < a.first.size(); ++i) {
        F g1 = b.first[i] - a.second[i];
        F g2 = a.first[i] - b.second[i];
        if (gap < g1) gap = g1;
        if (gap < g2) gap = g2;
    }
    return gap;
}

template <class F>
std::pair<Point<F>, Point<F>> bounding_box(const std::vector<Point<F>>& pts) {
    Point<F> lo = pts.front(), hi = pts.front();
    for (const auto& p : pts)
        for (size_t i = 0; i < p.size(); ++i) {
            if (p[i] < lo[i]) lo[i] = p[i];
            if (hi[i] < p[i]) hi[i] = p[i];
        }
    return {lo, hi};
}

// Row-reduces M (rows x cols, last column is rhs) in place; returns the pivot
// columns. Inconsistent systems have a pivot in the rhs column.
template <class F>
std::vector<size_t> row_reduce(std::vector<std::vector<F>>& M, size_t cols) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < M.size(); ++col) {
        size_t sel = row;
        while (sel < M.size() && M[sel][col] == F(0)) ++sel;
        if (sel == M.size()) continue;
        std::swap(M[sel], M[row]);
        F p = M[row][col];
        for (auto& v : M[row]) v = v / p;
        for (size_t r = 0; r < M.size(); ++r) {
            if (r == row || M[r][col] == F(0)) continue;
            F f = M[r][col];
            for (size_t j = col; j < M[r].size(); ++j) M[r][j] = M[r][j] - f * M[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

template <class F>
std::optional<std::vector<F>> solve_barycentric(const std::vector<Point<F>>& verts, const Point<F>& x) {
    const size_t n = verts.size();
    const size_t k = x.size();
    std::vector<std::vector<F>> M(k + 1, std::vector<F>(n + 1, F(0)));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < n; ++j) M[i][j] = verts[j][i];
        M[i][n] = x[i];
    }
    for (size_t j = 0; j <= n; ++j) M[k][j] = F(1);
    auto piv = row_reduce(M, n + 1);
    if (!piv.empty() && piv.back() == n) return std::nullopt;
    std::vector<F> lambda(n, F(0));
    for (size_t r = 0; r < piv.size(); ++r) lambda[piv[r]] = M[r][n];
    return lambda;
}

namespace {

Poly exact_quotient(const Poly& a, const Poly& b) {
    if (b.size() == 1 && b[0] == Rational(1)) return a;
    auto [q, r] = poly::divmod(a, b);
    if (!r.empty()) throw std::logic_error("fraction-free elimination: inexact division");
    return q;
}

// Rows of InfScalars scaled to polynomial rows with the same solutions.
std::vector<std::vector<Poly>> clear_denominators(const std::vector<std::vector<InfScalar>>& rows) {
    std::vector<std::vector<Poly>> out;
    for (const auto& row : rows) {
        Poly l{Rational(1)};
        for (const auto& x : row)
            if (x.den() != l) l = exact_quotient(poly::mul(l, x.den()), poly::gcd(l, x.den()));
        std::vector<Poly> r;
        for (const auto& x : row) r.push_back(poly::mul(x.num(), exact_quotient(l, x.den())));
        out.push_back(std::move(r));
    }
    return out;
}

// Fraction-free Gauss-Jordan; afterwards every pivot entry equals the last pivot.
std::vector<size_t> bareiss(std::vector<std::vector<Poly>>& M, size_t cols) {
    std::vector<size_t> pivots;
    Poly prev{Rational(1)};
    size_t row = 0;
    for (size_t col = 0; col < cols && row < M.size(); ++col) {
        size_t sel = row;
        while (sel < M.size() && M[sel][col].empty()) ++sel;
        if (sel == M.size()) continue;
        std::swap(M[sel], M[row]);
        const Poly p = M[row][col];
        for (size_t r = 0; r < M.size(); ++r) {
            if (r == row) continue;
            const Poly f = M[r][col];
            for (size_t j = 0; j < M[r].size(); ++j)
                M[r][j] = exact_quotient(poly::sub(poly::mul(p, M[r][j]), poly::mul(f, M[row][j])), prev);
        }
        prev = p;
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

namespace {

// Integer rows with the same solutions, then fraction-free Gauss-Jordan over Z.
std::vector<std::vector<mpz_class>> integer_rows(const std::vector<std::vector<Rational>>& rows) {
    std::vector<std::vector<mpz_class>> out;
    for (const auto& row : rows) {
        mpz_class l = 1;
        for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.raw().get_den_mpz_t());
        std::vector<mpz_class> r;
        for (const auto& x : row) {
            mpz_class v;
            mpz_divexact(v.get_mpz_t(), l.get_mpz_t(), x.raw().get_den_mpz_t());
            r.push_back(v * x.raw().get_num());
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<size_t> bareiss(std::vector<std::vector<mpz_class>>& M, size_t cols) {
    std::vector<size_t> pivots;
    mpz_class prev = 1, t;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < M.size(); ++col) {
        size_t sel = row;
        while (sel < M.size() && M[sel][col] == 0) ++sel;
        if (sel == M.size()) continue;
        std::swap(M[sel], M[row]);
        const mpz_class p = M[row][col];
        for (size_t r = 0; r < M.size(); ++r) {
            if (r == row) continue;
            const mpz_class f = M[r][col];
            for (size_t j = 0; j < M[r].size(); ++j) {
                t = p * M[r][j] - f * M[row][j];
                mpz_divexact(M[r][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = p;
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

template <>
std::optional<std::vector<Rational>> solve_barycentric<Rational>(const std::vector<Point<Rational>>& verts,
                                                                 const Point<Rational>& x) {
    const size_t n = verts.size();
    const size_t k = x.size();
    std::vector<std::vector<Rational>> rows(k + 1, std::vector<Rational>(n + 1, Rational(1)));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < n; ++j) rows[i][j] = verts[j][i];
        rows[i][n] = x[i];
    }
    auto M = integer_rows(rows);
    auto piv = bareiss(M, n + 1);
    if (!piv.empty() && piv.back() == n) return std::nullopt;
    std::vector<Rational> lambda(n, Rational(0));
    for (size_t r = 0; r < piv.size(); ++r) lambda[piv[r]] = Rational(mpq_class(M[r][n], M[r][piv[r]]));
    return lambda;
}

template <>
std::optional<std::vector<InfScalar>> solve_barycentric<InfScalar>(const std::vector<Point<InfScalar>>& verts,
                                                                   const Point<InfScalar>& x) {
    const size_t n = verts.size();
    const size_t k = x.size();
    std::vector<std::vector<InfScalar>> rows(k + 1, std::vector<InfScalar>(n + 1, InfScalar(1)));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < n; ++j) rows[i][j] = verts[j][i];
        rows[i][n] = x[i];
    }
    auto M = clear_denominators(rows);
    auto piv = bareiss(M, n + 1);
    if (!piv.empty() && piv.back() == n) return std::nullopt;
    std::vector<InfScalar> lambda(n, InfScalar(0));
    for (size_t r = 0; r < piv.size(); ++r) lambda[piv[r]] = InfScalar(M[r][n], M[r][piv[r]]);
    return lambda;
}

template <>
int affine_rank<InfScalar>(const std::vector<Point<InfScalar>>& pts) {
    if (pts.size() <= 1) return 0;
    std::vector<std::vector<InfScalar>> rows;
    for (size_t j = 1; j < pts.size(); ++j) {
        std::vector<InfScalar> row;
        for (size_t i = 0; i < pts[j].size(); ++i) row.push_back(pts[j][i] - pts[0][i]);
        rows.push_back(row);
    }
    auto M = clear_denominators(rows);
    return static_cast<int>(bareiss(M, pts[0].size()).size());
}

template <class F>
int affine_rank(const std::vector<Point<F>>& pts) {
    if (pts.size() <= 1) return 0;
    std::vector<std::vector<F>> M;
    for (size_t j = 1; j < pts.size(); ++j) {
        std::vector<F> row;
        for (size_t i = 0; i < pts[j].size(); ++i) row.push_back(pts[j][i] - pts[0][i]);
        row.push_back(F(0));
        M.push_back(row);
    }
    return static_cast<int>(row_reduce(M, pts[0].size()).size());
}

template <class F>
std::vector<Point<F>> simplex_points(const Complex<F>& c, const Simplex& s) {
    std::vector<Point<F>> pts;
    pts.reserve(s.size());
    for (auto v : s) pts.push_back(c.point(v));
    return pts;
}

template <class F>
std::pair<Complex<F>, std::vector<VertexId>> Complex<F>::make_mapped(
    size_t ambient_dim, std::vector<Point<F>> points, std::vector<std::vector<VertexId>> simplexes,
    bool close_faces) {
    if (points.empty() || simplexes.empty()) throw InvalidInput("empty complex");
    for (const auto& p : points)
        if (p.size() != ambient_dim) throw InvalidInput("point with wrong ambient dimension");
    std::vector<VertexId> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](VertexId a, VertexId b) { return lex_less(points[a], points[b]); });
    std::vector<VertexId> remap(points.size());
    Complex c;
    c.ambient_dim_ = ambient_dim;
    for (size_t i = 0; i < order.size(); ++i) {
        remap[order[i]] = static_cast<VertexId>(i);
        c.points_.push_back(std::move(points[order[i]]));
        if (i > 0 && c.points_[i] == c.points_[i - 1]) throw InvalidInput("repeated vertex point");
    }
    std::set<Simplex> all;
    for (auto& s : simplexes) {
        if (s.empty()) throw InvalidInput("empty simplex");
        Simplex t;
        for (auto v : s) {
            if (v >= remap.size()) throw InvalidInput("simplex references unknown vertex");
            t.push_back(remap[v]);
        }
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end())
            throw InvalidInput("simplex with repeated vertex");
        if (close_faces) {
            const size_t n = t.size();
            for (unsigned mask = 1; mask < (1u << n); ++mask) {
                Simplex f;
                for (size_t i = 0; i < n; ++i)
                    if (mask & (1u << i)) f.push_back(t[i]);
                all.insert(std::move(f));
            }
        } else {
            all.insert(std::move(t));
        }
    }
    c.simplexes_.assign(all.begin(), all.end());
    std::stable_sort(c.simplexes_.begin(), c.simplexes_.end(),
                     [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
    c.index();
    return {std::move(c), std::move(remap)};
}

template <class F>
Complex<F> Complex<F>::make(size_t ambient_dim, std::vector<Point<F>> points,
                            std::vector<std::vector<VertexId>> simplexes, bool close_faces) {
    return make_mapped(ambient_dim, std::move(points), std::move(simplexes), close_faces).first;
}

template <class F>
void Complex<F>::index() {
    lookup_.clear();
    incident_.assign(points_.size(), {});
    boxes_.clear();
    for (size_t i = 0; i < simplexes_.size(); ++i) {
        lookup_[simplexes_[i]] = i;
        for (auto v : simplexes_[i]) incident_[v].push_back(i);
        boxes_.push_back(bounding_box(simplex_points(*this, simplexes_[i])));
    }
    closed_ = true;
    for (const auto& s : simplexes_) {
        if (s.size() == 1) continue;
        for (size_t skip = 0; skip < s.size() && closed_; ++skip) {
            Simplex f;
            for (size_t i = 0; i < s.size(); ++i)
                if (i != skip) f.push_back(s[i]);
            if (!lookup_.count(f)) closed_ = false;
        }
        if (!closed_) break;
    }
    maximal_.assign(simplexes_.size(), true);
    for (size_t i = 0; i < simplexes_.size(); ++i) maximal_[i] = cofaces(simplexes_[i]).size() <= 1;
    st_independent_.assign(simplexes_.size(), false);
    if constexpr (std::is_same_v<F, InfScalar>) {
        for (size_t i = 0; i < simplexes_.size(); ++i) {
            std::vector<Point<Rational>> sp;
            for (auto v : simplexes_[i]) sp.push_back(stpl::standard_part(points_[v]));
            st_independent_[i] = affine_rank(sp) == static_cast<int>(sp.size()) - 1;
        }
    }
    build_grid();
}

template <class F>
bool Complex<F>::st_may_contain(size_t i, const Point<Rational>& sx) const {
    if (!st_independent_[i]) return true;
    std::vector<Point<Rational>> sp;
    for (auto v : simplexes_[i]) sp.push_back(stpl::standard_part(points_[v]));
    auto lam = solve_barycentric(sp, sx);
    return lam && std::all_of(lam->begin(), lam->end(), [](const Rational& l) { return l.sign() >= 0; });
}

namespace {
long floor_div(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
    return q.get_si();
}
}  // namespace

template <class F>
void Complex<F>::build_grid() {
    grid_.clear();
    grid_axes_ = std::min<size_t>(2, ambient_dim_);
    std::vector<size_t> cand;
    for (size_t i = 0; i < simplexes_.size(); ++i)
        if (!closed_ || maximal_[i]) cand.push_back(i);
    if (cand.size() < 32 || grid_axes_ == 0) {
        grid_axes_ = 0;
        grid_n_ = 1;
        grid_.push_back(cand);
        return;
    }
    grid_n_ = static_cast<size_t>(std::sqrt(static_cast<double>(cand.size()))) + 1;
    if (grid_axes_ == 1) grid_n_ = cand.size() / 2 + 1;
    grid_lo_.assign(grid_axes_, Rational(0));
    grid_step_.assign(grid_axes_, Rational(1));
    for (size_t a = 0; a < grid_axes_; ++a) {
        Rational lo = FieldTraits<F>::standard_part(points_[0][a]), hi = lo;
        for (const auto& p : points_) {
            Rational v = FieldTraits<F>::standard_part(p[a]);
            if (v < lo) lo = v;
            if (hi < v) hi = v;
        }
        grid_lo_[a] = lo;
        grid_step_[a] = hi == lo ? Rational(1) : (hi - lo) / Rational(static_cast<long>(grid_n_));
    }
    size_t total = 1;
    for (size_t a = 0; a < grid_axes_; ++a) total *= grid_n_;
    grid_.assign(total, {});
    for (auto i : cand)
        for (auto c : grid_cells(boxes_[i].first, boxes_[i].second)) grid_[c].push_back(i);
}

template <class F>
std::vector<size_t> Complex<F>::grid_cells(const Point<F>& lo, const Point<F>& hi) const {
    if (grid_axes_ == 0) return {0};
    long n = static_cast<long>(grid_n_);
    auto cell = [&](size_t a, const F& v) {
        long c = floor_div((FieldTraits<F>::standard_part(v) - grid_lo_[a]) / grid_step_[a]);
        return std::clamp(c, 0L, n - 1);
    };
    std::vector<size_t> out;
    long x0 = cell(0, lo[0]), x1 = cell(0, hi[0]);
    long y0 = 0, y1 = 0;
    if (grid_axes_ == 2) {
        y0 = cell(1, lo[1]);
        y1 = cell(1, hi[1]);
    }
    for (long x = x0; x <= x1; ++x)
        for (long y = y0; y <= y1; ++y) out.push_back(static_cast<size_t>(x * (grid_axes_ == 2 ? n : 1) + y));
    return out;
}

template <class F>
int Complex<F>::dim() const {
    size_t d = 0;
    for (const auto& s : simplexes_) d = std::max(d, s.size());
    return static_cast<int>(d) - 1;
}

template <class F>
std::optional<size_t> Complex<F>::find(const Simplex& s) const {
    auto it = lookup_.find(s);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

template <class F>
std::optional<VertexId> Complex<F>::find_vertex(const Point<F>& p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p,
                               [](const Point<F>& a, const Point<F>& b) { return lex_less(a, b); });
    if (it == points_.end() || !(*it == p)) return std::nullopt;
    return static_cast<VertexId>(it - points_.begin());
}

template <class F>
std::vector<size_t> Complex<F>::cofaces(const Simplex& s) const {
    std::vector<size_t> out;
    if (s.empty()) {
        out.resize(simplexes_.size());
        std::iota(out.begin(), out.end(), 0);
        return out;
    }
    for (auto idx : incident_[s.front()])
        if (std::includes(simplexes_[idx].begin(), simplexes_[idx].end(), s.begin(), s.end()))
            out.push_back(idx);
    return out;
}

template <class F>
Point<F> Complex<F>::barycenter(const Simplex& s) const {
    Point<F> b(ambient_dim_, F(0));
    for (auto v : s)
        for (size_t i = 0; i < ambient_dim_; ++i) b[i] = b[i] + points_[v][i];
    F n(static_cast<long>(s.size()));
    for (auto& c : b) c = c / n;
    return b;
}

template <class F>
std::optional<std::vector<F>> Complex<F>::barycentric(const Simplex& s, const Point<F>& x) const {
    return solve_barycentric(simplex_points(*this, s), x);
}

template <class F>
bool Complex<F>::affinely_independent(const Simplex& s) const {
    return affine_rank(simplex_points(*this, s)) == static_cast<int>(s.size()) - 1;
}

template <class F>
std::optional<Simplex> Complex<F>::try_carrier(const Point<F>& x) const {
    if (x.size() != ambient_dim_) throw InvalidInput("point with wrong ambient dimension");
    if (auto v = find_vertex(x); v && find(Simplex{*v})) return Simplex{*v};
    Point<Rational> sx;
    if constexpr (std::is_same_v<F, InfScalar>) sx = stpl::standard_part(x);
    for (auto i : grid_[grid_cells(x, x).front()]) {
        if (!box_contains(boxes_[i], x)) continue;
        if constexpr (std::is_same_v<F, InfScalar>)
            if (!st_may_contain(i, sx)) continue;
        auto lam = barycentric(simplexes_[i], x);
        if (!lam) continue;
        bool nonneg = std::all_of(lam->begin(), lam->end(), [](const F& l) { return sign_of(l) >= 0; });
        if (!nonneg) continue;
        Simplex face;
        for (size_t j = 0; j < lam->size(); ++j)
            if (sign_of((*lam)[j]) > 0) face.push_back(simplexes_[i][j]);
        if (find(face)) return face;
    }
    return std::nullopt;
}

template <class F>
Simplex Complex<F>::carrier(const Point<F>& x) const {
    auto c = try_carrier(x);
    if (!c) throw InvalidInput("point is not in the realization");
    return *c;
}

template <class F>
std::vector<size_t> Complex<F>::open_star(const Point<F>& x) const {
    return cofaces(carrier(x));
}

template <class F>
Subcomplex Complex<F>::skeleton(int k) const {
    Subcomplex s;
    for (size_t i = 0; i < simplexes_.size(); ++i)
        if (static_cast<int>(simplexes_[i].size()) - 1 <= k) s.members.push_back(i);
    return s;
}

template <class F>
Subcomplex Complex<F>::all() const {
    Subcomplex s;
    s.members.resize(simplexes_.size());
    std::iota(s.members.begin(), s.members.end(), 0);
    return s;
}

template <class F>
Subcomplex Complex<F>::closure(const std::vector<size_t>& members) const {
    std::set<size_t> out;
    for (auto idx : members) {
        const auto& t = simplexes_[idx];
        const size_t n = t.size();
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            Simplex f;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) f.push_back(t[i]);
            if (auto j = find(f)) out.insert(*j);
        }
    }
    return Subcomplex{std::vector<size_t>(out.begin(), out.end())};
}

template <class F>
Complex<F> Complex<F>::sub(const Subcomplex& s) const {
    std::map<VertexId, VertexId> ids;
    std::vector<Point<F>> pts;
    std::vector<std::vector<VertexId>> simps;
    for (auto idx : s.members) {
        std::vector<VertexId> t;
        for (auto v : simplexes_[idx]) {
            auto [it, inserted] = ids.emplace(v, static_cast<VertexId>(pts.size()));
            if (inserted) pts.push_back(points_[v]);
            t.push_back(it->second);
        }
        simps.push_back(t);
    }
    return make(ambient_dim_, pts, simps);
}

template <class F>
std::vector<size_t> Complex<F>::maximal_near(const Point<F>& lo, const Point<F>& hi) const {
    std::set<size_t> out;
    std::pair<Point<F>, Point<F>> q{lo, hi};
    for (auto c : grid_cells(lo, hi))
        for (auto i : grid_[c])
            if (!(sign_of(box_gap(boxes_[i], q)) > 0)) out.insert(i);
    return {out.begin(), out.end()};
}

template <class F>
std::vector<size_t> Complex<F>::maximal() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < simplexes_.size(); ++i)
        if (maximal_[i]) out.push_back(i);
    return out;
}

UpComplex lift(const DownComplex& c) {
    std::vector<Point<InfScalar>> pts;
    for (const auto& p : c.points()) pts.push_back(lift_point<InfScalar>(p));
    return UpComplex::make(c.ambient_dim(), pts, c.simplexes());
}

DownComplex standard_part(const UpComplex& c) {
    std::vector<Point<Rational>> pts;
    for (const auto& p : c.points()) pts.push_back(standard_part(p));
    return DownComplex::make(c.ambient_dim(), pts, c.simplexes());
}

template <class F>
ValidationReport<F> validate_complex(const Complex<F>& c) {
    ValidationReport<F> rep;
    for (size_t i = 0; i < c.size(); ++i)
        if (!c.affinely_independent(c.simplex(i))) rep.dependent.push_back(i);
    std::vector<size_t> cand = c.is_closed() ? c.maximal() : c.all().members;
    for (size_t a = 0; a < cand.size(); ++a) {
        for (size_t b = a + 1; b < cand.size(); ++b) {
            const auto& s = c.simplex(cand[a]);
            const auto& t = c.simplex(cand[b]);
            if (std::includes(s.begin(), s.end(), t.begin(), t.end()) ||
                std::includes(t.begin(), t.end(), s.begin(), s.end()))
                continue;
            auto bs = bounding_box(simplex_points(c, s));
            auto bt = bounding_box(simplex_points(c, t));
            if (sign_of(box_gap(bs, bt)) > 0) continue;
            // maximize weight of s outside the common face over cl(s) cap cl(t).
            const size_t k = c.ambient_dim();
            const size_t n = s.size() + t.size();
            std::vector<std::vector<F>> A;
            std::vector<F> rhs;
            for (size_t i = 0; i < k; ++i) {
                std::vector<F> row(n, F(0));
                for (size_t j = 0; j < s.size(); ++j) row[j] = c.point(s[j])[i];
                for (size_t j = 0; j < t.size(); ++j) row[s.size() + j] = -c.point(t[j])[i];
                A.push_back(row);
                rhs.push_back(F(0));
            }
            std::vector<F> r1(n, F(0)), r2(n, F(0));
            for (size_t j = 0; j < s.size(); ++j) r1[j] = F(1);
            for (size_t j = 0; j < t.size(); ++j) r2[s.size() + j] = F(1);
            A.push_back(r1);
            A.push_back(r2);
            rhs.push_back(F(1));
            rhs.push_back(F(1));
            std::vector<F> obj(n, F(0));
            for (size_t j = 0; j < s.size(); ++j)
                if (!std::binary_search(t.begin(), t.end(), s[j])) obj[j] = F(1);
            auto res = lp::maximize(A, rhs, obj);
            if (res.status == lp::Status::optimal && sign_of(res.value) > 0)
                rep.bad_pairs.emplace_back(cand[a], cand[b]);
        }
    }
    rep.valid = rep.dependent.empty() && rep.bad_pairs.empty();
    return rep;
}

template <class F>
Subdivision<F> barycentric_subdivision(const Complex<F>& p, const Subcomplex& hold) {
    if (!p.is_closed()) throw InvalidInput("subdivision requires a closed complex");
    std::vector<bool> held(p.size(), false);
    for (auto idx : hold.members) {
        if (idx >= p.size()) throw InvalidInput("held subcomplex index out of range");
        held[idx] = true;
    }
    for (auto idx : hold.members)
        for (auto f : p.closure({idx}).members)
            if (!held[f]) throw InvalidInput("held subcomplex is not closed");

    std::vector<Point<F>> pts = p.points();
    std::vector<VertexId> bary(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        const auto& s = p.simplex(i);
        if (s.size() == 1) {
            bary[i] = s[0];
        } else if (!held[i]) {
            bary[i] = static_cast<VertexId>(pts.size());
            pts.push_back(p.barycenter(s));
        }
    }
    auto proper_faces = [&](size_t idx) {
        std::vector<size_t> out;
        const auto& t = p.simplex(idx);
        const size_t n = t.size();
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            Simplex f;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) f.push_back(t[i]);
            out.push_back(*p.find(f));
        }
        return out;
    };

    std::vector<std::vector<VertexId>> simps;
    std::vector<size_t> parents;
    for (size_t i = 0; i < p.size(); ++i) {
        if (held[i]) {
            simps.push_back(p.simplex(i));
            parents.push_back(i);
        }
    }
    std::vector<VertexId> chain;
    std::function<void(size_t, size_t)> walk = [&](size_t top, size_t cur) {
        chain.push_back(bary[cur]);
        auto faces = proper_faces(cur);
        simps.push_back(chain);
        parents.push_back(top);
        for (auto f : faces) {
            if (!held[f]) continue;
            std::vector<VertexId> s = chain;
            for (auto v : p.simplex(f)) s.push_back(v);
            simps.push_back(s);
            parents.push_back(top);
        }
        for (auto f : faces)
            if (!held[f]) walk(top, f);
        chain.pop_back();
    };
    for (size_t i = 0; i < p.size(); ++i)
        if (!held[i]) walk(i, i);

    auto [c, remap] = Complex<F>::make_mapped(p.ambient_dim(), pts, simps);
    std::vector<size_t> parent(c.size());
    for (size_t j = 0; j < simps.size(); ++j) {
        Simplex s;
        for (auto v : simps[j]) s.push_back(remap[v]);
        std::sort(s.begin(), s.end());
        parent[*c.find(s)] = parents[j];
    }
    return Subdivision<F>{std::move(c), std::move(parent)};
}

template <class F>
Subdivision<F> barycentric_subdivision(const Complex<F>& p, int rounds) {
    Subdivision<F> cur{p, {}};
    cur.parent.resize(p.size());
    std::iota(cur.parent.begin(), cur.parent.end(), 0);
    for (int r = 0; r < rounds; ++r) {
        auto next = barycentric_subdivision(cur.complex, Subcomplex{});
        for (auto& par : next.parent) par = cur.parent[par];
        cur = std::move(next);
    }
    return cur;
}

template <class F>
Complex<F> prism_triangulation(const Complex<F>& p) {
    if (!p.is_closed()) throw InvalidInput("prism requires a closed complex");
    std::vector<Point<F>> pts;
    for (const auto& x : p.points()) {
        for (int t = 0; t < 2; ++t) {
            Point<F> q = x;
            q.push_back(F(t));
            pts.push_back(q);
        }
    }
    std::vector<std::vector<VertexId>> simps;
    for (const auto& s : p.simplexes()) {
        for (size_t i = 0; i < s.size(); ++i) {
            std::vector<VertexId> t;
            for (size_t j = 0; j <= i; ++j) t.push_back(2 * s[j]);
            for (size_t j = i; j < s.size(); ++j) t.push_back(2 * s[j] + 1);
            simps.push_back(t);
        }
    }
    return Complex<F>::make(p.ambient_dim() + 1, pts, simps, true);
}

template <class F>
std::optional<Point<F>> star_intersection(const Point<F>& x, const Point<F>& y, const Complex<F>& p) {
    auto cx = p.carrier(x);
    auto cy = p.carrier(y);
    Simplex u;
    std::set_union(cx.begin(), cx.end(), cy.begin(), cy.end(), std::back_inserter(u));
    auto co = p.cofaces(u);
    if (co.empty()) return std::nullopt;
    size_t best = co.front();
    for (auto idx : co)
        if (p.simplex(idx).size() < p.simplex(best).size()) best = idx;
    return p.barycenter(p.simplex(best));
}

template <class F>
F linf(const Point<F>& a, const Point<F>& b) {
    F best(0);
    for (size_t i = 0; i < a.size(); ++i) {
        F d = (a[i] - b[i]).abs();
        if (best < d) best = d;
    }
    return best;
}

template <class F>
F mesh(const Complex<F>& p) {
    F best(0);
    for (auto idx : p.maximal()) {
        const auto& s = p.simplex(idx);
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j) {
                F d = linf(p.point(s[i]), p.point(s[j]));
                if (best < d) best = d;
            }
    }
    return best;
}

Rational simplex_distance(const std::vector<Point<Rational>>& a, const std::vector<Point<Rational>>& b) {
    const size_t k = a.front().size();
    const size_t na = a.size(), nb = b.size();
    const size_t n = na + nb + 1 + 2 * k;
    const size_t tcol = na + nb;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> rhs;
    for (size_t i = 0; i < k; ++i) {
        for (int sgn = 1; sgn >= -1; sgn -= 2) {
            std::vector<Rational> row(n, Rational(0));
            for (size_t j = 0; j < na; ++j) row[j] = a[j][i] * Rational(sgn);
            for (size_t j = 0; j < nb; ++j) row[na + j] = -b[j][i] * Rational(sgn);
            row[tcol] = Rational(-1);
            row[tcol + 1 + 2 * i + (sgn == 1 ? 0 : 1)] = Rational(1);
            A.push_back(row);
            rhs.push_back(Rational(0));
        }
    }
    std::vector<Rational> r1(n, Rational(0)), r2(n, Rational(0));
    for (size_t j = 0; j < na; ++j) r1[j] = Rational(1);
    for (size_t j = 0; j < nb; ++j) r2[na + j] = Rational(1);
    A.push_back(r1);
    A.push_back(r2);
    rhs.push_back(Rational(1));
    rhs.push_back(Rational(1));
    std::vector<Rational> obj(n, Rational(0));
    obj[tcol] = Rational(-1);
    auto res = lp::maximize(A, rhs, obj);
    if (res.status != lp::Status::optimal) throw InvalidInput("distance LP failed");
    return -res.value;
}

bool closed_simplexes_meet(const std::vector<Point<Rational>>& a, const std::vector<Point<Rational>>& b) {
    auto ba = bounding_box(a), bb = bounding_box(b);
    if (sign_of(box_gap(ba, bb)) > 0) return false;
    const size_t k = a.front().size();
    const size_t n = a.size() + b.size();
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> rhs;
    for (size_t i = 0; i < k; ++i) {
        std::vector<Rational> row(n, Rational(0));
        for (size_t j = 0; j < a.size(); ++j) row[j] = a[j][i];
        for (size_t j = 0; j < b.size(); ++j) row[a.size() + j] = -b[j][i];
        A.push_back(row);
        rhs.push_back(Rational(0));
    }
    std::vector<Rational> r1(n, Rational(0)), r2(n, Rational(0));
    for (size_t j = 0; j < a.size(); ++j) r1[j] = Rational(1);
    for (size_t j = 0; j < b.size(); ++j) r2[a.size() + j] = Rational(1);
    A.push_back(r1);
    A.push_back(r2);
    rhs.push_back(Rational(1));
    rhs.push_back(Rational(1));
    return lp::maximize(A, rhs, std::vector<Rational>(n, Rational(0))).status == lp::Status::optimal;
}

Rational min_distance(const DownComplex& c, std::span<const size_t> a, std::span<const size_t> b) {
    if (a.empty() || b.empty()) throw InvalidInput("min_distance of an empty set");
    std::optional<Rational> best;
    for (auto i : a) {
        auto pa = simplex_points(c, c.simplex(i));
        auto ba = bounding_box(pa);
        for (auto j : b) {
            auto pb = simplex_points(c, c.simplex(j));
            if (best && !(box_gap(ba, bounding_box(pb)) < *best)) continue;
            Rational d = simplex_distance(pa, pb);
            if (!best || d < *best) best = d;
            if (best->is_zero()) return *best;
        }
    }
    return *best;
}

template <class F>
F relative_volume(const std::vector<Point<F>>& outer, const std::vector<Point<F>>& inner) {
    const size_t k = outer.size() - 1;
    if (inner.size() != k + 1) return F(0);
    std::vector<std::vector<F>> coords;
    for (const auto& q : inner) {
        auto lam = solve_barycentric(outer, q);
        if (!lam) throw InvalidInput("inner simplex not in the outer affine hull");
        coords.push_back(std::vector<F>(lam->begin() + 1, lam->end()));
    }
    std::vector<std::vector<F>> M;
    for (size_t j = 1; j <= k; ++j) {
        std::vector<F> row;
        for (size_t i = 0; i < k; ++i) row.push_back(coords[j][i] - coords[0][i]);
        M.push_back(row);
    }
    // Determinant by elimination.
    F det(1);
    for (size_t col = 0; col < k; ++col) {
        size_t sel = col;
        while (sel < k && M[sel][col] == F(0)) ++sel;
        if (sel == k) return F(0);
        if (sel != col) {
            std::swap(M[sel], M[col]);
            det = -det;
        }
        det = det * M[col][col];
        for (size_t r = col + 1; r < k; ++r) {
            F f = M[r][col] / M[col][col];
            for (size_t j = col; j < k; ++j) M[r][j] = M[r][j] - f * M[col][j];
        }
    }
    return det.abs();
}

#define STPL_INSTANTIATE(F)                                                                          \
    template Point<F> lift_point<F>(const Point<Rational>&);                                         \
    template Point<Rational> standard_part<F>(const Point<F>&);                                      \
    template bool lex_less<F>(const Point<F>&, const Point<F>&);                                     \
    template class Complex<F>;                                                                       \
    template ValidationReport<F> validate_complex<F>(const Complex<F>&);                             \
    template Subdivision<F> barycentric_subdivision<F>(const Complex<F>&, const Subcomplex&);         \
    template Subdivision<F> barycentric_subdivision<F>(const Complex<F>&, int);                      \
    template Complex<F> prism_triangulation<F>(const Complex<F>&);                                   \
    template std::optional<Point<F>> star_intersection<F>(const Point<F>&, const Point<F>&,          \
                                                          const Complex<F>&);                        \
    template F mesh<F>(const Complex<F>&);                                                           \
    template F linf<F>(const Point<F>&, const Point<F>&);                                            \
    template F relative_volume<F>(const std::vector<Point<F>>&, const std::vector<Point<F>>&);       \
    template std::optional<std::vector<F>> solve_barycentric<F>(const std::vector<Point<F>>&,        \
                                                                const Point<F>&);                    \
    template int affine_rank<F>(const std::vector<Point<F>>&);                                       \
    template std::vector<Point<F>> simplex_points<F>(const Complex<F>&, const Simplex&);

STPL_INSTANTIATE(Rational)
STPL_INSTANTIATE(InfScalar)

}  // namespace stpl
