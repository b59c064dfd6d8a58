#include "olk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace olk {

namespace {

double term(const OrliczFn& phi, double x, double w) {
    if (x == 0.0) return 0.0;
    if (w == 0.0) return kInf;
    return phi(x / w) * w;
}

Seq padded(const Seq& x, std::size_t n) {
    std::vector<double> e(x.entries);
    e.resize(n, 0.0);
    return Seq(std::move(e));
}

struct Cells {
    std::vector<double> c, len, bounds, cum;
    std::size_t size() const { return c.size(); }
};

Cells positive_cells(const StepFn& f, const Weight& w) {
    const StepFn fs = decreasing_rearrangement(f);
    Cells cells;
    for (std::size_t k = 0; k < fs.cells(); ++k) {
        if (fs.value(k) == 0.0) break;
        if (std::isinf(fs.length(k)))
            throw std::invalid_argument("grid_search_P: positive value on an unbounded cell");
        cells.c.push_back(fs.value(k));
        cells.len.push_back(fs.length(k));
        cells.bounds.push_back(fs.right(k));
        cells.cum.push_back(w.cumulative(fs.right(k)));
    }
    if (cells.size() > 3) throw std::invalid_argument("grid_search_P: at most 3 positive cells");
    return cells;
}

// Lattice search over the leading n-1 levels; each axis k takes values from
// `axis(k, prev)` and the last level is its largest feasible value.
class LatticeSearch {
public:
    LatticeSearch(const Cells& cells, const OrliczFn& phi) : cl_(cells), phi_(phi) {}

    using Axis = std::function<std::vector<double>(std::size_t, double)>;

    void run(const Axis& axis) {
        std::vector<double> v(cl_.size());
        recurse(axis, v, 0, 0.0);
    }

    double best = kInf;
    std::vector<double> argbest;

private:
    double cap(std::size_t k, double used, double prev) const {
        double c = (cl_.cum[k] - used) / cl_.len[k];
        if (k > 0) c = std::min(c, prev);
        return c;
    }

    void recurse(const Axis& axis, std::vector<double>& v, std::size_t k, double used) {
        const std::size_t n = cl_.size();
        const double prev = k > 0 ? v[k - 1] : kInf;
        const double top = cap(k, used, prev);
        if (!(top > 0.0)) return;
        if (k + 1 == n) {
            v[k] = top;
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += cl_.len[i] * term(phi_, cl_.c[i], v[i]);
            if (s < best) {
                best = s;
                argbest = v;
            }
            return;
        }
        auto candidates = axis(k, prev);
        candidates.push_back(top);
        for (double x : candidates) {
            if (!(x > 0.0) || x > top) continue;
            v[k] = x;
            recurse(axis, v, k + 1, used + cl_.len[k] * x);
        }
    }

    const Cells& cl_;
    const OrliczFn& phi_;
};

}  // namespace

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: empty range");
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t r;
    do r = rng(); while (r >= limit);
    return static_cast<std::size_t>(r % range);
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

PermutationMin min_over_permutations(const Seq& x, const Seq& w, const OrliczFn& phi) {
    const std::size_t n = std::max(x.size(), w.size());
    if (n > 8) throw std::invalid_argument("min_over_permutations: n must be at most 8");
    const Seq xs = padded(decreasing_rearrangement(x), n);
    const Seq ws = padded(w, n);
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    PermutationMin out;
    out.value = ExtReal::infinity();
    out.argmin = Permutation::identity(n);
    bool first = true;
    do {
        ExtReal s(0.0);
        for (std::size_t i = 0; i < n; ++i) s += ExtReal(term(phi, xs[i], ws[sigma[i]]));
        ++out.evaluated;
        if (first || s < out.value) {
            out.value = s;
            out.argmin = Permutation(sigma);
            first = false;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

MatrixSides balanced_matrix_check(const Seq& x, const Seq& w, const Matrix& a, const OrliczFn& phi) {
    const std::size_t n = a.size();
    if (x.size() != n || w.size() != n) throw std::invalid_argument("balanced_matrix_check: size mismatch");
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("balanced_matrix_check: matrix must be square");
    for (std::size_t i = 0; i < n; ++i) {
        double rs = 0.0;
        double cs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (a[i][j] < 0.0) throw std::invalid_argument("balanced_matrix_check: negative entry");
            rs += a[i][j];
            cs += a[j][i];
        }
        if (std::abs(rs - cs) > 1e-12 * std::max(rs, cs))
            throw std::invalid_argument("balanced_matrix_check: row and column " + std::to_string(i) +
                                        " have different sums");
    }
    const Seq xs = decreasing_rearrangement(x);
    MatrixSides s;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a[i][j] == 0.0) continue;
            s.lhs += term(phi, xs[i], w[i]) * a[i][j];
            s.rhs += term(phi, xs[i], w[j]) * a[i][j];
        }
    return s;
}

Matrix random_balanced_matrix(std::size_t n, std::mt19937_64& rng) {
    Matrix a(n, std::vector<double>(n, 0.0));
    const std::size_t terms = 1 + uniform_index(rng, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t t = 0; t < terms; ++t) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
        const double coef = static_cast<double>(1 + uniform_index(rng, 3));
        for (std::size_t i = 0; i < n; ++i) a[i][perm[i]] += coef;
    }
    return a;
}

double grid_search_P(const StepFn& f, const Weight& w, const OrliczFn& phi, int resolution) {
    return grid_search_P_refined(f, w, phi, resolution, 0);
}

double grid_search_P_refined(const StepFn& f, const Weight& w, const OrliczFn& phi, int resolution, int levels) {
    if (resolution < 1) throw std::invalid_argument("grid_search_P: resolution must be positive");
    const Cells cells = positive_cells(f, w);
    if (cells.size() == 0) return 0.0;
    LatticeSearch search(cells, phi);
    // One spacing for every axis so that ties v_k = v_{k+1} lie on the lattice.
    double h = cells.cum[0] / cells.len[0] / resolution;
    search.run([&](std::size_t, double) {
        std::vector<double> xs;
        for (int i = 1; i <= resolution; ++i) xs.push_back(h * i);
        return xs;
    });
    constexpr int kHalfWidth = 16;
    constexpr double kShrink = 8.0;
    constexpr int kMaxRecentre = 64;
    for (int level = 0; level < levels && std::isfinite(search.best); ++level) {
        h /= kShrink;
        // Re-centre at this spacing until the incumbent stays put; narrow
        // valleys can hold the optimum several coarse cells away.
        for (int pass = 0; pass < kMaxRecentre; ++pass) {
            const std::vector<double> centre = search.argbest;
            search.run([&](std::size_t k, double) {
                std::vector<double> xs;
                for (int j = -kHalfWidth; j <= kHalfWidth; ++j) xs.push_back(centre[k] + h * j);
                return xs;
            });
            if (search.argbest == centre) break;
        }
    }
    return search.best;
}

Seq random_equimeasurable(const Seq& x, std::size_t zero_padding, std::uint64_t seed) {
    std::vector<double> e(x.entries);
    e.resize(x.size() + zero_padding, 0.0);
    std::mt19937_64 rng(seed);
    for (std::size_t i = e.size(); i > 1; --i) std::swap(e[i - 1], e[uniform_index(rng, i)]);
    return Seq(std::move(e));
}

}  // namespace olk
