#include "mixfrob/polytope.hpp"
#include "mixfrob/errors.hpp"
#include "mixfrob/qmat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace mixfrob {

namespace {

long dotl(const IVec& a, const IVec& b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Primitive integer multiple of a rational vector.
IVec primitive(const QVec& v) {
    mpz_class l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> z;
    mpz_class g = 0;
    for (const auto& q : v) {
        mpz_class x = q.get_num() * (l / q.get_den());
        z.push_back(x);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    IVec out;
    for (auto& x : z) out.push_back(mpz_class(x / g).get_si());
    return out;
}

void subsets(int n, int k, int start, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
    if (static_cast<int>(cur.size()) == k) {
        f(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, f);
        cur.pop_back();
    }
}

std::size_t normal_rank(const std::vector<const Facet*>& fs, int d) {
    if (fs.empty()) return 0;
    QMat m(fs.size(), d);
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (int j = 0; j < d; ++j) m(i, j) = Rat(fs[i]->normal[j]);
    return rank(m);
}

}  // namespace

LatticePolytope::LatticePolytope(int d, std::vector<IVec> points) : d_(d) {
    if (d < 1) throw NotFullDimensional("dimension must be positive");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != d) throw DimensionMismatch("vertex of wrong length");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (static_cast<int>(points.size()) < d + 1) throw NotFullDimensional("too few points");
    {
        QMat diff(points.size() - 1, d);
        for (std::size_t i = 1; i < points.size(); ++i)
            for (int j = 0; j < d; ++j) diff(i - 1, j) = Rat(points[i][j] - points[0][j]);
        if (static_cast<int>(rank(diff)) < d) throw NotFullDimensional("points span a proper affine subspace");
    }
    std::set<std::pair<IVec, long>> seen;
    std::vector<int> cur;
    subsets(points.size(), d, 0, cur, [&](const std::vector<int>& idx) {
        QMat m(d - 1, d);
        for (int i = 1; i < d; ++i)
            for (int j = 0; j < d; ++j) m(i - 1, j) = Rat(points[idx[i]][j] - points[idx[0]][j]);
        auto ker = kernel_basis(m);
        if (ker.size() != 1) return;
        IVec n = primitive(ker[0]);
        long c = dotl(n, points[idx[0]]);
        bool lo = true, hi = true;
        for (const auto& p : points) {
            long v = dotl(n, p);
            if (v < c) lo = false;
            if (v > c) hi = false;
        }
        if (!lo && !hi) return;
        if (!lo) {
            for (auto& x : n) x = -x;
            c = -c;
        }
        // the supporting hyperplane must meet the polytope in a facet
        std::vector<QVec> rows;
        IVec base;
        for (const auto& p : points)
            if (dotl(n, p) == c) {
                if (base.empty()) base = p;
                QVec r(d);
                for (int j = 0; j < d; ++j) r[j] = Rat(p[j] - base[j]);
                rows.push_back(r);
            }
        if (static_cast<int>(rank(QMat::from_rows(rows, d))) != d - 1) return;
        seen.insert({n, c});
    });
    for (const auto& [n, c] : seen) facets_.push_back({n, c});
    for (const auto& p : points) {
        std::vector<const Facet*> act;
        for (const auto& f : facets_)
            if (dotl(f.normal, p) == f.offset) act.push_back(&f);
        if (static_cast<int>(normal_rank(act, d)) == d) vertices_.push_back(p);
    }
}

bool LatticePolytope::contains(const IVec& m, long k) const {
    for (const auto& f : facets_)
        if (dotl(f.normal, m) < k * f.offset) return false;
    return true;
}

std::vector<IVec> lattice_points(const LatticePolytope& p, long k) {
    if (k < 0) throw DimensionMismatch("negative dilation");
    int d = p.dim();
    IVec lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
        lo[j] = hi[j] = p.vertices()[0][j];
        for (const auto& v : p.vertices()) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
        lo[j] *= k;
        hi[j] *= k;
    }
    std::vector<IVec> out;
    IVec x = lo;
    while (true) {
        if (p.contains(x, k)) out.push_back(x);
        int j = d - 1;
        while (j >= 0 && x[j] == hi[j]) {
            x[j] = lo[j];
            --j;
        }
        if (j < 0) break;
        ++x[j];
    }
    return out;  // odometer order is already lexicographic
}

std::size_t lattice_point_count(const LatticePolytope& p) { return lattice_points(p, 1).size(); }

bool is_reflexive(const LatticePolytope& p) {
    for (const auto& f : p.facets())
        if (f.offset != -1) return false;
    return true;
}

LatticePolytope dual_polytope(const LatticePolytope& p) {
    std::vector<IVec> verts;
    for (const auto& f : p.facets()) {
        if (f.offset >= 0) throw Unsupported("origin is not interior; dual is unbounded");
        IVec v = f.normal;
        for (auto& x : v) {
            if (x % f.offset != 0) throw Unsupported("dual polytope has non-integral vertices");
            x /= -f.offset;
        }
        verts.push_back(v);
    }
    return LatticePolytope(p.dim(), verts);
}

int face_codimension(const LatticePolytope& p, long k, const IVec& m) {
    if (k < 0 || !p.contains(m, k)) throw DimensionMismatch("point not in the cone");
    if (k == 0) return p.dim() + 1;
    std::vector<const Facet*> act;
    for (const auto& f : p.facets())
        if (dotl(f.normal, m) == k * f.offset) act.push_back(&f);
    return static_cast<int>(normal_rank(act, p.dim()));
}

bool in_weight_index_set(const LatticePolytope& p, int ell, long k, const IVec& m) {
    return face_codimension(p, k, m) < ell;
}

GenerationResult degree_one_generates(const LatticePolytope& p, long kmax) {
    auto s1 = lattice_points(p, 1);
    std::set<IVec> sums(s1.begin(), s1.end());
    for (long k = 2; k <= kmax; ++k) {
        std::set<IVec> next;
        for (const auto& a : sums)
            for (const auto& b : s1) {
                IVec c(a.size());
                for (std::size_t j = 0; j < a.size(); ++j) c[j] = a[j] + b[j];
                next.insert(c);
            }
        auto full = lattice_points(p, k);
        if (next.size() != full.size() || !std::equal(full.begin(), full.end(), next.begin()))
            return {false, k};
        sums = std::move(next);
    }
    return {true, 0};
}

bool is_smooth_fano(const LatticePolytope& p) {
    if (p.dim() != 2) throw Unsupported("smoothness test implemented for d = 2 only");
    // order vertices by angle around the origin via the facet structure
    const auto& f = p.facets();
    for (const auto& fa : f) {
        std::vector<IVec> on;
        for (const auto& v : p.vertices())
            if (dotl(fa.normal, v) == fa.offset) on.push_back(v);
        if (on.size() != 2) return false;
        long det = on[0][0] * on[1][1] - on[0][1] * on[1][0];
        if (det != 1 && det != -1) return false;
    }
    return p.contains(IVec(2, 0)) && std::all_of(f.begin(), f.end(), [](const Facet& x) { return x.offset < 0; });
}

LatticePolytope parse_polytope(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int d = -1;
    std::vector<IVec> pts;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::vector<long> nums;
        std::string tok;
        while (ls >> tok) {
            std::size_t pos = 0;
            long v;
            try {
                v = std::stol(tok, &pos);
            } catch (...) {
                throw ParseError("line " + std::to_string(lineno) + ": not an integer '" + tok + "'");
            }
            if (pos != tok.size()) throw ParseError("line " + std::to_string(lineno) + ": not an integer '" + tok + "'");
            nums.push_back(v);
        }
        if (nums.empty()) continue;
        if (d < 0) {
            if (nums.size() != 1 || nums[0] < 1) throw ParseError("first line must hold the dimension");
            d = static_cast<int>(nums[0]);
            continue;
        }
        if (static_cast<int>(nums.size()) != d)
            throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(d) + " coordinates");
        pts.push_back(nums);
    }
    if (d < 0) throw ParseError("empty polytope file");
    try {
        return LatticePolytope(d, pts);
    } catch (const NotFullDimensional& e) {
        throw ParseError(e.what());
    }
}

}  // namespace mixfrob
