#include "mixfrob/subspace.hpp"

#include "mixfrob/errors.hpp"

namespace mixfrob {

QSubspace QSubspace::span(std::size_t ambient, const std::vector<QVec>& vecs) {
    QMat m = QMat::from_rows(vecs, ambient);
    auto piv = rref(m);
    QSubspace s(ambient);
    s.basis_ = QMat(piv.size(), ambient);
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < ambient; ++j) s.basis_(i, j) = m(i, j);
    s.pivots_ = std::move(piv);
    return s;
}

QSubspace QSubspace::full(std::size_t ambient) {
    std::vector<QVec> e;
    for (std::size_t i = 0; i < ambient; ++i) e.push_back(unit_vector(ambient, i));
    return span(ambient, e);
}

std::vector<QVec> QSubspace::vectors() const {
    std::vector<QVec> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
}

QVec QSubspace::coordinates(const QVec& v) const {
    QVec c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
}

bool QSubspace::contains(const QVec& v) const {
    if (v.size() != n_) throw DimensionMismatch("subspace membership");
    QVec r = v;
    for (std::size_t i = 0; i < dim(); ++i) {
        Rat f = r[pivots_[i]];
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) r[j] -= f * basis_(i, j);
    }
    return is_zero(r);
}

bool QSubspace::contains(const QSubspace& o) const {
    if (o.n_ != n_) throw DimensionMismatch("subspace containment");
    for (std::size_t i = 0; i < o.dim(); ++i)
        if (!contains(o.basis_.row(i))) return false;
    return true;
}

QSubspace kernel(const QMat& m) { return QSubspace::span(m.cols(), kernel_basis(m)); }

QSubspace image(const QMat& m) {
    std::vector<QVec> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
    return QSubspace::span(m.rows(), cols);
}

QSubspace sum(const QSubspace& a, const QSubspace& b) {
    if (a.ambient() != b.ambient()) throw DimensionMismatch("subspace sum");
    auto v = a.vectors();
    for (auto& x : b.vectors()) v.push_back(x);
    return QSubspace::span(a.ambient(), v);
}

QSubspace intersection(const QSubspace& a, const QSubspace& b) {
    if (a.ambient() != b.ambient()) throw DimensionMismatch("subspace intersection");
    // Solve sum x_i a_i - sum y_j b_j = 0 and map back through a.
    std::size_t n = a.ambient(), da = a.dim(), db = b.dim();
    QMat m(n, da + db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t r = 0; r < n; ++r) m(r, i) = a.basis()(i, r);
    for (std::size_t j = 0; j < db; ++j)
        for (std::size_t r = 0; r < n; ++r) m(r, da + j) = -b.basis()(j, r);
    std::vector<QVec> out;
    for (auto& k : kernel_basis(m)) {
        QVec v(n);
        for (std::size_t i = 0; i < da; ++i)
            if (sgn(k[i]) != 0)
                for (std::size_t r = 0; r < n; ++r) v[r] += k[i] * a.basis()(i, r);
        out.push_back(std::move(v));
    }
    return QSubspace::span(n, out);
}

QSubspace preimage(const QMat& m, const QSubspace& s) {
    if (m.rows() != s.ambient()) throw DimensionMismatch("preimage");
    // x with m x in s  <=>  (complement functionals) m x = 0.  Use the
    // annihilator of s: rows y with y . s = 0.
    QMat sb = s.basis();
    auto ann = kernel_basis(sb);   // vectors orthogonal to every basis row
    if (ann.empty()) return QSubspace::full(m.cols());
    QMat a = QMat::from_rows(ann, s.ambient());
    return kernel(a * m);
}

QSubspace apply(const QMat& m, const QSubspace& s) {
    if (m.cols() != s.ambient()) throw DimensionMismatch("apply");
    std::vector<QVec> v;
    for (auto& x : s.vectors()) v.push_back(m * x);
    return QSubspace::span(m.rows(), v);
}

bool is_invariant(const QMat& m, const QSubspace& s) {
    for (auto& x : s.vectors())
        if (!s.contains(m * x)) return false;
    return true;
}

std::vector<QVec> echelon_complement(const QSubspace& sub) {
    std::vector<bool> piv(sub.ambient(), false);
    for (auto p : sub.pivots()) piv[p] = true;
    std::vector<QVec> out;
    for (std::size_t j = 0; j < sub.ambient(); ++j)
        if (!piv[j]) out.push_back(unit_vector(sub.ambient(), j));
    return out;
}

std::vector<QVec> relative_complement(const QSubspace& big, const QSubspace& sub) {
    if (!big.contains(sub)) throw DimensionMismatch("relative complement: not a subspace");
    // Greedily keep basis vectors of big that enlarge sub; big's echelon rows
    // are tried in order so the choice is deterministic.
    std::vector<QVec> out;
    QSubspace cur = sub;
    for (auto& v : big.vectors()) {
        if (cur.contains(v)) continue;
        out.push_back(v);
        cur = sum(cur, QSubspace::span(big.ambient(), {v}));
    }
    return out;
}

QMat Quotient::section() const {
    return QMat::from_columns(representatives, projection.cols());
}

Quotient quotient(const QSubspace& sub) {
    Quotient q;
    q.representatives = echelon_complement(sub);
    std::size_t n = sub.ambient(), k = q.representatives.size();
    // Projection: coordinates along the complement in the basis
    // (sub basis, complement) of Q^n.
    std::vector<QVec> cols = sub.vectors();
    for (auto& r : q.representatives) cols.push_back(r);
    QMat b = QMat::from_columns(cols, n);
    auto inv = inverse(b);
    if (!inv) throw DimensionMismatch("quotient basis not invertible");
    q.projection = QMat(k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) q.projection(i, j) = (*inv)(sub.dim() + i, j);
    return q;
}

Flag::Flag(std::size_t ambient, std::map<int, QSubspace> steps) : n_(ambient), steps_(std::move(steps)) {
    const QSubspace* prev = nullptr;
    for (auto& [k, s] : steps_) {
        if (s.ambient() != n_) throw DimensionMismatch("flag step ambient dimension");
        if (prev && !s.contains(*prev)) throw DimensionMismatch("flag is not increasing at " + std::to_string(k));
        prev = &s;
    }
    if (!steps_.empty() && steps_.rbegin()->second.dim() != n_)
        throw DimensionMismatch("flag is not exhaustive");
}

Flag Flag::trivial(std::size_t ambient, int weight) {
    return Flag(ambient, {{weight, QSubspace::full(ambient)}});
}

QSubspace Flag::at(int k) const {
    auto it = steps_.upper_bound(k);
    if (it == steps_.begin()) return QSubspace(n_);
    return std::prev(it)->second;
}

int Flag::lo() const { return steps_.empty() ? 0 : steps_.begin()->first; }
int Flag::hi() const { return steps_.empty() ? 0 : steps_.rbegin()->first; }

std::vector<int> Flag::jumps() const {
    std::vector<int> out;
    std::size_t prev = 0;
    for (auto& [k, s] : steps_) {
        if (s.dim() != prev) out.push_back(k);
        prev = s.dim();
    }
    return out;
}

bool Flag::operator==(const Flag& o) const {
    if (n_ != o.n_) return false;
    int a = std::min(lo(), o.lo()), b = std::max(hi(), o.hi());
    for (int k = a; k <= b; ++k)
        if (!(at(k) == o.at(k))) return false;
    return true;
}

}  // namespace mixfrob
