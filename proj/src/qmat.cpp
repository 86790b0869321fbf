#include "mixfrob/qmat.hpp"

#include "mixfrob/errors.hpp"

namespace mixfrob {

QMat::QMat(std::initializer_list<std::initializer_list<Rat>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (auto& row : rows) {
        if (row.size() != c_) throw DimensionMismatch("ragged matrix literal");
        for (auto& x : row) a_.push_back(x);
    }
}

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMat QMat::from_columns(const std::vector<QVec>& cols, std::size_t rows) {
    QMat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw DimensionMismatch("column length");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows, std::size_t cols) {
    QMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionMismatch("row length");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

QVec QMat::row(std::size_t i) const { return QVec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

QVec QMat::col(std::size_t j) const {
    QVec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

QMat QMat::transpose() const {
    QMat t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool QMat::is_zero() const {
    for (auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

QMat QMat::operator+(const QMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matrix +");
    QMat m(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
}

QMat QMat::operator-(const QMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matrix -");
    QMat m(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
}

QMat QMat::operator*(const QMat& o) const {
    if (c_ != o.r_) throw DimensionMismatch("matrix *");
    QMat m(r_, o.c_);
    Rat t;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Rat& x = (*this)(i, k);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j) {
                if (sgn(o(k, j)) == 0) continue;
                mpq_mul(t.get_mpq_t(), x.get_mpq_t(), o(k, j).get_mpq_t());
                m(i, j) += t;
            }
        }
    return m;
}

QMat QMat::operator*(const Rat& s) const {
    QMat m(*this);
    for (auto& x : m.a_) x *= s;
    return m;
}

QVec QMat::operator*(const QVec& v) const {
    if (v.size() != c_) throw DimensionMismatch("matrix * vector");
    QVec out(r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if (sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

QMat commutator(const QMat& a, const QMat& b) { return a * b - b * a; }

std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    Rat t;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && sgn(m(p, col)) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) swap(m(p, j), m(row, j));
        Rat inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            Rat f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                if (sgn(m(row, j)) == 0) continue;
                mpq_mul(t.get_mpq_t(), f.get_mpq_t(), m(row, j).get_mpq_t());
                m(i, j) -= t;
            }
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

std::size_t rank(QMat m) { return rref(m).size(); }

std::vector<QVec> kernel_basis(const QMat& m) {
    QMat r = m;
    auto piv = rref(r);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<QVec> out;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        QVec v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<QVec> solve(const QMat& m, const QVec& b) {
    if (b.size() != m.rows()) throw DimensionMismatch("solve rhs");
    QMat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    QVec x(m.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, m.cols());
    return x;
}

std::optional<QMat> inverse(const QMat& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square");
    std::size_t n = m.rows();
    QMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    QMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

Rat det(QMat m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("det of non-square");
    std::size_t n = m.rows();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(m(i, c)) == 0) continue;
            Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

bool is_zero(const QVec& v) {
    for (auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

QVec operator+(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector +");
    QVec c(a);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += b[i];
    return c;
}

QVec operator-(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector -");
    QVec c(a);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] -= b[i];
    return c;
}

QVec operator*(const Rat& s, const QVec& v) {
    QVec c(v);
    for (auto& x : c) x *= s;
    return c;
}

Rat dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec unit_vector(std::size_t n, std::size_t i) {
    QVec v(n);
    v[i] = 1;
    return v;
}

}  // namespace mixfrob
