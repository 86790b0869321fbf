#pragma once

#include "mixfrob/rat.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace mixfrob {

using QVec = std::vector<Rat>;

// Dense row-major matrix with exact entries.
class QMat {
public:
    QMat() = default;
    QMat(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}
    QMat(std::initializer_list<std::initializer_list<Rat>> rows);

    static QMat identity(std::size_t n);
    static QMat from_columns(const std::vector<QVec>& cols, std::size_t rows);
    static QMat from_rows(const std::vector<QVec>& rows, std::size_t cols);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    QVec row(std::size_t i) const;
    QVec col(std::size_t j) const;
    QMat transpose() const;
    bool is_zero() const;

    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    QMat operator*(const QMat& o) const;
    QMat operator*(const Rat& s) const;
    QVec operator*(const QVec& v) const;
    QMat operator-() const { return *this * Rat(-1); }
    bool operator==(const QMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

QMat commutator(const QMat& a, const QMat& b);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& m);
std::size_t rank(QMat m);
// Basis of {x : m x = 0} (columns), normalized from the rref.
std::vector<QVec> kernel_basis(const QMat& m);
// One solution of m x = b, or nullopt if inconsistent.
std::optional<QVec> solve(const QMat& m, const QVec& b);
std::optional<QMat> inverse(const QMat& m);
Rat det(QMat m);

bool is_zero(const QVec& v);
QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const Rat& s, const QVec& v);
Rat dot(const QVec& a, const QVec& b);
QVec unit_vector(std::size_t n, std::size_t i);

}  // namespace mixfrob
