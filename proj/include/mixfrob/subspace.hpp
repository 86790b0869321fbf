#pragma once

#include "mixfrob/qmat.hpp"

#include <map>
#include <vector>

namespace mixfrob {

// A subspace of Q^n stored by the rows of its reduced echelon basis; equal
// subspaces compare equal.
class QSubspace {
public:
    QSubspace() = default;
    explicit QSubspace(std::size_t ambient) : n_(ambient), basis_(0, ambient) {}
    static QSubspace span(std::size_t ambient, const std::vector<QVec>& vecs);
    static QSubspace full(std::size_t ambient);

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return basis_.rows(); }
    const QMat& basis() const { return basis_; }   // rows
    std::vector<QVec> vectors() const;
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const QVec& v) const;
    bool contains(const QSubspace& o) const;
    bool operator==(const QSubspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }

    // Coordinates of v (assumed inside) in the echelon basis: read off pivots.
    QVec coordinates(const QVec& v) const;

private:
    std::size_t n_ = 0;
    QMat basis_;
    std::vector<std::size_t> pivots_;
};

QSubspace kernel(const QMat& m);
QSubspace image(const QMat& m);                  // column space
QSubspace sum(const QSubspace& a, const QSubspace& b);
QSubspace intersection(const QSubspace& a, const QSubspace& b);
QSubspace preimage(const QMat& m, const QSubspace& s);   // {x : m x in s}
QSubspace apply(const QMat& m, const QSubspace& s);      // m(s)
bool is_invariant(const QMat& m, const QSubspace& s);

// Unit vectors e_j (j not a pivot of sub) completing sub to Q^n.
std::vector<QVec> echelon_complement(const QSubspace& sub);
// Unit-vector completion of sub inside big (sub subset of big).
std::vector<QVec> relative_complement(const QSubspace& big, const QSubspace& sub);

// Quotient Q^n / sub with representatives (section) and projection matrix.
struct Quotient {
    std::vector<QVec> representatives;   // columns of the section map
    QMat projection;                     // dim x n, projection * section = I
    QMat section() const;
};
Quotient quotient(const QSubspace& sub);

// Increasing filtration W_k for k in [lo, hi]; W_{lo-1} = 0, W_hi = everything.
class Flag {
public:
    Flag() = default;
    Flag(std::size_t ambient, std::map<int, QSubspace> steps);
    static Flag trivial(std::size_t ambient, int weight);

    std::size_t ambient() const { return n_; }
    const std::map<int, QSubspace>& steps() const { return steps_; }
    // W_k for any integer k (below range: 0, above: everything).
    QSubspace at(int k) const;
    int lo() const;
    int hi() const;
    // Weights k with W_k != W_{k-1}.
    std::vector<int> jumps() const;
    bool operator==(const Flag& o) const;

private:
    std::size_t n_ = 0;
    std::map<int, QSubspace> steps_;
};

}  // namespace mixfrob
