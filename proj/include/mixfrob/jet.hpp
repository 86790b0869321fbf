#pragma once

#include "mixfrob/qmat.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace mixfrob {

using Exponent = std::vector<int>;

// Monomials in base variables t_1..t_nt and unfolding variables y_1..y_ny,
// truncated to the ideal (t)^{D+1} + (y)^{N+1} + (t,y)^{K+1}, K = max(D, N).
// The total-degree cap keeps the space closed under the y-recursion, where
// every y-order is paid for with one t-derivative.
class JetSpace {
public:
    static std::shared_ptr<const JetSpace> get(int nt, int ny, int D, int N);

    int nt() const { return nt_; }
    int ny() const { return ny_; }
    int nvars() const { return nt_ + ny_; }
    int D() const { return D_; }
    int N() const { return N_; }
    int K() const { return K_; }
    std::size_t size() const { return exps_.size(); }
    const Exponent& exponent(std::size_t i) const { return exps_[i]; }
    int tdeg(std::size_t i) const { return tdeg_[i]; }
    int ydeg(std::size_t i) const { return ydeg_[i]; }
    bool admissible(const Exponent& e) const;
    // Index of e, or -1 if it lies outside the truncation.
    long index(const Exponent& e) const;

    const std::vector<std::pair<std::size_t, std::size_t>>& products(std::size_t i) const { return mul_[i]; }
    long shift_down(int v, std::size_t i) const { return down_[v][i]; }   // e - e_v
    long shift_up(int v, std::size_t i) const { return up_[v][i]; }       // e + e_v

    bool same_shape(const JetSpace& o) const {
        return nt_ == o.nt_ && ny_ == o.ny_ && D_ == o.D_ && N_ == o.N_;
    }

    JetSpace(int nt, int ny, int D, int N);

private:
    int nt_, ny_, D_, N_, K_;
    std::vector<Exponent> exps_;
    std::vector<int> tdeg_, ydeg_;
    std::map<Exponent, std::size_t> index_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> mul_;
    std::vector<std::vector<long>> down_, up_;
};

using SpacePtr = std::shared_ptr<const JetSpace>;

// Truncated power series with exact coefficients over a JetSpace.
class Jet {
public:
    Jet() = default;
    explicit Jet(SpacePtr sp) : sp_(std::move(sp)), c_(sp_->size()) {}
    static Jet constant(SpacePtr sp, const Rat& q);
    static Jet variable(SpacePtr sp, int v);
    static Jet monomial(SpacePtr sp, const Exponent& e, const Rat& q);

    const SpacePtr& space() const { return sp_; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    Rat& operator[](std::size_t i) { return c_[i]; }
    Rat coeff(const Exponent& e) const;
    const Rat& constant_term() const { return c_[0]; }
    bool is_zero() const;
    bool operator==(const Jet& o) const;

    Jet operator+(const Jet& o) const;
    Jet operator-(const Jet& o) const;
    Jet operator-() const;
    Jet operator*(const Jet& o) const;
    Jet operator*(const Rat& s) const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    // this += a * b without a temporary product.
    void add_product(const Jet& a, const Jet& b);

    Jet derivative(int v) const;
    // Definite integral from 0 in variable v.
    Jet integral(int v) const;
    // Drop every term whose exponent in v exceeds deg.
    Jet truncate_in(int v, int deg) const;
    // Drop terms of total y-degree above deg.
    Jet truncate_ydeg(int deg) const;
    // Set variable v to zero.
    Jet at_zero(int v) const;
    Jet reciprocal() const;
    // Reinterpret in another space: variable i of this space becomes variable
    // varmap[i] of the target; terms falling outside the target are dropped.
    Jet embed(const SpacePtr& target, const std::vector<int>& varmap) const;
    // Substitute series (all in one target space, zero constant term) for the
    // variables of this jet.
    Jet compose(const std::vector<Jet>& subs) const;

private:
    void check(const Jet& o) const;
    SpacePtr sp_;
    std::vector<Rat> c_;
};

// Matrices (and vectors, as single columns) with jet entries.
class JMat {
public:
    JMat() = default;
    JMat(SpacePtr sp, std::size_t r, std::size_t c);
    static JMat constant(SpacePtr sp, const QMat& m);
    static JMat identity(SpacePtr sp, std::size_t n);
    static JMat column(const std::vector<Jet>& v);

    const SpacePtr& space() const { return sp_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Jet& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Jet& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    std::vector<Jet> col(std::size_t j) const;

    QMat constant_part() const;
    QMat coefficient(std::size_t mono) const;
    bool is_zero() const;
    bool operator==(const JMat& o) const;

    JMat operator+(const JMat& o) const;
    JMat operator-(const JMat& o) const;
    JMat operator-() const;
    JMat operator*(const JMat& o) const;
    JMat operator*(const Rat& s) const;
    JMat scaled(const Jet& f) const;
    JMat transpose() const;

    JMat derivative(int v) const;
    JMat integral(int v) const;
    JMat truncate_in(int v, int deg) const;
    JMat at_zero(int v) const;
    JMat embed(const SpacePtr& target, const std::vector<int>& varmap) const;
    JMat compose(const std::vector<Jet>& subs) const;
    JMat map(const std::function<Jet(const Jet&)>& f) const;

private:
    SpacePtr sp_;
    std::size_t r_ = 0, c_ = 0;
    std::vector<Jet> a_;
};

JMat commutator(const JMat& a, const JMat& b);
// Inverse of a jet matrix whose constant part is invertible.
JMat inverse(const JMat& a);

// Order-by-order solve of A x = b.  Returns a particular solution; when A(0)
// is singular the free variables of each order are set to zero.  The kernel of
// A(0) is reported separately.
struct JetSolution {
    JMat x;
    std::vector<QVec> kernel0;
};
JetSolution solve_linear(const JMat& a, const JMat& b);

// True when the jet vanishes at every monomial where all listed derivative
// variables can be trusted (e + e_v admissible for each v in dvars).
bool zero_within(const Jet& j, const std::vector<int>& dvars = {});
bool zero_within(const JMat& m, const std::vector<int>& dvars = {});
// Same, but requiring e + Σ e_v admissible (for iterated derivatives).
bool zero_within_sum(const Jet& j, const std::vector<int>& dvars);
bool zero_within_sum(const JMat& m, const std::vector<int>& dvars);
// Human-readable location of the first trusted nonzero entry, or "".
std::string first_nonzero(const JMat& m, const std::vector<int>& dvars = {});

// Columns spanning the kernel of a constant-rank jet matrix, extending the
// order-0 kernel basis order by order.  Throws NoSolution if the rank drops.
JMat jet_kernel(const JMat& m);

}  // namespace mixfrob
