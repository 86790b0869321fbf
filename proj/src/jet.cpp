#include "mixfrob/jet.hpp"
#include "mixfrob/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

namespace mixfrob {

namespace {

std::size_t term_cap() {
    if (const char* s = std::getenv("MIXFROB_MAX_JET_TERMS")) {
        try {
            return static_cast<std::size_t>(std::stoull(s));
        } catch (...) {
        }
    }
    return 200000;
}

// compositions of `total` into n parts, lexicographically descending
void compositions(int n, int total, Exponent& cur, int pos, std::vector<Exponent>& out) {
    if (pos == n - 1) {
        cur[pos] = total;
        out.push_back(cur);
        return;
    }
    for (int k = total; k >= 0; --k) {
        cur[pos] = k;
        compositions(n, total - k, cur, pos + 1, out);
    }
}

}  // namespace

JetSpace::JetSpace(int nt, int ny, int D, int N)
    : nt_(nt), ny_(ny), D_(D), N_(N), K_(std::max(D, N)) {
    if (nt < 0 || ny < 0 || D < 0 || N < 0) throw DimensionMismatch("negative jet shape");
    int n = nt + ny;
    if (n == 0) {
        exps_.push_back({});
    } else {
        Exponent cur(n, 0);
        for (int total = 0; total <= K_; ++total) {
            std::vector<Exponent> layer;
            compositions(n, total, cur, 0, layer);
            for (auto& e : layer)
                if (admissible(e)) exps_.push_back(e);
            if (exps_.size() > term_cap())
                throw ResourceLimit("jet space exceeds " + std::to_string(term_cap()) +
                                    " monomials (set MIXFROB_MAX_JET_TERMS)");
        }
    }
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        index_[exps_[i]] = i;
        int td = 0, yd = 0;
        for (int v = 0; v < nt; ++v) td += exps_[i][v];
        for (int v = nt; v < n; ++v) yd += exps_[i][v];
        tdeg_.push_back(td);
        ydeg_.push_back(yd);
    }
    down_.assign(n, std::vector<long>(exps_.size(), -1));
    up_.assign(n, std::vector<long>(exps_.size(), -1));
    for (int v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            Exponent e = exps_[i];
            if (e[v] > 0) {
                --e[v];
                down_[v][i] = index(e);
                ++e[v];
            }
            ++e[v];
            up_[v][i] = index(e);
        }
    }
    // mul_[i] lists pairs (j, k) with e_j + e_k = e_i
    mul_.resize(exps_.size());
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        for (std::size_t k = 0; k < exps_.size(); ++k) {
            if (tdeg_[j] + tdeg_[k] > D_ || ydeg_[j] + ydeg_[k] > N_ ||
                tdeg_[j] + ydeg_[j] + tdeg_[k] + ydeg_[k] > K_)
                continue;
            Exponent e(n);
            for (int v = 0; v < n; ++v) e[v] = exps_[j][v] + exps_[k][v];
            mul_[index_.at(e)].emplace_back(j, k);
        }
    }
}

bool JetSpace::admissible(const Exponent& e) const {
    if (static_cast<int>(e.size()) != nvars()) return false;
    int td = 0, yd = 0;
    for (int v = 0; v < nvars(); ++v) {
        if (e[v] < 0) return false;
        (v < nt_ ? td : yd) += e[v];
    }
    return td <= D_ && yd <= N_ && td + yd <= K_;
}

long JetSpace::index(const Exponent& e) const {
    auto it = index_.find(e);
    return it == index_.end() ? -1 : static_cast<long>(it->second);
}

SpacePtr JetSpace::get(int nt, int ny, int D, int N) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, SpacePtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(nt, ny, D, N);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto sp = std::make_shared<const JetSpace>(nt, ny, D, N);
    cache[key] = sp;
    return sp;
}

// ---- Jet

Jet Jet::constant(SpacePtr sp, const Rat& q) {
    Jet j(std::move(sp));
    j.c_[0] = q;
    return j;
}

Jet Jet::variable(SpacePtr sp, int v) {
    Exponent e(sp->nvars(), 0);
    e.at(v) = 1;
    return monomial(std::move(sp), e, Rat(1));
}

Jet Jet::monomial(SpacePtr sp, const Exponent& e, const Rat& q) {
    Jet j(sp);
    long i = sp->index(e);
    if (i >= 0) j.c_[i] = q;
    return j;
}

Rat Jet::coeff(const Exponent& e) const {
    long i = sp_->index(e);
    return i < 0 ? Rat(0) : c_[i];
}

bool Jet::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& q) { return sgn(q) == 0; });
}

bool Jet::operator==(const Jet& o) const {
    return sp_->same_shape(*o.sp_) && c_ == o.c_;
}

void Jet::check(const Jet& o) const {
    if (!sp_ || !o.sp_ || !sp_->same_shape(*o.sp_)) throw DimensionMismatch("jets live in different spaces");
}

Jet Jet::operator+(const Jet& o) const {
    Jet r = *this;
    r += o;
    return r;
}
Jet Jet::operator-(const Jet& o) const {
    Jet r = *this;
    r -= o;
    return r;
}
Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}
Jet& Jet::operator+=(const Jet& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (sgn(o.c_[i]) != 0) c_[i] += o.c_[i];
    return *this;
}
Jet& Jet::operator-=(const Jet& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (sgn(o.c_[i]) != 0) c_[i] -= o.c_[i];
    return *this;
}

void Jet::add_product(const Jet& a, const Jet& b) {
    check(a);
    check(b);
    const auto& sp = *sp_;
    // cheap skip when either factor is zero
    if (a.is_zero() || b.is_zero()) return;
    Rat t;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        for (auto [j, k] : sp.products(i)) {
            if (sgn(a.c_[j]) == 0 || sgn(b.c_[k]) == 0) continue;
            mpq_mul(t.get_mpq_t(), a.c_[j].get_mpq_t(), b.c_[k].get_mpq_t());
            c_[i] += t;
        }
    }
}

Jet Jet::operator*(const Jet& o) const {
    check(o);
    Jet r(sp_);
    r.add_product(*this, o);
    return r;
}

Jet Jet::operator*(const Rat& s) const {
    Jet r = *this;
    if (sgn(s) == 0) return Jet(sp_);
    for (auto& q : r.c_)
        if (sgn(q) != 0) q *= s;
    return r;
}

Jet Jet::derivative(int v) const {
    Jet r(sp_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        long u = sp_->shift_up(v, i);
        if (u >= 0 && sgn(c_[u]) != 0) r.c_[i] = c_[u] * sp_->exponent(u)[v];
    }
    return r;
}

Jet Jet::integral(int v) const {
    Jet r(sp_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        long u = sp_->shift_up(v, i);
        if (u >= 0) r.c_[u] = c_[i] / Rat(sp_->exponent(u)[v]);
    }
    return r;
}

Jet Jet::truncate_in(int v, int deg) const {
    Jet r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (sp_->exponent(i)[v] > deg) r.c_[i] = 0;
    return r;
}

Jet Jet::truncate_ydeg(int deg) const {
    Jet r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (sp_->ydeg(i) > deg) r.c_[i] = 0;
    return r;
}

Jet Jet::at_zero(int v) const { return truncate_in(v, 0); }

Jet Jet::reciprocal() const {
    if (sgn(c_[0]) == 0) throw NoSolution("reciprocal of a jet with zero constant term");
    Rat inv0 = 1 / c_[0];
    Jet h = *this * inv0;
    h.c_[0] = 0;  // this = c0 (1 + h)
    Jet term = Jet::constant(sp_, Rat(1));
    Jet sum = term;
    for (int k = 1; k <= sp_->K(); ++k) {
        term = term * h;
        term = -term;
        if (term.is_zero()) break;
        sum += term;
    }
    return sum * inv0;
}

Jet Jet::embed(const SpacePtr& target, const std::vector<int>& varmap) const {
    if (static_cast<int>(varmap.size()) != sp_->nvars()) throw DimensionMismatch("embed: bad variable map");
    Jet r(target);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        Exponent e(target->nvars(), 0);
        bool ok = true;
        for (int v = 0; v < sp_->nvars(); ++v) {
            int e_v = sp_->exponent(i)[v];
            if (e_v == 0) continue;
            if (varmap[v] < 0) {
                ok = false;
                break;
            }
            e[varmap[v]] += e_v;
        }
        if (!ok) continue;
        long k = target->index(e);
        if (k >= 0) r.c_[k] += c_[i];
    }
    return r;
}

Jet Jet::compose(const std::vector<Jet>& subs) const {
    if (static_cast<int>(subs.size()) != sp_->nvars()) throw DimensionMismatch("compose: wrong number of series");
    if (subs.empty()) return *this;
    const SpacePtr& tg = subs[0].space();
    for (const auto& s : subs) {
        if (!s.space()->same_shape(*tg)) throw DimensionMismatch("compose: mixed target spaces");
        if (sgn(s.constant_term()) != 0) throw DimensionMismatch("compose: substituted series must vanish at 0");
    }
    // powers[v][p] = subs[v]^p, built lazily
    std::vector<std::vector<Jet>> powers(subs.size());
    auto power = [&](int v, int p) -> const Jet& {
        auto& pw = powers[v];
        if (pw.empty()) pw.push_back(Jet::constant(tg, Rat(1)));
        while (static_cast<int>(pw.size()) <= p) pw.push_back(pw.back() * subs[v]);
        return pw[p];
    };
    Jet r(tg);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        Jet term = Jet::constant(tg, c_[i]);
        for (int v = 0; v < sp_->nvars(); ++v) {
            int p = sp_->exponent(i)[v];
            if (p > 0) term = term * power(v, p);
        }
        r += term;
    }
    return r;
}

// ---- JMat

JMat::JMat(SpacePtr sp, std::size_t r, std::size_t c) : sp_(sp), r_(r), c_(c), a_(r * c, Jet(sp)) {}

JMat JMat::constant(SpacePtr sp, const QMat& m) {
    JMat r(sp, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j)[0] = m(i, j);
    return r;
}

JMat JMat::identity(SpacePtr sp, std::size_t n) { return constant(std::move(sp), QMat::identity(n)); }

JMat JMat::column(const std::vector<Jet>& v) {
    if (v.empty()) throw DimensionMismatch("empty jet column");
    JMat r(v[0].space(), v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) r(i, 0) = v[i];
    return r;
}

std::vector<Jet> JMat::col(std::size_t j) const {
    std::vector<Jet> out;
    for (std::size_t i = 0; i < r_; ++i) out.push_back((*this)(i, j));
    return out;
}

QMat JMat::constant_part() const { return coefficient(0); }

QMat JMat::coefficient(std::size_t mono) const {
    QMat m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j)[mono];
    return m;
}

bool JMat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Jet& j) { return j.is_zero(); });
}

bool JMat::operator==(const JMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

JMat JMat::operator+(const JMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("JMat +");
    JMat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}
JMat JMat::operator-(const JMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("JMat -");
    JMat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}
JMat JMat::operator-() const {
    JMat r = *this;
    for (auto& j : r.a_) j = -j;
    return r;
}
JMat JMat::operator*(const JMat& o) const {
    if (c_ != o.r_) throw DimensionMismatch("JMat *");
    JMat r(sp_, r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Jet& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < o.c_; ++j) r(i, j).add_product(x, o(k, j));
        }
    return r;
}
JMat JMat::operator*(const Rat& s) const {
    JMat r = *this;
    for (auto& j : r.a_) j = j * s;
    return r;
}
JMat JMat::scaled(const Jet& f) const {
    JMat r = *this;
    for (auto& j : r.a_) j = j * f;
    return r;
}
JMat JMat::transpose() const {
    JMat r(sp_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

JMat JMat::map(const std::function<Jet(const Jet&)>& f) const {
    JMat r = *this;
    for (auto& j : r.a_) j = f(j);
    if (!r.a_.empty()) r.sp_ = r.a_[0].space();
    return r;
}

JMat JMat::derivative(int v) const { return map([v](const Jet& j) { return j.derivative(v); }); }
JMat JMat::integral(int v) const { return map([v](const Jet& j) { return j.integral(v); }); }
JMat JMat::truncate_in(int v, int deg) const {
    return map([v, deg](const Jet& j) { return j.truncate_in(v, deg); });
}
JMat JMat::at_zero(int v) const { return map([v](const Jet& j) { return j.at_zero(v); }); }
JMat JMat::embed(const SpacePtr& target, const std::vector<int>& varmap) const {
    JMat r(target, r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].embed(target, varmap);
    return r;
}
JMat JMat::compose(const std::vector<Jet>& subs) const {
    if (subs.empty()) return *this;
    JMat r(subs[0].space(), r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].compose(subs);
    return r;
}

JMat commutator(const JMat& a, const JMat& b) { return a * b - b * a; }

JMat inverse(const JMat& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square jet matrix");
    auto inv0 = inverse(a.constant_part());
    if (!inv0) throw NoSolution("jet matrix not invertible at the origin");
    const auto& sp = a.space();
    JMat b0 = JMat::constant(sp, *inv0);
    // a = a0 (1 + h), a^{-1} = sum (-h)^k a0^{-1}
    JMat h = b0 * a - JMat::identity(sp, a.rows());
    JMat term = JMat::identity(sp, a.rows());
    JMat sum = term;
    for (int k = 1; k <= sp->K(); ++k) {
        term = -(term * h);
        if (term.is_zero()) break;
        sum = sum + term;
    }
    return sum * b0;
}

JetSolution solve_linear(const JMat& a, const JMat& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("solve_linear: row mismatch");
    const auto& sp = a.space();
    QMat a0 = a.constant_part();
    JetSolution out{JMat(sp, a.cols(), b.cols()), kernel_basis(a0)};
    // coefficients of a by monomial, skipping zeros
    std::vector<std::pair<std::size_t, QMat>> acoef;
    for (std::size_t m = 1; m < sp->size(); ++m) {
        QMat c = a.coefficient(m);
        if (!c.is_zero()) acoef.emplace_back(m, std::move(c));
    }
    for (std::size_t col = 0; col < b.cols(); ++col) {
        std::vector<QVec> xs(sp->size());
        for (std::size_t m = 0; m < sp->size(); ++m) {
            QVec rhs(a.rows());
            for (std::size_t i = 0; i < a.rows(); ++i) rhs[i] = b(i, col)[m];
            // subtract contributions a_g x_beta with g + beta = m, g != 0
            for (auto [g, beta] : sp->products(m)) {
                if (g == 0 || beta >= m) continue;
                auto it = std::lower_bound(acoef.begin(), acoef.end(), g,
                                           [](const auto& p, std::size_t v) { return p.first < v; });
                if (it == acoef.end() || it->first != g) continue;
                rhs = rhs - it->second * xs[beta];
            }
            auto x = solve(a0, rhs);
            if (!x) throw NoSolution("linear system inconsistent at monomial " + std::to_string(m));
            xs[m] = std::move(*x);
            for (std::size_t i = 0; i < a.cols(); ++i) out.x(i, col)[m] = xs[m][i];
        }
    }
    return out;
}

bool zero_within(const Jet& j, const std::vector<int>& dvars) {
    const auto& sp = *j.space();
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (sgn(j[i]) == 0) continue;
        bool trusted = true;
        for (int v : dvars)
            if (sp.shift_up(v, i) < 0) trusted = false;
        if (trusted) return false;
    }
    return true;
}

bool zero_within(const JMat& m, const std::vector<int>& dvars) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k)
            if (!zero_within(m(i, k), dvars)) return false;
    return true;
}

}  // namespace mixfrob

namespace mixfrob {

namespace {

bool trusted_sum(const JetSpace& sp, std::size_t i, const std::vector<int>& dvars) {
    Exponent e = sp.exponent(i);
    for (int v : dvars) ++e[v];
    return sp.admissible(e);
}

}  // namespace

bool zero_within_sum(const Jet& j, const std::vector<int>& dvars) {
    const auto& sp = *j.space();
    for (std::size_t i = 0; i < sp.size(); ++i)
        if (sgn(j[i]) != 0 && trusted_sum(sp, i, dvars)) return false;
    return true;
}

bool zero_within_sum(const JMat& m, const std::vector<int>& dvars) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k)
            if (!zero_within_sum(m(i, k), dvars)) return false;
    return true;
}

std::string first_nonzero(const JMat& m, const std::vector<int>& dvars) {
    const auto& sp = *m.space();
    for (std::size_t idx = 0; idx < sp.size(); ++idx) {
        bool trusted = true;
        for (int v : dvars)
            if (sp.shift_up(v, idx) < 0) trusted = false;
        if (!trusted) continue;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t k = 0; k < m.cols(); ++k)
                if (sgn(m(i, k)[idx]) != 0) {
                    std::string ex;
                    for (int e : sp.exponent(idx)) ex += (ex.empty() ? "" : ",") + std::to_string(e);
                    return "entry (" + std::to_string(i) + "," + std::to_string(k) + ") at exponent [" + ex +
                           "] = " + m(i, k)[idx].get_str();
                }
    }
    return {};
}

JMat jet_kernel(const JMat& m) {
    const auto& sp = m.space();
    QMat m0 = m.constant_part();
    auto k0 = kernel_basis(m0);
    JMat out(sp, m.cols(), k0.size());
    std::vector<std::pair<std::size_t, QMat>> mcoef;
    for (std::size_t g = 1; g < sp->size(); ++g) {
        QMat c = m.coefficient(g);
        if (!c.is_zero()) mcoef.emplace_back(g, std::move(c));
    }
    for (std::size_t col = 0; col < k0.size(); ++col) {
        std::vector<QVec> xs(sp->size(), QVec(m.cols()));
        xs[0] = k0[col];
        for (std::size_t a = 1; a < sp->size(); ++a) {
            QVec rhs(m.rows());
            for (auto [g, beta] : sp->products(a)) {
                if (g == 0) continue;
                auto it = std::lower_bound(mcoef.begin(), mcoef.end(), g,
                                           [](const auto& p, std::size_t v) { return p.first < v; });
                if (it == mcoef.end() || it->first != g) continue;
                rhs = rhs - it->second * xs[beta];
            }
            auto x = solve(m0, rhs);
            if (!x) throw NoSolution("kernel does not extend: rank of the jet matrix drops");
            xs[a] = std::move(*x);
        }
        for (std::size_t a = 0; a < sp->size(); ++a)
            for (std::size_t i = 0; i < m.cols(); ++i) out(i, col)[a] = xs[a][i];
    }
    return out;
}

}  // namespace mixfrob
