#include "mixfrob/bmodel.hpp"
#include "mixfrob/errors.hpp"
#include "mixfrob/gauge.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mixfrob {

namespace {

// ---- univariate polynomials over Q, c[i] = coefficient of x^i ----

using UPoly = std::vector<Rat>;

void trim(UPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}
int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly sub(const UPoly& a, const UPoly& b) {
    UPoly c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    trim(c);
    return c;
}
UPoly add(const UPoly& a, const UPoly& b) {
    UPoly c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    trim(c);
    return c;
}
UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    trim(c);
    return c;
}
UPoly scale(UPoly a, const Rat& s) {
    for (auto& x : a) x *= s;
    trim(a);
    return a;
}
std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
    UPoly q;
    trim(a);
    if (deg(a) < deg(b)) return {q, a};
    q.assign(a.size() - b.size() + 1, Rat(0));
    Rat lead = b.back();
    while (deg(a) >= deg(b)) {
        std::size_t sh = a.size() - b.size();
        Rat c = a.back() / lead;
        q[sh] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + sh] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}
UPoly monic(const UPoly& p) { return p.empty() ? p : scale(p, Rat(1) / p.back()); }
UPoly gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}
UPoly derivative(const UPoly& p) {
    UPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}
Rat eval(const UPoly& p, const Rat& x) {
    Rat v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

// Interpolating polynomial through (i, y_i), i = 0..n-1 (Newton form).
UPoly interpolate(const std::vector<Rat>& y) {
    std::size_t n = y.size();
    std::vector<Rat> dd = y;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / static_cast<long>(j);
    UPoly p, basis{Rat(1)};
    for (std::size_t j = 0; j < n; ++j) {
        p = add(p, scale(basis, dd[j]));
        basis = mul(basis, UPoly{Rat(-static_cast<long>(j)), Rat(1)});
    }
    return p;
}

// ---- bivariate: B[j] = coefficient of t2^j, a polynomial in t1 ----

using BPoly = std::vector<UPoly>;

void trim(BPoly& p) {
    while (!p.empty() && p.back().empty()) p.pop_back();
}
int t1_degree(const BPoly& p) {
    int d = 0;
    for (const auto& c : p) d = std::max(d, deg(c));
    return d;
}
BPoly combine(const BPoly& a, const BPoly& b, const Rat& c) {
    BPoly r(std::max(a.size(), b.size()));
    for (std::size_t j = 0; j < a.size(); ++j) r[j] = add(r[j], a[j]);
    for (std::size_t j = 0; j < b.size(); ++j) r[j] = add(r[j], scale(b[j], c));
    trim(r);
    return r;
}

// Res_{t2}(P, Q) ∈ Q[t1], by evaluation at t1 = 0, 1, .. and interpolation.
UPoly resultant_t2(const BPoly& P, const BPoly& Q) {
    if (P.empty() || Q.empty()) return {};
    int p = static_cast<int>(P.size()) - 1, q = static_cast<int>(Q.size()) - 1;
    int bound = p * t1_degree(Q) + q * t1_degree(P);
    std::vector<Rat> ys;
    for (int x = 0; x <= bound; ++x) {
        int n = p + q;
        if (n == 0) {
            ys.push_back(Rat(1));
            continue;
        }
        QMat syl(n, n);
        for (int r = 0; r < q; ++r)
            for (int j = 0; j <= p; ++j) syl(r, r + p - j) = eval(P[j], Rat(x));
        for (int r = 0; r < p; ++r)
            for (int j = 0; j <= q; ++j) syl(q + r, r + q - j) = eval(Q[j], Rat(x));
        ys.push_back(det(syl));
    }
    return interpolate(ys);
}

// ---- polynomials in t2 over K = Q[t1]/(h), with dynamic splitting of h ----

struct Split {
    UPoly factor;
};

using KPoly = std::vector<UPoly>;

UPoly inverse_mod(const UPoly& a, const UPoly& h) {
    UPoly g = gcd(a, h);
    if (deg(g) > 0) throw Split{g};
    UPoly r0 = h, r1 = a, s0, s1{Rat(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly s2 = sub(s0, mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return divmod(scale(s0, Rat(1) / r0[0]), h).second;
}

void ktrim(KPoly& p) {
    while (!p.empty() && p.back().empty()) p.pop_back();
}

KPoly to_k(const BPoly& b, const UPoly& h) {
    KPoly k;
    for (const auto& c : b) k.push_back(divmod(c, h).second);
    ktrim(k);
    return k;
}

KPoly kmod(KPoly a, const KPoly& b, const UPoly& h) {
    UPoly inv = inverse_mod(b.back(), h);
    while (a.size() >= b.size()) {
        std::size_t sh = a.size() - b.size();
        UPoly c = divmod(mul(a.back(), inv), h).second;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + sh] = divmod(sub(a[i + sh], mul(c, b[i])), h).second;
        a.pop_back();
        ktrim(a);
    }
    return a;
}

KPoly kgcd(KPoly a, KPoly b, const UPoly& h) {
    while (!b.empty()) {
        KPoly r = kmod(a, b, h);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    UPoly inv = inverse_mod(a.back(), h);
    for (auto& c : a) c = divmod(mul(c, inv), h).second;
    return a;
}

// Some root α of h (h squarefree, h(0) ≠ 0) admits t2 ≠ 0 with P = Q1 = Q2 = 0.
bool component_has_solution(const UPoly& h, const BPoly& P, const BPoly& Q1, const BPoly& Q2) {
    if (deg(h) <= 0) return false;
    try {
        KPoly g = kgcd(kgcd(to_k(P, h), to_k(Q1, h), h), to_k(Q2, h), h);
        if (g.empty()) return true;
        int e = static_cast<int>(g.size()) - 1;
        for (int j = 0; j <= e; ++j) {
            if (g[j].empty()) continue;
            inverse_mod(g[j], h);
            return e - j > 0;
        }
        return false;
    } catch (const Split& s) {
        UPoly h1 = monic(s.factor);
        UPoly h2 = monic(divmod(h, h1).first);
        return component_has_solution(h1, P, Q1, Q2) || component_has_solution(h2, P, Q1, Q2);
    }
}

// Torus solution of P = Q1 = Q2 = 0 (P has positive t2-degree).
bool torus_common_zero(const BPoly& P, const BPoly& Q1, const BPoly& Q2) {
    std::vector<UPoly> res;
    int tries = static_cast<int>(P.size()) + 1;
    for (int c = 1; c <= tries && res.size() < 2; ++c) {
        UPoly r = resultant_t2(P, combine(Q1, Q2, Rat(c)));
        if (!r.empty()) res.push_back(r);
    }
    // P shares a non-monomial factor with Q1 and Q2: a whole curve of zeros
    if (res.size() < 2) return true;
    UPoly h = gcd(res[0], res[1]);
    while (!h.empty() && sgn(h[0]) == 0) h.erase(h.begin());
    if (deg(h) <= 0) return false;
    h = monic(divmod(h, gcd(h, derivative(h))).first);
    return component_has_solution(h, P, Q1, Q2);
}

IVec plus(const IVec& a, const IVec& b) {
    IVec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

IVec cone_key(long k, const IVec& m) {
    IVec key{k};
    key.insert(key.end(), m.begin(), m.end());
    return key;
}

std::size_t position(const std::vector<IVec>& pts, const IVec& m) {
    auto it = std::find(pts.begin(), pts.end(), m);
    if (it == pts.end()) throw DimensionMismatch("point outside the dilated polytope");
    return static_cast<std::size_t>(it - pts.begin());
}

// Newton polytope of f is Δ (support inside Δ, vertices of Δ present).
bool newton_is(const LaurentPoly& f, const LatticePolytope& delta) {
    if (f.d != delta.dim() || f.terms.empty()) return false;
    for (const auto& [m, a] : f.terms)
        if (!delta.contains(m)) return false;
    for (const auto& v : delta.vertices())
        if (f.terms.find(v) == f.terms.end()) return false;
    return true;
}

// Squarefree away from 0, given g(0) ≠ 0.
bool separable(const UPoly& g) { return deg(gcd(g, derivative(g))) == 0; }

std::string str(const IVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

}  // namespace

// ---------------------------------------------------------------------------

void LaurentPoly::add(const IVec& m, const Rat& c) {
    if (d == 0 && terms.empty()) d = static_cast<int>(m.size());
    if (static_cast<int>(m.size()) != d) throw DimensionMismatch("exponent length differs from the dimension");
    Rat& x = terms[m];
    x += c;
    if (sgn(x) == 0) terms.erase(m);
}

Rat LaurentPoly::coeff(const IVec& m) const {
    auto it = terms.find(m);
    return it == terms.end() ? Rat(0) : it->second;
}

LatticePolytope LaurentPoly::newton() const {
    std::vector<IVec> pts;
    for (const auto& [m, a] : terms) pts.push_back(m);
    return LatticePolytope(d, pts);
}

LaurentPoly parse_laurent(const std::string& text) {
    LaurentPoly f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string where = "Laurent line " + std::to_string(lineno);
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError(where + ": missing ':'");
        std::istringstream ls(line.substr(0, colon));
        IVec m;
        for (std::string tok; ls >> tok;) {
            std::size_t pos = 0;
            long x;
            try {
                x = std::stol(tok, &pos);
            } catch (...) {
                throw ParseError(where + ": bad exponent '" + tok + "'");
            }
            if (pos != tok.size()) throw ParseError(where + ": bad exponent '" + tok + "'");
            m.push_back(x);
        }
        if (m.empty()) throw ParseError(where + ": no exponent");
        if (any && static_cast<int>(m.size()) != f.d) throw ParseError(where + ": exponent length changes");
        Rat c = parse_rat(line.substr(colon + 1));
        if (!any) f.d = static_cast<int>(m.size());
        any = true;
        f.add(m, c);
    }
    if (!any) throw ParseError("Laurent polynomial file has no terms");
    return f;
}

ConeElem apply_Lf(const LaurentPoly& f, int i, const ConeElem& s) {
    if (i < 0 || i > f.d) throw DimensionMismatch("operator index out of range");
    ConeElem out;
    auto put = [&](const IVec& key, const Rat& c) {
        if (sgn(c) == 0) return;
        Rat& x = out[key];
        x += c;
        if (sgn(x) == 0) out.erase(key);
    };
    for (const auto& [key, c] : s) {
        if (static_cast<int>(key.size()) != f.d + 1) throw DimensionMismatch("cone element has wrong length");
        long k = key[0];
        IVec m(key.begin() + 1, key.end());
        put(key, c * (i == 0 ? k : m[i - 1]));
        for (const auto& [mf, a] : f.terms) put(cone_key(k + 1, plus(m, mf)), c * a * (i == 0 ? 1L : mf[i - 1]));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> JacobianRing::dims() const {
    std::vector<std::size_t> out;
    for (const auto& b : basis) out.push_back(b.size());
    return out;
}

std::size_t JacobianRing::total() const {
    std::size_t n = 0;
    for (const auto& b : basis) n += b.size();
    return n;
}

std::vector<int> JacobianRing::degrees() const {
    std::vector<int> out;
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t j = 0; j < basis[k].size(); ++j) out.push_back(static_cast<int>(k));
    return out;
}

QVec JacobianRing::reduce_monomial(long k, const IVec& m) const {
    if (k < 0 || k >= static_cast<long>(S.size())) throw Unsupported("degree beyond the computed range of R");
    std::size_t j = position(S[k], m);
    QVec v(total());
    for (std::size_t i = 0; i < basis[k].size(); ++i) v[offset[k] + i] = reduce[k](i, j);
    return v;
}

JacobianRing jacobian_ring(const LaurentPoly& f, const LatticePolytope& delta) {
    if (!newton_is(f, delta)) throw NewtonPolytopeMismatch("Newton polytope of f differs from Δ");
    JacobianRing jr;
    jr.delta = delta;
    jr.f = f;
    jr.d = delta.dim();
    std::size_t total = 0;
    for (int k = 0; k <= jr.d + 1; ++k) {
        auto pts = lattice_points(delta, k);
        std::size_t n = pts.size();
        std::vector<QVec> cols;
        if (k > 0) {
            for (const auto& m : jr.S[k - 1]) {
                for (int i = 0; i <= jr.d; ++i) {
                    QVec v(n);
                    for (const auto& [mf, a] : f.terms) v[position(pts, plus(m, mf))] += a * (i == 0 ? 1L : mf[i - 1]);
                    cols.push_back(v);
                }
            }
        }
        QMat ideal = QMat::from_columns(cols, n);
        QSubspace cur = image(ideal);
        QSubspace jsp = cur;
        std::vector<IVec> basis;
        std::vector<QVec> frame;
        for (std::size_t j = 0; j < n; ++j) {
            QVec e = unit_vector(n, j);
            if (cur.contains(e)) continue;
            basis.push_back(pts[j]);
            frame.push_back(e);
            cur = sum(cur, QSubspace::span(n, {e}));
        }
        std::size_t nb = frame.size();
        for (const auto& v : jsp.vectors()) frame.push_back(v);
        auto inv = inverse(QMat::from_columns(frame, n));
        if (!inv) throw DimensionMismatch("internal: monomial complement is not a basis");
        QMat red(nb, n);
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < n; ++j) red(i, j) = (*inv)(i, j);
        jr.S.push_back(std::move(pts));
        jr.ideal.push_back(std::move(ideal));
        jr.basis.push_back(std::move(basis));
        jr.reduce.push_back(std::move(red));
        jr.offset.push_back(total);
        total += nb;
    }
    return jr;
}

bool is_delta_regular(const LaurentPoly& f, const LatticePolytope& delta) {
    int d = delta.dim();
    if (d >= 3) throw UnsupportedDimension("Δ-regularity is decided for d <= 2 only");
    if (!newton_is(f, delta)) return false;
    // vertices carry nonzero coefficients by newton_is
    auto pts = lattice_points(delta, 1);
    auto edge_ok = [&](std::vector<IVec> on) {
        std::sort(on.begin(), on.end());   // lex order walks along the edge
        UPoly g;
        for (const auto& m : on) g.push_back(f.coeff(m));
        trim(g);
        return separable(g);
    };
    if (d == 1) return edge_ok(pts);
    for (const auto& fc : delta.facets()) {
        std::vector<IVec> on;
        for (const auto& m : pts) {
            long s = 0;
            for (int i = 0; i < d; ++i) s += fc.normal[i] * m[i];
            if (s == fc.offset) on.push_back(m);
        }
        if (!edge_ok(on)) return false;
    }
    // interior face Δ itself: f = θ_1 f = θ_2 f = 0 on the torus
    long min1 = 0, min2 = 0;
    bool first = true;
    for (const auto& [m, a] : f.terms) {
        if (first || m[0] < min1) min1 = m[0];
        if (first || m[1] < min2) min2 = m[1];
        first = false;
    }
    auto bpoly = [&](int weight) {
        BPoly b;
        for (const auto& [m, a] : f.terms) {
            std::size_t j = m[1] - min2, i = m[0] - min1;
            if (b.size() <= j) b.resize(j + 1);
            if (b[j].size() <= i) b[j].resize(i + 1);
            b[j][i] += a * (weight == 0 ? 1L : m[weight - 1]);
        }
        for (auto& c : b) trim(c);
        trim(b);
        return b;
    };
    return !torus_common_zero(bpoly(0), bpoly(1), bpoly(2));
}

WeightOnR weight_filtration_on_R(const JacobianRing& jr) {
    WeightOnR out;
    std::size_t n = jr.total();
    int d = jr.d;
    for (int l = 0; l <= d + 2; ++l) {
        std::vector<QVec> vs;
        for (std::size_t k = 0; k < jr.S.size(); ++k)
            for (const auto& m : jr.S[k])
                if (in_weight_index_set(jr.delta, l, static_cast<long>(k), m)) vs.push_back(jr.reduce_monomial(k, m));
        out.raw[l] = QSubspace::span(n, vs);
    }
    std::map<int, QSubspace> steps;
    for (int i = 1; i <= d - 1; ++i) steps[d - 2 + i] = out.raw[i];
    steps[2 * d - 2] = out.raw[d + 1];
    steps[2 * d] = QSubspace::full(n);
    out.W = Flag(n, steps);
    return out;
}

QMat multiply_by(const JacobianRing& jr, const IVec& m) {
    if (!jr.delta.contains(m)) throw DimensionMismatch("multiplier " + str(m) + " is not a point of Δ");
    std::size_t n = jr.total();
    QMat out(n, n);
    std::size_t col = 0;
    for (std::size_t k = 0; k < jr.basis.size(); ++k)
        for (const auto& b : jr.basis[k]) {
            if (k + 1 < jr.S.size()) {
                QVec v = jr.reduce_monomial(k + 1, plus(b, m));
                for (std::size_t i = 0; i < n; ++i) out(i, col) = v[i];
            }
            ++col;
        }
    return out;
}

std::vector<QMat> higgs_matrices(const JacobianRing& jr) {
    std::vector<QMat> out;
    if (jr.basis.size() > 1)
        for (const auto& m : jr.basis[1]) out.push_back(multiply_by(jr, m));
    return out;
}

H2Result check_h2_generation(const JacobianRing& jr) {
    H2Result r;
    auto dims = jr.dims();
    int d = jr.d;
    r.dim_R1 = dims.size() > 1 ? dims[1] : 0;
    r.dim_J1 = jr.ideal.size() > 1 ? rank(jr.ideal[1]) : 0;
    r.cert.add("dim R^0 = 1", dims[0] == 1);
    auto higgs = higgs_matrices(jr);
    std::size_t n = jr.total();
    for (int k = 0; k < d; ++k) {
        std::vector<QVec> img;
        for (const auto& h : higgs)
            for (std::size_t j = 0; j < dims[k]; ++j) img.push_back(h.col(jr.offset[k] + j));
        std::size_t got = QSubspace::span(n, img).dim();
        bool ok = got == dims[k + 1];
        r.cert.add("R^1 R^" + std::to_string(k) + " = R^" + std::to_string(k + 1), ok,
                   std::to_string(got) + " of " + std::to_string(dims[k + 1]));
        if (!ok && r.failing_degree < 0) r.failing_degree = k + 1;
    }
    r.cert.add("R^" + std::to_string(d + 1) + " = 0", dims[d + 1] == 0);
    if (dims[d + 1] != 0 && r.failing_degree < 0) r.failing_degree = d + 1;
    r.cert.add("dim J^1 = d+1", r.dim_J1 == static_cast<std::size_t>(d + 1), std::to_string(r.dim_J1));
    r.ok = r.cert.ok();
    return r;
}

GMJetData gm_connection(const LaurentPoly& f0, const LatticePolytope& delta, const std::vector<IVec>& directions, int D) {
    JacobianRing jr = jacobian_ring(f0, delta);
    int d = jr.d;
    if (d <= 2 && !is_delta_regular(f0, delta)) throw NotRegular("f is not Δ-regular");
    if (jr.dims()[d + 1] != 0) throw NotRegular("R^{d+1} does not vanish");
    if (directions.empty()) throw DimensionMismatch("need at least one moduli direction");
    for (const auto& m : directions)
        if (static_cast<int>(m.size()) != d || !delta.contains(m))
            throw DimensionMismatch("direction " + str(m) + " is not a lattice point of Δ");
    int nd = static_cast<int>(directions.size());
    GMJetData out;
    out.directions = directions;
    out.sp = JetSpace::get(nd, 0, D, 0);
    const SpacePtr& sp = out.sp;
    int K = d + 1;

    std::map<IVec, std::size_t> pos;
    for (int k = 0; k <= K; ++k)
        for (const auto& m : jr.S[k]) pos.emplace(cone_key(k, m), pos.size());
    std::size_t ns = pos.size(), nb = jr.total();

    std::map<IVec, Jet> fa;
    for (const auto& [m, a] : f0.terms) fa.emplace(m, Jet::constant(sp, a));
    for (int j = 0; j < nd; ++j) {
        auto it = fa.try_emplace(directions[j], Jet(sp)).first;
        it->second += Jet::variable(sp, j);
    }

    std::size_t nl = 0;
    for (int k = 0; k < K; ++k) nl += jr.S[k].size() * (d + 1);
    JMat M(sp, ns, nb + nl);
    auto deg = jr.degrees();
    for (std::size_t b = 0, k = 0; k < jr.basis.size(); ++k)
        for (const auto& m : jr.basis[k]) M(pos.at(cone_key(k, m)), b++) = Jet::constant(sp, Rat(1));
    std::size_t col = nb;
    for (int k = 0; k < K; ++k)
        for (const auto& m : jr.S[k])
            for (int i = 0; i <= d; ++i, ++col) {
                M(pos.at(cone_key(k, m)), col) += Jet::constant(sp, Rat(i == 0 ? k : m[i - 1]));
                for (const auto& [mf, a] : fa) M(pos.at(cone_key(k + 1, plus(m, mf))), col) += a * Rat(i == 0 ? 1L : mf[i - 1]);
            }

    QMat m0 = M.constant_part();
    QMat l0(ns, nl);
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < nl; ++j) l0(i, j) = m0(i, nb + j);
    std::size_t rl = rank(l0), rm = rank(m0);
    if (rm != nb + rl || rm != ns)
        throw NotRegular("filtered quotient of S^{<=" + std::to_string(K) + "} is not spanned freely by the R basis");

    JMat rhs(sp, ns, nd * nb);
    for (int j = 0; j < nd; ++j)
        for (std::size_t b = 0, k = 0; k < jr.basis.size(); ++k)
            for (const auto& m : jr.basis[k]) rhs(pos.at(cone_key(k + 1, plus(m, directions[j]))), j * nb + b++) = Jet::constant(sp, Rat(1));
    JetSolution sol;
    try {
        sol = solve_linear(M, rhs);
    } catch (const NoSolution&) {
        throw NotRegular("t_0 t^m R is not reducible modulo the family ideal");
    }
    for (int j = 0; j < nd; ++j) {
        JMat a(sp, nb, nb);
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t b = 0; b < nb; ++b) a(i, b) = sol.x(i, j * nb + b);
        out.A.push_back(a);
    }

    auto& c = out.cert;
    auto F = curvature(out.A);
    std::size_t p = 0;
    for (int i = 0; i < nd; ++i)
        for (int j = i + 1; j < nd; ++j, ++p) {
            std::string fn = first_nonzero(F[p], {i, j});
            c.add("flat a" + std::to_string(i + 1) + " a" + std::to_string(j + 1), fn.empty(), fn);
        }
    for (int j = 0; j < nd; ++j) {
        std::string J = std::to_string(j + 1);
        bool tr = true;
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t b = 0; b < nb; ++b)
                if (deg[i] > deg[b] + 1 && !out.A[j](i, b).is_zero()) tr = false;
        c.add("transversal a" + J, tr);
        QMat h = multiply_by(jr, directions[j]);
        QMat a0 = out.A[j].constant_part();
        bool hg = true;
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t b = 0; b < nb; ++b)
                if (deg[i] == deg[b] + 1 && a0(i, b) != h(i, b)) hg = false;
        c.add("leading part of A_a" + J + " = Higgs field", hg);
    }
    return out;
}

std::map<int, QMat> default_polarization(const Flag& w) {
    std::map<int, QMat> s;
    for (int k : w.jumps()) {
        std::size_t m = graded_piece(w, k).basis.cols();
        bool odd = (k % 2 + 2) % 2 == 1;
        if (odd && m % 2 == 1)
            throw Unsupported("Gr_" + std::to_string(k) + " has odd rank and odd weight; supply a polarization");
        QMat q(m, m);
        for (std::size_t i = 0; i < m; ++i) q(i, m - 1 - i) = (odd && i >= m / 2) ? Rat(-1) : Rat(1);
        s[k] = q;
    }
    return s;
}

BPipelineResult b_model_pipeline(const LaurentPoly& f, const LatticePolytope& delta, const std::vector<IVec>& directions,
                                 int D, int N, const std::optional<std::map<int, QMat>>& s) {
    BPipelineResult res;
    auto& c = res.cert;
    res.jr = jacobian_ring(f, delta);
    int d = res.jr.d;
    res.h2 = check_h2_generation(res.jr);
    c.merge("h2: ", res.h2.cert);
    if (!res.h2.ok) throw ConditionsNotMet("H^2-generation fails: " + res.h2.cert.first_failure());
    res.gm = gm_connection(f, delta, directions, D + 1);
    c.merge("gm: ", res.gm.cert);

    std::size_t n = res.jr.total();
    auto deg = res.jr.degrees();
    const SpacePtr& sp = res.gm.sp;
    JMat g = flat_gauge(res.gm.A);
    JMat ginv = inverse(g);
    JetFiltration F;
    std::map<int, QSubspace> ust;
    for (int p = 0; p <= d; ++p) {
        std::vector<QVec> lo, hi;
        for (std::size_t b = 0; b < n; ++b) {
            if (deg[b] <= d - p) lo.push_back(unit_vector(n, b));
            if (deg[b] >= d - p) hi.push_back(unit_vector(n, b));
        }
        F[p] = ginv * JMat::constant(sp, QMat::from_columns(lo, n));
        ust[p] = QSubspace::span(n, hi);
    }
    Flag U(n, ust);
    res.weight = weight_filtration_on_R(res.jr);
    const Flag& W = res.weight.W;
    res.rees = rees_construct(W, F, U, s ? *s : default_polarization(W));
    c.merge("rees: ", res.rees.cert);

    std::vector<std::size_t> top;
    for (std::size_t i = 0; i < res.rees.hodge.size(); ++i)
        if (res.rees.hodge[i] == d) top.push_back(i);
    if (top.size() != 1) throw ConditionsNotMet("F^d is not a line");
    res.zeta = unit_vector(n, top[0]);
    res.charge = 2 * d;
    auto sc = section_conditions(res.rees.T.F, res.zeta, res.charge);
    c.add("(IC) for [1]", sc.IC);
    c.add("(GC) for [1]", sc.GC);
    c.add("(EC)_" + std::to_string(2 * d) + " for [1]", sc.EC);
    if (!sc.GC) throw GCFails("[1] does not generate");
    if (!sc.IC) throw ICFails("[1] fails (IC)");
    if (!sc.EC) throw ConditionsNotMet("[1] fails (EC)");
    res.unfolding = universal_unfold(res.rees.T, res.zeta, N);
    c.merge("unfold: ", res.unfolding.cert);
    res.pairings = extend_pairings(res.unfolding, res.rees.T.g);
    c.merge("pairings: ", res.pairings.cert);
    res.mfs = extract_mfs(res.unfolding, res.zeta, res.charge, res.pairings.g);
    c.merge("saito: ", res.mfs.cert);
    return res;
}

}  // namespace mixfrob
