#include "mixfrob/amodel.hpp"
#include "mixfrob/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mixfrob {

namespace {

long det2(const IVec& a, const IVec& b) { return a[0] * b[1] - a[1] * b[0]; }

// Half-plane then cross product ordering, counterclockwise from the x-axis.
bool ccw_less(const IVec& a, const IVec& b) {
    auto half = [](const IVec& v) { return (v[1] < 0 || (v[1] == 0 && v[0] < 0)) ? 1 : 0; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return det2(a, b) > 0;
}

// H*(S) on γ_0 = 1, γ_1..γ_r, γ_{r+1} = pt.
QVec mult_s(const QVec& a, const QVec& b, const QMat& gg) {
    std::size_t r = gg.rows();
    QVec c(r + 2);
    c[0] = a[0] * b[0];
    for (std::size_t i = 1; i <= r; ++i) c[i] = a[0] * b[i] + a[i] * b[0];
    Rat top = a[0] * b[r + 1] + a[r + 1] * b[0];
    for (std::size_t i = 1; i <= r; ++i)
        for (std::size_t j = 1; j <= r; ++j) top += a[i] * b[j] * gg(i - 1, j - 1);
    c[r + 1] = top;
    return c;
}

}  // namespace

SurfaceIntersections surface_intersections(const ToricSurface& s) {
    SurfaceIntersections out;
    std::size_t n = s.rays.size();
    if (n < 3) throw NotSmoothFan("need at least three rays");
    for (const auto& v : s.rays)
        if (v.size() != 2) throw NotSmoothFan("rays must be planar");
    // remember the input index of each ray so the nef coefficients follow
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ccw_less(s.rays[a], s.rays[b]); });
    for (auto i : order) out.rays.push_back(s.rays[i]);
    for (std::size_t i = 0; i < n; ++i)
        if (det2(out.rays[i], out.rays[(i + 1) % n]) != 1)
            throw NotSmoothFan("adjacent rays " + std::to_string(i) + " do not form a positive lattice basis");
    out.self.resize(n);
    QMat M(n, n);   // intersection matrix of ray divisors in sorted order
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = out.rays[(i + n - 1) % n];
        const auto& q = out.rays[(i + 1) % n];
        const auto& v = out.rays[i];
        long a = v[0] != 0 ? (p[0] + q[0]) / v[0] : (p[1] + q[1]) / v[1];
        if (p[0] + q[0] != a * v[0] || p[1] + q[1] != a * v[1]) throw NotSmoothFan("ray relation is not integral");
        out.self[i] = -a;
        if (-a < -2) throw NotWeakFano("D_" + std::to_string(i + 1) + "² = " + std::to_string(-a) + " < -2");
        M(i, i) = Rat(-a);
        M(i, (i + 1) % n) = 1;
        M((i + 1) % n, i) = 1;
    }
    if (n == 3) {
        // P²: every pair is adjacent; M already holds 1 off the diagonal
    }
    std::size_t r = n - 2;
    if (s.nef.size() != r) throw DimensionMismatch("nef basis must have " + std::to_string(r) + " classes");
    std::vector<QVec> gam;   // in sorted ray order
    for (const auto& c : s.nef) {
        if (c.size() != n) throw DimensionMismatch("nef class needs one coefficient per ray");
        QVec v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = c[order[k]];
        QVec dv = M * v;
        for (const auto& x : dv)
            if (x < 0) throw Unsupported("nef basis class is not nef");
        gam.push_back(v);
    }
    out.gamma = QMat(r, r);
    out.c1_gamma = QVec(r);
    QVec ones(n, Rat(1));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) out.gamma(i, j) = dot(gam[i], M * gam[j]);
        out.c1_gamma[i] = dot(ones, M * gam[i]);
    }
    out.c1_squared = dot(ones, M * ones);
    auto c1 = solve(out.gamma, out.c1_gamma);
    if (det(out.gamma) == 0 || !c1) throw DimensionMismatch("nef classes do not form a basis of H^2");
    out.c1 = *c1;
    if (out.c1_squared != dot(out.c1, out.gamma * out.c1)) throw DimensionMismatch("nef classes do not span c_1");
    return out;
}

LocalCohomology build_cohomology(const ToricSurface& s) {
    auto si = surface_intersections(s);
    int r = static_cast<int>(si.gamma.rows());
    std::size_t hs = r + 2, n = 2 * hs;
    LocalCohomology H;
    H.r = r;
    QVec c1s(hs);
    for (int i = 0; i < r; ++i) c1s[i + 1] = si.c1[i];
    for (std::size_t a = 0; a < hs; ++a) {
        H.degree.push_back(a == 0 ? 0 : (a == hs - 1 ? 4 : 2));
        H.names.push_back("G" + std::to_string(a));
    }
    for (std::size_t a = 0; a < hs; ++a) {
        H.degree.push_back(H.degree[a] + 2);
        H.names.push_back("D" + std::to_string(a));
    }
    // element = α + ξβ stored as (α, β)
    auto split = [&](const QVec& x) {
        return std::make_pair(QVec(x.begin(), x.begin() + hs), QVec(x.begin() + hs, x.end()));
    };
    auto mult = [&](const QVec& x, const QVec& y) {
        auto [a, b] = split(x);
        auto [a2, b2] = split(y);
        QVec lo = mult_s(a, a2, si.gamma);
        QVec hi = mult_s(a, b2, si.gamma) + mult_s(b, a2, si.gamma) + mult_s(c1s, mult_s(b, b2, si.gamma), si.gamma);
        QVec out = lo;
        out.insert(out.end(), hi.begin(), hi.end());
        return out;
    };
    auto integral = [&](const QVec& x) { return x[n - 1]; };   // ∫_X ξ·pt = 1
    H.pairing = QMat(n, n);
    for (std::size_t b = 0; b < n; ++b) {
        QMat cb(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            QVec p = mult(unit_vector(n, b), unit_vector(n, j));
            for (std::size_t i = 0; i < n; ++i) cb(i, j) = p[i];
            H.pairing(b, j) = integral(p);
        }
        H.cup.push_back(cb);
    }
    auto ginv = inverse(H.pairing);
    if (!ginv) throw DimensionMismatch("Poincaré pairing is degenerate");
    for (int k = 1; k <= r; ++k) H.gamma_dual.push_back(*ginv * unit_vector(n, H.gamma(k)));
    return H;
}

SmallQuantum small_quantum_connection(const ToricSurface& s, const GWTable& gw, const QVec& z, int D) {
    SmallQuantum sq;
    sq.H = build_cohomology(s);
    const auto& H = sq.H;
    int r = H.r;
    std::size_t n = H.size();
    if (static_cast<int>(z.size()) != r || gw.r != r) throw DimensionMismatch("base point / GW table rank");
    if (gw.cutoff < D) throw CutoffTooSmall("GW cutoff " + std::to_string(gw.cutoff) + " below jet order " + std::to_string(D));
    for (const auto& q : z)
        if (q == 0) throw DimensionMismatch("base point must lie in the torus");
    SpacePtr sp = JetSpace::get(r, 0, D, 0);

    // Q_{ij}(k) = Σ_d d_i d_j d_k N_d q^d, q^d = z^d exp(d·τ)
    std::map<std::vector<long>, Jet> qd;
    for (const auto& [d, N] : gw.N) {
        if (static_cast<int>(d.size()) != r) throw DimensionMismatch("GW degree length");
        long tot = 0;
        for (long x : d) {
            if (x < 0) throw DimensionMismatch("GW degree must be effective");
            tot += x;
        }
        if (tot == 0 || tot > gw.cutoff) continue;
        Rat zd = 1;
        Jet lin(sp);
        for (int l = 0; l < r; ++l) {
            for (long e = 0; e < d[l]; ++e) zd *= z[l];
            lin += Jet::variable(sp, l) * Rat(d[l]);
        }
        Jet ex = Jet::constant(sp, Rat(1)), term = ex;
        for (int k = 1; k <= D; ++k) {
            term = term * lin * (Rat(1) / k);
            ex += term;
        }
        qd[d] = ex * (zd * N);
    }

    MixedTrTLEP& T = sq.T;
    T.F = FrobType::zero(sp, n);
    for (int i = 1; i <= r; ++i) {
        JMat c = JMat::constant(sp, H.cup[H.gamma(i)]);
        for (int j = 1; j <= r; ++j)
            for (const auto& [d, q] : qd)
                for (int k = 1; k <= r; ++k) {
                    Rat w = Rat(d[i - 1] * d[j - 1] * d[k - 1]);
                    if (w == 0) continue;
                    for (std::size_t a = 0; a < n; ++a)
                        if (sgn(H.gamma_dual[k - 1][a]) != 0) c(a, H.gamma(j)) += q * (w * H.gamma_dual[k - 1][a]);
                }
        T.F.C[i - 1] = c;
    }
    QMat v(n, n);
    for (std::size_t a = 0; a < n; ++a) v(a, a) = frac(3, 2) - frac(H.degree[a], 2);
    T.F.V = JMat::constant(sp, v);
    T.W = Flag::trivial(n, 0);
    T.g[0] = H.pairing;
    sq.nilpotent = H.cup[H.delta(0)];

    auto& c = sq.cert;
    for (int i = 1; i <= r; ++i) {
        JMat g0 = T.F.C[i - 1] * JMat::constant(sp, QMat::from_columns({unit_vector(n, H.gamma(0))}, n));
        JMat want = JMat::constant(sp, QMat::from_columns({unit_vector(n, H.gamma(i))}, n));
        std::string f = first_nonzero(g0 - want);
        c.add("C_q" + std::to_string(i) + " G0 = G" + std::to_string(i), f.empty(), f);
        std::string gr = first_nonzero(commutator(T.F.V, T.F.C[i - 1]) + T.F.C[i - 1]);
        c.add("[V,C_q" + std::to_string(i) + "] = -C_q" + std::to_string(i), gr.empty(), gr);
    }
    c.add("N = D0 cup (mod q0)", sq.nilpotent == H.cup[H.delta(0)]);
    c.merge("trTLEP(0): ", check_mixed_trtlep(T));
    return sq;
}

ALimit limit_and_twist(const SmallQuantum& sq) {
    ALimit out;
    out.limit = limit_mixed(sq.T, sq.nilpotent);
    out.T = tate_twist(out.limit.T, frac(1, 2));
    auto& c = out.cert;
    c.merge("limit: ", out.limit.cert);
    const auto& H = sq.H;
    std::size_t hs = H.r + 2;
    // cokernel representatives are exactly the Γ classes
    bool gam = out.limit.G.representatives.size() == hs;
    for (std::size_t a = 0; gam && a < hs; ++a) gam = out.limit.G.representatives[a] == unit_vector(H.size(), H.gamma(a));
    c.add("cokernel basis = Gamma classes", gam);
    QMat v = out.T.F.V.constant_part();
    bool eig = true;
    for (std::size_t a = 0; a < hs; ++a)
        for (std::size_t b = 0; b < hs; ++b) {
            Rat want = a == b ? Rat(2) - frac(H.degree[a], 2) : Rat(0);
            if (v(a, b) != want) eig = false;
        }
    c.add("V = -deg/2 + 2 on cokernel", eig);
    c.merge("twisted: ", check_mixed_trtlep(out.T));
    return out;
}

APipelineResult local_a_pipeline(const ToricSurface& s, const GWTable& gw, const QVec& z, int N, int D) {
    APipelineResult res;
    res.sq = small_quantum_connection(s, gw, z, D);
    res.lim = limit_and_twist(res.sq);
    res.charge = 4;
    std::size_t rk = res.lim.T.F.rank;
    QVec zeta = unit_vector(rk, 0);   // Γ_0
    res.conditions = section_conditions(res.lim.T.F, zeta, res.charge);
    auto& c = res.cert;
    c.merge("small: ", res.sq.cert);
    c.merge("limit: ", res.lim.cert);
    c.add("(IC) for G0", res.conditions.IC);
    c.add("(GC) for G0", res.conditions.GC);
    c.add("(EC)_4 for G0", res.conditions.EC);
    if (!res.conditions.GC) throw GCFails("Γ_0 does not generate at this base point");
    if (!res.conditions.IC) throw ICFails("Γ_0 fails (IC)");
    if (!res.conditions.EC) throw ConditionsNotMet("Γ_0 fails (EC)_4");
    res.unfolding = universal_unfold(res.lim.T, zeta, N);
    c.merge("unfold: ", res.unfolding.cert);
    c.add("extra directions = 2", res.unfolding.T.F.sp->ny() == 2);
    res.pairings = extend_pairings(res.unfolding, res.lim.T.g);
    c.merge("pairings: ", res.pairings.cert);
    res.mfs = extract_mfs(res.unfolding, zeta, res.charge, res.pairings.g);
    c.merge("saito: ", res.mfs.cert);
    return res;
}

ToricSurface parse_fan(const std::string& text) {
    ToricSurface s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        std::string where = "fan line " + std::to_string(lineno);
        if (tok[0] == "nef") {
            std::vector<Rat> v;
            for (std::size_t i = 1; i < tok.size(); ++i) v.push_back(parse_rat(tok[i]));
            s.nef.push_back(v);
            continue;
        }
        if (tok[0] == "ray") tok.erase(tok.begin());
        if (tok.size() != 2) throw ParseError(where + ": expected two integers");
        IVec v;
        for (const auto& t : tok) {
            std::size_t pos = 0;
            long x;
            try {
                x = std::stol(t, &pos);
            } catch (...) {
                throw ParseError(where + ": not an integer");
            }
            if (pos != t.size()) throw ParseError(where + ": not an integer");
            v.push_back(x);
        }
        s.rays.push_back(v);
    }
    if (s.rays.empty()) throw ParseError("fan file lists no rays");
    if (s.nef.empty() && s.rays.size() == 3) s.nef.push_back({Rat(1), Rat(0), Rat(0)});
    for (const auto& c : s.nef)
        if (c.size() != s.rays.size()) throw ParseError("nef line needs one coefficient per ray");
    return s;
}

GWTable parse_gw(const std::string& text, int r, int cutoff) {
    GWTable t;
    t.r = r;
    t.cutoff = cutoff;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        std::string where = "GW line " + std::to_string(lineno);
        if (colon == std::string::npos) throw ParseError(where + ": missing ':'");
        std::istringstream ls(line.substr(0, colon));
        std::vector<long> d;
        for (std::string tok; ls >> tok;) {
            std::size_t pos = 0;
            try {
                d.push_back(std::stol(tok, &pos));
            } catch (...) {
                throw ParseError(where + ": bad degree");
            }
            if (pos != tok.size()) throw ParseError(where + ": bad degree");
        }
        if (static_cast<int>(d.size()) != r) throw ParseError(where + ": degree needs " + std::to_string(r) + " entries");
        t.N[d] = parse_rat(line.substr(colon + 1));
    }
    return t;
}

}  // namespace mixfrob
