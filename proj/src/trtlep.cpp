#include "mixfrob/trtlep.hpp"
#include "mixfrob/errors.hpp"
#include "mixfrob/gauge.hpp"
#include "mixfrob/unfolding.hpp"

#include <algorithm>
#include <set>

namespace mixfrob {

namespace {

std::string idx(std::size_t i) { return std::to_string(i + 1); }

void expect(Certificate& c, const std::string& name, const JMat& residual, const std::vector<int>& dvars = {}) {
    std::string where = first_nonzero(residual, dvars);
    c.add(name, where.empty(), where);
}

bool frob_shapes_ok(const FrobType& f) {
    if (static_cast<int>(f.C.size()) != f.nvars()) return false;
    auto sq = [&](const JMat& m) { return m.rows() == f.rank && m.cols() == f.rank; };
    return std::all_of(f.C.begin(), f.C.end(), sq) && sq(f.U) && sq(f.V);
}

JMat induced_jet(const GradedPiece& gp, const JMat& x) {
    const auto& sp = x.space();
    return JMat::constant(sp, gp.proj) * x * JMat::constant(sp, gp.basis);
}

bool preserves(const JMat& x, const QSubspace& s) {
    for (std::size_t m = 0; m < x.space()->size(); ++m) {
        QMat c = x.coefficient(m);
        if (!c.is_zero() && !is_invariant(c, s)) return false;
    }
    return true;
}

}  // namespace

FrobType FrobType::zero(SpacePtr sp, std::size_t rank) {
    FrobType f;
    f.sp = sp;
    f.rank = rank;
    for (int i = 0; i < sp->nvars(); ++i) f.C.emplace_back(sp, rank, rank);
    f.U = JMat(sp, rank, rank);
    f.V = JMat(sp, rank, rank);
    return f;
}

Certificate check_frob_type(const FrobType& f) {
    Certificate c;
    if (!frob_shapes_ok(f)) {
        c.add("shapes", false, "matrix sizes or count of C's do not match rank / variables");
        return c;
    }
    int n = f.nvars();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            expect(c, "[C" + idx(i) + ",C" + idx(j) + "]", commutator(f.C[i], f.C[j]));
            expect(c, "dC" + idx(i) + idx(j) + " symmetric", f.C[j].derivative(i) - f.C[i].derivative(j), {i, j});
        }
    for (int i = 0; i < n; ++i) {
        expect(c, "[C" + idx(i) + ",U]", commutator(f.C[i], f.U));
        expect(c, "dV/dz" + idx(i), f.V.derivative(i), {i});
        expect(c, "(B) z" + idx(i), f.U.derivative(i) - commutator(f.C[i], f.V) + f.C[i], {i});
    }
    return c;
}

Certificate check_connection_curvature(const FrobType& f) {
    Certificate c;
    if (!frob_shapes_ok(f)) {
        c.add("shapes", false);
        return c;
    }
    // Ω_i = λ^{-1} C_i, Ω(λ∂_λ) = λ^{-1} U − V; F = dΩ + Ω∧Ω sorted by powers of λ.
    int n = f.nvars();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            expect(c, "F(z" + idx(i) + ",z" + idx(j) + ")[l^-1]", f.C[j].derivative(i) - f.C[i].derivative(j), {i, j});
            expect(c, "F(z" + idx(i) + ",z" + idx(j) + ")[l^-2]", f.C[i] * f.C[j] - f.C[j] * f.C[i]);
        }
        expect(c, "F(z" + idx(i) + ",l)[l^0]", -f.V.derivative(i), {i});
        expect(c, "F(z" + idx(i) + ",l)[l^-1]", f.U.derivative(i) + f.C[i] - (f.C[i] * f.V - f.V * f.C[i]), {i});
        expect(c, "F(z" + idx(i) + ",l)[l^-2]", f.C[i] * f.U - f.U * f.C[i]);
    }
    return c;
}

GradedPiece graded_piece(const Flag& w, int k) {
    std::size_t n = w.ambient();
    QSubspace big = w.at(k), sub = w.at(k - 1);
    auto reps = relative_complement(big, sub);
    std::vector<QVec> cols = reps;
    for (auto& v : sub.vectors()) cols.push_back(v);
    for (auto& v : echelon_complement(big)) cols.push_back(v);
    auto inv = inverse(QMat::from_columns(cols, n));
    if (!inv) throw DimensionMismatch("graded piece basis is singular");
    GradedPiece gp;
    gp.basis = QMat::from_columns(reps, n);
    gp.proj = QMat(reps.size(), n);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) gp.proj(i, j) = (*inv)(i, j);
    return gp;
}

QMat induced(const GradedPiece& gp, const QMat& x) { return gp.proj * x * gp.basis; }

Certificate check_mixed_trtlep(const MixedTrTLEP& t) {
    Certificate c;
    c.merge("frob: ", check_frob_type(t.F));
    if (!frob_shapes_ok(t.F)) return c;
    if (t.W.ambient() != t.F.rank) {
        c.add("weight flag ambient", false, "flag ambient dimension differs from rank");
        return c;
    }
    std::vector<std::pair<std::string, const JMat*>> mats;
    for (std::size_t i = 0; i < t.F.C.size(); ++i) mats.emplace_back("C" + idx(i), &t.F.C[i]);
    mats.emplace_back("U", &t.F.U);
    mats.emplace_back("V", &t.F.V);
    for (const auto& [k, s] : t.W.steps())
        for (const auto& [name, m] : mats)
            c.add(name + " preserves W_" + std::to_string(k), preserves(*m, s));

    auto jumps = t.W.jumps();
    for (const auto& [k, g] : t.g)
        if (std::find(jumps.begin(), jumps.end(), k) == jumps.end())
            c.add("g_" + std::to_string(k) + " on a nonzero graded piece", false);
    for (int k : jumps) {
        std::string K = std::to_string(k);
        auto it = t.g.find(k);
        if (it == t.g.end()) {
            c.add("g_" + K + " present", false);
            continue;
        }
        GradedPiece gp = graded_piece(t.W, k);
        const QMat& g = it->second;
        if (g.rows() != gp.dim() || g.cols() != gp.dim()) {
            c.add("g_" + K + " size", false, "expected " + std::to_string(gp.dim()));
            continue;
        }
        c.add("g_" + K + " symmetric", g == g.transpose());
        c.add("g_" + K + " nondegenerate", det(g) != 0);
        const auto& sp = t.F.sp;
        JMat G = JMat::constant(sp, g);
        for (const auto& [name, m] : mats) {
            if (name == "V") continue;
            JMat xb = induced_jet(gp, *m);
            expect(c, name + " self-adjoint on Gr_" + K, G * xb - xb.transpose() * G);
        }
        QMat vb = induced(gp, t.F.V.constant_part());
        QMat res = vb.transpose() * g + g * vb - g * Rat(k);
        c.add("V weight identity on Gr_" + K, res.is_zero());
    }
    return c;
}

MixedTrTLEP tate_twist(const MixedTrTLEP& t, const Rat& ell) {
    Rat two = ell * 2;
    if (two.get_den() != 1) throw Unsupported("Tate twist needs 2l integral");
    int s = static_cast<int>(two.get_num().get_si());
    MixedTrTLEP out = t;
    std::map<int, QSubspace> steps;
    for (const auto& [k, sub] : t.W.steps()) steps[k + s] = sub;
    out.W = Flag(t.W.ambient(), steps);
    out.g.clear();
    for (const auto& [k, g] : t.g) out.g[k + s] = g;
    out.F.V = t.F.V + JMat::identity(t.F.sp, t.F.rank) * ell;
    return out;
}

QSubspace generated_span(const FrobType& f, const QVec& zeta) {
    std::vector<QMat> letters;
    for (const auto& c : f.C) letters.push_back(c.constant_part());
    letters.push_back(f.U.constant_part());
    QSubspace span = QSubspace::span(f.rank, {zeta});
    std::vector<QVec> frontier = {zeta};
    while (!frontier.empty()) {
        std::vector<QVec> next;
        for (const auto& v : frontier)
            for (const auto& l : letters) {
                QVec w = l * v;
                if (!span.contains(w)) {
                    span = sum(span, QSubspace::span(f.rank, {w}));
                    next.push_back(w);
                }
            }
        frontier = std::move(next);
    }
    return span;
}

SectionConditions section_conditions(const FrobType& f, const QVec& zeta, const Rat& d) {
    if (zeta.size() != f.rank) throw DimensionMismatch("section length differs from rank");
    if (is_zero(zeta)) throw ZeroVector("section vanishes");
    SectionConditions s;
    std::vector<QVec> img;
    for (const auto& c : f.C) img.push_back(c.constant_part() * zeta);
    std::size_t rk = img.empty() ? 0 : QSubspace::span(f.rank, img).dim();
    s.IC = rk == img.size();
    s.IdC = s.IC && img.size() == f.rank;
    s.GC = generated_span(f, zeta).dim() == f.rank;
    QVec vz = f.V.constant_part() * zeta;
    s.EC = vz == (d / 2) * zeta;
    return s;
}

QSubspace dec_at(const DecFiltration& f, int p, std::size_t n) {
    auto it = f.lower_bound(p);
    if (it == f.end()) return QSubspace(n);
    return it->second;
}

Certificate check_opposite(const DecFiltration& f0, const Flag& w, const Flag& u, const std::map<int, QMat>& s) {
    Certificate c;
    std::size_t n = w.ambient();
    if (u.ambient() != n) throw DimensionMismatch("opposite filtration ambient dimension");
    int lo = std::min(u.lo(), f0.empty() ? 0 : f0.begin()->first);
    int hi = std::max(u.hi(), f0.empty() ? 0 : f0.rbegin()->first);
    if (!f0.empty()) c.add("F exhaustive", f0.begin()->second.dim() == n);
    for (int k : w.jumps()) {
        std::string K = std::to_string(k);
        GradedPiece gp = graded_piece(w, k);
        QSubspace wk = w.at(k), wk1 = w.at(k - 1);
        auto it = s.find(k);
        bool have_s = it != s.end() && it->second.rows() == gp.dim() && it->second.cols() == gp.dim();
        c.add("S_" + K + " present", have_s);
        if (have_s) {
            const QMat& sk = it->second;
            QMat sign = (k % 2 == 0) ? sk.transpose() : -sk.transpose();
            c.add("S_" + K + " (-1)^k-symmetric", sk == sign);
            c.add("S_" + K + " nondegenerate", det(sk) != 0);
        }
        auto gr = [&](const QSubspace& x) { return sum(intersection(x, wk), wk1); };
        auto pair_zero = [&](const QSubspace& a, const QSubspace& b) {
            if (!have_s) return true;
            for (const auto& x : intersection(a, wk).vectors())
                for (const auto& y : intersection(b, wk).vectors())
                    if (dot(gp.proj * x, it->second * (gp.proj * y)) != 0) return false;
            return true;
        };
        for (int l = lo - std::abs(k) - 2; l <= hi + std::abs(k) + 2; ++l) {
            std::string L = std::to_string(l);
            QSubspace a = gr(dec_at(f0, l, n)), b = gr(u.at(l - 1));
            bool opp = intersection(a, b).dim() == wk1.dim() && sum(a, b).dim() == wk.dim();
            c.add("opp Gr_" + K + " F^" + L + " + U_" + std::to_string(l - 1), opp);
            c.add("S_" + K + "(U_" + L + ",U_" + std::to_string(k - l - 1) + ") = 0", pair_zero(u.at(l), u.at(k - l - 1)));
            c.add("S_" + K + "(F^" + L + ",F^" + std::to_string(k - l + 1) + ") = 0",
                  pair_zero(dec_at(f0, l, n), dec_at(f0, k - l + 1, n)));
        }
    }
    return c;
}

ReesResult rees_construct(const Flag& w, const JetFiltration& f, const Flag& u, const std::map<int, QMat>& s) {
    if (f.empty()) throw DimensionMismatch("empty Hodge filtration");
    const SpacePtr sp = f.begin()->second.space();
    std::size_t n = f.begin()->second.rows();
    if (sp->ny() != 0) throw Unsupported("Rees construction expects base variables only");
    if (sp->D() < 1 && sp->nt() > 0) throw CutoffTooSmall("Rees construction consumes one jet order; need D >= 1");

    DecFiltration f0;
    for (const auto& [p, m] : f) f0[p] = image(m.constant_part());
    ReesResult res;
    res.cert.merge("opposite: ", check_opposite(f0, w, u, s));
    for (const auto& ch : res.cert.checks)
        if (!ch.ok && ch.name.find("opp") != std::string::npos) throw SplittingFails(ch.name);

    // jet bases of F^ℓ ∩ U_ℓ, highest Hodge level first
    auto jet_f = [&](int p) -> JMat {
        auto it = f.lower_bound(p);
        if (it == f.end()) return JMat(sp, n, 0);
        return it->second;
    };
    int plo = f.begin()->first, phi = f.rbegin()->first;
    std::vector<JMat> pieces;
    for (int l = phi; l >= plo; --l) {
        JMat fl = jet_f(l);
        std::size_t want = dec_at(f0, l, n).dim() - dec_at(f0, l + 1, n).dim();
        if (want == 0) continue;
        auto ann = kernel_basis(u.at(l).basis());   // vectors y with <y, U_ℓ> = 0
        JMat q = JMat::constant(sp, QMat::from_rows(ann, n));
        JMat ker;
        try {
            ker = ann.empty() ? JMat::identity(sp, fl.cols()) : jet_kernel(q * fl);
        } catch (const NoSolution&) {
            throw SplittingFails("F^" + std::to_string(l) + " ∩ U_" + std::to_string(l) + " is not a bundle");
        }
        if (ker.cols() != want)
            throw SplittingFails("dim F^" + std::to_string(l) + " ∩ U_" + std::to_string(l) + " is " +
                                 std::to_string(ker.cols()) + ", expected " + std::to_string(want));
        pieces.push_back(fl * ker);
        for (std::size_t j = 0; j < want; ++j) res.hodge.push_back(l);
    }
    if (res.hodge.size() != n) throw SplittingFails("pieces F^l ∩ U_l do not fill the space");
    JMat phi_m(sp, n, n);
    std::size_t col = 0;
    for (const auto& p : pieces)
        for (std::size_t j = 0; j < p.cols(); ++j, ++col)
            for (std::size_t i = 0; i < n; ++i) phi_m(i, col) = p(i, j);
    res.frame0 = phi_m.constant_part();
    if (!inverse(res.frame0)) throw SplittingFails("pieces F^l ∩ U_l are dependent");
    JMat phi_inv = inverse(phi_m);

    // Γ_i = Φ^{-1} ∂_iΦ splits into the Higgs block (ℓ → ℓ−1) and the block diagonal.
    SpacePtr out = JetSpace::get(sp->nt(), 0, std::max(sp->D() - 1, 0), 0);
    std::vector<int> ident(sp->nvars());
    for (int v = 0; v < sp->nvars(); ++v) ident[v] = v;
    std::vector<JMat> C, A;
    for (int i = 0; i < sp->nt(); ++i) {
        JMat gam = (phi_inv * phi_m.derivative(i)).embed(out, ident);
        JMat ci(out, n, n), ai(out, n, n), rest(out, n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (res.hodge[a] == res.hodge[b] - 1)
                    ci(a, b) = gam(a, b);
                else if (res.hodge[a] == res.hodge[b])
                    ai(a, b) = gam(a, b);
                else
                    rest(a, b) = gam(a, b);
            }
        if (!rest.is_zero()) throw TransversalityFails("derivative along t" + idx(i) + " leaves F^{l-1} ∩ U_l");
        C.push_back(ci);
        A.push_back(ai);
    }
    JMat g = A.empty() ? JMat::identity(out, n) : flat_gauge(A);
    JMat ginv = inverse(g);

    MixedTrTLEP& T = res.T;
    T.F = FrobType::zero(out, n);
    for (int i = 0; i < sp->nt(); ++i) T.F.C[i] = gauge_transform(g, ginv, C[i]);
    QMat v(n, n);
    for (std::size_t a = 0; a < n; ++a) v(a, a) = Rat(res.hodge[a]);
    T.F.V = JMat::constant(out, v);

    // W in frame coordinates at the origin; it must split along the pieces.
    auto finv = *inverse(res.frame0);
    std::map<int, QSubspace> steps;
    for (const auto& [k, sub] : w.steps()) {
        QSubspace wk = apply(finv, sub);
        std::size_t split = 0;
        for (int l : std::set<int>(res.hodge.begin(), res.hodge.end())) {
            std::vector<QVec> units;
            for (std::size_t a = 0; a < n; ++a)
                if (res.hodge[a] == l) units.push_back(unit_vector(n, a));
            split += intersection(wk, QSubspace::span(n, units)).dim();
        }
        if (split != wk.dim()) throw SplittingFails("W_" + std::to_string(k) + " does not split along F ∩ U");
        steps[k] = wk;
    }
    T.W = Flag(n, steps);

    // g_k(x, y) = Σ_ℓ (−1)^ℓ S_k(x_{k−ℓ}, y_ℓ) with y_ℓ the Hodge-ℓ part of y.
    for (int k : T.W.jumps()) {
        auto sit = s.find(k);
        if (sit == s.end()) continue;
        GradedPiece gpo = graded_piece(w, k), gpn = graded_piece(T.W, k);
        std::size_t dk = gpn.dim();
        QMat gk(dk, dk);
        for (std::size_t i = 0; i < dk; ++i)
            for (std::size_t j = 0; j < dk; ++j) {
                QVec x = gpn.basis.col(i), y = gpn.basis.col(j);
                Rat acc = 0;
                for (std::size_t b = 0; b < n; ++b) {
                    if (sgn(y[b]) == 0) continue;
                    int l = res.hodge[b];
                    QVec xl(n), yl = unit_vector(n, b) ;
                    for (std::size_t a = 0; a < n; ++a)
                        if (res.hodge[a] == k - l) xl[a] = x[a];
                    QVec ox = gpo.proj * (res.frame0 * xl), oy = gpo.proj * (res.frame0 * yl);
                    Rat val = dot(ox, sit->second * oy) * y[b];
                    acc += (l % 2 == 0) ? val : Rat(-val);
                }
                gk(i, j) = acc;
            }
        T.g[k] = gk;
    }
    res.cert.merge("rees: ", check_mixed_trtlep(T));
    return res;
}

Certificate check_mfs(const SaitoMFS& m) {
    Certificate c;
    std::size_t n = m.n;
    const auto& sp = m.sp;
    if (static_cast<int>(n) != sp->nvars() || m.mult.size() != n || m.e.size() != n || m.E.size() != n) {
        c.add("shapes", false, "dimension of M must equal the number of coordinates");
        return c;
    }
    int N = static_cast<int>(n);
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) {
            JMat r(sp, n, 1);
            for (std::size_t k = 0; k < n; ++k) r(k, 0) = m.mult[a](k, b) - m.mult[b](k, a);
            expect(c, "commutative " + idx(a) + idx(b), r);
        }
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            JMat r = m.mult[a] * m.mult[b];
            for (int k = 0; k < N; ++k) r = r - m.mult[k].scaled(m.mult[a](k, b));
            expect(c, "associative " + idx(a) + idx(b), r);
        }
    {
        JMat r = -JMat::identity(sp, n);
        for (int a = 0; a < N; ++a) r = r + m.mult[a].scaled(m.e[a]);
        expect(c, "unit", r);
    }
    for (int v = 0; v < N; ++v) {
        JMat r = JMat::column(m.e).derivative(v);
        expect(c, "unit flat d/dx" + idx(v), r, {v});
    }
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            expect(c, "potentiality " + idx(a) + idx(b), m.mult[a].derivative(b) - m.mult[b].derivative(a), {a, b});
    JMat Ecol = JMat::column(m.E);
    for (int u = 0; u < N; ++u)
        for (int v = u; v < N; ++v) {
            JMat r = Ecol.derivative(u).derivative(v);
            c.add("E affine " + idx(u) + idx(v), zero_within_sum(r, {u, v}), "");
        }
    QMat G(n, n);   // G(c, e) = ∂_e E^c at the origin
    for (int e = 0; e < N; ++e)
        for (int k = 0; k < N; ++k) G(k, e) = m.E[k].derivative(e).constant_term();
    std::vector<int> all(n);
    for (int v = 0; v < N; ++v) all[v] = v;
    JMat Gj = JMat::constant(sp, G);
    for (int a = 0; a < N; ++a) {
        JMat r(sp, n, n);
        for (int v = 0; v < N; ++v) r = r + m.mult[a].derivative(v).scaled(m.E[v]);
        r = r - Gj * m.mult[a] + m.mult[a] * Gj - m.mult[a];
        for (int e = 0; e < N; ++e) r = r + m.mult[e] * G(e, a);
        expect(c, "Lie_E(o) = o on d/dx" + idx(a), r, all);
    }
    if (m.I.ambient() != n) {
        c.add("I ambient", false);
        return c;
    }
    for (const auto& [k, s] : m.I.steps()) {
        bool inv = true;
        for (int a = 0; a < N; ++a) inv = inv && preserves(m.mult[a], s);
        c.add("I_" + std::to_string(k) + " product-invariant", inv);
        c.add("I_" + std::to_string(k) + " E-closed", is_invariant(G, s));
    }
    auto jumps = m.I.jumps();
    for (int k : jumps) {
        std::string K = std::to_string(k);
        auto it = m.g.find(k);
        if (it == m.g.end()) {
            c.add("g_" + K + " present", false);
            continue;
        }
        GradedPiece gp = graded_piece(m.I, k);
        const JMat& g = it->second;
        if (g.rows() != gp.dim() || g.cols() != gp.dim()) {
            c.add("g_" + K + " size", false);
            continue;
        }
        expect(c, "g_" + K + " symmetric", g - g.transpose());
        c.add("g_" + K + " nondegenerate", det(g.constant_part()) != 0);
        for (int v = 0; v < N; ++v) expect(c, "g_" + K + " flat d/dx" + idx(v), g.derivative(v), {v});
        for (int a = 0; a < N; ++a) {
            JMat xb = induced_jet(gp, m.mult[a]);
            expect(c, "(g1) g_" + K + " on d/dx" + idx(a), g * xb - xb.transpose() * g);
        }
        JMat Gb = JMat::constant(sp, induced(gp, G));
        JMat eg(sp, gp.dim(), gp.dim());
        for (int v = 0; v < N; ++v) eg = eg + g.derivative(v).scaled(m.E[v]);
        JMat r = eg + Gb.transpose() * g + g * Gb - g * (Rat(2) - m.d + k);
        expect(c, "(g2) g_" + K, r, all);
    }
    return c;
}

MixedTrTLEP mfs_to_mixed(const SaitoMFS& m) {
    MixedTrTLEP t;
    t.F = FrobType::zero(m.sp, m.n);
    for (std::size_t a = 0; a < m.n; ++a) t.F.C[a] = -m.mult[a];
    JMat u(m.sp, m.n, m.n);
    for (std::size_t a = 0; a < m.n; ++a) u = u + m.mult[a].scaled(m.E[a]);
    t.F.U = u;
    QMat G(m.n, m.n);
    for (std::size_t e = 0; e < m.n; ++e)
        for (std::size_t k = 0; k < m.n; ++k) G(k, e) = m.E[k].derivative(e).constant_term();
    Rat c = (Rat(2) - m.d) / 2;
    t.F.V = JMat::constant(m.sp, G - QMat::identity(m.n) * c);
    t.W = m.I;
    for (const auto& [k, g] : m.g) t.g[k] = g.constant_part();
    return t;
}

SaitoRoundtrip roundtrip_saito(const MixedTrTLEP& t, const QVec& zeta, const Rat& d) {
    const FrobType& f = t.F;
    auto sc = section_conditions(f, zeta, d);
    if (!sc.IdC) throw ConditionsNotMet("section fails (IdC)");
    if (!sc.EC) throw ConditionsNotMet("section fails (EC)_" + d.get_str());
    const auto& sp = f.sp;
    std::size_t n = f.rank;
    int dx = sp->ny() == 0 ? sp->D() : std::min(sp->D(), sp->N());
    SpacePtr X = JetSpace::get(static_cast<int>(n), 0, dx, 0);

    auto psi = potential(f, zeta);
    JMat zcol = JMat::column([&] {
        std::vector<Jet> z;
        for (const auto& q : zeta) z.push_back(Jet::constant(sp, q));
        return z;
    }());
    JMat mu(sp, n, n);   // columns −C_i ζ
    for (std::size_t i = 0; i < n; ++i) {
        JMat ci = f.C[i] * zcol;
        for (std::size_t a = 0; a < n; ++a) mu(a, i) = -ci(a, 0);
    }
    QMat J = mu.constant_part();
    QMat Jinv = *inverse(J);

    // x = −ψ(t) = J t + h(t); invert by fixed-point iteration t = J^{-1}(x − h(t)).
    std::vector<Jet> h(n);
    for (std::size_t a = 0; a < n; ++a) {
        h[a] = -psi[a];
        for (std::size_t i = 0; i < n; ++i) h[a] -= Jet::variable(sp, i) * J(a, i);
    }
    std::vector<Jet> xs, tx(n, Jet(X));
    for (std::size_t a = 0; a < n; ++a) xs.push_back(Jet::variable(X, a));
    for (int it = 0; it <= dx; ++it) {
        std::vector<Jet> rhs(n, Jet(X));
        for (std::size_t a = 0; a < n; ++a) rhs[a] = xs[a] - (it == 0 ? Jet(X) : h[a].compose(tx));
        std::vector<Jet> nt(n, Jet(X));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < n; ++a)
                if (sgn(Jinv(i, a)) != 0) nt[i] += rhs[a] * Jinv(i, a);
        tx = nt;
    }

    SaitoRoundtrip out;
    out.t_of_x = tx;
    JMat mux_inv = inverse(mu.compose(tx));
    std::vector<JMat> cx;
    for (std::size_t i = 0; i < n; ++i) cx.push_back(f.C[i].compose(tx));
    SaitoMFS& M = out.M;
    M.sp = X;
    M.n = n;
    for (std::size_t a = 0; a < n; ++a) {
        JMat ca(X, n, n);
        for (std::size_t i = 0; i < n; ++i) ca = ca + cx[i].scaled(mux_inv(i, a));
        M.mult.push_back(-ca);
    }
    for (std::size_t a = 0; a < n; ++a) M.e.push_back(Jet::constant(X, zeta[a]));
    JMat ux = f.U.compose(tx);
    for (std::size_t a = 0; a < n; ++a) {
        Jet e(X);
        for (std::size_t b = 0; b < n; ++b) e += ux(a, b) * zeta[b];
        M.E.push_back(e);
    }
    M.I = t.W;
    for (const auto& [k, g] : t.g) M.g[k] = JMat::constant(X, g);
    M.d = d;

    out.cert.merge("mfs: ", check_mfs(M));
    // x(t(x)) = x
    {
        JMat r(X, n, 1);
        for (std::size_t a = 0; a < n; ++a) r(a, 0) = (-psi[a]).compose(tx) - xs[a];
        expect(out.cert, "coordinate inverse", r);
    }
    MixedTrTLEP back = mfs_to_mixed(M);
    expect(out.cert, "roundtrip U", back.F.U - ux);
    out.cert.add("roundtrip V", back.F.V.constant_part() == f.V.constant_part());
    out.cert.add("roundtrip W", back.W == t.W);
    out.cert.add("roundtrip g", back.g == t.g);
    return out;
}

}  // namespace mixfrob
