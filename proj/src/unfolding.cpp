#include "mixfrob/unfolding.hpp"
#include "mixfrob/errors.hpp"

#include <numeric>

namespace mixfrob {

namespace {

JMat const_col(const SpacePtr& sp, const QVec& v) {
    JMat c(sp, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) c(i, 0)[0] = v[i];
    return c;
}

JMat col_of(const std::vector<Jet>& v) { return JMat::column(v); }

JMat evaluate(const Word& w, const std::vector<JMat>& cs, const JMat& u, std::size_t r) {
    JMat out = JMat::identity(u.space(), r);
    // the first letter is the outermost factor
    for (auto it = w.rbegin(); it != w.rend(); ++it) out = (*it == static_cast<int>(cs.size()) ? u : cs[*it]) * out;
    return out;
}

std::string residual(const JMat& m, const std::vector<int>& dvars = {}) { return first_nonzero(m, dvars); }

struct Family {
    std::string name;
    std::string failure = {};
    void need(const std::string& what, const JMat& m, const std::vector<int>& dvars = {}) {
        if (!failure.empty()) return;
        auto f = residual(m, dvars);
        if (!f.empty()) failure = what + ": " + f;
    }
    void flag(const std::string& what, bool ok) {
        if (failure.empty() && !ok) failure = what;
    }
};

}  // namespace

std::vector<Jet> potential(const FrobType& f, const QVec& zeta) {
    const auto& sp = f.sp;
    std::size_t r = f.rank;
    int n = sp->nvars();
    JMat z = const_col(sp, zeta);
    std::vector<JMat> dz;
    for (int i = 0; i < n; ++i) dz.push_back(f.C[i] * z);
    // Euler operator: the degree-k part of ψ is (1/k) Σ t_i (C_i ζ)_{k-1}
    std::vector<Jet> psi(r, Jet(sp));
    for (std::size_t a = 0; a < r; ++a) {
        for (int i = 0; i < n; ++i) {
            const Jet& src = dz[i](a, 0);
            for (std::size_t m = 0; m < sp->size(); ++m) {
                if (sgn(src[m]) == 0) continue;
                long up = sp->shift_up(i, m);
                if (up < 0) continue;
                int k = sp->tdeg(up) + sp->ydeg(up);
                psi[a][up] += src[m] / k;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        JMat d = col_of(psi).derivative(i) - dz[i];
        if (!zero_within(d, {i})) throw NotIntegrable("C_" + std::to_string(i + 1) + " ζ is not a gradient: " + first_nonzero(d, {i}));
    }
    return psi;
}

std::string word_name(const Word& w, int letters) {
    if (w.empty()) return "1";
    std::string s;
    for (int l : w) {
        if (!s.empty()) s += " ";
        s += l == letters ? std::string("U") : "C" + std::to_string(l + 1);
    }
    return s;
}

MonomialFrame monomial_frame(const std::vector<QMat>& cs, const QMat& u, const QVec& zeta) {
    std::size_t r = zeta.size();
    MonomialFrame fr;
    fr.letters = static_cast<int>(cs.size());
    QSubspace span(r);
    std::vector<std::pair<Word, QVec>> layer;
    auto consider = [&](Word w, const QVec& v, std::vector<std::pair<Word, QVec>>& into) {
        if (span.contains(v)) return;
        span = sum(span, QSubspace::span(r, {v}));
        fr.words.push_back(w);
        into.emplace_back(std::move(w), v);
    };
    consider({}, zeta, layer);
    while (!layer.empty() && span.dim() < r) {
        std::vector<std::pair<Word, QVec>> next;
        for (const auto& [w, v] : layer)
            for (int l = 0; l <= fr.letters; ++l) {
                QVec nv = (l == fr.letters ? u : cs[l]) * v;
                Word nw = {l};
                nw.insert(nw.end(), w.begin(), w.end());
                consider(nw, nv, next);
            }
        layer = std::move(next);
    }
    if (span.dim() < r)
        throw GCFails("words in C, U applied to ζ span " + std::to_string(span.dim()) + " of " + std::to_string(r));
    return fr;
}

MonomialFrame monomial_frame(const FrobType& f, const QVec& zeta) {
    std::vector<QMat> cs;
    for (const auto& c : f.C) cs.push_back(c.constant_part());
    return monomial_frame(cs, f.U.constant_part(), zeta);
}

UnfoldingResult unfold(const MixedTrTLEP& t, const QVec& zeta, const std::vector<Jet>& psi_ext) {
    const auto& base = t.F.sp;
    std::size_t r = t.F.rank;
    if (psi_ext.size() != r) throw DimensionMismatch("ψ_ext has wrong length");
    const SpacePtr tg = psi_ext[0].space();
    int m = base->nt(), l = tg->ny(), N = tg->N();
    if (base->ny() != 0) throw InconsistentTruncation("input structure must live over base variables only");
    if (tg->nt() != m || tg->D() != base->D())
        throw InconsistentTruncation("ψ_ext jet space does not extend the base jet space");
    if (N > tg->D()) throw InconsistentTruncation("unfolding order N must not exceed D");
    auto sc = section_conditions(t.F, zeta, Rat(0));
    if (!sc.IC) throw ICFails("C_• ζ is not injective at the origin");
    if (!sc.GC) throw GCFails("ζ does not generate");

    std::vector<int> vm(m);
    std::iota(vm.begin(), vm.end(), 0);
    UnfoldingResult res;
    res.psi = psi_ext;
    std::vector<JMat> C;
    for (int i = 0; i < m; ++i) C.push_back(t.F.C[i].embed(tg, vm));
    JMat U = t.F.U.embed(tg, vm), V = t.F.V.embed(tg, vm);
    JMat z = const_col(tg, zeta);
    JMat psi_col = col_of(psi_ext);

    for (int j = 0; j < l; ++j) {
        int v = m + j;
        std::vector<QMat> letters;
        for (const auto& c : C) letters.push_back(c.constant_part());
        MonomialFrame fr = monomial_frame(letters, U.constant_part(), zeta);
        std::string wl;
        for (const auto& w : fr.words) wl += (wl.empty() ? "" : ", ") + word_name(w, fr.letters);
        res.log.push_back("y" + std::to_string(j + 1) + ": frame {" + wl + "}");
        JMat dpsi = psi_col.derivative(v);
        res.directions.push_back(dpsi.constant_part().col(0));
        JMat cv(tg, r, r);
        for (int n = 0; n <= N; ++n) {
            // Step 1: C_y = Σ g_k G_k with Σ g_k G_k ζ = ∂ψ/∂y
            std::vector<JMat> G;
            JMat M(tg, r, r);
            for (std::size_t k = 0; k < fr.words.size(); ++k) {
                G.push_back(evaluate(fr.words[k], C, U, r));
                JMat gz = G.back() * z;
                for (std::size_t a = 0; a < r; ++a) M(a, k) = gz(a, 0);
            }
            JMat g = inverse(M) * dpsi;
            cv = JMat(tg, r, r);
            for (std::size_t k = 0; k < G.size(); ++k) cv = cv + G[k].scaled(g(k, 0));
            cv = cv.truncate_in(v, n);
            if (n == N) break;
            // Step 2: extend C_b and U by one order in y
            for (int b = 0; b < v; ++b) C[b] = C[b].at_zero(v) + cv.derivative(b).integral(v);
            U = U.at_zero(v) + (commutator(cv, V) - cv).integral(v);
        }
        res.log.push_back("y" + std::to_string(j + 1) + ": orders 0.." + std::to_string(N) + " solved");
        C.push_back(cv);
    }

    FrobType& F = res.T.F;
    F.sp = tg;
    F.rank = r;
    F.C = C;
    F.U = U;
    F.V = V;
    res.T.W = t.W;
    res.T.g = t.g;

    // residual families
    int n = m + l;
    Family n0{"(n=0)"}, t1{"(t1)"}, t2{"(t2)"}, y1{"(y1)"}, y2{"(y2)"}, pot{"(potential)"}, wf{"W preserved"};
    auto at_y0 = [&](const JMat& x) {
        JMat out = x;
        for (int v = m; v < n; ++v) out = out.at_zero(v);
        return out;
    };
    for (int i = 0; i < m; ++i) n0.need("C" + std::to_string(i + 1), at_y0(C[i]) - t.F.C[i].embed(tg, vm));
    n0.need("U", at_y0(U) - t.F.U.embed(tg, vm));
    n0.need("V", at_y0(V) - t.F.V.embed(tg, vm));
    {
        auto psi0 = potential(t.F, zeta);
        std::vector<Jet> emb;
        for (const auto& p : psi0) emb.push_back(p.embed(tg, vm));
        n0.need("psi", at_y0(psi_col) - col_of(emb));
    }
    for (int a = 0; a < n; ++a) {
        Family& f1 = a < m ? t1 : y1;
        Family& f2 = a < m ? t2 : y2;
        std::string A = std::to_string(a + 1);
        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            Family& fb = (a < m && b < m) ? t1 : y1;
            fb.need("[C" + A + ",C" + std::to_string(b + 1) + "]", commutator(C[a], C[b]));
            fb.need("dC sym " + A + "," + std::to_string(b + 1), C[b].derivative(a) - C[a].derivative(b), {a, b});
        }
        f1.need("[C" + A + ",U]", commutator(C[a], U));
        f2.need("dV/dz" + A, V.derivative(a), {a});
        f2.need("dU/dz" + A, U.derivative(a) - commutator(C[a], V) + C[a], {a});
        pot.need("C" + A + " zeta", C[a] * z - psi_col.derivative(a), {a});
    }
    for (const auto& [k, s] : t.W.steps()) {
        for (std::size_t mm = 0; mm < tg->size(); ++mm) {
            for (int a = 0; a < n; ++a) wf.flag("C" + std::to_string(a + 1) + " on W_" + std::to_string(k), C[a].coefficient(mm).is_zero() || is_invariant(C[a].coefficient(mm), s));
            wf.flag("U on W_" + std::to_string(k), U.coefficient(mm).is_zero() || is_invariant(U.coefficient(mm), s));
        }
    }
    for (auto* f : {&n0, &t1, &t2, &y1, &y2, &pot, &wf}) res.cert.add(f->name, f->failure.empty(), f->failure);
    if (!t1.failure.empty() || !t2.failure.empty() || !y1.failure.empty() || !y2.failure.empty())
        throw FlatnessViolation(res.cert.first_failure());
    return res;
}

UnfoldingResult universal_unfold(const MixedTrTLEP& t, const QVec& zeta, int N) {
    const auto& base = t.F.sp;
    std::size_t r = t.F.rank;
    int m = base->nt();
    auto sc = section_conditions(t.F, zeta, Rat(0));
    if (!sc.IC) throw ICFails("C_• ζ is not injective at the origin");
    if (!sc.GC) throw GCFails("ζ does not generate");
    std::vector<QVec> img;
    for (const auto& c : t.F.C) img.push_back(c.constant_part() * zeta);
    auto comp = echelon_complement(QSubspace::span(r, img));
    int l = static_cast<int>(comp.size());
    int D = base->D();
    if (N > D) throw InconsistentTruncation("unfolding order N must not exceed D");
    SpacePtr tg = JetSpace::get(m, l, D, N);
    std::vector<int> vm(m);
    std::iota(vm.begin(), vm.end(), 0);
    auto psi0 = potential(t.F, zeta);
    std::vector<Jet> psi;
    for (std::size_t a = 0; a < r; ++a) {
        Jet p = psi0[a].embed(tg, vm);
        for (int j = 0; j < l; ++j)
            if (sgn(comp[j][a]) != 0) p += Jet::variable(tg, m + j) * comp[j][a];
        psi.push_back(p);
    }
    UnfoldingResult res = unfold(t, zeta, psi);
    auto after = section_conditions(res.T.F, zeta, Rat(0));
    res.cert.add("(IdC) after unfolding", after.IdC);
    return res;
}

PairingExtension extend_pairings(const UnfoldingResult& r, const std::map<int, QMat>& g) {
    PairingExtension out;
    out.g = g;
    const auto& F = r.T.F;
    int m = F.sp->nt();
    for (int k : r.T.W.jumps()) {
        std::string K = std::to_string(k);
        auto it = g.find(k);
        if (it == g.end()) {
            out.cert.add("g_" + K + " present", false);
            continue;
        }
        GradedPiece gp = graded_piece(r.T.W, k);
        JMat G = JMat::constant(F.sp, it->second);
        for (std::size_t a = m; a < F.C.size(); ++a) {
            JMat cb = JMat::constant(F.sp, gp.proj) * F.C[a] * JMat::constant(F.sp, gp.basis);
            std::string name = "C_y" + std::to_string(a - m + 1) + " self-adjoint on Gr_" + K;
            std::string f = first_nonzero(G * cb - cb.transpose() * G);
            out.cert.add(name, f.empty(), f);
        }
        JMat ub = JMat::constant(F.sp, gp.proj) * F.U * JMat::constant(F.sp, gp.basis);
        std::string f = first_nonzero(G * ub - ub.transpose() * G);
        out.cert.add("U self-adjoint on Gr_" + K, f.empty(), f);
    }
    for (const auto& [k, s] : r.T.W.steps())
        for (std::size_t a = m; a < F.C.size(); ++a) {
            bool ok = true;
            for (std::size_t mm = 0; mm < F.sp->size(); ++mm) {
                QMat c = F.C[a].coefficient(mm);
                if (!c.is_zero() && !is_invariant(c, s)) ok = false;
            }
            out.cert.add("C_y" + std::to_string(a - m + 1) + " preserves W_" + std::to_string(k), ok);
        }
    return out;
}

SaitoRoundtrip extract_mfs(const UnfoldingResult& r, const QVec& zeta, const Rat& d, const std::map<int, QMat>& g) {
    MixedTrTLEP t = r.T;
    t.g = g;
    return roundtrip_saito(t, zeta, d);
}

UnfoldingSummary summarize(const UnfoldingResult& r) {
    UnfoldingSummary s;
    for (int k : r.T.W.jumps()) s.graded_dims[k] = graded_piece(r.T.W, k).dim();
    s.extra_directions = r.T.F.sp->ny();
    return s;
}

}  // namespace mixfrob
