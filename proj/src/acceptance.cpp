#include "mixfrob/acceptance.hpp"
#include "mixfrob/errors.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace mixfrob {

namespace {

using Pt = std::pair<long, long>;

long cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

// Andrew's monotone chain, strict (collinear points dropped), counterclockwise.
std::vector<Pt> hull(std::vector<Pt> p) {
    std::sort(p.begin(), p.end());
    if (p.size() < 3) return p;
    std::vector<Pt> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    return h;
}

long egcd(long a, long b, long& x, long& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    long x1, y1;
    long g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

long floordiv(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Independent Gaussian elimination over Q.
std::size_t dense_rank(std::vector<QVec> rows) {
    std::size_t rank = 0;
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (sgn(rows[r][c]) == 0) continue;
            Rat f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

bool same_jmat(const JMat& a, const JMat& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.space() == b.space() && (a - b).is_zero();
}

bool same_structure(const MixedTrTLEP& a, const MixedTrTLEP& b) {
    if (a.F.rank != b.F.rank || a.F.C.size() != b.F.C.size()) return false;
    for (std::size_t i = 0; i < a.F.C.size(); ++i)
        if (!same_jmat(a.F.C[i], b.F.C[i])) return false;
    return same_jmat(a.F.U, b.F.U) && same_jmat(a.F.V, b.F.V) && a.W == b.W && a.g == b.g;
}

// Every coefficient of small (over t) equals the coefficient of big at (t, y = 0),
// and big has no other y-free coefficients.
bool restricts_to(const JMat& big, const JMat& small) {
    const auto& bs = big.space();
    const auto& ss = small.space();
    if (big.rows() != small.rows() || big.cols() != small.cols()) return false;
    for (std::size_t i = 0; i < big.rows(); ++i)
        for (std::size_t k = 0; k < big.cols(); ++k)
            for (std::size_t m = 0; m < bs->size(); ++m) {
                if (bs->ydeg(m) != 0) continue;
                Exponent e(bs->exponent(m).begin(), bs->exponent(m).begin() + bs->nt());
                long si = ss->index(e);
                Rat want = si < 0 ? Rat(0) : small(i, k)[si];
                if (big(i, k)[m] != want) return false;
            }
    return true;
}

Rat small_rat(std::mt19937_64& rng, bool halves = true) {
    long num = static_cast<long>(rng() % 7) - 3;
    long den = halves && rng() % 4 == 0 ? 2 : 1;
    return frac(num, den);
}

QMat random_unimodular(std::mt19937_64& rng, std::size_t n) {
    QMat l = QMat::identity(n), u = QMat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = Rat(static_cast<long>(rng() % 5) - 2);
            u(j, i) = Rat(static_cast<long>(rng() % 5) - 2);
        }
    return l * u;
}

// Graded Artinian algebra Q[x,y]/(x^a, y^b), deg x = deg y = 1.
struct Algebra {
    int a = 1, b = 1;
    std::vector<Pt> mono;
    Algebra(int a_, int b_) : a(a_), b(b_) {
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j) mono.push_back({i, j});
    }
    std::size_t size() const { return mono.size(); }
    int deg(std::size_t k) const { return static_cast<int>(mono[k].first + mono[k].second); }
    int socle_deg() const { return a + b - 2; }
    long index(long i, long j) const { return (i < a && j < b) ? i * b + j : -1; }
    // matrix of multiplication by the jet-valued element e
    JMat mult(const SpacePtr& sp, const std::vector<Jet>& e) const {
        std::size_t n = size();
        JMat m(sp, n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                long i = index(mono[j].first + mono[k].first, mono[j].second + mono[k].second);
                if (i >= 0) m(i, k) += e[j];
            }
        return m;
    }
    QMat socle_pairing() const {
        std::size_t n = size();
        QMat g(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (mono[j].first + mono[k].first == a - 1 && mono[j].second + mono[k].second == b - 1) g(j, k) = 1;
        return g;
    }
};

template <class F>
CriterionResult timed(int id, std::string title, F&& body) {
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.ok = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<IVec> to_ivecs(const std::vector<Pt>& p) {
    std::vector<IVec> out;
    for (const auto& [x, y] : p) out.push_back({x, y});
    return out;
}

bool has_check(const Certificate& c, const std::string& needle) {
    for (const auto& ch : c.checks)
        if (ch.name.find(needle) != std::string::npos) return true;
    return false;
}

bool family_ok(const Certificate& c, const std::string& fam, bool& seen) {
    bool ok = true;
    for (const auto& ch : c.checks)
        if (ch.name.find(fam) != std::string::npos) {
            seen = true;
            ok = ok && ch.ok;
        }
    return ok;
}

bool same_mfs(const SaitoMFS& a, const SaitoMFS& b) {
    if (a.n != b.n || a.sp != b.sp || a.d != b.d || !(a.I == b.I)) return false;
    for (std::size_t i = 0; i < a.n; ++i) {
        if (!same_jmat(a.mult[i], b.mult[i])) return false;
        if (!(a.e[i] - b.e[i]).is_zero() || !(a.E[i] - b.E[i]).is_zero()) return false;
    }
    if (a.g.size() != b.g.size()) return false;
    for (const auto& [k, m] : a.g) {
        auto it = b.g.find(k);
        if (it == b.g.end() || !same_jmat(m, it->second)) return false;
    }
    return true;
}

// --------------------------------------------------------------------------

CriterionResult criterion1() {
    return timed(1, "reflexive polygons: 16 classes, duality involution, degree-one generation", [](CriterionResult& r) {
        auto polys = enumerate_reflexive_polygons();
        std::size_t good = 0;
        std::string bad;
        for (const auto& v : polys) {
            LatticePolytope p(2, v);
            bool refl = is_reflexive(p);
            bool inv = false, gen = false;
            if (refl) {
                auto dd = dual_polytope(dual_polytope(p)).vertices();
                auto pv = p.vertices();
                std::sort(dd.begin(), dd.end());
                std::sort(pv.begin(), pv.end());
                inv = dd == pv;
                gen = degree_one_generates(p, 5).ok;
            }
            if (refl && inv && gen)
                ++good;
            else if (bad.empty())
                bad = "first failure at a polygon with " + std::to_string(v.size()) + " vertices";
        }
        r.ok = polys.size() == 16 && good == 16;
        r.detail = std::to_string(polys.size()) + " classes found, " + std::to_string(good) + " pass" +
                   (bad.empty() ? "" : "; " + bad);
    });
}

CriterionResult criterion2() {
    return timed(2, "Jacobian ring dims (1, l-3, 1, 0) for regular f, against a dense rank oracle", [](CriterionResult& r) {
        auto polys = enumerate_reflexive_polygons();
        std::size_t good = 0;
        std::ostringstream msg;
        for (const auto& v : polys) {
            LatticePolytope p(2, v);
            LaurentPoly f = find_regular_polynomial(p);
            auto jr = jacobian_ring(f, p);
            auto dims = jr.dims();
            auto oracle = jacobian_dims_oracle(v, f, 3);
            std::size_t l = lattice_point_count(p);
            std::vector<std::size_t> want{1, l - 3, 1, 0};
            if (dims == want && oracle == want)
                ++good;
            else if (msg.tellp() == 0)
                msg << "; mismatch for l = " << l;
        }
        r.ok = polys.size() == 16 && good == 16;
        r.detail = std::to_string(good) + "/" + std::to_string(polys.size()) + " polygons agree" + msg.str();
    });
}

CriterionResult criterion3() {
    return timed(3, "B-model P^2: H^2-generation and MFS of charge 4 (D = N = 3)", [](CriterionResult& r) {
        LatticePolytope p(2, {{1, 0}, {0, 1}, {-1, -1}});
        LaurentPoly f = p2_mirror(Rat(0));
        auto jr = jacobian_ring(f, p);
        auto h2 = check_h2_generation(jr);
        auto res = b_model_pipeline(f, p, {{0, 0}}, 3, 3);
        bool charge = res.mfs.M.d == 4;
        r.ok = h2.ok && res.cert.ok() && res.mfs.cert.ok() && charge;
        r.detail = "h2 " + std::string(h2.ok ? "ok" : "fails") + ", " + std::to_string(res.cert.checks.size()) +
                   " checks" + (res.cert.ok() ? "" : ", first failure: " + res.cert.first_failure()) +
                   ", charge " + to_string(res.mfs.M.d);
    });
}

struct SuiteRun {
    RandomInstance inst;
    UnfoldingResult unf;
};

// Shared by criteria 4 and 5 (and reused for 8).
std::vector<SuiteRun> run_suite(const AcceptanceOptions& opt, int count) {
    std::mt19937_64 rng(opt.seed);
    std::vector<SuiteRun> out;
    for (int i = 0; i < count; ++i) {
        SuiteRun s;
        s.inst = random_instance(rng, opt.order);
        s.unf = universal_unfold(s.inst.T, s.inst.zeta, opt.order);
        out.push_back(std::move(s));
    }
    return out;
}

CriterionResult criterion4(const AcceptanceOptions& opt, const std::vector<SuiteRun>& suite) {
    return timed(4, "randomized unfolding suite: zero residuals, restriction, (IdC)", [&](CriterionResult& r) {
        std::size_t good = 0;
        std::set<std::size_t> ranks;
        std::string first;
        const char* fams[] = {"(n=0)", "(t1)", "(t2)", "(y1)", "(y2)", "(potential)"};
        for (const auto& s : suite) {
            const auto& c = s.unf.cert;
            bool ok = check_mixed_trtlep(s.inst.T).ok();
            for (const char* f : fams) {
                bool seen = false;
                ok = family_ok(c, f, seen) && seen && ok;
            }
            ok = ok && has_check(c, "(IdC) after unfolding") && c.ok();
            const auto& a = s.inst.T.F;
            const auto& b = s.unf.T.F;
            bool rest = restricts_to(b.U, a.U) && restricts_to(b.V, a.V);
            for (std::size_t i = 0; i < a.C.size(); ++i) rest = rest && restricts_to(b.C[i], a.C[i]);
            rest = rest && s.unf.T.W == s.inst.T.W;
            ok = ok && rest;
            if (ok)
                ++good;
            else if (first.empty())
                first = s.inst.label + ": " + (c.ok() ? "restriction differs" : c.first_failure());
            ranks.insert(a.rank);
        }
        r.ok = static_cast<int>(suite.size()) >= 50 && good == suite.size() && ranks.size() == 4;
        r.detail = std::to_string(good) + "/" + std::to_string(suite.size()) + " instances at D = N = " +
                   std::to_string(opt.order) + ", ranks seen " + std::to_string(ranks.size()) +
                   (first.empty() ? "" : "; " + first);
    });
}

CriterionResult criterion5(const AcceptanceOptions& opt, const std::vector<SuiteRun>& suite) {
    return timed(5, "pairing extension: C_y self-adjoint at all orders, mutations detected", [&](CriterionResult& r) {
        std::mt19937_64 rng(opt.seed ^ 0x5eedULL);
        std::size_t good = 0, mutated = 0, detected = 0;
        std::string first;
        for (const auto& s : suite) {
            auto pe = extend_pairings(s.unf, s.inst.T.g);
            if (pe.cert.ok())
                ++good;
            else if (first.empty())
                first = s.inst.label + ": " + pe.cert.first_failure();
            if (s.inst.mixed) continue;
            // inject g^{-1}K, K antisymmetric, at a random monomial of a C_y
            std::size_t n = s.inst.T.F.rank;
            const auto& sp = s.unf.T.F.sp;
            const QMat& g = s.inst.T.g.begin()->second;
            QMat k(n, n);
            std::size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
            k(i, j) = 1;
            k(j, i) = -1;
            QMat x = *inverse(g) * k;
            UnfoldingResult mut = s.unf;
            int yv = sp->nt() + static_cast<int>(rng() % sp->ny());
            std::size_t mono = rng() % sp->size();
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) mut.T.F.C[yv](a, b)[mono] += x(a, b);
            ++mutated;
            try {
                if (!extend_pairings(mut, s.inst.T.g).cert.ok()) ++detected;
            } catch (const Error&) {
                ++detected;
            }
        }
        r.ok = good == suite.size() && mutated >= 10 && detected == mutated;
        r.detail = std::to_string(good) + "/" + std::to_string(suite.size()) + " certified, " + std::to_string(detected) +
                   "/" + std::to_string(mutated) + " mutations detected" + (first.empty() ? "" : "; " + first);
    });
}

CriterionResult criterion6() {
    return timed(6, "limit construction on Jordan blocks: graded dims, q_k, (Pk)", [](CriterionResult& r) {
        std::vector<std::pair<std::vector<int>, int>> cases;
        for (int s = 1; s <= 4; ++s)
            for (int m = 1; m <= 2; ++m) cases.push_back({{s}, m});
        cases.push_back({{3, 1}, 1});
        cases.push_back({{4, 2}, 1});
        cases.push_back({{2, 2, 1}, 1});
        std::size_t good = 0;
        std::string first;
        for (const auto& [sizes, mult] : cases) {
            auto ji = jordan_instance(sizes, mult, 2);
            auto lim = limit_mixed(ji.T, ji.nilpotent);
            std::map<int, std::size_t> want;
            for (int s : sizes) want[s - 1] += mult;
            std::map<int, std::size_t> got;
            for (const auto& [k, d] : lim.graded_dims)
                if (d) got[k] = d;
            bool pk = true, sym = true;
            bool seen_pk = false;
            for (const auto& ch : lim.cert.checks) {
                if (ch.name.rfind("(P", 0) == 0) {
                    seen_pk = true;
                    pk = pk && ch.ok;
                }
                if (ch.name.find("symmetric") != std::string::npos || ch.name.find("nondegenerate") != std::string::npos)
                    sym = sym && ch.ok;
            }
            bool ok = got == want && pk && seen_pk && sym && lim.cert.ok();
            if (ok)
                ++good;
            else if (first.empty())
                first = "block sizes starting " + std::to_string(sizes[0]) + ": " +
                        (lim.cert.ok() ? "graded dims differ" : lim.cert.first_failure());
        }
        r.ok = good == cases.size();
        r.detail = std::to_string(good) + "/" + std::to_string(cases.size()) + " nilpotent configurations" +
                   (first.empty() ? "" : "; " + first);
    });
}

CriterionResult criterion7() {
    return timed(7, "local A-model on P^2 and P^1xP^1: MFS of charge 4 (D = N = 3, cutoff 3)", [](CriterionResult& r) {
        struct Case {
            std::string name;
            ToricSurface s;
            GWTable gw;
            QVec z;
        };
        std::vector<Case> cases{{"P2", surface_p2(), mock_gw_p2(3), {frac(1, 10)}},
                                {"P1xP1", surface_p1xp1(), mock_gw_p1xp1(3), {frac(1, 10), frac(1, 7)}}};
        std::size_t good = 0;
        std::ostringstream msg;
        for (const auto& c : cases) {
            auto res = local_a_pipeline(c.s, c.gw, c.z, 3, 3);
            bool unit = true;
            for (int i = 1; i <= res.sq.H.r; ++i) {
                bool seen = false;
                unit = family_ok(res.sq.cert, "G0 = G" + std::to_string(i), seen) && seen && unit;
            }
            std::set<Rat> eig;
            QMat v = res.lim.T.F.V.constant_part();
            for (std::size_t i = 0; i < v.rows(); ++i) eig.insert(v(i, i));
            bool diag = true;
            for (std::size_t i = 0; i < v.rows(); ++i)
                for (std::size_t j = 0; j < v.cols(); ++j)
                    if (i != j && sgn(v(i, j)) != 0) diag = false;
            bool eigs = diag && eig == std::set<Rat>{Rat(0), Rat(1), Rat(2)};
            bool ok = unit && eigs && res.conditions.EC && res.cert.ok() && res.mfs.cert.ok() && res.mfs.M.d == 4;
            if (ok) ++good;
            msg << c.name << (ok ? " ok" : " FAILS") << " (" << res.cert.checks.size() << " checks"
                << (res.cert.ok() ? "" : ", " + res.cert.first_failure()) << ") ";
        }
        r.ok = good == cases.size();
        r.detail = msg.str();
    });
}

CriterionResult criterion8(const AcceptanceOptions& opt, const std::vector<SuiteRun>& suite) {
    return timed(8, "roundtrip laws: Saito roundtrip, twist inverse, (EC) under twist", [&](CriterionResult& r) {
        std::size_t rt = 0, rt_total = 0, tw = 0, tw_total = 0, ec = 0, ec_total = 0;
        std::string first;
        auto note = [&](const std::string& s) {
            if (first.empty()) first = s;
        };
        std::size_t take = std::min<std::size_t>(suite.size(), 12);
        for (std::size_t i = 0; i < take; ++i) {
            const auto& s = suite[i];
            // charge from V ζ = (d/2) ζ
            Rat d = 0;
            QVec vz = s.inst.T.F.V.constant_part() * s.inst.zeta;
            for (std::size_t k = 0; k < vz.size(); ++k)
                if (sgn(s.inst.zeta[k]) != 0) {
                    d = 2 * vz[k] / s.inst.zeta[k];
                    break;
                }
            ++rt_total;
            try {
                auto pe = extend_pairings(s.unf, s.inst.T.g);
                auto m1 = extract_mfs(s.unf, s.inst.zeta, d, pe.g);
                auto back = mfs_to_mixed(m1.M);
                QVec e0(m1.M.n);
                for (std::size_t a = 0; a < m1.M.n; ++a) e0[a] = m1.M.e[a][0];
                auto m2 = roundtrip_saito(back, e0, d);
                if (m1.cert.ok() && m2.cert.ok() && same_mfs(m1.M, m2.M))
                    ++rt;
                else
                    note(s.inst.label + ": Saito roundtrip differs");
            } catch (const Error& e) {
                note(s.inst.label + ": " + e.what());
            }
            for (const Rat& l : std::vector<Rat>{frac(1, 2), Rat(1), frac(-3, 2), Rat(2)}) {
                ++tw_total;
                if (same_structure(tate_twist(tate_twist(s.inst.T, l), -l), s.inst.T))
                    ++tw;
                else
                    note(s.inst.label + ": twist is not inverted");
                for (const Rat& dd : std::vector<Rat>{d, Rat(d + 1), Rat(d - 2)}) {
                    ++ec_total;
                    bool a = section_conditions(s.inst.T.F, s.inst.zeta, dd).EC;
                    bool b = section_conditions(tate_twist(s.inst.T, l).F, s.inst.zeta, dd + 2 * l).EC;
                    if (a == b && a == (dd == d))
                        ++ec;
                    else
                        note(s.inst.label + ": (EC) changes under twist");
                }
            }
        }
        (void)opt;
        r.ok = rt == rt_total && tw == tw_total && ec == ec_total && rt_total > 0;
        r.detail = "Saito roundtrip " + std::to_string(rt) + "/" + std::to_string(rt_total) + ", twist inverse " +
                   std::to_string(tw) + "/" + std::to_string(tw_total) + ", (EC) shift " + std::to_string(ec) + "/" +
                   std::to_string(ec_total) + (first.empty() ? "" : "; " + first);
    });
}

}  // namespace

// --------------------------------------------------------------------------

std::vector<IVec> polygon_normal_form(const std::vector<IVec>& v) {
    std::size_t n = v.size();
    std::vector<IVec> best;
    for (std::size_t i = 0; i < n; ++i)
        for (int dir : {1, -1}) {
            const IVec& a = v[i];
            const IVec& w = v[(i + n + dir) % n];
            long x, y;
            if (egcd(a[0], a[1], x, y) != 1) throw Unsupported("vertex is not primitive");
            // rows (x, y), (-a1, a0) send a to (1, 0)
            long m[2][2] = {{x, y}, {-a[1], a[0]}};
            long q = m[1][0] * w[0] + m[1][1] * w[1];
            if (q < 0) {
                m[1][0] = -m[1][0];
                m[1][1] = -m[1][1];
                q = -q;
            }
            long p = m[0][0] * w[0] + m[0][1] * w[1];
            long k = floordiv(-p, q);   // p + kq ∈ [0, q)
            m[0][0] += k * m[1][0];
            m[0][1] += k * m[1][1];
            std::vector<IVec> img;
            for (const auto& u : v) img.push_back({m[0][0] * u[0] + m[0][1] * u[1], m[1][0] * u[0] + m[1][1] * u[1]});
            std::sort(img.begin(), img.end());
            if (best.empty() || img < best) best = img;
        }
    return best;
}

std::vector<std::vector<IVec>> enumerate_reflexive_polygons() {
    std::vector<Pt> pts;
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y)
            if (x || y) pts.push_back({x, y});
    std::set<std::vector<IVec>> seen;
    std::vector<std::vector<IVec>> out;
    std::vector<Pt> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() >= 3) {
            auto h = hull(cur);
            if (h.size() == cur.size()) {
                bool refl = true;
                for (std::size_t i = 0; i < h.size() && refl; ++i) {
                    const Pt& a = h[i];
                    const Pt& b = h[(i + 1) % h.size()];
                    long det = a.first * b.second - a.second * b.first;
                    long g = std::gcd(b.first - a.first, b.second - a.second);
                    refl = det > 0 && det == g;
                }
                if (refl) {
                    auto v = to_ivecs(h);
                    auto nf = polygon_normal_form(v);
                    if (seen.insert(nf).second) out.push_back(v);
                }
            }
        }
        if (cur.size() == 6) return;
        for (std::size_t i = start; i < pts.size(); ++i) {
            cur.push_back(pts[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

LaurentPoly find_regular_polynomial(const LatticePolytope& delta) {
    auto pts = lattice_points(delta, 1);
    auto verts = delta.vertices();
    std::sort(verts.begin(), verts.end());
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        LaurentPoly f(delta.dim());
        for (const auto& m : pts) {
            if (std::binary_search(verts.begin(), verts.end(), m))
                f.add(m, Rat(1));
            else if (t > 0)
                f.add(m, Rat(static_cast<long>(rng() % 7) - 3));
        }
        if (is_delta_regular(f, delta)) return f;
    }
    throw NotRegular("no regular polynomial found in the search range");
}

std::vector<std::size_t> jacobian_dims_oracle(const std::vector<IVec>& v, const LaurentPoly& f, int kmax) {
    std::size_t n = v.size();
    auto inside = [&](long k, long x, long y) {
        for (std::size_t i = 0; i < n; ++i) {
            const IVec& a = v[i];
            const IVec& b = v[(i + 1) % n];
            long c = (b[0] - a[0]) * (y - k * a[1]) - (b[1] - a[1]) * (x - k * a[0]);
            if (c < 0) return false;
        }
        return true;
    };
    auto points = [&](long k) {
        std::vector<Pt> p;
        for (long x = -3 * k; x <= 3 * k; ++x)
            for (long y = -3 * k; y <= 3 * k; ++y)
                if (inside(k, x, y)) p.push_back({x, y});
        return p;
    };
    std::vector<std::size_t> dims;
    for (long k = 0; k <= kmax; ++k) {
        auto S = points(k);
        std::map<Pt, std::size_t> idx;
        for (std::size_t i = 0; i < S.size(); ++i) idx[S[i]] = i;
        std::vector<QVec> gens;
        if (k > 0)
            for (const auto& m : points(k - 1))
                for (int w = 0; w < 3; ++w) {
                    QVec row(S.size());
                    for (const auto& [e, c] : f.terms) row[idx.at({m.first + e[0], m.second + e[1]})] += c * (w == 0 ? 1L : e[w - 1]);
                    gens.push_back(row);
                }
        dims.push_back(S.size() - dense_rank(gens));
    }
    return dims;
}

RandomInstance random_instance(std::mt19937_64& rng, int D) {
    RandomInstance out;
    int r = 2 + static_cast<int>(rng() % 4);
    bool two = r == 4 && rng() % 2 == 0;
    Algebra A = two ? Algebra(2, 2) : Algebra(r, 1);
    int m = (r >= 3 && rng() % 2 == 0) ? 2 : 1;
    SpacePtr sp = JetSpace::get(m, 0, D, 0);
    std::size_t n = A.size();
    auto elem = [&](std::initializer_list<std::pair<long, Rat>> e) {
        QVec v(n);
        for (const auto& [i, c] : e) v[i] = c;
        return v;
    };
    long X = A.index(1, 0), Y = two ? A.index(0, 1) : A.index(2, 0);
    // linear part: φ_1 = x + .., φ_2 = y (or x^2) + ..; u_0 carries y when m = 1
    std::vector<QVec> phi;
    phi.push_back(elem({{X, Rat(1)}}));
    if (m == 2) phi.push_back(elem({{Y, Rat(1)}}));
    for (auto& p : phi)
        for (std::size_t k = 0; k < n; ++k)
            if (A.deg(k) >= 2 && static_cast<long>(k) != Y && rng() % 2) p[k] += small_rat(rng);
    QVec u0(n);
    u0[0] = small_rat(rng);
    if (two && m == 1) u0[Y] = 1;
    for (std::size_t k = 1; k < n; ++k)
        if (rng() % 3 == 0) u0[k] += small_rat(rng);

    std::vector<Jet> p(n, Jet(sp));
    for (int i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k) p[k] += Jet::variable(sp, i) * phi[i][k];
    for (std::size_t mono = 0; mono < sp->size(); ++mono) {
        int td = sp->tdeg(mono);
        if (td < 2 || td > 3 || rng() % 2) continue;
        for (std::size_t k = 0; k < n; ++k)
            if (rng() % 3 == 0) p[k][mono] += small_rat(rng);
    }
    auto& F = out.T.F;
    F = FrobType::zero(sp, n);
    for (int i = 0; i < m; ++i) {
        std::vector<Jet> dp;
        for (const auto& c : p) dp.push_back(c.derivative(i));
        F.C[i] = A.mult(sp, dp);
    }
    std::vector<Jet> up;
    for (std::size_t k = 0; k < n; ++k) up.push_back(p[k] * Rat(A.deg(k) - 1) + Jet::constant(sp, u0[k]));
    F.U = A.mult(sp, up);
    Rat v0 = frac(static_cast<long>(rng() % 6), 2);
    QMat V(n, n);
    for (std::size_t k = 0; k < n; ++k) V(k, k) = v0 - A.deg(k);
    F.V = JMat::constant(sp, V);

    QMat P = random_unimodular(rng, n);
    QMat Pi = *inverse(P);
    JMat Pj = JMat::constant(sp, P), Pij = JMat::constant(sp, Pi);
    for (auto& c : F.C) c = Pj * c * Pij;
    F.U = Pj * F.U * Pij;
    F.V = Pj * F.V * Pij;
    out.zeta = P * unit_vector(n, 0);

    out.mixed = rng() % 2 == 0;
    int s = A.socle_deg();
    if (!out.mixed) {
        Rat k = 2 * v0 - s;
        Rat c = Rat(1 + static_cast<long>(rng() % 3));
        out.T.W = Flag::trivial(n, static_cast<int>(k.get_num().get_si()));
        out.T.g[out.T.W.jumps()[0]] = Pi.transpose() * A.socle_pairing() * Pi * c;
    } else {
        std::map<int, QSubspace> steps;
        for (int dg = s; dg >= 0; --dg) {
            std::vector<QVec> vs;
            for (std::size_t k = 0; k < n; ++k)
                if (A.deg(k) >= dg) vs.push_back(P * unit_vector(n, k));
            Rat w = 2 * v0 - 2 * dg;
            steps[static_cast<int>(w.get_num().get_si())] = QSubspace::span(n, vs);
        }
        out.T.W = Flag(n, steps);
        for (int k : out.T.W.jumps()) {
            std::size_t dk = graded_piece(out.T.W, k).basis.cols();
            QMat g;
            do {
                g = QMat(dk, dk);
                for (std::size_t i = 0; i < dk; ++i)
                    for (std::size_t j = i; j < dk; ++j) g(i, j) = g(j, i) = small_rat(rng, false);
            } while (det(g) == 0);
            out.T.g[k] = g;
        }
    }
    std::ostringstream lab;
    lab << (two ? "Q[x,y]/(x^2,y^2)" : "Q[x]/(x^" + std::to_string(r) + ")") << " m=" << m << " v0=" << v0
        << (out.mixed ? " mixed" : " pure");
    out.label = lab.str();
    return out;
}

JordanInstance jordan_instance(const std::vector<int>& sizes, int mult, int D) {
    std::size_t n = 0;
    for (int s : sizes) n += static_cast<std::size_t>(s) * mult;
    QMat N(n, n), V(n, n), g(n, n);
    std::size_t off = 0;
    for (int s : sizes)
        for (int rep = 0; rep < mult; ++rep) {
            for (int i = 0; i < s; ++i) {
                if (i + 1 < s) N(off + i + 1, off + i) = 1;
                V(off + i, off + i) = frac(s - 1, 2) - i;
                g(off + i, off + s - 1 - i) = 1;
            }
            off += s;
        }
    SpacePtr sp = JetSpace::get(1, 0, D, 0);
    JordanInstance ji;
    ji.nilpotent = N;
    ji.T.F = FrobType::zero(sp, n);
    ji.T.F.C[0] = JMat::constant(sp, N);
    ji.T.F.V = JMat::constant(sp, V);
    ji.T.W = Flag::trivial(n, 0);
    ji.T.g[0] = g;
    return ji;
}

ToricSurface surface_p2() {
    ToricSurface s;
    s.rays = {{1, 0}, {0, 1}, {-1, -1}};
    s.nef = {{Rat(1), Rat(0), Rat(0)}};
    return s;
}

ToricSurface surface_p1xp1() {
    ToricSurface s;
    s.rays = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    s.nef = {{Rat(1), Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0), Rat(0)}};
    return s;
}

GWTable mock_gw_p2(int cutoff) {
    GWTable t;
    t.r = 1;
    t.cutoff = cutoff;
    t.N[{1}] = 3;
    t.N[{2}] = frac(-45, 8);
    t.N[{3}] = frac(244, 9);
    return t;
}

GWTable mock_gw_p1xp1(int cutoff) {
    GWTable t;
    t.r = 2;
    t.cutoff = cutoff;
    t.N[{1, 0}] = -2;
    t.N[{0, 1}] = -2;
    t.N[{1, 1}] = -4;
    t.N[{2, 0}] = frac(-1, 4);
    t.N[{0, 2}] = frac(-1, 4);
    t.N[{2, 1}] = -6;
    t.N[{1, 2}] = -6;
    t.N[{3, 0}] = frac(-2, 27);
    t.N[{0, 3}] = frac(-2, 27);
    return t;
}

LaurentPoly p2_mirror(const Rat& a0) {
    LaurentPoly f(2);
    f.add({1, 0}, Rat(1));
    f.add({0, 1}, Rat(1));
    f.add({-1, -1}, Rat(1));
    f.add({0, 0}, a0);
    return f;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
    switch (id) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 6: return criterion6();
    case 7: return criterion7();
    case 4:
    case 5:
    case 8: {
        auto suite = run_suite(opt, id == 8 ? std::min(opt.random_instances, 12) : opt.random_instances);
        return id == 4 ? criterion4(opt, suite) : id == 5 ? criterion5(opt, suite) : criterion8(opt, suite);
    }
    default: throw DimensionMismatch("no acceptance criterion " + std::to_string(id));
    }
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
    std::vector<CriterionResult> out;
    out.push_back(criterion1());
    out.push_back(criterion2());
    out.push_back(criterion3());
    std::vector<SuiteRun> suite;
    auto t0 = std::chrono::steady_clock::now();
    try {
        suite = run_suite(opt, opt.random_instances);
    } catch (const std::exception& e) {
        for (int id : {4, 5, 8}) {
            CriterionResult r;
            r.id = id;
            r.title = "randomized suite";
            r.detail = std::string("suite generation failed: ") + e.what();
            out.push_back(r);
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
        return out;
    }
    double build = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(criterion4(opt, suite));
    out.back().seconds += build;
    out.push_back(criterion5(opt, suite));
    out.push_back(criterion6());
    out.push_back(criterion7());
    out.push_back(criterion8(opt, suite));
    return out;
}

}  // namespace mixfrob
