#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "ramweil/errors.hpp"
#include "ramweil/grp.hpp"
#include "ramweil/parallel.hpp"

namespace ramweil {

using CValue = std::complex<double>;
using ClassFn = std::vector<CValue>;  // one value per group element index

// --- Heisenberg group H(h) ---------------------------------------------------

struct HeisElem {
    AElem scalar;
    VecV vec;
};

inline HeisElem heisMul(const FormSpec& s, const HeisElem& a, const HeisElem& b) {
    return {s.ring.add(s.ring.add(a.scalar, b.scalar), hEval(s, a.vec, b.vec)), vecAdd(s, a.vec, b.vec)};
}

inline HeisElem heisInv(const FormSpec& s, const HeisElem& a) {
    return {s.ring.add(s.ring.neg(a.scalar), hEval(s, a.vec, a.vec)), vecNeg(s, a.vec)};
}

// V(mu) = {v : mu(h(v,u) - h(u,v)) = 1 for all u}. For our nondegenerate h
// and primitive mu this is 0, so the Schroedinger character is fully
// ramified of degree sqrt|V|.
inline std::vector<std::uint64_t> radicalSet(const FormSpec& s, const AddChar& mu,
                                             std::uint64_t cap = Ring::kDefaultCap) {
    std::uint64_t nv = vecCount(s);
    if (nv > cap || nv * nv / 400 > cap) throw ResourceError("radical enumeration exceeds cap");
    std::vector<std::uint64_t> out;
    for (std::uint64_t vi = 0; vi < nv; ++vi) {
        VecV v = vecAt(s, vi);
        bool in = true;
        for (std::uint64_t ui = 0; ui < nv && in; ++ui) {
            VecV u = vecAt(s, ui);
            AElem c = s.ring.sub(hEval(s, v, u), hEval(s, u, v));
            if (!mu.value(c).isOne()) in = false;
        }
        if (in) out.push_back(vi);
    }
    return out;
}

// --- the Weil module ---------------------------------------------------------

// X has basis e_v indexed by the transversal T; every group element acts by
// a monomial matrix g e_v = mu(h(g v, v')) e_{v'} with v' the representative
// of g v mod iV.
struct WeilModule {
    FormSpec spec;
    AddChar mu;
    std::uint32_t dim = 0;

    static WeilModule make(const FormSpec& s, const AddChar& mu) {
        WeilModule m{s, mu, 0};
        std::uint64_t d = transversalSize(s);
        if (d > UINT32_MAX) throw ResourceError("module dimension exceeds capacity");
        m.dim = static_cast<std::uint32_t>(d);
        return m;
    }
};

struct Monomial {
    std::vector<std::uint32_t> perm;  // basis index -> image basis index
    std::vector<Phase> phase;
};

inline Monomial weilAction(const WeilModule& mod, const Mat& g) {
    const FormSpec& s = mod.spec;
    Monomial W;
    W.perm.resize(mod.dim);
    W.phase.resize(mod.dim);
    for (std::uint32_t vi = 0; vi < mod.dim; ++vi) {
        VecV v = transversalAt(s, vi);
        VecV gv = matApply(s, g, v);
        std::uint64_t wi = transversalIndex(s, gv);
        W.perm[vi] = static_cast<std::uint32_t>(wi);
        W.phase[vi] = mod.mu.value(hEval(s, gv, transversalAt(s, wi)));
    }
    return W;
}

inline Monomial monomialCompose(const Monomial& a, const Monomial& b) {
    Monomial c;
    std::size_t d = b.perm.size();
    c.perm.resize(d);
    c.phase.resize(d);
    for (std::size_t v = 0; v < d; ++v) {
        c.perm[v] = a.perm[b.perm[v]];
        c.phase[v] = b.phase[v] * a.phase[b.perm[v]];
    }
    return c;
}

inline void monomialApply(const Monomial& w, const std::vector<CValue>& in, std::vector<CValue>& out) {
    std::fill(out.begin(), out.end(), CValue{0.0, 0.0});
    for (std::size_t v = 0; v < in.size(); ++v) out[w.perm[v]] += w.phase[v].value() * in[v];
}

// Omega(g) = sum over fixed basis indices of the monomial phases.
inline ClassFn weilCharacter(const WeilModule& mod, const GroupTable& t, int threads = 1) {
    ClassFn omega(t.size());
    parallelFor(t.size(), threads, [&](std::uint64_t gi) {
        Monomial W = weilAction(mod, t.mat(static_cast<std::uint32_t>(gi)));
        CValue acc{0.0, 0.0};
        for (std::uint32_t v = 0; v < mod.dim; ++v)
            if (W.perm[v] == v) acc += W.phase[v].value();
        omega[gi] = acc;
    });
    return omega;
}

// (1/|G|) sum x(g) conj(y(g)), deterministically blocked.
inline CValue innerProductRaw(const ClassFn& x, const ClassFn& y, int threads = 1) {
    std::uint64_t n = x.size();
    CValue s = blockSum(n, threads, [&](std::uint64_t i) { return x[i] * std::conj(y[i]); });
    return s / static_cast<double>(n);
}

inline std::int64_t roundToInt(CValue z, double tol, const char* what) {
    double re = std::round(z.real());
    if (std::abs(z.real() - re) > tol || std::abs(z.imag()) > tol)
        throw NumericalError(std::string(what) + ": value does not round to an integer");
    return static_cast<std::int64_t>(re);
}

inline std::int64_t innerProduct(const ClassFn& x, const ClassFn& y, double tol = 1e-6, int threads = 1) {
    return roundToInt(innerProductRaw(x, y, threads), tol, "character inner product");
}

// --- Top/Bot split -----------------------------------------------------------

struct TopBotSplit {
    std::vector<std::uint32_t> top;  // basis indices with primitive v
    std::vector<std::uint32_t> bot;
    std::uint64_t dimTopPlus = 0, dimTopMinus = 0;
};

inline TopBotSplit topBotSplit(const WeilModule& mod) {
    TopBotSplit sp;
    for (std::uint32_t vi = 0; vi < mod.dim; ++vi) {
        if (isPrimitive(mod.spec, transversalAt(mod.spec, vi)))
            sp.top.push_back(vi);
        else
            sp.bot.push_back(vi);
    }
    // T is symmetric and no primitive vector is its own negative, so the
    // iota eigenspaces split Top evenly.
    sp.dimTopPlus = sp.dimTopMinus = sp.top.size() / 2;
    return sp;
}

// --- constituents ------------------------------------------------------------

// E_{phi,s} = (sum_z phi(z^{-1}) gamma_s(z^{-1}) z) e_s with theta = phi gamma_s.
inline std::vector<CValue> projectorVector(const WeilModule& mod, const GroupTable& t, const Subgroup& n,
                                           const LinearChar& theta, std::uint32_t sIdx) {
    if (!isPrimitive(mod.spec, transversalAt(mod.spec, sIdx)))
        throw DomainError("projector vector needs a primitive representative");
    std::vector<CValue> E(mod.dim, CValue{0.0, 0.0});
    for (auto zi : n.members) {
        Monomial W = weilAction(mod, t.mat(zi));
        E[W.perm[sIdx]] += (theta.at(zi).conj() * W.phase[sIdx]).value();
    }
    return E;
}

namespace detail {

inline double norm2(const std::vector<CValue>& v) {
    double s = 0;
    for (auto& c : v) s += std::norm(c);
    return s;
}

}  // namespace detail

// Spin the U-orbit of a seed vector to an orthonormal basis of the module it
// generates (rank growth with a relative tolerance).
inline std::vector<std::vector<CValue>> spinOrbit(const WeilModule& mod, const GroupTable& t,
                                                  const std::vector<CValue>& seed) {
    double scale = std::sqrt(detail::norm2(seed));
    if (scale < 1e-12) throw ConsistencyError("projector vector vanished");
    std::vector<std::vector<CValue>> basis;
    std::vector<CValue> w(mod.dim), r(mod.dim);
    for (std::uint32_t gi = 0; gi < t.size(); ++gi) {
        Monomial W = weilAction(mod, t.mat(gi));
        monomialApply(W, seed, w);
        r = w;
        for (const auto& b : basis) {
            CValue proj{0.0, 0.0};
            for (std::uint32_t v = 0; v < mod.dim; ++v) proj += std::conj(b[v]) * r[v];
            for (std::uint32_t v = 0; v < mod.dim; ++v) r[v] -= proj * b[v];
        }
        double rn = std::sqrt(detail::norm2(r));
        if (rn > 1e-8 * scale) {
            for (auto& c : r) c /= rn;
            basis.push_back(r);
        }
    }
    return basis;
}

// Character of the spanned submodule: chi(g) = sum_i <b_i, W(g) b_i>.
inline ClassFn traceCharacter(const WeilModule& mod, const GroupTable& t,
                              const std::vector<std::vector<CValue>>& basis, int threads = 1) {
    ClassFn chi(t.size());
    parallelFor(t.size(), threads, [&](std::uint64_t gi) {
        Monomial W = weilAction(mod, t.mat(static_cast<std::uint32_t>(gi)));
        CValue acc{0.0, 0.0};
        std::vector<CValue> w(mod.dim);
        for (const auto& b : basis) {
            monomialApply(W, b, w);
            for (std::uint32_t v = 0; v < mod.dim; ++v) acc += std::conj(b[v]) * w[v];
        }
        chi[gi] = acc;
    });
    return chi;
}

// Left-coset representatives of B in U, scanned in canonical order.
inline std::vector<std::uint32_t> leftTransversal(const GroupTable& t, const Subgroup& b) {
    std::vector<std::uint32_t> reps;
    std::vector<char> covered(t.size(), 0);
    for (std::uint32_t gi = 0; gi < t.size(); ++gi) {
        if (covered[gi]) continue;
        reps.push_back(gi);
        for (auto bi : b.members) covered[t.mult(gi, bi)] = 1;
    }
    return reps;
}

// Induced character ind_B^U theta by the transversal formula.
inline ClassFn inducedCharacter(const GroupTable& t, const Subgroup& b, const LinearChar& theta,
                                int threads = 1) {
    std::vector<std::uint32_t> reps = leftTransversal(t, b);
    std::vector<std::uint32_t> repInv(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) repInv[i] = t.invert(reps[i]);
    ClassFn chi(t.size());
    parallelFor(t.size(), threads, [&](std::uint64_t gi) {
        CValue acc{0.0, 0.0};
        for (std::size_t i = 0; i < reps.size(); ++i) {
            std::uint32_t c = t.mult(t.mult(repInv[i], static_cast<std::uint32_t>(gi)), reps[i]);
            if (b.contains(c)) acc += theta.at(c).value();
        }
        chi[gi] = acc;
    });
    return chi;
}

// --- closed-form degrees at ell = 1 -----------------------------------------

enum class TClass { Zero, Square, Nonsquare };

// Degree of either constituent Top^{+-}(s) over F_q[y]/(y^2), by the explicit
// case table: orthogonal-group index [O : Stab] / 2 evaluated per branch.
inline std::int64_t degreeClosedForm(int m, std::uint32_t q, FormType type, bool negOneSquare,
                                     TClass tclass) {
    if (m < 1) throw DomainError("rank must be positive");
    auto power = [&](int e) {
        std::int64_t r = 1;
        for (int i = 0; i < e; ++i) r *= static_cast<std::int64_t>(q);
        return r;
    };
    if (m == 1) {
        if (tclass == TClass::Zero) throw DomainError("rank-1 lengths are units");
        bool consistent = (type == FormType::Type1) == (tclass == TClass::Square);
        if (!consistent) throw DomainError("length class not attained by this form");
        return 1;
    }
    if (m % 2 == 0) {
        int r = m / 2;
        std::int64_t qr = power(r), qr1 = power(r - 1);
        if (tclass == TClass::Zero) {
            if (type == FormType::Type1) return (qr - 1) * (qr1 + 1) / 2;
            if (m == 2) throw DomainError("length 0 not attained by the rank-2 delta form");
            return (qr + 1) * (qr1 - 1) / 2;
        }
        return type == FormType::Type1 ? qr1 * (qr - 1) / 2 : qr1 * (qr + 1) / 2;
    }
    int r = m / 2;
    std::int64_t qr = power(r);
    if (tclass == TClass::Zero) return (power(2 * r) - 1) / 2;
    bool tSquare = tclass == TClass::Square;
    bool plus = (type == FormType::Type1) ? (negOneSquare == tSquare) : (negOneSquare != tSquare);
    return plus ? qr * (qr + 1) / 2 : qr * (qr - 1) / 2;
}

inline TClass tClassOf(const Ring& A, const AElem& len) {
    if (!A.inR(len)) throw DomainError("length must lie in R");
    if (!A.isUnit(len)) {
        if (!A.isZero(len)) throw DomainError("length class needs a unit or zero");
        return TClass::Zero;
    }
    return A.field.isSquare(len[0]) ? TClass::Square : TClass::Nonsquare;
}

// --- full decomposition ------------------------------------------------------

struct ConstituentInfo {
    int layer = 0;                   // recursion depth that produced it
    std::uint64_t sLength = 0;       // canonical ring index of h(s,s) at that layer
    int phiIndex = -1;               // position in the character group G; -1 for the trivial module
    std::int64_t degree = 0;
    std::int64_t norm = 0;           // <chi, chi>
    std::int64_t multiplicity = 0;   // <chi, Omega>
    ClassFn character;               // over the top-level table
};

struct DecomposeOptions {
    std::uint64_t cap = Ring::kDefaultCap;
    double tol = 1e-6;
    int threads = 1;
    RootRule rootRule = RootRule::SmallestArgument;
    bool withSubspacePath = true;  // cross-check induced characters against subspace traces
};

// Everything computed at one recursion depth; `child` holds the Bot side.
struct LevelData {
    int depth = 0;
    GroupTable table;
    ClassFn omega;
    OrbitReport orbitRep;
    std::uint64_t dimX = 0, dimTop = 0, dimBot = 0;
    std::uint64_t radicalCount = 0;
    std::uint64_t countG = 0;
    std::vector<ConstituentInfo> constituents;  // characters over this level's table
    // per-representative diagnostics, aligned with canonicalReps order
    std::vector<std::uint64_t> sLengths;
    std::vector<std::int64_t> bcIndex, ucIndex, ledgerDeg;
    std::vector<std::uint64_t> topBlockDim;
    double dualPathMaxDev = 0.0;
    double botPullbackMaxDev = 0.0;
    double projectorEigenMaxDev = 0.0;
    std::uint64_t projectorDependentPairs = 0;
    std::uint64_t fixedPointDim = 0;
    std::uint64_t kernelSize = 0;
    bool kernelTrivialOnBot = true, kernelNontrivialOnTop = true;
    std::vector<std::uint32_t> projToChild;
    std::unique_ptr<LevelData> child;
};

namespace detail {

inline LinearChar restrictChar(const LinearChar& ch, const Subgroup& sub) {
    LinearChar out;
    out.members = sub.members;
    out.values.reserve(sub.members.size());
    for (auto x : sub.members) out.values.push_back(ch.at(x));
    return out;
}

inline LevelData decomposeLevel(GroupTable&& table, const AElem& twist, int depth,
                                const DecomposeOptions& opts) {
    LevelData L;
    L.depth = depth;
    L.table = std::move(table);
    const GroupTable& t = L.table;
    const FormSpec& spec = t.spec;
    const Ring& A = spec.ring;
    int ell = A.ell();

    AddChar mu = AddChar::muTwisted(A, twist);
    if (!primitivityCheck(mu)) throw ConsistencyError("recursion character lost primitivity");
    WeilModule mod = WeilModule::make(spec, mu);
    L.dimX = mod.dim;

    L.orbitRep = orbits(t, opts.cap);
    L.omega = weilCharacter(mod, t, opts.threads);

    TopBotSplit split = topBotSplit(mod);
    L.dimTop = split.top.size();
    L.dimBot = split.bot.size();
    L.radicalCount = radicalSet(spec, mu, opts.cap).size();

    Subgroup n = scalarSubgroupN(t);
    Subgroup ui = congruenceSubgroup(t, ell);
    Subgroup nCapOneI = intersectSubgroups(t, n, ui);
    std::vector<LinearChar> phis = abelianCharacters(t, n, nCapOneI);
    L.countG = phis.size();

    // degree ledger target: Ubar over A/i with D(s) the stabilizer of s mod iV
    QuotientData ledger = reductionMap(t, ell, opts.cap);

    std::vector<VecV> reps = canonicalReps(spec, opts.cap);
    for (const VecV& s : reps) {
        AElem len = hEval(spec, s, s);
        L.sLengths.push_back(A.indexOf(len));
        std::uint32_t sIdx = static_cast<std::uint32_t>(transversalIndex(spec, s));

        Subgroup c = cSubgroup(t, s);
        Subgroup b = bSubgroup(t, c, n);
        L.bcIndex.push_back(static_cast<std::int64_t>(b.size() / c.size()));
        L.ucIndex.push_back(static_cast<std::int64_t>(t.size() / c.size()));

        // [Ubar : D(s)] / [B : C]
        {
            const FormSpec& qs = ledger.target.spec;
            VecV sbar{};
            for (int i = 0; i < spec.m; ++i) sbar[i] = A.reduceTo(qs.ring, s[i]);
            std::uint64_t stab = 0;
            for (std::uint32_t gi = 0; gi < ledger.target.size(); ++gi)
                if (ledger.target.apply(gi, sbar) == sbar) ++stab;
            std::uint64_t index = ledger.target.size() / stab;
            L.ledgerDeg.push_back(static_cast<std::int64_t>(index / (b.size() / c.size())));
        }

        // dim of the Top(s) block: primitive transversal vectors in this class
        {
            std::uint64_t cnt = 0;
            AElem key = lengthClassKey(spec, len);
            for (auto vi : split.top)
                if (lengthClassKey(spec, hEval(spec, transversalAt(spec, vi), transversalAt(spec, vi))) == key) ++cnt;
            L.topBlockDim.push_back(cnt);
        }

        LinearChar beta = vectorChar(t, c, mu, s);
        Subgroup cn = intersectSubgroups(t, c, n);
        LinearChar delta = extendCharacter(t, cn, restrictChar(beta, cn), n, opts.rootRule);

        std::vector<std::vector<CValue>> seeds;  // E_{phi,s} per phi, for independence
        for (std::size_t pi = 0; pi < phis.size(); ++pi) {
            LinearChar theta = gammaChar(t, b, c, beta, n, delta, &phis[pi]);
            ClassFn chi = inducedCharacter(t, b, theta, opts.threads);

            if (opts.withSubspacePath) {
                std::vector<CValue> seed = projectorVector(mod, t, n, theta, sIdx);
                // eigen relations: z E = theta(z) E on N and g E = beta(g) E on C
                {
                    std::vector<CValue> w(mod.dim);
                    for (auto zi : n.members) {
                        monomialApply(weilAction(mod, t.mat(zi)), seed, w);
                        CValue lam = theta.at(zi).value();
                        for (std::uint32_t v = 0; v < mod.dim; ++v)
                            L.projectorEigenMaxDev =
                                std::max(L.projectorEigenMaxDev, std::abs(w[v] - lam * seed[v]));
                    }
                    for (auto ci2 : c.members) {
                        monomialApply(weilAction(mod, t.mat(ci2)), seed, w);
                        CValue lam = beta.at(ci2).value();
                        for (std::uint32_t v = 0; v < mod.dim; ++v)
                            L.projectorEigenMaxDev =
                                std::max(L.projectorEigenMaxDev, std::abs(w[v] - lam * seed[v]));
                    }
                }
                auto basis = spinOrbit(mod, t, seed);
                ClassFn chiSub = traceCharacter(mod, t, basis, opts.threads);
                double dev = 0;
                for (std::uint32_t gi = 0; gi < t.size(); ++gi)
                    dev = std::max(dev, std::abs(chi[gi] - chiSub[gi]));
                L.dualPathMaxDev = std::max(L.dualPathMaxDev, dev);
                if (dev > opts.tol)
                    throw ConsistencyError("induced and subspace constituent characters disagree");
                seeds.push_back(std::move(seed));
            }

            ConstituentInfo ci;
            ci.layer = depth;
            ci.sLength = A.indexOf(len);
            ci.phiIndex = static_cast<int>(pi);
            ci.degree = roundToInt(chi[t.identity], opts.tol, "constituent degree");
            ci.norm = innerProduct(chi, chi, opts.tol, opts.threads);
            ci.multiplicity = innerProduct(L.omega, chi, opts.tol, opts.threads);
            ci.character = std::move(chi);
            L.constituents.push_back(std::move(ci));
        }

        // the E_{phi,s}, phi in G, are linearly independent
        if (!seeds.empty()) {
            std::vector<std::vector<CValue>> ortho;
            for (auto& sv : seeds) {
                std::vector<CValue> r = sv;
                for (const auto& bv : ortho) {
                    CValue proj{0.0, 0.0};
                    for (std::uint32_t v = 0; v < mod.dim; ++v) proj += std::conj(bv[v]) * r[v];
                    for (std::uint32_t v = 0; v < mod.dim; ++v) r[v] -= proj * bv[v];
                }
                double rn = std::sqrt(detail::norm2(r));
                if (rn > 1e-8 * std::sqrt(detail::norm2(sv))) {
                    for (auto& cv : r) cv /= rn;
                    ortho.push_back(std::move(r));
                } else {
                    ++L.projectorDependentPairs;
                }
            }
        }
    }

    // kernel of reduction mod y^{2(ell-1)} fixes Bot pointwise and no Top constituent
    Subgroup kernel = congruenceSubgroup(t, 2 * (ell - 1));
    L.kernelSize = kernel.size();
    for (auto gi : kernel.members) {
        Monomial W = weilAction(mod, t.mat(gi));
        for (auto vi : split.bot)
            if (W.perm[vi] != vi || !W.phase[vi].isOne()) L.kernelTrivialOnBot = false;
    }
    {
        CValue fix = blockSum(kernel.members.size(), 1, [&](std::uint64_t i) {
            return L.omega[kernel.members[i]];
        });
        L.fixedPointDim = static_cast<std::uint64_t>(
            roundToInt(fix / static_cast<double>(kernel.size()), opts.tol, "fixed-point dimension"));
    }
    for (const auto& ci : L.constituents) {
        bool moved = false;
        for (auto gi : kernel.members)
            if (std::abs(ci.character[gi] - ci.character[t.identity]) > opts.tol) moved = true;
        if (!moved) L.kernelNontrivialOnTop = false;
    }

    if (ell == 1) {
        // Bot = C e_0 is the trivial module
        ConstituentInfo triv;
        triv.layer = depth;
        triv.sLength = 0;
        triv.phiIndex = -1;
        triv.degree = 1;
        triv.character.assign(t.size(), CValue{1.0, 0.0});
        triv.norm = 1;
        triv.multiplicity = innerProduct(L.omega, triv.character, opts.tol, opts.threads);
        L.constituents.push_back(std::move(triv));
    } else {
        // Bot carries the Weil module of the quotient group, of type
        // mu_bar(a) = mu(-y^2 a); recurse and pull the constituents back.
        QuotientData qd = reductionMap(t, A.n - 2, opts.cap);
        L.projToChild = std::move(qd.proj);
        AElem childTwist = qd.target.spec.ring.neg(A.reduceTo(qd.target.spec.ring, twist));
        auto child = std::make_unique<LevelData>(
            decomposeLevel(std::move(qd.target), childTwist, depth + 1, opts));

        // Bot trace must agree with the pulled-back child Weil character.
        for (std::uint32_t gi = 0; gi < t.size(); ++gi) {
            Monomial W = weilAction(mod, t.mat(gi));
            CValue bot{0.0, 0.0};
            for (auto vi : split.bot)
                if (W.perm[vi] == vi) bot += W.phase[vi].value();
            L.botPullbackMaxDev =
                std::max(L.botPullbackMaxDev, std::abs(bot - child->omega[L.projToChild[gi]]));
        }
        if (L.botPullbackMaxDev > opts.tol)
            throw ConsistencyError("Bot does not match the quotient Weil character");

        for (const auto& cc : child->constituents) {
            ConstituentInfo ci;
            ci.layer = cc.layer;
            ci.sLength = cc.sLength;
            ci.phiIndex = cc.phiIndex;
            ci.degree = cc.degree;
            ci.character.resize(t.size());
            for (std::uint32_t gi = 0; gi < t.size(); ++gi)
                ci.character[gi] = cc.character[L.projToChild[gi]];
            ci.norm = innerProduct(ci.character, ci.character, opts.tol, opts.threads);
            ci.multiplicity = innerProduct(L.omega, ci.character, opts.tol, opts.threads);
            L.constituents.push_back(std::move(ci));
        }
        L.child = std::move(child);
    }

    return L;
}

}  // namespace detail

// Decompose the Weil module of U_m(A) into its irreducible constituents,
// peeling Top layers and recursing through Bot.
inline LevelData decompose(const FormSpec& spec, const DecomposeOptions& opts = {}) {
    GroupTable t = enumerateUnitary(spec, opts.cap);
    return detail::decomposeLevel(std::move(t), spec.ring.one(), 0, opts);
}

// Total constituent count against the closed-form orbit count.
inline std::int64_t totalOrbitFormula(const FormSpec& s) {
    std::uint32_t q = s.ring.field.q();
    int ell = s.ring.ell();
    auto qpow = [&](int e) {
        std::int64_t r = 1;
        for (int i = 0; i < e; ++i) r *= q;
        return r;
    };
    if (s.m == 1) return qpow(ell);
    bool type1 = formType(s) == FormType::Type1;
    if (s.m == 2 && !type1) return 2 * qpow(ell) - 1;
    std::int64_t sum = 0;
    for (int e = 1; e <= ell; ++e) sum += qpow(e);
    return 2 * sum + 1;
}

// Closed form for the number of Top constituents at one layer.
inline std::int64_t topCountFormula(const FormSpec& s) {
    std::uint32_t q = s.ring.field.q();
    int ell = s.ring.ell();
    auto qpow = [&](int e) {
        std::int64_t r = 1;
        for (int i = 0; i < e; ++i) r *= q;
        return r;
    };
    if (s.m == 1) return qpow(ell) - qpow(ell - 1);
    bool type1 = formType(s) == FormType::Type1;
    if (s.m == 2 && !type1) return 2 * (qpow(ell) - qpow(ell - 1));
    return 2 * qpow(ell);
}

}  // namespace ramweil
