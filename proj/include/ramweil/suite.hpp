#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ramweil/report.hpp"
#include "ramweil/weil.hpp"

namespace ramweil {

struct RunParams {
    int p = 3, k = 1;
    std::vector<std::uint32_t> modulus;  // k+1 coefficients when k > 1
    int ell = 1, m = 1;
    std::optional<FormType> formToken;
    std::vector<std::vector<long long>> diagCoeffs;  // x-coefficient lists otherwise
    double tol = 1e-6;
    std::uint64_t cap = Ring::kDefaultCap;
    int threads = 1;
};

inline FormSpec buildFormSpec(const RunParams& rp) {
    Field F = Field::make(rp.p, rp.k, rp.modulus);
    Ring A = Ring::makeQuadratic(F, rp.ell);
    if (rp.formToken) return FormSpec::canonical(A, rp.m, *rp.formToken);
    if (rp.diagCoeffs.empty()) throw DomainError("no form given");
    std::vector<AElem> diag;
    for (const auto& coeffs : rp.diagCoeffs) {
        AElem r{};
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            if (2 * j >= static_cast<std::size_t>(A.n)) throw DomainError("diagonal coefficient list too long");
            long long c = coeffs[j];
            Fq v = (c >= 0 && c < static_cast<long long>(F.q())) ? static_cast<Fq>(c) : F.fromInt(c);
            r[2 * j] = static_cast<std::uint16_t>(v);
        }
        diag.push_back(r);
    }
    return FormSpec::make(A, diag);
}

namespace suite_detail {

constexpr std::uint64_t kPairGate = 4'000'000;

inline void addCheck(std::vector<CheckRow>& out, std::string name, double lhs, double rhs,
                     double tol = 0.0) {
    bool pass = std::abs(lhs - rhs) <= tol;
    out.push_back({std::move(name), pass, lhs, rhs, tol});
}

struct Lcg {
    std::uint64_t state = 0x853c49e6748fea9bull;
    std::uint64_t next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 11;
    }
};

// ---------------- ring-level checks ------------------------------------------

inline void ringChecks(const Ring& A, std::vector<CheckRow>& out,
                       std::uint64_t cap = Ring::kDefaultCap) {
    const Field& F = A.field;
    std::uint32_t q = F.q();
    if (A.elemCount() > cap / 10) throw ResourceError("ring suite exceeds cap");

    {
        std::uint64_t bad = 0;
        for (Fq a = 0; a < q; ++a)
            for (Fq b = 0; b < q; ++b)
                if (!(F.psi(a) * F.psi(b) == F.psi(F.add(a, b)))) ++bad;
        addCheck(out, "ring.psi_additive_violations", static_cast<double>(bad), 0);
    }
    {
        std::uint64_t squares = 0;
        for (Fq a = 1; a < q; ++a)
            if (F.isSquare(a)) ++squares;
        addCheck(out, "ring.unit_square_count", static_cast<double>(squares), (q - 1) / 2.0);
    }
    addCheck(out, "ring.nonsquare_unit_stable", static_cast<double>(F.nonsquareUnit()),
             static_cast<double>(F.nonsquareUnit()));

    std::uint64_t total = A.elemCount();
    {
        std::uint64_t bad = 0, fixedMismatch = 0;
        for (std::uint64_t i = 0; i < total; ++i) {
            AElem a = A.elemAt(i);
            if (!(A.involute(A.involute(a)) == a)) ++bad;
            if ((A.involute(a) == a) != A.inR(a)) ++fixedMismatch;
        }
        addCheck(out, "ring.involution_order_two_violations", static_cast<double>(bad), 0);
        addCheck(out, "ring.involution_fixed_ring_mismatches", static_cast<double>(fixedMismatch), 0);
    }
    if (total * total <= kPairGate) {
        std::uint64_t bad = 0, badNorm = 0, badLin = 0;
        for (std::uint64_t i = 0; i < total; ++i) {
            AElem a = A.elemAt(i);
            for (std::uint64_t j = 0; j < total; ++j) {
                AElem b = A.elemAt(j);
                if (!(A.involute(A.mul(a, b)) == A.mul(A.involute(a), A.involute(b)))) ++bad;
                if (!(A.involute(A.add(a, b)) == A.add(A.involute(a), A.involute(b)))) ++bad;
                if (!(A.norm(A.mul(a, b)) == A.mul(A.norm(a), A.norm(b)))) ++badNorm;
                if (A.inR(b) && !(A.dmap(A.mul(b, a)) == A.mul(b, A.dmap(a)))) ++badLin;
            }
        }
        addCheck(out, "ring.involution_automorphism_violations", static_cast<double>(bad), 0);
        addCheck(out, "ring.norm_multiplicative_violations", static_cast<double>(badNorm), 0);
        addCheck(out, "ring.dmap_rlinear_violations", static_cast<double>(badLin), 0);
    }
    {
        std::uint64_t badC2 = 0, badAnti = 0, badC1 = 0;
        bool withC1 = total <= 20000;
        for (std::uint64_t i = 0; i < total; ++i) {
            AElem a = A.elemAt(i);
            if (!A.isZero(A.dmap(A.add(a, A.involute(a))))) ++badC2;
            if (!(A.dmap(A.involute(a)) == A.neg(A.dmap(a)))) ++badAnti;
            if (withC1 && !A.isZero(a)) {
                bool hit = false;
                for (std::uint64_t j = 0; j < total && !hit; ++j)
                    if (!A.isZero(A.dmap(A.mul(a, A.elemAt(j))))) hit = true;
                if (!hit) ++badC1;
            }
        }
        addCheck(out, "ring.dmap_c2_violations", static_cast<double>(badC2), 0);
        addCheck(out, "ring.dmap_antisymmetric_violations", static_cast<double>(badAnti), 0);
        if (withC1) addCheck(out, "ring.dmap_c1_violations", static_cast<double>(badC1), 0);
    }
    addCheck(out, "ring.norm_image_unit_squares", A.normImageMatchesUnitSquares() ? 1 : 0, 1);
    {
        int ell = A.ell();
        auto N = A.normOneGroup();
        std::uint64_t nCap1i = 0;
        for (const auto& z : N)
            if (A.valuation(A.sub(z, A.one())) >= ell) ++nCap1i;
        std::uint64_t rCapI = 0;
        for (std::uint64_t i = 0; i < total; ++i) {
            AElem a = A.elemAt(i);
            if (A.inR(a) && A.valuation(a) >= ell) ++rCapI;
        }
        addCheck(out, "ring.norm_one_quotient_size", static_cast<double>(N.size() / nCap1i),
                 static_cast<double>(2 * rCapI));
    }
    addCheck(out, "ring.lambda_primitive", primitivityCheck(AddChar::lambda(A)) ? 1 : 0, 1);
    addCheck(out, "ring.mu_primitive", primitivityCheck(AddChar::mu(A)) ? 1 : 0, 1);
}

// ---------------- hermitian-module checks -------------------------------------

inline void hermChecks(const FormSpec& spec, const GroupTable& t, const OrbitReport& orb,
                       const std::vector<VecV>& reps, std::vector<CheckRow>& out) {
    const Ring& A = spec.ring;
    std::uint64_t nv = vecCount(spec);

    if (nv * nv <= kPairGate) {
        std::uint64_t bad = 0;
        for (std::uint64_t i = 0; i < nv; ++i) {
            VecV u = vecAt(spec, i);
            for (std::uint64_t j = 0; j < nv; ++j) {
                VecV v = vecAt(spec, j);
                if (!(hEval(spec, v, u) == A.involute(hEval(spec, u, v)))) ++bad;
            }
        }
        addCheck(out, "herm.h_hermitian_violations", static_cast<double>(bad), 0);
    }
    {
        std::uint64_t bad = 0, dead = 0;
        bool withScan = nv <= 100000;
        for (std::uint64_t i = 0; i < nv; ++i) {
            VecV v = vecAt(spec, i);
            if (!A.isZero(fEval(spec, v, v))) ++bad;
            if (withScan && i > 0) {
                bool hit = false;
                for (std::uint64_t j = 0; j < nv && !hit; ++j)
                    if (!A.isZero(fEval(spec, v, vecAt(spec, j)))) hit = true;
                if (!hit) ++dead;
            }
        }
        addCheck(out, "herm.f_alternating_violations", static_cast<double>(bad), 0);
        if (withScan) addCheck(out, "herm.f_nondegenerate_failures", static_cast<double>(dead), 0);
    }
    if (nv <= 100000) {
        int ell = A.ell();
        std::uint64_t mism = 0;
        for (std::uint64_t i = 0; i < nv; ++i) {
            VecV v = vecAt(spec, i);
            bool perp = true;
            for (std::uint64_t j = 0; j < nv && perp; ++j) {
                VecV w = vecAt(spec, j);
                if (vecValuation(spec, w) < ell) continue;
                if (!A.isZero(hEval(spec, v, w))) perp = false;
            }
            if (perp != (vecValuation(spec, v) >= ell)) ++mism;
        }
        addCheck(out, "herm.iv_perp_mismatches", static_cast<double>(mism), 0);
    }
    {
        std::vector<AElem> lambda = lengthSet(spec);
        std::uint64_t unitsR = 0, squaresR = 0, allR = 0;
        for (std::uint64_t i = 0; i < A.elemCount(); ++i) {
            AElem a = A.elemAt(i);
            if (!A.inR(a)) continue;
            ++allR;
            if (A.isUnit(a)) {
                ++unitsR;
                if (A.field.isSquare(a[0])) ++squaresR;
            }
        }
        bool type1 = formType(spec) == FormType::Type1;
        std::uint64_t expect;
        if (spec.m == 1)
            expect = type1 ? squaresR : unitsR - squaresR;
        else if (spec.m == 2)
            expect = type1 ? allR : unitsR;
        else
            expect = allR;
        addCheck(out, "herm.length_set_vs_classification", static_cast<double>(lambda.size()),
                 static_cast<double>(expect));
        addCheck(out, "herm.primitive_orbits_eq_lengths", static_cast<double>(orb.orbitsPrimitive),
                 static_cast<double>(lambda.size()));

        std::map<std::uint64_t, std::uint32_t> firstOrbit;
        std::uint64_t splitOrbits = 0;
        for (std::uint64_t i = 0; i < nv; ++i) {
            VecV v = vecAt(spec, i);
            if (!isPrimitive(spec, v)) continue;
            std::uint64_t len = A.indexOf(hEval(spec, v, v));
            auto it = firstOrbit.find(len);
            if (it == firstOrbit.end())
                firstOrbit[len] = orb.orbitId[i];
            else if (it->second != orb.orbitId[i])
                ++splitOrbits;
        }
        addCheck(out, "herm.witt_transitivity_violations", static_cast<double>(splitOrbits), 0);
    }
    {
        std::uint64_t nt = transversalSize(spec);
        if (nt * nt <= kPairGate) {
            std::vector<std::uint32_t> ids = orbitsModIV(t);
            std::uint64_t bad = 0;
            for (std::uint64_t i = 0; i < nt; ++i) {
                VecV v = transversalAt(spec, i);
                if (!isPrimitive(spec, v)) continue;
                for (std::uint64_t j = 0; j < nt; ++j) {
                    VecV w = transversalAt(spec, j);
                    if (!isPrimitive(spec, w)) continue;
                    if ((ids[i] == ids[j]) != equivByLength(spec, v, w)) ++bad;
                }
            }
            addCheck(out, "herm.length_class_vs_orbit_mismatches", static_cast<double>(bad), 0);
        }
        std::uint64_t rCapI = 0;
        for (std::uint64_t i = 0; i < A.elemCount(); ++i) {
            AElem a = A.elemAt(i);
            if (A.inR(a) && A.valuation(a) >= A.ell()) ++rCapI;
        }
        addCheck(out, "herm.rep_count_eq_K_over_RcapI", static_cast<double>(reps.size()),
                 static_cast<double>(orb.orbitsPrimitive) / static_cast<double>(rCapI));
        std::uint64_t notSym = 0, nonT = 0;
        for (std::uint64_t i = 0; i < nt; ++i) {
            VecV v = transversalAt(spec, i);
            if (!inTransversal(spec, vecNeg(spec, v))) ++notSym;
            if (!inTransversal(spec, v)) ++nonT;
        }
        addCheck(out, "herm.transversal_symmetric_violations", static_cast<double>(notSym + nonT), 0);
    }
}

// ---------------- group-level checks ------------------------------------------

inline void grpChecks(const GroupTable& t, const AddChar& mu, const std::vector<VecV>& reps,
                      std::vector<CheckRow>& out) {
    const FormSpec& spec = t.spec;
    const Ring& A = spec.ring;
    int ell = A.ell();
    std::uint32_t nU = t.size();

    {
        std::uint64_t bad = 0;
        for (std::uint32_t i = 0; i < nU; ++i)
            if (!matUnitary(spec, t.mat(i))) ++bad;
        addCheck(out, "grp.unitarity_violations", static_cast<double>(bad), 0);
    }
    {
        std::uint64_t bad = 0;
        for (std::uint32_t i = 0; i < nU; ++i)
            if (!t.findKey(matPack(spec, matInvUnitary(spec, t.mat(i))))) ++bad;
        addCheck(out, "grp.inverse_closure_violations", static_cast<double>(bad), 0);
    }
    {
        std::uint64_t bad = 0;
        if (static_cast<std::uint64_t>(nU) * nU <= kPairGate) {
            for (std::uint32_t i = 0; i < nU; ++i) {
                Mat a = t.mat(i);
                for (std::uint32_t j = 0; j < nU; ++j)
                    if (!t.findKey(matPack(spec, matMul(spec, a, t.mat(j))))) ++bad;
            }
        } else {
            Lcg rng;
            for (int trial = 0; trial < 100000; ++trial) {
                std::uint32_t i = static_cast<std::uint32_t>(rng.next() % nU);
                std::uint32_t j = static_cast<std::uint32_t>(rng.next() % nU);
                if (!t.findKey(matPack(spec, matMul(spec, t.mat(i), t.mat(j))))) ++bad;
            }
        }
        addCheck(out, "grp.product_closure_violations", static_cast<double>(bad), 0);
    }
    {
        // independent oracle: filter all m x m matrices by g* G g = G
        unsigned __int128 candidates = 1;
        bool feasible = true;
        for (int e = 0; e < spec.m * spec.m && feasible; ++e) {
            candidates *= A.elemCount();
            if (candidates > 2'000'000) feasible = false;
        }
        if (feasible) {
            std::uint64_t count = 0;
            for (std::uint64_t key = 0; key < static_cast<std::uint64_t>(candidates); ++key)
                if (matUnitary(spec, matUnpack(spec, key))) ++count;
            addCheck(out, "grp.order_vs_bruteforce_oracle", static_cast<double>(count),
                     static_cast<double>(nU));
        }
    }

    Subgroup n = scalarSubgroupN(t);
    Subgroup ui = congruenceSubgroup(t, ell);
    {
        std::uint64_t bad = 0;
        for (auto zi : n.members)
            for (std::uint32_t gi = 0; gi < nU; ++gi)
                if (t.mult(zi, gi) != t.mult(gi, zi)) ++bad;
        addCheck(out, "grp.scalar_center_violations", static_cast<double>(bad), 0);
        addCheck(out, "grp.scalar_count_eq_norm_one", static_cast<double>(n.size()),
                 static_cast<double>(A.normOneGroup().size()));
    }
    addCheck(out, "grp.ui_abelian", isAbelianSubgroup(t, ui) ? 1 : 0, 1);
    addCheck(out, "grp.full_power_congruence_trivial",
             static_cast<double>(congruenceSubgroup(t, A.n).size()), 1);
    addCheck(out, "grp.zero_power_congruence_full",
             static_cast<double>(congruenceSubgroup(t, 0).size()), static_cast<double>(nU));
    {
        QuotientData qd = reductionMap(t, 1);
        Subgroup ker = congruenceSubgroup(t, 1);
        std::vector<char> hit(qd.target.size(), 0);
        for (auto pi : qd.proj) hit[pi] = 1;
        std::uint64_t imageSize = 0;
        for (auto h : hit) imageSize += h;
        addCheck(out, "grp.residue_reduction_surjective", static_cast<double>(imageSize),
                 static_cast<double>(qd.target.size()));
        addCheck(out, "grp.first_isomorphism", static_cast<double>(ker.size()) * imageSize,
                 static_cast<double>(nU));
    }
    {
        std::uint64_t bad = 0;
        for (std::uint32_t gi = 0; gi < nU; ++gi) {
            Mat g = t.mat(gi);
            for (int i = 0; i < spec.m; ++i)
                for (int j = 0; j < spec.m; ++j) {
                    VecV ci{}, cj{};
                    for (int r = 0; r < spec.m; ++r) {
                        ci[r] = g[r * spec.m + i];
                        cj[r] = g[r * spec.m + j];
                    }
                    AElem want = A.dmap(i == j ? spec.diag[i] : A.zero());
                    if (!(A.dmap(hEval(spec, ci, cj)) == want)) ++bad;
                }
        }
        addCheck(out, "grp.f_preserved_violations", static_cast<double>(bad), 0);
    }

    Subgroup nCap1i = intersectSubgroups(t, n, ui);
    std::uint64_t cnMismatch = 0, cbBad = 0, bcBad = 0, stabBad = 0, alphaBad = 0;
    bool stabChecked = static_cast<std::uint64_t>(nU) * ui.size() <= kPairGate;
    for (const VecV& s : reps) {
        Subgroup c = cSubgroup(t, s);
        Subgroup b = bSubgroup(t, c, n);
        Subgroup cn = intersectSubgroups(t, c, n);
        if (cn.members != nCap1i.members) ++cnMismatch;

        // C normal in B with abelian quotient (sampled when large)
        Lcg rng;
        std::uint64_t big = static_cast<std::uint64_t>(b.size()) * b.size();
        std::uint64_t trials = big <= kPairGate ? 0 : 4000;
        if (trials == 0) {
            for (auto bi : b.members) {
                std::uint32_t binv = t.invert(bi);
                for (auto ci : c.members)
                    if (!c.contains(t.mult(t.mult(bi, ci), binv))) ++cbBad;
            }
            for (auto x : b.members)
                for (auto y : b.members)
                    if (!c.contains(t.mult(t.mult(x, y), t.invert(t.mult(y, x))))) ++cbBad;
        } else {
            for (std::uint64_t tr = 0; tr < trials; ++tr) {
                std::uint32_t bi = b.members[rng.next() % b.size()];
                std::uint32_t ci = c.members[rng.next() % c.size()];
                if (!c.contains(t.mult(t.mult(bi, ci), t.invert(bi)))) ++cbBad;
                std::uint32_t x = b.members[rng.next() % b.size()];
                std::uint32_t y = b.members[rng.next() % b.size()];
                if (!c.contains(t.mult(t.mult(x, y), t.invert(t.mult(y, x))))) ++cbBad;
            }
        }

        std::int64_t bcExpected = 2;
        for (int e = 0; e < ell / 2; ++e) bcExpected *= A.field.q();
        if (static_cast<std::int64_t>(b.size() / c.size()) != bcExpected) ++bcBad;

        LinearChar alpha = alphaChar(t, ui, mu, s);
        if (!isMultiplicative(t, alpha)) ++alphaBad;
        if (stabChecked) {
            Subgroup stab = stabilizerOfChar(t, alpha);
            if (stab.members != b.members) ++stabBad;
        }
    }
    addCheck(out, "grp.cn_equals_n_cap_one_plus_i", static_cast<double>(cnMismatch), 0);
    addCheck(out, "grp.cb_normal_abelian_violations", static_cast<double>(cbBad), 0);
    addCheck(out, "grp.bc_index_formula_violations", static_cast<double>(bcBad), 0);
    addCheck(out, "grp.alpha_multiplicative_failures", static_cast<double>(alphaBad), 0);
    if (stabChecked)
        addCheck(out, "grp.alpha_stabilizer_eq_B_violations", static_cast<double>(stabBad), 0);

    {
        // rho generators land in U(i) and alpha_v(rho) = mu(b - b^*)
        std::uint64_t rhoBad = 0;
        Lcg rng;
        for (int trial = 0; trial < 24; ++trial) {
            AElem a = A.monomial(static_cast<Fq>(1 + rng.next() % (A.field.q() - 1)),
                                 ell + static_cast<int>(rng.next() % ell));
            VecV z1 = vecAt(spec, rng.next() % vecCount(spec));
            VecV z2 = vecAt(spec, rng.next() % vecCount(spec));
            Mat rho = rhoGenerator(spec, a, z1, z2);
            auto idx = t.findKey(matPack(spec, rho));
            if (!idx || !ui.contains(*idx)) {
                ++rhoBad;
                continue;
            }
            for (const VecV& s : reps) {
                AElem b1 = A.mul(A.involute(a), A.mul(hEval(spec, s, z1), hEval(spec, z2, s)));
                Phase lhs = mu.value(hEval(spec, matApply(spec, rho, s), s));
                Phase rhs = mu.value(A.sub(b1, A.involute(b1)));
                if (!(lhs == rhs)) ++rhoBad;
            }
        }
        addCheck(out, "grp.rho_generator_violations", static_cast<double>(rhoBad), 0);
    }
}

// ---------------- Heisenberg checks -------------------------------------------

inline void heisChecks(const FormSpec& spec, const AddChar& mu, std::vector<CheckRow>& out) {
    const Ring& A = spec.ring;
    std::uint64_t na = A.elemCount(), nv = vecCount(spec);
    std::uint64_t bad = 0;
    Lcg rng;
    std::vector<HeisElem> sample;
    for (int i = 0; i < 24; ++i) sample.push_back({A.elemAt(rng.next() % na), vecAt(spec, rng.next() % nv)});
    HeisElem id{A.zero(), vecZero()};
    for (const auto& x : sample) {
        HeisElem xi = heisInv(spec, x);
        HeisElem e = heisMul(spec, x, xi);
        if (!(e.scalar == id.scalar) || !(vecKey(spec, e.vec) == 0)) ++bad;
        for (const auto& y : sample) {
            for (const auto& z : sample) {
                HeisElem l = heisMul(spec, heisMul(spec, x, y), z);
                HeisElem r = heisMul(spec, x, heisMul(spec, y, z));
                if (!(l.scalar == r.scalar && vecKey(spec, l.vec) == vecKey(spec, r.vec))) ++bad;
            }
            // conjugation pushes a commutator scalar: x y x^{-1} = y (h(v,w)-h(w,v), 0)
            HeisElem con = heisMul(spec, heisMul(spec, x, y), heisInv(spec, x));
            AElem comm = A.sub(hEval(spec, x.vec, y.vec), hEval(spec, y.vec, x.vec));
            HeisElem want = heisMul(spec, y, HeisElem{comm, vecZero()});
            if (!(con.scalar == want.scalar && vecKey(spec, con.vec) == vecKey(spec, want.vec))) ++bad;
        }
    }
    addCheck(out, "weil.heisenberg_law_violations", static_cast<double>(bad), 0);
    // central subgroup (A, 0) pairs with mu as the Schroedinger central character
    std::uint64_t cbad = 0;
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(na, 64); ++i)
        for (std::uint64_t j = 0; j < std::min<std::uint64_t>(na, 64); ++j) {
            HeisElem x{A.elemAt(i), vecZero()}, y{A.elemAt(j), vecZero()};
            HeisElem xy = heisMul(spec, x, y);
            if (!(mu.value(xy.scalar) == mu.value(x.scalar) * mu.value(y.scalar))) ++cbad;
        }
    addCheck(out, "weil.heisenberg_central_character_violations", static_cast<double>(cbad), 0);
}

// ---------------- Weil-module checks per recursion level ----------------------

inline void weilLevelChecks(const LevelData& L, double tol, std::vector<CheckRow>& out) {
    const GroupTable& t = L.table;
    const FormSpec& spec = t.spec;
    const Ring& A = spec.ring;
    int ell = A.ell();
    std::string pre = "weil.l" + std::to_string(L.depth) + ".";
    std::uint32_t q = A.field.q();

    auto qpow = [&](int e) {
        double r = 1;
        for (int i = 0; i < e; ++i) r *= q;
        return r;
    };

    addCheck(out, pre + "radical_trivial", static_cast<double>(L.radicalCount), 1);
    addCheck(out, pre + "schrodinger_degree_sq",
             static_cast<double>(L.dimX) * static_cast<double>(L.dimX) * static_cast<double>(L.radicalCount),
             static_cast<double>(vecCount(spec)));
    addCheck(out, pre + "omega_at_identity", L.omega[t.identity].real(), static_cast<double>(L.dimX), tol);
    {
        CValue sq = innerProductRaw(L.omega, L.omega);
        addCheck(out, pre + "omega_norm_vs_orbits", std::abs(sq - static_cast<double>(L.orbitRep.orbitsV)),
                 0, tol);
    }
    addCheck(out, pre + "orbits_vs_formula", static_cast<double>(L.orbitRep.orbitsV),
             static_cast<double>(totalOrbitFormula(spec)));
    // orbits on yV minus y^2 V biject with the primitive orbits via v -> yv
    addCheck(out, pre + "orbits_yv_eq_primitive", static_cast<double>(L.orbitRep.orbitsVal1),
             static_cast<double>(L.orbitRep.orbitsPrimitive));
    addCheck(out, pre + "top_bot_dims",
             std::abs(static_cast<double>(L.dimTop) - (qpow(ell * spec.m) - qpow((ell - 1) * spec.m))) +
                 std::abs(static_cast<double>(L.dimBot) - qpow((ell - 1) * spec.m)),
             0);

    {
        // exact homomorphism property of the monomial action, checked for the
        // canonical primitive character
        WeilModule mod = WeilModule::make(spec, AddChar::mu(A));
        std::uint64_t bad = 0;
        std::uint64_t nU = t.size();
        if (nU * nU <= kPairGate) {
            std::vector<Monomial> cache(nU);
            for (std::uint32_t i = 0; i < nU; ++i) cache[i] = weilAction(mod, t.mat(i));
            for (std::uint32_t i = 0; i < nU; ++i)
                for (std::uint32_t j = 0; j < nU; ++j) {
                    Monomial prod = monomialCompose(cache[i], cache[j]);
                    const Monomial& direct = cache[t.mult(i, j)];
                    if (prod.perm != direct.perm) {
                        ++bad;
                        continue;
                    }
                    for (std::uint32_t v = 0; v < mod.dim; ++v)
                        if (!(prod.phase[v] == direct.phase[v])) {
                            ++bad;
                            break;
                        }
                }
        } else {
            Lcg rng;
            for (int trial = 0; trial < 100000; ++trial) {
                std::uint32_t i = static_cast<std::uint32_t>(rng.next() % nU);
                std::uint32_t j = static_cast<std::uint32_t>(rng.next() % nU);
                Monomial prod = monomialCompose(weilAction(mod, t.mat(i)), weilAction(mod, t.mat(j)));
                Monomial direct = weilAction(mod, t.mat(t.mult(i, j)));
                if (prod.perm != direct.perm) {
                    ++bad;
                    continue;
                }
                for (std::uint32_t v = 0; v < mod.dim; ++v)
                    if (!(prod.phase[v] == direct.phase[v])) {
                        ++bad;
                        break;
                    }
            }
        }
        addCheck(out, pre + "action_homomorphism_violations", static_cast<double>(bad), 0);
    }

    {
        // characters are class functions (sampled conjugations)
        std::uint64_t bad = 0;
        Lcg rng;
        std::uint32_t nU = t.size();
        for (int trial = 0; trial < 500; ++trial) {
            std::uint32_t g = static_cast<std::uint32_t>(rng.next() % nU);
            std::uint32_t u = static_cast<std::uint32_t>(rng.next() % nU);
            std::uint32_t conj = t.mult(t.mult(u, g), t.invert(u));
            if (std::abs(L.omega[conj] - L.omega[g]) > 1e-9) ++bad;
            for (const auto& c : L.constituents)
                if (std::abs(c.character[conj] - c.character[g]) > 1e-9) ++bad;
        }
        addCheck(out, pre + "class_function_violations", static_cast<double>(bad), 0);
    }

    addCheck(out, pre + "constituent_count", static_cast<double>(L.constituents.size()),
             static_cast<double>(totalOrbitFormula(spec)));
    {
        std::uint64_t topHere = 0;
        for (const auto& c : L.constituents)
            if (c.layer == L.depth && c.phiIndex >= 0) ++topHere;
        addCheck(out, pre + "top_count_vs_formula", static_cast<double>(topHere),
                 static_cast<double>(topCountFormula(spec)));
        addCheck(out, pre + "top_count_vs_orbits_not_y2", static_cast<double>(topHere),
                 static_cast<double>(L.orbitRep.orbitsNotY2()));
    }
    {
        std::int64_t sum = 0;
        std::uint64_t badNorm = 0, badMult = 0;
        for (const auto& c : L.constituents) {
            sum += c.degree;
            if (c.norm != 1) ++badNorm;
            if (c.multiplicity != 1) ++badMult;
        }
        addCheck(out, pre + "sum_degrees", static_cast<double>(sum), static_cast<double>(L.dimX));
        addCheck(out, pre + "norms_one_violations", static_cast<double>(badNorm), 0);
        addCheck(out, pre + "multiplicity_one_violations", static_cast<double>(badMult), 0);
    }
    {
        double maxCross = 0;
        for (std::size_t i = 0; i < L.constituents.size(); ++i)
            for (std::size_t j = i + 1; j < L.constituents.size(); ++j)
                maxCross = std::max(
                    maxCross, std::abs(innerProductRaw(L.constituents[i].character,
                                                       L.constituents[j].character)));
        addCheck(out, pre + "pairwise_orthogonality_max", maxCross, 0, tol);
    }
    {
        double maxDev = 0;
        for (std::uint32_t gi = 0; gi < t.size(); ++gi) {
            CValue sum{0.0, 0.0};
            for (const auto& c : L.constituents) sum += c.character[gi];
            maxDev = std::max(maxDev, std::abs(sum - L.omega[gi]));
        }
        addCheck(out, pre + "omega_resolution_max_dev", maxDev, 0, tol);
    }
    addCheck(out, pre + "dual_path_max_dev", L.dualPathMaxDev, 0, tol);
    addCheck(out, pre + "projector_eigen_max_dev", L.projectorEigenMaxDev, 0, 1e-9);
    addCheck(out, pre + "projector_dependent", static_cast<double>(L.projectorDependentPairs), 0);

    {
        std::uint64_t badIdx = 0, badLedger = 0, badGal = 0, badBc = 0;
        std::int64_t bcExpected = 2;
        for (int e = 0; e < ell / 2; ++e) bcExpected *= q;
        for (std::size_t si = 0; si < L.sLengths.size(); ++si) {
            std::int64_t expectIdx = L.ucIndex[si] / L.bcIndex[si];
            std::int64_t degSum = 0;
            std::uint64_t nphi = 0;
            for (const auto& c : L.constituents) {
                if (c.layer != L.depth || c.phiIndex < 0 || c.sLength != L.sLengths[si]) continue;
                ++nphi;
                degSum += c.degree;
                if (c.degree != expectIdx) ++badIdx;
                if (c.degree != L.ledgerDeg[si]) ++badLedger;
            }
            if (nphi != L.countG) ++badGal;
            if (degSum != static_cast<std::int64_t>(L.topBlockDim[si])) ++badGal;
            if (L.bcIndex[si] != bcExpected) ++badBc;
        }
        addCheck(out, pre + "degree_eq_UB_index_violations", static_cast<double>(badIdx), 0);
        addCheck(out, pre + "degree_eq_ledger_violations", static_cast<double>(badLedger), 0);
        addCheck(out, pre + "gallagher_block_violations", static_cast<double>(badGal), 0);
        addCheck(out, pre + "bc_index_closed_form_violations", static_cast<double>(badBc), 0);
        addCheck(out, pre + "character_group_size", static_cast<double>(L.countG),
                 static_cast<double>(bcExpected));
    }

    {
        // iota eigenvalue split
        std::uint32_t iota = t.indexOf(scalarMat(spec, A.fromInt(-1)));
        std::uint64_t badEig = 0;
        std::int64_t plusDeg = 0, topPlusDeg = 0;
        for (const auto& c : L.constituents) {
            double eig = c.character[iota].real() / static_cast<double>(c.degree);
            double eigIm = c.character[iota].imag();
            if (std::abs(std::abs(eig) - 1.0) > tol || std::abs(eigIm) > tol) {
                ++badEig;
                continue;
            }
            if (eig > 0) {
                plusDeg += c.degree;
                if (c.layer == L.depth && c.phiIndex >= 0) topPlusDeg += c.degree;
            } else if (c.layer == L.depth && c.phiIndex >= 0) {
                // minus part of Top tracked implicitly by dims below
            }
        }
        addCheck(out, pre + "iota_scalar_violations", static_cast<double>(badEig), 0);
        addCheck(out, pre + "iota_plus_total_degree", static_cast<double>(plusDeg),
                 (static_cast<double>(L.dimX) + 1) / 2);
        addCheck(out, pre + "iota_plus_top_degree", static_cast<double>(topPlusDeg),
                 static_cast<double>(L.dimTop) / 2);
    }

    if (ell == 1) {
        std::uint64_t badClosed = 0;
        FormType type = formType(spec);
        bool neg1sq = A.field.isSquare(A.field.fromInt(-1));
        for (std::size_t si = 0; si < L.sLengths.size(); ++si) {
            AElem len = A.elemAt(L.sLengths[si]);
            std::int64_t expect = degreeClosedForm(spec.m, q, type, neg1sq, tClassOf(A, len));
            for (const auto& c : L.constituents)
                if (c.layer == L.depth && c.phiIndex >= 0 && c.sLength == L.sLengths[si] &&
                    c.degree != expect)
                    ++badClosed;
        }
        addCheck(out, pre + "degree_closed_form_violations", static_cast<double>(badClosed), 0);
    }

    addCheck(out, pre + "kernel_trivial_on_bot", L.kernelTrivialOnBot ? 1 : 0, 1);
    addCheck(out, pre + "kernel_nontrivial_on_top", L.kernelNontrivialOnTop ? 1 : 0, 1);
    addCheck(out, pre + "bot_fixed_point_dim", static_cast<double>(L.fixedPointDim),
             qpow((ell - 1) * spec.m));
    if (ell > 1) {
        addCheck(out, pre + "bot_pullback_max_dev", L.botPullbackMaxDev, 0, tol);
        addCheck(out, pre + "bot_kernel_first_isomorphism",
                 static_cast<double>(L.kernelSize) * static_cast<double>(L.child->table.size()),
                 static_cast<double>(t.size()));
        // y^2 V with the U-action is the quotient module with its own orbits
        addCheck(out, pre + "y2_orbits_eq_quotient_orbits",
                 static_cast<double>(L.orbitRep.orbitsY2),
                 static_cast<double>(L.child->orbitRep.orbitsV));
        weilLevelChecks(*L.child, tol, out);
    }
}

}  // namespace suite_detail

// ---------------- suite entry points -------------------------------------------

inline Report assembleReport(const RunParams& rp, const FormSpec& spec, const LevelData& root,
                             bool fullChecks) {
    Report r;
    r.params.p = rp.p;
    r.params.k = rp.k;
    r.params.ell = rp.ell;
    r.params.m = rp.m;
    for (int i = 0; i < spec.m; ++i) r.params.diag.push_back(spec.ring.indexOf(spec.diag[i]));
    r.params.type = formType(spec) == FormType::Type1 ? "type1" : "typedelta";
    r.groupOrder = root.table.size();
    r.orbitsV = root.orbitRep.orbitsV;
    r.orbitsVMinusYV = root.orbitRep.orbitsPrimitive;
    r.orbitsVMinusY2V = root.orbitRep.orbitsNotY2();
    for (const auto& c : root.constituents)
        r.constituents.push_back({c.layer, c.sLength, c.phiIndex, c.degree, c.norm, c.multiplicity});
    std::sort(r.constituents.begin(), r.constituents.end(), [](const auto& a, const auto& b) {
        if (a.layer != b.layer) return a.layer < b.layer;
        if (a.sLength != b.sLength) return a.sLength < b.sLength;
        return a.phiIndex < b.phiIndex;
    });

    AddChar mu = AddChar::mu(spec.ring);
    std::vector<VecV> reps = canonicalReps(spec, rp.cap);
    if (fullChecks) {
        suite_detail::ringChecks(spec.ring, r.checks, rp.cap);
        suite_detail::hermChecks(spec, root.table, root.orbitRep, reps, r.checks);
        suite_detail::grpChecks(root.table, mu, reps, r.checks);
        suite_detail::heisChecks(spec, mu, r.checks);
    }
    suite_detail::weilLevelChecks(root, rp.tol, r.checks);
    return r;
}

inline Report runVerify(const RunParams& rp) {
    FormSpec spec = buildFormSpec(rp);
    DecomposeOptions opts;
    opts.cap = rp.cap;
    opts.tol = rp.tol;
    opts.threads = rp.threads;
    LevelData root = decompose(spec, opts);
    return assembleReport(rp, spec, root, true);
}

inline Report runDecomposeReport(const RunParams& rp) {
    FormSpec spec = buildFormSpec(rp);
    DecomposeOptions opts;
    opts.cap = rp.cap;
    opts.tol = rp.tol;
    opts.threads = rp.threads;
    LevelData root = decompose(spec, opts);
    return assembleReport(rp, spec, root, false);
}

inline Report runOrbitsReport(const RunParams& rp) {
    FormSpec spec = buildFormSpec(rp);
    GroupTable t = enumerateUnitary(spec, rp.cap);
    OrbitReport orb = orbits(t, rp.cap);
    Report r;
    r.params.p = rp.p;
    r.params.k = rp.k;
    r.params.ell = rp.ell;
    r.params.m = rp.m;
    for (int i = 0; i < spec.m; ++i) r.params.diag.push_back(spec.ring.indexOf(spec.diag[i]));
    r.params.type = formType(spec) == FormType::Type1 ? "type1" : "typedelta";
    r.groupOrder = t.size();
    r.orbitsV = orb.orbitsV;
    r.orbitsVMinusYV = orb.orbitsPrimitive;
    r.orbitsVMinusY2V = orb.orbitsNotY2();
    return r;
}

// Ring-level report for the norm/counting lemmas at a (q, ell) point.
inline Report runRingSuite(const RunParams& rp) {
    Field F = Field::make(rp.p, rp.k, rp.modulus);
    Ring A = Ring::makeQuadratic(F, rp.ell);
    Report r;
    r.ringOnly = true;
    r.params.p = rp.p;
    r.params.k = rp.k;
    r.params.ell = rp.ell;
    suite_detail::ringChecks(A, r.checks, rp.cap);
    return r;
}

// The selftest matrix: every decomposition point of the acceptance runs plus
// the ring-level norm-lemma points.
struct SelfTestPoint {
    std::string name;
    bool ringOnly;
    int p, ell, m;
    FormType type;
};

inline const std::vector<SelfTestPoint>& selfTestMatrix() {
    static const std::vector<SelfTestPoint> pts = {
        {"p3_l1_m1_type1", false, 3, 1, 1, FormType::Type1},
        {"p3_l1_m2_type1", false, 3, 1, 2, FormType::Type1},
        {"p3_l1_m2_typedelta", false, 3, 1, 2, FormType::TypeDelta},
        {"p3_l2_m1_type1", false, 3, 2, 1, FormType::Type1},
        {"p3_l1_m3_type1", false, 3, 1, 3, FormType::Type1},
        {"p5_l1_m2_type1", false, 5, 1, 2, FormType::Type1},
        {"ring_p3_l1", true, 3, 1, 0, FormType::Type1},
        {"ring_p3_l2", true, 3, 2, 0, FormType::Type1},
        {"ring_p5_l1", true, 5, 1, 0, FormType::Type1},
        {"ring_p7_l1", true, 7, 1, 0, FormType::Type1},
    };
    return pts;
}

inline Report runSelfTestPoint(const SelfTestPoint& pt, const RunParams& base) {
    RunParams rp = base;
    rp.p = pt.p;
    rp.ell = pt.ell;
    rp.m = pt.m;
    rp.formToken = pt.type;
    rp.diagCoeffs.clear();
    return pt.ringOnly ? runRingSuite(rp) : runVerify(rp);
}

}  // namespace ramweil
