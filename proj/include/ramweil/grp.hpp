#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ramweil/errors.hpp"
#include "ramweil/herm.hpp"

namespace ramweil {

// Row-major m x m matrix over A; M[i*m+j] is the entry in row i, column j.
// Column j is the image of the j-th basis vector.
using Mat = std::array<AElem, kMaxRank * kMaxRank>;

inline Mat matIdentity(const FormSpec& s) {
    Mat g{};
    for (int i = 0; i < s.m; ++i) g[i * s.m + i] = s.ring.one();
    return g;
}

inline Mat matMul(const FormSpec& s, const Mat& a, const Mat& b) {
    Mat c{};
    const Ring& A = s.ring;
    for (int i = 0; i < s.m; ++i)
        for (int j = 0; j < s.m; ++j) {
            AElem acc{};
            for (int t = 0; t < s.m; ++t) acc = A.add(acc, A.mul(a[i * s.m + t], b[t * s.m + j]));
            c[i * s.m + j] = acc;
        }
    return c;
}

inline VecV matApply(const FormSpec& s, const Mat& g, const VecV& v) {
    VecV w{};
    const Ring& A = s.ring;
    for (int i = 0; i < s.m; ++i) {
        AElem acc{};
        for (int j = 0; j < s.m; ++j) acc = A.add(acc, A.mul(g[i * s.m + j], v[j]));
        w[i] = acc;
    }
    return w;
}

inline Mat matConjTranspose(const FormSpec& s, const Mat& g) {
    Mat h{};
    for (int i = 0; i < s.m; ++i)
        for (int j = 0; j < s.m; ++j) h[i * s.m + j] = s.ring.involute(g[j * s.m + i]);
    return h;
}

// g^* G g = G, coefficientwise exact.
inline bool matUnitary(const FormSpec& s, const Mat& g) {
    const Ring& A = s.ring;
    for (int i = 0; i < s.m; ++i)
        for (int j = 0; j < s.m; ++j) {
            AElem acc{};
            for (int t = 0; t < s.m; ++t)
                acc = A.add(acc, A.mul(A.involute(g[t * s.m + i]), A.mul(s.diag[t], g[t * s.m + j])));
            AElem want = (i == j) ? s.diag[i] : A.zero();
            if (acc != want) return false;
        }
    return true;
}

// For unitary g the inverse is G^{-1} g^* G.
inline Mat matInvUnitary(const FormSpec& s, const Mat& g) {
    const Ring& A = s.ring;
    Mat h{};
    for (int i = 0; i < s.m; ++i) {
        AElem ri = A.inv(s.diag[i]);
        for (int j = 0; j < s.m; ++j) h[i * s.m + j] = A.mul(ri, A.mul(A.involute(g[j * s.m + i]), s.diag[j]));
    }
    return h;
}

inline Mat scalarMat(const FormSpec& s, const AElem& z) {
    Mat g{};
    for (int i = 0; i < s.m; ++i) g[i * s.m + i] = z;
    return g;
}

// 64-bit canonical key: mixed-radix over entries in row-major order.
inline bool matKeyFits(const FormSpec& s) {
    unsigned __int128 total = 1;
    std::uint64_t per = s.ring.elemCount();
    for (int e = 0; e < s.m * s.m; ++e) {
        total *= per;
        if (total > (static_cast<unsigned __int128>(1) << 63)) return false;
    }
    return true;
}

inline std::uint64_t matPack(const FormSpec& s, const Mat& g) {
    std::uint64_t per = s.ring.elemCount(), key = 0;
    for (int e = s.m * s.m - 1; e >= 0; --e) key = key * per + s.ring.indexOf(g[e]);
    return key;
}

inline Mat matUnpack(const FormSpec& s, std::uint64_t key) {
    Mat g{};
    std::uint64_t per = s.ring.elemCount();
    for (int e = 0; e < s.m * s.m; ++e) {
        g[e] = s.ring.elemAt(key % per);
        key /= per;
    }
    return g;
}

// Byte encoding for persisted tables: columns concatenated, each entry in
// the ring's little-endian coefficient encoding.
inline std::string matEncode(const FormSpec& s, const Mat& g) {
    std::string out;
    out.reserve(static_cast<std::size_t>(s.m) * s.m * s.ring.n * s.ring.field.k());
    for (int j = 0; j < s.m; ++j)
        for (int i = 0; i < s.m; ++i) s.ring.encodeTo(g[i * s.m + j], out);
    return out;
}

inline Mat matDecode(const FormSpec& s, const std::string& bytes, std::size_t offset) {
    Mat g{};
    const Ring& A = s.ring;
    std::size_t pos = offset;
    for (int j = 0; j < s.m; ++j)
        for (int i = 0; i < s.m; ++i) {
            AElem a{};
            for (int c = 0; c < A.n; ++c) {
                Fq v = 0, w = 1;
                for (int d = 0; d < A.field.k(); ++d) {
                    v += static_cast<Fq>(static_cast<unsigned char>(bytes[pos++])) * w;
                    w *= A.field.p();
                }
                a[c] = static_cast<std::uint16_t>(v);
            }
            g[i * s.m + j] = a;
        }
    return g;
}

// The fully enumerated unitary group U = U_m(A), elements sorted by
// canonical key. Only the packed keys are stored; matrices are decoded on
// demand and products recomputed, so memory stays linear in |U|.
class GroupTable {
  public:
    FormSpec spec;
    std::vector<std::uint64_t> keys;
    std::uint32_t identity = 0;

    std::uint32_t size() const { return static_cast<std::uint32_t>(keys.size()); }

    Mat mat(std::uint32_t i) const { return matUnpack(spec, keys[i]); }

    std::optional<std::uint32_t> findKey(std::uint64_t key) const {
        auto it = std::lower_bound(keys.begin(), keys.end(), key);
        if (it == keys.end() || *it != key) return std::nullopt;
        return static_cast<std::uint32_t>(it - keys.begin());
    }

    std::uint32_t indexOf(const Mat& g) const {
        auto i = findKey(matPack(spec, g));
        if (!i) throw ConsistencyError("matrix not found in group table");
        return *i;
    }

    std::uint32_t mult(std::uint32_t i, std::uint32_t j) const { return indexOf(matMul(spec, mat(i), mat(j))); }

    std::uint32_t invert(std::uint32_t i) const { return indexOf(matInvUnitary(spec, mat(i))); }

    VecV apply(std::uint32_t i, const VecV& v) const { return matApply(spec, mat(i), v); }
};

// Column-extension enumeration: column j runs over all vectors of length
// r_j orthogonal to the previous columns. Such column tuples are exactly
// the unitary matrices, so the search is exhaustive without filtering all
// of GL_m(A).
inline GroupTable enumerateUnitary(const FormSpec& spec, std::uint64_t cap = Ring::kDefaultCap) {
    if (!matKeyFits(spec)) throw ResourceError("group elements exceed 64-bit keys");
    std::uint64_t nv = vecCount(spec);
    if (nv > cap) throw ResourceError("module too large to enumerate spheres");

    const Ring& A = spec.ring;
    // spheres of vectors with h(v,v) = r, for each distinct diagonal value
    std::map<std::uint64_t, std::vector<std::uint64_t>> spheres;
    for (int j = 0; j < spec.m; ++j) spheres[A.indexOf(spec.diag[j])];
    for (std::uint64_t vi = 0; vi < nv; ++vi) {
        VecV v = vecAt(spec, vi);
        auto it = spheres.find(A.indexOf(hEval(spec, v, v)));
        if (it != spheres.end()) it->second.push_back(vi);
    }

    GroupTable table;
    table.spec = spec;
    std::array<VecV, kMaxRank> cols{};

    auto emit = [&]() {
        Mat g{};
        for (int j = 0; j < spec.m; ++j)
            for (int i = 0; i < spec.m; ++i) g[i * spec.m + j] = cols[j][i];
        if (table.keys.size() >= cap) throw ResourceError("group order exceeds cap");
        table.keys.push_back(matPack(spec, g));
    };

    auto rec = [&](auto&& self, int j) -> void {
        if (j == spec.m) {
            emit();
            return;
        }
        const auto& sphere = spheres[A.indexOf(spec.diag[j])];
        for (std::uint64_t wk : sphere) {
            VecV w = vecAt(spec, wk);
            bool ok = true;
            for (int i = 0; i < j && ok; ++i)
                if (!A.isZero(hEval(spec, cols[i], w))) ok = false;
            if (!ok) continue;
            cols[j] = w;
            self(self, j + 1);
        }
    };
    rec(rec, 0);

    std::sort(table.keys.begin(), table.keys.end());
    table.identity = table.indexOf(matIdentity(spec));
    return table;
}

// A subgroup as a sorted member list plus a membership mask over the table.
struct Subgroup {
    std::vector<std::uint32_t> members;
    std::vector<char> mask;

    static Subgroup fromMembers(const GroupTable& t, std::vector<std::uint32_t> m) {
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
        Subgroup s;
        s.mask.assign(t.size(), 0);
        for (auto i : m) s.mask[i] = 1;
        s.members = std::move(m);
        return s;
    }

    bool contains(std::uint32_t i) const { return mask[i]; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(members.size()); }
};

// N embedded as the scalar matrices z I, z in the norm-one group.
inline Subgroup scalarSubgroupN(const GroupTable& t) {
    std::vector<std::uint32_t> m;
    for (const AElem& z : t.spec.ring.normOneGroup()) m.push_back(t.indexOf(scalarMat(t.spec, z)));
    return Subgroup::fromMembers(t, m);
}

// U(y^j) = {g : g v = v mod y^j V for all v}, i.e. g = 1 mod y^j entrywise.
inline Subgroup congruenceSubgroup(const GroupTable& t, int j) {
    const FormSpec& s = t.spec;
    if (j < 0 || j > s.ring.n) throw DomainError("congruence exponent out of range");
    std::vector<std::uint32_t> m;
    Mat id = matIdentity(s);
    for (std::uint32_t i = 0; i < t.size(); ++i) {
        Mat g = t.mat(i);
        bool ok = true;
        for (int e = 0; e < s.m * s.m && ok; ++e)
            if (s.ring.valuation(s.ring.sub(g[e], id[e])) < j) ok = false;
        if (ok) m.push_back(i);
    }
    return Subgroup::fromMembers(t, m);
}

// C(v) = {g : g v = v mod iV}.
inline Subgroup cSubgroup(const GroupTable& t, const VecV& v) {
    std::vector<std::uint32_t> m;
    for (std::uint32_t i = 0; i < t.size(); ++i)
        if (congruentModIV(t.spec, t.apply(i, v), v)) m.push_back(i);
    return Subgroup::fromMembers(t, m);
}

// B(v) = C(v) N as a product set.
inline Subgroup bSubgroup(const GroupTable& t, const Subgroup& c, const Subgroup& n) {
    std::vector<std::uint32_t> m;
    for (auto ci : c.members)
        for (auto zi : n.members) m.push_back(t.mult(ci, zi));
    return Subgroup::fromMembers(t, m);
}

// rho_{a,z1,z2}: v -> v + a h(z1,v) z2 - a^* h(z2,v) z1, for a in i.
// These land in U(i) and generate enough of it to pin down stabilizers.
inline Mat rhoGenerator(const FormSpec& s, const AElem& a, const VecV& z1, const VecV& z2) {
    const Ring& A = s.ring;
    if (A.valuation(a) < A.ell()) throw DomainError("rho generator needs a in the ideal i");
    AElem as = A.involute(a);
    Mat g = matIdentity(s);
    for (int j = 0; j < s.m; ++j) {
        // h(z, e_j) = z_j^* r_j
        AElem h1 = A.mul(A.involute(z1[j]), s.diag[j]);
        AElem h2 = A.mul(A.involute(z2[j]), s.diag[j]);
        for (int i = 0; i < s.m; ++i) {
            AElem t = A.sub(A.mul(A.mul(a, h1), z2[i]), A.mul(A.mul(as, h2), z1[i]));
            g[i * s.m + j] = A.add(g[i * s.m + j], t);
        }
    }
    return g;
}

// --- orbits -----------------------------------------------------------------

struct OrbitReport {
    std::uint64_t orbitsV = 0;          // all of V
    std::uint64_t orbitsPrimitive = 0;  // V minus yV
    std::uint64_t orbitsVal1 = 0;       // yV minus y^2 V
    std::uint64_t orbitsY2 = 0;         // y^2 V
    std::vector<std::uint64_t> repKeys;
    std::vector<std::uint64_t> sizes;
    std::vector<std::uint32_t> orbitId;  // per vector key

    std::uint64_t orbitsNotY2() const { return orbitsPrimitive + orbitsVal1; }
};

inline OrbitReport orbits(const GroupTable& t, std::uint64_t cap = Ring::kDefaultCap) {
    const FormSpec& s = t.spec;
    std::uint64_t nv = vecCount(s);
    if (nv > cap) throw ResourceError("orbit enumeration exceeds cap");
    OrbitReport rep;
    rep.orbitId.assign(nv, UINT32_MAX);
    for (std::uint64_t vi = 0; vi < nv; ++vi) {
        if (rep.orbitId[vi] != UINT32_MAX) continue;
        VecV v = vecAt(s, vi);
        std::uint32_t oid = static_cast<std::uint32_t>(rep.repKeys.size());
        std::uint64_t size = 0;
        for (std::uint32_t gi = 0; gi < t.size(); ++gi) {
            std::uint64_t wk = vecKey(s, t.apply(gi, v));
            if (rep.orbitId[wk] == UINT32_MAX) {
                rep.orbitId[wk] = oid;
                ++size;
            }
        }
        rep.repKeys.push_back(vi);
        rep.sizes.push_back(size);
        ++rep.orbitsV;
        int val = vecValuation(s, v);
        if (val == 0)
            ++rep.orbitsPrimitive;
        else if (val == 1)
            ++rep.orbitsVal1;
        else
            ++rep.orbitsY2;
    }
    return rep;
}

// Orbit ids of the induced action on V/iV, indexed by transversal position.
inline std::vector<std::uint32_t> orbitsModIV(const GroupTable& t) {
    const FormSpec& s = t.spec;
    std::uint64_t nt = transversalSize(s);
    std::vector<std::uint32_t> id(nt, UINT32_MAX);
    std::uint32_t next = 0;
    for (std::uint64_t ti = 0; ti < nt; ++ti) {
        if (id[ti] != UINT32_MAX) continue;
        VecV v = transversalAt(s, ti);
        for (std::uint32_t gi = 0; gi < t.size(); ++gi) id[transversalIndex(s, t.apply(gi, v))] = next;
        ++next;
    }
    return id;
}

// --- linear characters ------------------------------------------------------

struct LinearChar {
    std::vector<std::uint32_t> members;  // sorted element indices
    std::vector<Phase> values;

    bool definedAt(std::uint32_t i) const {
        auto it = std::lower_bound(members.begin(), members.end(), i);
        return it != members.end() && *it == i;
    }

    Phase at(std::uint32_t i) const {
        auto it = std::lower_bound(members.begin(), members.end(), i);
        if (it == members.end() || *it != i) throw DomainError("character evaluated outside its domain");
        return values[static_cast<std::size_t>(it - members.begin())];
    }
};

// g -> mu(h(g v, v)) on the given subgroup; alpha_v on U(i), beta_v on C(v).
inline LinearChar vectorChar(const GroupTable& t, const Subgroup& dom, const AddChar& mu, const VecV& v) {
    LinearChar ch;
    ch.members = dom.members;
    ch.values.reserve(dom.members.size());
    for (auto gi : dom.members) ch.values.push_back(mu.value(hEval(t.spec, t.apply(gi, v), v)));
    return ch;
}

inline LinearChar alphaChar(const GroupTable& t, const Subgroup& ui, const AddChar& mu, const VecV& v) {
    return vectorChar(t, ui, mu, v);
}

// Exact multiplicativity of a linear character; pairs can be capped.
inline bool isMultiplicative(const GroupTable& t, const LinearChar& ch, std::uint64_t maxPairs = 4'000'000) {
    std::uint64_t nm = ch.members.size();
    if (nm * nm <= maxPairs) {
        for (auto a : ch.members)
            for (auto b : ch.members) {
                std::uint32_t c = t.mult(a, b);
                if (!ch.definedAt(c) || !(ch.at(c) == ch.at(a) * ch.at(b))) return false;
            }
        return true;
    }
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 11;
    };
    for (int trial = 0; trial < 100000; ++trial) {
        std::uint32_t a = ch.members[next() % nm], b = ch.members[next() % nm];
        std::uint32_t c = t.mult(a, b);
        if (!ch.definedAt(c) || !(ch.at(c) == ch.at(a) * ch.at(b))) return false;
    }
    return true;
}

// Brute-force stabilizer of a character on a (normal) subgroup:
// {g : ch(g^{-1} u g) = ch(u) for all u in the domain}.
inline Subgroup stabilizerOfChar(const GroupTable& t, const LinearChar& ch) {
    std::vector<std::uint32_t> m;
    for (std::uint32_t gi = 0; gi < t.size(); ++gi) {
        std::uint32_t inv = t.invert(gi);
        bool ok = true;
        for (std::size_t u = 0; u < ch.members.size() && ok; ++u) {
            std::uint32_t c = t.mult(t.mult(inv, ch.members[u]), gi);
            if (!ch.definedAt(c) || !(ch.at(c) == ch.values[u])) ok = false;
        }
        if (ok) m.push_back(gi);
    }
    return Subgroup::fromMembers(t, m);
}

inline Subgroup intersectSubgroups(const GroupTable& t, const Subgroup& a, const Subgroup& b) {
    std::vector<std::uint32_t> m;
    for (auto x : a.members)
        if (b.contains(x)) m.push_back(x);
    return Subgroup::fromMembers(t, m);
}

inline bool isAbelianSubgroup(const GroupTable& t, const Subgroup& s, std::uint64_t maxPairs = 4'000'000) {
    std::uint64_t n = s.members.size();
    if (n * n <= maxPairs) {
        for (auto a : s.members)
            for (auto b : s.members) {
                if (b >= a) break;
                if (t.mult(a, b) != t.mult(b, a)) return false;
            }
        return true;
    }
    std::uint64_t state = 0x2545f4914f6cdd1dull;
    for (int trial = 0; trial < 100000; ++trial) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        std::uint32_t a = s.members[(state >> 11) % n];
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        std::uint32_t b = s.members[(state >> 11) % n];
        if (t.mult(a, b) != t.mult(b, a)) return false;
    }
    return true;
}

namespace detail {

// Cosets of M in H (both subgroups of the table, M <= H). Returns the coset
// id per member of H, with ids ordered by least member index.
struct CosetData {
    std::vector<std::uint32_t> reps;                    // least member per coset
    std::vector<std::uint32_t> cosetOfPos;              // per position in H.members
    std::uint32_t idCoset = 0;

    std::uint32_t cosetOf(const std::vector<std::uint32_t>& members, std::uint32_t elem) const {
        auto it = std::lower_bound(members.begin(), members.end(), elem);
        if (it == members.end() || *it != elem) throw DomainError("element outside subgroup");
        return cosetOfPos[static_cast<std::size_t>(it - members.begin())];
    }
};

inline CosetData cosets(const GroupTable& t, const Subgroup& h, const Subgroup& m) {
    for (auto x : m.members)
        if (!h.contains(x)) throw DomainError("quotient subgroup not contained in domain");
    CosetData cd;
    cd.cosetOfPos.assign(h.members.size(), UINT32_MAX);
    for (std::size_t pos = 0; pos < h.members.size(); ++pos) {
        if (cd.cosetOfPos[pos] != UINT32_MAX) continue;
        std::uint32_t cid = static_cast<std::uint32_t>(cd.reps.size());
        cd.reps.push_back(h.members[pos]);
        for (auto z : m.members) {
            std::uint32_t y = t.mult(h.members[pos], z);
            auto it = std::lower_bound(h.members.begin(), h.members.end(), y);
            if (it == h.members.end() || *it != y) throw DomainError("coset left the subgroup");
            cd.cosetOfPos[static_cast<std::size_t>(it - h.members.begin())] = cid;
        }
    }
    cd.idCoset = cd.cosetOf(h.members, t.identity);
    return cd;
}

}  // namespace detail

enum class RootRule { SmallestArgument, LargestArgument };

// All linear characters of the abelian subgroup `sub` that are trivial on
// `trivialOn`; exactly [sub : trivialOn] of them, built by adjoining
// generators of the quotient greedily by maximal order and enumerating the
// compatible root choices. Order of the result is deterministic.
inline std::vector<LinearChar> abelianCharacters(const GroupTable& t, const Subgroup& sub,
                                                 const Subgroup& trivialOn) {
    if (!isAbelianSubgroup(t, sub)) throw DomainError("character basis needs an abelian subgroup");
    auto cd = detail::cosets(t, sub, trivialOn);
    std::uint32_t nq = static_cast<std::uint32_t>(cd.reps.size());

    auto qmul = [&](std::uint32_t a, std::uint32_t b) {
        return cd.cosetOf(sub.members, t.mult(cd.reps[a], cd.reps[b]));
    };
    auto qorder = [&](std::uint32_t a) {
        std::uint32_t acc = a;
        int ord = 1;
        while (acc != cd.idCoset) {
            acc = qmul(acc, a);
            ++ord;
        }
        return ord;
    };

    std::vector<char> known(nq, 0);
    known[cd.idCoset] = 1;
    std::uint32_t knownCount = 1;

    // chars as phase-per-coset over the currently generated subgroup
    std::vector<std::vector<Phase>> chars{std::vector<Phase>(nq, Phase::one())};

    while (knownCount < nq) {
        std::uint32_t best = UINT32_MAX;
        int bestOrd = 0;
        for (std::uint32_t c = 0; c < nq; ++c) {
            if (known[c]) continue;
            int o = qorder(c);
            if (o > bestOrd) {
                bestOrd = o;
                best = c;
            }
        }
        // relative order over the known subgroup
        int rel = 1;
        std::uint32_t acc = best;
        while (!known[acc]) {
            acc = qmul(acc, best);
            ++rel;
        }
        std::uint32_t gPowRel = acc;  // lands in known

        std::vector<std::uint32_t> oldKnown;
        for (std::uint32_t c = 0; c < nq; ++c)
            if (known[c]) oldKnown.push_back(c);

        std::vector<std::vector<Phase>> extended;
        extended.reserve(chars.size() * rel);
        for (const auto& ch : chars) {
            Phase base = ch[gPowRel];
            for (int k = 0; k < rel; ++k) {
                Phase root = Phase::of(base.num + static_cast<std::int64_t>(k) * base.den,
                                       base.den * rel);
                std::vector<Phase> nch = ch;
                std::uint32_t gp = cd.idCoset;
                Phase rp = Phase::one();
                for (int e = 1; e < rel; ++e) {
                    gp = qmul(gp, best);
                    rp = rp * root;
                    for (auto w : oldKnown) nch[qmul(w, gp)] = ch[w] * rp;
                }
                extended.push_back(std::move(nch));
            }
        }
        chars = std::move(extended);

        std::uint32_t gp = cd.idCoset;
        for (int e = 1; e < rel; ++e) {
            gp = qmul(gp, best);
            for (auto w : oldKnown)
                if (!known[qmul(w, gp)]) {
                    known[qmul(w, gp)] = 1;
                    ++knownCount;
                }
        }
    }

    std::vector<LinearChar> out;
    out.reserve(chars.size());
    for (const auto& ch : chars) {
        LinearChar lc;
        lc.members = sub.members;
        lc.values.reserve(sub.members.size());
        for (std::size_t pos = 0; pos < sub.members.size(); ++pos) lc.values.push_back(ch[cd.cosetOfPos[pos]]);
        out.push_back(std::move(lc));
    }
    if (out.size() * trivialOn.size() != sub.size()) throw ConsistencyError("character count mismatch");
    return out;
}

// Extend a linear character of `sub` to the abelian overgroup `into`,
// adjoining the least missing element each step and taking the root of
// ch(g^n) selected by the rule (smallest argument by default).
inline LinearChar extendCharacter(const GroupTable& t, const Subgroup& sub, const LinearChar& ch,
                                  const Subgroup& into, RootRule rule = RootRule::SmallestArgument) {
    if (!isAbelianSubgroup(t, into)) throw DomainError("character extension needs an abelian overgroup");
    for (auto x : sub.members)
        if (!into.contains(x)) throw DomainError("extension target does not contain the domain");

    // values over the growing known subgroup, indexed by position in `into`
    auto posIn = [&](std::uint32_t elem) {
        auto it = std::lower_bound(into.members.begin(), into.members.end(), elem);
        if (it == into.members.end() || *it != elem) throw DomainError("element escaped the overgroup");
        return static_cast<std::size_t>(it - into.members.begin());
    };

    std::vector<char> known(into.members.size(), 0);
    std::vector<Phase> val(into.members.size(), Phase::one());
    for (std::size_t i = 0; i < ch.members.size(); ++i) {
        std::size_t p = posIn(ch.members[i]);
        known[p] = 1;
        val[p] = ch.values[i];
    }

    for (;;) {
        std::size_t gpos = into.members.size();
        for (std::size_t i = 0; i < into.members.size(); ++i)
            if (!known[i]) {
                gpos = i;
                break;
            }
        if (gpos == into.members.size()) break;
        std::uint32_t g = into.members[gpos];

        int rel = 1;
        std::uint32_t acc = g;
        while (!known[posIn(acc)]) {
            acc = t.mult(acc, g);
            ++rel;
        }
        Phase base = val[posIn(acc)];
        Phase root = (rule == RootRule::SmallestArgument) ? base.root(rel) : base.rootLargest(rel);

        std::vector<std::size_t> oldKnown;
        for (std::size_t i = 0; i < into.members.size(); ++i)
            if (known[i]) oldKnown.push_back(i);
        std::uint32_t gp = t.identity;
        Phase rp = Phase::one();
        for (int e = 1; e < rel; ++e) {
            gp = t.mult(gp, g);
            rp = rp * root;
            for (auto w : oldKnown) {
                std::size_t target = posIn(t.mult(into.members[w], gp));
                known[target] = 1;
                val[target] = val[w] * rp;
            }
        }
    }

    LinearChar out;
    out.members = into.members;
    out.values = std::move(val);
    return out;
}

// gamma_v on B(v) = C(v) N: gamma(c z) = beta(c) delta(z), optionally
// multiplied by phi(z) for phi in the character group G of N.
inline LinearChar gammaChar(const GroupTable& t, const Subgroup& b, const Subgroup& c,
                            const LinearChar& beta, const Subgroup& n, const LinearChar& delta,
                            const LinearChar* phi = nullptr) {
    LinearChar out;
    out.members = b.members;
    out.values.reserve(b.members.size());
    for (auto bi : b.members) {
        bool done = false;
        for (auto zi : n.members) {
            std::uint32_t ci = t.mult(bi, t.invert(zi));
            if (c.contains(ci)) {
                Phase v = beta.at(ci) * delta.at(zi);
                if (phi) v = v * phi->at(zi);
                out.values.push_back(v);
                done = true;
                break;
            }
        }
        if (!done) throw ConsistencyError("element of B(v) with no C(v) N factorization");
    }
    return out;
}

// --- reduction onto the quotient unitary group ------------------------------

struct QuotientData {
    GroupTable target;                 // independently enumerated over A/y^j A
    std::vector<std::uint32_t> proj;   // parent index -> target index
};

inline QuotientData reductionMap(const GroupTable& t, int targetPower, std::uint64_t cap = Ring::kDefaultCap) {
    const FormSpec& s = t.spec;
    if (targetPower < 1 || targetPower >= s.ring.n) throw DomainError("reduction power out of range");
    Ring child = Ring::make(s.ring.field, targetPower);
    std::vector<AElem> diag;
    for (int i = 0; i < s.m; ++i) diag.push_back(s.ring.reduceTo(child, s.diag[i]));
    FormSpec childSpec = FormSpec::make(child, diag);

    QuotientData qd;
    qd.target = enumerateUnitary(childSpec, cap);
    qd.proj.reserve(t.size());
    for (std::uint32_t i = 0; i < t.size(); ++i) {
        Mat g = t.mat(i);
        Mat r{};
        for (int e = 0; e < s.m * s.m; ++e) r[e] = s.ring.reduceTo(child, g[e]);
        qd.proj.push_back(qd.target.indexOf(r));
    }
    return qd;
}

// --- optional persistence ----------------------------------------------------
//
// Flat file: text header (p, k, modulus, n, m, diag encodings, order) then
// the canonical byte encodings of all elements. Loading re-verifies closure
// on a 1% sample.

inline void saveTable(const GroupTable& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open table file for writing");
    const FormSpec& s = t.spec;
    out << "ramweil-table 1\n";
    out << s.ring.field.p() << " " << s.ring.field.k() << " " << s.ring.n << " " << s.m << "\n";
    for (int i = 0; i < s.m; ++i) out << s.ring.indexOf(s.diag[i]) << (i + 1 == s.m ? "\n" : " ");
    out << t.size() << "\n";
    for (std::uint32_t i = 0; i < t.size(); ++i) {
        std::string enc = matEncode(s, t.mat(i));
        out.write(enc.data(), static_cast<std::streamsize>(enc.size()));
    }
}

inline GroupTable loadTable(const Field& field, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open table file");
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "ramweil-table" || version != 1) throw DomainError("not a table file");
    int p = 0, k = 0, n = 0, m = 0;
    in >> p >> k >> n >> m;
    if (p != field.p() || k != field.k()) throw DomainError("table field mismatch");
    Ring A = Ring::make(field, n);
    std::vector<AElem> diag;
    for (int i = 0; i < m; ++i) {
        std::uint64_t idx = 0;
        in >> idx;
        diag.push_back(A.elemAt(idx));
    }
    std::uint64_t count = 0;
    in >> count;
    in.get();  // newline
    FormSpec spec = FormSpec::make(A, diag);
    GroupTable t;
    t.spec = spec;
    std::size_t bytes = static_cast<std::size_t>(m) * m * n * k;
    std::string buf(bytes, '\0');
    for (std::uint64_t i = 0; i < count; ++i) {
        in.read(buf.data(), static_cast<std::streamsize>(bytes));
        if (!in) throw DomainError("truncated table file");
        t.keys.push_back(matPack(spec, matDecode(spec, buf, 0)));
    }
    std::sort(t.keys.begin(), t.keys.end());
    t.identity = t.indexOf(matIdentity(spec));
    // closure spot-check on a deterministic 1% sample
    std::uint64_t state = 0x243f6a8885a308d3ull;
    std::uint64_t trials = count / 100 + 1;
    for (std::uint64_t i = 0; i < trials; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        std::uint32_t a = static_cast<std::uint32_t>((state >> 13) % count);
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        std::uint32_t b = static_cast<std::uint32_t>((state >> 13) % count);
        if (!t.findKey(matPack(spec, matMul(spec, t.mat(a), t.mat(b)))))
            throw ConsistencyError("loaded table is not closed under products");
    }
    return t;
}

}  // namespace ramweil
