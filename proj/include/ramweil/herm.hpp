#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ramweil/errors.hpp"
#include "ramweil/ring.hpp"

namespace ramweil {

// A vector of V = A^m. Coordinates beyond rank m stay zero.
using VecV = std::array<AElem, kMaxRank>;

enum class FormType { Type1, TypeDelta };

// V = A^m with the diagonal hermitian form h(u, v) = sum u_i^* r_i v_i,
// conjugate-linear in the first slot. The r_i must be units of R; arbitrary
// Gram matrices are rejected rather than diagonalized.
struct FormSpec {
    Ring ring;
    int m = 1;
    std::array<AElem, kMaxRank> diag{};

    static FormSpec make(const Ring& A, const std::vector<AElem>& diag) {
        if (diag.empty() || diag.size() > static_cast<std::size_t>(kMaxRank))
            throw DomainError("rank must be between 1 and build capacity");
        FormSpec s;
        s.ring = A;
        s.m = static_cast<int>(diag.size());
        for (int i = 0; i < s.m; ++i) {
            if (!A.inR(diag[i]) || !A.isUnit(diag[i]))
                throw DomainError("form diagonal entries must be units of R");
            s.diag[i] = diag[i];
        }
        // 64-bit canonical keys must cover V
        double bits = static_cast<double>(s.m) * A.n * A.field.k() * std::log2(static_cast<double>(A.field.p()));
        if (bits > 63.0) throw ResourceError("module exceeds 64-bit vector keys");
        return s;
    }

    // The canonical diagonal of the requested type: alternating {1,-1,...}
    // with the last entry -1 (type 1) or -eps (type delta) and, for odd
    // rank, a duplicated final negative entry; for m = 1 the forms are {1}
    // and {eps}.
    static FormSpec canonical(const Ring& A, int m, FormType type) {
        Fq eps = A.field.nonsquareUnit();
        std::vector<AElem> d;
        for (int i = 0; i < m; ++i) d.push_back(i % 2 == 0 ? A.one() : A.fromInt(-1));
        if (m == 1) {
            if (type == FormType::TypeDelta) d[0] = A.monomial(eps, 0);
        } else if (m % 2 == 1) {
            d[m - 1] = A.fromInt(-1);
            if (type == FormType::TypeDelta) d[m - 1] = A.neg(A.monomial(eps, 0));
        } else if (type == FormType::TypeDelta) {
            d[m - 1] = A.neg(A.monomial(eps, 0));
        }
        return make(A, d);
    }
};

inline VecV vecZero() { return VecV{}; }

inline VecV basisVec(int i, const AElem& c) {
    VecV v{};
    v[i] = c;
    return v;
}

inline VecV vecAdd(const FormSpec& s, const VecV& a, const VecV& b) {
    VecV r{};
    for (int i = 0; i < s.m; ++i) r[i] = s.ring.add(a[i], b[i]);
    return r;
}

inline VecV vecSub(const FormSpec& s, const VecV& a, const VecV& b) {
    VecV r{};
    for (int i = 0; i < s.m; ++i) r[i] = s.ring.sub(a[i], b[i]);
    return r;
}

inline VecV vecNeg(const FormSpec& s, const VecV& a) {
    VecV r{};
    for (int i = 0; i < s.m; ++i) r[i] = s.ring.neg(a[i]);
    return r;
}

inline VecV vecScale(const FormSpec& s, const AElem& c, const VecV& a) {
    VecV r{};
    for (int i = 0; i < s.m; ++i) r[i] = s.ring.mul(c, a[i]);
    return r;
}

inline bool vecIsZero(const FormSpec& s, const VecV& a) {
    for (int i = 0; i < s.m; ++i)
        if (!s.ring.isZero(a[i])) return false;
    return true;
}

// min over coordinates of the y-valuation; v in y^j V iff this is >= j
inline int vecValuation(const FormSpec& s, const VecV& a) {
    int v = s.ring.n;
    for (int i = 0; i < s.m; ++i) v = std::min(v, s.ring.valuation(a[i]));
    return v;
}

// v is primitive iff v lies outside yV, i.e. some coordinate is a unit.
inline bool isPrimitive(const FormSpec& s, const VecV& v) { return vecValuation(s, v) == 0; }

inline AElem hEval(const FormSpec& s, const VecV& u, const VecV& v) {
    AElem acc{};
    for (int i = 0; i < s.m; ++i) {
        AElem t = s.ring.mul(s.ring.involute(u[i]), s.ring.mul(s.diag[i], v[i]));
        acc = s.ring.add(acc, t);
    }
    return acc;
}

// f = d o h: the associated nondegenerate alternating R-bilinear form.
inline AElem fEval(const FormSpec& s, const VecV& u, const VecV& v) { return s.ring.dmap(hEval(s, u, v)); }

// --- canonical enumeration of V ------------------------------------------

inline std::uint64_t vecCount(const FormSpec& s) {
    std::uint64_t c = 1;
    for (int i = 0; i < s.m; ++i) c *= s.ring.elemCount();
    return c;
}

inline VecV vecAt(const FormSpec& s, std::uint64_t idx) {
    VecV v{};
    std::uint64_t per = s.ring.elemCount();
    for (int i = 0; i < s.m; ++i) {
        v[i] = s.ring.elemAt(idx % per);
        idx /= per;
    }
    return v;
}

inline std::uint64_t vecKey(const FormSpec& s, const VecV& v) {
    std::uint64_t per = s.ring.elemCount(), idx = 0;
    for (int i = s.m - 1; i >= 0; --i) idx = idx * per + s.ring.indexOf(v[i]);
    return idx;
}

inline std::string vecEncode(const FormSpec& s, const VecV& v) {
    std::string out;
    out.reserve(static_cast<std::size_t>(s.m) * s.ring.n * s.ring.field.k());
    for (int i = 0; i < s.m; ++i) s.ring.encodeTo(v[i], out);
    return out;
}

// --- the transversal T for V_0 = iV in V ----------------------------------
//
// T is the set of vectors whose coordinates only use coefficients of
// y-degree < ell. It is symmetric (closed under negation), contains 0 and
// has q^{ell*m} elements; reduction mod iV is coefficient truncation.

inline std::uint64_t transversalSize(const FormSpec& s) {
    std::uint64_t c = 1;
    for (int i = 0; i < s.m * s.ring.ell(); ++i) c *= s.ring.field.q();
    return c;
}

inline VecV transversalAt(const FormSpec& s, std::uint64_t idx) {
    VecV v{};
    int ell = s.ring.ell();
    std::uint32_t q = s.ring.field.q();
    for (int i = 0; i < s.m; ++i)
        for (int j = 0; j < ell; ++j) {
            v[i][j] = static_cast<std::uint16_t>(idx % q);
            idx /= q;
        }
    return v;
}

inline bool inTransversal(const FormSpec& s, const VecV& v) {
    int ell = s.ring.ell();
    for (int i = 0; i < s.m; ++i)
        for (int j = ell; j < s.ring.n; ++j)
            if (v[i][j] != 0) return false;
    return true;
}

// Index in T of the representative of v mod iV.
inline std::uint64_t transversalIndex(const FormSpec& s, const VecV& v) {
    int ell = s.ring.ell();
    std::uint32_t q = s.ring.field.q();
    std::uint64_t idx = 0;
    for (int i = s.m - 1; i >= 0; --i)
        for (int j = ell - 1; j >= 0; --j) idx = idx * q + v[i][j];
    return idx;
}

// Is g v congruent to v mod iV, coordinatewise valuation >= ell.
inline bool congruentModIV(const FormSpec& s, const VecV& a, const VecV& b) {
    int ell = s.ring.ell();
    for (int i = 0; i < s.m; ++i)
        for (int j = 0; j < ell; ++j)
            if (a[i][j] != b[i][j]) return false;
    return true;
}

// --- form type, lengths, equivalence ---------------------------------------

// Unit squares of R are detected in the residue field: r is a square in R^x
// iff its constant coefficient is a square in F_q.
inline bool isUnitSquareR(const Ring& A, const AElem& r) {
    if (!A.inR(r) || !A.isUnit(r)) throw DomainError("square test needs a unit of R");
    return A.field.isSquare(r[0]);
}

// Classify against the canonical type-1 determinant: the two equivalence
// classes of nondegenerate hermitian forms are separated by det mod squares.
inline FormType formType(const FormSpec& s) {
    AElem det = s.ring.one();
    for (int i = 0; i < s.m; ++i) det = s.ring.mul(det, s.diag[i]);
    FormSpec ref = FormSpec::canonical(s.ring, s.m, FormType::Type1);
    AElem refdet = s.ring.one();
    for (int i = 0; i < s.m; ++i) refdet = s.ring.mul(refdet, ref.diag[i]);
    return isUnitSquareR(s.ring, s.ring.mul(det, refdet)) ? FormType::Type1 : FormType::TypeDelta;
}

// Lambda: all lengths h(v,v) over primitive vectors, sorted canonically.
inline std::vector<AElem> lengthSet(const FormSpec& s, std::uint64_t cap = Ring::kDefaultCap) {
    std::uint64_t total = vecCount(s);
    if (total > cap) throw ResourceError("length enumeration exceeds cap");
    std::vector<char> seen(s.ring.elemCount(), 0);
    for (std::uint64_t i = 0; i < total; ++i) {
        VecV v = vecAt(s, i);
        if (!isPrimitive(s, v)) continue;
        seen[s.ring.indexOf(hEval(s, v, v))] = 1;
    }
    std::vector<AElem> out;
    for (std::uint64_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.push_back(s.ring.elemAt(i));
    return out;
}

// Lengths agree modulo i cap R; by the orbit description of primitive
// vectors this is the same relation as "same U-orbit mod iV".
inline bool equivByLength(const FormSpec& s, const VecV& v, const VecV& w) {
    if (!isPrimitive(s, v) || !isPrimitive(s, w)) throw DomainError("equivalence is defined on primitive vectors");
    AElem d = s.ring.sub(hEval(s, v, v), hEval(s, w, w));
    return s.ring.valuation(d) >= s.ring.ell();
}

// Length class modulo i cap R, as a canonical key.
inline AElem lengthClassKey(const FormSpec& s, const AElem& len) {
    AElem key{};
    for (int j = 0; j < s.ring.ell(); ++j) key[j] = len[j];
    return key;
}

// One representative in T per equivalence class of primitive vectors,
// scanned in transversal order (so the result is deterministic).
inline std::vector<VecV> canonicalReps(const FormSpec& s, std::uint64_t cap = Ring::kDefaultCap) {
    std::uint64_t total = transversalSize(s);
    if (total > cap) throw ResourceError("representative scan exceeds cap");
    std::vector<char> seen(s.ring.elemCount(), 0);
    std::vector<VecV> out;
    for (std::uint64_t i = 0; i < total; ++i) {
        VecV v = transversalAt(s, i);
        if (!isPrimitive(s, v)) continue;
        AElem key = lengthClassKey(s, hEval(s, v, v));
        std::uint64_t ki = s.ring.indexOf(key);
        if (!seen[ki]) {
            seen[ki] = 1;
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace ramweil
