#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ramweil/errors.hpp"
#include "ramweil/gf.hpp"
#include "ramweil/phase.hpp"

namespace ramweil {

// Build-time capacities. Coefficients beyond the active truncation degree are
// kept at zero, so plain operator== on the arrays is element equality.
constexpr int kMaxDeg = 12;   // y-truncation degree (n = 2*ell for the main ring)
constexpr int kMaxRank = 6;   // module rank m

using AElem = std::array<std::uint16_t, kMaxDeg>;

// The truncated polynomial ring F_q[y]/(y^n). With n = 2*ell and x := y^2
// this is the ramified quadratic extension A = R[y], y^2 = x, of
// R = F_q[x]/(x^ell); R sits inside A as the even-index coefficients.
// The involution negates odd coefficients, d(r + s y) = 2 s, and the
// norm is a a^*. Quotients A/y^j A reuse the same type with smaller n
// (odd n arises for them and carries the same involution).
class Ring {
  public:
    Field field;
    int n = 2;  // truncation degree: a = c_0 + c_1 y + ... + c_{n-1} y^{n-1}

    Ring() : field(Field::make(3)) {}

    static Ring make(const Field& F, int truncation) {
        if (truncation < 1 || truncation > kMaxDeg) throw ResourceError("truncation degree outside build capacity");
        return Ring{F, truncation};
    }

    // The ramified quadratic extension itself: A = F_q[y]/(y^{2 ell}).
    static Ring makeQuadratic(const Field& F, int ell) {
        if (ell < 1) throw DomainError("ell must be positive");
        return make(F, 2 * ell);
    }

    bool quadratic() const { return n % 2 == 0; }
    int ell() const {
        if (!quadratic()) throw DomainError("odd truncation has no ell");
        return n / 2;
    }

    AElem zero() const { return AElem{}; }

    AElem one() const {
        AElem a{};
        a[0] = 1;
        return a;
    }

    AElem fromInt(long long v) const {
        AElem a{};
        a[0] = static_cast<std::uint16_t>(field.fromInt(v));
        return a;
    }

    // c * y^j
    AElem monomial(Fq c, int j) const {
        AElem a{};
        if (j < n) a[j] = static_cast<std::uint16_t>(c);
        return a;
    }

    AElem add(const AElem& a, const AElem& b) const {
        AElem r{};
        for (int i = 0; i < n; ++i) r[i] = static_cast<std::uint16_t>(field.add(a[i], b[i]));
        return r;
    }

    AElem sub(const AElem& a, const AElem& b) const {
        AElem r{};
        for (int i = 0; i < n; ++i) r[i] = static_cast<std::uint16_t>(field.sub(a[i], b[i]));
        return r;
    }

    AElem neg(const AElem& a) const {
        AElem r{};
        for (int i = 0; i < n; ++i) r[i] = static_cast<std::uint16_t>(field.neg(a[i]));
        return r;
    }

    AElem mul(const AElem& a, const AElem& b) const {
        AElem r{};
        for (int i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; i + j < n; ++j) {
                if (b[j] == 0) continue;
                r[i + j] = static_cast<std::uint16_t>(field.add(r[i + j], field.mul(a[i], b[j])));
            }
        }
        return r;
    }

    AElem scale(Fq c, const AElem& a) const {
        AElem r{};
        for (int i = 0; i < n; ++i) r[i] = static_cast<std::uint16_t>(field.mul(c, a[i]));
        return r;
    }

    bool isUnit(const AElem& a) const { return a[0] != 0; }

    // Power-series inversion against the truncation; exact.
    AElem inv(const AElem& a) const {
        if (!isUnit(a)) throw DomainError("inverting a non-unit of A");
        AElem r{};
        r[0] = static_cast<std::uint16_t>(field.inv(a[0]));
        for (int i = 1; i < n; ++i) {
            Fq s = 0;
            for (int j = 0; j < i; ++j) s = field.add(s, field.mul(a[i - j], r[j]));
            r[i] = static_cast<std::uint16_t>(field.neg(field.mul(s, field.inv(a[0]))));
        }
        return r;
    }

    // Least index with a nonzero coefficient; n for zero. Membership in the
    // ideal y^j A is valuation >= j.
    int valuation(const AElem& a) const {
        for (int i = 0; i < n; ++i)
            if (a[i] != 0) return i;
        return n;
    }

    bool isZero(const AElem& a) const { return valuation(a) == n; }

    // a |-> a^*: negate odd coefficients. Fixed ring is the even part R.
    AElem involute(const AElem& a) const {
        AElem r = a;
        for (int i = 1; i < n; i += 2) r[i] = static_cast<std::uint16_t>(field.neg(a[i]));
        return r;
    }

    bool inR(const AElem& a) const {
        for (int i = 1; i < n; i += 2)
            if (a[i] != 0) return false;
        return true;
    }

    // d(r + s y) = 2 s: writing s = sum c_{2j+1} x^j, the result has 2 c_{2j+1}
    // at even slot 2j. R-linear, kills R, and d(a^*) = -d(a).
    AElem dmap(const AElem& a) const {
        AElem r{};
        Fq two = field.fromInt(2);
        for (int j = 0; 2 * j + 1 < n; ++j) r[2 * j] = static_cast<std::uint16_t>(field.mul(two, a[2 * j + 1]));
        return r;
    }

    AElem norm(const AElem& a) const { return mul(a, involute(a)); }

    // Truncate to a smaller quotient ring (zero the high coefficients).
    AElem reduceTo(const Ring& target, const AElem& a) const {
        AElem r{};
        for (int i = 0; i < target.n; ++i) r[i] = a[i];
        return r;
    }

    // --- canonical enumeration -------------------------------------------

    std::uint64_t elemCount() const {
        std::uint64_t c = 1;
        for (int i = 0; i < n; ++i) c *= field.q();
        return c;
    }

    AElem elemAt(std::uint64_t idx) const {
        AElem a{};
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<std::uint16_t>(idx % field.q());
            idx /= field.q();
        }
        return a;
    }

    std::uint64_t indexOf(const AElem& a) const {
        std::uint64_t idx = 0;
        for (int i = n - 1; i >= 0; --i) idx = idx * field.q() + a[i];
        return idx;
    }

    // Canonical byte encoding: n*k bytes, little-endian coefficient order,
    // each F_q coefficient as k base-p digits.
    void encodeTo(const AElem& a, std::string& out) const {
        for (int i = 0; i < n; ++i) {
            Fq c = a[i];
            for (int j = 0; j < field.k(); ++j) {
                out.push_back(static_cast<char>(c % field.p()));
                c /= field.p();
            }
        }
    }

    std::string encode(const AElem& a) const {
        std::string s;
        s.reserve(static_cast<std::size_t>(n) * field.k());
        encodeTo(a, s);
        return s;
    }

    // All units z with z z^* = 1, in canonical enumeration order.
    std::vector<AElem> normOneGroup(std::uint64_t cap = kDefaultCap) const {
        std::uint64_t total = elemCount();
        if (total > cap) throw ResourceError("norm-one enumeration exceeds cap");
        std::vector<AElem> out;
        AElem one_ = one();
        for (std::uint64_t i = 0; i < total; ++i) {
            AElem a = elemAt(i);
            if (!isUnit(a)) continue;
            if (norm(a) == one_) out.push_back(a);
        }
        return out;
    }

    // Image of the norm map on units equals the set of unit squares of R,
    // which has index 2 in R^x.
    bool normImageMatchesUnitSquares(std::uint64_t cap = kDefaultCap) const {
        std::uint64_t total = elemCount();
        if (total > cap) throw ResourceError("norm-image enumeration exceeds cap");
        std::vector<char> normImage(total, 0), unitSquares(total, 0);
        std::uint64_t nUnitsR = 0;
        for (std::uint64_t i = 0; i < total; ++i) {
            AElem a = elemAt(i);
            if (isUnit(a)) normImage[indexOf(norm(a))] = 1;
            if (inR(a) && isUnit(a)) {
                ++nUnitsR;
                unitSquares[indexOf(mul(a, a))] = 1;
            }
        }
        if (normImage != unitSquares) return false;
        std::uint64_t nSquares = 0;
        for (std::uint64_t i = 0; i < total; ++i) nSquares += unitSquares[i];
        return nUnitsR == 2 * nSquares;
    }

    static constexpr std::uint64_t kDefaultCap = 10'000'000;

  private:
    Ring(const Field& F, int truncation) : field(F), n(truncation) {}
};

// A primitive additive character of A^+ (or of R^+ via the even part).
// lambda(r) = psi(coefficient of x^{ell-1} in r) and mu(a) = lambda(d(a)),
// both twisted by an optional R-unit c: value(a) = canonical(c * a). The
// twist is what the Bot recursion threads through quotient levels; the
// zero twist yields the trivial character (useful only as a test input).
struct AddChar {
    enum Kind { LambdaOnR, MuOnA };

    Kind kind;
    const Ring* ring;
    AElem twist;

    static AddChar lambda(const Ring& A) { return AddChar{LambdaOnR, &A, A.one()}; }
    static AddChar mu(const Ring& A) { return AddChar{MuOnA, &A, A.one()}; }
    static AddChar muTwisted(const Ring& A, const AElem& c) {
        if (!A.inR(c)) throw DomainError("character twist must lie in R");
        return AddChar{MuOnA, &A, c};
    }

    Phase value(const AElem& a) const {
        const Ring& A = *ring;
        if (!A.quadratic()) throw DomainError("additive characters need a quadratic ring");
        AElem b = A.mul(twist, a);
        if (kind == LambdaOnR) {
            if (!A.inR(a)) throw DomainError("lambda applied outside R");
            return A.field.psi(b[A.n - 2]);
        }
        // mu(a) = lambda(d(a)): the top x-coefficient of d is 2 c_{n-1}.
        return A.field.psi(A.field.mul(A.field.fromInt(2), b[A.n - 1]));
    }
};

inline Phase charValue(const AddChar& ch, const AElem& a) { return ch.value(a); }

// In a chain ring a character is primitive (kernel contains no nonzero
// ideal) iff it is nontrivial on the minimal ideal.
inline bool primitivityCheck(const AddChar& ch) {
    const Ring& A = *ch.ring;
    int slot = (ch.kind == AddChar::LambdaOnR) ? A.n - 2 : A.n - 1;
    for (Fq c = 1; c < A.field.q(); ++c) {
        if (!ch.value(A.monomial(c, slot)).isOne()) return true;
    }
    return false;
}

}  // namespace ramweil
