#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ramweil/grp.hpp"

using namespace ramweil;

namespace {

FormSpec specOf(int p, int ell, std::initializer_list<int> diag) {
    Ring A = Ring::makeQuadratic(Field::make(p), ell);
    std::vector<AElem> d;
    for (int v : diag) d.push_back(A.fromInt(v));
    return FormSpec::make(A, d);
}

VecV basis1(const FormSpec& s) {
    VecV v{};
    v[0] = s.ring.one();
    (void)s;
    return v;
}

}  // namespace

TEST(Grp, EnumerationOrders) {
    EXPECT_EQ(enumerateUnitary(specOf(3, 1, {1})).size(), 6u);
    EXPECT_EQ(enumerateUnitary(specOf(3, 1, {1, -1})).size(), 108u);
    EXPECT_EQ(enumerateUnitary(specOf(3, 1, {1, 1})).size(), 216u);
    EXPECT_EQ(enumerateUnitary(specOf(3, 2, {1})).size(), 18u);
}

TEST(Grp, EnumerationMatchesBruteForceFilter) {
    for (auto diag : {std::vector<int>{1}, {2}, {1, -1}, {1, 1}}) {
        Ring A = Ring::makeQuadratic(Field::make(3), 1);
        std::vector<AElem> d;
        for (int v : diag) d.push_back(A.fromInt(v));
        FormSpec s = FormSpec::make(A, d);
        GroupTable t = enumerateUnitary(s);
        std::uint64_t candidates = 1;
        for (int e = 0; e < s.m * s.m; ++e) candidates *= A.elemCount();
        std::uint64_t count = 0;
        for (std::uint64_t key = 0; key < candidates; ++key)
            if (matUnitary(s, matUnpack(s, key))) ++count;
        EXPECT_EQ(count, t.size());
    }
}

TEST(Grp, CapIsHonored) {
    EXPECT_THROW(enumerateUnitary(specOf(3, 1, {1, -1}), 50), ResourceError);
}

TEST(Grp, TableClosureAndInverses) {
    GroupTable t = enumerateUnitary(specOf(3, 1, {1, -1}));
    for (std::uint32_t i = 0; i < t.size(); ++i) {
        Mat g = t.mat(i);
        EXPECT_TRUE(matUnitary(t.spec, g));
        std::uint32_t inv = t.invert(i);
        EXPECT_EQ(t.mult(i, inv), t.identity);
        EXPECT_EQ(t.mult(inv, i), t.identity);
    }
    for (std::uint32_t i = 0; i < t.size(); i += 7)
        for (std::uint32_t j = 0; j < t.size(); j += 11)
            EXPECT_LT(t.mult(i, j), t.size());
}

TEST(Grp, ScalarSubgroup) {
    GroupTable t1 = enumerateUnitary(specOf(3, 1, {1}));
    Subgroup n1 = scalarSubgroupN(t1);
    EXPECT_EQ(n1.size(), 6u);     // U_1 = N
    EXPECT_EQ(n1.size(), t1.size());

    GroupTable t2 = enumerateUnitary(specOf(3, 1, {1, -1}));
    Subgroup n2 = scalarSubgroupN(t2);
    EXPECT_EQ(n2.size(), 6u);  // 2q scalars
    EXPECT_TRUE(n2.contains(t2.identity));
    // central
    for (auto zi : n2.members)
        for (std::uint32_t gi = 0; gi < t2.size(); gi += 5)
            EXPECT_EQ(t2.mult(zi, gi), t2.mult(gi, zi));
}

TEST(Grp, CongruenceSubgroups) {
    GroupTable t = enumerateUnitary(specOf(3, 1, {1, -1}));
    EXPECT_EQ(congruenceSubgroup(t, 0).size(), t.size());
    EXPECT_EQ(congruenceSubgroup(t, 1).size(), 27u);  // I + yM with GM symmetric
    EXPECT_EQ(congruenceSubgroup(t, 2).size(), 1u);
    EXPECT_THROW(congruenceSubgroup(t, 3), DomainError);
    EXPECT_TRUE(isAbelianSubgroup(t, congruenceSubgroup(t, 1)));
    // brute-force filter oracle for U(i)
    std::uint64_t count = 0;
    Mat id = matIdentity(t.spec);
    for (std::uint32_t gi = 0; gi < t.size(); ++gi) {
        Mat g = t.mat(gi);
        bool inUi = true;
        for (int e = 0; e < 4 && inUi; ++e)
            if (t.spec.ring.valuation(t.spec.ring.sub(g[e], id[e])) < 1) inUi = false;
        if (inUi) ++count;
    }
    EXPECT_EQ(count, 27u);
}

TEST(Grp, CAndBSubgroups) {
    GroupTable t = enumerateUnitary(specOf(3, 1, {1, -1}));
    VecV v = basis1(t.spec);
    Subgroup c = cSubgroup(t, v);
    Subgroup n = scalarSubgroupN(t);
    Subgroup b = bSubgroup(t, c, n);
    // orbit-stabilizer against the induced action on V/iV
    std::vector<std::uint32_t> ids = orbitsModIV(t);
    std::uint64_t orbitSize = 0;
    std::uint32_t myId = ids[transversalIndex(t.spec, v)];
    for (std::uint64_t ti = 0; ti < transversalSize(t.spec); ++ti)
        if (ids[ti] == myId) ++orbitSize;
    EXPECT_EQ(c.size() * orbitSize, t.size());
    EXPECT_EQ(t.size() / c.size(), 2u);
    EXPECT_EQ(b.size() / c.size(), 2u);  // index 2 q^{floor(ell/2)} at ell = 1
    // whole group for v = 0
    EXPECT_EQ(cSubgroup(t, vecZero()).size(), t.size());
    // iota = -I moves any primitive v mod iV
    std::uint32_t iota = t.indexOf(scalarMat(t.spec, t.spec.ring.fromInt(-1)));
    EXPECT_FALSE(c.contains(iota));

    GroupTable t2 = enumerateUnitary(specOf(3, 2, {1}));
    VecV v2 = basis1(t2.spec);
    Subgroup c2 = cSubgroup(t2, v2);
    Subgroup b2 = bSubgroup(t2, c2, scalarSubgroupN(t2));
    EXPECT_EQ(b2.size() / c2.size(), 6u);  // 2q at even ell
    EXPECT_TRUE(std::includes(b2.members.begin(), b2.members.end(), c2.members.begin(), c2.members.end()));
}

TEST(Grp, RhoGenerators) {
    FormSpec s = specOf(3, 1, {1, -1});
    GroupTable t = enumerateUnitary(s);
    Subgroup ui = congruenceSubgroup(t, 1);
    const Ring& A = s.ring;
    // a = 0 gives the identity
    EXPECT_EQ(rhoGenerator(s, A.zero(), basis1(s), basis1(s)), matIdentity(s));
    // a outside i is rejected
    EXPECT_THROW(rhoGenerator(s, A.one(), basis1(s), basis1(s)), DomainError);
    // the specific example: a = y, z1 = e1, z2 = e2
    VecV z1 = basis1(s), z2{};
    z2[1] = A.one();
    Mat rho = rhoGenerator(s, A.monomial(1, 1), z1, z2);
    EXPECT_TRUE(matUnitary(s, rho));
    EXPECT_TRUE(ui.contains(t.indexOf(rho)));
    // z1 = z2 still lands in U(i)
    Mat rho2 = rhoGenerator(s, A.monomial(1, 1), z1, z1);
    EXPECT_TRUE(ui.contains(t.indexOf(rho2)));
}

TEST(Grp, AlphaCharacter) {
    FormSpec s = specOf(3, 1, {1, -1});
    GroupTable t = enumerateUnitary(s);
    Subgroup ui = congruenceSubgroup(t, 1);
    AddChar mu = AddChar::mu(s.ring);

    LinearChar zeroChar = alphaChar(t, ui, mu, vecZero());
    for (auto v : zeroChar.values) EXPECT_TRUE(v.isOne());

    VecV v = basis1(s);
    LinearChar alpha = alphaChar(t, ui, mu, v);
    EXPECT_TRUE(alpha.at(t.identity).isOne());
    EXPECT_TRUE(isMultiplicative(t, alpha));

    // both evaluation routes for a rho generator agree
    VecV z2{};
    z2[1] = s.ring.one();
    Mat rho = rhoGenerator(s, s.ring.monomial(1, 1), v, z2);
    AElem b = s.ring.mul(s.ring.involute(s.ring.monomial(1, 1)),
                         s.ring.mul(hEval(s, v, v), hEval(s, z2, v)));
    EXPECT_EQ(alpha.at(t.indexOf(rho)), mu.value(s.ring.sub(b, s.ring.involute(b))));
}

TEST(Grp, StabilizerOfAlphaIsB) {
    {
        FormSpec s = specOf(3, 1, {1, -1});
        GroupTable t = enumerateUnitary(s);
        Subgroup ui = congruenceSubgroup(t, 1);
        AddChar mu = AddChar::mu(s.ring);
        // trivial character: whole group
        LinearChar triv;
        triv.members = ui.members;
        triv.values.assign(ui.members.size(), Phase::one());
        EXPECT_EQ(stabilizerOfChar(t, triv).size(), t.size());
        // alpha_v for each canonical representative
        Subgroup n = scalarSubgroupN(t);
        for (const VecV& v : canonicalReps(s)) {
            Subgroup c = cSubgroup(t, v);
            Subgroup b = bSubgroup(t, c, n);
            Subgroup stab = stabilizerOfChar(t, alphaChar(t, ui, mu, v));
            EXPECT_EQ(stab.members, b.members);
        }
    }
    {
        // m = 1: U = N = B(v)
        FormSpec s = specOf(3, 1, {1});
        GroupTable t = enumerateUnitary(s);
        Subgroup ui = congruenceSubgroup(t, 1);
        Subgroup stab = stabilizerOfChar(t, alphaChar(t, ui, AddChar::mu(s.ring), basis1(s)));
        EXPECT_EQ(stab.size(), t.size());
    }
}

TEST(Grp, AbelianCharacters) {
    FormSpec s = specOf(3, 1, {1, -1});
    GroupTable t = enumerateUnitary(s);
    Subgroup n = scalarSubgroupN(t);
    Subgroup ui = congruenceSubgroup(t, 1);
    Subgroup nCap1i = intersectSubgroups(t, n, ui);
    auto G = abelianCharacters(t, n, nCap1i);
    EXPECT_EQ(G.size(), 2u);  // 2 |R cap i| = 2
    for (const auto& phi : G) {
        EXPECT_TRUE(isMultiplicative(t, phi));
        for (auto zi : nCap1i.members) EXPECT_TRUE(phi.at(zi).isOne());
    }
    // distinct
    EXPECT_NE(G[0].values, G[1].values);

    // (3,2,1): |G| = 6
    FormSpec s2 = specOf(3, 2, {1});
    GroupTable t2 = enumerateUnitary(s2);
    Subgroup n2 = scalarSubgroupN(t2);
    Subgroup nCap2 = intersectSubgroups(t2, n2, congruenceSubgroup(t2, 2));
    EXPECT_EQ(abelianCharacters(t2, n2, nCap2).size(), 6u);

    // trivial quotient: one character
    EXPECT_EQ(abelianCharacters(t, n, n).size(), 1u);

    // non-abelian domain is rejected
    Subgroup whole = Subgroup::fromMembers(t, [&] {
        std::vector<std::uint32_t> all;
        for (std::uint32_t i = 0; i < t.size(); ++i) all.push_back(i);
        return all;
    }());
    Subgroup trivialSub = Subgroup::fromMembers(t, {t.identity});
    EXPECT_THROW(abelianCharacters(t, whole, trivialSub), DomainError);
}

TEST(Grp, ExtendCharacter) {
    FormSpec s = specOf(3, 1, {1, -1});
    GroupTable t = enumerateUnitary(s);
    Subgroup n = scalarSubgroupN(t);
    Subgroup trivialSub = Subgroup::fromMembers(t, {t.identity});
    LinearChar triv;
    triv.members = trivialSub.members;
    triv.values = {Phase::one()};

    // smallest-argument extension of the trivial character stays trivial
    LinearChar ext = extendCharacter(t, trivialSub, triv, n);
    for (auto v : ext.values) EXPECT_TRUE(v.isOne());

    // extending a character from C(v) cap N to N restricts back correctly
    AddChar mu = AddChar::mu(s.ring);
    VecV v = basis1(s);
    Subgroup c = cSubgroup(t, v);
    Subgroup cn = intersectSubgroups(t, c, n);
    LinearChar beta = vectorChar(t, cn, mu, v);
    LinearChar delta = extendCharacter(t, cn, beta, n);
    for (std::size_t i = 0; i < cn.members.size(); ++i)
        EXPECT_EQ(delta.at(cn.members[i]), beta.values[i]);
    EXPECT_TRUE(isMultiplicative(t, delta));
    // sub == into leaves the character unchanged
    LinearChar same = extendCharacter(t, n, delta, n);
    EXPECT_EQ(same.values, delta.values);
}

TEST(Grp, OrbitCounts) {
    GroupTable t = enumerateUnitary(specOf(3, 1, {1, -1}));
    OrbitReport orb = orbits(t);
    EXPECT_EQ(orb.orbitsV, 7u);
    EXPECT_EQ(orb.orbitsPrimitive, 3u);
    EXPECT_EQ(orb.orbitsNotY2(), 6u);

    EXPECT_EQ(orbits(enumerateUnitary(specOf(3, 1, {1}))).orbitsV, 3u);
    EXPECT_EQ(orbits(enumerateUnitary(specOf(3, 1, {1, 1}))).orbitsV, 5u);
    EXPECT_EQ(orbits(enumerateUnitary(specOf(3, 2, {1}))).orbitsV, 9u);
    // orbit sizes partition V
    std::uint64_t total = 0;
    for (auto sz : orb.sizes) total += sz;
    EXPECT_EQ(total, vecCount(t.spec));
}

TEST(Grp, ReductionMaps) {
    {
        // (3,2,1) reduced mod y^2: image is U_1 over F_3[y]/(y^2), order 6
        GroupTable t = enumerateUnitary(specOf(3, 2, {1}));
        QuotientData qd = reductionMap(t, 2);
        EXPECT_EQ(qd.target.size(), 6u);
        std::vector<char> hit(qd.target.size(), 0);
        for (auto pi : qd.proj) hit[pi] = 1;
        for (char h : hit) EXPECT_TRUE(h);  // surjective
        // kernel equals the congruence subgroup
        Subgroup ker = congruenceSubgroup(t, 2);
        std::uint64_t kid = 0;
        for (std::uint32_t i = 0; i < t.size(); ++i)
            if (qd.proj[i] == qd.target.identity) ++kid;
        EXPECT_EQ(kid, ker.size());
        // homomorphism on sample pairs
        for (std::uint32_t i = 0; i < t.size(); i += 3)
            for (std::uint32_t j = 0; j < t.size(); j += 5)
                EXPECT_EQ(qd.proj[t.mult(i, j)], qd.target.mult(qd.proj[i], qd.proj[j]));
    }
    {
        // P2 reduced mod y: image is O_2(3) of order 4 = 108/27
        GroupTable t = enumerateUnitary(specOf(3, 1, {1, -1}));
        QuotientData qd = reductionMap(t, 1);
        EXPECT_EQ(qd.target.size(), 4u);
        EXPECT_THROW(reductionMap(t, 2), DomainError);
        EXPECT_THROW(reductionMap(t, 0), DomainError);
    }
}

TEST(Grp, SaveLoadRoundTrip) {
    FormSpec s = specOf(3, 1, {1, -1});
    GroupTable t = enumerateUnitary(s);
    std::string path = ::testing::TempDir() + "ramweil_table.bin";
    saveTable(t, path);
    GroupTable loaded = loadTable(s.ring.field, path);
    EXPECT_EQ(loaded.keys, t.keys);
    EXPECT_EQ(loaded.identity, t.identity);
    // a truncated payload is rejected
    {
        std::ifstream in(path, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string data = buf.str();
        data.resize(data.size() - 4);
        std::ofstream outF(path, std::ios::binary);
        outF.write(data.data(), static_cast<std::streamsize>(data.size()));
    }
    EXPECT_THROW(loadTable(s.ring.field, path), DomainError);
    // wrong field
    saveTable(t, path);
    EXPECT_THROW(loadTable(Field::make(5), path), DomainError);
    std::remove(path.c_str());
}
