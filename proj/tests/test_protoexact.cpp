#include <doctest.h>

#include "bihall/protoexact.hpp"

using namespace bihall;
using namespace bihall::pex;

namespace {

std::shared_ptr<const ProtoExactCat> vect22()
{
    static auto p = std::make_shared<ProtoExactCat>(vect_fixture(2, 2));
    return p;
}

}  // namespace

TEST_CASE("vect fixture basics")
{
    auto a = vect22();
    a->cat.validate();
    CHECK(a->cat.nobj == 3);
    CHECK(a->cat.hom[1][1].size() == 2);
    CHECK(a->cat.hom[2][2].size() == 16);
    int autos = 0;
    for (int m : a->cat.hom[2][2])
        if (a->cat.is_iso(m))
            ++autos;
    CHECK(autos == 6);  // GL_2(F_2)

    auto small = vect_fixture(2, 1);
    CHECK(small.cat.nobj == 2);
    CHECK(small.cat.hom[1][1].size() == 2);
}

TEST_CASE("arr and vect fixtures are proto-exact")
{
    auto arr2 = arr_fixture(tw::chain_poset(2));
    CHECK(arr2.cat.nobj == 6);
    arr2.cat.validate();
    CHECK(check_proto_exact(arr2).pass);

    CHECK(check_proto_exact(*vect22()).pass);

    // terminal category: every condition degenerates
    ProtoExactCat term = vect_fixture(2, 0);
    CHECK(check_proto_exact(term).pass);
}

TEST_CASE("mutated vect fixture fails stability")
{
    ProtoExactCat broken = *vect22();
    // remove one proper surjection from E
    for (int m = 0; m < broken.cat.nmor(); ++m)
        if (broken.in_e[m] && !broken.in_m[m] && broken.cat.msrc[m] == 2 &&
            broken.cat.mdst[m] == 1) {
            broken.in_e[m] = 0;
            break;
        }
    Report rep = check_proto_exact(broken);
    CHECK(!rep.pass);
}

TEST_CASE("s-construction levels of vect(2,2)")
{
    auto a = vect22();
    auto s0 = s_groupoid(a, 0);
    CHECK(s0->size() == 1);
    CHECK(s0->hom(0, 0).size() == 1);

    auto s1 = s_groupoid(a, 1);
    // pi_0: dims 0,1,2
    std::vector<int> cls;
    for (int x = 0; x < s1->size(); ++x) {
        bool fresh = true;
        for (int r : cls)
            if (!s1->hom(x, r).empty())
                fresh = false;
        if (fresh)
            cls.push_back(x);
    }
    CHECK(cls.size() == 3);

    auto s2 = s_groupoid(a, 2);
    std::vector<int> cls2;
    for (int x = 0; x < s2->size(); ++x) {
        bool fresh = true;
        for (int r : cls2)
            if (!s2->hom(x, r).empty())
                fresh = false;
        if (fresh)
            cls2.push_back(x);
    }
    CHECK(cls2.size() == 6);  // dimension pairs 0<=d1<=d2<=2
}

TEST_CASE("restriction along faces and degeneracies")
{
    auto a = vect22();
    auto s2 = s_groupoid(a, 2);
    auto s1 = s_groupoid(a, 1);
    DiagramShape sh1 = staircase_shape(1), sh2 = staircase_shape(2);
    // face d_1: [1] -> [2] skipping 1: positions (i,j) of sh1 -> (d(i), d(j))
    auto pos_id2 = [&](int i, int j) {
        for (int t = 0; t < sh2.poset.n; ++t)
            if (sh2.poset.names[t] == std::to_string(i) + std::to_string(j))
                return t;
        return -1;
    };
    std::vector<int> pmap(sh1.poset.n);
    auto d1 = [&](int v) { return v == 0 ? 0 : 2; };
    for (int t = 0; t < sh1.poset.n; ++t) {
        int i = sh1.poset.names[t][0] - '0', j = sh1.poset.names[t][1] - '0';
        pmap[t] = pos_id2(d1(i), d1(j));
    }
    for (int x = 0; x < s2->size(); ++x) {
        ExactDiagram r = restrict_diagram(sh1, sh2, pmap, *a, s2->object(x));
        CHECK(s1->find_object(r) >= 0);
    }
}

TEST_CASE("monoidal levels are tuples")
{
    auto a = vect22();
    auto m12 = s2_groupoid(a, 1, 2, S2Mode::Monoidal);
    auto s1 = s_groupoid(a, 1);
    CHECK(m12->size() == s1->size() * s1->size());
}

TEST_CASE("green moduli for the smallest vector spaces")
{
    auto a = vect22();
    GreenDiagrams g = green_diagrams(a);
    CHECK(g.grid->size() > 0);
    CHECK(g.plus->size() > 0);
    CHECK(g.frame->size() > 0);
    CHECK(int(g.grid_to_plus.size()) == g.grid->size());

    // every cross extends to at least one grid (the equivalence is tested
    // at the groupoid level in the segcheck module)
    std::vector<char> hit(g.plus->size(), 0);
    for (int i : g.grid_to_plus)
        hit[i] = 1;
    for (char h : hit)
        CHECK(bool(h));
}

TEST_CASE("bicartesian oracle on the vect fixture")
{
    auto a = vect22();
    const FinCat& c = a->cat;
    // the square 1 >-> 2 ->> 1 with zero corners: pullback and pushout
    int inj = -1, surj = -1;
    for (int m : c.hom[1][2])
        if (a->in_m[m])
            inj = m;
    for (int m : c.hom[2][1])
        if (a->in_e[m] && c.comp[m][inj] == c.ident[0 + 1] - c.ident[1] + c.ident[1] &&
            false)
            surj = m;
    // pick any surjection with s∘i = 0 instead
    for (int m : c.hom[2][1]) {
        if (!a->in_e[m] || a->in_m[m])
            continue;
        int comp = c.comp[m][inj];
        bool zero = true;
        for (auto& row : vect_matrix(*a, comp))
            for (int v : row)
                zero = zero || false, zero = zero && (v == 0);
        if (zero) {
            surj = m;
            break;
        }
    }
    REQUIRE(inj >= 0);
    REQUIRE(surj >= 0);
    int z_in = c.hom[0][1][0];   // 0 -> 1
    int z_out = c.hom[1][0][0];  // 1 -> 0
    // square: 1 -inj-> 2 over 0 -z-> 1: top = inj, left = z_out∘id... use
    // corners (1, 2, 0, 1): top=inj: 1->2, left: 1->0, right: 2->1 surj, bottom: 0->1
    CHECK(is_pullback(c, inj, z_out, surj, z_in));
    CHECK(is_pushout(c, inj, z_out, surj, z_in));
}
