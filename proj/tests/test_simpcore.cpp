#include <doctest.h>

#include "bihall/simpcore.hpp"

using namespace bihall;
using namespace bihall::simp;

TEST_CASE("standard simplices validate and count")
{
    for (int n = 0; n <= 4; ++n) {
        auto d = standard_simplex(n);
        d->validate();
        for (int k = 0; k <= n; ++k) {
            long long binom = 1;
            for (int i = 0; i < k + 1; ++i)
                binom = binom * (n + 1 - i) / (i + 1);
            CHECK(d->ncells(k) == int(binom));
        }
    }
}

TEST_CASE("degeneracy word normal forms")
{
    auto d2 = standard_simplex(2);
    // s_0 s_0 = s_1 s_0
    Ref v{0, 0, {}};
    CHECK(ref_s(ref_s(v, 0), 0) == Ref{0, 0, {1, 0}});
    // counting all simplices of Δ^n in dim d: binom(n+1+d, d) patterns... spot values
    CHECK(d2->count_at(0) == 3);
    CHECK(d2->count_at(1) == 6);   // monotone maps [1]->[2]
    CHECK(d2->count_at(2) == 10);  // monotone maps [2]->[2]
}

TEST_CASE("face of degenerate simplices obeys identities")
{
    auto d3 = standard_simplex(3);
    for (int d = 2; d <= 5; ++d)
        for (const Ref& r : d3->simplices(d))
            for (int j = 0; j <= d; ++j)
                for (int i = 0; i < j; ++i)
                    CHECK(d3->face(d3->face(r, j), i) == d3->face(d3->face(r, i), j - 1));
    // d_i s_i = id = d_{i+1} s_i
    for (int d = 0; d <= 3; ++d)
        for (const Ref& r : d3->simplices(d))
            for (int i = 0; i <= d; ++i) {
                CHECK(d3->face(ref_s(r, i), i) == r);
                CHECK(d3->face(ref_s(r, i), i + 1) == r);
            }
}

TEST_CASE("box product cell counts")
{
    auto d1 = standard_simplex(1);
    auto sq = box_product(d1, d1);
    sq->validate();
    CHECK(sq->ncells(0, 0) == 4);
    CHECK(sq->ncells(1, 0) == 2);
    CHECK(sq->ncells(0, 1) == 2);
    CHECK(sq->ncells(1, 1) == 1);

    auto pt = standard_simplex(0);
    auto y = standard_simplex(2);
    auto vert = box_product(pt, y);
    vert->validate();
    CHECK(vert->ncells(0, 2) == 1);
    CHECK(vert->ncells(1, 0) == 0);

    auto d21 = box_product(standard_simplex(2), d1);
    CHECK(d21->count_at(1, 1) == 6 * 3);
}

TEST_CASE("box product level count property")
{
    auto homs = [](int m, int n) {  // |Hom_Delta([m],[n])|
        long long r = 1;
        for (int i = 0; i < m + 1; ++i)
            r = r * (n + 1 + m - i) / (i + 1);
        return size_t(r);
    };
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= 2; ++k) {
            auto b = standard_bisimplex(n, k);
            for (int p = 0; p <= n + 1; ++p)
                for (int q = 0; q <= k + 1; ++q)
                    CHECK(b->count_at(p, q) == homs(p, n) * homs(q, k));
        }
}

TEST_CASE("bisimplex_of gives valid simplices")
{
    auto b = standard_bisimplex(2, 2);
    Ref2 diag = bisimplex_of(2, 2, {0, 2}, {0, 2});
    CHECK(diag.p() == 1);
    CHECK(diag.q() == 1);
    CHECK(diag.wh.empty());
    CHECK(diag.wv.empty());
    Ref2 degen = bisimplex_of(2, 2, {1, 1}, {0, 2});
    CHECK(degen.cp == 0);
    CHECK(degen.wh == Word{0});
    // faces of the unit square at (0,0): vertical face 0 is bottom edge
    Ref2 unit = bisimplex_of(2, 2, {0, 1}, {0, 1});
    Ref2 bottom = b->vface(unit, 1);
    CHECK(bottom == bisimplex_of(2, 2, {0, 1}, {0}));
}

TEST_CASE("coproduct and pushouts")
{
    auto sq = standard_bisimplex(1, 1);

    SUBCASE("coproduct scales cell counts")
    {
        for (int n = 1; n <= 3; ++n) {
            auto cop = disjoint_copies(sq, n);
            cop->validate();
            CHECK(cop->ncells(0, 0) == 4 * n);
            CHECK(cop->ncells(1, 1) == n);
            for (int k = 0; k < n; ++k)
                copies_leg(sq, cop, n, k).validate();
        }
    }

    SUBCASE("pushout along identity is isomorphic copy")
    {
        auto r = pushout(sq, sq, sq, identity_map(sq), identity_map(sq));
        r.obj->validate();
        CHECK(find_iso(r.obj, sq).has_value());
    }

    SUBCASE("two squares glued along a vertical edge")
    {
        auto edge = box_product(standard_simplex(0), standard_simplex(1));
        // right edge x=1 of the first square, left edge x=0 of the second
        auto mk = [&](int x) {
            std::vector<std::vector<std::vector<Ref2>>> img(1);
            img[0].resize(2);
            img[0][0] = {bisimplex_of(1, 1, {x}, {0}), bisimplex_of(1, 1, {x}, {1})};
            img[0][1] = {bisimplex_of(1, 1, {x}, {0, 1})};
            return make_bmap(edge, sq, img);
        };
        auto r = pushout(edge, sq, sq, mk(1), mk(0));
        r.obj->validate();
        CHECK(r.obj->ncells(1, 1) == 2);
        CHECK(r.obj->ncells(0, 0) == 6);
        CHECK(r.obj->ncells(0, 1) == 3);
        CHECK(r.obj->ncells(1, 0) == 4);
    }
}

TEST_CASE("colim over one object is identity up to iso")
{
    auto b = standard_bisimplex(2, 1);
    Diagram d;
    d.objects = {b};
    auto r = colim(d);
    auto iso = find_iso(r.obj, b);
    REQUIRE(iso.has_value());
    iso->validate();
}

TEST_CASE("iterated pushout agrees with one-shot colimit")
{
    // zigzag b <- a -> c, then glue result with d along c: compare against
    // the single colimit of the whole diagram
    auto pt = standard_bisimplex(0, 0);
    auto sq = standard_bisimplex(1, 1);
    auto corner = [&](int x, int y) {
        std::vector<std::vector<std::vector<Ref2>>> img(1);
        img[0].resize(1);
        img[0][0] = {bisimplex_of(1, 1, {x}, {y})};
        return make_bmap(pt, sq, img);
    };
    Diagram d;
    d.objects = {pt, sq, sq, pt, sq};
    d.arrows.push_back({0, 1, corner(1, 1)});
    d.arrows.push_back({0, 2, corner(0, 0)});
    d.arrows.push_back({3, 2, corner(1, 1)});
    d.arrows.push_back({3, 4, corner(0, 0)});
    auto whole = colim(d);

    auto first = pushout(pt, sq, sq, corner(1, 1), corner(0, 0));
    // map pt -> first.obj through the second square
    BMap via = compose(first.legs[1], corner(1, 1));
    auto second = pushout(pt, first.obj, sq, via, corner(0, 0));
    CHECK(find_iso(second.obj, whole.obj).has_value());
}

TEST_CASE("find_iso basics")
{
    auto sq = standard_bisimplex(1, 1);
    auto iso = find_iso(sq, sq);
    REQUIRE(iso.has_value());
    CHECK(iso->is_iso());

    // relabeled copy: build Δ^{1,1} with cells inserted in a different order
    auto relab = std::make_shared<BSet>(1, 1);
    int v11 = relab->add_cell(0, 0, {}, {});
    int v00 = relab->add_cell(0, 0, {}, {});
    int v01 = relab->add_cell(0, 0, {}, {});
    int v10 = relab->add_cell(0, 0, {}, {});
    auto vr = [&](int c) { return Ref2{0, 0, c, {}, {}}; };
    int e_bot = relab->add_cell(1, 0, {vr(v10), vr(v00)}, {});  // hfaces: d_0 drops vertex 0
    int e_top = relab->add_cell(1, 0, {vr(v11), vr(v01)}, {});
    int e_l = relab->add_cell(0, 1, {}, {vr(v01), vr(v00)});
    int e_r = relab->add_cell(0, 1, {}, {vr(v11), vr(v10)});
    auto er = [&](int cp, int cq, int c) { return Ref2{cp, cq, c, {}, {}}; };
    relab->add_cell(1, 1, {er(0, 1, e_r), er(0, 1, e_l)}, {er(1, 0, e_top), er(1, 0, e_bot)});
    relab->validate();
    auto iso2 = find_iso(sq, relab);
    REQUIRE(iso2.has_value());
    iso2->validate();

    CHECK(!find_iso(standard_bisimplex(2, 1), standard_bisimplex(1, 2)).has_value());
}

TEST_CASE("simplicial-set colimit wrapper")
{
    // pushout of two triangles along an edge: 2 nondegenerate 2-cells
    auto d2 = standard_simplex(2);
    auto d1 = standard_simplex(1);
    SDiagram d;
    d.objects = {d1, d2, d2};
    auto edge_img = [&](int a, int b) {
        std::vector<std::vector<Ref>> img(2);
        // vertices of Δ^2: 0,1,2 ; cells dim1: {01},{02},{12}
        img[0] = {Ref{0, a, {}}, Ref{0, b, {}}};
        int e = (a == 0 && b == 1) ? 0 : (a == 0 && b == 2) ? 1 : 2;
        img[1] = {Ref{1, e, {}}};
        return make_smap(d1, d2, img);
    };
    d.arrows.push_back({0, 1, edge_img(0, 2)});  // long edge of first
    d.arrows.push_back({0, 2, edge_img(0, 1)});  // spine edge of second
    auto r = colim(d);
    CHECK(r.obj->ncells(2) == 2);
    CHECK(r.obj->ncells(1) == 5);
    CHECK(r.obj->ncells(0) == 4);
    r.obj->validate();
    for (auto& leg : r.legs)
        leg.validate();
}
