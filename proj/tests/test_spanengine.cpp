#include <doctest.h>

#include "bihall/spanengine.hpp"

using namespace bihall;
using namespace bihall::simp;
using namespace bihall::span;

namespace {

/* span pt <- edge -> pt along a horizontal edge */
SpanMor edge_span()
{
    SpanMor s;
    s.left = s.right = standard_bisimplex(0, 0);
    s.apex = standard_bisimplex(1, 0);
    auto vertex = [&](int v) {
        std::vector<std::vector<std::vector<Ref2>>> img(1);
        img[0].resize(1);
        img[0][0] = {bisimplex_of(1, 0, {v}, {0})};
        return make_bmap(s.left, s.apex, img);
    };
    s.lleg = vertex(0);
    s.rleg = vertex(1);
    return s;
}

/* a partial cell over the length-0 simplex on [n]: points on degenerate
 * intervals, horizontal edges on the others */
CellFunctor edge_partial(int S, int n)
{
    auto g = std::make_shared<tw::GrothData>(tw::groth_posets(tw::DeltaOpSimplex::length0(n)));
    CellFunctor c;
    c.g = g;
    c.S = S;
    c.partial = true;
    c.index_domain();
    auto pt = standard_bisimplex(0, 0);
    auto edge = standard_bisimplex(1, 0);
    for (int m : c.masks)
        for (int e : c.elems) {
            auto [x, y] = g->pyrM.elems[e];
            c.val[{m, e}] = (x == y) ? pt : edge;
        }
    for (int m : c.masks)
        for (int e : c.elems)
            for (int e2 : c.elems) {
                if (e == e2 || !g->pyrM.poset.le(e, e2))
                    continue;
                auto [x, y] = g->pyrM.elems[e];
                auto [x2, y2] = g->pyrM.elems[e2];
                std::vector<std::vector<std::vector<Ref2>>> img;
                if (x2 == y2 && x != y) {  // endpoint into an edge
                    img.resize(1);
                    img[0].resize(1);
                    img[0][0] = {bisimplex_of(1, 0, {x2 == x ? 0 : 1}, {0})};
                } else if (x2 == y2 && x == y) {
                    img.resize(1);
                    img[0].resize(1);
                    img[0][0] = {Ref2{0, 0, 0, {}, {}}};
                } else {  // edge onto edge
                    img.resize(2);
                    img[0].resize(1);
                    img[0][0] = {bisimplex_of(1, 0, {0}, {0}), bisimplex_of(1, 0, {1}, {0})};
                    img[1].resize(1);
                    img[1][0] = {bisimplex_of(1, 0, {0, 1}, {0})};
                }
                c.mor[{m, e, m, e2}] = make_bmap(c.val[{m, e2}], c.val[{m, e}], img);
            }
    return c;
}

}  // namespace

TEST_CASE("identity span is a unit for composition")
{
    SpanMor s = edge_span();
    s.validate();
    SpanMor l = compose_span(identity_span(s.left), s);
    CHECK(span_iso(l, s));
    SpanMor r = compose_span(s, identity_span(s.right));
    CHECK(span_iso(r, s));
}

TEST_CASE("span composition associativity")
{
    SpanMor s = edge_span();
    SpanMor a = compose_span(compose_span(s, s), s);
    SpanMor b = compose_span(s, compose_span(s, s));
    CHECK(span_iso(a, b));
    CHECK(a.apex->ncells(1, 0) == 3);  // a path of three edges
    CHECK(a.apex->ncells(0, 0) == 4);
}

TEST_CASE("rke on the length-0 shape over [2]")
{
    CellFunctor part = edge_partial(1, 2);
    CHECK(check_functorial(part).pass);
    CellFunctor full = rke_cartesian(part);
    CHECK(check_functorial(full).pass);

    const tw::GrothData& g = *full.g;
    int big = g.pyrM.id(g.mid(0, 0), g.mid(2, 0));
    const BSetP& v = full.value(1, big);
    CHECK(v->ncells(1, 0) == 2);  // two edges glued along the middle point
    CHECK(v->ncells(0, 0) == 3);

    for (int e : part.elems)
        CHECK(full.value(1, e) == part.value(1, e));

    CHECK(validate_cell(full).pass);

    CellFunctor again = rke_cartesian(restrict_to_partial(full));
    CHECK(natiso_cells(full, again));
}

TEST_CASE("rke over a two-element set is a coproduct")
{
    CellFunctor part = edge_partial(2, 1);
    CellFunctor full = rke_cartesian(part);
    for (int e : full.elems) {
        CHECK(full.value(3, e)->total_cells() ==
              full.value(1, e)->total_cells() + full.value(2, e)->total_cells());
        CHECK(full.value(0, e)->total_cells() == 0);
    }
    CHECK(validate_cell(full).pass);
}

TEST_CASE("hand-built cell with a non-iso vertical fails validate_cell")
{
    // shape: constant phi on [0] of length 1; M is a 2-chain, all vertical
    auto g = std::make_shared<tw::GrothData>(tw::groth_posets(tw::DeltaOpSimplex::constant(0, 1)));
    CellFunctor c;
    c.g = g;
    c.S = 1;
    c.partial = false;
    c.index_domain();
    auto pt = standard_bisimplex(0, 0);
    auto vedge = standard_bisimplex(0, 1);
    auto empty = std::make_shared<BSet>(0, 0);
    int top = g->mid(0, 1), bot = g->mid(0, 0);
    int ii = g->pyrM.id(top, top), jj = g->pyrM.id(bot, bot), big = g->pyrM.id(top, bot);
    for (int e : c.elems) {
        c.val[{0, e}] = empty;
        c.val[{1, e}] = (e == big) ? vedge : pt;
    }
    auto vx = [&](int v) {
        std::vector<std::vector<std::vector<Ref2>>> img(1);
        img[0].resize(1);
        img[0][0] = {bisimplex_of(0, 1, {0}, {v})};
        return make_bmap(pt, vedge, img);
    };
    c.mor[{1, big, 1, ii}] = vx(0);
    c.mor[{1, big, 1, jj}] = vx(1);
    for (int e : c.elems)
        for (int e2 : c.elems)
            if (g->pyrM.poset.le(e, e2)) {
                if (e != e2) {
                    std::vector<std::vector<std::vector<Ref2>>> none(1);
                    none[0].resize(1);
                    c.mor[{0, e, 0, e2}] = make_bmap(empty, empty, none);
                }
                BMap m;
                m.src = c.val[{0, e2}];
                m.dst = c.val[{1, e}];
                m.img.resize(1);
                m.img[0].resize(1);
                c.mor[{1, e, 0, e2}] = m;
            }
    Report rep = validate_cell(c);
    CHECK(!rep.pass);
    bool witnessed = false;
    for (auto& s : rep.failures)
        if (s.find("vertical morphism") != std::string::npos)
            witnessed = true;
    CHECK(witnessed);
}
