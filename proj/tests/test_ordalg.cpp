#include <doctest.h>

#include "bihall/ordalg.hpp"

using namespace bihall;
using namespace bihall::alg;

namespace {

AlgMorphism morph_m()  // 2 -> 1
{
    return AlgMorphism::from_map(2, 1, {0, 0});
}

/* the paper's labels on 4 = {y11,y12,y21,y22} as 0..3 */
AlgMorphism morph_m2()  // first index
{
    return AlgMorphism::from_map(4, 2, {0, 0, 1, 1});
}

AlgMorphism morph_m2bar()  // second index
{
    return AlgMorphism::from_map(4, 2, {0, 1, 0, 1});
}

std::vector<AlgMorphism> all_alg_morphisms(int src, int dst, int max_fiber = 99)
{
    std::vector<AlgMorphism> out;
    std::vector<int> map(src, 0);
    auto emit = [&]() {
        AlgMorphism base = AlgMorphism::from_map(src, dst, map);
        for (auto& f : base.fibers)
            if (int(f.size()) > max_fiber)
                return;
        // all fiber orderings
        std::vector<std::vector<std::vector<int>>> perms(dst);
        for (int y = 0; y < dst; ++y) {
            auto f = base.fibers[y];
            std::sort(f.begin(), f.end());
            do
                perms[y].push_back(f);
            while (std::next_permutation(f.begin(), f.end()));
        }
        std::vector<int> pick(dst, 0);
        while (true) {
            AlgMorphism m = base;
            for (int y = 0; y < dst; ++y)
                m.fibers[y] = perms[y][pick[y]];
            out.push_back(m);
            int y = 0;
            while (y < dst && ++pick[y] == int(perms[y].size()))
                pick[y++] = 0;
            if (y == dst)
                break;
        }
    };
    if (src == 0) {
        emit();
        return out;
    }
    while (true) {
        emit();
        int i = 0;
        while (i < src && ++map[i] == dst)
            map[i++] = 0;
        if (i == src)
            break;
    }
    if (dst == 0 && src > 0)
        out.clear();
    return out;
}

}  // namespace

TEST_CASE("compose_alg reproduces the worked orderings")
{
    auto m = morph_m();
    auto c1 = compose_alg(morph_m2(), m);
    CHECK(c1.fibers[0] == std::vector<int>{0, 1, 2, 3});  // y11 <= y12 <= y21 <= y22
    auto c2 = compose_alg(morph_m2bar(), m);
    CHECK(c2.fibers[0] == std::vector<int>{0, 2, 1, 3});  // y11 <= y21 <= y12 <= y22

    auto f = AlgMorphism::from_map(3, 2, {1, 0, 1});
    CHECK(compose_alg(f, AlgMorphism::identity(2)) == f);
    CHECK(compose_alg(AlgMorphism::identity(3), f) == f);
}

TEST_CASE("compose_alg associativity on exhaustive small instances")
{
    int checked = 0;
    for (const auto& f : all_alg_morphisms(3, 2))
        for (const auto& g : all_alg_morphisms(2, 2))
            for (const auto& h : all_alg_morphisms(2, 1)) {
                CHECK(compose_alg(compose_alg(f, g), h) == compose_alg(f, compose_alg(g, h)));
                ++checked;
            }
    CHECK(checked > 100);
}

TEST_CASE("pseudo_pullback of m along m")
{
    auto m = morph_m();
    AlgSquare sq = pseudo_pullback(m, m);
    CHECK(sq.left.src == 4);
    // apex in lex (x,z) order equals the paper's labels y_{x+1,z+1}
    CHECK(sq.left.fibers[0] == std::vector<int>{0, 1});   // (m^2)^{-1}(y_1) = y11 <= y12
    CHECK(sq.left.fibers[1] == std::vector<int>{2, 3});
    CHECK(sq.top.fibers[0] == std::vector<int>{0, 2});    // (mbar^2)^{-1}(y_1) = y11 <= y21
    CHECK(sq.top.fibers[1] == std::vector<int>{1, 3});
    CHECK(is_pseudo_pullback(sq));

    // the two composites agree on underlying maps and differ in fiber order
    auto c1 = compose_alg(sq.left, sq.bottom);
    auto c2 = compose_alg(sq.top, sq.right);
    CHECK(c1.map == c2.map);
    CHECK(c1.fibers != c2.fibers);
}

TEST_CASE("pseudo_pullback along identity is order-isomorphic to p")
{
    auto p = AlgMorphism::from_map(3, 2, {0, 1, 0});
    std::swap(p.fibers[0][0], p.fibers[0][1]);  // nontrivial order
    AlgSquare sq = pseudo_pullback(p, AlgMorphism::identity(2));
    CHECK(sq.top.src == 3);
    // top edge is order-isomorphic to p: left is a bijection carrying fibers
    CHECK(sq.left.is_bijection());
    for (int y = 0; y < 2; ++y) {
        const auto& fw = sq.top.fibers[y];
        const auto& fp = p.fibers[y];
        REQUIRE(fw.size() == fp.size());
        for (size_t t = 0; t < fw.size(); ++t)
            CHECK(sq.left.map[fw[t]] == fp[t]);
    }
}

TEST_CASE("uniqueness of the pseudo-pullback orders for p = q = m")
{
    auto m = morph_m();
    AlgSquare base = pseudo_pullback(m, m);
    int good = 0, total = 0;
    // all order assignments on the two projections
    auto orders = [](const AlgMorphism& p) {
        std::vector<AlgMorphism> out;
        std::vector<std::vector<std::vector<int>>> perms(p.dst);
        for (int y = 0; y < p.dst; ++y) {
            auto f = p.fibers[y];
            std::sort(f.begin(), f.end());
            do
                perms[y].push_back(f);
            while (std::next_permutation(f.begin(), f.end()));
        }
        std::vector<int> pick(p.dst, 0);
        while (true) {
            AlgMorphism m2 = p;
            for (int y = 0; y < p.dst; ++y)
                m2.fibers[y] = perms[y][pick[y]];
            out.push_back(m2);
            int y = 0;
            while (y < p.dst && ++pick[y] == int(perms[y].size()))
                pick[y++] = 0;
            if (y == p.dst)
                break;
        }
        return out;
    };
    for (const auto& l : orders(base.left))
        for (const auto& t : orders(base.top)) {
            AlgSquare sq = base;
            sq.left = l;
            sq.top = t;
            ++total;
            if (is_pseudo_pullback(sq))
                ++good;
        }
    CHECK(total == 16);
    CHECK(good == 1);
}

TEST_CASE("set-level pullback against brute force")
{
    for (const auto& p : all_alg_morphisms(2, 2))
        for (const auto& q : all_alg_morphisms(3, 2)) {
            AlgSquare sq = pseudo_pullback(p, q);
            int count = 0;
            for (int x = 0; x < p.src; ++x)
                for (int z = 0; z < q.src; ++z)
                    if (p.map[x] == q.map[z])
                        ++count;
            CHECK(sq.left.src == count);
        }
}

TEST_CASE("pyrnc shapes")
{
    PyrNC p0(0);
    CHECK(p0.objects.size() == 1);
    CHECK(p0.edges.empty());

    PyrNC p2(2);
    CHECK(p2.objects.size() == 6);
    CHECK(p2.edges.size() == 6);
    auto ps = p2.paths(p2.obj_id(0, 2), p2.obj_id(1, 1));
    CHECK(ps.size() == 2);

    // phi: [1] -> [2] hitting {0,2}
    PyrNC p1(1);
    auto fun = pyrnc_functor(p1, p2, {0, 2});
    auto path = fun.on_edge(p1.edge_id(0, 1, false));
    REQUIRE(path.size() == 2);
    CHECK(p2.edges[path[0]].src == p2.obj_id(0, 2));
    CHECK(p2.edges[path[0]].dst == p2.obj_id(1, 2));
    CHECK(p2.edges[path[1]].dst == p2.obj_id(2, 2));

    // functoriality of induced functors on a composite
    PyrNC p3(3);
    auto f12 = pyrnc_functor(p1, p2, {0, 2});
    auto f23 = pyrnc_functor(p2, p3, {0, 1, 3});
    auto f13 = pyrnc_functor(p1, p3, {0, 3});
    auto via = f23.on_path(f12.on_edge(p1.edge_id(0, 1, true)));
    auto direct = f13.on_edge(p1.edge_id(0, 1, true));
    CHECK(via == direct);
}

TEST_CASE("bialg functor from the m/m2 pseudo-pullback square passes")
{
    auto m = morph_m();
    SpineChain chain;
    chain.sets = {2, 1, 2};
    chain.apexes = {2, 2};
    chain.to_left = {AlgMorphism::identity(2), m};
    chain.to_right = {m, AlgMorphism::identity(2)};
    auto theta = functor_from_spine(chain);
    CHECK(theta.val[theta.pyr.obj_id(0, 2)] == 4);
    auto f = bialg_from_singletons({theta});
    auto rep = validate_bialg_functor(f);
    CHECK(rep.pass);

    // reversing one fiber order breaks condition (3) at rho = (0,1,2)
    auto broken = f;
    auto& e = broken.edge[1][broken.pyr.edge_id(0, 2, false)];
    std::swap(e.fibers[0][0], e.fibers[0][1]);
    auto rep2 = validate_bialg_functor(broken);
    CHECK(!rep2.pass);
    bool witness = false;
    for (auto& s : rep2.failures)
        if (s.find("rho=(0,1,2)") != std::string::npos)
            witness = true;
    CHECK(witness);
}

TEST_CASE("two-element S with disjoint-union structure validates")
{
    auto m = morph_m();
    SpineChain chain;
    chain.sets = {2, 1};
    chain.apexes = {2};
    chain.to_left = {AlgMorphism::identity(2)};
    chain.to_right = {m};
    auto t1 = functor_from_spine(chain);
    SpineChain chain2;
    chain2.sets = {1, 1};
    chain2.apexes = {1};
    chain2.to_left = {AlgMorphism::identity(1)};
    chain2.to_right = {AlgMorphism::identity(1)};
    auto t2 = functor_from_spine(chain2);
    auto f = bialg_from_singletons({t1, t2});
    CHECK(validate_bialg_functor(f).pass);
    CHECK(f.val[3][f.pyr.obj_id(0, 0)] == 3);
}

TEST_CASE("embed_endpoints")
{
    auto m = morph_m();

    SUBCASE("single algebra generator")
    {
        AlgChain c{{2, 1}, {m}, false};
        auto th = embed_endpoints(c);
        CHECK(th.val[th.pyr.obj_id(0, 1)] == 2);  // left endpoint
        auto f = bialg_from_singletons({th});
        CHECK(validate_bialg_functor(f).pass);
    }

    SUBCASE("composable pair, all squares degenerate")
    {
        auto g = AlgMorphism::from_map(1, 2, {1});
        AlgChain c{{2, 1, 2}, {m, g}, false};
        auto f = bialg_from_singletons({embed_endpoints(c)});
        CHECK(validate_bialg_functor(f).pass);
    }

    SUBCASE("coalgebra side is the transpose")
    {
        AlgChain c{{1, 2}, {m}, true};  // maps[0]: X_1=2 -> X_0=1
        auto th = embed_endpoints(c);
        CHECK(th.val[th.pyr.obj_id(0, 1)] == 2);  // right endpoint
        CHECK(th.edge[th.pyr.edge_id(0, 1, true)] == m);
        CHECK(th.edge[th.pyr.edge_id(0, 1, false)] == AlgMorphism::identity(2));
        auto f = bialg_from_singletons({th});
        CHECK(validate_bialg_functor(f).pass);
    }
}

TEST_CASE("underlying maps of pseudo-pullback composites always agree")
{
    for (const auto& p : all_alg_morphisms(3, 1))
        for (const auto& q : all_alg_morphisms(2, 1)) {
            AlgSquare sq = pseudo_pullback(p, q);
            auto c1 = compose_alg(sq.left, sq.bottom);
            auto c2 = compose_alg(sq.top, sq.right);
            CHECK(c1.map == c2.map);
        }
}
