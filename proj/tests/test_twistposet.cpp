#include <doctest.h>

#include "bihall/twistposet.hpp"

using namespace bihall;
using namespace bihall::tw;

namespace {

DeltaOpSimplex active21()  // [2] <-| [1], the unique active morphism
{
    return DeltaOpSimplex::arrow(2, 1, {0, 2});
}

}  // namespace

TEST_CASE("pyr of chains")
{
    CHECK(pyr(chain_poset(0)).elems.size() == 1);
    CHECK(pyr(chain_poset(2)).elems.size() == 6);
    for (int n = 0; n <= 5; ++n)
        CHECK(int(pyr(chain_poset(n)).elems.size()) == (n + 1) * (n + 2) / 2);
    pyr(chain_poset(3)).poset.validate();
}

TEST_CASE("groth posets for constant simplices")
{
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= 3; ++k) {
            GrothData g = groth_posets(DeltaOpSimplex::constant(n, k));
            CHECK(poset_iso(g.M, product(chain_poset(n), chain_poset(k))));
            CHECK(poset_iso(g.Omega, product(pyr(chain_poset(n)).poset, chain_poset(k))));
            // Wedge(n,k) = Wedge(n) x Wedge(k)
            CHECK(int(g.wedge_list.size()) == (2 * n + 1) * (2 * k + 1));
        }
}

TEST_CASE("groth posets for the active morphism")
{
    GrothData g = groth_posets(active21());
    CHECK(g.M.n == 5);
    CHECK(g.Omega.n == 9);
    CHECK(g.wedge_list.size() == 11);
    // vertical poset: (0,1) -> (0,0), (1,1) -> (2,0) and nothing else off-diagonal
    int v01 = g.mid(0, 1), v11 = g.mid(1, 1);
    CHECK(g.vle[v01][g.mid(0, 0)]);
    CHECK(g.vle[v11][g.mid(2, 0)]);
    CHECK(!g.vle[v01][g.mid(1, 0)]);
    int off = 0;
    for (int s = 0; s < g.M.n; ++s)
        for (int t = 0; t < g.M.n; ++t)
            if (s != t && g.vle[s][t])
                ++off;
    CHECK(off == 2);
}

TEST_CASE("length-0 simplices")
{
    GrothData g = groth_posets(DeltaOpSimplex::length0(3));
    CHECK(poset_iso(g.M, chain_poset(3)));
    CHECK(poset_iso(g.Omega, pyr(chain_poset(3)).poset));
    for (int s = 0; s < g.M.n; ++s)
        for (int t = 0; t < g.M.n; ++t)
            CHECK(bool(g.vle[s][t]) == (s == t));
}

TEST_CASE("reindexing")
{
    GrothData g = groth_posets(active21());

    SUBCASE("identity natural transformation")
    {
        std::vector<std::vector<int>> eta = {{0, 1, 2}, {0, 1}};
        auto mm = reindex_m_nat(g, g, eta);
        for (int s = 0; s < g.M.n; ++s)
            CHECK(mm[s] == s);
    }

    SUBCASE("vertex inclusion embeds the b=0 row")
    {
        GrothData sub = groth_posets(simplex_restrict(g.phi, {0}));
        auto mm = reindex_m(sub, g, {0});
        CHECK(sub.M.n == 3);
        for (int a = 0; a <= 2; ++a)
            CHECK(mm[sub.mid(a, 0)] == g.mid(a, 0));
    }

    SUBCASE("functoriality of gamma-reindexing")
    {
        DeltaOpSimplex phi2 = DeltaOpSimplex::constant(2, 2);
        phi2.steps[0] = {0, 1, 1};
        phi2.steps[1] = {0, 0, 2};
        GrothData full = groth_posets(phi2);
        std::vector<int> gamma = {0, 2};   // [1] -> [2]
        std::vector<int> gammap = {1};     // [0] -> [1]
        GrothData mid = groth_posets(simplex_restrict(phi2, gamma));
        std::vector<int> comp = {gamma[gammap[0]]};
        GrothData low = groth_posets(simplex_restrict(phi2, comp));
        auto m1 = reindex_m(mid, full, gamma);
        auto m2 = reindex_m(low, mid, gammap);
        auto m3 = reindex_m(low, full, comp);
        for (int s = 0; s < low.M.n; ++s)
            CHECK(m3[s] == m1[m2[s]]);
    }
}

TEST_CASE("free completion")
{
    auto c1 = free_completion(chain_poset(1));
    CHECK(c1.poset.n == 3);

    auto sq = free_completion(product(chain_poset(1), chain_poset(1)));
    CHECK(sq.poset.n == 6);

    auto c2 = free_completion(chain_poset(2));
    c2.poset.validate();
    // the embedding is injective and reflects order
    for (int x = 0; x <= 2; ++x)
        for (int y = 0; y <= 2; ++y) {
            if (x != y)
                CHECK(c2.embed[x] != c2.embed[y]);
            CHECK(bool(c2.poset.le(c2.embed[x], c2.embed[y])) == (x <= y));
        }
    // completion has all meets and joins (it is a lattice)
    auto has_bound = [&](const FinPoset& p, bool join) {
        for (int a = 0; a < p.n; ++a)
            for (int b = 0; b < p.n; ++b) {
                int found = -1;
                for (int c = 0; c < p.n; ++c) {
                    bool bound = join ? p.le(a, c) && p.le(b, c) : p.le(c, a) && p.le(c, b);
                    if (!bound)
                        continue;
                    bool best = true;
                    for (int d = 0; d < p.n && best; ++d) {
                        bool bd = join ? p.le(a, d) && p.le(b, d) : p.le(d, a) && p.le(d, b);
                        if (bd && (join ? !p.le(c, d) : !p.le(d, c)))
                            best = false;
                    }
                    if (best) {
                        found = c;
                        break;
                    }
                }
                if (found < 0)
                    return false;
            }
        return true;
    };
    CHECK(has_bound(sq.poset, true));
    CHECK(has_bound(sq.poset, false));
}

TEST_CASE("cone regions of the active morphism")
{
    GrothData g = groth_posets(active21());
    ConeFunctor kf = cone_functor(g);

    // top interval [(0,1);(1,1)]: the three b=1 elements
    auto kb_top = kf.kbar(g.mid(0, 1), g.mid(1, 1));
    int cnt = 0;
    for (int t = 0; t < g.Omega.n; ++t)
        if (kb_top[t]) {
            ++cnt;
            CHECK(g.o_elems[t][2] == 1);
        }
    CHECK(cnt == 3);

    // bottom interval [(0,0);(2,0)]: all six b=0 elements
    auto kb_bot = kf.kbar(g.mid(0, 0), g.mid(2, 0));
    cnt = 0;
    for (int t = 0; t < g.Omega.n; ++t)
        if (kb_bot[t]) {
            ++cnt;
            CHECK(g.o_elems[t][2] == 0);
        }
    CHECK(cnt == 6);

    // the full mixed interval covers all nine
    auto kb_all = kf.kbar(g.mid(0, 1), g.mid(2, 0));
    cnt = 0;
    for (int t = 0; t < g.Omega.n; ++t)
        cnt += kb_all[t];
    CHECK(cnt == 9);

    CHECK(check_cone(g).pass);
}

TEST_CASE("cone coherence on a small family")
{
    CHECK(check_cone_family(1, 2).pass);
}
