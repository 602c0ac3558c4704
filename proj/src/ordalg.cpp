#include "bihall/ordalg.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace bihall::alg {

AlgMorphism AlgMorphism::identity(int n)
{
    AlgMorphism m;
    m.src = m.dst = n;
    m.map.resize(n);
    m.fibers.resize(n);
    for (int i = 0; i < n; ++i) {
        m.map[i] = i;
        m.fibers[i] = {i};
    }
    return m;
}

AlgMorphism AlgMorphism::from_map(int src, int dst, std::vector<int> map)
{
    AlgMorphism m;
    m.src = src;
    m.dst = dst;
    m.map = std::move(map);
    m.fibers.resize(dst);
    for (int x = 0; x < src; ++x)
        m.fibers[m.map[x]].push_back(x);
    m.validate();
    return m;
}

void AlgMorphism::validate() const
{
    require(int(map.size()) == src && int(fibers.size()) == dst, Err::InvalidInput,
            "alg morphism shape mismatch");
    std::vector<int> seen(src, 0);
    for (int y = 0; y < dst; ++y)
        for (int x : fibers[y]) {
            require(x >= 0 && x < src && map[x] == y, Err::InvalidInput,
                    "fiber element not over its point");
            require(!seen[x]++, Err::InvalidInput, "duplicate fiber element");
        }
    for (int x = 0; x < src; ++x)
        require(seen[x] == 1, Err::InvalidInput, "element missing from fibers");
}

int AlgMorphism::fiber_pos(int x) const
{
    const auto& f = fibers[map[x]];
    return int(std::find(f.begin(), f.end(), x) - f.begin());
}

bool AlgMorphism::is_bijection() const
{
    if (src != dst)
        return false;
    for (const auto& f : fibers)
        if (f.size() != 1)
            return false;
    return true;
}

bool operator<(const AlgMorphism& a, const AlgMorphism& b)
{
    return std::tie(a.src, a.dst, a.map, a.fibers) < std::tie(b.src, b.dst, b.map, b.fibers);
}

AlgMorphism compose_alg(const AlgMorphism& f, const AlgMorphism& g)
{
    require(f.dst == g.src, Err::TypeMismatch, "compose_alg: target(f) != source(g)");
    AlgMorphism m;
    m.src = f.src;
    m.dst = g.dst;
    m.map.resize(f.src);
    for (int x = 0; x < f.src; ++x)
        m.map[x] = g.map[f.map[x]];
    m.fibers.resize(g.dst);
    for (int z = 0; z < g.dst; ++z)
        for (int y : g.fibers[z])
            for (int x : f.fibers[y])
                m.fibers[z].push_back(x);
    return m;
}

AlgMorphism alg_coprod(const AlgMorphism& a, const AlgMorphism& b)
{
    AlgMorphism m;
    m.src = a.src + b.src;
    m.dst = a.dst + b.dst;
    m.map.resize(m.src);
    for (int x = 0; x < a.src; ++x)
        m.map[x] = a.map[x];
    for (int x = 0; x < b.src; ++x)
        m.map[a.src + x] = a.dst + b.map[x];
    m.fibers = a.fibers;
    for (const auto& f : b.fibers) {
        std::vector<int> g;
        for (int x : f)
            g.push_back(a.src + x);
        m.fibers.push_back(std::move(g));
    }
    return m;
}

void AlgSquare::validate_shape() const
{
    top.validate();
    left.validate();
    right.validate();
    bottom.validate();
    require(top.src == left.src && top.dst == right.src && left.dst == bottom.src &&
                right.dst == bottom.dst,
            Err::TypeMismatch, "square endpoints mismatch");
}

bool is_pseudo_pullback(const AlgSquare& sq)
{
    sq.validate_shape();
    int W = sq.top.src, X = sq.left.dst, Z = sq.right.src;
    for (int w = 0; w < W; ++w)
        if (sq.bottom.map[sq.left.map[w]] != sq.right.map[sq.top.map[w]])
            return false;
    // (1) set-level pullback
    std::vector<std::vector<int>> seen(X, std::vector<int>(Z, 0));
    for (int w = 0; w < W; ++w)
        if (seen[sq.left.map[w]][sq.top.map[w]]++)
            return false;
    for (int x = 0; x < X; ++x)
        for (int z = 0; z < Z; ++z)
            if ((sq.bottom.map[x] == sq.right.map[z]) != (seen[x][z] == 1))
                return false;
    // (2) over each x: top restricts to an order iso of fibers
    for (int x = 0; x < X; ++x) {
        const auto& fw = sq.left.fibers[x];
        const auto& fz = sq.right.fibers[sq.bottom.map[x]];
        if (fw.size() != fz.size())
            return false;
        for (size_t t = 0; t < fw.size(); ++t)
            if (sq.top.map[fw[t]] != fz[t])
                return false;
    }
    // (3) over each z: left restricts to an order iso of fibers
    for (int z = 0; z < Z; ++z) {
        const auto& fw = sq.top.fibers[z];
        const auto& fx = sq.bottom.fibers[sq.right.map[z]];
        if (fw.size() != fx.size())
            return false;
        for (size_t t = 0; t < fw.size(); ++t)
            if (sq.left.map[fw[t]] != fx[t])
                return false;
    }
    return true;
}

AlgSquare pseudo_pullback(const AlgMorphism& p, const AlgMorphism& q)
{
    require(p.dst == q.dst, Err::TypeMismatch, "pseudo_pullback: targets differ");
    std::vector<std::pair<int, int>> wset;  // (x,z) lex
    for (int x = 0; x < p.src; ++x)
        for (int z = 0; z < q.src; ++z)
            if (p.map[x] == q.map[z])
                wset.push_back({x, z});
    auto widx = [&](int x, int z) {
        return int(std::lower_bound(wset.begin(), wset.end(), std::make_pair(x, z)) -
                   wset.begin());
    };
    AlgSquare sq;
    sq.bottom = p;
    sq.right = q;
    sq.left.src = sq.top.src = int(wset.size());
    sq.left.dst = p.src;
    sq.top.dst = q.src;
    sq.left.map.resize(wset.size());
    sq.top.map.resize(wset.size());
    for (size_t w = 0; w < wset.size(); ++w) {
        sq.left.map[w] = wset[w].first;
        sq.top.map[w] = wset[w].second;
    }
    sq.left.fibers.resize(p.src);
    for (int x = 0; x < p.src; ++x)
        for (int z : q.fibers[p.map[x]])
            sq.left.fibers[x].push_back(widx(x, z));
    sq.top.fibers.resize(q.src);
    for (int z = 0; z < q.src; ++z)
        for (int x : p.fibers[q.map[z]])
            sq.top.fibers[z].push_back(widx(x, z));
    require(is_pseudo_pullback(sq), Err::NotPseudoPullback, "constructed square fails predicate");
    return sq;
}

/* ---------------- Pyr^nc ---------------- */

PyrNC::PyrNC(int n) : n(n)
{
    for (int a = 0; a <= n; ++a)
        for (int b = a; b <= n; ++b)
            objects.push_back({a, b});
    for (int o = 0; o < int(objects.size()); ++o) {
        auto [a, b] = objects[o];
        if (a + 1 <= b)
            edges.push_back({o, obj_id(a + 1, b), false});
        if (b - 1 >= a)
            edges.push_back({o, obj_id(a, b - 1), true});
    }
}

int PyrNC::obj_id(int a, int b) const
{
    require(0 <= a && a <= b && b <= n, Err::InvalidInput, "bad interval");
    return a * (n + 1) - a * (a - 1) / 2 + (b - a);
}

int PyrNC::edge_id(int a, int b, bool drop_right) const
{
    int src = obj_id(a, b);
    for (int e = 0; e < int(edges.size()); ++e)
        if (edges[e].src == src && edges[e].drop_right == drop_right)
            return e;
    fail(Err::InvalidInput, "no such edge");
}

std::vector<std::vector<int>> PyrNC::paths(int src, int dst) const
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> dfs = [&](int at) {
        if (at == dst)
            out.push_back(cur);
        for (int e = 0; e < int(edges.size()); ++e)
            if (edges[e].src == at) {
                cur.push_back(e);
                dfs(edges[e].dst);
                cur.pop_back();
            }
    };
    dfs(src);
    return out;
}

int PyrNCFunctor::on_obj(int obj) const
{
    auto [a, b] = src->objects[obj];
    return dst->obj_id(phi[a], phi[b]);
}

std::vector<int> PyrNCFunctor::on_edge(int e) const
{
    auto [a, b] = src->objects[src->edges[e].src];
    std::vector<int> path;
    if (!src->edges[e].drop_right) {
        for (int x = phi[a]; x < phi[a + 1]; ++x)
            path.push_back(dst->edge_id(x, phi[b], false));
    } else {
        for (int y = phi[b]; y > phi[b - 1]; --y)
            path.push_back(dst->edge_id(phi[a], y, true));
    }
    return path;
}

std::vector<int> PyrNCFunctor::on_path(const std::vector<int>& p) const
{
    std::vector<int> out;
    for (int e : p) {
        auto part = on_edge(e);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

PyrNCFunctor pyrnc_functor(const PyrNC& src, const PyrNC& dst, std::vector<int> phi)
{
    require(int(phi.size()) == src.n + 1, Err::InvalidInput, "phi arity mismatch");
    for (size_t i = 0; i + 1 < phi.size(); ++i)
        require(phi[i] <= phi[i + 1], Err::NonMonotone, "phi not monotone");
    require(phi.front() >= 0 && phi.back() <= dst.n, Err::InvalidInput, "phi out of range");
    return PyrNCFunctor{&src, &dst, std::move(phi)};
}

/* ---------------- functors into Alg ---------------- */

AlgMorphism SingleAlgFunctor::on_path(const std::vector<int>& path) const
{
    require(!path.empty(), Err::InvalidInput, "on_path needs a nonempty path");
    AlgMorphism m = edge[path[0]];
    for (size_t i = 1; i < path.size(); ++i)
        m = compose_alg(m, edge[path[i]]);
    return m;
}

void SpineChain::validate() const
{
    int n = int(sets.size()) - 1;
    require(n >= 0, Err::InvalidInput, "empty spine");
    require(int(apexes.size()) == n && int(to_left.size()) == n && int(to_right.size()) == n,
            Err::InvalidInput, "spine chain shape mismatch");
    for (int i = 0; i < n; ++i) {
        to_left[i].validate();
        to_right[i].validate();
        require(to_left[i].src == apexes[i] && to_left[i].dst == sets[i], Err::TypeMismatch,
                "left leg endpoints");
        require(to_right[i].src == apexes[i] && to_right[i].dst == sets[i + 1], Err::TypeMismatch,
                "right leg endpoints");
    }
}

SingleAlgFunctor functor_from_spine(const SpineChain& chain)
{
    chain.validate();
    int n = int(chain.sets.size()) - 1;
    SingleAlgFunctor f{PyrNC(n), {}, {}};
    f.val.assign(f.pyr.objects.size(), 0);
    f.edge.resize(f.pyr.edges.size());
    for (int a = 0; a <= n; ++a)
        f.val[f.pyr.obj_id(a, a)] = chain.sets[a];
    for (int a = 0; a + 1 <= n; ++a) {
        f.val[f.pyr.obj_id(a, a + 1)] = chain.apexes[a];
        f.edge[f.pyr.edge_id(a, a + 1, true)] = chain.to_left[a];
        f.edge[f.pyr.edge_id(a, a + 1, false)] = chain.to_right[a];
    }
    // longer intervals are iterated pseudo-pullbacks over the inner corner
    for (int len = 2; len <= n; ++len)
        for (int a = 0; a + len <= n; ++a) {
            int b = a + len;
            AlgMorphism p = f.edge[f.pyr.edge_id(a, b - 1, false)];  // [a;b-1] -> [a+1;b-1]
            AlgMorphism q = f.edge[f.pyr.edge_id(a + 1, b, true)];   // [a+1;b] -> [a+1;b-1]
            AlgSquare sq = pseudo_pullback(p, q);
            f.val[f.pyr.obj_id(a, b)] = sq.left.src;
            f.edge[f.pyr.edge_id(a, b, true)] = sq.left;
            f.edge[f.pyr.edge_id(a, b, false)] = sq.top;
        }
    return f;
}

AlgMorphism BialgFunctor::on_path(int mask, const std::vector<int>& path) const
{
    require(!path.empty(), Err::InvalidInput, "on_path needs nonempty path");
    AlgMorphism m = edge[mask][path[0]];
    for (size_t i = 1; i < path.size(); ++i)
        m = compose_alg(m, edge[mask][path[i]]);
    return m;
}

AlgMorphism BialgFunctor::incl_path(int mask_from, int mask_to, int obj) const
{
    require((mask_from & mask_to) == mask_from, Err::InvalidInput, "not a subset");
    AlgMorphism m = AlgMorphism::identity(val[mask_from][obj]);
    int cur = mask_from;
    for (int s = 0; s < S; ++s)
        if ((mask_to & (1 << s)) && !(cur & (1 << s))) {
            m = compose_alg(m, incl[cur][s][obj]);
            cur |= 1 << s;
        }
    return m;
}

BialgFunctor bialg_from_singletons(const std::vector<SingleAlgFunctor>& theta)
{
    int S = int(theta.size());
    require(S >= 1, Err::InvalidInput, "need at least one singleton");
    int n = theta[0].pyr.n;
    for (const auto& t : theta)
        require(t.pyr.n == n, Err::ShapeMismatch, "singleton shapes differ");
    BialgFunctor f(S, n);
    int nmask = 1 << S;
    int nobj = int(f.pyr.objects.size());
    f.val.assign(nmask, std::vector<int>(nobj, 0));
    f.edge.assign(nmask, {});
    f.incl.assign(nmask, std::vector<std::vector<AlgMorphism>>(S));
    for (int mask = 0; mask < nmask; ++mask)
        for (int x = 0; x < nobj; ++x)
            for (int s = 0; s < S; ++s)
                if (mask & (1 << s))
                    f.val[mask][x] += theta[s].val[x];
    for (int mask = 0; mask < nmask; ++mask) {
        for (int e = 0; e < int(f.pyr.edges.size()); ++e) {
            AlgMorphism m;
            bool first = true;
            for (int s = 0; s < S; ++s)
                if (mask & (1 << s)) {
                    m = first ? theta[s].edge[e] : alg_coprod(m, theta[s].edge[e]);
                    first = false;
                }
            f.edge[mask].push_back(std::move(m));
        }
        for (int s = 0; s < S; ++s) {
            if (mask & (1 << s))
                continue;
            for (int x = 0; x < nobj; ++x) {
                AlgMorphism m;
                m.src = f.val[mask][x];
                m.dst = f.val[mask | (1 << s)][x];
                m.map.resize(m.src);
                int src_off = 0, dst_off = 0;
                for (int t = 0; t < S; ++t) {
                    bool in_new = (t == s) || (mask & (1 << t));
                    if (!in_new)
                        continue;
                    if (t == s) {
                        dst_off += theta[t].val[x];
                        continue;
                    }
                    for (int i = 0; i < theta[t].val[x]; ++i)
                        m.map[src_off + i] = dst_off + i;
                    src_off += theta[t].val[x];
                    dst_off += theta[t].val[x];
                }
                m.fibers.resize(m.dst);
                for (int i = 0; i < m.src; ++i)
                    m.fibers[m.map[i]].push_back(i);
                f.incl[mask][s].push_back(std::move(m));
            }
        }
    }
    return f;
}

namespace {

std::string interval_str(const PyrNC& p, int obj)
{
    auto [a, b] = p.objects[obj];
    return "[" + std::to_string(a) + ";" + std::to_string(b) + "]";
}

}  // namespace

Report validate_bialg_functor(const BialgFunctor& f)
{
    Report rep;
    int nmask = 1 << f.S;
    int nobj = int(f.pyr.objects.size());

    for (int x = 0; x < nobj; ++x)
        if (f.val[0][x] != 0) {
            rep.fail("value at the empty subset is not the empty set");
            return rep;
        }

    for (int mask = 0; mask < nmask; ++mask) {
        for (int e = 0; e < int(f.pyr.edges.size()); ++e) {
            const AlgMorphism& m = f.edge[mask][e];
            m.validate();
            if (m.src != f.val[mask][f.pyr.edges[e].src] ||
                m.dst != f.val[mask][f.pyr.edges[e].dst]) {
                rep.fail("edge image endpoints mismatch");
                return rep;
            }
        }
        for (int s = 0; s < f.S; ++s) {
            if (mask & (1 << s))
                continue;
            for (int x = 0; x < nobj; ++x) {
                const AlgMorphism& m = f.incl[mask][s][x];
                m.validate();
                if (m.src != f.val[mask][x] || m.dst != f.val[mask | (1 << s)][x]) {
                    rep.fail("inclusion image endpoints mismatch");
                    return rep;
                }
            }
            for (int e = 0; e < int(f.pyr.edges.size()); ++e) {
                const auto& ed = f.pyr.edges[e];
                AlgMorphism a = compose_alg(f.incl[mask][s][ed.src], f.edge[mask | (1 << s)][e]);
                AlgMorphism b = compose_alg(f.edge[mask][e], f.incl[mask][s][ed.dst]);
                if (!(a == b))
                    rep.fail("inclusion not natural at mask=" + std::to_string(mask) +
                             " s=" + std::to_string(s) + " edge " + std::to_string(e));
            }
            for (int t = s + 1; t < f.S; ++t) {
                if (mask & (1 << t))
                    continue;
                for (int x = 0; x < nobj; ++x) {
                    AlgMorphism a = compose_alg(f.incl[mask][s][x], f.incl[mask | (1 << s)][t][x]);
                    AlgMorphism b = compose_alg(f.incl[mask][t][x], f.incl[mask | (1 << t)][s][x]);
                    if (!(a == b))
                        rep.fail("inclusion squares do not commute");
                }
            }
        }
    }

    // cocartesian: disjoint unions are coproducts, naturally
    for (int u = 0; u < nmask; ++u)
        for (int v = 0; v < nmask; ++v) {
            if (u & v)
                continue;
            int w = u | v;
            for (int x = 0; x < nobj; ++x) {
                AlgMorphism iu = f.incl_path(u, w, x);
                AlgMorphism iv = f.incl_path(v, w, x);
                std::vector<int> hit(f.val[w][x], 0);
                for (int i = 0; i < iu.src; ++i)
                    hit[iu.map[i]]++;
                for (int i = 0; i < iv.src; ++i)
                    hit[iv.map[i]]++;
                for (int z : hit)
                    if (z != 1) {
                        rep.fail("inclusions of " + std::to_string(u) + "," + std::to_string(v) +
                                 " not jointly bijective at " + interval_str(f.pyr, x));
                        return rep;
                    }
            }
            for (int e = 0; e < int(f.pyr.edges.size()); ++e) {
                const auto& ed = f.pyr.edges[e];
                AlgMorphism co = alg_coprod(f.edge[u][e], f.edge[v][e]);
                AlgMorphism ju = f.incl_path(u, w, ed.src);
                AlgMorphism jv = f.incl_path(v, w, ed.src);
                AlgMorphism ku = f.incl_path(u, w, ed.dst);
                AlgMorphism kv = f.incl_path(v, w, ed.dst);
                const AlgMorphism& big = f.edge[w][e];
                auto src_of = [&](int i) { return i < ju.src ? ju.map[i] : jv.map[i - ju.src]; };
                auto dst_of = [&](int i) { return i < ku.src ? ku.map[i] : kv.map[i - ku.src]; };
                bool ok = true;
                for (int i = 0; i < co.src && ok; ++i)
                    ok = big.map[src_of(i)] == dst_of(co.map[i]);
                for (int z = 0; z < co.dst && ok; ++z) {
                    const auto& fz = co.fibers[z];
                    const auto& gz = big.fibers[dst_of(z)];
                    if (fz.size() != gz.size()) {
                        ok = false;
                        break;
                    }
                    for (size_t t = 0; t < fz.size(); ++t)
                        if (src_of(fz[t]) != gz[t])
                            ok = false;
                }
                if (!ok)
                    rep.fail("edge at union mask " + std::to_string(w) +
                             " is not the coproduct morphism for (" + std::to_string(u) + "," +
                             std::to_string(v) + ")");
            }
        }

    // pseudo-cartesian: the middle square of every [2]-reindexing
    PyrNC p2(2);
    for (int mask = 0; mask < nmask; ++mask)
        for (int r0 = 0; r0 <= f.pyr.n; ++r0)
            for (int r1 = r0; r1 <= f.pyr.n; ++r1)
                for (int r2 = r1; r2 <= f.pyr.n; ++r2) {
                    PyrNCFunctor fun = pyrnc_functor(p2, f.pyr, {r0, r1, r2});
                    auto eval = [&](int a, int b, bool dr) {
                        auto path = fun.on_path({p2.edge_id(a, b, dr)});
                        if (path.empty()) {
                            int at = fun.on_obj(p2.obj_id(a, b));
                            return AlgMorphism::identity(f.val[mask][at]);
                        }
                        return f.on_path(mask, path);
                    };
                    AlgSquare sq;
                    sq.top = eval(0, 2, false);
                    sq.left = eval(0, 2, true);
                    sq.right = eval(1, 2, true);
                    sq.bottom = eval(0, 1, false);
                    if (!is_pseudo_pullback(sq))
                        rep.fail("pseudo-cartesian fails at mask=" + std::to_string(mask) +
                                 " rho=(" + std::to_string(r0) + "," + std::to_string(r1) + "," +
                                 std::to_string(r2) + ")");
                }
    return rep;
}

/* ---------------- endpoint embeddings ---------------- */

void AlgChain::validate() const
{
    int n = int(sets.size()) - 1;
    require(n >= 0 && int(maps.size()) == n, Err::InvalidInput, "chain shape");
    for (int i = 0; i < n; ++i) {
        maps[i].validate();
        if (!coalgebra)
            require(maps[i].src == sets[i] && maps[i].dst == sets[i + 1], Err::TypeMismatch,
                    "chain map endpoints");
        else
            require(maps[i].src == sets[i + 1] && maps[i].dst == sets[i], Err::TypeMismatch,
                    "cochain map endpoints");
    }
}

AlgMorphism AlgChain::composite(int i, int j) const
{
    require(0 <= i && i <= j && j < int(sets.size()), Err::InvalidInput, "composite range");
    if (!coalgebra) {
        AlgMorphism m = AlgMorphism::identity(sets[i]);
        for (int t = i; t < j; ++t)
            m = compose_alg(m, maps[t]);
        return m;
    }
    AlgMorphism m = AlgMorphism::identity(sets[j]);
    for (int t = j - 1; t >= i; --t)
        m = compose_alg(m, maps[t]);
    return m;
}

SingleAlgFunctor embed_endpoints(const AlgChain& chain)
{
    chain.validate();
    int n = int(chain.sets.size()) - 1;
    SingleAlgFunctor f{PyrNC(n), {}, {}};
    f.val.assign(f.pyr.objects.size(), 0);
    f.edge.resize(f.pyr.edges.size());
    for (int o = 0; o < int(f.pyr.objects.size()); ++o) {
        auto [a, b] = f.pyr.objects[o];
        f.val[o] = chain.coalgebra ? chain.sets[b] : chain.sets[a];
    }
    for (int e = 0; e < int(f.pyr.edges.size()); ++e) {
        auto [a, b] = f.pyr.objects[f.pyr.edges[e].src];
        if (!chain.coalgebra)
            f.edge[e] = f.pyr.edges[e].drop_right ? AlgMorphism::identity(chain.sets[a])
                                                  : chain.maps[a];
        else
            f.edge[e] = f.pyr.edges[e].drop_right ? chain.maps[b - 1]
                                                  : AlgMorphism::identity(chain.sets[b]);
    }
    return f;
}

BialgFunctor embed_endpoints_bialg(const std::vector<AlgChain>& per_singleton)
{
    std::vector<SingleAlgFunctor> theta;
    for (const auto& c : per_singleton)
        theta.push_back(embed_endpoints(c));
    return bialg_from_singletons(theta);
}

}  // namespace bihall::alg
