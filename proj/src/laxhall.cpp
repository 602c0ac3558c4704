#include "bihall/laxhall.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace bihall::lax {

using namespace simp;
using alg::AlgChain;
using alg::AlgMorphism;
using alg::AlgSquare;
using alg::BialgFunctor;

/* ---------------- coproducts of standard simplices ---------------- */

namespace {

std::vector<int> verts_of_subset_rank(int n, int d, int rank)
{
    // d+1 element subsets of 0..n in lex order
    std::vector<int> out;
    int prev = -1;
    auto choose = [](int a, int b) {
        if (b < 0 || b > a)
            return 0LL;
        long long r = 1;
        for (int i = 0; i < b; ++i)
            r = r * (a - i) / (i + 1);
        return r;
    };
    for (int t = 0; t <= d; ++t) {
        for (int v = prev + 1; v <= n; ++v) {
            long long block = choose(n - v, d - t);
            if (rank < block) {
                out.push_back(v);
                prev = v;
                break;
            }
            rank -= int(block);
        }
    }
    return out;
}

}  // namespace

GridApex grid_coprod(const std::vector<std::pair<int, int>>& dims)
{
    int P = 0, Q = 0;
    for (auto [n, m] : dims) {
        P = std::max(P, n);
        Q = std::max(Q, m);
    }
    GridApex g;
    g.dims = dims;
    auto out = std::make_shared<BSet>(P, Q);
    // offsets[y][p][q]
    std::vector<std::vector<std::vector<int>>> offs(dims.size());
    for (size_t y = 0; y < dims.size(); ++y) {
        auto [n, m] = dims[y];
        BSetP piece = standard_bisimplex(n, m);
        offs[y].assign(P + 1, std::vector<int>(Q + 1, 0));
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= m; ++q)
                offs[y][p][q] = out->ncells(p, q);
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= m; ++q)
                for (int c = 0; c < piece->ncells(p, q); ++c) {
                    auto cd = piece->cells[p][q][c];
                    for (auto& fc : cd.hfaces)
                        fc.cell += offs[y][fc.cp][fc.cq];
                    for (auto& fc : cd.vfaces)
                        fc.cell += offs[y][fc.cp][fc.cq];
                    out->add_cell(p, q, std::move(cd.hfaces), std::move(cd.vfaces));
                }
    }
    // rebuild offsets exactly (cells added per component in order)
    g.obj = out;
    return g;
}

Ref2 GridApex::simplex(int comp, const std::vector<int>& f, const std::vector<int>& g) const
{
    auto [n, m] = dims[comp];
    Ref2 r = bisimplex_of(n, m, f, g);
    // offset of this component's cells at (r.cp, r.cq)
    int off = 0;
    auto choose = [](int a, int b) {
        long long r2 = 1;
        for (int i = 0; i < b; ++i)
            r2 = r2 * (a - i) / (i + 1);
        return int(r2);
    };
    for (int y = 0; y < comp; ++y) {
        auto [n2, m2] = dims[y];
        if (r.cp <= n2 && r.cq <= m2)
            off += choose(n2 + 1, r.cp + 1) * choose(m2 + 1, r.cq + 1);
    }
    r.cell += off;
    return r;
}

FanApex fan_coprod(const std::vector<int>& dims)
{
    int N = 0;
    for (int n : dims)
        N = std::max(N, n);
    FanApex f;
    f.dims = dims;
    auto out = std::make_shared<SSet>(N);
    for (int n : dims) {
        SSetP piece = standard_simplex(n);
        std::vector<int> offs(N + 1, 0);
        for (int d = 0; d <= n; ++d)
            offs[d] = out->ncells(d);
        for (int d = 0; d <= n; ++d)
            for (int c = 0; c < piece->ncells(d); ++c) {
                auto fs = piece->faces[d][c];
                for (auto& fc : fs)
                    fc.cell += offs[fc.cdim];
                out->add_cell(d, std::move(fs));
            }
    }
    f.obj = out;
    return f;
}

namespace {

Ref sset_simplex_of(int n, const std::vector<int>& f)
{
    std::vector<int> image;
    Word word;
    for (size_t i = 0; i < f.size(); ++i) {
        if (i > 0) {
            require(f[i] >= f[i - 1], Err::NonMonotone, "vertex map not monotone");
            if (f[i] == f[i - 1]) {
                word.push_back(int(i) - 1);
                continue;
            }
        }
        image.push_back(f[i]);
    }
    std::reverse(word.begin(), word.end());
    // lex rank of the image subset
    auto choose = [](int a, int b) {
        if (b < 0 || b > a)
            return 0LL;
        long long r = 1;
        for (int i = 0; i < b; ++i)
            r = r * (a - i) / (i + 1);
        return r;
    };
    int d = int(image.size()) - 1;
    long long rank = 0;
    int prev = -1;
    for (int t = 0; t <= d; ++t) {
        for (int v = prev + 1; v < image[t]; ++v)
            rank += choose(n - v, d - t);
        prev = image[t];
    }
    return Ref{d, int(rank), word};
}

}  // namespace

Ref FanApex::simplex(int comp, const std::vector<int>& f) const
{
    Ref r = sset_simplex_of(dims[comp], f);
    int off = 0;
    auto choose = [](int a, int b) {
        long long r2 = 1;
        for (int i = 0; i < b; ++i)
            r2 = r2 * (a - i) / (i + 1);
        return int(r2);
    };
    for (int y = 0; y < comp; ++y)
        if (r.cdim <= dims[y])
            off += choose(dims[y] + 1, r.cdim + 1);
    r.cell += off;
    return r;
}

/* ---------------- alpha ---------------- */

Span1 alpha_span(const AlgMorphism& p)
{
    p.validate();
    Span1 s;
    auto d1 = standard_simplex(1);
    s.left = disjoint_copies(d1, p.src);
    s.right = disjoint_copies(d1, p.dst);
    std::vector<int> dims(p.dst);
    for (int y = 0; y < p.dst; ++y)
        dims[y] = int(p.fibers[y].size());
    FanApex fan = fan_coprod(dims);
    s.apex = fan.obj;

    SMap sigma;
    sigma.src = s.left;
    sigma.dst = s.apex;
    sigma.img.resize(std::max<size_t>(2, s.left->faces.size()));
    for (int x = 0; x < p.src; ++x) {
        int y = p.map[x];
        int h = p.fiber_pos(x);
        sigma.img[0].push_back(fan.simplex(y, {h}));
        sigma.img[0].push_back(fan.simplex(y, {h + 1}));
    }
    for (int x = 0; x < p.src; ++x) {
        int y = p.map[x];
        int h = p.fiber_pos(x);
        sigma.img[1].push_back(fan.simplex(y, {h, h + 1}));
    }
    sigma.validate();
    s.lleg = sigma;

    SMap lambda;
    lambda.src = s.right;
    lambda.dst = s.apex;
    lambda.img.resize(std::max<size_t>(2, s.right->faces.size()));
    for (int y = 0; y < p.dst; ++y) {
        lambda.img[0].push_back(fan.simplex(y, {0}));
        lambda.img[0].push_back(fan.simplex(y, {dims[y]}));
    }
    for (int y = 0; y < p.dst; ++y)
        lambda.img[1].push_back(fan.simplex(y, {0, dims[y]}));
    lambda.validate();
    s.rleg = lambda;
    return s;
}

span::SpanMor susp_span_h(const Span1& s)
{
    span::SpanMor out;
    BMap l = susp_h(s.lleg), r = susp_h(s.rleg);
    out.left = l.src;
    out.right = r.src;
    out.apex = l.dst;
    r.dst = out.apex;  // same construction from the same apex
    out.lleg = l;
    out.rleg = r;
    return out;
}

span::SpanMor susp_span_v(const Span1& s)
{
    span::SpanMor out;
    BMap l = susp_v(s.lleg), r = susp_v(s.rleg);
    out.left = l.src;
    out.right = r.src;
    out.apex = l.dst;
    r.dst = out.apex;
    out.lleg = l;
    out.rleg = r;
    return out;
}

AlphaLax alpha_lax(const AlgMorphism& p1, const AlgMorphism& p2)
{
    require(p1.dst == p2.src, Err::TypeMismatch, "alpha_lax: morphisms not composable");
    AlgMorphism p21 = compose_alg(p1, p2);

    Span1 s1 = alpha_span(p1);
    Span1 s2 = alpha_span(p2);
    Span1 sd = alpha_span(p21);

    span::SpanMor b1 = susp_span_h(s1);
    span::SpanMor b2 = susp_span_h(s2);
    span::SpanMor bd = susp_span_h(sd);

    // glue along the middle boundary X1·Δ¹ (structurally equal objects)
    BMap lleg2 = b2.lleg;
    lleg2.src = b1.right;
    Colimit po = pushout(b1.right, b1.apex, b2.apex, b1.rleg, lleg2);

    AlphaLax out;
    out.composite.left = b1.left;
    out.composite.right = b2.right;
    out.composite.apex = po.obj;
    out.composite.lleg = compose(po.legs[0], b1.lleg);
    out.composite.rleg = compose(po.legs[1], b2.rleg);
    out.direct = bd;

    // component maps into the direct apex
    FanApex fan1 = fan_coprod([&] {
        std::vector<int> d(p1.dst);
        for (int y = 0; y < p1.dst; ++y)
            d[y] = int(p1.fibers[y].size());
        return d;
    }());
    FanApex fand = fan_coprod([&] {
        std::vector<int> d(p21.dst);
        for (int z = 0; z < p21.dst; ++z)
            d[z] = int(p21.fibers[z].size());
        return d;
    }());
    FanApex fan2 = fan_coprod([&] {
        std::vector<int> d(p2.dst);
        for (int z = 0; z < p2.dst; ++z)
            d[z] = int(p2.fibers[z].size());
        return d;
    }());

    // decode cells of a fan: (component, vertex set)
    auto decode = [](const FanApex& f, int dim, int cell) {
        int c = cell;
        auto choose = [](int a, int b) {
            long long r = 1;
            for (int i = 0; i < b; ++i)
                r = r * (a - i) / (i + 1);
            return int(r);
        };
        for (size_t y = 0; y < f.dims.size(); ++y) {
            if (dim <= f.dims[y]) {
                int cnt = choose(f.dims[y] + 1, dim + 1);
                if (c < cnt)
                    return std::make_pair(int(y), verts_of_subset_rank(f.dims[y], dim, c));
                c -= cnt;
            }
        }
        fail(Err::InvalidInput, "fan cell out of range");
    };

    // spine-block inclusion apex(p1) -> apex(p21)
    auto m1_img = [&](int dim, int cell) {
        auto [y, verts] = decode(fan1, dim, cell);
        int z = p2.map[y];
        int off = 0;
        for (int y2 : p2.fibers[z]) {
            if (y2 == y)
                break;
            off += int(p1.fibers[y2].size());
        }
        std::vector<int> vs;
        for (int v : verts)
            vs.push_back(off + v);
        return fand.simplex(z, vs);
    };
    // long-edge collapse apex(p2) -> apex(p21)
    auto m2_img = [&](int dim, int cell) {
        auto [z, verts] = decode(fan2, dim, cell);
        std::vector<int> vs;
        for (int v : verts) {
            int pos = 0;
            for (int t = 0; t < v; ++t)
                pos += int(p1.fibers[p2.fibers[z][t]].size());
            vs.push_back(pos);
        }
        return fand.simplex(z, vs);
    };

    std::vector<std::vector<std::vector<Ref2>>> img(po.obj->pbound + 1);
    for (int p = 0; p <= po.obj->pbound; ++p) {
        img[p].resize(po.obj->qbound + 1);
        for (int q = 0; q <= po.obj->qbound; ++q)
            for (int c = 0; c < po.obj->ncells(p, q); ++c) {
                auto [piece, cell] = po.origin[p][q][c];
                // suspended cells at (p,q): index = cx * ncells_dq + cy with Δ¹
                auto d1 = standard_simplex(1);
                int ncy = d1->ncells(q);
                int cx = cell / ncy, cy = cell % ncy;
                Ref im1d;
                if (piece == 0)
                    im1d = m1_img(p, cx);
                else if (piece == 1)
                    im1d = m2_img(p, cx);
                else {  // boundary copy of X1·Δ¹: map through b1.rleg then m1
                    Ref2 through = b1.rleg.img[p][q][cell];
                    int tcy = through.cell % d1->ncells(through.cq);
                    int tcx = through.cell / d1->ncells(through.cq);
                    Ref tmp = m1_img(through.cp, tcx);
                    img[p][q].push_back(Ref2{tmp.cdim, through.cq,
                                             tmp.cell * d1->ncells(through.cq) + tcy, tmp.word,
                                             through.wv});
                    continue;
                }
                img[p][q].push_back(
                    Ref2{im1d.cdim, q, im1d.cell * d1->ncells(q) + cy, im1d.word, {}});
            }
    }
    out.comparison = make_bmap(po.obj, bd.apex, std::move(img));
    return out;
}

/* ---------------- bispans from squares ---------------- */

GridApex square_apex(const AlgSquare& sq)
{
    std::vector<std::pair<int, int>> dims(sq.bottom.dst);
    for (int y = 0; y < sq.bottom.dst; ++y)
        dims[y] = {int(sq.bottom.fibers[y].size()), int(sq.right.fibers[y].size())};
    return grid_coprod(dims);
}

span::SpanMor square_to_bispan(const AlgSquare& sq)
{
    require(is_pseudo_pullback(sq), Err::NotPseudoPullback,
            "square_to_bispan needs a pseudo-pullback");
    GridApex ga = square_apex(sq);
    span::SpanMor out;
    auto sq11 = standard_bisimplex(1, 1);
    out.left = disjoint_copies(sq11, sq.top.src);
    out.right = disjoint_copies(sq11, sq.bottom.dst);
    out.apex = ga.obj;

    // cells of n·Δ^{1,1} decode as (copy, cell of Δ^{1,1})
    auto leg = [&](const BSetP& foot, int copies,
                   const std::function<Ref2(int, const std::vector<int>&, const std::vector<int>&)>&
                       image) {
        std::vector<std::vector<std::vector<Ref2>>> img(foot->pbound + 1);
        for (int p = 0; p <= foot->pbound; ++p) {
            img[p].resize(foot->qbound + 1);
            for (int q = 0; q <= foot->qbound; ++q) {
                int base = sq11->ncells(p, q);
                for (int c = 0; c < foot->ncells(p, q); ++c) {
                    int copy = c / base, cell = c % base;
                    // vertex sets of the Δ^{1,1} cell
                    auto choose2 = [&](int dim, int idx) {
                        return verts_of_subset_rank(1, dim, idx);
                    };
                    int nvq = (q == 0) ? 2 : 1;  // cells of Δ¹ per dim: 2 vertices, 1 edge
                    int cx = cell / nvq, cy = cell % nvq;
                    std::vector<int> vh = choose2(p, cx);
                    std::vector<int> vv = choose2(q, cy);
                    img[p][q].push_back(image(copy, vh, vv));
                }
            }
        }
        (void)copies;
        return img;
    };

    auto limg = leg(out.left, sq.top.src, [&](int xp, const std::vector<int>& vh,
                                              const std::vector<int>& vv) {
        int y = sq.bottom.map[sq.left.map[xp]];
        int h = sq.bottom.fiber_pos(sq.left.map[xp]);
        int v = sq.right.fiber_pos(sq.top.map[xp]);
        std::vector<int> fh, fv;
        for (int t : vh)
            fh.push_back(h + t);
        for (int t : vv)
            fv.push_back(v + t);
        return ga.simplex(y, fh, fv);
    });
    out.lleg = make_bmap(out.left, out.apex, std::move(limg));

    auto rimg = leg(out.right, sq.bottom.dst, [&](int y, const std::vector<int>& vh,
                                                  const std::vector<int>& vv) {
        auto [n, m] = ga.dims[y];
        std::vector<int> fh, fv;
        for (int t : vh)
            fh.push_back(t * n);
        for (int t : vv)
            fv.push_back(t * m);
        return ga.simplex(y, fh, fv);
    });
    out.rleg = make_bmap(out.right, out.apex, std::move(rimg));
    return out;
}

namespace {

/* decode a grid cell into (component, horizontal verts, vertical verts) */
std::tuple<int, std::vector<int>, std::vector<int>> grid_decode(const GridApex& g, int p, int q,
                                                                int cell)
{
    auto choose = [](int a, int b) {
        if (b < 0 || b > a)
            return 0LL;
        long long r = 1;
        for (int i = 0; i < b; ++i)
            r = r * (a - i) / (i + 1);
        return r;
    };
    int c = cell;
    for (size_t y = 0; y < g.dims.size(); ++y) {
        auto [n, m] = g.dims[y];
        if (p <= n && q <= m) {
            int cnt = int(choose(n + 1, p + 1) * choose(m + 1, q + 1));
            if (c < cnt) {
                int nv = int(choose(m + 1, q + 1));
                int cx = c / nv, cy = c % nv;
                return {int(y), verts_of_subset_rank(n, p, cx), verts_of_subset_rank(m, q, cy)};
            }
            c -= cnt;
        }
    }
    fail(Err::InvalidInput, "grid cell out of range");
}

int block_offset(const AlgMorphism& outer, const AlgMorphism& inner, int target, int upto)
{
    // sum of inner-fiber sizes over outer-fiber elements before `upto`
    int off = 0;
    for (int w : outer.fibers[target]) {
        if (w == upto)
            return off;
        off += int(inner.fibers[w].size());
    }
    fail(Err::InvalidInput, "element not in expected fiber");
}

int collapse_pos(const AlgMorphism& outer, const AlgMorphism& inner, int target, int upto_count)
{
    int off = 0;
    for (int t = 0; t < upto_count; ++t)
        off += int(inner.fibers[outer.fibers[target][t]].size());
    return off;
}

}  // namespace

BMap map_a(const SquareTriple& tr, const GridApex& from, const GridApex& to)
{
    std::vector<std::vector<std::vector<Ref2>>> img(from.obj->pbound + 1);
    for (int p = 0; p <= from.obj->pbound; ++p) {
        img[p].resize(from.obj->qbound + 1);
        for (int q = 0; q <= from.obj->qbound; ++q)
            for (int c = 0; c < from.obj->ncells(p, q); ++c) {
                auto [yp, vh, vv] = grid_decode(from, p, q, c);
                int z = tr.g.bottom.map[tr.v11.map[yp]];
                int hoff = block_offset(tr.g.bottom, tr.h02, z, tr.v11.map[yp]);
                int voff = block_offset(tr.g.right, tr.v20, z, tr.h11.map[yp]);
                std::vector<int> fh, fv;
                for (int t : vh)
                    fh.push_back(hoff + t);
                for (int t : vv)
                    fv.push_back(voff + t);
                img[p][q].push_back(to.simplex(z, fh, fv));
            }
    }
    return make_bmap(from.obj, to.obj, std::move(img));
}

BMap map_b(const SquareTriple& tr, const GridApex& from, const GridApex& to)
{
    std::vector<std::vector<std::vector<Ref2>>> img(from.obj->pbound + 1);
    for (int p = 0; p <= from.obj->pbound; ++p) {
        img[p].resize(from.obj->qbound + 1);
        for (int q = 0; q <= from.obj->qbound; ++q)
            for (int c = 0; c < from.obj->ncells(p, q); ++c) {
                auto [z, vh, vv] = grid_decode(from, p, q, c);
                std::vector<int> fh, fv;
                for (int t : vh)
                    fh.push_back(collapse_pos(tr.g.bottom, tr.h02, z, t));
                for (int t : vv)
                    fv.push_back(collapse_pos(tr.g.right, tr.v20, z, t));
                img[p][q].push_back(to.simplex(z, fh, fv));
            }
    }
    return make_bmap(from.obj, to.obj, std::move(img));
}

/* ---------------- Unstr simplices ---------------- */

void FinPtChain::validate() const
{
    require(!sizes.empty() && maps.size() + 1 == sizes.size(), Err::InvalidInput,
            "pointed chain shape");
    for (size_t i = 0; i < maps.size(); ++i) {
        require(int(maps[i].size()) == sizes[i], Err::InvalidInput, "pointed map arity");
        for (int v : maps[i])
            require(v >= -1 && v < sizes[i + 1], Err::InvalidInput, "pointed map range");
    }
}

int FinPtChain::preimage_mask(int b, int mask_at_b) const
{
    int out = 0;
    for (int s = 0; s < sizes[0]; ++s) {
        int cur = s;
        for (int i = 0; i < b && cur >= 0; ++i)
            cur = maps[i][cur];
        if (cur >= 0 && (mask_at_b & (1 << cur)))
            out |= 1 << s;
    }
    return out;
}

FinPtChain FinPtChain::constant(int size, int k)
{
    FinPtChain f;
    f.sizes.assign(k + 1, size);
    std::vector<int> id(size);
    for (int s = 0; s < size; ++s)
        id[s] = s;
    f.maps.assign(k, id);
    return f;
}

BialgFunctor pushforward(const BialgFunctor& th, const std::vector<int>& fmap, int target_size,
                         const std::vector<int>& psi_step)
{
    int n_new = int(psi_step.size()) - 1;
    BialgFunctor out(target_size, n_new);
    alg::PyrNC pyr_old(th.pyr.n);
    alg::PyrNCFunctor psi = alg::pyrnc_functor(out.pyr, pyr_old, psi_step);
    int nmask = 1 << target_size;
    int nobj = int(out.pyr.objects.size());
    auto pre = [&](int mask) {
        int m = 0;
        for (int s = 0; s < int(fmap.size()); ++s)
            if (fmap[s] >= 0 && (mask & (1 << fmap[s])))
                m |= 1 << s;
        return m;
    };
    out.val.assign(nmask, std::vector<int>(nobj, 0));
    out.edge.assign(nmask, {});
    out.incl.assign(nmask, std::vector<std::vector<AlgMorphism>>(target_size));
    for (int mask = 0; mask < nmask; ++mask)
        for (int x = 0; x < nobj; ++x)
            out.val[mask][x] = th.val[pre(mask)][psi.on_obj(x)];
    for (int mask = 0; mask < nmask; ++mask) {
        for (int e = 0; e < int(out.pyr.edges.size()); ++e) {
            auto path = psi.on_edge(e);
            if (path.empty())
                out.edge[mask].push_back(
                    AlgMorphism::identity(out.val[mask][out.pyr.edges[e].src]));
            else
                out.edge[mask].push_back(th.on_path(pre(mask), path));
        }
        for (int s = 0; s < target_size; ++s) {
            if (mask & (1 << s))
                continue;
            for (int x = 0; x < nobj; ++x)
                out.incl[mask][s].push_back(
                    th.incl_path(pre(mask), pre(mask | (1 << s)), psi.on_obj(x)));
        }
    }
    return out;
}

void UnstrBialgSimplex::validate() const
{
    f.validate();
    phi.validate();
    require(f.k() == phi.k(), Err::ShapeMismatch, "pointed and simplex chains differ in length");
    require(int(theta.size()) == f.k() + 1 && int(gamma.size()) == f.k(), Err::InvalidInput,
            "vertex data count mismatch");
    for (int i = 0; i <= f.k(); ++i) {
        require(theta[i].S == f.sizes[i] && theta[i].pyr.n == phi.dims[i], Err::ShapeMismatch,
                "vertex functor shape mismatch");
    }
    for (int i = 0; i < f.k(); ++i) {
        BialgFunctor push = pushforward(theta[i], f.maps[i], f.sizes[i + 1], phi.steps[i]);
        const BialgFunctor& next = theta[i + 1];
        int nmask = 1 << next.S;
        for (int mask = 0; mask < nmask; ++mask)
            for (int x = 0; x < int(next.pyr.objects.size()); ++x) {
                auto it = gamma[i].find({mask, x});
                require(it != gamma[i].end(), Err::InvalidInput, "gamma component missing");
                const AlgMorphism& gm = it->second;
                gm.validate();
                require(gm.is_bijection() && gm.src == push.val[mask][x] &&
                            gm.dst == next.val[mask][x],
                        Err::InvalidInput, "gamma component is not an isomorphism");
            }
        // naturality on pyramid edges and inclusions
        for (int mask = 0; mask < nmask; ++mask) {
            for (int e = 0; e < int(next.pyr.edges.size()); ++e) {
                const auto& ed = next.pyr.edges[e];
                AlgMorphism a = compose_alg(gamma[i].at({mask, ed.src}), next.edge[mask][e]);
                AlgMorphism b = compose_alg(push.edge[mask][e], gamma[i].at({mask, ed.dst}));
                require(a == b, Err::InvalidInput, "gamma not natural on an edge");
            }
            for (int s = 0; s < next.S; ++s) {
                if (mask & (1 << s))
                    continue;
                for (int x = 0; x < int(next.pyr.objects.size()); ++x) {
                    AlgMorphism a =
                        compose_alg(gamma[i].at({mask, x}), next.incl[mask][s][x]);
                    AlgMorphism b = compose_alg(push.incl[mask][s][x],
                                                gamma[i].at({mask | (1 << s), x}));
                    require(a == b, Err::InvalidInput, "gamma not natural on an inclusion");
                }
            }
        }
    }
}

NatIso UnstrBialgSimplex::composite_gamma(int u, int v) const
{
    require(0 <= u && u <= v && v <= f.k(), Err::InvalidInput, "gamma range");
    // iso: (f_{u..v}, phi_{v..u})_* theta_u => theta_v
    NatIso iso;
    const BialgFunctor& tv = theta[v];
    for (int mask = 0; mask < (1 << tv.S); ++mask)
        for (int x = 0; x < int(tv.pyr.objects.size()); ++x) {
            if (u == v) {
                iso[{mask, x}] = AlgMorphism::identity(tv.val[mask][x]);
                continue;
            }
            // pull back through the chain step by step
            AlgMorphism m = AlgMorphism::identity(0);
            // transport object/mask down to u, composing gammas upward
            // iso_{u,v} = gamma_{v-1} ∘ push(iso_{u,v-1})
            // compute recursively on components
            std::function<AlgMorphism(int, int, int)> comp = [&](int vv, int mask2,
                                                                 int x2) -> AlgMorphism {
                if (vv == u)
                    return AlgMorphism::identity(theta[u].val[mask2][x2]);
                // push the (u,vv-1) iso forward, then apply gamma_{vv-1}
                int pm = 0;
                for (int s = 0; s < f.sizes[vv - 1]; ++s)
                    if (f.maps[vv - 1][s] >= 0 && (mask2 & (1 << f.maps[vv - 1][s])))
                        pm |= 1 << s;
                alg::PyrNC pyr_new(phi.dims[vv]);
                alg::PyrNC pyr_old(phi.dims[vv - 1]);
                alg::PyrNCFunctor psi = alg::pyrnc_functor(pyr_new, pyr_old, phi.steps[vv - 1]);
                AlgMorphism inner = comp(vv - 1, pm, psi.on_obj(x2));
                return compose_alg(inner, gamma[vv - 1].at({mask2, x2}));
            };
            m = comp(v, mask, x);
            iso[{mask, x}] = m;
        }
    return iso;
}

UnstrBialgSimplex simplex_from_theta0(const FinPtChain& f, const tw::DeltaOpSimplex& phi,
                                      const BialgFunctor& theta0)
{
    UnstrBialgSimplex u;
    u.f = f;
    u.phi = phi;
    u.theta.push_back(theta0);
    for (int i = 0; i < f.k(); ++i)
        u.theta.push_back(
            pushforward(u.theta[i], f.maps[i], f.sizes[i + 1], phi.steps[i]));
    for (int i = 0; i < f.k(); ++i) {
        NatIso id;
        const BialgFunctor& t = u.theta[i + 1];
        for (int mask = 0; mask < (1 << t.S); ++mask)
            for (int x = 0; x < int(t.pyr.objects.size()); ++x)
                id[{mask, x}] = AlgMorphism::identity(t.val[mask][x]);
        u.gamma.push_back(std::move(id));
    }
    return u;
}

UnstrBialgSimplex restrict_simplex(const UnstrBialgSimplex& u, const std::vector<int>& gamma)
{
    UnstrBialgSimplex out;
    out.phi = tw::simplex_restrict(u.phi, gamma);
    for (int b : gamma)
        out.f.sizes.push_back(u.f.sizes[b]);
    for (size_t t = 1; t < gamma.size(); ++t) {
        std::vector<int> m(u.f.sizes[gamma[t - 1]]);
        for (int s = 0; s < int(m.size()); ++s) {
            int cur = s;
            for (int i = gamma[t - 1]; i < gamma[t] && cur >= 0; ++i)
                cur = u.f.maps[i][cur];
            m[s] = cur;
        }
        out.f.maps.push_back(std::move(m));
    }
    for (int b : gamma)
        out.theta.push_back(u.theta[b]);
    for (size_t t = 1; t < gamma.size(); ++t) {
        NatIso iso = u.composite_gamma(gamma[t - 1], gamma[t]);
        out.gamma.push_back(std::move(iso));
    }
    return out;
}

/* ---------------- master diagram ---------------- */

MasterDiagram::MasterDiagram(std::shared_ptr<const tw::GrothData> g, const BialgFunctor* th0,
                             int mask)
    : g_(std::move(g)), th0_(th0), mask_(mask)
{
}

AlgMorphism MasterDiagram::theta_path(int a0, int c0, int a1, int c1) const
{
    // [a0;c0] -> [a1;c0] -> [a1;c1] in the vertex-0 pyramid
    std::vector<int> path;
    for (int x = a0; x < a1; ++x)
        path.push_back(th0_->pyr.edge_id(x, c0, false));
    for (int y = c0; y > c1; --y)
        path.push_back(th0_->pyr.edge_id(a1, y, true));
    if (path.empty())
        return AlgMorphism::identity(th0_->val[mask_][th0_->pyr.obj_id(a0, c0)]);
    return th0_->on_path(mask_, path);
}

AlgSquare MasterDiagram::transported_square(int o_small, int o_big) const
{
    auto [i, j, b] = g_->o_elems[o_small];
    auto [i2, j2, b2] = g_->o_elems[o_big];
    int A = g_->phi.phi(b, 0, i), C = g_->phi.phi(b, 0, j);
    int A2 = g_->phi.phi(b2, 0, i2), C2 = g_->phi.phi(b2, 0, j2);
    AlgSquare sq;
    sq.top = theta_path(A, C, A2, C);
    sq.left = theta_path(A, C, A, C2);
    sq.right = theta_path(A2, C, A2, C2);
    sq.bottom = theta_path(A, C2, A2, C2);
    require(is_pseudo_pullback(sq), Err::InvalidInput,
            "transported square is not a pseudo-pullback");
    return sq;
}

const GridApex& MasterDiagram::apex(int pyro_interval)
{
    auto it = apexes_.find(pyro_interval);
    if (it != apexes_.end())
        return it->second;
    auto [u, v] = g_->pyrOmega.elems[pyro_interval];
    GridApex ga = square_apex(transported_square(u, v));
    return apexes_.emplace(pyro_interval, std::move(ga)).first->second;
}

SquareTriple MasterDiagram::triple(int o1, int o2, int o3) const
{
    auto [i1, j1, b1] = g_->o_elems[o1];
    auto [i2, j2, b2] = g_->o_elems[o2];
    auto [i3, j3, b3] = g_->o_elems[o3];
    int A1 = g_->phi.phi(b1, 0, i1), C1 = g_->phi.phi(b1, 0, j1);
    int A2 = g_->phi.phi(b2, 0, i2), C2 = g_->phi.phi(b2, 0, j2);
    int A3 = g_->phi.phi(b3, 0, i3), C3 = g_->phi.phi(b3, 0, j3);
    SquareTriple tr;
    tr.f = transported_square(o1, o2);
    tr.g = transported_square(o2, o3);
    tr.t = transported_square(o1, o3);
    tr.h11 = theta_path(A2, C2, A3, C2);
    tr.v11 = theta_path(A2, C2, A2, C3);
    tr.h02 = theta_path(A1, C3, A2, C3);
    tr.v20 = theta_path(A3, C1, A3, C2);
    return tr;
}

BMap MasterDiagram::map_into(int sub_interval, int big_interval)
{
    auto key = std::make_pair(sub_interval, big_interval);
    auto it = maps_.find(key);
    if (it != maps_.end())
        return it->second;
    auto [rho, rho2] = g_->pyrOmega.elems[sub_interval];
    auto [om, om2] = g_->pyrOmega.elems[big_interval];
    require(g_->Omega.le(om, rho) && g_->Omega.le(rho, rho2) && g_->Omega.le(rho2, om2),
            Err::InvalidInput, "not nested intervals");
    int mid = g_->pyrOmega.id(rho, om2);
    // extend right: apex[rho;rho2] -> apex[rho;om2], then left into [om;om2]
    SquareTriple t1 = triple(rho, rho2, om2);
    BMap right = map_a(t1, apex(sub_interval), apex(mid));
    SquareTriple t2 = triple(om, rho, om2);
    BMap left = map_b(t2, apex(mid), apex(big_interval));
    BMap out = compose(left, right);
    maps_.emplace(key, out);
    return out;
}

/* ---------------- beta ---------------- */

namespace {

struct RegionColim {
    BSetP obj;
    std::vector<int> region;  // pyrOmega interval ids, ascending
    std::vector<BMap> legs;
    std::vector<std::vector<std::vector<std::pair<int, int>>>> origin;
};

RegionColim region_colimit(MasterDiagram& md, const tw::GrothData& g, const tw::Bits& bits)
{
    RegionColim rc;
    for (int t = 0; t < int(g.pyrOmega.elems.size()); ++t)
        if (bits.get(t))
            rc.region.push_back(t);
    Diagram diag;
    for (int t : rc.region)
        diag.objects.push_back(md.apex(t).obj);
    for (int a = 0; a < int(rc.region.size()); ++a)
        for (int b = 0; b < int(rc.region.size()); ++b) {
            if (a == b)
                continue;
            // domain morphism region[a] -> region[b] gives map apex(b) -> apex(a)
            if (g.pyrOmega.poset.le(rc.region[a], rc.region[b]))
                diag.arrows.push_back({b, a, md.map_into(rc.region[b], rc.region[a])});
        }
    Colimit cl = colim(diag);
    rc.obj = cl.obj;
    rc.legs = std::move(cl.legs);
    rc.origin = std::move(cl.origin);
    return rc;
}

}  // namespace

span::CellFunctor beta_simplex(const UnstrBialgSimplex& u)
{
    u.validate();
    auto g = std::make_shared<tw::GrothData>(tw::groth_posets(u.phi));
    tw::ConeFunctor cone = tw::cone_functor(*g);
    int S = u.f.sizes[0];

    span::CellFunctor part;
    part.g = g;
    part.S = S;
    part.partial = true;
    part.index_domain();

    std::map<std::pair<int, int>, RegionColim> colims;
    for (int s = 0; s < S; ++s) {
        MasterDiagram md(g, &u.theta[0], 1 << s);
        for (int I : g->wedge_list) {
            RegionColim rc = region_colimit(md, *g, cone.value_interval(I));
            part.val[{1 << s, I}] = rc.obj;
            colims[{1 << s, I}] = std::move(rc);
        }
        for (int I : g->wedge_list)
            for (int J : g->wedge_list) {
                if (I == J || !g->pyrM.poset.le(I, J))
                    continue;
                // map val(J) -> val(I), region(J) ⊆ region(I)
                const RegionColim& rj = colims[{1 << s, J}];
                const RegionColim& ri = colims[{1 << s, I}];
                const BSetP& src = rj.obj;
                std::vector<std::vector<std::vector<Ref2>>> img(src->pbound + 1);
                for (int p = 0; p <= src->pbound; ++p) {
                    img[p].resize(src->qbound + 1);
                    for (int q = 0; q <= src->qbound; ++q)
                        for (int c = 0; c < src->ncells(p, q); ++c) {
                            auto [piece, cell] = rj.origin[p][q][c];
                            int t = rj.region[piece];
                            int pi = int(std::lower_bound(ri.region.begin(), ri.region.end(),
                                                          t) -
                                         ri.region.begin());
                            require(pi < int(ri.region.size()) && ri.region[pi] == t,
                                    Err::InvalidInput, "region inclusion failure");
                            img[p][q].push_back(ri.legs[pi].img[p][q][cell]);
                        }
                }
                part.mor[{1 << s, I, 1 << s, J}] = make_bmap(src, ri.obj, std::move(img));
            }
    }
    return span::rke_cartesian(part);
}

span::CellFunctor beta_restrict(const span::CellFunctor& cell, const UnstrBialgSimplex& u,
                                const std::vector<int>& gamma)
{
    UnstrBialgSimplex sub = restrict_simplex(u, gamma);
    auto gs = std::make_shared<tw::GrothData>(tw::groth_posets(sub.phi));
    auto mmap = tw::reindex_m(*gs, *cell.g, gamma);
    span::CellFunctor out;
    out.g = gs;
    out.S = sub.f.sizes[0];
    out.partial = false;
    out.index_domain();
    auto big_elem = [&](int e) {
        auto [x, y] = gs->pyrM.elems[e];
        return cell.g->pyrM.id(mmap[x], mmap[y]);
    };
    auto big_mask = [&](int mask) { return u.f.preimage_mask(gamma[0], mask); };
    for (int m : out.masks)
        for (int e : out.elems)
            out.val[{m, e}] = cell.value(big_mask(m), big_elem(e));
    for (int m : out.masks)
        for (int e : out.elems)
            for (int m2 : out.masks)
                for (int e2 : out.elems) {
                    if ((m2 & m) != m2 || !gs->pyrM.poset.le(e, e2) || (m == m2 && e == e2))
                        continue;
                    int bm = big_mask(m), be = big_elem(e);
                    int bm2 = big_mask(m2), be2 = big_elem(e2);
                    // degenerate restrictions can collapse onto one object
                    out.mor[{m, e, m2, e2}] = (bm == bm2 && be == be2)
                                                  ? identity_map(cell.value(bm, be))
                                                  : cell.arrow(bm, be, bm2, be2);
                }
    return out;
}

Report check_beta_functorial(const UnstrBialgSimplex& u, const std::vector<int>& gamma)
{
    Report rep;
    span::CellFunctor full = beta_simplex(u);
    span::CellFunctor restricted = beta_restrict(full, u, gamma);
    span::CellFunctor direct = beta_simplex(restrict_simplex(u, gamma));
    if (!span::natiso_cells(restricted, direct))
        rep.fail("restriction of beta does not agree with beta of the restriction");
    return rep;
}

Report check_inert_equiv(const UnstrBialgSimplex& u)
{
    require(u.phi.k() == 1, Err::NotInert, "inert check expects a 1-simplex");
    require(tw::is_inert_step(u.phi.steps[0]), Err::NotInert, "step is not inert");
    Report rep = check_beta_functorial(u, {1});
    if (!rep.pass)
        rep.failures.back() = "inert restriction is not an equivalence";
    return rep;
}

/* ---------------- endpoint comparison cells ---------------- */

UnstrBialgSimplex embed_simplex(const EndpointSimplex& e)
{
    std::vector<alg::AlgChain> chains = e.chains;
    BialgFunctor theta0 = alg::embed_endpoints_bialg(chains);
    return simplex_from_theta0(FinPtChain::constant(e.S, e.phi.k()), e.phi, theta0);
}

span::CellFunctor endpoint_cell(const EndpointSimplex& e)
{
    auto g = std::make_shared<tw::GrothData>(tw::groth_posets(e.phi));
    span::CellFunctor out;
    out.g = g;
    out.S = e.S;
    out.partial = false;
    out.index_domain();

    // 1D projection of an M element: transport of the left coordinate
    auto proj = [&](int melem) {
        auto [a, b] = g->m_elems[melem];
        return e.phi.phi(b, 0, a);
    };

    struct Val {
        GridApex apex;
        int A, A2;  // projected interval
    };
    std::map<int, Val> vals;  // per pyrM elem (single chain, component offsets by s)

    auto fib = [&](const AlgChain& ch, int lo, int hi, int w) {
        return int(ch.composite(lo, hi).fibers[w].size());
    };

    for (int elem : out.elems) {
        auto [x, y] = g->pyrM.elems[elem];
        int A = proj(x), A2 = proj(y);
        std::vector<std::pair<int, int>> dims;
        for (int s = 0; s < e.S; ++s) {
            const AlgChain& ch = e.chains[s];
            int base = e.coalgebra ? A : A2;
            for (int w = 0; w < ch.sets[base]; ++w)
                dims.push_back(e.coalgebra ? std::make_pair(1, fib(ch, A, A2, w))
                                           : std::make_pair(fib(ch, A, A2, w), 1));
        }
        vals[elem] = Val{grid_coprod(dims), A, A2};
    }

    for (int m : out.masks)
        for (int elem : out.elems) {
            // restrict the full grid to the components of singletons in m
            const Val& v = vals[elem];
            std::vector<std::pair<int, int>> dims;
            for (int s = 0, comp = 0; s < e.S; ++s) {
                const AlgChain& ch = e.chains[s];
                int base = e.coalgebra ? v.A : v.A2;
                for (int w = 0; w < ch.sets[base]; ++w, ++comp)
                    if (m & (1 << s))
                        dims.push_back(v.apex.dims[comp]);
            }
            out.val[{m, elem}] = grid_coprod(dims).obj;
        }

    for (int m : out.masks)
        for (int elem : out.elems)
            for (int m2 : out.masks)
                for (int e2 : out.elems) {
                    if ((m2 & m) != m2 || !g->pyrM.poset.le(elem, e2) || (m == m2 && elem == e2))
                        continue;
                    // map val(m2,e2) -> val(m,elem); [A2_lo;A2_hi] ⊆ [A_lo;A_hi]
                    const Val& vsub = vals[e2];
                    const Val& vbig = vals[elem];
                    int Alo = vbig.A, Ahi = vbig.A2, Blo = vsub.A, Bhi = vsub.A2;
                    GridApex sub_m2 = grid_coprod([&] {
                        std::vector<std::pair<int, int>> dims;
                        for (int s = 0; s < e.S; ++s) {
                            if (!(m2 & (1 << s)))
                                continue;
                            const AlgChain& ch = e.chains[s];
                            int base = e.coalgebra ? Blo : Bhi;
                            for (int w = 0; w < ch.sets[base]; ++w)
                                dims.push_back(e.coalgebra
                                                   ? std::make_pair(1, fib(ch, Blo, Bhi, w))
                                                   : std::make_pair(fib(ch, Blo, Bhi, w), 1));
                        }
                        return dims;
                    }());
                    GridApex big_m = grid_coprod([&] {
                        std::vector<std::pair<int, int>> dims;
                        for (int s = 0; s < e.S; ++s) {
                            if (!(m & (1 << s)))
                                continue;
                            const AlgChain& ch = e.chains[s];
                            int base = e.coalgebra ? Alo : Ahi;
                            for (int w = 0; w < ch.sets[base]; ++w)
                                dims.push_back(e.coalgebra
                                                   ? std::make_pair(1, fib(ch, Alo, Ahi, w))
                                                   : std::make_pair(fib(ch, Alo, Ahi, w), 1));
                        }
                        return dims;
                    }());
                    const BSetP& src = out.val[{m2, e2}];
                    std::vector<std::vector<std::vector<Ref2>>> img(src->pbound + 1);
                    // decode source component -> (s, w'), map vertices
                    std::vector<std::pair<int, int>> comp_src;  // (s, w')
                    for (int s = 0; s < e.S; ++s) {
                        if (!(m2 & (1 << s)))
                            continue;
                        const AlgChain& ch = e.chains[s];
                        int base = e.coalgebra ? Blo : Bhi;
                        for (int w = 0; w < ch.sets[base]; ++w)
                            comp_src.push_back({s, w});
                    }
                    for (int p = 0; p <= src->pbound; ++p) {
                        img[p].resize(src->qbound + 1);
                        for (int q = 0; q <= src->qbound; ++q)
                            for (int c = 0; c < src->ncells(p, q); ++c) {
                                auto [comp, vh, vv] = grid_decode(sub_m2, p, q, c);
                                auto [s, wp] = comp_src[comp];
                                const AlgChain& ch = e.chains[s];
                                // target component and vertex transforms
                                int w, tcomp;
                                std::vector<int> fh = vh, fv = vv;
                                if (!e.coalgebra) {
                                    // t_{Bhi->Ahi}(w') with block offsets
                                    w = ch.composite(Bhi, Ahi).map[wp];
                                    AlgMorphism outer = ch.composite(Bhi, Ahi);
                                    AlgMorphism mid = ch.composite(Blo, Bhi);
                                    AlgMorphism inner = ch.composite(Alo, Blo);
                                    // offset of w' block inside fib(Alo->Ahi, w)
                                    int off = 0;
                                    for (int t : outer.fibers[w]) {
                                        if (t == wp)
                                            break;
                                        off += int(compose_alg(inner, mid).fibers[t].size());
                                    }
                                    fh.clear();
                                    for (int t : vh) {
                                        int posn = off;
                                        for (int k2 = 0; k2 < t; ++k2)
                                            posn += int(
                                                inner.fibers[mid.fibers[wp][k2]].size());
                                        fh.push_back(posn);
                                    }
                                    tcomp = 0;
                                    for (int s2 = 0; s2 < s; ++s2)
                                        if (m & (1 << s2))
                                            tcomp += e.chains[s2].sets[Ahi];
                                    tcomp += w;
                                } else {
                                    w = ch.composite(Alo, Blo).map[wp];
                                    AlgMorphism outer = ch.composite(Alo, Blo);
                                    AlgMorphism mid = ch.composite(Blo, Bhi);
                                    AlgMorphism inner = ch.composite(Bhi, Ahi);
                                    int off = 0;
                                    for (int t : outer.fibers[w]) {
                                        if (t == wp)
                                            break;
                                        off += int(compose_alg(inner, mid).fibers[t].size());
                                    }
                                    fv.clear();
                                    for (int t : vv) {
                                        int posn = off;
                                        for (int k2 = 0; k2 < t; ++k2)
                                            posn += int(
                                                inner.fibers[mid.fibers[wp][k2]].size());
                                        fv.push_back(posn);
                                    }
                                    tcomp = 0;
                                    for (int s2 = 0; s2 < s; ++s2)
                                        if (m & (1 << s2))
                                            tcomp += e.chains[s2].sets[Alo];
                                    tcomp += w;
                                }
                                img[p][q].push_back(big_m.simplex(tcomp, fh, fv));
                            }
                    }
                    out.mor[{m, elem, m2, e2}] =
                        make_bmap(src, out.val[{m, elem}], std::move(img));
                }
    return out;
}

Report check_alpha_beta_compat(const EndpointSimplex& e)
{
    Report rep;
    span::CellFunctor beta = beta_simplex(embed_simplex(e));
    span::CellFunctor cmp = endpoint_cell(e);
    if (!span::natiso_cells(beta, cmp))
        rep.fail(std::string("beta of the embedded ") + (e.coalgebra ? "coalgebra" : "algebra") +
                 " chain does not match the suspended comparison cell");
    return rep;
}

}  // namespace bihall::lax
