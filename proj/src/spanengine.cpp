#include "bihall/spanengine.hpp"

#include <algorithm>
#include <functional>

namespace bihall::span {

using namespace simp;

void SpanMor::validate() const
{
    lleg.validate();
    rleg.validate();
    require(lleg.src == left && lleg.dst == apex && rleg.src == right && rleg.dst == apex,
            Err::InvalidInput, "span legs mistyped");
}

SpanMor identity_span(const BSetP& x)
{
    SpanMor s;
    s.left = s.right = s.apex = x;
    s.lleg = s.rleg = identity_map(x);
    return s;
}

SpanMor compose_span(const SpanMor& s, const SpanMor& t)
{
    auto iso = find_iso(s.right, t.left);
    require(iso.has_value(), Err::BoundaryMismatch, "span boundaries do not match");
    Colimit po = pushout(s.right, s.apex, t.apex, s.rleg, compose(t.lleg, *iso));
    SpanMor out;
    out.left = s.left;
    out.right = t.right;
    out.apex = po.obj;
    out.lleg = compose(po.legs[0], s.lleg);
    out.rleg = compose(po.legs[1], t.rleg);
    return out;
}

bool span_iso(const SpanMor& a, const SpanMor& b)
{
    if (!(a.left == b.left && a.right == b.right)) {
        if (!find_iso(a.left, b.left) || !find_iso(a.right, b.right))
            return false;
    }
    std::vector<IsoConstraint> pins;
    auto pin_leg = [&](const BMap& la, const BMap& lb) {
        const BSetP& f = la.src;
        for (int p = 0; p <= f->pbound; ++p)
            for (int q = 0; q <= f->qbound; ++q)
                for (int c = 0; c < f->ncells(p, q); ++c) {
                    const Ref2& ra = la.img[p][q][c];
                    const Ref2& rb = lb.img[p][q][c];
                    if (ra.wh != rb.wh || ra.wv != rb.wv || ra.cp != rb.cp || ra.cq != rb.cq)
                        return false;
                    pins.push_back({ra.cp, ra.cq, ra.cell, rb.cell});
                }
        return true;
    };
    if (!pin_leg(a.lleg, b.lleg) || !pin_leg(a.rleg, b.rleg))
        return false;
    bool found = false;
    for_each_iso(a.apex, b.apex, pins, [&](const BMap& m) {
        for (int p = 0; p <= a.left->pbound; ++p)
            for (int q = 0; q <= a.left->qbound; ++q)
                for (int c = 0; c < a.left->ncells(p, q); ++c)
                    if (!(m.apply(a.lleg.img[p][q][c]) == b.lleg.img[p][q][c]))
                        return false;
        for (int p = 0; p <= a.right->pbound; ++p)
            for (int q = 0; q <= a.right->qbound; ++q)
                for (int c = 0; c < a.right->ncells(p, q); ++c)
                    if (!(m.apply(a.rleg.img[p][q][c]) == b.rleg.img[p][q][c]))
                        return false;
        found = true;
        return true;
    });
    return found;
}

/* ---------------- cell functors ---------------- */

void CellFunctor::index_domain()
{
    masks.clear();
    elems.clear();
    if (partial) {
        for (int s = 0; s < S; ++s)
            masks.push_back(1 << s);
        elems = g->wedge_list;
    } else {
        for (int m = 0; m < (1 << S); ++m)
            masks.push_back(m);
        for (int t = 0; t < int(g->pyrM.elems.size()); ++t)
            elems.push_back(t);
    }
}

bool CellFunctor::has_object(int mask, int elem) const
{
    return val.count({mask, elem}) > 0;
}

const BSetP& CellFunctor::value(int mask, int elem) const
{
    auto it = val.find({mask, elem});
    require(it != val.end(), Err::InvalidInput, "cell functor has no such object");
    return it->second;
}

const BMap& CellFunctor::arrow(int from_mask, int from_elem, int to_mask, int to_elem) const
{
    auto it = mor.find({from_mask, from_elem, to_mask, to_elem});
    require(it != mor.end(), Err::InvalidInput, "cell functor has no such arrow");
    return it->second;
}

namespace {

bool dom_morphism(const CellFunctor& c, int um, int ue, int vm, int ve)
{
    // morphism (U,I) -> (V,J) in Cart^op x pyrM: V ⊆ U and I <= J
    return (vm & um) == vm && c.g->pyrM.poset.le(ue, ve);
}

}  // namespace

Report check_functorial(const CellFunctor& c)
{
    Report rep;
    for (int um : c.masks)
        for (int ue : c.elems) {
            c.value(um, ue)->validate();
            for (int vm : c.masks)
                for (int ve : c.elems) {
                    if (um == vm && ue == ve)
                        continue;
                    if (!dom_morphism(c, um, ue, vm, ve))
                        continue;
                    const BMap& m = c.arrow(um, ue, vm, ve);
                    if (!(m.src == c.value(vm, ve) && m.dst == c.value(um, ue))) {
                        rep.fail("arrow endpoints mismatch");
                        return rep;
                    }
                    m.validate();
                }
        }
    for (int um : c.masks)
        for (int ue : c.elems)
            for (int vm : c.masks)
                for (int ve : c.elems) {
                    if (!dom_morphism(c, um, ue, vm, ve) || (um == vm && ue == ve))
                        continue;
                    for (int wm : c.masks)
                        for (int we : c.elems) {
                            if (!dom_morphism(c, vm, ve, wm, we) || (vm == wm && ve == we))
                                continue;
                            BMap comp = compose(c.arrow(um, ue, vm, ve),
                                                c.arrow(vm, ve, wm, we));
                            if (!(comp == c.arrow(um, ue, wm, we))) {
                                rep.fail("composition fails at a triple");
                                return rep;
                            }
                        }
                }
    return rep;
}

CellFunctor restrict_to_partial(const CellFunctor& c)
{
    CellFunctor out;
    out.g = c.g;
    out.S = c.S;
    out.partial = true;
    out.index_domain();
    for (int m : out.masks)
        for (int e : out.elems) {
            out.val[{m, e}] = c.value(m, e);
            for (int m2 : out.masks)
                for (int e2 : out.elems)
                    if (dom_morphism(out, m, e, m2, e2) && !(m == m2 && e == e2))
                        out.mor[{m, e, m2, e2}] = c.arrow(m, e, m2, e2);
        }
    return out;
}

CellFunctor rke_cartesian(const CellFunctor& partial)
{
    require(partial.partial, Err::NonFunctorialInput, "rke expects a Sing x Wedge functor");
    Report fr = check_functorial(partial);
    require(fr.pass, Err::NonFunctorialInput,
            "rke input not functorial: " + (fr.failures.empty() ? "" : fr.failures.front()));

    const tw::GrothData& g = *partial.g;
    CellFunctor out;
    out.g = partial.g;
    out.S = partial.S;
    out.partial = false;
    out.index_domain();

    struct ObjData {
        std::vector<std::pair<int, int>> pieces;  // (s, wedge elem)
        std::vector<BMap> legs;
        std::vector<std::vector<std::vector<std::pair<int, int>>>> origin;
    };
    std::map<std::pair<int, int>, ObjData> data;

    for (int um : out.masks)
        for (int ue : out.elems) {
            std::vector<std::pair<int, int>> pieces;
            for (int s = 0; s < out.S; ++s) {
                if (!(um & (1 << s)))
                    continue;
                for (int w : g.wedge_list)
                    if (g.pyrM.poset.le(ue, w))
                        pieces.push_back({s, w});
            }
            ObjData od;
            od.pieces = pieces;
            if (pieces.empty()) {
                out.val[{um, ue}] = std::make_shared<BSet>(0, 0);
                data[{um, ue}] = std::move(od);
                continue;
            }
            if (g.wedge[ue] && (um & (um - 1)) == 0) {
                // singleton over a wedge object: the extension restricts back
                // to the input on the nose; the comma has (s,ue) terminal
                const BSetP& v = partial.value(um, ue);
                out.val[{um, ue}] = v;
                int self = -1;
                for (int i = 0; i < int(pieces.size()); ++i) {
                    auto [s, w] = pieces[i];
                    od.legs.push_back(w == ue ? identity_map(v)
                                              : partial.arrow(um, ue, 1 << s, w));
                    if (w == ue)
                        self = i;
                }
                require(self >= 0, Err::InvalidInput, "wedge object missing from its comma");
                od.origin.assign(v->pbound + 1, {});
                for (int p = 0; p <= v->pbound; ++p) {
                    od.origin[p].resize(v->qbound + 1);
                    for (int q = 0; q <= v->qbound; ++q)
                        for (int cc = 0; cc < v->ncells(p, q); ++cc)
                            od.origin[p][q].push_back({self, cc});
                }
                data[{um, ue}] = std::move(od);
                continue;
            }
            Diagram diag;
            for (auto [s, w] : pieces)
                diag.objects.push_back(partial.value(1 << s, w));
            for (int i = 0; i < int(pieces.size()); ++i)
                for (int j = 0; j < int(pieces.size()); ++j) {
                    if (i == j)
                        continue;
                    auto [si, wi] = pieces[i];
                    auto [sj, wj] = pieces[j];
                    // comma morphism (s,wi) -> (s,wj) gives map val(s,wj)->val(s,wi)
                    if (si == sj && g.pyrM.poset.le(wi, wj))
                        diag.arrows.push_back({j, i, partial.arrow(1 << si, wi, 1 << sj, wj)});
                }
            Colimit cl = colim(diag);
            out.val[{um, ue}] = cl.obj;
            od.legs = cl.legs;
            od.origin = cl.origin;
            data[{um, ue}] = std::move(od);
        }

    for (int um : out.masks)
        for (int ue : out.elems)
            for (int vm : out.masks)
                for (int ve : out.elems) {
                    if (!dom_morphism(out, um, ue, vm, ve) || (um == vm && ue == ve))
                        continue;
                    const ObjData& dv = data[{vm, ve}];
                    const ObjData& du = data[{um, ue}];
                    const BSetP& src = out.val[{vm, ve}];
                    const BSetP& dst = out.val[{um, ue}];
                    std::vector<std::vector<std::vector<Ref2>>> img(src->pbound + 1);
                    for (int p = 0; p <= src->pbound; ++p) {
                        img[p].resize(src->qbound + 1);
                        for (int q = 0; q <= src->qbound; ++q)
                            for (int cc = 0; cc < src->ncells(p, q); ++cc) {
                                auto [pi, cell] = dv.origin[p][q][cc];
                                auto piece = dv.pieces[pi];
                                int pj = int(std::find(du.pieces.begin(), du.pieces.end(),
                                                       piece) -
                                             du.pieces.begin());
                                require(pj < int(du.pieces.size()), Err::InvalidInput,
                                        "comma inclusion missing a piece");
                                img[p][q].push_back(du.legs[pj].img[p][q][cell]);
                            }
                    }
                    out.mor[{um, ue, vm, ve}] = make_bmap(src, dst, std::move(img));
                    (void)dst;
                }
    return out;
}

/* ---------------- natural isomorphism search ---------------- */

namespace {

struct Node {
    int mask, elem;
};

bool natiso_search(const CellFunctor& a, const CellFunctor& b)
{
    if (a.masks != b.masks || a.elems != b.elems)
        return false;
    std::vector<Node> nodes;
    for (int m : a.masks)
        for (int e : a.elems)
            nodes.push_back({m, e});
    int n = int(nodes.size());
    std::vector<BMap> eta(n);
    std::vector<char> assigned(n, 0);

    std::function<bool(int)> go = [&](int t) -> bool {
        if (t == n)
            return true;
        const Node& nd = nodes[t];
        const BSetP& va = a.value(nd.mask, nd.elem);
        const BSetP& vb = b.value(nd.mask, nd.elem);
        // pins from assigned u receiving a map from this node
        std::vector<IsoConstraint> pins;
        for (int u = 0; u < n; ++u) {
            if (!assigned[u])
                continue;
            const Node& nu = nodes[u];
            if (!dom_morphism(a, nd.mask, nd.elem, nu.mask, nu.elem) ||
                (nd.mask == nu.mask && nd.elem == nu.elem))
                continue;
            const BMap& fa = a.arrow(nd.mask, nd.elem, nu.mask, nu.elem);
            const BMap& fb = b.arrow(nd.mask, nd.elem, nu.mask, nu.elem);
            const BSetP& usrc = fa.src;
            bool bad = false;
            for (int p = 0; p <= usrc->pbound && !bad; ++p)
                for (int q = 0; q <= usrc->qbound && !bad; ++q)
                    for (int c = 0; c < usrc->ncells(p, q); ++c) {
                        Ref2 ia = fa.img[p][q][c];
                        Ref2 ib = fb.apply(eta[u].img[p][q][c]);
                        if (ia.wh != ib.wh || ia.wv != ib.wv || ia.cp != ib.cp ||
                            ia.cq != ib.cq) {
                            bad = true;
                            break;
                        }
                        pins.push_back({ia.cp, ia.cq, ia.cell, ib.cell});
                    }
            if (bad)
                return false;
        }
        bool ok = false;
        for_each_iso(va, vb, pins, [&](const BMap& iso) {
            for (int u = 0; u < n; ++u) {
                if (!assigned[u])
                    continue;
                const Node& nu = nodes[u];
                if (!dom_morphism(a, nu.mask, nu.elem, nd.mask, nd.elem) ||
                    (nd.mask == nu.mask && nd.elem == nu.elem))
                    continue;
                const BMap& ga = a.arrow(nu.mask, nu.elem, nd.mask, nd.elem);
                const BMap& gb = b.arrow(nu.mask, nu.elem, nd.mask, nd.elem);
                const BSetP& vsrc = ga.src;
                for (int p = 0; p <= vsrc->pbound; ++p)
                    for (int q = 0; q <= vsrc->qbound; ++q)
                        for (int c = 0; c < vsrc->ncells(p, q); ++c)
                            if (!(eta[u].apply(ga.img[p][q][c]) == gb.apply(iso.img[p][q][c])))
                                return false;
            }
            eta[t] = iso;
            assigned[t] = 1;
            if (go(t + 1)) {
                ok = true;
                return true;
            }
            assigned[t] = 0;
            return false;
        });
        return ok;
    };
    return go(0);
}

}  // namespace

bool natiso_cells(const CellFunctor& a, const CellFunctor& b)
{
    return natiso_search(a, b);
}

Report validate_cell(const CellFunctor& c)
{
    Report rep = check_functorial(c);
    if (!rep.pass)
        return rep;
    require(!c.partial, Err::InvalidInput, "validate_cell expects a full cell");

    CellFunctor re = rke_cartesian(restrict_to_partial(c));
    if (!natiso_cells(c, re))
        rep.fail("cell is not cartesian: no natural iso with the extension of its restriction");

    // vertically constant: morphisms of pyr(V) go to isomorphisms
    const tw::GrothData& g = *c.g;
    int npm = int(g.pyrM.elems.size());
    for (int i = 0; i < npm; ++i) {
        auto [x, y] = g.pyrM.elems[i];
        if (!g.vle[x][y])
            continue;
        for (int j = 0; j < npm; ++j) {
            auto [x2, y2] = g.pyrM.elems[j];
            if (!g.vle[x2][y2] || !(g.vle[x][x2] && g.vle[y2][y]))
                continue;
            if (i == j)
                continue;
            for (int m : c.masks)
                if (!c.arrow(m, i, m, j).is_iso()) {
                    rep.fail("vertical morphism not sent to an isomorphism (mask " +
                             std::to_string(m) + ", " + g.pyrM.poset.names[i] + " -> " +
                             g.pyrM.poset.names[j] + ")");
                    return rep;
                }
        }
    }
    return rep;
}

}  // namespace bihall::span
