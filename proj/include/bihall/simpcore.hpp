#ifndef BIHALL_SIMPCORE_HPP
#define BIHALL_SIMPCORE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bihall/common.hpp"

namespace bihall::simp {

/* Degeneracy word in Eilenberg-Zilber normal form: strictly decreasing indices.
 * A word [w1 > w2 > ... > wr] stands for the operator s_{w1} ∘ s_{w2} ∘ ... ∘ s_{wr}. */
using Word = std::vector<int>;

Word word_push_s(Word w, int i);          // normal form of s_i ∘ s_w
bool word_is_normal(const Word& w, int base_dim);

/* Simplex of a simplicial set: nondegenerate cell plus degeneracy word. */
struct Ref {
    int cdim = 0;
    int cell = 0;
    Word word;

    int dim() const { return cdim + int(word.size()); }
    friend bool operator==(const Ref& a, const Ref& b)
    {
        return a.cdim == b.cdim && a.cell == b.cell && a.word == b.word;
    }
    friend bool operator<(const Ref& a, const Ref& b)
    {
        return std::tie(a.cdim, a.cell, a.word) < std::tie(b.cdim, b.cell, b.word);
    }
};

Ref ref_s(Ref r, int i);

/* Level-wise finite simplicial set presented by nondegenerate cells.
 * faces[d][c] lists the d+1 face simplices of cell c in dimension d. */
struct SSet {
    int dim_bound = 0;
    std::vector<std::vector<std::vector<Ref>>> faces;

    explicit SSet(int bound = 0) : dim_bound(bound), faces(size_t(bound) + 1) {}

    int top_dim() const;
    int ncells(int d) const { return d >= int(faces.size()) ? 0 : int(faces[d].size()); }
    size_t total_cells() const;
    int add_cell(int d, std::vector<Ref> fs);

    Ref face(const Ref& r, int i) const;
    Ref apply_ops(Ref base, const Word& w) const;  // s-word on top of a simplex
    std::vector<Ref> simplices(int d) const;       // all simplices, canonical order
    size_t count_at(int d) const { return simplices(d).size(); }

    void validate() const;  // simplicial identities + normal forms
};

using SSetP = std::shared_ptr<const SSet>;

SSetP standard_simplex(int n);
/* n disjoint copies of X; the k-th inclusion is copies_leg. */
SSetP disjoint_copies(const SSetP& x, int n);

struct SMap {
    SSetP src, dst;
    std::vector<std::vector<Ref>> img;  // img[d][c]

    Ref apply(const Ref& r) const;
    void validate() const;  // commutes with faces
    friend bool operator==(const SMap& a, const SMap& b) { return a.img == b.img; }
};

SMap identity_map(const SSetP& x);
SMap compose(const SMap& g, const SMap& f);
SMap copies_leg(const SSetP& x, const SSetP& copies, int n, int k);
/* Map X -> Z from per-cell images; validates commutation. */
SMap make_smap(const SSetP& x, const SSetP& z, std::vector<std::vector<Ref>> img);

/* ------------------------------------------------------------------ */

/* Simplex of a bisimplicial set: cell plus horizontal/vertical words. */
struct Ref2 {
    int cp = 0, cq = 0;
    int cell = 0;
    Word wh, wv;

    int p() const { return cp + int(wh.size()); }
    int q() const { return cq + int(wv.size()); }
    friend bool operator==(const Ref2& a, const Ref2& b)
    {
        return a.cp == b.cp && a.cq == b.cq && a.cell == b.cell && a.wh == b.wh && a.wv == b.wv;
    }
    friend bool operator<(const Ref2& a, const Ref2& b)
    {
        return std::tie(a.cp, a.cq, a.cell, a.wh, a.wv) < std::tie(b.cp, b.cq, b.cell, b.wh, b.wv);
    }
};

Ref2 ref2_sh(Ref2 r, int i);
Ref2 ref2_sv(Ref2 r, int i);

/* Level-wise finite bisimplicial set. */
struct BSet {
    int pbound = 0, qbound = 0;

    struct Cell {
        std::vector<Ref2> hfaces;  // cp+1 refs at (cp-1, cq), empty when cp == 0
        std::vector<Ref2> vfaces;  // cq+1 refs at (cp, cq-1)
    };
    std::vector<std::vector<std::vector<Cell>>> cells;  // cells[p][q]

    BSet(int pb = 0, int qb = 0)
        : pbound(pb), qbound(qb),
          cells(size_t(pb) + 1, std::vector<std::vector<Cell>>(size_t(qb) + 1))
    {
    }

    int ncells(int p, int q) const
    {
        if (p < 0 || q < 0 || p > pbound || q > qbound)
            return 0;
        return int(cells[p][q].size());
    }
    size_t total_cells() const;
    int add_cell(int p, int q, std::vector<Ref2> hf, std::vector<Ref2> vf);

    Ref2 hface(const Ref2& r, int i) const;
    Ref2 vface(const Ref2& r, int i) const;
    Ref2 apply_ops(Ref2 base, const Word& wh, const Word& wv) const;
    std::vector<Ref2> simplices(int p, int q) const;
    size_t count_at(int p, int q) const { return simplices(p, q).size(); }

    void validate() const;
};

using BSetP = std::shared_ptr<const BSet>;

struct BMap {
    BSetP src, dst;
    std::vector<std::vector<std::vector<Ref2>>> img;  // img[p][q][c]

    Ref2 apply(const Ref2& r) const;
    void validate() const;
    bool is_iso() const;  // bijective on nondegenerate cells level-wise
    friend bool operator==(const BMap& a, const BMap& b) { return a.img == b.img; }
};

BMap identity_map(const BSetP& x);
BMap compose(const BMap& g, const BMap& f);
BMap make_bmap(const BSetP& x, const BSetP& z, std::vector<std::vector<std::vector<Ref2>>> img);

/* External product X ⊠ Y; cells in bidegree (p,q) are pairs of cells. */
BSetP box_product(const SSetP& x, const SSetP& y);
int box_cell(const BSetP& xy, const SSetP& x, const SSetP& y, int p, int cx, int q, int cy);

BSetP standard_bisimplex(int n, int k);  // Δ^{n,k}
/* Simplex of Δ^{n,k} with vertex maps f:[p]->[n], g:[q]->[k] (monotone). */
Ref2 bisimplex_of(int n, int k, const std::vector<int>& f, const std::vector<int>& g);

BSetP disjoint_copies(const BSetP& x, int n);
BMap copies_leg(const BSetP& x, const BSetP& copies, int n, int k);

/* Horizontal / vertical suspension: X ↦ X ⊠ Δ^1 and Δ^1 ⊠ X. */
BSetP susp_h(const SSetP& x);
BSetP susp_v(const SSetP& x);
BMap susp_h(const SMap& f);
BMap susp_v(const SMap& f);

/* ------------------------------------------------------------------ */

/* Finite colimit of bisimplicial sets: bidegree-wise quotient of the disjoint
 * union, re-normalized to a nondegenerate presentation. Arrows must be closed
 * under composition where composites exist (checked). */
struct Diagram {
    std::vector<BSetP> objects;
    struct Arrow {
        int src, dst;
        BMap map;
    };
    std::vector<Arrow> arrows;
};

struct Colimit {
    BSetP obj;
    std::vector<BMap> legs;
    /* origin[p][q][cell] = (piece, cell): a preimage of each nondegenerate cell */
    std::vector<std::vector<std::vector<std::pair<int, int>>>> origin;
};

Colimit colim(const Diagram& diag);
Colimit pushout(const BSetP& a, const BSetP& b, const BSetP& c, const BMap& ab, const BMap& ac);
Colimit coproduct(const std::vector<BSetP>& pieces);

/* Same engine for plain simplicial sets, via the q-degenerate embedding. */
struct SDiagram {
    std::vector<SSetP> objects;
    struct Arrow {
        int src, dst;
        SMap map;
    };
    std::vector<Arrow> arrows;
};
struct SColimit {
    SSetP obj;
    std::vector<SMap> legs;
};
SColimit colim(const SDiagram& diag);

/* ------------------------------------------------------------------ */

/* Deterministic isomorphism search: bijective on nondegenerate cells in every
 * bidegree, commuting with all faces; first match in canonical order wins. */
std::optional<BMap> find_iso(const BSetP& x, const BSetP& y);
std::optional<SMap> find_iso(const SSetP& x, const SSetP& y);

/* Enumerate isomorphisms x -> y extending the given partial cell assignment
 * (constraints as (p,q,cell_x,cell_y)); visitor returns true to stop. */
using IsoConstraint = std::tuple<int, int, int, int>;
bool for_each_iso(const BSetP& x, const BSetP& y, const std::vector<IsoConstraint>& pins,
                  const std::function<bool(const BMap&)>& visit);

}  // namespace bihall::simp

#endif
