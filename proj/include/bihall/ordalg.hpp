#ifndef BIHALL_ORDALG_HPP
#define BIHALL_ORDALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "bihall/common.hpp"

namespace bihall::alg {

/* Morphism of Alg: a function on {0..src-1} -> {0..dst-1} together with a
 * total order on every fiber. */
struct AlgMorphism {
    int src = 0, dst = 0;
    std::vector<int> map;
    std::vector<std::vector<int>> fibers;  // fibers[y] in order

    static AlgMorphism identity(int n);
    static AlgMorphism from_map(int src, int dst, std::vector<int> map);  // ambient order on fibers

    void validate() const;
    int fiber_pos(int x) const;  // position of x in the fiber over map[x]
    bool is_bijection() const;

    friend bool operator==(const AlgMorphism& a, const AlgMorphism& b)
    {
        return a.src == b.src && a.dst == b.dst && a.map == b.map && a.fibers == b.fibers;
    }
    friend bool operator<(const AlgMorphism& a, const AlgMorphism& b);
};

/* Diagrammatic composition: target(f) = source(g). The fiber of g∘f over z is
 * ordered by the g-fiber order of y, then within each y by the f-fiber order. */
AlgMorphism compose_alg(const AlgMorphism& f, const AlgMorphism& g);
AlgMorphism alg_coprod(const AlgMorphism& a, const AlgMorphism& b);

/*        top
 *   W ---------> Z
 *   |left        |right        (possibly non-commuting in Alg)
 *   X ---------> Y
 *       bottom
 */
struct AlgSquare {
    AlgMorphism top, left, right, bottom;
    void validate_shape() const;
};

bool is_pseudo_pullback(const AlgSquare& sq);

/* The pseudo-pullback of p: X -> Y and q: Z -> Y: bottom = p, right = q,
 * apex the set pullback {(x,z)} in lex order, projections carrying the unique
 * fiber orders making the square a pseudo-pullback. */
AlgSquare pseudo_pullback(const AlgMorphism& p, const AlgMorphism& q);

/* ------------------------------------------------------------------ */

/* Free category on the reflexive graph with vertices the subintervals [a;b]
 * of [n] and edges [a;b] -> [a+1;b], [a;b] -> [a;b-1]. */
struct PyrNC {
    struct Edge {
        int src, dst;
        bool drop_right;  // false: left endpoint up (algebra direction)
    };

    int n = 0;
    std::vector<std::pair<int, int>> objects;  // intervals [a;b], a <= b
    std::vector<Edge> edges;

    explicit PyrNC(int n);
    int obj_id(int a, int b) const;
    int edge_id(int a, int b, bool drop_right) const;
    /* all edge paths src -> dst (free category, finite since edges shrink) */
    std::vector<std::vector<int>> paths(int src, int dst) const;
};

/* Induced functor Pyr^nc(φ) for monotone φ:[n]->[m]: [a;b] -> [φa;φb] on
 * objects, generators to the stepwise paths. */
struct PyrNCFunctor {
    const PyrNC* src;
    const PyrNC* dst;
    std::vector<int> phi;
    int on_obj(int obj) const;
    std::vector<int> on_edge(int e) const;           // path in dst
    std::vector<int> on_path(const std::vector<int>& p) const;
};
PyrNCFunctor pyrnc_functor(const PyrNC& src, const PyrNC& dst, std::vector<int> phi);

/* ------------------------------------------------------------------ */

/* Functor Cart(S) x Pyr^nc(n) -> Alg presented by values, generator images and
 * one-element inclusion images. Masks are subsets of {0..S-1}. */
struct BialgFunctor {
    int S = 1;
    PyrNC pyr;
    std::vector<std::vector<int>> val;                       // val[mask][obj]
    std::vector<std::vector<AlgMorphism>> edge;              // edge[mask][edge_id]
    std::vector<std::vector<std::vector<AlgMorphism>>> incl; // incl[mask][s][obj], s not in mask

    explicit BialgFunctor(int S, int n) : S(S), pyr(n) {}

    AlgMorphism on_path(int mask, const std::vector<int>& path) const;
    AlgMorphism incl_path(int mask_from, int mask_to, int obj) const;  // mask_from ⊆ mask_to
};

/* The canonical cocartesian extension of per-singleton functors
 * theta[s]: Pyr^nc(n) -> Alg (values + generator images). */
struct SpineChain {
    std::vector<int> sets;                  // |X_0|..|X_n|
    std::vector<AlgMorphism> to_left;       // span leg Y_i -> X_i      (drop_right)
    std::vector<AlgMorphism> to_right;      // span leg Y_i -> X_{i+1}  (left up)
    std::vector<int> apexes;                // |Y_0|..|Y_{n-1}|
    void validate() const;
};

/* Pseudo-cartesian functor Pyr^nc(n) -> Alg generated by a chain of spans:
 * higher intervals are iterated pseudo-pullbacks (canonical, lex labels). */
struct SingleAlgFunctor {
    PyrNC pyr;
    std::vector<int> val;                 // per object
    std::vector<AlgMorphism> edge;        // per generating edge
    AlgMorphism on_path(const std::vector<int>& path) const;
};
SingleAlgFunctor functor_from_spine(const SpineChain& chain);

BialgFunctor bialg_from_singletons(const std::vector<SingleAlgFunctor>& theta);

using bihall::Report;

Report validate_bialg_functor(const BialgFunctor& f);

/* Chain of n composable Alg morphisms; for the coalgebra side the maps run
 * X_n -> ... -> X_0 (a functor on [n]^op). */
struct AlgChain {
    std::vector<int> sets;
    std::vector<AlgMorphism> maps;  // maps[i]: X_i -> X_{i+1} (algebra) or X_{i+1} -> X_i (coalgebra)
    bool coalgebra = false;
    void validate() const;
    AlgMorphism composite(int i, int j) const;  // along i..j
};

/* ι_a / ι_c: precompose the chain with the endpoint projection. */
SingleAlgFunctor embed_endpoints(const AlgChain& chain);
BialgFunctor embed_endpoints_bialg(const std::vector<AlgChain>& per_singleton);

}  // namespace bihall::alg

#endif
