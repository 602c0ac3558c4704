#ifndef BIHALL_SPANENGINE_HPP
#define BIHALL_SPANENGINE_HPP

#include <map>
#include <memory>

#include "bihall/simpcore.hpp"
#include "bihall/twistposet.hpp"

namespace bihall::span {

using simp::BMap;
using simp::BSetP;

/* Span in the opposite of bisimplicial sets, stored as a cospan. */
struct SpanMor {
    BSetP left, apex, right;
    BMap lleg, rleg;
    void validate() const;
};

SpanMor identity_span(const BSetP& x);
/* Composition by pushout over the shared boundary; the boundary match is
 * found with find_iso. */
SpanMor compose_span(const SpanMor& s, const SpanMor& t);

bool span_iso(const SpanMor& a, const SpanMor& b);  // compatible with both feet

/* ------------------------------------------------------------------ */

/* Functor Cart(S)^op x Pyr(M_phi) -> (Fin_{Δ²})^op (or its restriction to
 * Sing^op x Wedge). Arrows are stored in the concrete direction: for a domain
 * morphism (U,I) -> (V,I') the data is a map val(V,I') -> val(U,I). */
struct CellFunctor {
    std::shared_ptr<const tw::GrothData> g;
    int S = 1;
    bool partial = false;

    std::vector<int> masks;  // domain masks (all subsets, or singletons)
    std::vector<int> elems;  // pyrM element ids (all, or the wedge)

    std::map<std::pair<int, int>, BSetP> val;
    /* key: (mask_small, elem_bigger_interval) -> (mask_big, elem_smaller_interval)
     * i.e. map val(V,I') -> val(U,I) for V ⊆ U and I <= I' in pyrM */
    std::map<std::tuple<int, int, int, int>, BMap> mor;

    const BSetP& value(int mask, int elem) const;
    const BMap& arrow(int from_mask, int from_elem, int to_mask, int to_elem) const;
    bool has_object(int mask, int elem) const;

    void index_domain();  // fill masks/elems lists from S, g, partial
};

Report check_functorial(const CellFunctor& c);

CellFunctor restrict_to_partial(const CellFunctor& c);

/* Pointwise right Kan extension from Sing^op x Wedge to Cart^op x Pyr(M):
 * in the opposite category these are finite colimits of bisimplicial sets. */
CellFunctor rke_cartesian(const CellFunctor& partial);

/* cartesian (agrees with the extension of its own restriction, naturally)
 * and vertically constant (pyr(V)-morphisms go to isomorphisms) */
Report validate_cell(const CellFunctor& c);

/* natural isomorphism search along a spanning tree of the domain */
bool natiso_cells(const CellFunctor& a, const CellFunctor& b);

}  // namespace bihall::span

#endif
