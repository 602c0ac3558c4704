#ifndef BIHALL_LAXHALL_HPP
#define BIHALL_LAXHALL_HPP

#include <map>
#include <memory>

#include "bihall/ordalg.hpp"
#include "bihall/simpcore.hpp"
#include "bihall/spanengine.hpp"
#include "bihall/twistposet.hpp"

namespace bihall::lax {

/* ---------------- coproducts of standard (bi)simplices ---------------- */

struct GridApex {
    std::vector<std::pair<int, int>> dims;  // (n_y, m_y) per component
    simp::BSetP obj;
    simp::Ref2 simplex(int comp, const std::vector<int>& f, const std::vector<int>& g) const;
};
GridApex grid_coprod(const std::vector<std::pair<int, int>>& dims);

struct FanApex {
    std::vector<int> dims;  // n_y per component
    simp::SSetP obj;
    simp::Ref simplex(int comp, const std::vector<int>& f) const;
};
FanApex fan_coprod(const std::vector<int>& dims);

/* ---------------- the lax algebra alpha on the 1-simplex ---------------- */

struct Span1 {
    simp::SSetP left, apex, right;
    simp::SMap lleg, rleg;
};

/* X·Δ¹ -> ⊔_y Δ^{|p⁻¹(y)|} <- Y·Δ¹ with spine and long edges */
Span1 alpha_span(const alg::AlgMorphism& p);

span::SpanMor susp_span_h(const Span1& s);
span::SpanMor susp_span_v(const Span1& s);

struct AlphaLax {
    span::SpanMor composite;  // α(p2) ∘ α(p1), horizontally suspended
    span::SpanMor direct;     // α(p2 p1)
    simp::BMap comparison;    // composite.apex -> direct.apex
};
AlphaLax alpha_lax(const alg::AlgMorphism& p1, const alg::AlgMorphism& p2);

/* ---------------- bispans of pseudo-pullback squares ---------------- */

span::SpanMor square_to_bispan(const alg::AlgSquare& sq);

/* apex of a square plus the pasting maps between composable squares */
GridApex square_apex(const alg::AlgSquare& sq);

struct SquareTriple {
    alg::AlgSquare f;   // square for (w <= w')
    alg::AlgSquare g;   // square for (w' <= w'')
    alg::AlgSquare t;   // square for (w <= w'')
    alg::AlgMorphism h11, v11;  // O(1,1) -> O(2,1), O(1,1) -> O(1,2)
    alg::AlgMorphism h02, v20;  // O(0,2) -> O(1,2), O(2,0) -> O(2,1)
};
simp::BMap map_a(const SquareTriple& tr, const GridApex& from, const GridApex& to);
simp::BMap map_b(const SquareTriple& tr, const GridApex& from, const GridApex& to);

/* ---------------- Unstr simplices of the bialgebra shape ---------------- */

struct FinPtChain {
    std::vector<int> sizes;               // |f(i)|
    std::vector<std::vector<int>> maps;   // maps[i]: f(i) -> f(i+1), -1 for basepoint
    int k() const { return int(sizes.size()) - 1; }
    void validate() const;
    int preimage_mask(int b, int mask_at_b) const;  // f_{0,b}^{-1} on subsets
    static FinPtChain constant(int size, int k);
};

/* natural isomorphism between bialg functors of the same shape */
using NatIso = std::map<std::pair<int, int>, alg::AlgMorphism>;  // (mask, pyrnc obj)

struct UnstrBialgSimplex {
    FinPtChain f;
    tw::DeltaOpSimplex phi;
    std::vector<alg::BialgFunctor> theta;
    std::vector<NatIso> gamma;  // gamma[i]: (f_i,phi_i)_* theta_i => theta_{i+1}

    void validate() const;
    /* composite identification (f,phi)_* theta_{gamma(u)} => theta_v */
    NatIso composite_gamma(int u, int v) const;
};

alg::BialgFunctor pushforward(const alg::BialgFunctor& th, const std::vector<int>& fmap,
                              int target_size, const std::vector<int>& psi_step);

/* simplex generated from vertex-0 data with identity identifications */
UnstrBialgSimplex simplex_from_theta0(const FinPtChain& f, const tw::DeltaOpSimplex& phi,
                                      const alg::BialgFunctor& theta0);

UnstrBialgSimplex restrict_simplex(const UnstrBialgSimplex& u, const std::vector<int>& gamma);

/* ---------------- the master diagram and beta ---------------- */

/* Master diagram of one singleton: the functor on Pyr(Omega) valued in
 * bisimplicial sets, evaluated through the vertex-0 transport. */
class MasterDiagram {
  public:
    MasterDiagram(std::shared_ptr<const tw::GrothData> g, const alg::BialgFunctor* th0, int mask);

    const GridApex& apex(int pyro_interval);
    /* map from the value of a subinterval into the value of a bigger one */
    simp::BMap map_into(int sub_interval, int big_interval);
    alg::AlgSquare transported_square(int o_small, int o_big) const;

  private:
    std::shared_ptr<const tw::GrothData> g_;
    const alg::BialgFunctor* th0_;
    int mask_;
    std::map<int, GridApex> apexes_;
    std::map<std::pair<int, int>, simp::BMap> maps_;

    alg::AlgMorphism theta_path(int a0, int c0, int a1, int c1) const;  // [a0,c0] -> [a1,c1]
    SquareTriple triple(int o1, int o2, int o3) const;
};

/* the full pipeline: master diagram -> cone-region colimits -> restriction
 * to Sing x Wedge -> right Kan extension */
span::CellFunctor beta_simplex(const UnstrBialgSimplex& u);

/* restriction of a beta cell along gamma: [m] -> [k] */
span::CellFunctor beta_restrict(const span::CellFunctor& cell, const UnstrBialgSimplex& u,
                                const std::vector<int>& gamma);

Report check_beta_functorial(const UnstrBialgSimplex& u, const std::vector<int>& gamma);

/* Prop-style check for a 1-simplex over an inert step: restriction to the
 * far vertex agrees with the direct value of that vertex's data */
Report check_inert_equiv(const UnstrBialgSimplex& u);

/* ---------------- compatibility with the algebra/coalgebra sides -------- */

/* Un(Alg)/Un(Coalg) simplex over a constant pointed chain: one chain of
 * composable morphisms per singleton */
struct EndpointSimplex {
    int S = 1;
    tw::DeltaOpSimplex phi;
    std::vector<alg::AlgChain> chains;  // one per singleton, over [phi(0)]
    bool coalgebra = false;
};

UnstrBialgSimplex embed_simplex(const EndpointSimplex& e);
span::CellFunctor endpoint_cell(const EndpointSimplex& e);  // α(θ)^h or χ(θ)^v

Report check_alpha_beta_compat(const EndpointSimplex& e);

}  // namespace bihall::lax

#endif
