#ifndef BIHALL_TWISTPOSET_HPP
#define BIHALL_TWISTPOSET_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bihall/common.hpp"

namespace bihall::tw {

/* small bitset over a fixed universe */
struct Bits {
    int n = 0;
    std::vector<uint64_t> w;

    Bits() = default;
    explicit Bits(int n) : n(n), w((n + 63) / 64, 0) {}
    void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
    bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    int count() const;
    bool subset_of(const Bits& o) const;
    Bits operator|(const Bits& o) const;
    Bits operator&(const Bits& o) const;
    friend bool operator==(const Bits& a, const Bits& b) { return a.n == b.n && a.w == b.w; }
};

struct FinPoset {
    int n = 0;
    std::vector<std::vector<char>> leq;
    std::vector<std::string> names;

    FinPoset() = default;
    explicit FinPoset(int n)
        : n(n), leq(n, std::vector<char>(n, 0)), names(n)
    {
        for (int i = 0; i < n; ++i)
            leq[i][i] = 1;
    }

    bool le(int i, int j) const { return leq[i][j]; }
    void validate() const;
    std::vector<std::pair<int, int>> covers() const;
    std::vector<std::pair<int, int>> relations() const;  // all i <= j
};

FinPoset chain_poset(int n);                              // [n]
FinPoset product(const FinPoset& a, const FinPoset& b);   // index i*b.n + j
bool poset_iso(const FinPoset& a, const FinPoset& b);

/* Twisted arrow poset of P: nonempty intervals [x;y], x <= y, with
 * [x;y] <= [x';y'] iff x <= x' and y' <= y. */
struct IntervalPoset {
    FinPoset poset;
    std::vector<std::pair<int, int>> elems;
    std::vector<std::vector<int>> id_table;  // id_table[x][y] or -1

    int id(int x, int y) const;
};
IntervalPoset pyr(const FinPoset& p);

/* Free completion: up-closed subsets, a morphism U -> V being V ⊆ U.
 * Materialized only for small posets. */
struct Completion {
    FinPoset poset;                        // one element per up-set
    std::vector<std::vector<char>> upsets; // element membership
    std::vector<int> embed;                // q -> index of the principal up-set
};
Completion free_completion(const FinPoset& q, int max_size = 1 << 14);

std::vector<char> up_closure(const FinPoset& p, const std::vector<char>& s);

/* ------------------------------------------------------------------ */

/* A k-simplex of N(Delta^op): dims n_0..n_k and monotone steps
 * [n_b] -> [n_{b-1}]; phi(b,b') composes steps downward (b >= b'). */
struct DeltaOpSimplex {
    std::vector<int> dims;
    std::vector<std::vector<int>> steps;  // steps[b-1]: [n_b] -> [n_{b-1}], b = 1..k

    int k() const { return int(dims.size()) - 1; }
    int phi(int b, int bp, int a) const;
    void validate() const;

    static DeltaOpSimplex constant(int n, int k);
    static DeltaOpSimplex length0(int n);
    /* 1-simplex from a single monotone map [n1] -> [n0] */
    static DeltaOpSimplex arrow(int n0, int n1, std::vector<int> step);
};

/* restriction along gamma: [m] -> [k] */
DeltaOpSimplex simplex_restrict(const DeltaOpSimplex& phi, const std::vector<int>& gamma);

std::vector<std::vector<int>> all_monotone(int m, int n);  // [m] -> [n]
std::vector<DeltaOpSimplex> enumerate_simplices(int kmax, int nmax);
bool is_inert_step(const std::vector<int>& step);

/* ------------------------------------------------------------------ */

/* The Grothendieck-construction posets of a simplex, with Wedge, the vertical
 * subcategory and nu: V -> Omega. */
struct GrothData {
    DeltaOpSimplex phi;

    FinPoset M;
    std::vector<std::pair<int, int>> m_elems;        // (a, b)
    std::vector<std::vector<int>> m_id;              // [b][a]

    FinPoset Omega;
    std::vector<std::array<int, 3>> o_elems;         // (i, j, b)
    int o_id(int i, int j, int b) const;

    IntervalPoset pyrM;
    IntervalPoset pyrOmega;

    std::vector<char> wedge;                         // over pyrM elements
    std::vector<int> wedge_list;

    std::vector<std::vector<char>> vle;              // vertical relation on M
    std::vector<int> nu;                             // M elem -> Omega elem

    int mid(int a, int b) const { return m_id[b][a]; }
};

GrothData groth_posets(const DeltaOpSimplex& phi);

/* M(gamma): M_{phi·gamma} -> M_phi and Omega(gamma), as element maps. */
std::vector<int> reindex_m(const GrothData& sub, const GrothData& full,
                           const std::vector<int>& gamma);
std::vector<int> reindex_omega(const GrothData& sub, const GrothData& full,
                               const std::vector<int>& gamma);
/* natural transformation eta: phi' => phi (componentwise vertex maps) */
std::vector<int> reindex_m_nat(const GrothData& sub, const GrothData& full,
                               const std::vector<std::vector<int>>& eta);
std::vector<int> reindex_omega_nat(const GrothData& sub, const GrothData& full,
                                   const std::vector<std::vector<int>>& eta);

/* ------------------------------------------------------------------ */

/* Cone functor: to each interval of M_phi the up-set of Pyr(Omega_phi)
 * spanned by its kappa-bar region; spans are inclusions of up-sets. */
struct ConeFunctor {
    const GrothData* g;

    std::vector<char> kbar(int mx, int my) const;    // over Omega elements
    Bits value(int mx, int my) const;                // up-set of pyrOmega
    Bits value_interval(int pyrm_elem) const;
};

ConeFunctor cone_functor(const GrothData& g);

/* normality, oplax coherence, ConeNat and ConeVert for one simplex */
Report check_cone(const GrothData& g);

/* exhaustive sweep used by the acceptance suite */
Report check_cone_family(int kmax, int nmax);

}  // namespace bihall::tw

#endif
