#ifndef BIHALL_PROTOEXACT_HPP
#define BIHALL_PROTOEXACT_HPP

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bihall/common.hpp"
#include "bihall/twistposet.hpp"

namespace bihall::pex {

/* Finite category with a materialized composition table. */
struct FinCat {
    int nobj = 0;
    std::vector<int> msrc, mdst;
    std::vector<int> ident;                          // identity morphism per object
    std::vector<std::vector<std::vector<int>>> hom;  // hom[a][b]
    std::vector<std::vector<int>> comp;              // comp[g][f] = g∘f or -1
    std::vector<std::string> obj_names, mor_names;

    int nmor() const { return int(msrc.size()); }
    int compose(int g, int f) const;
    bool is_iso(int m) const;
    int inverse(int m) const;  // -1 if not iso
    void validate() const;
    std::vector<int> isos(int a, int b) const;
};

/* Finite category with null objects and admissible mono/epi classes. */
struct ProtoExactCat {
    FinCat cat;
    std::vector<char> null_obj;
    std::vector<char> in_m, in_e;
    std::string name;

    void validate_shape() const;
};

bool is_pullback(const FinCat& c, int top, int left, int right, int bottom);
bool is_pushout(const FinCat& c, int top, int left, int right, int bottom);

/* memoizing wrapper used by the enumerator */
struct BicartCache {
    const FinCat* cat;
    std::map<std::array<int, 4>, bool> pull, push;
    bool bicartesian(int top, int left, int right, int bottom);
};

Report check_proto_exact(const ProtoExactCat& a);

ProtoExactCat arr_fixture(const tw::FinPoset& poset);
ProtoExactCat vect_fixture(int q, int dmax);
/* direct sum on the vect fixture; fails when the sum leaves the category */
int vect_dsum_obj(const ProtoExactCat& a, int x, int y);
int vect_dsum_mor(const ProtoExactCat& a, int f, int g);

/* decode helpers for the vect fixture */
int vect_dim(const ProtoExactCat& a, int obj);
std::vector<std::vector<int>> vect_matrix(const ProtoExactCat& a, int mor);

/* ------------------------------------------------------------------ */

/* Diagram shapes: a finite poset with flags on covering relations, null
 * positions, and a list of squares whose images must be bicartesian. */
struct DiagramShape {
    tw::FinPoset poset;
    std::vector<std::pair<int, int>> covers;
    std::vector<char> cover_m, cover_e;     // per cover
    std::vector<char> null_pos;             // per position
    std::vector<std::array<int, 4>> bicart; // (a, b, c, d): a<=b<=d, a<=c<=d covers
    std::string name;

    int cover_id(int x, int y) const;
};

DiagramShape staircase_shape(int n);                       // Arr([n])
DiagramShape grid_shape(int n, int k);                     // Arr([n]x[k])
DiagramShape cross_shape();                                // two SES through the centre
DiagramShape frame_shape();                                // boundary of the 3x3 grid
DiagramShape grid33_shape();                               // full 3x3 grid of SES

/* positions of the distinguished boundary objects in the green shapes */
struct GreenPositions {
    int in1, in2;    // the pair mapped to S1 x S1 on the input side
    int out1, out2;  // the output side
};
GreenPositions cross_positions();
GreenPositions frame_positions();
GreenPositions grid33_positions();
/* restriction tables grid -> cross and grid -> frame */
std::vector<int> grid_to_cross();
std::vector<int> grid_to_frame();

/* ------------------------------------------------------------------ */

struct ExactDiagram {
    std::vector<int> ob;    // per shape position
    std::vector<int> mor;   // per shape cover
    friend bool operator<(const ExactDiagram& a, const ExactDiagram& b)
    {
        return std::tie(a.ob, a.mor) < std::tie(b.ob, b.mor);
    }
    friend bool operator==(const ExactDiagram& a, const ExactDiagram& b)
    {
        return a.ob == b.ob && a.mor == b.mor;
    }
};

struct EnumOpts {
    long long max_count = 2000000;
    std::vector<std::vector<char>> allowed;  // [position][a-object], empty = all
};

std::vector<ExactDiagram> exact_diagrams(const DiagramShape& shape, const ProtoExactCat& a,
                                         const EnumOpts& opts = {});

/* value of a diagram on an arbitrary relation x <= y */
int diagram_map(const DiagramShape& shape, const ProtoExactCat& a, const ExactDiagram& d, int x,
                int y);

/* ------------------------------------------------------------------ */

/* Abstract finite groupoid; morphisms are opaque int vectors. */
using Mor = std::vector<int>;

struct Groupoid {
    virtual ~Groupoid() = default;
    virtual int size() const = 0;
    virtual std::vector<Mor> hom(int x, int y) const = 0;
    virtual Mor gcompose(int x, int y, int z, const Mor& g, const Mor& f) const = 0;
    virtual Mor gidentity(int x) const = 0;
    virtual Mor ginverse(int x, int y, const Mor& f) const = 0;
};
using GroupoidP = std::shared_ptr<const Groupoid>;

/* groupoid of exact diagrams and their natural isomorphisms */
class DiagGroupoid : public Groupoid {
  public:
    DiagGroupoid(std::shared_ptr<const DiagramShape> shape,
                 std::shared_ptr<const ProtoExactCat> a, std::vector<ExactDiagram> objs);
    int size() const override { return int(objs_.size()); }
    std::vector<Mor> hom(int x, int y) const override;
    Mor gcompose(int x, int y, int z, const Mor& g, const Mor& f) const override;
    Mor gidentity(int x) const override;
    Mor ginverse(int x, int y, const Mor& f) const override;

    const ExactDiagram& object(int x) const { return objs_[x]; }
    int find_object(const ExactDiagram& d) const;
    const DiagramShape& shape() const { return *shape_; }
    const ProtoExactCat& target() const { return *a_; }

  private:
    std::shared_ptr<const DiagramShape> shape_;
    std::shared_ptr<const ProtoExactCat> a_;
    std::vector<ExactDiagram> objs_;
    std::map<ExactDiagram, int> index_;
};

class DiscreteGroupoid : public Groupoid {
  public:
    explicit DiscreteGroupoid(int n) : n_(n) {}
    int size() const override { return n_; }
    std::vector<Mor> hom(int x, int y) const override
    {
        return x == y ? std::vector<Mor>{Mor{}} : std::vector<Mor>{};
    }
    Mor gcompose(int, int, int, const Mor&, const Mor&) const override { return {}; }
    Mor gidentity(int) const override { return {}; }
    Mor ginverse(int, int, const Mor&) const override { return {}; }

  private:
    int n_;
};

/* core of a proto-exact category */
class CoreGroupoid : public Groupoid {
  public:
    explicit CoreGroupoid(std::shared_ptr<const ProtoExactCat> a) : a_(std::move(a)) {}
    int size() const override { return a_->cat.nobj; }
    std::vector<Mor> hom(int x, int y) const override;
    Mor gcompose(int x, int y, int z, const Mor& g, const Mor& f) const override;
    Mor gidentity(int x) const override;
    Mor ginverse(int x, int y, const Mor& f) const override;

  private:
    std::shared_ptr<const ProtoExactCat> a_;
};

/* ------------------------------------------------------------------ */

/* S-construction levels: exact diagrams on staircase/grid shapes. */
struct SBudget {
    long long max_count = 2000000;
};

std::shared_ptr<DiagGroupoid> s_groupoid(std::shared_ptr<const ProtoExactCat> a, int n,
                                         const SBudget& budget = {});

/* The category Fun^ex(shape, A) with all natural transformations, made
 * proto-exact pointwise; the backbone of the iterated S-construction. */
struct FunctorCatData {
    std::shared_ptr<const ProtoExactCat> cat;  // the functor category
    std::shared_ptr<const DiagramShape> shape;
    std::shared_ptr<const ProtoExactCat> base;
    std::vector<ExactDiagram> objs;
    std::vector<std::vector<int>> mor_comp;  // per morphism, component per position

    int find_obj(const ExactDiagram& d) const;
};
std::shared_ptr<FunctorCatData> functor_category(const DiagramShape& shape,
                                                 std::shared_ptr<const ProtoExactCat> a,
                                                 const EnumOpts& opts = {});

enum class S2Mode { Iterated, Monoidal };
std::shared_ptr<DiagGroupoid> s2_groupoid(std::shared_ptr<const ProtoExactCat> a, int n, int k,
                                          S2Mode mode, const SBudget& budget = {});
/* the same level together with its inner functor category */
struct S2Level {
    std::shared_ptr<DiagGroupoid> gpd;
    std::shared_ptr<FunctorCatData> inner;
};
S2Level s2_level(std::shared_ptr<const ProtoExactCat> a, int n, int k,
                 const SBudget& budget = {});

/* restriction along a poset map of shapes (index by positions and covers) */
ExactDiagram restrict_diagram(const DiagramShape& sub, const DiagramShape& big,
                              const std::vector<int>& pos_map, const ProtoExactCat& a,
                              const ExactDiagram& d);

/* green comparison data: the three moduli and the two restriction functors */
struct GreenDiagrams {
    std::shared_ptr<DiagGroupoid> plus, frame, grid;
    std::vector<int> grid_to_plus;   // object maps
    std::vector<int> grid_to_frame;
};
GreenDiagrams green_diagrams(std::shared_ptr<const ProtoExactCat> a, const SBudget& budget = {});

}  // namespace bihall::pex

#endif
