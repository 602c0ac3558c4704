#include "bihall/simpcore.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bihall::simp {

/* ---------------- word calculus ---------------- */

Word word_push_s(Word w, int i)
{
    // s_i ∘ s_j = s_{j+1} ∘ s_i for i <= j: slide s_i to its slot.
    size_t t = 0;
    while (t < w.size() && i <= w[t]) {
        ++w[t];
        ++t;
    }
    w.insert(w.begin() + t, i);
    return w;
}

bool word_is_normal(const Word& w, int base_dim)
{
    int r = int(w.size());
    for (int t = 0; t < r; ++t) {
        if (t > 0 && w[t] >= w[t - 1])
            return false;
        if (w[t] < 0 || w[t] > base_dim + (r - 1 - t))
            return false;
    }
    return true;
}

Ref ref_s(Ref r, int i)
{
    r.word = word_push_s(std::move(r.word), i);
    return r;
}

Ref2 ref2_sh(Ref2 r, int i)
{
    r.wh = word_push_s(std::move(r.wh), i);
    return r;
}

Ref2 ref2_sv(Ref2 r, int i)
{
    r.wv = word_push_s(std::move(r.wv), i);
    return r;
}

/* ---------------- SSet ----------------
 * Face of a degenerate simplex uses d_i s_j = s_{j-1} d_i (i<j), = id (i=j,j+1),
 * = s_j d_{i-1} (i>j+1). */

int SSet::top_dim() const
{
    for (int d = int(faces.size()) - 1; d >= 0; --d)
        if (!faces[d].empty())
            return d;
    return 0;
}

size_t SSet::total_cells() const
{
    size_t n = 0;
    for (auto& lv : faces)
        n += lv.size();
    return n;
}

int SSet::add_cell(int d, std::vector<Ref> fs)
{
    require(d >= 0 && d <= dim_bound, Err::BoundExceeded,
            "cell dimension " + std::to_string(d) + " exceeds bound " + std::to_string(dim_bound));
    require(d == 0 ? fs.empty() : int(fs.size()) == d + 1, Err::InvalidInput, "bad face count");
    faces[d].push_back(std::move(fs));
    return int(faces[d].size()) - 1;
}

Ref SSet::face(const Ref& r, int i) const
{
    require(r.dim() >= 1 && i >= 0 && i <= r.dim(), Err::InvalidInput, "face index out of range");
    const Word& w = r.word;
    // walk the word; plain recursion on a copy
    std::function<Ref(size_t, int)> go = [&](size_t t, int ii) -> Ref {
        if (t == w.size())
            return faces[r.cdim][r.cell][ii];
        int j = w[t];
        if (ii == j || ii == j + 1) {
            Ref out{r.cdim, r.cell, Word(w.begin() + t + 1, w.end())};
            return out;
        }
        if (ii < j)
            return ref_s(go(t + 1, ii), j - 1);
        return ref_s(go(t + 1, ii - 1), j);
    };
    return go(0, i);
}

Ref SSet::apply_ops(Ref base, const Word& w) const
{
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        base = ref_s(std::move(base), *it);
    return base;
}

std::vector<Ref> SSet::simplices(int d) const
{
    std::vector<Ref> out;
    std::function<void(Ref&, int, int)> gen = [&](Ref& r, int t, int maxi) {
        int r0 = d - r.cdim;
        if (t == r0) {
            out.push_back(r);
            return;
        }
        // entry at position t (0-based from outermost) bounded by cdim + (r0-1-t)
        int hi = std::min(maxi, r.cdim + (r0 - 1 - t));
        for (int i = hi; i >= 0; --i) {
            r.word.push_back(0);
            // write positions outermost-first, keep strictly decreasing
            r.word[t] = i;
            gen(r, t + 1, i - 1);
            r.word.pop_back();
        }
    };
    for (int d0 = 0; d0 <= std::min(d, int(faces.size()) - 1); ++d0)
        for (int c = 0; c < ncells(d0); ++c) {
            Ref r{d0, c, {}};
            gen(r, 0, d - 1);
        }
    std::sort(out.begin(), out.end());
    return out;
}

void SSet::validate() const
{
    for (int d = 0; d < int(faces.size()); ++d)
        for (int c = 0; c < ncells(d); ++c) {
            const auto& fs = faces[d][c];
            require(d == 0 ? fs.empty() : int(fs.size()) == d + 1, Err::InvalidInput,
                    "face arity mismatch");
            for (const Ref& f : fs) {
                require(f.dim() == d - 1, Err::InvalidInput, "face dimension mismatch");
                require(f.cdim < int(faces.size()) && f.cell < ncells(f.cdim), Err::InvalidInput,
                        "dangling face reference");
                require(word_is_normal(f.word, f.cdim), Err::InvalidInput,
                        "face word not in normal form");
            }
            if (d >= 2) {
                Ref r{d, c, {}};
                for (int j = 0; j <= d; ++j)
                    for (int i = 0; i < j; ++i)
                        require(face(face(r, j), i) == face(face(r, i), j - 1), Err::InvalidInput,
                                "simplicial identity d_i d_j failed");
            }
        }
}

SSetP standard_simplex(int n)
{
    auto x = std::make_shared<SSet>(n);
    // cells of dim d: (d+1)-subsets of 0..n in lex order
    std::vector<std::vector<std::vector<int>>> verts(n + 1);
    std::vector<std::map<std::vector<int>, int>> index(n + 1);
    std::function<void(int, int, std::vector<int>&)> combos = [&](int d, int start,
                                                                  std::vector<int>& cur) {
        if (int(cur.size()) == d + 1) {
            index[d][cur] = int(verts[d].size());
            verts[d].push_back(cur);
            return;
        }
        for (int v = start; v <= n; ++v) {
            cur.push_back(v);
            combos(d, v + 1, cur);
            cur.pop_back();
        }
    };
    for (int d = 0; d <= n; ++d) {
        std::vector<int> cur;
        combos(d, 0, cur);
    }
    for (int d = 0; d <= n; ++d)
        for (auto& vs : verts[d]) {
            std::vector<Ref> fs;
            for (int i = 0; i <= d && d > 0; ++i) {
                std::vector<int> sub = vs;
                sub.erase(sub.begin() + i);
                fs.push_back(Ref{d - 1, index[d - 1][sub], {}});
            }
            x->add_cell(d, std::move(fs));
        }
    return x;
}

SSetP disjoint_copies(const SSetP& x, int n)
{
    auto out = std::make_shared<SSet>(x->dim_bound);
    for (int k = 0; k < n; ++k)
        for (int d = 0; d < int(x->faces.size()); ++d)
            for (int c = 0; c < x->ncells(d); ++c) {
                auto fs = x->faces[d][c];
                for (auto& f : fs)
                    f.cell += k * x->ncells(f.cdim);
                out->add_cell(d, std::move(fs));
            }
    // cells of copy k in dim d sit at offset k * x->ncells(d)
    return out;
}

SMap copies_leg(const SSetP& x, const SSetP& copies, int n, int k)
{
    require(k >= 0 && k < n, Err::InvalidInput, "copy index out of range");
    SMap m;
    m.src = x;
    m.dst = copies;
    m.img.resize(x->faces.size());
    for (int d = 0; d < int(x->faces.size()); ++d)
        for (int c = 0; c < x->ncells(d); ++c)
            m.img[d].push_back(Ref{d, c + k * x->ncells(d), {}});
    return m;
}

Ref SMap::apply(const Ref& r) const
{
    return dst->apply_ops(img[r.cdim][r.cell], r.word);
}

void SMap::validate() const
{
    require(img.size() >= src->faces.size(), Err::InvalidInput, "map image table too short");
    for (int d = 0; d < int(src->faces.size()); ++d)
        for (int c = 0; c < src->ncells(d); ++c) {
            require(img[d][c].dim() == d, Err::InvalidInput, "map not degree-preserving");
            for (int i = 0; i <= d && d > 0; ++i) {
                Ref lhs = apply(src->faces[d][c][i]);
                Ref rhs = dst->face(img[d][c], i);
                require(lhs == rhs, Err::InvalidInput, "map does not commute with faces");
            }
        }
}

SMap identity_map(const SSetP& x)
{
    SMap m;
    m.src = m.dst = x;
    m.img.resize(x->faces.size());
    for (int d = 0; d < int(x->faces.size()); ++d)
        for (int c = 0; c < x->ncells(d); ++c)
            m.img[d].push_back(Ref{d, c, {}});
    return m;
}

SMap compose(const SMap& g, const SMap& f)
{
    SMap m;
    m.src = f.src;
    m.dst = g.dst;
    m.img.resize(f.img.size());
    for (size_t d = 0; d < f.img.size(); ++d)
        for (auto& r : f.img[d])
            m.img[d].push_back(g.apply(r));
    return m;
}

SMap make_smap(const SSetP& x, const SSetP& z, std::vector<std::vector<Ref>> img)
{
    SMap m;
    m.src = x;
    m.dst = z;
    m.img = std::move(img);
    m.validate();
    return m;
}

/* ---------------- BSet ---------------- */

size_t BSet::total_cells() const
{
    size_t n = 0;
    for (auto& row : cells)
        for (auto& lv : row)
            n += lv.size();
    return n;
}

int BSet::add_cell(int p, int q, std::vector<Ref2> hf, std::vector<Ref2> vf)
{
    require(p >= 0 && q >= 0 && p <= pbound && q <= qbound, Err::BoundExceeded,
            "cell bidegree exceeds bound");
    require(p == 0 ? hf.empty() : int(hf.size()) == p + 1, Err::InvalidInput, "bad hface count");
    require(q == 0 ? vf.empty() : int(vf.size()) == q + 1, Err::InvalidInput, "bad vface count");
    cells[p][q].push_back(Cell{std::move(hf), std::move(vf)});
    return int(cells[p][q].size()) - 1;
}

Ref2 BSet::hface(const Ref2& r, int i) const
{
    require(r.p() >= 1 && i >= 0 && i <= r.p(), Err::InvalidInput, "hface index out of range");
    const Word& w = r.wh;
    std::function<Ref2(size_t, int)> go = [&](size_t t, int ii) -> Ref2 {
        if (t == w.size()) {
            Ref2 base = cells[r.cp][r.cq][r.cell].hfaces[ii];
            for (auto it = r.wv.rbegin(); it != r.wv.rend(); ++it)
                base = ref2_sv(std::move(base), *it);
            return base;
        }
        int j = w[t];
        if (ii == j || ii == j + 1)
            return Ref2{r.cp, r.cq, r.cell, Word(w.begin() + t + 1, w.end()), r.wv};
        if (ii < j)
            return ref2_sh(go(t + 1, ii), j - 1);
        return ref2_sh(go(t + 1, ii - 1), j);
    };
    return go(0, i);
}

Ref2 BSet::vface(const Ref2& r, int i) const
{
    require(r.q() >= 1 && i >= 0 && i <= r.q(), Err::InvalidInput, "vface index out of range");
    const Word& w = r.wv;
    std::function<Ref2(size_t, int)> go = [&](size_t t, int ii) -> Ref2 {
        if (t == w.size()) {
            Ref2 base = cells[r.cp][r.cq][r.cell].vfaces[ii];
            for (auto it = r.wh.rbegin(); it != r.wh.rend(); ++it)
                base = ref2_sh(std::move(base), *it);
            return base;
        }
        int j = w[t];
        if (ii == j || ii == j + 1)
            return Ref2{r.cp, r.cq, r.cell, r.wh, Word(w.begin() + t + 1, w.end())};
        if (ii < j)
            return ref2_sv(go(t + 1, ii), j - 1);
        return ref2_sv(go(t + 1, ii - 1), j);
    };
    return go(0, i);
}

Ref2 BSet::apply_ops(Ref2 base, const Word& wh, const Word& wv) const
{
    for (auto it = wv.rbegin(); it != wv.rend(); ++it)
        base = ref2_sv(std::move(base), *it);
    for (auto it = wh.rbegin(); it != wh.rend(); ++it)
        base = ref2_sh(std::move(base), *it);
    return base;
}

std::vector<Ref2> BSet::simplices(int p, int q) const
{
    std::vector<Ref2> out;
    std::function<void(Word&, int, int, int, int, const std::function<void(const Word&)>&)> gen =
        [&](Word& w, int t, int maxi, int len, int base, const std::function<void(const Word&)>& k) {
            if (t == len) {
                k(w);
                return;
            }
            int hi = std::min(maxi, base + (len - 1 - t));
            for (int i = hi; i >= 0; --i) {
                w.push_back(i);
                gen(w, t + 1, i - 1, len, base, k);
                w.pop_back();
            }
        };
    for (int p0 = 0; p0 <= std::min(p, pbound); ++p0)
        for (int q0 = 0; q0 <= std::min(q, qbound); ++q0)
            for (int c = 0; c < ncells(p0, q0); ++c) {
                Word wh;
                gen(wh, 0, p - 1, p - p0, p0, [&](const Word& whf) {
                    Word wv;
                    gen(wv, 0, q - 1, q - q0, q0, [&](const Word& wvf) {
                        out.push_back(Ref2{p0, q0, c, whf, wvf});
                    });
                });
            }
    std::sort(out.begin(), out.end());
    return out;
}

void BSet::validate() const
{
    for (int p = 0; p <= pbound; ++p)
        for (int q = 0; q <= qbound; ++q)
            for (int c = 0; c < ncells(p, q); ++c) {
                const Cell& cd = cells[p][q][c];
                require(p == 0 ? cd.hfaces.empty() : int(cd.hfaces.size()) == p + 1,
                        Err::InvalidInput, "hface arity");
                require(q == 0 ? cd.vfaces.empty() : int(cd.vfaces.size()) == q + 1,
                        Err::InvalidInput, "vface arity");
                for (const Ref2& f : cd.hfaces) {
                    require(f.p() == p - 1 && f.q() == q, Err::InvalidInput, "hface bidegree");
                    require(f.cp <= pbound && f.cq <= qbound && f.cell < ncells(f.cp, f.cq),
                            Err::InvalidInput, "dangling hface");
                    require(word_is_normal(f.wh, f.cp) && word_is_normal(f.wv, f.cq),
                            Err::InvalidInput, "hface words not normal");
                }
                for (const Ref2& f : cd.vfaces) {
                    require(f.p() == p && f.q() == q - 1, Err::InvalidInput, "vface bidegree");
                    require(f.cp <= pbound && f.cq <= qbound && f.cell < ncells(f.cp, f.cq),
                            Err::InvalidInput, "dangling vface");
                    require(word_is_normal(f.wh, f.cp) && word_is_normal(f.wv, f.cq),
                            Err::InvalidInput, "vface words not normal");
                }
                Ref2 r{p, q, c, {}, {}};
                if (p >= 2)
                    for (int j = 0; j <= p; ++j)
                        for (int i = 0; i < j; ++i)
                            require(hface(hface(r, j), i) == hface(hface(r, i), j - 1),
                                    Err::InvalidInput, "horizontal identity failed");
                if (q >= 2)
                    for (int j = 0; j <= q; ++j)
                        for (int i = 0; i < j; ++i)
                            require(vface(vface(r, j), i) == vface(vface(r, i), j - 1),
                                    Err::InvalidInput, "vertical identity failed");
                if (p >= 1 && q >= 1)
                    for (int i = 0; i <= p; ++i)
                        for (int j = 0; j <= q; ++j)
                            require(vface(hface(r, i), j) == hface(vface(r, j), i),
                                    Err::InvalidInput, "h/v faces do not commute");
            }
}

Ref2 BMap::apply(const Ref2& r) const
{
    return dst->apply_ops(img[r.cp][r.cq][r.cell], r.wh, r.wv);
}

void BMap::validate() const
{
    for (int p = 0; p <= src->pbound; ++p)
        for (int q = 0; q <= src->qbound; ++q)
            for (int c = 0; c < src->ncells(p, q); ++c) {
                const Ref2& im = img[p][q][c];
                require(im.p() == p && im.q() == q, Err::InvalidInput,
                        "map not bidegree-preserving");
                Ref2 r{p, q, c, {}, {}};
                for (int i = 0; i <= p && p > 0; ++i)
                    require(apply(src->hface(r, i)) == dst->hface(im, i), Err::InvalidInput,
                            "map does not commute with hfaces");
                for (int i = 0; i <= q && q > 0; ++i)
                    require(apply(src->vface(r, i)) == dst->vface(im, i), Err::InvalidInput,
                            "map does not commute with vfaces");
            }
}

bool BMap::is_iso() const
{
    for (int p = 0; p <= src->pbound || p <= dst->pbound; ++p)
        for (int q = 0; q <= src->qbound || q <= dst->qbound; ++q) {
            int ns = src->ncells(p, q), nd = dst->ncells(p, q);
            if (ns != nd)
                return false;
            std::vector<char> hit(nd, 0);
            for (int c = 0; c < ns; ++c) {
                const Ref2& im = img[p][q][c];
                if (!im.wh.empty() || !im.wv.empty())
                    return false;
                if (hit[im.cell])
                    return false;
                hit[im.cell] = 1;
            }
        }
    return true;
}

BMap identity_map(const BSetP& x)
{
    BMap m;
    m.src = m.dst = x;
    m.img.assign(x->pbound + 1, {});
    for (int p = 0; p <= x->pbound; ++p) {
        m.img[p].resize(x->qbound + 1);
        for (int q = 0; q <= x->qbound; ++q)
            for (int c = 0; c < x->ncells(p, q); ++c)
                m.img[p][q].push_back(Ref2{p, q, c, {}, {}});
    }
    return m;
}

BMap compose(const BMap& g, const BMap& f)
{
    BMap m;
    m.src = f.src;
    m.dst = g.dst;
    m.img.resize(f.img.size());
    for (size_t p = 0; p < f.img.size(); ++p) {
        m.img[p].resize(f.img[p].size());
        for (size_t q = 0; q < f.img[p].size(); ++q)
            for (auto& r : f.img[p][q])
                m.img[p][q].push_back(g.apply(r));
    }
    return m;
}

BMap make_bmap(const BSetP& x, const BSetP& z, std::vector<std::vector<std::vector<Ref2>>> img)
{
    BMap m;
    m.src = x;
    m.dst = z;
    m.img = std::move(img);
    m.validate();
    return m;
}

BSetP box_product(const SSetP& x, const SSetP& y)
{
    int pb = x->dim_bound, qb = y->dim_bound;
    auto out = std::make_shared<BSet>(pb, qb);
    // cell (p,q,(cx,cy)) at index cx * ncells_y(q) + cy
    for (int p = 0; p <= pb; ++p)
        for (int q = 0; q <= qb; ++q)
            for (int cx = 0; cx < x->ncells(p); ++cx)
                for (int cy = 0; cy < y->ncells(q); ++cy) {
                    std::vector<Ref2> hf, vf;
                    for (int i = 0; i <= p && p > 0; ++i) {
                        Ref fx = x->faces[p][cx][i];
                        hf.push_back(Ref2{fx.cdim, q, fx.cell * y->ncells(q) + cy, fx.word, {}});
                    }
                    for (int i = 0; i <= q && q > 0; ++i) {
                        Ref fy = y->faces[q][cy][i];
                        vf.push_back(Ref2{p, fy.cdim, cx * y->ncells(fy.cdim) + fy.cell, {}, fy.word});
                    }
                    out->add_cell(p, q, std::move(hf), std::move(vf));
                }
    return out;
}

int box_cell(const BSetP&, const SSetP&, const SSetP& y, int, int cx, int q, int cy)
{
    return cx * y->ncells(q) + cy;
}

BSetP standard_bisimplex(int n, int k)
{
    return box_product(standard_simplex(n), standard_simplex(k));
}

namespace {

/* epi-mono factorization of a monotone map given by vertex images */
void epi_mono(const std::vector<int>& f, std::vector<int>& image, Word& word)
{
    image.clear();
    word.clear();
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
    std::reverse(word.begin(), word.end());  // strictly decreasing normal form
}

int subset_index(int n, const std::vector<int>& vs)
{
    // lex rank of the subset among (|vs|)-subsets of {0..n}
    int d = int(vs.size()) - 1;
    auto choose = [](int a, int b) {
        if (b < 0 || b > a)
            return 0LL;
        long long r = 1;
        for (int i = 0; i < b; ++i)
            r = r * (a - i) / (i + 1);
        return r;
    };
    long long rank = 0;
    int prev = -1;
    for (int t = 0; t <= d; ++t) {
        for (int v = prev + 1; v < vs[t]; ++v)
            rank += choose(n - v, d - t);
        prev = vs[t];
    }
    return int(rank);
}

}  // namespace

Ref2 bisimplex_of(int n, int k, const std::vector<int>& f, const std::vector<int>& g)
{
    require(!f.empty() && !g.empty(), Err::InvalidInput, "empty vertex map");
    require(f.back() <= n && f.front() >= 0 && g.back() <= k && g.front() >= 0, Err::InvalidInput,
            "vertex map out of range");
    std::vector<int> imf, img;
    Word wh, wv;
    epi_mono(f, imf, wh);
    epi_mono(g, img, wv);
    int cp = int(imf.size()) - 1, cq = int(img.size()) - 1;
    int cell_x = subset_index(n, imf);
    int cell_y = subset_index(k, img);
    auto choose = [](int a, int b) {
        long long r = 1;
        for (int i = 0; i < b; ++i)
            r = r * (a - i) / (i + 1);
        return int(r);
    };
    int ncy = choose(k + 1, cq + 1);
    return Ref2{cp, cq, cell_x * ncy + cell_y, wh, wv};
}

BSetP disjoint_copies(const BSetP& x, int n)
{
    auto out = std::make_shared<BSet>(x->pbound, x->qbound);
    for (int kk = 0; kk < n; ++kk)
        for (int p = 0; p <= x->pbound; ++p)
            for (int q = 0; q <= x->qbound; ++q)
                for (int c = 0; c < x->ncells(p, q); ++c) {
                    auto cd = x->cells[p][q][c];
                    for (auto& f : cd.hfaces)
                        f.cell += kk * x->ncells(f.cp, f.cq);
                    for (auto& f : cd.vfaces)
                        f.cell += kk * x->ncells(f.cp, f.cq);
                    out->add_cell(p, q, std::move(cd.hfaces), std::move(cd.vfaces));
                }
    return out;
}

BMap copies_leg(const BSetP& x, const BSetP& copies, int n, int k)
{
    require(k >= 0 && k < n, Err::InvalidInput, "copy index out of range");
    BMap m;
    m.src = x;
    m.dst = copies;
    m.img.assign(x->pbound + 1, {});
    for (int p = 0; p <= x->pbound; ++p) {
        m.img[p].resize(x->qbound + 1);
        for (int q = 0; q <= x->qbound; ++q)
            for (int c = 0; c < x->ncells(p, q); ++c)
                m.img[p][q].push_back(Ref2{p, q, c + k * x->ncells(p, q), {}, {}});
    }
    return m;
}

BSetP susp_h(const SSetP& x)
{
    return box_product(x, standard_simplex(1));
}

BSetP susp_v(const SSetP& x)
{
    return box_product(standard_simplex(1), x);
}

BMap susp_h(const SMap& f)
{
    auto d1 = standard_simplex(1);
    BMap m;
    m.src = susp_h(f.src);
    m.dst = susp_h(f.dst);
    m.img.assign(m.src->pbound + 1, {});
    for (int p = 0; p <= m.src->pbound; ++p) {
        m.img[p].resize(m.src->qbound + 1);
        for (int q = 0; q <= m.src->qbound; ++q)
            for (int cx = 0; cx < f.src->ncells(p); ++cx)
                for (int cy = 0; cy < d1->ncells(q); ++cy) {
                    Ref r = f.img[p][cx];
                    m.img[p][q].push_back(
                        Ref2{r.cdim, q, r.cell * d1->ncells(q) + cy, r.word, {}});
                }
    }
    return m;
}

BMap susp_v(const SMap& f)
{
    auto d1 = standard_simplex(1);
    BMap m;
    m.src = susp_v(f.src);
    m.dst = susp_v(f.dst);
    m.img.assign(m.src->pbound + 1, {});
    for (int p = 0; p <= m.src->pbound; ++p) {
        m.img[p].resize(m.src->qbound + 1);
        for (int q = 0; q <= m.src->qbound; ++q)
            for (int cx = 0; cx < d1->ncells(p); ++cx)
                for (int cy = 0; cy < f.src->ncells(q); ++cy) {
                    Ref r = f.img[q][cy];
                    m.img[p][q].push_back(
                        Ref2{p, r.cdim, cx * f.dst->ncells(r.cdim) + r.cell, {}, r.word});
                }
    }
    return m;
}

/* ---------------- colimits ---------------- */

namespace {

struct UnionFind {
    std::vector<int> up;
    void init(size_t n) { up.assign(n, -1); }
    int find(int a)
    {
        while (up[a] >= 0) {
            if (up[up[a]] >= 0)
                up[a] = up[up[a]];
            a = up[a];
        }
        return a;
    }
    void join(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (a > b)
            std::swap(a, b);
        up[b] = a;  // smaller id wins: canonical representatives
    }
};

}  // namespace

Colimit colim(const Diagram& diag)
{
    require(!diag.objects.empty(), Err::InvalidInput, "empty diagram");
    for (const auto& a : diag.arrows) {
        require(a.src >= 0 && a.src < int(diag.objects.size()) && a.dst >= 0 &&
                    a.dst < int(diag.objects.size()),
                Err::InvalidInput, "arrow endpoints out of range");
        require(a.map.src == diag.objects[a.src] && a.map.dst == diag.objects[a.dst],
                Err::InvalidInput, "arrow map endpoints mismatch");
    }
    // commutativity: whenever g∘f has a named arrow between the same endpoints,
    // the composite must equal one of them
    for (const auto& f : diag.arrows)
        for (const auto& g : diag.arrows) {
            if (f.dst != g.src)
                continue;
            bool any = false, match = false;
            BMap gf = compose(g.map, f.map);
            for (const auto& h : diag.arrows)
                if (h.src == f.src && h.dst == g.dst) {
                    any = true;
                    if (h.map == gf)
                        match = true;
                }
            require(!any || match, Err::NonCommutingDiagram,
                    "diagram does not commute on a composable pair");
        }

    int P = 0, Q = 0;
    for (const auto& ob : diag.objects) {
        P = std::max(P, ob->pbound);
        Q = std::max(Q, ob->qbound);
    }
    auto out = std::make_shared<BSet>(P, Q);

    // per level: global simplex ids, union-find classes
    struct LevelData {
        std::vector<std::pair<int, Ref2>> items;          // (piece, simplex)
        std::map<std::pair<int, Ref2>, int> index;
        UnionFind uf;
        std::vector<int> cls_of_item;                     // item -> class id (dense, ordered)
        std::vector<int> class_rep;                       // class -> item id
        std::vector<int> nondeg_cell;                     // class -> new cell or -1
        std::vector<std::tuple<int, int, int>> peel;      // class -> (dir, i, lower class)
    };
    std::vector<std::vector<LevelData>> lv(P + 1, std::vector<LevelData>(Q + 1));

    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            LevelData& L = lv[p][q];
            for (int i = 0; i < int(diag.objects.size()); ++i)
                for (const Ref2& s : diag.objects[i]->simplices(p, q)) {
                    L.index[{i, s}] = int(L.items.size());
                    L.items.push_back({i, s});
                }
            L.uf.init(L.items.size());
            for (const auto& a : diag.arrows)
                for (const Ref2& s : diag.objects[a.src]->simplices(p, q))
                    L.uf.join(L.index.at({a.src, s}), L.index.at({a.dst, a.map.apply(s)}));
            // dense class ids in order of smallest member
            L.cls_of_item.assign(L.items.size(), -1);
            for (int it = 0; it < int(L.items.size()); ++it) {
                int r = L.uf.find(it);
                if (L.cls_of_item[r] < 0) {
                    L.cls_of_item[r] = int(L.class_rep.size());
                    L.class_rep.push_back(r);
                }
                L.cls_of_item[it] = L.cls_of_item[r];
            }
            L.nondeg_cell.assign(L.class_rep.size(), -1);
            L.peel.assign(L.class_rep.size(), {-1, -1, -1});
        }

    auto class_of = [&](int p, int q, int piece, const Ref2& s) {
        return lv[p][q].cls_of_item[lv[p][q].index.at({piece, s})];
    };

    // mark degenerate classes via images of degeneracies from lower levels
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            LevelData& L = lv[p][q];
            if (p > 0) {
                LevelData& Lo = lv[p - 1][q];
                for (int z = 0; z < int(Lo.class_rep.size()); ++z) {
                    auto [piece, s] = Lo.items[Lo.class_rep[z]];
                    for (int i = 0; i <= p - 1; ++i) {
                        int tgt = class_of(p, q, piece, ref2_sh(s, i));
                        if (std::get<0>(L.peel[tgt]) < 0)
                            L.peel[tgt] = {0, i, z};
                    }
                }
            }
            if (q > 0) {
                LevelData& Lo = lv[p][q - 1];
                for (int z = 0; z < int(Lo.class_rep.size()); ++z) {
                    auto [piece, s] = Lo.items[Lo.class_rep[z]];
                    for (int i = 0; i <= q - 1; ++i) {
                        int tgt = class_of(p, q, piece, ref2_sv(s, i));
                        if (std::get<0>(L.peel[tgt]) < 0)
                            L.peel[tgt] = {1, i, z};
                    }
                }
            }
        }

    // normal form of a class: peel degeneracies down to a nondegenerate class
    std::function<Ref2(int, int, int)> nf = [&](int p, int q, int z) -> Ref2 {
        LevelData& L = lv[p][q];
        auto [dir, i, low] = L.peel[z];
        if (dir < 0) {
            require(L.nondeg_cell[z] >= 0, Err::InvalidInput, "colim: cell order violated");
            return Ref2{p, q, L.nondeg_cell[z], {}, {}};
        }
        if (dir == 0)
            return ref2_sh(nf(p - 1, q, low), i);
        return ref2_sv(nf(p, q - 1, low), i);
    };

    // create nondegenerate cells level by level (total degree order)
    std::vector<std::vector<std::vector<std::pair<int, int>>>> origin(
        P + 1, std::vector<std::vector<std::pair<int, int>>>(Q + 1));
    for (int t = 0; t <= P + Q; ++t)
        for (int p = 0; p <= std::min(t, P); ++p) {
            int q = t - p;
            if (q > Q)
                continue;
            LevelData& L = lv[p][q];
            for (int z = 0; z < int(L.class_rep.size()); ++z) {
                if (std::get<0>(L.peel[z]) >= 0)
                    continue;
                auto [piece, s] = L.items[L.class_rep[z]];
                require(s.wh.empty() && s.wv.empty(), Err::InvalidInput,
                        "nondegenerate class with degenerate representative");
                std::vector<Ref2> hf, vf;
                const BSetP& ob = diag.objects[piece];
                for (int i = 0; i <= p && p > 0; ++i) {
                    Ref2 f = ob->hface(s, i);
                    hf.push_back(nf(p - 1, q, class_of(p - 1, q, piece, f)));
                }
                for (int i = 0; i <= q && q > 0; ++i) {
                    Ref2 f = ob->vface(s, i);
                    vf.push_back(nf(p, q - 1, class_of(p, q - 1, piece, f)));
                }
                L.nondeg_cell[z] = out->add_cell(p, q, std::move(hf), std::move(vf));
                origin[p][q].push_back({piece, s.cell});
            }
        }

    Colimit res;
    res.obj = out;
    res.origin = std::move(origin);
    for (int i = 0; i < int(diag.objects.size()); ++i) {
        BMap leg;
        leg.src = diag.objects[i];
        leg.dst = out;
        leg.img.assign(leg.src->pbound + 1, {});
        for (int p = 0; p <= leg.src->pbound; ++p) {
            leg.img[p].resize(leg.src->qbound + 1);
            for (int q = 0; q <= leg.src->qbound; ++q)
                for (int c = 0; c < leg.src->ncells(p, q); ++c)
                    leg.img[p][q].push_back(nf(p, q, class_of(p, q, i, Ref2{p, q, c, {}, {}})));
        }
        res.legs.push_back(std::move(leg));
    }
    return res;
}

Colimit pushout(const BSetP& a, const BSetP& b, const BSetP& c, const BMap& ab, const BMap& ac)
{
    Diagram d;
    d.objects = {a, b, c};
    d.arrows.push_back({0, 1, ab});
    d.arrows.push_back({0, 2, ac});
    Colimit r = colim(d);
    // reorder legs to (b, c, a); remap origin piece indices to match
    for (auto& lvl : r.origin)
        for (auto& row : lvl)
            for (auto& [piece, cell] : row)
                piece = (piece + 2) % 3;
    return Colimit{r.obj, {r.legs[1], r.legs[2], r.legs[0]}, r.origin};
}

Colimit coproduct(const std::vector<BSetP>& pieces)
{
    Diagram d;
    d.objects = pieces;
    return colim(d);
}

namespace {

/* a simplicial set as a vertically constant bisimplicial set */
BSetP widen(const SSetP& x)
{
    auto out = std::make_shared<BSet>(x->dim_bound, 0);
    for (int p = 0; p <= x->dim_bound; ++p)
        for (int c = 0; c < x->ncells(p); ++c) {
            std::vector<Ref2> hf;
            for (int i = 0; i <= p && p > 0; ++i) {
                Ref f = x->faces[p][c][i];
                hf.push_back(Ref2{f.cdim, 0, f.cell, f.word, {}});
            }
            out->add_cell(p, 0, std::move(hf), {});
        }
    return out;
}

SSetP narrow(const BSetP& x)
{
    auto out = std::make_shared<SSet>(x->pbound);
    for (int p = 0; p <= x->pbound; ++p)
        for (int c = 0; c < x->ncells(p, 0); ++c) {
            std::vector<Ref> fs;
            for (int i = 0; i <= p && p > 0; ++i) {
                Ref2 f = x->cells[p][0][c].hfaces[i];
                fs.push_back(Ref{f.cp, f.cell, f.wh});
            }
            out->add_cell(p, std::move(fs));
        }
    return out;
}

}  // namespace

SColimit colim(const SDiagram& diag)
{
    Diagram d;
    std::vector<BSetP> wide;
    for (auto& ob : diag.objects)
        wide.push_back(widen(ob));
    d.objects = wide;
    for (auto& a : diag.arrows) {
        BMap m;
        m.src = wide[a.src];
        m.dst = wide[a.dst];
        m.img.assign(m.src->pbound + 1, {});
        for (int p = 0; p <= m.src->pbound; ++p) {
            m.img[p].resize(1);
            for (int c = 0; c < diag.objects[a.src]->ncells(p); ++c) {
                Ref r = a.map.img[p][c];
                m.img[p][0].push_back(Ref2{r.cdim, 0, r.cell, r.word, {}});
            }
        }
        d.arrows.push_back({a.src, a.dst, std::move(m)});
    }
    Colimit r = colim(d);
    SColimit sr;
    sr.obj = narrow(r.obj);
    for (int i = 0; i < int(diag.objects.size()); ++i) {
        SMap leg;
        leg.src = diag.objects[i];
        leg.dst = sr.obj;
        leg.img.resize(leg.src->faces.size());
        for (int p = 0; p < int(leg.src->faces.size()); ++p)
            for (int c = 0; c < leg.src->ncells(p); ++c) {
                Ref2 im = r.legs[i].img[p][0][c];
                leg.img[p].push_back(Ref{im.cp, im.cell, im.wh});
            }
        sr.legs.push_back(std::move(leg));
    }
    return sr;
}

/* ---------------- isomorphism search ---------------- */

namespace {

struct IsoSearch {
    const BSet& x;
    const BSet& y;
    int P, Q;
    // asg[p][q][cx] = cy or -1; used[p][q][cy]
    std::vector<std::vector<std::vector<int>>> asg, used;
    std::vector<std::tuple<int, int, int>> trail;
    std::vector<std::tuple<int, int, int>> order;  // cells top-down
    const std::function<bool(const BMap&)>* visit = nullptr;
    bool stopped = false;

    IsoSearch(const BSet& xx, const BSet& yy) : x(xx), y(yy)
    {
        P = std::max(x.pbound, y.pbound);
        Q = std::max(x.qbound, y.qbound);
        asg.assign(P + 1, std::vector<std::vector<int>>(Q + 1));
        used.assign(P + 1, std::vector<std::vector<int>>(Q + 1));
        for (int p = 0; p <= P; ++p)
            for (int q = 0; q <= Q; ++q) {
                asg[p][q].assign(x.ncells(p, q), -1);
                used[p][q].assign(y.ncells(p, q), 0);
            }
        for (int t = P + Q; t >= 0; --t)
            for (int p = std::min(t, P); p >= 0; --p) {
                int q = t - p;
                if (q > Q || q < 0)
                    continue;
                for (int c = 0; c < x.ncells(p, q); ++c)
                    order.push_back({p, q, c});
            }
    }

    bool counts_match() const
    {
        for (int p = 0; p <= P; ++p)
            for (int q = 0; q <= Q; ++q)
                if (x.ncells(p, q) != y.ncells(p, q))
                    return false;
        return true;
    }

    bool force(int p, int q, int cx, int cy)
    {
        int cur = asg[p][q][cx];
        if (cur >= 0)
            return cur == cy;
        if (used[p][q][cy])
            return false;
        asg[p][q][cx] = cy;
        used[p][q][cy] = 1;
        trail.push_back({p, q, cx});
        // propagate to faces
        if (p > 0)
            for (int i = 0; i <= p; ++i) {
                const Ref2& fx = x.cells[p][q][cx].hfaces[i];
                const Ref2& fy = y.cells[p][q][cy].hfaces[i];
                if (fx.wh != fy.wh || fx.wv != fy.wv || fx.cp != fy.cp || fx.cq != fy.cq)
                    return false;
                if (!force(fx.cp, fx.cq, fx.cell, fy.cell))
                    return false;
            }
        if (q > 0)
            for (int i = 0; i <= q; ++i) {
                const Ref2& fx = x.cells[p][q][cx].vfaces[i];
                const Ref2& fy = y.cells[p][q][cy].vfaces[i];
                if (fx.wh != fy.wh || fx.wv != fy.wv || fx.cp != fy.cp || fx.cq != fy.cq)
                    return false;
                if (!force(fx.cp, fx.cq, fx.cell, fy.cell))
                    return false;
            }
        return true;
    }

    void rollback(size_t mark)
    {
        while (trail.size() > mark) {
            auto [p, q, cx] = trail.back();
            trail.pop_back();
            used[p][q][asg[p][q][cx]] = 0;
            asg[p][q][cx] = -1;
        }
    }

    void emit(const BSetP& xs, const BSetP& ys)
    {
        BMap m;
        m.src = xs;
        m.dst = ys;
        m.img.assign(xs->pbound + 1, {});
        for (int p = 0; p <= xs->pbound; ++p) {
            m.img[p].resize(xs->qbound + 1);
            for (int q = 0; q <= xs->qbound; ++q)
                for (int c = 0; c < xs->ncells(p, q); ++c)
                    m.img[p][q].push_back(Ref2{p, q, asg[p][q][c], {}, {}});
        }
        if ((*visit)(m))
            stopped = true;
    }

    void solve(size_t k, const BSetP& xs, const BSetP& ys)
    {
        if (stopped)
            return;
        while (k < order.size()) {
            auto [p, q, c] = order[k];
            if (asg[p][q][c] < 0)
                break;
            ++k;
        }
        if (k == order.size()) {
            emit(xs, ys);
            return;
        }
        auto [p, q, c] = order[k];
        for (int cy = 0; cy < y.ncells(p, q) && !stopped; ++cy) {
            if (used[p][q][cy])
                continue;
            size_t mark = trail.size();
            if (force(p, q, c, cy))
                solve(k + 1, xs, ys);
            rollback(mark);
        }
    }
};

}  // namespace

bool for_each_iso(const BSetP& x, const BSetP& y, const std::vector<IsoConstraint>& pins,
                  const std::function<bool(const BMap&)>& visit)
{
    IsoSearch s(*x, *y);
    if (!s.counts_match())
        return false;
    s.visit = &visit;
    size_t mark = s.trail.size();
    for (auto [p, q, cx, cy] : pins)
        if (!s.force(p, q, cx, cy)) {
            s.rollback(mark);
            return false;
        }
    s.solve(0, x, y);
    return s.stopped;
}

std::optional<BMap> find_iso(const BSetP& x, const BSetP& y)
{
    std::optional<BMap> out;
    for_each_iso(x, y, {}, [&](const BMap& m) {
        out = m;
        return true;
    });
    return out;
}

std::optional<SMap> find_iso(const SSetP& x, const SSetP& y)
{
    auto wx = widen(x), wy = widen(y);
    auto iso = find_iso(wx, wy);
    if (!iso)
        return std::nullopt;
    SMap m;
    m.src = x;
    m.dst = y;
    m.img.resize(x->faces.size());
    for (int p = 0; p < int(x->faces.size()); ++p)
        for (int c = 0; c < x->ncells(p); ++c) {
            Ref2 im = iso->img[p][0][c];
            m.img[p].push_back(Ref{im.cp, im.cell, im.wh});
        }
    return m;
}

}  // namespace bihall::simp
