#include "bihall/twistposet.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

namespace bihall::tw {

int Bits::count() const
{
    int c = 0;
    for (uint64_t x : w)
        c += __builtin_popcountll(x);
    return c;
}

bool Bits::subset_of(const Bits& o) const
{
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i] & ~o.w[i])
            return false;
    return true;
}

Bits Bits::operator|(const Bits& o) const
{
    Bits r = *this;
    for (size_t i = 0; i < w.size(); ++i)
        r.w[i] |= o.w[i];
    return r;
}

Bits Bits::operator&(const Bits& o) const
{
    Bits r = *this;
    for (size_t i = 0; i < w.size(); ++i)
        r.w[i] &= o.w[i];
    return r;
}

void FinPoset::validate() const
{
    for (int i = 0; i < n; ++i)
        require(leq[i][i], Err::InvalidInput, "not reflexive");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j)
                require(!(leq[i][j] && leq[j][i]), Err::InvalidInput, "not antisymmetric");
            if (leq[i][j])
                for (int k = 0; k < n; ++k)
                    if (leq[j][k])
                        require(leq[i][k], Err::InvalidInput, "not transitive");
        }
}

std::vector<std::pair<int, int>> FinPoset::covers() const
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !leq[i][j])
                continue;
            bool cover = true;
            for (int k = 0; k < n && cover; ++k)
                if (k != i && k != j && leq[i][k] && leq[k][j])
                    cover = false;
            if (cover)
                out.push_back({i, j});
        }
    return out;
}

std::vector<std::pair<int, int>> FinPoset::relations() const
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (leq[i][j])
                out.push_back({i, j});
    return out;
}

FinPoset chain_poset(int n)
{
    FinPoset p(n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            p.leq[i][j] = 1;
    for (int i = 0; i <= n; ++i)
        p.names[i] = std::to_string(i);
    return p;
}

FinPoset product(const FinPoset& a, const FinPoset& b)
{
    FinPoset p(a.n * b.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < b.n; ++j) {
            p.names[i * b.n + j] = "(" + a.names[i] + "," + b.names[j] + ")";
            for (int i2 = 0; i2 < a.n; ++i2)
                for (int j2 = 0; j2 < b.n; ++j2)
                    p.leq[i * b.n + j][i2 * b.n + j2] = a.leq[i][i2] && b.leq[j][j2];
        }
    return p;
}

bool poset_iso(const FinPoset& a, const FinPoset& b)
{
    if (a.n != b.n)
        return false;
    auto sig = [](const FinPoset& p, int i) {
        int down = 0, up = 0;
        for (int j = 0; j < p.n; ++j) {
            down += p.leq[j][i];
            up += p.leq[i][j];
        }
        return std::make_pair(down, up);
    };
    std::vector<int> asg(a.n, -1), used(b.n, 0);
    std::function<bool(int)> go = [&](int i) -> bool {
        if (i == a.n)
            return true;
        for (int j = 0; j < b.n; ++j) {
            if (used[j] || sig(a, i) != sig(b, j))
                continue;
            bool ok = true;
            for (int s = 0; s < i && ok; ++s)
                if (a.leq[i][s] != b.leq[j][asg[s]] || a.leq[s][i] != b.leq[asg[s]][j])
                    ok = false;
            if (!ok)
                continue;
            asg[i] = j;
            used[j] = 1;
            if (go(i + 1))
                return true;
            asg[i] = -1;
            used[j] = 0;
        }
        return false;
    };
    return go(0);
}

IntervalPoset pyr(const FinPoset& p)
{
    IntervalPoset ip;
    ip.id_table.assign(p.n, std::vector<int>(p.n, -1));
    for (int x = 0; x < p.n; ++x)
        for (int y = 0; y < p.n; ++y)
            if (p.le(x, y)) {
                ip.id_table[x][y] = int(ip.elems.size());
                ip.elems.push_back({x, y});
            }
    int m = int(ip.elems.size());
    ip.poset = FinPoset(m);
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < m; ++t) {
            auto [x, y] = ip.elems[s];
            auto [x2, y2] = ip.elems[t];
            ip.poset.leq[s][t] = p.le(x, x2) && p.le(y2, y);
        }
    for (int s = 0; s < m; ++s) {
        auto [x, y] = ip.elems[s];
        ip.poset.names[s] = "[" + p.names[x] + ";" + p.names[y] + "]";
    }
    return ip;
}

int IntervalPoset::id(int x, int y) const
{
    int r = id_table[x][y];
    require(r >= 0, Err::InvalidInput, "not an interval");
    return r;
}

Completion free_completion(const FinPoset& q, int max_size)
{
    require(q.n <= 20, Err::TooLarge, "free completion materialized only for small posets");
    std::vector<std::vector<char>> ups;
    for (uint32_t m = 0; m < (1u << q.n); ++m) {
        std::vector<char> s(q.n, 0);
        for (int i = 0; i < q.n; ++i)
            s[i] = (m >> i) & 1;
        bool up = true;
        for (int i = 0; i < q.n && up; ++i)
            if (s[i])
                for (int j = 0; j < q.n; ++j)
                    if (q.le(i, j) && !s[j])
                        up = false;
        if (up)
            ups.push_back(std::move(s));
        require(int(ups.size()) <= max_size, Err::TooLarge, "completion too large");
    }
    Completion c;
    c.upsets = std::move(ups);
    int m = int(c.upsets.size());
    c.poset = FinPoset(m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            bool contains = true;  // morphism a -> b iff b ⊆ a (reverse inclusion)
            for (int i = 0; i < q.n && contains; ++i)
                if (c.upsets[b][i] && !c.upsets[a][i])
                    contains = false;
            c.poset.leq[a][b] = contains;
        }
    c.embed.resize(q.n);
    for (int x = 0; x < q.n; ++x) {
        std::vector<char> pr(q.n, 0);
        for (int j = 0; j < q.n; ++j)
            pr[j] = q.le(x, j);
        auto it = std::find(c.upsets.begin(), c.upsets.end(), pr);
        c.embed[x] = int(it - c.upsets.begin());
    }
    return c;
}

std::vector<char> up_closure(const FinPoset& p, const std::vector<char>& s)
{
    std::vector<char> out(p.n, 0);
    for (int i = 0; i < p.n; ++i)
        if (s[i])
            for (int j = 0; j < p.n; ++j)
                if (p.le(i, j))
                    out[j] = 1;
    return out;
}

/* ---------------- simplices of N(Delta^op) ---------------- */

int DeltaOpSimplex::phi(int b, int bp, int a) const
{
    require(b >= bp, Err::InvalidInput, "phi direction");
    for (int t = b; t > bp; --t)
        a = steps[t - 1][a];
    return a;
}

void DeltaOpSimplex::validate() const
{
    require(!dims.empty(), Err::InvalidInput, "empty simplex");
    require(steps.size() + 1 == dims.size(), Err::InvalidInput, "step count mismatch");
    for (int b = 1; b <= k(); ++b) {
        require(int(steps[b - 1].size()) == dims[b] + 1, Err::InvalidInput, "step arity");
        for (int a = 0; a <= dims[b]; ++a) {
            require(steps[b - 1][a] >= 0 && steps[b - 1][a] <= dims[b - 1], Err::InvalidInput,
                    "step out of range");
            if (a > 0)
                require(steps[b - 1][a - 1] <= steps[b - 1][a], Err::NonMonotone,
                        "step not monotone");
        }
    }
}

DeltaOpSimplex DeltaOpSimplex::constant(int n, int k)
{
    DeltaOpSimplex s;
    s.dims.assign(k + 1, n);
    for (int b = 1; b <= k; ++b) {
        std::vector<int> id(n + 1);
        for (int a = 0; a <= n; ++a)
            id[a] = a;
        s.steps.push_back(id);
    }
    return s;
}

DeltaOpSimplex DeltaOpSimplex::length0(int n)
{
    DeltaOpSimplex s;
    s.dims = {n};
    return s;
}

DeltaOpSimplex DeltaOpSimplex::arrow(int n0, int n1, std::vector<int> step)
{
    DeltaOpSimplex s;
    s.dims = {n0, n1};
    s.steps = {std::move(step)};
    s.validate();
    return s;
}

DeltaOpSimplex simplex_restrict(const DeltaOpSimplex& phi, const std::vector<int>& gamma)
{
    for (size_t i = 0; i + 1 < gamma.size(); ++i)
        require(gamma[i] <= gamma[i + 1], Err::NonMonotone, "gamma not monotone");
    require(!gamma.empty() && gamma.front() >= 0 && gamma.back() <= phi.k(), Err::ShapeMismatch,
            "gamma out of range");
    DeltaOpSimplex out;
    for (int b : gamma)
        out.dims.push_back(phi.dims[b]);
    for (size_t t = 1; t < gamma.size(); ++t) {
        std::vector<int> step(phi.dims[gamma[t]] + 1);
        for (int a = 0; a <= phi.dims[gamma[t]]; ++a)
            step[a] = phi.phi(gamma[t], gamma[t - 1], a);
        out.steps.push_back(std::move(step));
    }
    return out;
}

std::vector<std::vector<int>> all_monotone(int m, int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> go = [&](int t, int lo) {
        if (t == m + 1) {
            out.push_back(cur);
            return;
        }
        for (int v = lo; v <= n; ++v) {
            cur.push_back(v);
            go(t + 1, v);
            cur.pop_back();
        }
    };
    go(0, 0);
    return out;
}

std::vector<DeltaOpSimplex> enumerate_simplices(int kmax, int nmax)
{
    std::vector<DeltaOpSimplex> out;
    std::function<void(DeltaOpSimplex&)> extend = [&](DeltaOpSimplex& s) {
        out.push_back(s);
        if (s.k() == kmax)
            return;
        for (int n = 0; n <= nmax; ++n)
            for (auto& step : all_monotone(n, s.dims.back())) {
                s.dims.push_back(n);
                s.steps.push_back(step);
                extend(s);
                s.steps.pop_back();
                s.dims.pop_back();
            }
    };
    for (int n = 0; n <= nmax; ++n) {
        DeltaOpSimplex s = DeltaOpSimplex::length0(n);
        extend(s);
    }
    return out;
}

bool is_inert_step(const std::vector<int>& step)
{
    for (size_t i = 0; i + 1 < step.size(); ++i)
        if (step[i + 1] != step[i] + 1)
            return false;
    return true;
}

/* ---------------- Grothendieck posets ---------------- */

int GrothData::o_id(int i, int j, int b) const
{
    for (int t = 0; t < int(o_elems.size()); ++t)
        if (o_elems[t][0] == i && o_elems[t][1] == j && o_elems[t][2] == b)
            return t;
    fail(Err::InvalidInput, "no such Omega element");
}

GrothData groth_posets(const DeltaOpSimplex& phi)
{
    phi.validate();
    GrothData g;
    g.phi = phi;
    int k = phi.k();

    g.m_id.assign(k + 1, {});
    for (int b = 0; b <= k; ++b) {
        g.m_id[b].assign(phi.dims[b] + 1, -1);
        for (int a = 0; a <= phi.dims[b]; ++a) {
            g.m_id[b][a] = int(g.m_elems.size());
            g.m_elems.push_back({a, b});
        }
    }
    g.M = FinPoset(int(g.m_elems.size()));
    for (int s = 0; s < g.M.n; ++s)
        for (int t = 0; t < g.M.n; ++t) {
            auto [a, b] = g.m_elems[s];
            auto [a2, b2] = g.m_elems[t];
            g.M.leq[s][t] = b >= b2 && phi.phi(b, b2, a) <= a2;
        }
    for (int s = 0; s < g.M.n; ++s)
        g.M.names[s] = "(" + std::to_string(g.m_elems[s].first) + "," +
                       std::to_string(g.m_elems[s].second) + ")";

    for (int b = 0; b <= k; ++b)
        for (int i = 0; i <= phi.dims[b]; ++i)
            for (int j = i; j <= phi.dims[b]; ++j)
                g.o_elems.push_back({i, j, b});
    g.Omega = FinPoset(int(g.o_elems.size()));
    for (int s = 0; s < g.Omega.n; ++s)
        for (int t = 0; t < g.Omega.n; ++t) {
            auto [i, j, b] = g.o_elems[s];
            auto [i2, j2, b2] = g.o_elems[t];
            g.Omega.leq[s][t] = b >= b2 && phi.phi(b, b2, i) <= i2 && j2 <= phi.phi(b, b2, j);
        }
    for (int s = 0; s < g.Omega.n; ++s)
        g.Omega.names[s] = "([" + std::to_string(g.o_elems[s][0]) + ";" +
                           std::to_string(g.o_elems[s][1]) + "]," +
                           std::to_string(g.o_elems[s][2]) + ")";

    g.M.validate();
    g.Omega.validate();
    g.pyrM = pyr(g.M);
    g.pyrOmega = pyr(g.Omega);

    g.wedge.assign(g.pyrM.elems.size(), 0);
    for (int t = 0; t < int(g.pyrM.elems.size()); ++t) {
        auto [x, y] = g.pyrM.elems[t];
        auto [a, b] = g.m_elems[x];
        auto [c, b2] = g.m_elems[y];
        if (b - b2 > 1)
            continue;
        for (int a2 = std::max(0, a - 1); a2 <= std::min(phi.dims[b], a + 1); ++a2)
            if (phi.phi(b, b2, a2) == c) {
                g.wedge[t] = 1;
                g.wedge_list.push_back(t);
                break;
            }
    }

    g.vle.assign(g.M.n, std::vector<char>(g.M.n, 0));
    for (int s = 0; s < g.M.n; ++s)
        for (int t = 0; t < g.M.n; ++t) {
            auto [a, b] = g.m_elems[s];
            auto [c, b2] = g.m_elems[t];
            g.vle[s][t] = b >= b2 && phi.phi(b, b2, a) == c;
        }

    g.nu.resize(g.M.n);
    for (int s = 0; s < g.M.n; ++s) {
        auto [a, b] = g.m_elems[s];
        g.nu[s] = g.o_id(a, a, b);
    }
    return g;
}

std::vector<int> reindex_m(const GrothData& sub, const GrothData& full,
                           const std::vector<int>& gamma)
{
    std::vector<int> out(sub.M.n);
    for (int s = 0; s < sub.M.n; ++s) {
        auto [a, b] = sub.m_elems[s];
        out[s] = full.mid(a, gamma[b]);
    }
    return out;
}

std::vector<int> reindex_omega(const GrothData& sub, const GrothData& full,
                               const std::vector<int>& gamma)
{
    std::vector<int> out(sub.Omega.n);
    for (int s = 0; s < sub.Omega.n; ++s) {
        auto [i, j, b] = sub.o_elems[s];
        out[s] = full.o_id(i, j, gamma[b]);
    }
    return out;
}

std::vector<int> reindex_m_nat(const GrothData& sub, const GrothData& full,
                               const std::vector<std::vector<int>>& eta)
{
    std::vector<int> out(sub.M.n);
    for (int s = 0; s < sub.M.n; ++s) {
        auto [a, b] = sub.m_elems[s];
        out[s] = full.mid(eta[b][a], b);
    }
    return out;
}

std::vector<int> reindex_omega_nat(const GrothData& sub, const GrothData& full,
                                   const std::vector<std::vector<int>>& eta)
{
    std::vector<int> out(sub.Omega.n);
    for (int s = 0; s < sub.Omega.n; ++s) {
        auto [i, j, b] = sub.o_elems[s];
        out[s] = full.o_id(eta[b][i], eta[b][j], b);
    }
    return out;
}

/* ---------------- cone functor ---------------- */

ConeFunctor cone_functor(const GrothData& g)
{
    return ConeFunctor{&g};
}

std::vector<char> ConeFunctor::kbar(int mx, int my) const
{
    require(g->M.le(mx, my), Err::InvalidInput, "kbar needs an interval of M");
    auto [a, b] = g->m_elems[mx];
    auto [a2, b2] = g->m_elems[my];
    std::vector<char> out(g->Omega.n, 0);
    for (int t = 0; t < g->Omega.n; ++t) {
        auto [i, j, c] = g->o_elems[t];
        if (c > b || c < b2)
            continue;
        if (g->phi.phi(b, c, a) <= i && g->phi.phi(c, b2, j) <= a2)
            out[t] = 1;
    }
    return out;
}

Bits ConeFunctor::value(int mx, int my) const
{
    std::vector<char> kb = kbar(mx, my);
    Bits bits(int(g->pyrOmega.elems.size()));
    for (int t = 0; t < int(g->pyrOmega.elems.size()); ++t) {
        auto [u, v] = g->pyrOmega.elems[t];
        if (kb[u] && kb[v])
            bits.set(t);
    }
    return bits;
}

Bits ConeFunctor::value_interval(int pyrm_elem) const
{
    auto [x, y] = g->pyrM.elems[pyrm_elem];
    return value(x, y);
}

Report check_cone(const GrothData& g)
{
    Report rep;
    ConeFunctor kf = cone_functor(g);
    int nm = g.M.n;
    int npyr = int(g.pyrOmega.elems.size());

    std::map<std::pair<int, int>, Bits> memo;
    auto val = [&](int x, int y) -> const Bits& {
        auto it = memo.find({x, y});
        if (it == memo.end())
            it = memo.emplace(std::make_pair(x, y), kf.value(x, y)).first;
        return it->second;
    };

    for (int x = 0; x < nm; ++x) {
        auto kb = kf.kbar(x, x);
        int cnt = 0;
        for (char c : kb)
            cnt += c;
        if (cnt != 1 || !kb[g.nu[x]])
            rep.fail("degenerate region is not the nu-singleton at M elem " + std::to_string(x));
    }
    for (auto [x, y] : g.M.relations()) {
        const Bits& v = val(x, y);
        std::vector<char> s(npyr, 0);
        for (int t = 0; t < npyr; ++t)
            s[t] = v.get(t);
        auto cl = up_closure(g.pyrOmega.poset, s);
        for (int t = 0; t < npyr; ++t)
            if (bool(cl[t]) != v.get(t)) {
                rep.fail("cone value not up-closed");
                break;
            }
    }

    for (auto [s, t] : g.pyrM.poset.relations())
        if (!val(g.pyrM.elems[t].first, g.pyrM.elems[t].second)
                 .subset_of(val(g.pyrM.elems[s].first, g.pyrM.elems[s].second)))
            rep.fail("kappa-bar not monotone in interval containment");

    for (int x = 0; x < nm; ++x)
        for (int y = 0; y < nm; ++y) {
            if (!g.M.le(x, y))
                continue;
            if (!(val(x, x).subset_of(val(x, y)) && val(y, y).subset_of(val(x, y))))
                rep.fail("span legs fail to include");
            for (int z = 0; z < nm; ++z) {
                if (!g.M.le(y, z))
                    continue;
                if (!(val(x, y) | val(y, z)).subset_of(val(x, z)))
                    rep.fail("oplax component missing: pair union not inside composite");
                for (int w = 0; w < nm; ++w) {
                    if (!g.M.le(z, w))
                        continue;
                    Bits left = (val(x, y) | val(y, z)) | val(z, w);
                    Bits right = val(x, y) | (val(y, z) | val(z, w));
                    if (!(left == right) || !left.subset_of(val(x, w)))
                        rep.fail("oplax associativity fails on a triple");
                }
            }
        }

    // vertical restriction: the region of a V-interval contains the nu-image
    // and lies entirely in the vertical tube over its lower end, so the
    // completion value is generated by purely vertical data
    for (int x = 0; x < nm; ++x)
        for (int y = 0; y < nm; ++y) {
            if (!g.vle[x][y])
                continue;
            const Bits& v = val(x, y);
            if (!v.get(g.pyrOmega.id(g.nu[x], g.nu[y]))) {
                rep.fail("vertical value misses the nu-image interval");
                continue;
            }
            auto [a2, b2] = g.m_elems[y];
            auto kb = kf.kbar(x, y);
            for (int t = 0; t < g.Omega.n; ++t) {
                if (!kb[t])
                    continue;
                auto [i, j, c] = g.o_elems[t];
                if (g.phi.phi(c, b2, i) != a2 || g.phi.phi(c, b2, j) != a2) {
                    rep.fail("vertical region leaves the tube over the lower end at M pair (" +
                             std::to_string(x) + "," + std::to_string(y) + ")");
                    break;
                }
            }
        }

    // naturality in gamma: the reindexed value always includes into the direct
    // one; for surjective gamma (no level skipped) the two agree on the nose
    for (int m = 0; m <= std::min(2, g.phi.k() + 1); ++m)
        for (auto& gamma : all_monotone(m, g.phi.k())) {
            bool onto = true;
            {
                std::vector<char> hit(g.phi.k() + 1, 0);
                for (int b : gamma)
                    hit[b] = 1;
                for (char h : hit)
                    onto = onto && h;
            }
            DeltaOpSimplex sub_phi = simplex_restrict(g.phi, gamma);
            GrothData sub = groth_posets(sub_phi);
            ConeFunctor subk = cone_functor(sub);
            auto mmap = reindex_m(sub, g, gamma);
            auto omap = reindex_omega(sub, g, gamma);
            for (auto [x, y] : sub.M.relations()) {
                auto kb = subk.kbar(x, y);
                std::vector<char> img(g.Omega.n, 0);
                for (int t = 0; t < sub.Omega.n; ++t)
                    if (kb[t])
                        img[omap[t]] = 1;
                std::vector<char> pyr_img(npyr, 0);
                for (int t = 0; t < npyr; ++t) {
                    auto [u, v] = g.pyrOmega.elems[t];
                    if (img[u] && img[v])
                        pyr_img[t] = 1;
                }
                auto lhs = up_closure(g.pyrOmega.poset, pyr_img);
                const Bits& rhs = val(mmap[x], mmap[y]);
                for (int t = 0; t < npyr; ++t) {
                    if (lhs[t] && !rhs.get(t)) {
                        rep.fail("naturality comparison not included in direct value");
                        break;
                    }
                    if (onto && bool(lhs[t]) != rhs.get(t)) {
                        rep.fail("naturality equality fails for surjective gamma");
                        break;
                    }
                }
            }
        }
    return rep;
}

Report check_cone_family(int kmax, int nmax)
{
    Report rep;
    int count = 0;
    for (const auto& phi : enumerate_simplices(kmax, nmax)) {
        GrothData g = groth_posets(phi);
        Report r = check_cone(g);
        ++count;
        if (!r.pass) {
            rep.fail("cone checks fail for simplex #" + std::to_string(count) + ": " +
                     r.failures.front());
            if (rep.failures.size() > 4)
                return rep;
        }
    }
    if (count == 0)
        rep.fail("empty simplex family");
    return rep;
}

}  // namespace bihall::tw
