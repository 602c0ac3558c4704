#include "bihall/protoexact.hpp"

#include <algorithm>
#include <numeric>

namespace bihall::pex {

/* ---------------- finite categories ---------------- */

int FinCat::compose(int g, int f) const
{
    require(f >= 0 && f < nmor() && g >= 0 && g < nmor(), Err::InvalidInput, "bad morphism id");
    require(mdst[f] == msrc[g], Err::TypeMismatch, "morphisms not composable");
    int r = comp[g][f];
    require(r >= 0, Err::InvalidInput, "composition table incomplete");
    return r;
}

bool FinCat::is_iso(int m) const
{
    return inverse(m) >= 0;
}

int FinCat::inverse(int m) const
{
    for (int g : hom[mdst[m]][msrc[m]])
        if (comp[g][m] == ident[msrc[m]] && comp[m][g] == ident[mdst[m]])
            return g;
    return -1;
}

std::vector<int> FinCat::isos(int a, int b) const
{
    std::vector<int> out;
    for (int m : hom[a][b])
        if (is_iso(m))
            out.push_back(m);
    return out;
}

void FinCat::validate() const
{
    require(int(ident.size()) == nobj, Err::InvalidInput, "identity table size");
    for (int a = 0; a < nobj; ++a) {
        require(msrc[ident[a]] == a && mdst[ident[a]] == a, Err::InvalidInput, "identity typing");
        for (int b = 0; b < nobj; ++b)
            for (int f : hom[a][b]) {
                require(msrc[f] == a && mdst[f] == b, Err::InvalidInput, "hom table typing");
                require(comp[f][ident[a]] == f && comp[ident[b]][f] == f, Err::InvalidInput,
                        "identity law");
            }
    }
    for (int f = 0; f < nmor(); ++f)
        for (int g = 0; g < nmor(); ++g) {
            if (mdst[f] != msrc[g])
                continue;
            int gf = comp[g][f];
            require(gf >= 0 && msrc[gf] == msrc[f] && mdst[gf] == mdst[g], Err::InvalidInput,
                    "composition typing");
            for (int h = 0; h < nmor(); ++h) {
                if (mdst[g] != msrc[h])
                    continue;
                require(comp[h][gf] == comp[comp[h][g]][f], Err::InvalidInput,
                        "associativity fails");
            }
        }
}

void ProtoExactCat::validate_shape() const
{
    require(int(null_obj.size()) == cat.nobj && int(in_m.size()) == cat.nmor() &&
                int(in_e.size()) == cat.nmor(),
            Err::InvalidInput, "flag table sizes");
}

bool is_pullback(const FinCat& c, int top, int left, int right, int bottom)
{
    // square: W -top-> Z, W -left-> X, Z -right-> Y, X -bottom-> Y
    int W = c.msrc[top], Z = c.mdst[top], X = c.mdst[left], Y = c.mdst[bottom];
    if (c.compose(right, top) != c.compose(bottom, left))
        return false;
    for (int T = 0; T < c.nobj; ++T) {
        std::map<std::pair<int, int>, int> seen;
        for (int t : c.hom[T][W]) {
            auto key = std::make_pair(c.comp[top][t], c.comp[left][t]);
            if (seen.count(key))
                return false;  // not unique
            seen[key] = 1;
        }
        int want = 0;
        for (int u : c.hom[T][Z])
            for (int v : c.hom[T][X])
                if (c.comp[right][u] == c.comp[bottom][v]) {
                    ++want;
                    if (!seen.count({u, v}))
                        return false;
                }
        if (want != int(seen.size()))
            return false;
    }
    (void)Y;
    return true;
}

bool is_pushout(const FinCat& c, int top, int left, int right, int bottom)
{
    int Z = c.mdst[top], X = c.mdst[left], Y = c.mdst[bottom];
    if (c.compose(right, top) != c.compose(bottom, left))
        return false;
    for (int T = 0; T < c.nobj; ++T) {
        std::map<std::pair<int, int>, int> seen;
        for (int t : c.hom[Y][T]) {
            auto key = std::make_pair(c.comp[t][right], c.comp[t][bottom]);
            if (seen.count(key))
                return false;
            seen[key] = 1;
        }
        int want = 0;
        for (int u : c.hom[Z][T])
            for (int v : c.hom[X][T])
                if (c.comp[u][top] == c.comp[v][left]) {
                    ++want;
                    if (!seen.count({u, v}))
                        return false;
                }
        if (want != int(seen.size()))
            return false;
    }
    return true;
}

bool BicartCache::bicartesian(int top, int left, int right, int bottom)
{
    std::array<int, 4> key{top, left, right, bottom};
    auto itp = pull.find(key);
    bool p = itp != pull.end() ? itp->second
                               : (pull[key] = is_pullback(*cat, top, left, right, bottom));
    if (!p)
        return false;
    auto itq = push.find(key);
    return itq != push.end() ? itq->second
                             : (push[key] = is_pushout(*cat, top, left, right, bottom));
}

/* ---------------- proto-exactness ---------------- */

Report check_proto_exact(const ProtoExactCat& a)
{
    Report rep;
    a.validate_shape();
    const FinCat& c = a.cat;

    bool has_null = false;
    for (char z : a.null_obj)
        has_null = has_null || z;
    if (!has_null)
        rep.fail("no null objects");

    // subcategory conditions and monicity (isos belong to M and E)
    for (int x = 0; x < c.nobj; ++x) {
        if (!a.in_m[c.ident[x]] || !a.in_e[c.ident[x]])
            rep.fail("identity missing from M or E at object " + std::to_string(x));
    }
    for (int f = 0; f < c.nmor(); ++f) {
        if (c.is_iso(f) && (!a.in_m[f] || !a.in_e[f]))
            rep.fail("isomorphism missing from M or E");
        for (int g = 0; g < c.nmor(); ++g) {
            if (c.mdst[f] != c.msrc[g])
                continue;
            int gf = c.comp[g][f];
            if (a.in_m[f] && a.in_m[g] && !a.in_m[gf])
                rep.fail("M not closed under composition");
            if (a.in_e[f] && a.in_e[g] && !a.in_e[gf])
                rep.fail("E not closed under composition");
        }
    }

    // condition 3: essentially unique null sub- and quotient-objects,
    // with final/initial comparison functors
    for (int x = 0; x < c.nobj; ++x) {
        // comma (0_M)/x: pairs (z null, m: z -> x in M)
        std::vector<std::pair<int, int>> mcone;
        for (int z = 0; z < c.nobj; ++z) {
            if (!a.null_obj[z])
                continue;
            for (int m : c.hom[z][x])
                if (a.in_m[m])
                    mcone.push_back({z, m});
        }
        if (mcone.empty()) {
            rep.fail("object " + std::to_string(x) + " has no null subobject");
            continue;
        }
        auto comma_mor_count = [&](const std::pair<int, int>& s, const std::pair<int, int>& t) {
            int cnt = 0;
            for (int n : c.hom[s.first][t.first])
                if (c.is_iso(n) && c.comp[t.second][n] == s.second)
                    ++cnt;
            return cnt;
        };
        for (auto& s : mcone)
            for (auto& t : mcone)
                if (comma_mor_count(s, t) != 1)
                    rep.fail("null-subobject comma not contractible at object " +
                             std::to_string(x));
        // every morphism into x factors back through the null subobjects:
        // the comma of the slice comparison under each w is nonempty and
        // connected
        for (int y = 0; y < c.nobj; ++y)
            for (int w : c.hom[y][x]) {
                if (!a.in_m[w])
                    continue;
                std::vector<std::pair<int, int>> fac;  // (index into mcone, h: z -> y)
                for (int i = 0; i < int(mcone.size()); ++i)
                    for (int h : c.hom[mcone[i].first][y])
                        if (c.comp[w][h] == mcone[i].second)
                            fac.push_back({i, h});
                if (fac.empty()) {
                    rep.fail("slice comparison comma empty at object " + std::to_string(x));
                    continue;
                }
                std::vector<int> cls(fac.size());
                std::iota(cls.begin(), cls.end(), 0);
                std::function<int(int)> find = [&](int i) {
                    while (cls[i] != i)
                        i = cls[i] = cls[cls[i]];
                    return i;
                };
                for (int i = 0; i < int(fac.size()); ++i)
                    for (int j = 0; j < int(fac.size()); ++j)
                        for (int n : c.hom[mcone[fac[i].first].first][mcone[fac[j].first].first])
                            if (c.is_iso(n) &&
                                c.comp[mcone[fac[j].first].second][n] ==
                                    mcone[fac[i].first].second &&
                                c.comp[fac[j].second][n] == fac[i].second)
                                cls[find(i)] = find(j);
                int roots = 0;
                for (int i = 0; i < int(fac.size()); ++i)
                    if (find(i) == i)
                        ++roots;
                if (roots != 1)
                    rep.fail("slice comparison comma disconnected at object " +
                             std::to_string(x));
            }
        // dual: null quotient objects
        std::vector<std::pair<int, int>> econe;
        for (int z = 0; z < c.nobj; ++z) {
            if (!a.null_obj[z])
                continue;
            for (int e : c.hom[x][z])
                if (a.in_e[e])
                    econe.push_back({z, e});
        }
        if (econe.empty()) {
            rep.fail("object " + std::to_string(x) + " has no null quotient");
            continue;
        }
        auto ecomma_count = [&](const std::pair<int, int>& s, const std::pair<int, int>& t) {
            int cnt = 0;
            for (int n : c.hom[s.first][t.first])
                if (c.is_iso(n) && c.comp[n][s.second] == t.second)
                    ++cnt;
            return cnt;
        };
        for (auto& s : econe)
            for (auto& t : econe)
                if (ecomma_count(s, t) != 1)
                    rep.fail("null-quotient comma not contractible at object " +
                             std::to_string(x));
        for (int y = 0; y < c.nobj; ++y)
            for (int w : c.hom[x][y]) {
                if (!a.in_e[w])
                    continue;
                std::vector<std::pair<int, int>> fac;  // (index into econe, h: y -> z)
                for (int i = 0; i < int(econe.size()); ++i)
                    for (int h : c.hom[y][econe[i].first])
                        if (c.comp[h][w] == econe[i].second)
                            fac.push_back({i, h});
                if (fac.empty()) {
                    rep.fail("coslice comparison comma empty at object " + std::to_string(x));
                    continue;
                }
                std::vector<int> cls(fac.size());
                std::iota(cls.begin(), cls.end(), 0);
                std::function<int(int)> find = [&](int i) {
                    while (cls[i] != i)
                        i = cls[i] = cls[cls[i]];
                    return i;
                };
                for (int i = 0; i < int(fac.size()); ++i)
                    for (int j = 0; j < int(fac.size()); ++j)
                        for (int n : c.hom[econe[fac[i].first].first][econe[fac[j].first].first])
                            if (c.is_iso(n) &&
                                c.comp[n][econe[fac[i].first].second] ==
                                    econe[fac[j].first].second &&
                                c.comp[n][fac[i].second] == fac[j].second)
                                cls[find(i)] = find(j);
                int roots = 0;
                for (int i = 0; i < int(fac.size()); ++i)
                    if (find(i) == i)
                        ++roots;
                if (roots != 1)
                    rep.fail("coslice comparison comma disconnected at object " +
                             std::to_string(x));
            }
    }
    if (!rep.pass)
        return rep;

    // condition 4: (M,E)-squares are pullbacks iff pushouts
    BicartCache cache{&c, {}, {}};
    for (int g1 = 0; g1 < c.nmor(); ++g1) {
        if (!a.in_m[g1])
            continue;
        for (int f = 0; f < c.nmor(); ++f) {
            if (!a.in_e[f] || c.msrc[f] != c.msrc[g1])
                continue;
            for (int g2 = 0; g2 < c.nmor(); ++g2) {
                if (!a.in_m[g2] || c.msrc[g2] != c.mdst[f])
                    continue;
                for (int fp = 0; fp < c.nmor(); ++fp) {
                    if (!a.in_e[fp] || c.msrc[fp] != c.mdst[g1] || c.mdst[fp] != c.mdst[g2])
                        continue;
                    if (c.comp[fp][g1] != c.comp[g2][f])
                        continue;
                    bool pull = is_pullback(c, g1, f, fp, g2);
                    bool push = is_pushout(c, g1, f, fp, g2);
                    if (pull != push) {
                        rep.fail("an (M,E)-square is a pullback xor a pushout");
                        return rep;
                    }
                }
            }
        }
    }

    // condition 5: pushouts of M along E exist with M/E stability
    for (int g1 = 0; g1 < c.nmor(); ++g1) {
        if (!a.in_m[g1])
            continue;
        for (int f = 0; f < c.nmor(); ++f) {
            if (!a.in_e[f] || c.msrc[f] != c.msrc[g1])
                continue;
            bool found = false;
            for (int g2 = 0; g2 < c.nmor() && !found; ++g2) {
                if (!a.in_m[g2] || c.msrc[g2] != c.mdst[f])
                    continue;
                for (int fp = 0; fp < c.nmor() && !found; ++fp) {
                    if (!a.in_e[fp] || c.msrc[fp] != c.mdst[g1] || c.mdst[fp] != c.mdst[g2])
                        continue;
                    if (c.comp[fp][g1] != c.comp[g2][f])
                        continue;
                    if (is_pushout(c, g1, f, fp, g2))
                        found = true;
                }
            }
            if (!found) {
                rep.fail("pushout of an admissible mono along an admissible epi is missing");
                return rep;
            }
        }
    }

    // condition 6: pullbacks of E along M exist with stability
    for (int fp = 0; fp < c.nmor(); ++fp) {
        if (!a.in_e[fp])
            continue;
        for (int g2 = 0; g2 < c.nmor(); ++g2) {
            if (!a.in_m[g2] || c.mdst[g2] != c.mdst[fp])
                continue;
            bool found = false;
            for (int g1 = 0; g1 < c.nmor() && !found; ++g1) {
                if (!a.in_m[g1] || c.mdst[g1] != c.msrc[fp])
                    continue;
                for (int f = 0; f < c.nmor() && !found; ++f) {
                    if (!a.in_e[f] || c.msrc[f] != c.msrc[g1] || c.mdst[f] != c.msrc[g2])
                        continue;
                    if (c.comp[fp][g1] != c.comp[g2][f])
                        continue;
                    if (is_pullback(c, g1, f, fp, g2))
                        found = true;
                }
            }
            if (!found) {
                rep.fail("pullback of an admissible epi along an admissible mono is missing");
                return rep;
            }
        }
    }
    return rep;
}

/* ---------------- fixtures ---------------- */

ProtoExactCat arr_fixture(const tw::FinPoset& poset)
{
    ProtoExactCat a;
    a.name = "arr";
    std::vector<std::pair<int, int>> objs;
    for (int i = 0; i < poset.n; ++i)
        for (int j = 0; j < poset.n; ++j)
            if (poset.le(i, j))
                objs.push_back({i, j});
    FinCat& c = a.cat;
    c.nobj = int(objs.size());
    c.hom.assign(c.nobj, std::vector<std::vector<int>>(c.nobj));
    auto le2 = [&](int s, int t) {
        return poset.le(objs[s].first, objs[t].first) && poset.le(objs[s].second, objs[t].second);
    };
    for (int s = 0; s < c.nobj; ++s)
        for (int t = 0; t < c.nobj; ++t)
            if (le2(s, t)) {
                int id = int(c.msrc.size());
                c.msrc.push_back(s);
                c.mdst.push_back(t);
                c.hom[s][t].push_back(id);
                a.in_m.push_back(objs[s].first == objs[t].first);
                a.in_e.push_back(objs[s].second == objs[t].second);
                c.mor_names.push_back("");
            }
    c.ident.resize(c.nobj);
    for (int s = 0; s < c.nobj; ++s)
        c.ident[s] = c.hom[s][s][0];
    c.comp.assign(c.nmor(), std::vector<int>(c.nmor(), -1));
    for (int f = 0; f < c.nmor(); ++f)
        for (int g = 0; g < c.nmor(); ++g)
            if (c.mdst[f] == c.msrc[g])
                c.comp[g][f] = c.hom[c.msrc[f]][c.mdst[g]][0];
    for (auto [i, j] : objs) {
        a.null_obj.push_back(i == j);
        c.obj_names.push_back(poset.names[i] + poset.names[j]);
    }
    return a;
}

namespace {

struct Matrix {
    int rows = 0, cols = 0;
    std::vector<int> e;  // row-major
    friend bool operator<(const Matrix& a, const Matrix& b)
    {
        return std::tie(a.rows, a.cols, a.e) < std::tie(b.rows, b.cols, b.e);
    }
};

Matrix matmul(const Matrix& a, const Matrix& b, int q)
{
    Matrix r;
    r.rows = a.rows;
    r.cols = b.cols;
    r.e.assign(r.rows * r.cols, 0);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k)
            if (a.e[i * a.cols + k])
                for (int j = 0; j < b.cols; ++j)
                    r.e[i * r.cols + j] =
                        (r.e[i * r.cols + j] + a.e[i * a.cols + k] * b.e[k * b.cols + j]) % q;
    return r;
}

int matrank(Matrix m, int q)
{
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.e[r * m.cols + col]) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        for (int j = 0; j < m.cols; ++j)
            std::swap(m.e[piv * m.cols + j], m.e[rank * m.cols + j]);
        int inv = 1;
        while ((m.e[rank * m.cols + col] * inv) % q != 1)
            ++inv;
        for (int j = 0; j < m.cols; ++j)
            m.e[rank * m.cols + j] = (m.e[rank * m.cols + j] * inv) % q;
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank || !m.e[r * m.cols + col])
                continue;
            int factor = m.e[r * m.cols + col];
            for (int j = 0; j < m.cols; ++j)
                m.e[r * m.cols + j] =
                    ((m.e[r * m.cols + j] - factor * m.e[rank * m.cols + j]) % q + q * q) % q;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

ProtoExactCat vect_fixture(int q, int dmax)
{
    require(q >= 2 && dmax >= 0 && dmax <= 4, Err::BadParams, "vect fixture needs 2<=q, dmax<=4");
    for (int d = 2; d * d <= q; ++d)
        require(q % d != 0, Err::BadParams, "q must be prime");
    ProtoExactCat a;
    a.name = "vect(" + std::to_string(q) + "," + std::to_string(dmax) + ")";
    FinCat& c = a.cat;
    c.nobj = dmax + 1;
    c.hom.assign(c.nobj, std::vector<std::vector<int>>(c.nobj));
    std::vector<Matrix> mats;
    std::map<Matrix, int> index;
    for (int d = 0; d <= dmax; ++d) {
        c.obj_names.push_back("F^" + std::to_string(d));
        a.null_obj.push_back(d == 0);
        for (int e2 = 0; e2 <= dmax; ++e2) {
            // all e2 x d matrices over F_q
            long long total = 1;
            for (int i = 0; i < d * e2; ++i)
                total *= q;
            for (long long t = 0; t < total; ++t) {
                Matrix m;
                m.rows = e2;
                m.cols = d;
                m.e.resize(d * e2);
                long long v = t;
                for (int i = 0; i < d * e2; ++i) {
                    m.e[i] = int(v % q);
                    v /= q;
                }
                int id = int(mats.size());
                mats.push_back(m);
                index[m] = id;
                c.msrc.push_back(d);
                c.mdst.push_back(e2);
                c.hom[d][e2].push_back(id);
                int rank = matrank(m, q);
                a.in_m.push_back(rank == d);
                a.in_e.push_back(rank == e2);
                c.mor_names.push_back("");
            }
        }
    }
    c.ident.resize(c.nobj);
    for (int d = 0; d <= dmax; ++d) {
        Matrix idm;
        idm.rows = idm.cols = d;
        idm.e.assign(d * d, 0);
        for (int i = 0; i < d; ++i)
            idm.e[i * d + i] = 1;
        c.ident[d] = index.at(idm);
    }
    c.comp.assign(c.nmor(), std::vector<int>(c.nmor(), -1));
    for (int f = 0; f < c.nmor(); ++f)
        for (int g = 0; g < c.nmor(); ++g)
            if (c.mdst[f] == c.msrc[g])
                c.comp[g][f] = index.at(matmul(mats[g], mats[f], q));
    // stash matrices in names for decode
    for (int m = 0; m < c.nmor(); ++m) {
        std::string s;
        for (int x : mats[m].e)
            s += char('0' + x);
        c.mor_names[m] = s;
    }
    a.name += "|q=" + std::to_string(q);
    return a;
}

int vect_dim(const ProtoExactCat& a, int obj)
{
    (void)a;
    return obj;
}

std::vector<std::vector<int>> vect_matrix(const ProtoExactCat& a, int mor)
{
    int rows = a.cat.mdst[mor], cols = a.cat.msrc[mor];
    std::vector<std::vector<int>> m(rows, std::vector<int>(cols, 0));
    const std::string& s = a.cat.mor_names[mor];
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m[i][j] = s[i * cols + j] - '0';
    return m;
}

namespace {

int vect_q(const ProtoExactCat& a)
{
    auto pos = a.name.find("|q=");
    require(pos != std::string::npos, Err::BadParams, "not a vect fixture");
    return std::stoi(a.name.substr(pos + 3));
}

}  // namespace

int vect_dsum_obj(const ProtoExactCat& a, int x, int y)
{
    require(x + y < a.cat.nobj, Err::BudgetExceeded, "direct sum leaves the fixture");
    return x + y;
}

int vect_dsum_mor(const ProtoExactCat& a, int f, int g)
{
    const FinCat& c = a.cat;
    int q = vect_q(a);
    int sf = c.msrc[f], df = c.mdst[f], sg = c.msrc[g], dg = c.mdst[g];
    require(sf + sg < c.nobj && df + dg < c.nobj, Err::BudgetExceeded,
            "direct sum leaves the fixture");
    auto mf = vect_matrix(a, f), mg = vect_matrix(a, g);
    // block diagonal matrix, encoded like the fixture encodes morphisms
    Matrix blk;
    blk.rows = df + dg;
    blk.cols = sf + sg;
    blk.e.assign(blk.rows * blk.cols, 0);
    for (int i = 0; i < df; ++i)
        for (int j = 0; j < sf; ++j)
            blk.e[i * blk.cols + j] = mf[i][j];
    for (int i = 0; i < dg; ++i)
        for (int j = 0; j < sg; ++j)
            blk.e[(df + i) * blk.cols + (sf + j)] = mg[i][j];
    (void)q;
    std::string code;
    for (int x : blk.e)
        code += char('0' + x);
    for (int m : c.hom[blk.cols][blk.rows])
        if (c.mor_names[m] == code)
            return m;
    fail(Err::InvalidInput, "block matrix not found");
}

/* ---------------- diagram shapes ---------------- */

int DiagramShape::cover_id(int x, int y) const
{
    for (int i = 0; i < int(covers.size()); ++i)
        if (covers[i] == std::make_pair(x, y))
            return i;
    fail(Err::InvalidInput, "no such cover");
}

namespace {

struct ShapeBuilder {
    DiagramShape s;
    std::map<std::string, int> byname;

    int node(const std::string& name, bool null_pos)
    {
        auto it = byname.find(name);
        if (it != byname.end())
            return it->second;
        int id = s.poset.n;
        s.poset.n += 1;
        s.poset.names.push_back(name);
        s.null_pos.push_back(null_pos);
        byname[name] = id;
        return id;
    }

    void cover(const std::string& a, const std::string& b, bool m, bool e)
    {
        int x = byname.at(a), y = byname.at(b);
        s.covers.push_back({x, y});
        s.cover_m.push_back(m);
        s.cover_e.push_back(e);
    }

    /* one short exact sequence a >-> b ->> c with fresh null corners */
    void ses(const std::string& tag, const std::string& a, const std::string& b,
             const std::string& c)
    {
        node(a, false);
        node(b, false);
        node(c, false);
        node(tag + ".z0", true);
        node(tag + ".z1", true);
        node(tag + ".z2", true);
        cover(tag + ".z0", a, true, false);
        cover(a, b, true, false);
        cover(a, tag + ".z1", false, true);
        cover(b, c, false, true);
        cover(tag + ".z1", c, true, false);
        cover(c, tag + ".z2", false, true);
        s.bicart.push_back({byname.at(a), byname.at(b), byname.at(tag + ".z1"), byname.at(c)});
    }

    DiagramShape finish(const std::string& name)
    {
        s.name = name;
        // build leq as the reflexive-transitive closure of covers
        s.poset.leq.assign(s.poset.n, std::vector<char>(s.poset.n, 0));
        for (int i = 0; i < s.poset.n; ++i)
            s.poset.leq[i][i] = 1;
        for (auto [x, y] : s.covers)
            s.poset.leq[x][y] = 1;
        for (int k = 0; k < s.poset.n; ++k)
            for (int i = 0; i < s.poset.n; ++i)
                if (s.poset.leq[i][k])
                    for (int j = 0; j < s.poset.n; ++j)
                        if (s.poset.leq[k][j])
                            s.poset.leq[i][j] = 1;
        s.poset.validate();
        return s;
    }
};

std::string pos_name(int i, int j)
{
    return std::to_string(i) + std::to_string(j);
}

}  // namespace

DiagramShape staircase_shape(int n)
{
    DiagramShape s;
    s.name = "staircase" + std::to_string(n);
    std::vector<std::pair<int, int>> objs;
    std::vector<std::vector<int>> id(n + 1, std::vector<int>(n + 1, -1));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            id[i][j] = int(objs.size());
            objs.push_back({i, j});
            s.null_pos.push_back(i == j);
            s.poset.names.push_back(pos_name(i, j));
        }
    s.poset.n = int(objs.size());
    s.poset.leq.assign(s.poset.n, std::vector<char>(s.poset.n, 0));
    for (int a = 0; a < s.poset.n; ++a)
        for (int b = 0; b < s.poset.n; ++b)
            s.poset.leq[a][b] =
                objs[a].first <= objs[b].first && objs[a].second <= objs[b].second;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            if (j + 1 <= n) {
                s.covers.push_back({id[i][j], id[i][j + 1]});
                s.cover_m.push_back(true);
                s.cover_e.push_back(false);
            }
            if (i + 1 <= j) {
                s.covers.push_back({id[i][j], id[i + 1][j]});
                s.cover_m.push_back(false);
                s.cover_e.push_back(true);
            }
        }
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            if (j + 1 <= n && i + 1 <= j)
                s.bicart.push_back({id[i][j], id[i][j + 1], id[i + 1][j], id[i + 1][j + 1]});
    return s;
}

DiagramShape grid_shape(int n, int k)
{
    DiagramShape s;
    s.name = "grid" + std::to_string(n) + "x" + std::to_string(k);
    // positions: pairs p <= q in [n] x [k]
    struct P {
        int i1, j1, i2, j2;
    };
    std::vector<P> objs;
    std::map<std::array<int, 4>, int> id;
    for (int i1 = 0; i1 <= n; ++i1)
        for (int j1 = 0; j1 <= k; ++j1)
            for (int i2 = i1; i2 <= n; ++i2)
                for (int j2 = j1; j2 <= k; ++j2) {
                    id[{i1, j1, i2, j2}] = int(objs.size());
                    objs.push_back({i1, j1, i2, j2});
                    s.null_pos.push_back(i1 == i2 && j1 == j2);
                    s.poset.names.push_back(pos_name(i1, j1) + "-" + pos_name(i2, j2));
                }
    s.poset.n = int(objs.size());
    s.poset.leq.assign(s.poset.n, std::vector<char>(s.poset.n, 0));
    for (int a = 0; a < s.poset.n; ++a)
        for (int b = 0; b < s.poset.n; ++b)
            s.poset.leq[a][b] = objs[a].i1 <= objs[b].i1 && objs[a].j1 <= objs[b].j1 &&
                                objs[a].i2 <= objs[b].i2 && objs[a].j2 <= objs[b].j2;
    auto add_cover = [&](const P& p, std::array<int, 4> to, bool m) {
        auto it = id.find(to);
        if (it == id.end())
            return -1;
        s.covers.push_back({id.at({p.i1, p.j1, p.i2, p.j2}), it->second});
        s.cover_m.push_back(m);
        s.cover_e.push_back(!m);
        return int(s.covers.size()) - 1;
    };
    for (const P& p : objs) {
        if (p.i2 + 1 <= n)
            add_cover(p, {p.i1, p.j1, p.i2 + 1, p.j2}, true);
        if (p.j2 + 1 <= k)
            add_cover(p, {p.i1, p.j1, p.i2, p.j2 + 1}, true);
        if (p.i1 + 1 <= p.i2 || (p.i1 + 1 <= n && p.i1 + 1 <= p.i2))
            if (p.i1 + 1 <= p.i2)
                add_cover(p, {p.i1 + 1, p.j1, p.i2, p.j2}, false);
        if (p.j1 + 1 <= p.j2)
            add_cover(p, {p.i1, p.j1 + 1, p.i2, p.j2}, false);
    }
    // bicartesian: every (M,E) cover square
    for (const P& p : objs) {
        std::vector<std::array<int, 4>> ms, es;
        if (p.i2 + 1 <= n)
            ms.push_back({p.i1, p.j1, p.i2 + 1, p.j2});
        if (p.j2 + 1 <= k)
            ms.push_back({p.i1, p.j1, p.i2, p.j2 + 1});
        if (p.i1 + 1 <= p.i2)
            es.push_back({p.i1 + 1, p.j1, p.i2, p.j2});
        if (p.j1 + 1 <= p.j2)
            es.push_back({p.i1, p.j1 + 1, p.i2, p.j2});
        int a = id.at({p.i1, p.j1, p.i2, p.j2});
        for (auto& mm : ms)
            for (auto& ee : es) {
                std::array<int, 4> dd{ee[0], ee[1], mm[2], mm[3]};
                if (id.count(dd))
                    s.bicart.push_back({a, id.at(mm), id.at(ee), id.at(dd)});
            }
    }
    return s;
}

DiagramShape cross_shape()
{
    ShapeBuilder b;
    b.s.poset.n = 0;
    b.node("b", false);
    b.node("a'", false);
    b.node("b'", false);
    b.node("c'", false);
    b.node("b''", false);
    b.ses("row", "a'", "b'", "c'");
    b.ses("col", "b", "b'", "b''");
    return b.finish("cross");
}

DiagramShape frame_shape()
{
    ShapeBuilder b;
    b.s.poset.n = 0;
    for (const char* nm : {"a", "b", "c", "a'", "c'", "a''", "b''", "c''"})
        b.node(nm, false);
    b.ses("top", "a", "b", "c");
    b.ses("bot", "a''", "b''", "c''");
    b.ses("left", "a", "a'", "a''");
    b.ses("right", "c", "c'", "c''");
    return b.finish("frame");
}

DiagramShape grid33_shape()
{
    ShapeBuilder b;
    b.s.poset.n = 0;
    for (const char* nm : {"a", "b", "c", "a'", "b'", "c'", "a''", "b''", "c''"})
        b.node(nm, false);
    b.ses("r0", "a", "b", "c");
    b.ses("row", "a'", "b'", "c'");
    b.ses("r2", "a''", "b''", "c''");
    b.ses("c0", "a", "a'", "a''");
    b.ses("col", "b", "b'", "b''");
    b.ses("c2", "c", "c'", "c''");
    return b.finish("grid33");
}

namespace {

int name_pos(const DiagramShape& s, const std::string& nm)
{
    for (int i = 0; i < s.poset.n; ++i)
        if (s.poset.names[i] == nm)
            return i;
    fail(Err::InvalidInput, "no position named " + nm);
}

}  // namespace

GreenPositions cross_positions()
{
    DiagramShape s = cross_shape();
    return {name_pos(s, "a'"), name_pos(s, "c'"), name_pos(s, "b"), name_pos(s, "b''")};
}

GreenPositions frame_positions()
{
    DiagramShape s = frame_shape();
    return {name_pos(s, "a'"), name_pos(s, "c'"), name_pos(s, "b"), name_pos(s, "b''")};
}

GreenPositions grid33_positions()
{
    DiagramShape s = grid33_shape();
    return {name_pos(s, "a'"), name_pos(s, "c'"), name_pos(s, "b"), name_pos(s, "b''")};
}

std::vector<int> grid_to_cross()
{
    DiagramShape grid = grid33_shape(), cross = cross_shape();
    std::vector<int> out(cross.poset.n);
    for (int i = 0; i < cross.poset.n; ++i)
        out[i] = name_pos(grid, cross.poset.names[i]);
    return out;
}

std::vector<int> grid_to_frame()
{
    DiagramShape grid = grid33_shape(), frame = frame_shape();
    std::vector<int> out(frame.poset.n);
    for (int i = 0; i < frame.poset.n; ++i) {
        std::string nm = frame.poset.names[i];
        // frame SES tags differ from the grid's of the same boundary rows/cols
        std::string alias = nm;
        auto sub = [&](const std::string& a2, const std::string& b2) {
            if (alias.rfind(a2, 0) == 0)
                alias = b2 + alias.substr(a2.size());
        };
        sub("top.", "r0.");
        sub("bot.", "r2.");
        sub("left.", "c0.");
        sub("right.", "c2.");
        out[i] = name_pos(grid, alias);
    }
    return out;
}

/* ---------------- diagram enumeration ---------------- */

int diagram_map(const DiagramShape& shape, const ProtoExactCat& a, const ExactDiagram& d, int x,
                int y)
{
    require(shape.poset.le(x, y), Err::InvalidInput, "positions not related");
    if (x == y)
        return a.cat.ident[d.ob[x]];
    // walk any cover path
    for (int cid = 0; cid < int(shape.covers.size()); ++cid) {
        auto [u, v] = shape.covers[cid];
        if (u == x && shape.poset.le(v, y)) {
            int rest = diagram_map(shape, a, d, v, y);
            return a.cat.compose(rest, d.mor[cid]);
        }
    }
    fail(Err::InvalidInput, "no cover path between related positions");
}

std::vector<ExactDiagram> exact_diagrams(const DiagramShape& shape, const ProtoExactCat& a,
                                         const EnumOpts& opts)
{
    const FinCat& c = a.cat;
    int n = shape.poset.n;
    // linear extension
    std::vector<int> order, indeg(n, 0);
    {
        std::vector<std::vector<int>> succ(n);
        for (auto [x, y] : shape.covers) {
            succ[x].push_back(y);
            indeg[y]++;
        }
        std::vector<int> stk;
        for (int i = 0; i < n; ++i)
            if (!indeg[i])
                stk.push_back(i);
        while (!stk.empty()) {
            int x = stk.back();
            stk.pop_back();
            order.push_back(x);
            for (int y : succ[x])
                if (--indeg[y] == 0)
                    stk.push_back(y);
        }
        require(int(order.size()) == n, Err::InvalidInput, "shape has a cycle");
    }
    std::vector<int> pos_of(n);
    for (int i = 0; i < n; ++i)
        pos_of[order[i]] = i;

    // covers into each position, ordered by source
    std::vector<std::vector<int>> in_covers(n);
    for (int cid = 0; cid < int(shape.covers.size()); ++cid)
        in_covers[shape.covers[cid].second].push_back(cid);

    BicartCache cache{&c, {}, {}};
    std::vector<ExactDiagram> out;
    ExactDiagram cur;
    cur.ob.assign(n, -1);
    cur.mor.assign(shape.covers.size(), -1);

    // precompute: for every pair x < y with y assigned later, nothing needed;
    // consistency is checked when the later position is filled
    std::function<void(int)> dfs = [&](int step) {
        if (step == n) {
            out.push_back(cur);
            require(int(out.size()) <= opts.max_count, Err::TooLarge,
                    "diagram enumeration exceeds budget");
            return;
        }
        int x = order[step];
        for (int ob = 0; ob < c.nobj; ++ob) {
            if (shape.null_pos[x] && !a.null_obj[ob])
                continue;
            if (!opts.allowed.empty() && !opts.allowed[x].empty() && !opts.allowed[x][ob])
                continue;
            cur.ob[x] = ob;
            // choose maps on in-covers
            const auto& inc = in_covers[x];
            std::function<void(size_t)> pick = [&](size_t t) {
                if (t == inc.size()) {
                    // path consistency: for every position u < x, all cover
                    // paths u -> x must agree
                    for (int u = 0; u < n; ++u) {
                        if (u == x || !shape.poset.le(u, x) || cur.ob[u] < 0)
                            continue;
                        int val = -1;
                        bool ok = true;
                        for (int cid : inc) {
                            int v = shape.covers[cid].first;
                            if (!shape.poset.le(u, v))
                                continue;
                            int m = c.compose(cur.mor[cid],
                                              diagram_map(shape, a, cur, u, v));
                            if (val < 0)
                                val = m;
                            else if (val != m)
                                ok = false;
                        }
                        if (!ok)
                            return;
                    }
                    // bicartesian squares completed at x
                    for (const auto& sq : shape.bicart) {
                        if (sq[3] != x)
                            continue;
                        int t = shape.cover_id(sq[0], sq[1]);
                        int l = shape.cover_id(sq[0], sq[2]);
                        int r = shape.cover_id(sq[1], sq[3]);
                        int b = shape.cover_id(sq[2], sq[3]);
                        if (!cache.bicartesian(cur.mor[t], cur.mor[l], cur.mor[r], cur.mor[b]))
                            return;
                    }
                    dfs(step + 1);
                    return;
                }
                int cid = inc[t];
                int src = shape.covers[cid].first;
                for (int m : c.hom[cur.ob[src]][ob]) {
                    if (shape.cover_m[cid] && !a.in_m[m])
                        continue;
                    if (shape.cover_e[cid] && !a.in_e[m])
                        continue;
                    cur.mor[cid] = m;
                    pick(t + 1);
                    cur.mor[cid] = -1;
                }
            };
            pick(0);
            cur.ob[x] = -1;
        }
    };
    dfs(0);
    (void)pos_of;
    return out;
}

/* ---------------- diagram groupoids ---------------- */

DiagGroupoid::DiagGroupoid(std::shared_ptr<const DiagramShape> shape,
                           std::shared_ptr<const ProtoExactCat> a, std::vector<ExactDiagram> objs)
    : shape_(std::move(shape)), a_(std::move(a)), objs_(std::move(objs))
{
    for (int i = 0; i < int(objs_.size()); ++i)
        index_[objs_[i]] = i;
}

int DiagGroupoid::find_object(const ExactDiagram& d) const
{
    auto it = index_.find(d);
    require(it != index_.end(), Err::InvalidInput, "diagram not in the groupoid");
    return it->second;
}

std::vector<Mor> DiagGroupoid::hom(int x, int y) const
{
    const ExactDiagram& dx = objs_[x];
    const ExactDiagram& dy = objs_[y];
    const FinCat& c = a_->cat;
    int n = shape_->poset.n;
    std::vector<Mor> out;
    Mor cur(n, -1);
    std::function<void(int)> dfs = [&](int t) {
        if (t == n) {
            out.push_back(cur);
            return;
        }
        for (int iso : c.isos(dx.ob[t], dy.ob[t])) {
            cur[t] = iso;
            bool ok = true;
            for (int cid = 0; cid < int(shape_->covers.size()) && ok; ++cid) {
                auto [u, v] = shape_->covers[cid];
                if (cur[u] < 0 || cur[v] < 0)
                    continue;
                if (c.comp[cur[v]][dx.mor[cid]] != c.comp[dy.mor[cid]][cur[u]])
                    ok = false;
            }
            if (ok)
                dfs(t + 1);
            cur[t] = -1;
        }
    };
    dfs(0);
    return out;
}

Mor DiagGroupoid::gcompose(int, int, int, const Mor& g, const Mor& f) const
{
    Mor out(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        out[i] = a_->cat.comp[g[i]][f[i]];
    return out;
}

Mor DiagGroupoid::gidentity(int x) const
{
    Mor out(shape_->poset.n);
    for (int i = 0; i < shape_->poset.n; ++i)
        out[i] = a_->cat.ident[objs_[x].ob[i]];
    return out;
}

Mor DiagGroupoid::ginverse(int, int, const Mor& f) const
{
    Mor out(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        out[i] = a_->cat.inverse(f[i]);
    return out;
}

std::vector<Mor> CoreGroupoid::hom(int x, int y) const
{
    std::vector<Mor> out;
    for (int iso : a_->cat.isos(x, y))
        out.push_back({iso});
    return out;
}

Mor CoreGroupoid::gcompose(int, int, int, const Mor& g, const Mor& f) const
{
    return {a_->cat.comp[g[0]][f[0]]};
}

Mor CoreGroupoid::gidentity(int x) const
{
    return {a_->cat.ident[x]};
}

Mor CoreGroupoid::ginverse(int, int, const Mor& f) const
{
    return {a_->cat.inverse(f[0])};
}

/* ---------------- S-construction ---------------- */

std::shared_ptr<DiagGroupoid> s_groupoid(std::shared_ptr<const ProtoExactCat> a, int n,
                                         const SBudget& budget)
{
    auto shape = std::make_shared<DiagramShape>(staircase_shape(n));
    EnumOpts opts;
    opts.max_count = budget.max_count;
    auto objs = exact_diagrams(*shape, *a, opts);
    return std::make_shared<DiagGroupoid>(shape, a, std::move(objs));
}

int FunctorCatData::find_obj(const ExactDiagram& d) const
{
    for (int i = 0; i < int(objs.size()); ++i)
        if (objs[i] == d)
            return i;
    fail(Err::InvalidInput, "diagram not an object of the functor category");
}

std::shared_ptr<FunctorCatData> functor_category(const DiagramShape& shape,
                                                 std::shared_ptr<const ProtoExactCat> a,
                                                 const EnumOpts& opts)
{
    auto data = std::make_shared<FunctorCatData>();
    data->shape = std::make_shared<DiagramShape>(shape);
    data->base = a;
    data->objs = exact_diagrams(shape, *a, opts);
    const FinCat& c = a->cat;
    int n = shape.poset.n;

    auto out = std::make_shared<ProtoExactCat>();
    FinCat& fc = out->cat;
    fc.nobj = int(data->objs.size());
    fc.hom.assign(fc.nobj, std::vector<std::vector<int>>(fc.nobj));
    // natural transformations, componentwise
    for (int x = 0; x < fc.nobj; ++x)
        for (int y = 0; y < fc.nobj; ++y) {
            const ExactDiagram& dx = data->objs[x];
            const ExactDiagram& dy = data->objs[y];
            std::vector<int> cur(n, -1);
            std::function<void(int)> dfs = [&](int t) {
                if (t == n) {
                    int id = int(fc.msrc.size());
                    fc.msrc.push_back(x);
                    fc.mdst.push_back(y);
                    fc.hom[x][y].push_back(id);
                    fc.mor_names.push_back("");
                    data->mor_comp.push_back(cur);
                    bool allm = true, alle = true;
                    for (int i = 0; i < n; ++i) {
                        allm = allm && a->in_m[cur[i]];
                        alle = alle && a->in_e[cur[i]];
                    }
                    out->in_m.push_back(allm);
                    out->in_e.push_back(alle);
                    return;
                }
                for (int m : c.hom[dx.ob[t]][dy.ob[t]]) {
                    cur[t] = m;
                    bool ok = true;
                    for (int cid = 0; cid < int(shape.covers.size()) && ok; ++cid) {
                        auto [u, v] = shape.covers[cid];
                        if (cur[u] < 0 || cur[v] < 0)
                            continue;
                        if (c.comp[cur[v]][dx.mor[cid]] != c.comp[dy.mor[cid]][cur[u]])
                            ok = false;
                    }
                    if (ok)
                        dfs(t + 1);
                    cur[t] = -1;
                }
            };
            dfs(0);
        }
    fc.ident.resize(fc.nobj);
    for (int x = 0; x < fc.nobj; ++x) {
        const ExactDiagram& dx = data->objs[x];
        std::vector<int> idc(n);
        for (int i = 0; i < n; ++i)
            idc[i] = c.ident[dx.ob[i]];
        for (int m : fc.hom[x][x])
            if (data->mor_comp[m] == idc)
                fc.ident[x] = m;
    }
    fc.comp.assign(fc.nmor(), std::vector<int>(fc.nmor(), -1));
    std::map<std::pair<int, std::vector<int>>, int> index;
    for (int m = 0; m < fc.nmor(); ++m)
        index[{fc.msrc[m] * fc.nobj + fc.mdst[m], data->mor_comp[m]}] = m;
    for (int f = 0; f < fc.nmor(); ++f)
        for (int g = 0; g < fc.nmor(); ++g) {
            if (fc.mdst[f] != fc.msrc[g])
                continue;
            std::vector<int> comp(n);
            for (int i = 0; i < n; ++i)
                comp[i] = c.comp[data->mor_comp[g][i]][data->mor_comp[f][i]];
            fc.comp[g][f] = index.at({fc.msrc[f] * fc.nobj + fc.mdst[g], comp});
        }
    // null objects: pointwise null diagrams
    for (int x = 0; x < fc.nobj; ++x) {
        bool z = true;
        for (int i = 0; i < n; ++i)
            z = z && a->null_obj[data->objs[x].ob[i]];
        out->null_obj.push_back(z);
        fc.obj_names.push_back("F" + std::to_string(x));
    }
    out->name = "fun(" + shape.name + "," + a->name + ")";
    data->cat = out;
    return data;
}

S2Level s2_level(std::shared_ptr<const ProtoExactCat> a, int n, int k, const SBudget& budget)
{
    EnumOpts opts;
    opts.max_count = budget.max_count;
    S2Level lvl;
    lvl.inner = functor_category(staircase_shape(k), a, opts);
    auto shape = std::make_shared<DiagramShape>(staircase_shape(n));
    auto objs = exact_diagrams(*shape, *lvl.inner->cat, opts);
    lvl.gpd = std::make_shared<DiagGroupoid>(shape, lvl.inner->cat, std::move(objs));
    return lvl;
}

std::shared_ptr<DiagGroupoid> s2_groupoid(std::shared_ptr<const ProtoExactCat> a, int n, int k,
                                          S2Mode mode, const SBudget& budget)
{
    EnumOpts opts;
    opts.max_count = budget.max_count;
    if (mode == S2Mode::Iterated)
        return s2_level(a, n, k, budget).gpd;
    // monoidal: k disjoint staircases of length n
    DiagramShape stair = staircase_shape(n);
    DiagramShape sh;
    sh.name = "monoidal" + std::to_string(n) + "x" + std::to_string(k);
    sh.poset.n = stair.poset.n * k;
    sh.poset.leq.assign(sh.poset.n, std::vector<char>(sh.poset.n, 0));
    for (int copy = 0; copy < k; ++copy) {
        int off = copy * stair.poset.n;
        for (int i = 0; i < stair.poset.n; ++i) {
            sh.poset.names.push_back(std::to_string(copy) + ":" + stair.poset.names[i]);
            sh.null_pos.push_back(stair.null_pos[i]);
            for (int j = 0; j < stair.poset.n; ++j)
                sh.poset.leq[off + i][off + j] = stair.poset.leq[i][j];
        }
        for (int cid = 0; cid < int(stair.covers.size()); ++cid) {
            sh.covers.push_back({off + stair.covers[cid].first, off + stair.covers[cid].second});
            sh.cover_m.push_back(stair.cover_m[cid]);
            sh.cover_e.push_back(stair.cover_e[cid]);
        }
        for (auto sq : stair.bicart)
            sh.bicart.push_back({off + sq[0], off + sq[1], off + sq[2], off + sq[3]});
    }
    // fix null_pos size when k = 0
    sh.null_pos.resize(sh.poset.n);
    auto shape = std::make_shared<DiagramShape>(std::move(sh));
    auto objs = exact_diagrams(*shape, *a, opts);
    return std::make_shared<DiagGroupoid>(shape, a, std::move(objs));
}

ExactDiagram restrict_diagram(const DiagramShape& sub, const DiagramShape& big,
                              const std::vector<int>& pos_map, const ProtoExactCat& a,
                              const ExactDiagram& d)
{
    ExactDiagram out;
    out.ob.resize(sub.poset.n);
    for (int i = 0; i < sub.poset.n; ++i)
        out.ob[i] = d.ob[pos_map[i]];
    for (auto [x, y] : sub.covers)
        out.mor.push_back(diagram_map(big, a, d, pos_map[x], pos_map[y]));
    return out;
}

GreenDiagrams green_diagrams(std::shared_ptr<const ProtoExactCat> a, const SBudget& budget)
{
    EnumOpts opts;
    opts.max_count = budget.max_count;
    auto shp_cross = std::make_shared<DiagramShape>(cross_shape());
    auto shp_frame = std::make_shared<DiagramShape>(frame_shape());
    auto shp_grid = std::make_shared<DiagramShape>(grid33_shape());
    GreenDiagrams g;
    g.plus = std::make_shared<DiagGroupoid>(shp_cross, a, exact_diagrams(*shp_cross, *a, opts));
    g.frame = std::make_shared<DiagGroupoid>(shp_frame, a, exact_diagrams(*shp_frame, *a, opts));
    g.grid = std::make_shared<DiagGroupoid>(shp_grid, a, exact_diagrams(*shp_grid, *a, opts));
    auto to_cross = grid_to_cross();
    auto to_frame = grid_to_frame();
    for (int i = 0; i < g.grid->size(); ++i) {
        g.grid_to_plus.push_back(g.plus->find_object(
            restrict_diagram(*shp_cross, *shp_grid, to_cross, *a, g.grid->object(i))));
        g.grid_to_frame.push_back(g.frame->find_object(
            restrict_diagram(*shp_frame, *shp_grid, to_frame, *a, g.grid->object(i))));
    }
    return g;
}

}  // namespace bihall::pex
