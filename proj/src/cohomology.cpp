#include "paperfold/cohomology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "paperfold/errors.hpp"
#include "paperfold/spectral.hpp"

namespace paperfold {

namespace {

// ---------------------------------------------------------------------------
// Collaring: legal windows of the fixed point and their closure under the
// substitution.
// ---------------------------------------------------------------------------

struct Window {
    Coords shape;
    std::vector<int> letters;  // axis 1 fastest

    friend auto operator<=>(const Window&, const Window&) = default;
};

std::size_t window_cells(const Coords& shape) {
    std::size_t n = 1;
    for (int s : shape) n *= static_cast<std::size_t>(s);
    return n;
}

// Extracts the sub-window of `shape` at local origin `o` (axis 1 fastest).
Window sub_window(const Coords& src_shape, const std::vector<int>& src, const Coords& o,
                  const Coords& shape) {
    const int d = static_cast<int>(shape.size());
    Window w;
    w.shape = shape;
    w.letters.resize(window_cells(shape));
    Coords rel(d, 0);
    for (std::size_t idx = 0; idx < w.letters.size(); ++idx) {
        std::size_t lin = 0, stride = 1;
        for (int i = 0; i < d; ++i) {
            lin += stride * static_cast<std::size_t>(o[i] + rel[i]);
            stride *= static_cast<std::size_t>(src_shape[i]);
        }
        w.letters[idx] = src[lin];
        for (int i = 0; i < d; ++i) {
            if (++rel[i] < shape[i]) break;
            rel[i] = 0;
        }
    }
    return w;
}

// Applies the block rule to every cell of a window; the shape doubles.
Window expand_window(const BlockRule& rule, const Window& w) {
    const int d = rule.d;
    Window out;
    out.shape.resize(d);
    for (int i = 0; i < d; ++i) out.shape[i] = 2 * w.shape[i];
    out.letters.resize(window_cells(out.shape));

    Coords x(d, 0);
    for (std::size_t idx = 0; idx < w.letters.size(); ++idx) {
        const auto& block = rule.images[w.letters[idx]];
        for (int delta = 0; delta < (1 << d); ++delta) {
            std::size_t lin = 0, stride = 1;
            for (int i = 0; i < d; ++i) {
                lin += stride * static_cast<std::size_t>(2 * x[i] + (delta >> i & 1));
                stride *= static_cast<std::size_t>(out.shape[i]);
            }
            out.letters[lin] = block[delta];
        }
        for (int i = 0; i < d; ++i) {
            if (++x[i] < w.shape[i]) break;
            x[i] = 0;
        }
    }
    return out;
}

// All sub-windows of `shape` fully contained in (src_shape, src).
void collect_sub_windows(const Coords& src_shape, const std::vector<int>& src,
                         const Coords& shape, std::vector<Window>& out) {
    const int d = static_cast<int>(shape.size());
    for (int i = 0; i < d; ++i)
        if (src_shape[i] < shape[i]) return;
    Coords o(d, 0);
    while (true) {
        out.push_back(sub_window(src_shape, src, o, shape));
        int i = 0;
        for (; i < d; ++i) {
            if (++o[i] <= src_shape[i] - shape[i]) break;
            o[i] = 0;
        }
        if (i == d) break;
    }
}

}  // namespace

CollaredRule collar_letters(const BlockSubstitution& base, std::size_t window_budget) {
    // Grow a legal central patch from the standard seed.
    SymbolicPattern patch = seed(base.dimension());
    while (patch.shape[0] < 8) patch = substitute(patch, base);
    return collar_letters(base.as_block_rule(), patch.shape, patch.cells, window_budget);
}

CollaredRule collar_letters(const BlockRule& rule, const Coords& patch_shape,
                            const std::vector<int>& patch_letters,
                            std::size_t window_budget) {
    rule.validate();
    const int d = rule.d;
    {
        const PrimitivityResult pr = is_primitive(rule, 8);
        if (!pr.primitive)
            throw std::invalid_argument("collar_letters requires a primitive substitution");
    }

    // Canonical window shapes: the 3^d collar window and, per axis, the
    // (3+1)-window that witnesses an adjacent pair of collared letters.
    std::vector<Coords> shapes;
    shapes.push_back(Coords(d, 3));
    for (int a = 0; a < d; ++a) {
        Coords s(d, 3);
        s[a] = 4;
        shapes.push_back(s);
    }

    // Grow the starting patch until every canonical shape fits.
    Window patch{patch_shape, patch_letters};
    if (window_cells(patch.shape) != patch.letters.size())
        throw std::invalid_argument("patch letters do not match its shape");
    while (*std::min_element(patch.shape.begin(), patch.shape.end()) < 4)
        patch = expand_window(rule, patch);

    std::set<Window> known;
    std::deque<Window> todo;
    auto add = [&](Window&& w) {
        if (known.insert(w).second) {
            if (known.size() > window_budget)
                throw BudgetError("collar_letters: window closure exceeds budget");
            todo.push_back(std::move(w));
        }
    };

    {
        std::vector<Window> init;
        for (const auto& s : shapes) collect_sub_windows(patch.shape, patch.letters, s, init);
        for (auto& w : init) add(std::move(w));
    }

    // Close under the substitution: every sub-window of the image of a legal
    // window is legal.
    while (!todo.empty()) {
        const Window w = std::move(todo.front());
        todo.pop_front();
        const Window expanded = expand_window(rule, w);
        std::vector<Window> subs;
        for (const auto& s : shapes)
            collect_sub_windows(expanded.shape, expanded.letters, s, subs);
        for (auto& sw : subs) add(std::move(sw));
    }

    // Index the 3^d windows: these are the collared letters.
    CollaredRule out;
    out.base_alphabet = rule.alphabet;
    std::map<std::vector<int>, int> collar_id;
    for (const auto& w : known) {
        if (w.shape == Coords(d, 3)) {
            const int id = static_cast<int>(out.windows.size());
            collar_id.emplace(w.letters, id);
            out.windows.push_back(w.letters);
        }
    }

    const Coords shape3(d, 3);
    std::size_t centre = 0;
    {
        std::size_t stride = 1;
        for (int i = 0; i < d; ++i) {
            centre += stride;
            stride *= 3;
        }
    }
    for (const auto& w : out.windows) out.underlying.push_back(w[centre]);

    // Induced rule: the children of the centre cell carry fully determined
    // collars inside the expanded window.
    out.rule.d = d;
    out.rule.alphabet = static_cast<int>(out.windows.size());
    out.rule.images.resize(out.windows.size());
    for (std::size_t c = 0; c < out.windows.size(); ++c) {
        const Window expanded = expand_window(rule, Window{shape3, out.windows[c]});
        auto& block = out.rule.images[c];
        block.resize(std::size_t{1} << d);
        for (int delta = 0; delta < (1 << d); ++delta) {
            Coords o(d);
            for (int i = 0; i < d; ++i) o[i] = 1 + (delta >> i & 1);
            const Window child = sub_window(expanded.shape, expanded.letters, o, shape3);
            const auto it = collar_id.find(child.letters);
            if (it == collar_id.end())
                throw std::logic_error("collar closure missed a child window");
            block[delta] = it->second;
        }
    }

    // Legal adjacent pairs, read off the (3+1)-windows.
    out.adjacent.resize(d);
    for (int a = 0; a < d; ++a) {
        Coords shape4(d, 3);
        shape4[a] = 4;
        std::set<std::pair<int, int>> pairs;
        for (const auto& w : known) {
            if (w.shape != shape4) continue;
            const Window left = sub_window(w.shape, w.letters, Coords(d, 0), shape3);
            Coords o(d, 0);
            o[a] = 1;
            const Window right = sub_window(w.shape, w.letters, o, shape3);
            const auto li = collar_id.find(left.letters);
            const auto ri = collar_id.find(right.letters);
            if (li == collar_id.end() || ri == collar_id.end())
                throw std::logic_error("pair window names an unknown collared letter");
            pairs.emplace(li->second, ri->second);
        }
        out.adjacent[a].assign(pairs.begin(), pairs.end());
    }
    out.rule.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Approximant complex.
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }

    // Dense class indices in first-token order.
    std::vector<int> classes(std::size_t& count) {
        std::vector<int> cls(parent.size(), -1);
        count = 0;
        for (std::size_t i = 0; i < parent.size(); ++i) {
            const int r = find(static_cast<int>(i));
            if (cls[r] < 0) cls[r] = static_cast<int>(count++);
            cls[i] = cls[r];
        }
        return cls;
    }
};

void check_zero(const IntMat& m, const char* what) {
    if (!m.is_zero()) throw std::logic_error(std::string("consistency failure: ") + what);
}

CellComplex ap_complex_1d(const CollaredRule& cr) {
    const int n = cr.rule.alphabet;

    // Vertex tokens: (edge, 0 = left endpoint, 1 = right endpoint).
    UnionFind uf(2 * static_cast<std::size_t>(n));
    for (const auto& [a, b] : cr.adjacent[0]) uf.unite(2 * a + 1, 2 * b);
    std::size_t vcount = 0;
    const std::vector<int> vclass = uf.classes(vcount);

    CellComplex cx;
    cx.dim = 1;
    cx.cells = {vcount, static_cast<std::size_t>(n)};
    cx.boundary.resize(2);
    cx.boundary[0] = IntMat(0, vcount);
    cx.boundary[1] = IntMat(vcount, n);
    for (int e = 0; e < n; ++e) {
        cx.boundary[1].at(vclass[2 * e + 1], e) += 1;
        cx.boundary[1].at(vclass[2 * e], e) -= 1;
    }

    cx.self_map.resize(2);
    cx.self_map[1] = IntMat(n, n);
    for (int e = 0; e < n; ++e)
        for (int child : cr.rule.images[e]) cx.self_map[1].at(child, e) += 1;

    cx.self_map[0] = IntMat(vcount, vcount);
    std::vector<int> vimage(vcount, -1);
    for (int e = 0; e < n; ++e) {
        const int left = vclass[2 * cr.rule.images[e][0]];
        const int right = vclass[2 * cr.rule.images[e][1] + 1];
        for (const auto& [token, img] :
             {std::pair<int, int>{2 * e, left}, {2 * e + 1, right}}) {
            const int v = vclass[token];
            if (vimage[v] == -1)
                vimage[v] = img;
            else if (vimage[v] != img)
                throw std::logic_error("vertex map is not well-defined");
        }
    }
    for (std::size_t v = 0; v < vcount; ++v) cx.self_map[0].at(vimage[v], v) = 1;

    cx.check_boundary_squared();
    cx.check_chain_map();
    return cx;
}

CellComplex ap_complex_2d(const CollaredRule& cr) {
    const int n = cr.rule.alphabet;
    // Sides: 0 = south, 1 = east, 2 = north, 3 = west.
    // Corners: 0 = SW, 1 = SE, 2 = NW, 3 = NE.
    enum { S = 0, E = 1, N = 2, W = 3 };
    enum { SW = 0, SE = 1, NW = 2, NE = 3 };
    auto etok = [n](int tile, int side) { return tile + n * side; };
    auto vtok = [n](int tile, int corner) { return tile + n * corner; };

    UnionFind euf(4 * static_cast<std::size_t>(n));
    UnionFind vuf(4 * static_cast<std::size_t>(n));
    for (const auto& [a, b] : cr.adjacent[0]) {  // b to the east of a
        euf.unite(etok(a, E), etok(b, W));
        vuf.unite(vtok(a, SE), vtok(b, SW));
        vuf.unite(vtok(a, NE), vtok(b, NW));
    }
    for (const auto& [a, c] : cr.adjacent[1]) {  // c to the north of a
        euf.unite(etok(a, N), etok(c, S));
        vuf.unite(vtok(a, NW), vtok(c, SW));
        vuf.unite(vtok(a, NE), vtok(c, SE));
    }
    std::size_t ecount = 0, vcount = 0;
    const std::vector<int> eclass = euf.classes(ecount);
    const std::vector<int> vclass = vuf.classes(vcount);

    CellComplex cx;
    cx.dim = 2;
    cx.cells = {vcount, ecount, static_cast<std::size_t>(n)};
    cx.boundary.resize(3);
    cx.boundary[0] = IntMat(0, vcount);
    cx.boundary[1] = IntMat(vcount, ecount);
    cx.boundary[2] = IntMat(ecount, n);

    // Edges are oriented +x (south/north) or +y (east/west).
    // Face boundary, counterclockwise: south + east - north - west.
    for (int t = 0; t < n; ++t) {
        cx.boundary[2].at(eclass[etok(t, S)], t) += 1;
        cx.boundary[2].at(eclass[etok(t, E)], t) += 1;
        cx.boundary[2].at(eclass[etok(t, N)], t) -= 1;
        cx.boundary[2].at(eclass[etok(t, W)], t) -= 1;
    }

    // Endpoint classes per edge token; must agree inside an edge class.
    std::vector<int> tail(ecount, -1), head(ecount, -1);
    auto set_ends = [&](int e, int tl, int hd) {
        if (tail[e] == -1) {
            tail[e] = tl;
            head[e] = hd;
        } else if (tail[e] != tl || head[e] != hd) {
            throw std::logic_error("edge endpoints are not well-defined");
        }
    };
    for (int t = 0; t < n; ++t) {
        set_ends(eclass[etok(t, S)], vclass[vtok(t, SW)], vclass[vtok(t, SE)]);
        set_ends(eclass[etok(t, N)], vclass[vtok(t, NW)], vclass[vtok(t, NE)]);
        set_ends(eclass[etok(t, E)], vclass[vtok(t, SE)], vclass[vtok(t, NE)]);
        set_ends(eclass[etok(t, W)], vclass[vtok(t, SW)], vclass[vtok(t, NW)]);
    }
    for (std::size_t e = 0; e < ecount; ++e) {
        cx.boundary[1].at(head[e], e) += 1;
        cx.boundary[1].at(tail[e], e) -= 1;
    }

    cx.self_map.resize(3);
    cx.self_map[2] = IntMat(n, n);
    for (int t = 0; t < n; ++t)
        for (int child : cr.rule.images[t]) cx.self_map[2].at(child, t) += 1;

    // Child block positions: delta code = dx + 2*dy.
    cx.self_map[1] = IntMat(ecount, ecount);
    {
        std::vector<std::vector<std::pair<int, int>>> image(ecount);  // sorted (class, coeff)
        std::vector<bool> seen(ecount, false);
        auto record = [&](int e, std::vector<int> chain) {
            std::sort(chain.begin(), chain.end());
            std::vector<std::pair<int, int>> packed;
            for (int c : chain) {
                if (!packed.empty() && packed.back().first == c)
                    ++packed.back().second;
                else
                    packed.emplace_back(c, 1);
            }
            if (!seen[e]) {
                seen[e] = true;
                image[e] = std::move(packed);
            } else if (image[e] != packed) {
                throw std::logic_error("edge map is not well-defined");
            }
        };
        for (int t = 0; t < n; ++t) {
            const auto& kids = cr.rule.images[t];
            record(eclass[etok(t, S)], {eclass[etok(kids[0], S)], eclass[etok(kids[1], S)]});
            record(eclass[etok(t, N)], {eclass[etok(kids[2], N)], eclass[etok(kids[3], N)]});
            record(eclass[etok(t, W)], {eclass[etok(kids[0], W)], eclass[etok(kids[2], W)]});
            record(eclass[etok(t, E)], {eclass[etok(kids[1], E)], eclass[etok(kids[3], E)]});
        }
        for (std::size_t e = 0; e < ecount; ++e)
            for (const auto& [c, coeff] : image[e]) cx.self_map[1].at(c, e) += coeff;
    }

    cx.self_map[0] = IntMat(vcount, vcount);
    {
        std::vector<int> vimage(vcount, -1);
        auto record = [&](int v, int img) {
            if (vimage[v] == -1)
                vimage[v] = img;
            else if (vimage[v] != img)
                throw std::logic_error("vertex map is not well-defined");
        };
        for (int t = 0; t < n; ++t) {
            const auto& kids = cr.rule.images[t];
            record(vclass[vtok(t, SW)], vclass[vtok(kids[0], SW)]);
            record(vclass[vtok(t, SE)], vclass[vtok(kids[1], SE)]);
            record(vclass[vtok(t, NW)], vclass[vtok(kids[2], NW)]);
            record(vclass[vtok(t, NE)], vclass[vtok(kids[3], NE)]);
        }
        for (std::size_t v = 0; v < vcount; ++v) cx.self_map[0].at(vimage[v], v) = 1;
    }

    cx.check_boundary_squared();
    cx.check_chain_map();
    return cx;
}

}  // namespace

void CellComplex::check_boundary_squared() const {
    for (int q = 2; q <= dim; ++q) check_zero(boundary[q - 1] * boundary[q], "boundary^2 != 0");
}

void CellComplex::check_chain_map() const {
    for (int q = 1; q <= dim; ++q)
        check_zero(boundary[q] * self_map[q] - self_map[q - 1] * boundary[q],
                   "self-map is not a chain map");
}

CellComplex ap_complex(const CollaredRule& collared) {
    if (collared.rule.d == 1) return ap_complex_1d(collared);
    if (collared.rule.d == 2) return ap_complex_2d(collared);
    throw std::invalid_argument("ap_complex supports dimensions 1 and 2 only");
}

// ---------------------------------------------------------------------------
// Cohomology of the approximant.
// ---------------------------------------------------------------------------

namespace {

class ExactSolver {
  public:
    explicit ExactSolver(const IntMat& a) : rows_(a.rows()), cols_(a.cols()) {
        SmithOptions opt;
        opt.want_uinv = opt.want_vinv = false;
        s_ = smith_normal_form(a, opt);
    }

    std::optional<IntMat> solve(const IntMat& b) const {
        if (b.rows() != rows_) throw std::invalid_argument("solve shape mismatch");
        const IntMat ub = s_.u * b;
        IntMat y(cols_, b.cols());
        for (std::size_t j = 0; j < b.cols(); ++j) {
            for (std::size_t i = 0; i < rows_; ++i) {
                const Int& rhs = ub.at(i, j);
                if (i < s_.rank) {
                    if (rhs % s_.d.at(i, i) != 0) return std::nullopt;
                    y.at(i, j) = rhs / s_.d.at(i, i);
                } else if (rhs != 0) {
                    return std::nullopt;
                }
            }
        }
        return s_.v * y;
    }

  private:
    SmithResult s_;
    std::size_t rows_, cols_;
};

Int positive_mod(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

void EndomorphismOnGroups::validate() const {
    const std::size_t t = group.torsion.size();
    const std::size_t total = t + group.free_rank;
    if (matrix.rows() != total || matrix.cols() != total)
        throw std::invalid_argument("endomorphism matrix has wrong shape");
    for (std::size_t i = 0; i + 1 < t; ++i)
        if (group.torsion[i + 1] % group.torsion[i] != 0)
            throw std::invalid_argument("torsion is not in invariant-factor form");
    for (std::size_t j = 0; j < t; ++j) {
        for (std::size_t i = t; i < total; ++i)
            if (matrix.at(i, j) != 0)
                throw std::invalid_argument(
                    "endomorphism sends a torsion generator outside the torsion subgroup");
        for (std::size_t i = 0; i < t; ++i)
            if ((group.torsion[j] * matrix.at(i, j)) % group.torsion[i] != 0)
                throw std::invalid_argument("endomorphism does not respect torsion orders");
    }
}

std::vector<EndomorphismOnGroups> cohomology_of_complex(const CellComplex& cx) {
    cx.check_boundary_squared();
    cx.check_chain_map();

    std::vector<EndomorphismOnGroups> out;
    for (int q = 0; q <= cx.dim; ++q) {
        const std::size_t nq = cx.cells[q];
        const IntMat delta_q =
            q < cx.dim ? cx.boundary[q + 1].transposed() : IntMat(0, nq);
        const IntMat delta_prev =
            q >= 1 ? cx.boundary[q].transposed() : IntMat(nq, 0);

        const IntMat kernel = kernel_basis(delta_q);
        const std::size_t r = kernel.cols();
        ExactSolver in_kernel(kernel);

        const auto y = in_kernel.solve(delta_prev);
        if (!y) throw std::logic_error("coboundary image escapes the cocycle lattice");

        SmithOptions opt;
        opt.want_v = opt.want_vinv = false;
        opt.want_u = opt.want_uinv = true;
        const SmithResult sy = smith_normal_form(*y, opt);

        std::vector<std::size_t> kept;   // presentation coordinates that survive
        std::vector<Int> torsion;
        for (std::size_t i = 0; i < sy.rank; ++i)
            if (sy.d.at(i, i) >= 2) {
                kept.push_back(i);
                torsion.push_back(sy.d.at(i, i));
            }
        const std::size_t torsion_count = kept.size();
        for (std::size_t i = sy.rank; i < r; ++i) kept.push_back(i);

        EndomorphismOnGroups g;
        g.group.free_rank = r - sy.rank;
        g.group.torsion = torsion;

        const IntMat generators = kernel * sy.u_inv.columns(kept);
        const IntMat mapped = cx.self_map[q].transposed() * generators;
        const auto z = in_kernel.solve(mapped);
        if (!z) throw std::logic_error("induced map leaves the cocycle lattice");
        const IntMat coords = sy.u * *z;

        g.matrix = IntMat(kept.size(), kept.size());
        for (std::size_t col = 0; col < kept.size(); ++col) {
            for (std::size_t row = 0; row < kept.size(); ++row) {
                const Int& value = coords.at(kept[row], col);
                if (row < torsion_count)
                    g.matrix.at(row, col) = positive_mod(value, torsion[row]);
                else
                    g.matrix.at(row, col) = value;
            }
            if (col < torsion_count)
                for (std::size_t row = torsion_count; row < kept.size(); ++row)
                    if (g.matrix.at(row, col) != 0)
                        throw std::logic_error("induced map is not well-defined on torsion");
        }
        g.validate();
        out.push_back(std::move(g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Direct limits.
// ---------------------------------------------------------------------------

namespace {

// Invariant factors (>= 2) of the subgroup of sum Z/t_i generated by the
// columns of v.
std::vector<Int> subgroup_invariants(const IntMat& v, const std::vector<Int>& t) {
    const std::size_t n = t.size();
    IntMat m(n, v.cols() + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < v.cols(); ++j) m.at(i, j) = v.at(i, j);
        m.at(i, v.cols() + i) = t[i];
    }
    SmithOptions opt;
    opt.want_u = opt.want_v = opt.want_vinv = false;
    opt.want_uinv = true;
    const SmithResult s = smith_normal_form(m, opt);
    if (s.rank != n) throw std::logic_error("torsion lattice lost rank");

    // Basis of the generated lattice: d_i * (columns of u_inv).
    IntMat basis(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) basis.at(i, j) = s.u_inv.at(i, j) * s.d.at(j, j);
    IntMat relations(n, n);
    for (std::size_t i = 0; i < n; ++i) relations.at(i, i) = t[i];
    const auto x = solve_exact(basis, relations);
    if (!x) throw std::logic_error("torsion relations escape the subgroup lattice");

    std::vector<Int> factors;
    for (const Int& f : smith_normal_form(*x, SmithOptions{}).invariant_factors())
        if (f >= 2) factors.push_back(f);
    return factors;
}

std::vector<std::uint64_t> prime_support(std::uint64_t m) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) primes.push_back(m);
    return primes;
}

// Product of (x - root)^mult over the given roots, as a coefficient vector.
std::vector<Int> linear_factor_product(
    const std::vector<std::pair<Int, std::size_t>>& roots) {
    std::vector<Int> poly{1};
    for (const auto& [root, mult] : roots)
        for (std::size_t i = 0; i < mult; ++i) {
            std::vector<Int> next(poly.size() + 1);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] += poly[k];
                next[k] -= root * poly[k];
            }
            poly = std::move(next);
        }
    return poly;
}

std::vector<Int> coker_invariants(const IntMat& b, std::size_t k) {
    std::vector<Int> inv;
    const IntMat bk = b.power(k);
    SmithOptions opt;
    opt.want_u = opt.want_uinv = opt.want_v = opt.want_vinv = false;
    for (const Int& f : smith_normal_form(bk, opt).invariant_factors())
        if (f >= 2) inv.push_back(f);
    return inv;
}

}  // namespace

DirectLimitGroup direct_limit(const EndomorphismOnGroups& e, int k_stab,
                              const DirectLimitGroup* candidate) {
    e.validate();
    DirectLimitGroup out;
    const std::size_t t = e.group.torsion.size();
    const std::size_t f = e.group.free_rank;

    // Finite part: iterate the image of the torsion subgroup until it
    // stabilizes; the endomorphism is then an automorphism of it.
    if (t > 0) {
        IntMat a_tt(t, t);
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = 0; j < t; ++j) a_tt.at(i, j) = e.matrix.at(i, j);

        IntMat gens = IntMat::identity(t);
        std::vector<Int> prev = subgroup_invariants(gens, e.group.torsion);
        while (true) {
            gens = a_tt * gens;
            for (std::size_t i = 0; i < t; ++i)
                for (std::size_t j = 0; j < gens.cols(); ++j)
                    gens.at(i, j) = positive_mod(gens.at(i, j), e.group.torsion[i]);
            std::vector<Int> cur = subgroup_invariants(gens, e.group.torsion);
            if (cur == prev) break;
            prev = std::move(cur);
        }
        out.torsion = prev;
    }

    // Free part: restrict to the eventual image lattice.
    bool certified = true;
    std::ostringstream note;
    if (f > 0) {
        IntMat a_ff(f, f);
        for (std::size_t i = 0; i < f; ++i)
            for (std::size_t j = 0; j < f; ++j) a_ff.at(i, j) = e.matrix.at(t + i, t + j);

        const IntMat lattice = image_basis_saturated(a_ff.power(f));
        const std::size_t rho = lattice.cols();
        if (rho > 0) {
            const auto b_opt = solve_exact(lattice, a_ff * lattice);
            if (!b_opt) throw std::logic_error("eventual image lattice is not invariant");
            const IntMat b = *b_opt;

            const auto roots = integer_roots(characteristic_polynomial(b));
            if (!roots) {
                certified = false;
                note << "characteristic polynomial does not split over Z; ";
            } else {
                for (const auto& [root, mult] : *roots) {
                    (void)mult;
                    if (root == 0) throw std::logic_error("eventual restriction is singular");
                }
                std::size_t n_unit = 0;
                std::map<std::uint64_t, std::size_t> expanding;  // magnitude -> multiplicity
                // Roots partitioned by the prime support of their magnitude;
                // the unit roots +-1 form their own group.
                std::vector<std::pair<Int, std::size_t>> unit_roots;
                std::map<std::vector<std::uint64_t>, std::vector<std::pair<Int, std::size_t>>>
                    classes;
                for (const auto& [root, mult] : *roots) {
                    if (root == 1 || root == -1) {
                        n_unit += mult;
                        unit_roots.emplace_back(root, mult);
                    } else {
                        const std::uint64_t m = abs(root).convert_to<std::uint64_t>();
                        expanding[m] += mult;
                        classes[prime_support(m)].emplace_back(root, mult);
                    }
                }
                out.free_rank = n_unit;
                for (const auto& [m, mult] : expanding) out.localized.emplace_back(m, mult);

                // The unit-eigenvalue quotient always splits off as a free
                // summand, and an expanding class whose magnitudes share one
                // prime support is a free module over that localization.  Only
                // distinct prime supports need an integral spanning check.
                if (classes.size() > 1) {
                    std::vector<std::pair<Int, std::size_t>> all_expanding;
                    for (const auto& [support, cls_roots] : classes) {
                        (void)support;
                        all_expanding.insert(all_expanding.end(), cls_roots.begin(),
                                             cls_roots.end());
                    }
                    const IntMat exp_lattice = column_hermite_basis(kernel_basis(
                        evaluate_polynomial(linear_factor_product(all_expanding), b)
                            .power(rho)));
                    ExactSolver in_exp(exp_lattice);

                    std::vector<IntMat> class_bases;
                    std::size_t total = 0;
                    for (const auto& [support, cls_roots] : classes) {
                        (void)support;
                        const IntMat cls_lattice = column_hermite_basis(kernel_basis(
                            evaluate_polynomial(linear_factor_product(cls_roots), b)
                                .power(rho)));
                        const auto coords = in_exp.solve(cls_lattice);
                        if (!coords) {
                            certified = false;
                            break;
                        }
                        total += coords->cols();
                        class_bases.push_back(*coords);
                    }
                    if (certified && total != exp_lattice.cols()) certified = false;
                    if (certified) {
                        IntMat stacked(exp_lattice.cols(), total);
                        std::size_t col = 0;
                        for (const auto& cb : class_bases)
                            for (std::size_t j = 0; j < cb.cols(); ++j, ++col)
                                for (std::size_t i = 0; i < cb.rows(); ++i)
                                    stacked.at(i, col) = cb.at(i, j);
                        const Int det = determinant(stacked);
                        if (det != 1 && det != -1) certified = false;
                    }
                    if (!certified)
                        note << "expanding eigenlattices with distinct prime supports "
                                "do not span integrally; ";
                }
            }
            if (!certified) {
                out.free_rank = 0;
                out.localized.clear();
                note << "presentation: eventual lattice rank " << rho << ", matrix\n"
                     << b.to_string();
                note << "coker invariants:";
                for (int k = 1; k <= k_stab; ++k) {
                    note << " k=" << k << ":[";
                    bool first = true;
                    for (const Int& v : coker_invariants(b, static_cast<std::size_t>(k))) {
                        note << (first ? "" : ",") << v.str();
                        first = false;
                    }
                    note << "]";
                }
                if (candidate) {
                    bool consistent = candidate->torsion == out.torsion;
                    std::size_t dim = candidate->free_rank;
                    for (const auto& [m, mult] : candidate->localized) {
                        (void)m;
                        dim += mult;
                    }
                    IntMat cb(dim, dim);
                    std::size_t i = 0;
                    for (; i < candidate->free_rank; ++i) cb.at(i, i) = 1;
                    for (const auto& [m, mult] : candidate->localized)
                        for (std::size_t j = 0; j < mult; ++j, ++i) cb.at(i, i) = Int(m);
                    for (int k = 1; k <= k_stab && consistent; ++k)
                        consistent = coker_invariants(b, static_cast<std::size_t>(k)) ==
                                     coker_invariants(cb, static_cast<std::size_t>(k));
                    note << (consistent ? "; invariants consistent with candidate"
                                        : "; invariants differ from candidate");
                }
            }
        }
    }

    out.conclusive = certified;
    out.note = note.str();

    std::sort(out.localized.begin(), out.localized.end());
    return out;
}

std::string DirectLimitGroup::to_string() const {
    std::vector<std::string> parts;
    for (auto it = localized.rbegin(); it != localized.rend(); ++it)
        for (std::size_t i = 0; i < it->second; ++i)
            parts.push_back("Z[1/" + std::to_string(it->first) + "]");
    if (free_rank == 1)
        parts.push_back("Z");
    else if (free_rank > 1)
        parts.push_back("Z^" + std::to_string(free_rank));
    for (const Int& t : torsion) parts.push_back("Z/" + t.str());
    if (parts.empty()) return "0";
    std::string s = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
    return s;
}

std::vector<DirectLimitGroup> paperfolding_cohomology(int d) {
    if (d != 1 && d != 2)
        throw std::invalid_argument("paperfolding_cohomology supports d = 1 and 2 only");
    const BlockSubstitution rule = BlockSubstitution::derive_rule(d);
    const CollaredRule collared = collar_letters(rule);
    const CellComplex complex = ap_complex(collared);
    const std::vector<EndomorphismOnGroups> groups = cohomology_of_complex(complex);
    std::vector<DirectLimitGroup> out;
    out.reserve(groups.size());
    for (const auto& g : groups) out.push_back(direct_limit(g));
    return out;
}

}  // namespace paperfold
