#include "paperfold/crease.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "paperfold/errors.hpp"

namespace paperfold {

Sign sign_from_char(char c) {
    if (c == '+') return Sign::valley;
    if (c == '-') return Sign::crest;
    throw std::invalid_argument(std::string("not a sign character: ") + c);
}

int CreaseLabel::zero_axis() const {
    validate();
    for (std::size_t i = 0; i < components.size(); ++i)
        if (components[i] == 0) return static_cast<int>(i) + 1;
    throw std::logic_error("unreachable");
}

void CreaseLabel::validate() const {
    if (components.empty())
        throw std::invalid_argument("crease label must have dimension >= 1");
    int zeros = 0;
    for (auto c : components) {
        if (c != -1 && c != 0 && c != 1)
            throw std::invalid_argument("crease label entries must be in {-1,0,+1}");
        if (c == 0) ++zeros;
    }
    if (zeros != 1)
        throw std::invalid_argument("crease label must have exactly one zero component");
}

void CreasePattern::insert_face(FaceId id, Sign s) {
    if (static_cast<int>(id.corner.size()) != d)
        throw std::invalid_argument("face corner dimension mismatch");
    if (id.axis < 1 || id.axis > d)
        throw std::invalid_argument("face axis out of range");
    for (int i = 0; i < d; ++i) {
        const int c = id.corner[i];
        const int hi = (i + 1 == id.axis) ? extent : extent - 1;
        if (c < -extent || c > hi)
            throw std::invalid_argument("face outside pattern extent");
    }
    auto [it, inserted] = faces.emplace(std::move(id), s);
    if (!inserted) throw std::invalid_argument("duplicate face id");
}

void CreasePattern::check_invariants() const {
    if (d < 1) throw std::invalid_argument("pattern dimension must be >= 1");
    if (extent < 0) throw std::invalid_argument("negative extent");
    for (const auto& [id, sign] : faces) {
        (void)sign;
        if (id.axis < 1 || id.axis > d || static_cast<int>(id.corner.size()) != d)
            throw std::invalid_argument("malformed face id");
        for (int i = 0; i < d; ++i) {
            const int hi = (i + 1 == id.axis) ? extent : extent - 1;
            if (id.corner[i] < -extent || id.corner[i] > hi)
                throw std::invalid_argument("face outside pattern extent");
        }
    }
}

void ReflectionSet::validate(int d) const {
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i] < 1 || axes[i] > d)
            throw std::invalid_argument("reflection axis out of range 1..d");
        if (i > 0 && axes[i] <= axes[i - 1])
            throw std::invalid_argument("reflection axes must be strictly increasing");
    }
}

bool ReflectionSet::contains(int axis) const {
    return std::binary_search(axes.begin(), axes.end(), axis);
}

void OrthantLabel::validate() const {
    if (signs.empty()) throw std::invalid_argument("orthant label must have dimension >= 1");
    for (auto s : signs)
        if (s != 1 && s != -1)
            throw std::invalid_argument("orthant label entries must be +-1");
}

Sign crease_sign(const CreaseLabel& sigma) {
    const int k = sigma.zero_axis();
    int prod = 1;
    for (int i = 0; i < k - 1; ++i) prod *= sigma.components[i];
    return prod > 0 ? Sign::valley : Sign::crest;
}

Sign reflected_sign(const ReflectionSet& a, const CreaseLabel& sigma) {
    a.validate(sigma.dimension());
    const int k = sigma.zero_axis();
    // N(a,k) = number of reflection axes >= k.
    int n = 0;
    for (int axis : a.axes)
        if (axis >= k) ++n;
    const Sign base = crease_sign(sigma);
    return (n % 2 == 0) ? base : negated(base);
}

CreasePattern build_s1(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    CreasePattern p;
    p.d = d;
    p.extent = 1;
    CreaseLabel sigma;
    sigma.components.assign(d, 1);
    for (int k = 1; k <= d; ++k) {
        // Enumerate the 2^(d-1) sectors of the hyperplane x_k = 0.
        const int sectors = 1 << (d - 1);
        for (int mask = 0; mask < sectors; ++mask) {
            int bit = 0;
            for (int i = 0; i < d; ++i) {
                if (i == k - 1) {
                    sigma.components[i] = 0;
                } else {
                    sigma.components[i] = (mask >> bit & 1) ? -1 : 1;
                    ++bit;
                }
            }
            FaceId id;
            id.axis = k;
            id.corner.assign(d, 0);
            for (int i = 0; i < d; ++i)
                if (i != k - 1 && sigma.components[i] < 0) id.corner[i] = -1;
            p.insert_face(std::move(id), crease_sign(sigma));
        }
    }
    return p;
}

CreasePattern reflect(const CreasePattern& p, int axis) {
    if (axis < 1 || axis > p.d) throw std::invalid_argument("reflection axis out of range");
    CreasePattern out;
    out.d = p.d;
    out.extent = p.extent;
    for (const auto& [id, sign] : p.faces) {
        FaceId m = id;
        if (id.axis == axis)
            m.corner[axis - 1] = -id.corner[axis - 1];
        else
            m.corner[axis - 1] = -id.corner[axis - 1] - 1;
        out.insert_face(std::move(m), negated(sign));
    }
    return out;
}

CreasePattern orthant_reflection(const OrthantLabel& phi, const CreasePattern& p) {
    phi.validate();
    if (phi.dimension() != p.d) throw std::invalid_argument("orthant label dimension mismatch");
    CreasePattern out = p;
    for (int i = 1; i <= p.d; ++i)
        if (phi.signs[i - 1] == -1) out = reflect(out, i);
    return out;
}

CreasePattern translate(const CreasePattern& p, const Coords& t) {
    if (static_cast<int>(t.size()) != p.d)
        throw std::invalid_argument("translation dimension mismatch");
    int max_abs = 0;
    CreasePattern out;
    out.d = p.d;
    out.extent = p.extent;
    for (int v : t) max_abs = std::max(max_abs, std::abs(v));
    out.extent = p.extent + max_abs;
    for (const auto& [id, sign] : p.faces) {
        FaceId moved = id;
        for (int i = 0; i < p.d; ++i) moved.corner[i] += t[i];
        out.insert_face(std::move(moved), sign);
    }
    return out;
}

namespace {

// Merge `src` into `dst`; faces must not collide.
void merge_into(CreasePattern& dst, const CreasePattern& src) {
    for (const auto& [id, sign] : src.faces) dst.insert_face(id, sign);
}

}  // namespace

CreasePattern generate_recursive(int d, int n, std::uint64_t cell_budget) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (n < 0) throw std::invalid_argument("generation must be >= 0");
    {
        // (2^n)^d cells of the folded paper.
        const std::uint64_t bits = static_cast<std::uint64_t>(n) * d;
        if (bits >= 63 || (std::uint64_t{1} << bits) > cell_budget)
            throw BudgetError("generate_recursive: cell budget exceeded");
    }
    CreasePattern p;
    p.d = d;
    p.extent = 0;
    if (n == 0) return p;

    const int h = 1 << (n - 1);
    p.extent = h;

    // Central d-fold creases: for each axis k the full slab in x_k = 0,
    // signed per sector.
    CreaseLabel sigma;
    sigma.components.assign(d, 1);
    FaceId id;
    id.corner.assign(d, 0);
    for (int k = 1; k <= d; ++k) {
        id.axis = k;
        id.corner.assign(d, -h);
        id.corner[k - 1] = 0;
        while (true) {
            for (int i = 0; i < d; ++i)
                sigma.components[i] = (i == k - 1) ? 0 : (id.corner[i] >= 0 ? 1 : -1);
            p.insert_face(id, crease_sign(sigma));
            // Advance the transverse coordinates over [-h, h-1].
            int i = 0;
            for (; i < d; ++i) {
                if (i == k - 1) continue;
                if (++id.corner[i] <= h - 1) break;
                id.corner[i] = -h;
            }
            if (i == d) break;
        }
    }

    if (n >= 2) {
        const CreasePattern sub = generate_recursive(d, n - 1, cell_budget);
        const int t = h / 2;
        OrthantLabel phi;
        phi.signs.assign(d, 1);
        for (int mask = 0; mask < (1 << d); ++mask) {
            Coords shift(d);
            for (int i = 0; i < d; ++i) {
                phi.signs[i] = (mask >> i & 1) ? -1 : 1;
                shift[i] = t * phi.signs[i];
            }
            merge_into(p, translate(orthant_reflection(phi, sub), shift));
        }
    }
    return p;
}

std::vector<Facing> simulate_strip_fold(int n, int max_n) {
    if (n < 0 || n > max_n)
        throw std::invalid_argument("simulate_strip_fold: generation out of bounds");
    if (n == 0) return {Facing::up};

    struct Layer {
        int cell;
        bool up;
    };
    const int half = 1 << (n - 1);
    // pile[i] is the stack of layers above cell position lo + i, bottom first.
    std::vector<std::vector<Layer>> pile(std::size_t{2} << (n - 1));
    int lo = -half, hi = half;
    for (int x = lo; x < hi; ++x) pile[x - lo] = {Layer{x, true}};

    for (int fold = 0; fold < n; ++fold) {
        const int mid = (lo + hi) / 2;
        std::vector<std::vector<Layer>> next(hi - mid);
        for (int p = mid; p < hi; ++p) {
            auto& stack = next[p - mid];
            stack = std::move(pile[p - lo]);
            // The left half lands on top, reversed and flipped.
            const auto& mirrored = pile[(2 * mid - 1 - p) - lo];
            for (auto it = mirrored.rbegin(); it != mirrored.rend(); ++it)
                stack.push_back(Layer{it->cell, !it->up});
        }
        pile = std::move(next);
        lo = mid;
    }

    std::vector<Facing> out(std::size_t{2} << (n - 1));
    for (const auto& stack : pile)
        for (const auto& layer : stack)
            out[layer.cell + half] = layer.up ? Facing::up : Facing::down;
    return out;
}

}  // namespace paperfold
