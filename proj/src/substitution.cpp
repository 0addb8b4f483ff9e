#include "paperfold/substitution.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "paperfold/errors.hpp"

namespace paperfold {

namespace {

int positive_mod2(int x) { return ((x % 2) + 2) % 2; }

}  // namespace

int Letter::code() const {
    const int d = dimension();
    int face_bits = 0, parity_bits = 0;
    for (int i = 0; i < d; ++i) {
        if (face_signs[i] == Sign::crest) face_bits |= 1 << i;
        if (parity[i]) parity_bits |= 1 << i;
    }
    return (face_bits << d) | parity_bits;
}

Letter Letter::from_code(int d, int code) {
    if (d < 1 || code < 0 || code >= (1 << (2 * d)))
        throw std::invalid_argument("letter code out of range");
    Letter l;
    l.face_signs.resize(d);
    l.parity.resize(d);
    for (int i = 0; i < d; ++i) {
        l.face_signs[i] = (code >> (d + i) & 1) ? Sign::crest : Sign::valley;
        l.parity[i] = static_cast<std::uint8_t>(code >> i & 1);
    }
    return l;
}

void BlockRule::validate() const {
    if (d < 1) throw std::invalid_argument("block rule dimension must be >= 1");
    if (static_cast<int>(images.size()) != alphabet)
        throw std::invalid_argument("block rule is not total on its alphabet");
    for (const auto& block : images) {
        if (static_cast<int>(block.size()) != block_size())
            throw std::invalid_argument("image block has wrong size");
        for (int letter : block)
            if (letter < 0 || letter >= alphabet)
                throw std::invalid_argument("image letter out of alphabet");
    }
}

BlockSubstitution BlockSubstitution::derive_rule(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (d > 6) throw std::invalid_argument("alphabet 4^d too large");
    BlockSubstitution rule;
    rule.d_ = d;
    const int alphabet = 1 << (2 * d);
    const int block = 1 << d;
    rule.images_.assign(alphabet, std::vector<int>(block, 0));

    for (int parent_code = 0; parent_code < alphabet; ++parent_code) {
        const Letter parent = Letter::from_code(d, parent_code);
        // Reflection axes of the inserted first fold: the even parent coordinates.
        ReflectionSet a;
        for (int i = 0; i < d; ++i)
            if (parent.parity[i] == 0) a.axes.push_back(i + 1);

        for (int delta = 0; delta < block; ++delta) {
            Letter child;
            child.face_signs.resize(d);
            child.parity.resize(d);
            for (int k = 0; k < d; ++k)
                child.parity[k] = static_cast<std::uint8_t>(delta >> k & 1);
            for (int k = 0; k < d; ++k) {
                if ((delta >> k & 1) == 0) {
                    // Outer face of the doubled block, inherited.
                    child.face_signs[k] = parent.face_signs[k];
                } else {
                    // New interior crease: the sector of the inserted copy of
                    // the first fold that touches this child's lower face.
                    CreaseLabel sigma;
                    sigma.components.resize(d);
                    for (int i = 0; i < d; ++i)
                        sigma.components[i] =
                            (i == k) ? 0 : static_cast<std::int8_t>(2 * (delta >> i & 1) - 1);
                    child.face_signs[k] = reflected_sign(a, sigma);
                }
            }
            rule.images_[parent_code][delta] = child.code();
        }
    }
    return rule;
}

Letter BlockSubstitution::image(const Letter& parent, int delta_code) const {
    return Letter::from_code(d_, images_[parent.code()][delta_code]);
}

BlockRule BlockSubstitution::as_block_rule() const {
    BlockRule r;
    r.d = d_;
    r.alphabet = alphabet_size();
    r.images = images_;
    return r;
}

bool SymbolicPattern::in_box(const Coords& absolute) const {
    for (int i = 0; i < d; ++i) {
        const int rel = absolute[i] - origin[i];
        if (rel < 0 || rel >= shape[i]) return false;
    }
    return true;
}

std::size_t SymbolicPattern::linear_index(const Coords& absolute) const {
    std::size_t idx = 0, stride = 1;
    for (int i = 0; i < d; ++i) {
        const int rel = absolute[i] - origin[i];
        if (rel < 0 || rel >= shape[i]) throw std::out_of_range("cell outside pattern box");
        idx += stride * static_cast<std::size_t>(rel);
        stride *= static_cast<std::size_t>(shape[i]);
    }
    return idx;
}

int SymbolicPattern::letter_at(const Coords& absolute) const {
    return cells[linear_index(absolute)];
}

void SymbolicPattern::check_parity() const {
    if (d < 1 || static_cast<int>(origin.size()) != d || static_cast<int>(shape.size()) != d)
        throw std::invalid_argument("malformed symbolic pattern");
    std::size_t expected = 1;
    for (int s : shape) {
        if (s < 1) throw std::invalid_argument("pattern shape entries must be >= 1");
        expected *= static_cast<std::size_t>(s);
    }
    if (cells.size() != expected)
        throw std::invalid_argument("pattern cell count does not match shape");

    Coords x = origin;
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        const Letter l = Letter::from_code(d, cells[idx]);
        for (int i = 0; i < d; ++i)
            if (l.parity[i] != positive_mod2(x[i]))
                throw std::invalid_argument("letter parity inconsistent with cell position");
        for (int i = 0; i < d; ++i) {
            if (++x[i] < origin[i] + shape[i]) break;
            x[i] = origin[i];
        }
    }
}

SymbolicPattern seed(int d) {
    const CreasePattern s2 = generate_recursive(d, 2);
    SymbolicPattern p;
    p.d = d;
    p.origin.assign(d, -1);
    p.shape.assign(d, 2);
    p.cells.resize(std::size_t{1} << d);

    Coords cell(d);
    for (int idx = 0; idx < (1 << d); ++idx) {
        Letter l;
        l.face_signs.resize(d);
        l.parity.resize(d);
        for (int i = 0; i < d; ++i) {
            cell[i] = (idx >> i & 1) - 1;  // -1 or 0
            l.parity[i] = static_cast<std::uint8_t>(positive_mod2(cell[i]));
        }
        for (int axis = 1; axis <= d; ++axis)
            l.face_signs[axis - 1] = s2.faces.at(FaceId{axis, cell});
        p.cells[p.linear_index(cell)] = l.code();
    }
    return p;
}

SymbolicPattern substitute(const SymbolicPattern& p, const BlockSubstitution& rule) {
    if (rule.dimension() != p.d)
        throw std::invalid_argument("rule and pattern dimension mismatch");
    p.check_parity();

    SymbolicPattern out;
    out.d = p.d;
    out.origin.resize(p.d);
    out.shape.resize(p.d);
    for (int i = 0; i < p.d; ++i) {
        out.origin[i] = 2 * p.origin[i];
        out.shape[i] = 2 * p.shape[i];
    }
    out.cells.resize(p.cells.size() << p.d);

    const int block = rule.block_size();
    Coords x = p.origin;
    Coords child(p.d);
    for (std::size_t idx = 0; idx < p.cells.size(); ++idx) {
        const int parent = p.cells[idx];
        for (int delta = 0; delta < block; ++delta) {
            for (int i = 0; i < p.d; ++i) child[i] = 2 * x[i] + (delta >> i & 1);
            out.cells[out.linear_index(child)] = rule.image_code(parent, delta);
        }
        for (int i = 0; i < p.d; ++i) {
            if (++x[i] < p.origin[i] + p.shape[i]) break;
            x[i] = p.origin[i];
        }
    }
    return out;
}

CreasePattern to_creases(const SymbolicPattern& p) {
    CreasePattern out;
    out.d = p.d;
    out.extent = 0;
    for (int i = 0; i < p.d; ++i) {
        out.extent = std::max(out.extent, std::abs(p.origin[i]));
        out.extent = std::max(out.extent, std::abs(p.origin[i] + p.shape[i]));
    }
    Coords x = p.origin;
    for (std::size_t idx = 0; idx < p.cells.size(); ++idx) {
        const Letter l = Letter::from_code(p.d, p.cells[idx]);
        for (int axis = 1; axis <= p.d; ++axis)
            out.insert_face(FaceId{axis, x}, l.face_signs[axis - 1]);
        for (int i = 0; i < p.d; ++i) {
            if (++x[i] < p.origin[i] + p.shape[i]) break;
            x[i] = p.origin[i];
        }
    }
    return out;
}

EquivalenceReport equivalence_check(int d, int k, std::uint64_t cell_budget) {
    if (d < 1 || k < 0) throw std::invalid_argument("equivalence_check: bad arguments");
    {
        const std::uint64_t bits = static_cast<std::uint64_t>(k + 1) * d;
        if (bits >= 63 || (std::uint64_t{1} << bits) > cell_budget)
            throw BudgetError("equivalence_check: cell budget exceeded");
    }
    EquivalenceReport report;
    report.d = d;
    report.steps = k;

    const BlockSubstitution rule = BlockSubstitution::derive_rule(d);
    SymbolicPattern p = seed(d);
    for (int i = 0; i < k; ++i) p = substitute(p, rule);

    const CreasePattern recursion = generate_recursive(d, k + 2, cell_budget);

    report.equal = true;
    Coords x = p.origin;
    for (std::size_t idx = 0; idx < p.cells.size(); ++idx) {
        const Letter l = Letter::from_code(d, p.cells[idx]);
        for (int axis = 1; axis <= d; ++axis) {
            ++report.faces_compared;
            const FaceId id{axis, x};
            const auto it = recursion.faces.find(id);
            const Sign ours = l.face_signs[axis - 1];
            if (it == recursion.faces.end() || it->second != ours) {
                report.equal = false;
                report.first_mismatch = id;
                report.substitution_sign = ours;
                if (it != recursion.faces.end()) report.recursion_sign = it->second;
                return report;
            }
        }
        for (int i = 0; i < d; ++i) {
            if (++x[i] < p.origin[i] + p.shape[i]) break;
            x[i] = p.origin[i];
        }
    }
    return report;
}

}  // namespace paperfold
