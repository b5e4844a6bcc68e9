#include "pointers.hpp"

#include <algorithm>

#include "error.hpp"

namespace skellab {

namespace {

bool is_p_move(const Move& m) { return m.label % 2 == 1; }

} // namespace

bool is_valid_play(const PointerStructure& s) {
    for (size_t i = 0; i < s.moves.size(); i++) {
        const Move& m = s.moves[i];
        if (i == 0) {
            if (m.label != 0 || m.justifier) return false;
            continue;
        }
        if (!m.justifier) return false;  // only position 0 is initial
        uint32_t j = *m.justifier;
        if (j >= i) return false;
        if (s.moves[j].label + 1 != m.label) return false;
        if (s.moves[i - 1].label % 2 == m.label % 2) return false;  // alternation
    }
    return true;
}

std::vector<uint32_t> p_view(const PointerStructure& s, size_t upto) {
    std::vector<uint32_t> out;
    long i = static_cast<long>(upto) - 1;
    while (i >= 0) {
        const Move& m = s.moves[static_cast<size_t>(i)];
        if (is_p_move(m)) {
            out.push_back(static_cast<uint32_t>(i));
            i--;
        } else if (!m.justifier) {
            out.push_back(static_cast<uint32_t>(i));
            break;
        } else {
            out.push_back(static_cast<uint32_t>(i));
            out.push_back(*m.justifier);
            i = static_cast<long>(*m.justifier) - 1;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<uint32_t> o_view(const PointerStructure& s, size_t upto) {
    std::vector<uint32_t> out;
    long i = static_cast<long>(upto) - 1;
    while (i >= 0) {
        const Move& m = s.moves[static_cast<size_t>(i)];
        if (!is_p_move(m)) {
            out.push_back(static_cast<uint32_t>(i));
            i--;
        } else {
            out.push_back(static_cast<uint32_t>(i));
            out.push_back(*m.justifier);  // P-moves are never initial
            i = static_cast<long>(*m.justifier) - 1;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

bool is_visible(const PointerStructure& s) {
    for (size_t i = 1; i < s.moves.size(); i++) {
        const Move& m = s.moves[i];
        if (!m.justifier) return false;
        std::vector<uint32_t> view = is_p_move(m) ? p_view(s, i) : o_view(s, i);
        if (std::find(view.begin(), view.end(), *m.justifier) == view.end()) return false;
    }
    return true;
}

namespace {

std::vector<PointerStructure> legal_extensions(const PointerStructure& s, const StarParams& ps) {
    std::vector<PointerStructure> out;
    if (s.moves.empty()) {
        if (2 * ps.p + 1 >= 1) {
            PointerStructure t;
            t.moves.push_back({0, std::nullopt});
            out.push_back(std::move(t));
        }
        return out;
    }
    uint32_t last = s.moves.back().label;
    uint32_t parity = 1 - (last % 2);
    std::vector<uint32_t> pv = p_view(s, s.moves.size());
    std::vector<uint32_t> ov = o_view(s, s.moves.size());
    for (uint32_t lab = parity == 0 ? 2 : 1; lab <= ps.d; lab += 2) {
        const std::vector<uint32_t>& view = (lab % 2 == 1) ? pv : ov;
        for (uint32_t j : view) {
            if (s.moves[j].label + 1 != lab) continue;
            PointerStructure t = s;
            t.moves.push_back({lab, j});
            size_t len = t.moves.size();
            if (lab % 2 == 1) {
                if (p_view(t, len).size() > 2 * static_cast<size_t>(ps.n)) continue;
            } else {
                if (o_view(t, len).size() > 2 * static_cast<size_t>(ps.p) + 1) continue;
            }
            out.push_back(std::move(t));
        }
    }
    return out;
}

} // namespace

StarResult enumerate_star(const StarParams& params, uint64_t node_budget, bool collect_plays) {
    if (params.d < 2) fail(Err::DomainError, "enumerate_star needs d >= 2");
    StarResult res;
    std::vector<PointerStructure> stack{PointerStructure{}};
    while (!stack.empty()) {
        PointerStructure s = std::move(stack.back());
        stack.pop_back();
        if (++res.nodes > node_budget)
            fail(Err::BudgetExceeded, "enumerate_star node budget exhausted");
        std::vector<PointerStructure> exts = legal_extensions(s, params);
        if (exts.empty()) {
            res.maximal_count++;
            res.n_d = std::max<uint64_t>(res.n_d, s.moves.size());
            if (collect_plays) res.plays.push_back(std::move(s));
        } else {
            for (auto& e : exts) stack.push_back(std::move(e));
        }
    }
    return res;
}

// ---- pointed plays --------------------------------------------------------------

namespace {

bool view_reaches(const std::vector<uint32_t>& view, uint32_t i) {
    return std::find(view.begin(), view.end(), i) != view.end();
}

uint64_t residual_measure(const PointedPlay& pp, bool via_p_view) {
    const PointerStructure& s = pp.play;
    uint32_t i = static_cast<uint32_t>(pp.index);
    auto view_at = [&](size_t j) { return via_p_view ? p_view(s, j + 1) : o_view(s, j + 1); };
    uint64_t cur = view_at(pp.index).size();
    uint64_t best = 0;
    for (size_t j = pp.index; j < s.moves.size(); j++) {
        std::vector<uint32_t> v = view_at(j);
        if (view_reaches(v, i)) best = std::max<uint64_t>(best, v.size());
    }
    return best - cur + 1;
}

} // namespace

uint64_t residual_size(const PointedPlay& pp) {
    bool p = is_p_move(pp.play.moves[pp.index]);
    return residual_measure(pp, !p);  // O-move: P-views; P-move: O-views
}

uint64_t residual_cosize(const PointedPlay& pp) {
    bool p = is_p_move(pp.play.moves[pp.index]);
    return residual_measure(pp, p);
}

uint64_t residual_depth(const PointedPlay& pp) {
    const auto& moves = pp.play.moves;
    std::vector<uint64_t> chain(moves.size(), 0);  // longest chain ending here
    uint64_t best = 0;
    for (size_t j = pp.index + 1; j < moves.size(); j++) {
        if (!moves[j].justifier) continue;
        uint32_t t = *moves[j].justifier;
        if (t == pp.index)
            chain[j] = 1;
        else if (t > pp.index && chain[t] > 0)
            chain[j] = chain[t] + 1;
        best = std::max(best, chain[j]);
    }
    return best;
}

std::vector<uint32_t> context_of(const PointedPlay& pp) {
    const PointerStructure& s = pp.play;
    bool p = is_p_move(s.moves[pp.index]);
    std::vector<uint32_t> view = p ? o_view(s, pp.index) : p_view(s, pp.index);
    std::vector<uint32_t> out;
    for (uint32_t k : view)
        if (is_p_move(s.moves[k]) == p) out.push_back(k);
    return out;
}

std::vector<uint32_t> cocontext_of(const PointedPlay& pp) {
    const PointerStructure& s = pp.play;
    bool p = is_p_move(s.moves[pp.index]);
    std::vector<uint32_t> view = p ? p_view(s, pp.index) : o_view(s, pp.index);
    std::vector<uint32_t> out;
    for (uint32_t k : view)
        if (is_p_move(s.moves[k]) != p) out.push_back(k);
    return out;
}

namespace {

bool certify(const PointedPlay& pp, const SkelPtr& a, bool trace) {
    uint64_t n = a->root();
    if (trace) {
        if (residual_size(pp) > 2 * n) return false;
    } else {
        if (residual_cosize(pp) > 2 * n + 1) return false;
    }
    std::vector<uint32_t> ctx = trace ? context_of(pp) : cocontext_of(pp);
    for (uint32_t k : ctx) {
        PointedPlay sub{pp.play, k};
        uint64_t rd = residual_depth(sub);
        bool matched = false;
        for (const auto& e : a->children()) {
            if (rd <= e.label && certify(sub, e.child, false)) {
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace

bool certify_trace(const PointedPlay& pp, const SkelPtr& a) { return certify(pp, a, true); }
bool certify_cotrace(const PointedPlay& pp, const SkelPtr& a) { return certify(pp, a, false); }

bool certify_interaction(const PointedPlay& pp, const SkelPtr& a, uint64_t d, const SkelPtr& b) {
    return residual_depth(pp) <= d && certify_trace(pp, a) && certify_cotrace(pp, b);
}

std::vector<std::tuple<SkelPtr, uint64_t, SkelPtr>> triple_reducts(const SkelPtr& a, uint64_t d,
                                                                   const SkelPtr& b) {
    std::vector<std::tuple<SkelPtr, uint64_t, SkelPtr>> out;
    if (a->root() == 0) return out;
    SkelPtr demoted = graft(Skeleton::make(a->root() - 1, a->children()), d, b);
    for (const auto& e : a->children())
        if (e.label >= 1) out.emplace_back(e.child, e.label - 1, demoted);
    if (d >= 1) out.emplace_back(b, d - 1, demoted);
    return out;
}

} // namespace skellab
