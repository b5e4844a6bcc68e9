#include "skeleton.hpp"

#include <algorithm>
#include <unordered_map>

#include "error.hpp"

namespace skellab {

static size_t hash_combine(size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

SkelPtr Skeleton::atom(uint64_t n) { return make(n, {}); }

SkelPtr Skeleton::make(uint64_t root, std::vector<Edge> children) {
    std::sort(children.begin(), children.end(), [](const Edge& a, const Edge& b) {
        if (a.label != b.label) return a.label < b.label;
        return skel_cmp(a.child, b.child) < 0;
    });
    children.erase(std::unique(children.begin(), children.end(),
                               [](const Edge& a, const Edge& b) {
                                   return a.label == b.label && skel_eq(a.child, b.child);
                               }),
                   children.end());
    auto s = std::shared_ptr<Skeleton>(new Skeleton());
    s->root_ = root;
    s->children_ = std::move(children);
    size_t h = std::hash<uint64_t>()(root);
    for (const auto& e : s->children_) {
        h = hash_combine(h, std::hash<uint64_t>()(e.label));
        h = hash_combine(h, e.child->hash());
    }
    s->hash_ = h;
    return s;
}

std::string Skeleton::to_string() const {
    std::string s = std::to_string(root_);
    if (!children_.empty()) {
        s += '[';
        for (size_t i = 0; i < children_.size(); i++) {
            if (i) s += ',';
            s += '{' + std::to_string(children_[i].label) + '}' + children_[i].child->to_string();
        }
        s += ']';
    }
    return s;
}

int skel_cmp(const SkelPtr& a, const SkelPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->root() != b->root()) return a->root() < b->root() ? -1 : 1;
    const auto& ca = a->children();
    const auto& cb = b->children();
    size_t n = std::min(ca.size(), cb.size());
    for (size_t i = 0; i < n; i++) {
        if (ca[i].label != cb[i].label) return ca[i].label < cb[i].label ? -1 : 1;
        int c = skel_cmp(ca[i].child, cb[i].child);
        if (c) return c;
    }
    if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
    return 0;
}

bool skel_eq(const SkelPtr& a, const SkelPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->hash() != b->hash()) return false;
    return skel_cmp(a, b) == 0;
}

SkelPtr graft(const SkelPtr& a, uint64_t d, const SkelPtr& b) {
    std::vector<Skeleton::Edge> cs = a->children();
    cs.push_back({d, b});
    return Skeleton::make(a->root(), std::move(cs));
}

static SkelPtr combine(const std::vector<SkelPtr>& as, bool sum) {
    uint64_t root = 0;
    std::vector<Skeleton::Edge> cs;
    for (const auto& a : as) {
        root = sum ? root + a->root() : std::max(root, a->root());
        cs.insert(cs.end(), a->children().begin(), a->children().end());
    }
    return Skeleton::make(root, std::move(cs));
}

SkelPtr join(const std::vector<SkelPtr>& as) { return combine(as, false); }
SkelPtr skel_sum(const std::vector<SkelPtr>& as) { return combine(as, true); }

std::vector<SkelPtr> reducts(const SkelPtr& a) {
    std::vector<SkelPtr> out;
    if (a->root() == 0) return out;
    SkelPtr demoted = Skeleton::make(a->root() - 1, a->children());
    for (const auto& e : a->children()) {
        if (e.label >= 1) {
            SkelPtr r = graft(e.child, e.label - 1, demoted);
            bool dup = false;
            for (const auto& p : out)
                if (skel_eq(p, r)) { dup = true; break; }
            if (!dup) out.push_back(r);
        }
    }
    return out;
}

SkelMeasures skel_measures(const SkelPtr& a) {
    SkelMeasures m;
    m.max = a->root();
    m.depth = 1;
    for (const auto& e : a->children()) {
        SkelMeasures c = skel_measures(e.child);
        m.order = std::max({m.order, e.label, c.order});
        m.max = std::max(m.max, c.max);
        m.depth = std::max(m.depth, c.depth + 1);
    }
    return m;
}

bool embeds(const SkelPtr& a, const SkelPtr& b) {
    if (a->root() > b->root()) return false;
    for (const auto& ea : a->children()) {
        bool found = false;
        for (const auto& eb : b->children()) {
            if (ea.label <= eb.label && embeds(ea.child, eb.child)) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

SkelPtr thread_like(uint64_t d, uint64_t o, uint64_t m) {
    if (d < 1 || o < 1 || m < 1) fail(Err::DomainError, "thread_like needs d,o,m >= 1");
    SkelPtr t = Skeleton::atom(m);
    for (uint64_t k = 1; k < d; k++) t = Skeleton::make(m, {{o, t}});
    return t;
}

// Iterative post-order DFS; recursion depth equals the norm, which can be
// large, so no call-stack recursion here.
uint64_t NormMemo::compute(const SkelPtr& a, const SearchBudget& budget) {
    std::vector<SkelPtr> stack{a};
    while (!stack.empty()) {
        SkelPtr node = stack.back();
        stack.pop_back();
        if (table_.find(node) != table_.end()) continue;
        std::vector<SkelPtr> rs = reducts(node);
        std::vector<SkelPtr> pending;
        for (const auto& r : rs)
            if (table_.find(r) == table_.end()) pending.push_back(r);
        if (!pending.empty()) {
            stack.push_back(node);
            for (auto& r : pending) stack.push_back(std::move(r));
        } else {
            uint64_t best = 0;
            for (const auto& r : rs) best = std::max(best, table_[r] + 1);
            table_[node] = best;
            if (table_.size() > budget.max_states)
                fail(Err::BudgetExceeded, "norm search exceeded " +
                                              std::to_string(budget.max_states) + " states");
        }
    }
    return table_[a];
}

uint64_t norm(const SkelPtr& a, const SearchBudget& budget) {
    NormMemo memo;
    return memo.compute(a, budget);
}

} // namespace skellab
