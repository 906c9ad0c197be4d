#include "isd/operational.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "isd/dsl.hpp"

namespace isd {

bool terminates(const Interaction& i) noexcept {
    switch (i.kind()) {
    case NodeKind::Empty:
    case NodeKind::Loop:
        return true;
    case NodeKind::Act:
        return false;
    case NodeKind::Alt:
        return terminates(i.left()) || terminates(i.right());
    default:
        return terminates(i.left()) && terminates(i.right());
    }
}

bool evades(const Interaction& i, std::string_view l) noexcept {
    switch (i.kind()) {
    case NodeKind::Empty:
    case NodeKind::Loop:
        return true;
    case NodeKind::Act:
        return lifeline_of(i.action()) != l;
    case NodeKind::Alt:
        return evades(i.left(), l) || evades(i.right(), l);
    default:
        return evades(i.left(), l) && evades(i.right(), l);
    }
}

// Defined exactly when `i` evades `l`: the recursion fails on the same
// sub-terms where the evasion predicate does.
std::optional<Interaction> prune(const Interaction& i, std::string_view l) {
    switch (i.kind()) {
    case NodeKind::Empty:
        return i;
    case NodeKind::Act:
        if (lifeline_of(i.action()) == l) {
            return std::nullopt;
        }
        return i;
    case NodeKind::Alt: {
        auto left = prune(i.left(), l);
        auto right = prune(i.right(), l);
        if (left && right) {
            return Interaction::alt(std::move(*left), std::move(*right));
        }
        return left ? left : right;
    }
    case NodeKind::Loop: {
        auto body = prune(i.body(), l);
        if (!body) {
            return Interaction::empty();
        }
        return Interaction::loop(i.loop_kind(), std::move(*body));
    }
    default: {
        auto left = prune(i.left(), l);
        if (!left) {
            return std::nullopt;
        }
        auto right = prune(i.right(), l);
        if (!right) {
            return std::nullopt;
        }
        return Interaction::binary(i.kind(), std::move(*left), std::move(*right));
    }
    }
}

namespace {

void collect_steps(const Interaction& i, std::vector<Step>& out);

std::vector<Step> raw_steps(const Interaction& i) {
    std::vector<Step> out;
    collect_steps(i, out);
    return out;
}

// Applies the execution rules without sorting or deduplicating; next_steps
// canonicalises once at the root.
void collect_steps(const Interaction& i, std::vector<Step>& out) {
    switch (i.kind()) {
    case NodeKind::Empty:
        return;
    case NodeKind::Act:
        out.push_back({i.action(), Interaction::empty()});
        return;
    case NodeKind::Alt:
        collect_steps(i.left(), out);
        collect_steps(i.right(), out);
        return;
    case NodeKind::Par: {
        for (auto& s : raw_steps(i.left())) {
            out.push_back({std::move(s.action), Interaction::par(std::move(s.successor), i.right())});
        }
        for (auto& s : raw_steps(i.right())) {
            out.push_back({std::move(s.action), Interaction::par(i.left(), std::move(s.successor))});
        }
        return;
    }
    case NodeKind::Strict: {
        for (auto& s : raw_steps(i.left())) {
            out.push_back(
                {std::move(s.action), Interaction::strict(std::move(s.successor), i.right())});
        }
        if (terminates(i.left())) {
            collect_steps(i.right(), out);
        }
        return;
    }
    case NodeKind::Seq: {
        for (auto& s : raw_steps(i.left())) {
            out.push_back({std::move(s.action), Interaction::seq(std::move(s.successor), i.right())});
        }
        for (auto& s : raw_steps(i.right())) {
            auto pruned = prune(i.left(), lifeline_of(s.action));
            if (!pruned) {
                continue;
            }
            out.push_back(
                {std::move(s.action), Interaction::seq(std::move(*pruned), std::move(s.successor))});
        }
        return;
    }
    case NodeKind::Loop: {
        const auto kind = i.loop_kind();
        for (auto& s : raw_steps(i.body())) {
            switch (kind) {
            case LoopKind::X:
                out.push_back({std::move(s.action), Interaction::strict(std::move(s.successor), i)});
                break;
            case LoopKind::H:
                out.push_back({std::move(s.action), Interaction::seq(std::move(s.successor), i)});
                break;
            case LoopKind::S: {
                // A loop always evades, so the pruned loop exists.
                auto pruned_loop = *prune(i, lifeline_of(s.action));
                auto tail = Interaction::seq(std::move(s.successor), i);
                out.push_back({std::move(s.action),
                               Interaction::seq(std::move(pruned_loop), std::move(tail))});
                break;
            }
            case LoopKind::P:
                out.push_back({std::move(s.action), Interaction::par(std::move(s.successor), i)});
                break;
            }
        }
        return;
    }
    }
}

} // namespace

std::vector<Step> next_steps(const Interaction& i) {
    std::vector<Step> raw;
    collect_steps(i, raw);
    if (raw.size() < 2) {
        return raw;
    }
    struct Keyed {
        std::string action;
        std::string successor;
        std::size_t index;
    };
    std::vector<Keyed> keys;
    keys.reserve(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
        keys.push_back({render(raw[k].action), render_interaction(raw[k].successor), k});
    }
    std::sort(keys.begin(), keys.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.action, a.successor) < std::tie(b.action, b.successor);
    });
    std::vector<Step> out;
    out.reserve(raw.size());
    for (std::size_t k = 0; k < keys.size(); ++k) {
        if (k > 0 && keys[k].action == keys[k - 1].action &&
            keys[k].successor == keys[k - 1].successor) {
            continue;
        }
        out.push_back(std::move(raw[keys[k].index]));
    }
    return out;
}

namespace {

struct MemoKey {
    Interaction term;
    std::size_t depth;

    friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const noexcept {
        return k.term.hash() * 1000003u ^ k.depth;
    }
};

// Failed (term, position) pairs are remembered; the same residual term is
// often reached through different rule derivations.
bool search_witness(const Interaction& i, const Trace& t, std::size_t pos,
                    std::vector<Step>& path,
                    std::unordered_set<MemoKey, MemoKeyHash>& failed) {
    if (pos == t.size()) {
        return terminates(i);
    }
    if (failed.contains(MemoKey{i, pos})) {
        return false;
    }
    for (auto& s : next_steps(i)) {
        if (s.action != t[pos]) {
            continue;
        }
        path.push_back(s);
        if (search_witness(s.successor, t, pos + 1, path, failed)) {
            return true;
        }
        path.pop_back();
    }
    failed.insert(MemoKey{i, pos});
    return false;
}

class Explorer {
public:
    explicit Explorer(const StepFunction& steps) : steps_(steps) {}

    const TraceSet& traces(const Interaction& i, std::size_t depth) {
        MemoKey key{i, depth};
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        TraceSet out;
        if (terminates(i)) {
            out.insert(Trace{});
        }
        if (depth > 0) {
            for (const auto& s : successors(i)) {
                for (const auto& tail : traces(s.successor, depth - 1)) {
                    Trace t;
                    t.reserve(tail.size() + 1);
                    t.push_back(s.action);
                    t.insert(t.end(), tail.begin(), tail.end());
                    out.insert(std::move(t));
                }
            }
        }
        return memo_.emplace(std::move(key), std::move(out)).first->second;
    }

private:
    const std::vector<Step>& successors(const Interaction& i) {
        if (auto it = steps_memo_.find(i); it != steps_memo_.end()) {
            return it->second;
        }
        return steps_memo_.emplace(i, steps_(i)).first->second;
    }

    const StepFunction& steps_;
    std::unordered_map<MemoKey, TraceSet, MemoKeyHash> memo_;
    std::unordered_map<Interaction, std::vector<Step>> steps_memo_;
};

} // namespace

Verdict accepts(const Interaction& i, const Trace& t) {
    Verdict v;
    if (t.empty()) {
        v.accepted = terminates(i);
        return v;
    }
    std::vector<Step> path;
    std::unordered_set<MemoKey, MemoKeyHash> failed;
    if (search_witness(i, t, 0, path, failed)) {
        v.accepted = true;
        v.witness = std::move(path);
    }
    return v;
}

TraceSet sigma_o_up_to(const Interaction& i, std::size_t max_len) {
    const StepFunction steps = [](const Interaction& term) { return next_steps(term); };
    return sigma_o_up_to(i, max_len, steps);
}

TraceSet sigma_o_up_to(const Interaction& i, std::size_t max_len, const StepFunction& steps) {
    Explorer explorer(steps);
    return explorer.traces(i, max_len);
}

} // namespace isd
