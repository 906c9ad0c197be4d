#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "isd/core.hpp"
#include "isd/dsl.hpp"
#include "isd/harness.hpp"
#include "isd/operational.hpp"

namespace isd::test {

inline std::string fixture_path(const std::string& name) {
    return std::string(ISD_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Interaction term(const std::string& text) { return parse_interaction(text).interaction; }

inline Trace tr(const std::string& text) { return parse_trace(text); }

inline TraceSet traces(std::initializer_list<const char*> texts) {
    TraceSet out;
    for (const char* t : texts) {
        out.insert(parse_trace(t));
    }
    return out;
}

inline Interaction basic_example() {
    return term("alt(seq(strict(l1!m1,l3?m1),strict(l1!m2,l2?m2)),"
                "par(strict(l1!m3,l2?m3),l1!m4))");
}

inline Interaction choice_body() { return term("alt(strict(l1!m1,l2?m1),l2!m2)"); }

inline unsigned depth(const Interaction& i) {
    switch (i.kind()) {
    case NodeKind::Empty:
    case NodeKind::Act:
        return 0;
    case NodeKind::Loop:
        return 1 + depth(i.body());
    default:
        return 1 + std::max(depth(i.left()), depth(i.right()));
    }
}

inline Interaction random_term(std::uint64_t seed, unsigned max_depth) {
    harness::GenConfig cfg;
    cfg.seed = seed;
    cfg.max_depth = max_depth;
    return harness::gen_interaction(cfg);
}

// Denotation built only from the literal reference operators and the power
// ladder. A trace of length n never needs more than n nonempty factors, and
// empty factors add nothing new, so n powers are enough.
inline TraceSet oracle_sigma(const Interaction& i, std::size_t max_len) {
    switch (i.kind()) {
    case NodeKind::Empty:
        return TraceSet::epsilon();
    case NodeKind::Act:
        return max_len >= 1 ? TraceSet{Trace{i.action()}} : TraceSet{};
    case NodeKind::Alt:
        return set_union(oracle_sigma(i.left(), max_len), oracle_sigma(i.right(), max_len));
    case NodeKind::Strict:
    case NodeKind::Seq:
    case NodeKind::Par: {
        const auto op = i.kind() == NodeKind::Strict ? SchedulingOp::StrictSeq
                        : i.kind() == NodeKind::Seq  ? SchedulingOp::WeakSeq
                                                     : SchedulingOp::Interleave;
        return harness::reference::lift(op, oracle_sigma(i.left(), max_len), oracle_sigma(i.right(), max_len))
            .truncated(max_len);
    }
    case NodeKind::Loop: {
        const TraceSet body = oracle_sigma(i.body(), max_len);
        switch (i.loop_kind()) {
        case LoopKind::X:
            return harness::brute_force_closure(SchedulingOp::StrictSeq, body, max_len, false,
                                                max_len);
        case LoopKind::H:
            return harness::brute_force_closure(SchedulingOp::WeakSeq, body, max_len, true,
                                                max_len);
        case LoopKind::S:
            return harness::brute_force_closure(SchedulingOp::WeakSeq, body, max_len, false,
                                                max_len);
        case LoopKind::P:
            return harness::brute_force_closure(SchedulingOp::Interleave, body, max_len, false,
                                                max_len);
        }
    }
    }
    return {};
}

inline bool avoids(const Trace& t, const std::string& l) {
    return std::none_of(t.begin(), t.end(), [&](const Action& a) { return a.lifeline == l; });
}

// The execution rules written out one by one, with the sorting of
// next_steps applied at the end. With `corrupt_loop_s` the weak loop forgets
// the pruned copy of itself that lets later iterations run ahead.
inline std::vector<Step> rule_steps(const Interaction& i, bool corrupt_loop_s = false) {
    std::vector<Step> out;
    auto rec = [&](const Interaction& x) { return rule_steps(x, corrupt_loop_s); };
    switch (i.kind()) {
    case NodeKind::Empty:
        break;
    case NodeKind::Act:
        out.push_back({i.action(), Interaction::empty()});
        break;
    case NodeKind::Strict:
        for (auto& s : rec(i.left())) {
            out.push_back({s.action, Interaction::strict(s.successor, i.right())});
        }
        if (terminates(i.left())) {
            for (auto& s : rec(i.right())) {
                out.push_back(s);
            }
        }
        break;
    case NodeKind::Seq:
        for (auto& s : rec(i.left())) {
            out.push_back({s.action, Interaction::seq(s.successor, i.right())});
        }
        for (auto& s : rec(i.right())) {
            if (auto p = prune(i.left(), s.action.lifeline)) {
                out.push_back({s.action, Interaction::seq(*p, s.successor)});
            }
        }
        break;
    case NodeKind::Par:
        for (auto& s : rec(i.left())) {
            out.push_back({s.action, Interaction::par(s.successor, i.right())});
        }
        for (auto& s : rec(i.right())) {
            out.push_back({s.action, Interaction::par(i.left(), s.successor)});
        }
        break;
    case NodeKind::Alt:
        for (auto& s : rec(i.left())) {
            out.push_back(s);
        }
        for (auto& s : rec(i.right())) {
            out.push_back(s);
        }
        break;
    case NodeKind::Loop:
        for (auto& s : rec(i.body())) {
            switch (i.loop_kind()) {
            case LoopKind::X:
                out.push_back({s.action, Interaction::strict(s.successor, i)});
                break;
            case LoopKind::H:
                out.push_back({s.action, Interaction::seq(s.successor, i)});
                break;
            case LoopKind::P:
                out.push_back({s.action, Interaction::par(s.successor, i)});
                break;
            case LoopKind::S:
                if (corrupt_loop_s) {
                    out.push_back({s.action, Interaction::seq(s.successor, i)});
                } else {
                    out.push_back({s.action, Interaction::seq(*prune(i, s.action.lifeline),
                                                              Interaction::seq(s.successor, i))});
                }
                break;
            }
        }
        break;
    }
    auto key = [](const Step& s) {
        return std::make_pair(render(s.action), render_interaction(s.successor));
    };
    std::sort(out.begin(), out.end(), [&](const Step& a, const Step& b) { return key(a) < key(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace isd::test
