#include "isd/trace_algebra.hpp"

namespace isd {

namespace {

// Depth-first expansion of the recursive merge definitions. `prefix` holds
// the actions emitted so far; `i` and `j` index the unconsumed suffixes.
// `second_allowed(i, j)` decides whether t2[j] may overtake t1[i..].
template <typename Gate>
void merge_into(const Trace& t1, const Trace& t2, std::size_t i, std::size_t j, Trace& prefix,
                TraceSet& out, const Gate& second_allowed) {
    if (i == t1.size()) {
        Trace t = prefix;
        t.insert(t.end(), t2.begin() + static_cast<std::ptrdiff_t>(j), t2.end());
        out.insert(std::move(t));
        return;
    }
    if (j == t2.size()) {
        Trace t = prefix;
        t.insert(t.end(), t1.begin() + static_cast<std::ptrdiff_t>(i), t1.end());
        out.insert(std::move(t));
        return;
    }
    prefix.push_back(t1[i]);
    merge_into(t1, t2, i + 1, j, prefix, out, second_allowed);
    prefix.pop_back();
    if (second_allowed(i, j)) {
        prefix.push_back(t2[j]);
        merge_into(t1, t2, i, j + 1, prefix, out, second_allowed);
        prefix.pop_back();
    }
}

bool has_conflict_from(const Trace& t, std::size_t from, std::string_view l) noexcept {
    for (std::size_t k = from; k < t.size(); ++k) {
        if (t[k].lifeline == l) {
            return true;
        }
    }
    return false;
}

void schedule_into(SchedulingOp op, const Trace& t1, const Trace& t2, TraceSet& out) {
    Trace prefix;
    prefix.reserve(t1.size() + t2.size());
    switch (op) {
    case SchedulingOp::StrictSeq:
        out.insert(concat(t1, t2));
        return;
    case SchedulingOp::Interleave:
        merge_into(t1, t2, 0, 0, prefix, out, [](std::size_t, std::size_t) { return true; });
        return;
    case SchedulingOp::WeakSeq:
        merge_into(t1, t2, 0, 0, prefix, out, [&](std::size_t i, std::size_t j) {
            return !has_conflict_from(t1, i, t2[j].lifeline);
        });
        return;
    }
}

} // namespace

std::string_view op_name(SchedulingOp op) noexcept {
    switch (op) {
    case SchedulingOp::StrictSeq: return "strict";
    case SchedulingOp::WeakSeq: return "weak";
    case SchedulingOp::Interleave: return "interleave";
    }
    return "?";
}

Trace concat(const Trace& t1, const Trace& t2) {
    Trace out;
    out.reserve(t1.size() + t2.size());
    out.insert(out.end(), t1.begin(), t1.end());
    out.insert(out.end(), t2.begin(), t2.end());
    return out;
}

bool has_conflict(const Trace& t, std::string_view l) noexcept {
    return has_conflict_from(t, 0, l);
}

TraceSet interleavings(const Trace& t1, const Trace& t2) {
    TraceSet out;
    schedule_into(SchedulingOp::Interleave, t1, t2, out);
    return out;
}

TraceSet weak_seq_traces(const Trace& t1, const Trace& t2) {
    TraceSet out;
    schedule_into(SchedulingOp::WeakSeq, t1, t2, out);
    return out;
}

TraceSet schedule(SchedulingOp op, const Trace& t1, const Trace& t2) {
    TraceSet out;
    schedule_into(op, t1, t2, out);
    return out;
}

TraceSet lift(SchedulingOp op, const TraceSet& lhs, const TraceSet& rhs, Bound bound) {
    TraceSet out;
    for (const auto& t1 : lhs) {
        if (!bound.admits(t1.size())) {
            break;
        }
        for (const auto& t2 : rhs) {
            if (!bound.admits(t1.size() + t2.size())) {
                break;
            }
            schedule_into(op, t1, t2, out);
        }
    }
    return out;
}

// A merged trace a.s has its head taken from lhs exactly when a.t1 is in lhs
// and s is a merge of t1 with some member of rhs; taking the first action from
// the left operand is legal for all three operators. The empty trace survives
// only as the merge of two empty traces.
TraceSet lift_restricted(SchedulingOp op, const TraceSet& lhs, const TraceSet& rhs,
                         Bound bound) {
    TraceSet out;
    if (lhs.contains_epsilon() && rhs.contains_epsilon()) {
        out.insert(Trace{});
    }
    for (const auto& head_trace : lhs) {
        if (head_trace.empty()) {
            continue;
        }
        if (!bound.admits(head_trace.size())) {
            break;
        }
        const Trace tail(head_trace.begin() + 1, head_trace.end());
        for (const auto& t2 : rhs) {
            if (!bound.admits(head_trace.size() + t2.size())) {
                break;
            }
            TraceSet merged;
            schedule_into(op, tail, t2, merged);
            for (const auto& s : merged) {
                Trace t;
                t.reserve(s.size() + 1);
                t.push_back(head_trace.front());
                t.insert(t.end(), s.begin(), s.end());
                out.insert(std::move(t));
            }
        }
    }
    return out;
}

TraceSet power(SchedulingOp op, const TraceSet& base, std::size_t j, bool restricted,
               Bound bound) {
    TraceSet acc = TraceSet::epsilon();
    for (std::size_t k = 0; k < j; ++k) {
        acc = restricted ? lift_restricted(op, base, acc, bound) : lift(op, base, acc, bound);
    }
    return acc;
}

TraceSet closure_up_to(SchedulingOp op, const TraceSet& base, Bound bound, bool restricted) {
    TraceSet result = TraceSet::epsilon();
    TraceSet frontier = result;
    while (!frontier.empty()) {
        TraceSet stepped = restricted ? lift_restricted(op, base, frontier, bound)
                                      : lift(op, base, frontier, bound);
        TraceSet fresh;
        for (auto& t : stepped) {
            if (result.insert(t)) {
                fresh.insert(t);
            }
        }
        frontier = std::move(fresh);
    }
    return result;
}

} // namespace isd
