#include "isd/denotational.hpp"

#include <stdexcept>

namespace isd {

namespace {

struct LoopSemantics {
    SchedulingOp op;
    bool restricted;
};

LoopSemantics loop_semantics(LoopKind k) noexcept {
    switch (k) {
    case LoopKind::X: return {SchedulingOp::StrictSeq, false};
    case LoopKind::H: return {SchedulingOp::WeakSeq, true};
    case LoopKind::S: return {SchedulingOp::WeakSeq, false};
    case LoopKind::P: return {SchedulingOp::Interleave, false};
    }
    return {SchedulingOp::StrictSeq, false};
}

// Every combination is length-additive, so truncating after each step keeps
// exactly the members within the bound.
TraceSet evaluate(const Interaction& i, Bound bound) {
    switch (i.kind()) {
    case NodeKind::Empty:
        return TraceSet::epsilon();
    case NodeKind::Act:
        return bound.admits(1) ? TraceSet{Trace{i.action()}} : TraceSet{};
    case NodeKind::Strict:
        return lift(SchedulingOp::StrictSeq, evaluate(i.left(), bound), evaluate(i.right(), bound),
                    bound);
    case NodeKind::Seq:
        return lift(SchedulingOp::WeakSeq, evaluate(i.left(), bound), evaluate(i.right(), bound),
                    bound);
    case NodeKind::Par:
        return lift(SchedulingOp::Interleave, evaluate(i.left(), bound),
                    evaluate(i.right(), bound), bound);
    case NodeKind::Alt:
        return set_union(evaluate(i.left(), bound), evaluate(i.right(), bound));
    case NodeKind::Loop: {
        const auto sem = loop_semantics(i.loop_kind());
        return closure_up_to(sem.op, evaluate(i.body(), bound), bound, sem.restricted);
    }
    }
    return {};
}

void check_identifiers(const Interaction& i) {
    for (const auto& a : actions_of(i)) {
        if (!is_valid_identifier(a.lifeline) || !is_valid_identifier(a.message)) {
            throw std::invalid_argument("ill-formed action '" + render(a) + "'");
        }
    }
}

} // namespace

TraceSet sigma_d(const DenotationRequest& req) {
    check_identifiers(req.interaction);
    if (req.signature && !well_formed(req.interaction, *req.signature)) {
        throw std::invalid_argument("interaction is not well-formed against its signature");
    }
    return evaluate(req.interaction, req.bound);
}

TraceSet sigma_d(const Interaction& i, std::size_t max_len) {
    return sigma_d(DenotationRequest{i, Bound{max_len}, std::nullopt});
}

TraceSet sigma_d_exact(const Interaction& i) {
    if (contains_loop(i)) {
        throw std::invalid_argument("exact semantics requires a loop-free interaction");
    }
    check_identifiers(i);
    return evaluate(i, Bound::unbounded());
}

} // namespace isd
