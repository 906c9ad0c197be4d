#pragma once

#include <cstddef>
#include <limits>
#include <string_view>

#include "isd/core.hpp"

// Scheduling operators on traces and trace sets, their restricted
// ("head-first") variants, and length-bounded Kleene closures.
namespace isd {

enum class SchedulingOp : std::uint8_t { StrictSeq, WeakSeq, Interleave };

std::string_view op_name(SchedulingOp op) noexcept;

/// Maximum trace length retained when enumerating infinite languages.
struct Bound {
    std::size_t max_len = 0;

    static constexpr Bound unbounded() { return Bound{std::numeric_limits<std::size_t>::max()}; }
    constexpr bool admits(std::size_t len) const noexcept { return len <= max_len; }
};

Trace concat(const Trace& t1, const Trace& t2);

/// True iff some action of `t` occurs on lifeline `l`.
bool has_conflict(const Trace& t, std::string_view l) noexcept;

TraceSet interleavings(const Trace& t1, const Trace& t2);

/// Merges of `t1` and `t2` where an action of `t2` may overtake what is left
/// of `t1` only if that remainder has no action on the same lifeline.
TraceSet weak_seq_traces(const Trace& t1, const Trace& t2);

/// The pairwise operator for `op`; StrictSeq yields the single concatenation.
TraceSet schedule(SchedulingOp op, const Trace& t1, const Trace& t2);

/// Pointwise extension of `op` to sets. Pairs whose combined length exceeds
/// `bound` are skipped; every result of a pair has exactly that length.
TraceSet lift(SchedulingOp op, const TraceSet& lhs, const TraceSet& rhs,
              Bound bound = Bound::unbounded());

/// The restricted operator: members of lift(op, lhs, rhs) whose first action
/// is taken from a trace of `lhs`.
TraceSet lift_restricted(SchedulingOp op, const TraceSet& lhs, const TraceSet& rhs,
                         Bound bound = Bound::unbounded());

/// The j-th power of `base`: {eps} for j = 0, base op power(j-1) otherwise.
TraceSet power(SchedulingOp op, const TraceSet& base, std::size_t j, bool restricted,
               Bound bound = Bound::unbounded());

/// Members of the Kleene closure (or head-first closure when `restricted`)
/// of `base` no longer than `bound.max_len`.
///
/// Computed as the least fixpoint of S -> truncate(S u step(base, S)) from
/// {eps}. The step distributes over unions in its right operand, so only the
/// traces discovered in the previous round need to be fed back in.
TraceSet closure_up_to(SchedulingOp op, const TraceSet& base, Bound bound, bool restricted);

} // namespace isd
