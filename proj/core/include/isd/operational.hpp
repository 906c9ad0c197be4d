#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "isd/core.hpp"

namespace isd {

/// One edge i --a--> i' of the execution relation.
struct Step {
    Action action;
    Interaction successor;

    friend bool operator==(const Step&, const Step&) = default;
};

/// Outcome of a membership query. `witness` holds the steps that consume the
/// trace; it is absent for rejected traces and for the empty trace.
struct Verdict {
    bool accepted = false;
    std::optional<std::vector<Step>> witness;
};

/// The interaction accepts the empty trace.
bool terminates(const Interaction& i) noexcept;

/// The interaction accepts at least one trace with no action on `l`.
bool evades(const Interaction& i, std::string_view l) noexcept;

/// The pruning of `i` with respect to `l`: the largest sub-behaviour of `i`
/// whose traces avoid `l`. std::nullopt when `i` collides with `l`.
std::optional<Interaction> prune(const Interaction& i, std::string_view l);

/// Every (a, i') with i --a--> i', deduplicated and sorted by the rendering
/// of the action, then of the successor.
std::vector<Step> next_steps(const Interaction& i);

using StepFunction = std::function<std::vector<Step>(const Interaction&)>;

Verdict accepts(const Interaction& i, const Trace& t);

/// Traces of length at most `max_len` generated by termination and chains of
/// execution steps.
TraceSet sigma_o_up_to(const Interaction& i, std::size_t max_len);

/// Same exploration driven by an arbitrary step function, used to check the
/// differential harness against deliberately broken rules.
TraceSet sigma_o_up_to(const Interaction& i, std::size_t max_len, const StepFunction& steps);

} // namespace isd
