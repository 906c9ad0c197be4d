#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isd/core.hpp"
#include "isd/operational.hpp"
#include "isd/trace_algebra.hpp"

// Random term generation, negative-case mutation, reference oracles, and the
// differential check between the operational and denotational semantics.
namespace isd::harness {

/// Constructor names accepted as keys of GenConfig::operator_weights.
inline constexpr const char* kConstructorNames[] = {
    "empty", "action", "strict", "seq", "par", "alt", "loopX", "loopH", "loopS", "loopP"};

struct GenConfig {
    std::uint64_t seed = 0;
    unsigned max_depth = 4;
    unsigned lifeline_count = 3;
    unsigned message_count = 3;
    /// Missing entries weigh 1.
    std::map<std::string, double> operator_weights;
    /// Loop weights are scaled by decay^level below the root.
    double loop_probability_decay = 0.5;

    /// Throws std::invalid_argument on unknown constructor names, negative
    /// weights, zero alphabets, a decay outside [0,1], or when no leaf
    /// constructor has positive weight.
    void validate() const;
};

/// Lifelines l1..lN and messages m1..mM.
Signature generated_signature(const GenConfig& cfg);

/// A random well-formed term of depth at most cfg.max_depth. Pure in `cfg`.
Interaction gen_interaction(const GenConfig& cfg);

/// A random trace set over `sig` with up to `max_traces` members of length
/// at most `max_trace_len` (the empty trace included).
TraceSet gen_trace_set(std::uint64_t seed, const Signature& sig, std::size_t max_traces,
                       std::size_t max_trace_len);

/// One random edit: swap two adjacent actions, drop an action, or insert a
/// copy of an action next to it. The empty trace is returned unchanged.
Trace mutate_trace(const Trace& t, std::uint64_t seed);

/// Seed of trial `index` under `root`, independent of scheduling order.
std::uint64_t trial_seed(std::uint64_t root, std::uint64_t index) noexcept;

// Reference oracles. They follow the recursive definitions literally and do
// not share code with the trace_algebra module.
namespace reference {

TraceSet interleavings(const Trace& t1, const Trace& t2);
TraceSet weak_seq(const Trace& t1, const Trace& t2);
TraceSet lift(SchedulingOp op, const TraceSet& lhs, const TraceSet& rhs);
/// Filters lift(op, lhs, rhs) by the defining head condition.
TraceSet lift_restricted(SchedulingOp op, const TraceSet& lhs, const TraceSet& rhs);

} // namespace reference

/// Union of the powers 0..max_power of `base` under `op` (restricted or
/// not), keeping traces of length at most `max_len`. Each power is built
/// from the previous one and truncated to `max_len`.
TraceSet brute_force_closure(SchedulingOp op, const TraceSet& base, std::size_t max_power,
                             bool restricted, std::size_t max_len);

struct EquivConfig {
    std::uint64_t seed = 42;
    std::size_t cases = 500;
    unsigned max_depth = 4;
    std::size_t max_len = 6;
    /// Template for the per-case generator; its seed and depth are replaced.
    GenConfig generator;
};

struct Discrepancy {
    std::uint64_t seed = 0;
    std::string term;
    std::size_t bound = 0;
    std::vector<std::string> missing_in_operational;
    std::vector<std::string> missing_in_denotational;

    /// {"seed", "term", "bound", "missing_in_operational",
    ///  "missing_in_denotational"} as a single-line JSON object.
    std::string to_json() const;
};

struct CaseResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::string term;
    std::size_t trace_count = 0;
    std::optional<Discrepancy> discrepancy;
};

struct EquivReport {
    std::vector<CaseResult> cases;

    std::size_t equivalent() const noexcept;
    bool ok() const noexcept { return equivalent() == cases.size(); }
};

/// Runs cfg.cases random terms through both semantics. Trials run in
/// parallel; results are ordered by case index. `steps` replaces the
/// execution relation on the operational side.
EquivReport run_differential(const EquivConfig& cfg);
EquivReport run_differential(const EquivConfig& cfg, const StepFunction& steps);

} // namespace isd::harness
