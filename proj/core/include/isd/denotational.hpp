#pragma once

#include <optional>

#include "isd/core.hpp"
#include "isd/trace_algebra.hpp"

namespace isd {

struct DenotationRequest {
    Interaction interaction;
    Bound bound;
    /// When set, the interaction is checked against it before evaluation.
    std::optional<Signature> signature;
};

/// The denotational trace semantics restricted to traces of length at most
/// `req.bound.max_len`, computed by structural recursion.
///
/// Throws std::invalid_argument when the interaction uses an identifier that
/// is lexically invalid or absent from `req.signature`.
TraceSet sigma_d(const DenotationRequest& req);

TraceSet sigma_d(const Interaction& i, std::size_t max_len);

/// Full semantics of a loop-free interaction. Throws std::invalid_argument if
/// `i` contains a loop.
TraceSet sigma_d_exact(const Interaction& i);

} // namespace isd
