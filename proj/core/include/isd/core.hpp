#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

/**
 * Core vocabulary of the interaction language: signatures, actions, traces,
 * finite trace sets and interaction terms.
 *
 * All values are immutable once built. Interaction terms share structure
 * through reference-counted nodes, so copying a term is cheap and subterms
 * can be reused freely by the semantics engines.
 */
namespace isd {

using Identifier = std::string;

/// True iff `text` is a letter followed by letters, digits or underscores.
bool is_valid_identifier(std::string_view text) noexcept;

enum class ActionKind : std::uint8_t { Emission, Reception };

/// An emission `l!m` or a reception `l?m` located on lifeline `l`.
/// Actions are ordered by their rendered form.
struct Action {
    Identifier lifeline;
    ActionKind kind = ActionKind::Emission;
    Identifier message;

    static Action emission(Identifier lifeline, Identifier message);
    static Action reception(Identifier lifeline, Identifier message);

    friend bool operator==(const Action&, const Action&) = default;
    friend std::strong_ordering operator<=>(const Action& lhs, const Action& rhs) noexcept;
};

const Identifier& lifeline_of(const Action& a) noexcept;

std::string render(const Action& a);

using Trace = std::vector<Action>;

/// Actions joined by "."; the empty trace renders as "eps".
std::string render(const Trace& t);

/// Shorter traces first, then lexicographic over the actions.
struct CanonicalTraceOrder {
    bool operator()(const Trace& lhs, const Trace& rhs) const noexcept;
};

/// A finite, duplicate-free set of traces iterated in canonical order.
class TraceSet {
public:
    using container_type = std::set<Trace, CanonicalTraceOrder>;
    using const_iterator = container_type::const_iterator;

    TraceSet() = default;
    TraceSet(std::initializer_list<Trace> traces);

    static TraceSet epsilon() { return TraceSet{Trace{}}; }

    bool insert(Trace t) { return traces_.insert(std::move(t)).second; }
    void merge(const TraceSet& other);

    bool contains(const Trace& t) const { return traces_.contains(t); }
    bool contains_epsilon() const { return contains(Trace{}); }
    bool empty() const noexcept { return traces_.empty(); }
    std::size_t size() const noexcept { return traces_.size(); }
    /// Length of the longest member, 0 for an empty set.
    std::size_t max_length() const noexcept;

    const_iterator begin() const noexcept { return traces_.begin(); }
    const_iterator end() const noexcept { return traces_.end(); }

    /// Members of length at most `max_len`.
    TraceSet truncated(std::size_t max_len) const;

    bool is_subset_of(const TraceSet& other) const;

    friend bool operator==(const TraceSet&, const TraceSet&) = default;

private:
    container_type traces_;
};

TraceSet set_union(const TraceSet& lhs, const TraceSet& rhs);
TraceSet set_difference(const TraceSet& lhs, const TraceSet& rhs);

/// One trace per line, "eps" for the empty trace.
std::string render(const TraceSet& traces);

/// Declared lifeline and message alphabets.
class Signature {
public:
    /// Throws std::invalid_argument if either alphabet is empty, contains a
    /// duplicate, or contains an identifier that is not lexically valid.
    Signature(std::vector<Identifier> lifelines, std::vector<Identifier> messages);

    /// Alphabets exactly as they occur in `actions`, in order of first
    /// appearance. Either alphabet may be empty when no action occurs.
    static Signature from_actions(const std::vector<Action>& actions);

    const std::vector<Identifier>& lifelines() const noexcept { return lifelines_; }
    const std::vector<Identifier>& messages() const noexcept { return messages_; }

    bool has_lifeline(std::string_view l) const noexcept;
    bool has_message(std::string_view m) const noexcept;
    bool admits(const Action& a) const noexcept;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    Signature() = default;

    std::vector<Identifier> lifelines_;
    std::vector<Identifier> messages_;
};

enum class LoopKind : std::uint8_t { X, H, S, P };

enum class NodeKind : std::uint8_t { Empty, Act, Strict, Seq, Par, Alt, Loop };

std::string_view loop_name(LoopKind k) noexcept;
std::string_view constructor_name(NodeKind k) noexcept;

/// An interaction term. Binary constructors only; n-ary surface syntax is
/// desugared by the parser.
class Interaction {
public:
    /// The empty interaction.
    Interaction();

    static Interaction empty() { return Interaction{}; }
    static Interaction act(Action a);
    static Interaction strict(Interaction left, Interaction right);
    static Interaction seq(Interaction left, Interaction right);
    static Interaction par(Interaction left, Interaction right);
    static Interaction alt(Interaction left, Interaction right);
    static Interaction binary(NodeKind kind, Interaction left, Interaction right);
    static Interaction loop(LoopKind kind, Interaction body);

    NodeKind kind() const noexcept;
    bool is_empty() const noexcept { return kind() == NodeKind::Empty; }
    bool is_binary() const noexcept;

    // Accessors below require the matching kind.
    const Action& action() const;
    const Interaction& left() const;
    const Interaction& right() const;
    const Interaction& body() const;
    LoopKind loop_kind() const;

    /// Number of constructor nodes; leaves count as one.
    std::size_t size() const noexcept;
    std::size_t hash() const noexcept;

    friend bool operator==(const Interaction& lhs, const Interaction& rhs) noexcept;

private:
    struct Node;
    explicit Interaction(std::shared_ptr<const Node> node);

    std::shared_ptr<const Node> node_;
};

std::size_t term_size(const Interaction& i) noexcept;

bool contains_loop(const Interaction& i) noexcept;

/// Every action occurring in `i`, in left-to-right order of appearance.
std::vector<Action> actions_of(const Interaction& i);

/// True iff every action of `i` uses lifelines and messages of `sig`.
bool well_formed(const Interaction& i, const Signature& sig) noexcept;

} // namespace isd

template <>
struct std::hash<isd::Interaction> {
    std::size_t operator()(const isd::Interaction& i) const noexcept { return i.hash(); }
};
