#include "isd/core.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace isd {

namespace {

bool is_ascii_letter(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ascii_digit(char c) noexcept { return c >= '0' && c <= '9'; }

std::size_t hash_combine(std::size_t seed, std::size_t value) noexcept {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

void check_alphabet(const std::vector<Identifier>& ids, const char* what) {
    if (ids.empty()) {
        throw std::invalid_argument(std::string("empty ") + what + " alphabet");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& id : ids) {
        if (!is_valid_identifier(id)) {
            throw std::invalid_argument("invalid " + std::string(what) + " identifier '" + id + "'");
        }
        if (!seen.insert(id).second) {
            throw std::invalid_argument("duplicate " + std::string(what) + " '" + id + "'");
        }
    }
}

} // namespace

bool is_valid_identifier(std::string_view text) noexcept {
    if (text.empty() || !is_ascii_letter(text.front())) {
        return false;
    }
    return std::all_of(text.begin() + 1, text.end(), [](char c) {
        return is_ascii_letter(c) || is_ascii_digit(c) || c == '_';
    });
}

Action Action::emission(Identifier lifeline, Identifier message) {
    return Action{std::move(lifeline), ActionKind::Emission, std::move(message)};
}

Action Action::reception(Identifier lifeline, Identifier message) {
    return Action{std::move(lifeline), ActionKind::Reception, std::move(message)};
}

const Identifier& lifeline_of(const Action& a) noexcept { return a.lifeline; }

std::strong_ordering operator<=>(const Action& lhs, const Action& rhs) noexcept {
    // Walks both renderings "lifeline sym message" without building them.
    auto at = [](const Action& a, std::size_t k) -> int {
        const std::size_t n = a.lifeline.size();
        if (k < n) {
            return static_cast<unsigned char>(a.lifeline[k]);
        }
        if (k == n) {
            return a.kind == ActionKind::Emission ? '!' : '?';
        }
        k -= n + 1;
        return k < a.message.size() ? static_cast<unsigned char>(a.message[k]) : -1;
    };
    const std::size_t len =
        std::max(lhs.lifeline.size() + lhs.message.size(), rhs.lifeline.size() + rhs.message.size()) + 1;
    for (std::size_t k = 0; k < len; ++k) {
        const int x = at(lhs, k);
        const int y = at(rhs, k);
        if (x != y) {
            return x < y ? std::strong_ordering::less : std::strong_ordering::greater;
        }
    }
    return std::strong_ordering::equal;
}

std::string render(const Action& a) {
    std::string out;
    out.reserve(a.lifeline.size() + a.message.size() + 1);
    out += a.lifeline;
    out += a.kind == ActionKind::Emission ? '!' : '?';
    out += a.message;
    return out;
}

std::string render(const Trace& t) {
    if (t.empty()) {
        return "eps";
    }
    std::string out;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k != 0) {
            out += '.';
        }
        out += render(t[k]);
    }
    return out;
}

bool CanonicalTraceOrder::operator()(const Trace& lhs, const Trace& rhs) const noexcept {
    if (lhs.size() != rhs.size()) {
        return lhs.size() < rhs.size();
    }
    return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

TraceSet::TraceSet(std::initializer_list<Trace> traces) : traces_(traces) {}

void TraceSet::merge(const TraceSet& other) {
    traces_.insert(other.traces_.begin(), other.traces_.end());
}

std::size_t TraceSet::max_length() const noexcept {
    // Canonical order puts the longest traces last.
    return traces_.empty() ? 0 : traces_.rbegin()->size();
}

TraceSet TraceSet::truncated(std::size_t max_len) const {
    TraceSet out;
    for (const auto& t : traces_) {
        if (t.size() > max_len) {
            break;
        }
        out.traces_.insert(out.traces_.end(), t);
    }
    return out;
}

bool TraceSet::is_subset_of(const TraceSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end(), CanonicalTraceOrder{});
}

TraceSet set_union(const TraceSet& lhs, const TraceSet& rhs) {
    TraceSet out = lhs;
    out.merge(rhs);
    return out;
}

TraceSet set_difference(const TraceSet& lhs, const TraceSet& rhs) {
    TraceSet out;
    for (const auto& t : lhs) {
        if (!rhs.contains(t)) {
            out.insert(t);
        }
    }
    return out;
}

std::string render(const TraceSet& traces) {
    std::string out;
    for (const auto& t : traces) {
        out += render(t);
        out += '\n';
    }
    return out;
}

// Signature

Signature::Signature(std::vector<Identifier> lifelines, std::vector<Identifier> messages)
    : lifelines_(std::move(lifelines)), messages_(std::move(messages)) {
    check_alphabet(lifelines_, "lifeline");
    check_alphabet(messages_, "message");
}

Signature Signature::from_actions(const std::vector<Action>& actions) {
    Signature sig;
    for (const auto& a : actions) {
        if (!sig.has_lifeline(a.lifeline)) {
            sig.lifelines_.push_back(a.lifeline);
        }
        if (!sig.has_message(a.message)) {
            sig.messages_.push_back(a.message);
        }
    }
    return sig;
}

bool Signature::has_lifeline(std::string_view l) const noexcept {
    return std::find(lifelines_.begin(), lifelines_.end(), l) != lifelines_.end();
}

bool Signature::has_message(std::string_view m) const noexcept {
    return std::find(messages_.begin(), messages_.end(), m) != messages_.end();
}

bool Signature::admits(const Action& a) const noexcept {
    return has_lifeline(a.lifeline) && has_message(a.message);
}

// Interaction

std::string_view loop_name(LoopKind k) noexcept {
    switch (k) {
    case LoopKind::X: return "loopX";
    case LoopKind::H: return "loopH";
    case LoopKind::S: return "loopS";
    case LoopKind::P: return "loopP";
    }
    return "loop?";
}

std::string_view constructor_name(NodeKind k) noexcept {
    switch (k) {
    case NodeKind::Empty: return "0";
    case NodeKind::Act: return "action";
    case NodeKind::Strict: return "strict";
    case NodeKind::Seq: return "seq";
    case NodeKind::Par: return "par";
    case NodeKind::Alt: return "alt";
    case NodeKind::Loop: return "loop";
    }
    return "?";
}

struct Interaction::Node {
    NodeKind kind = NodeKind::Empty;
    LoopKind loop = LoopKind::X;
    Action action;
    std::array<std::optional<Interaction>, 2> children;
    std::size_t size = 1;
    std::size_t hash = 0;
};

Interaction::Interaction() {
    static const std::shared_ptr<const Node> empty_node = [] {
        auto n = std::make_shared<Node>();
        n->hash = 0x5bd1e995u;
        return std::shared_ptr<const Node>(std::move(n));
    }();
    node_ = empty_node;
}

Interaction::Interaction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Interaction Interaction::act(Action a) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Act;
    std::size_t h = std::hash<std::string>{}(a.lifeline);
    h = hash_combine(h, static_cast<std::size_t>(a.kind));
    h = hash_combine(h, std::hash<std::string>{}(a.message));
    n->hash = hash_combine(static_cast<std::size_t>(NodeKind::Act), h);
    n->action = std::move(a);
    return Interaction(std::move(n));
}

Interaction Interaction::binary(NodeKind kind, Interaction left, Interaction right) {
    if (kind != NodeKind::Strict && kind != NodeKind::Seq && kind != NodeKind::Par &&
        kind != NodeKind::Alt) {
        throw std::invalid_argument("not a binary constructor");
    }
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->size = 1 + left.size() + right.size();
    n->hash = hash_combine(hash_combine(static_cast<std::size_t>(kind) * 31, left.hash()),
                           right.hash());
    n->children[0] = std::move(left);
    n->children[1] = std::move(right);
    return Interaction(std::move(n));
}

Interaction Interaction::strict(Interaction left, Interaction right) {
    return binary(NodeKind::Strict, std::move(left), std::move(right));
}

Interaction Interaction::seq(Interaction left, Interaction right) {
    return binary(NodeKind::Seq, std::move(left), std::move(right));
}

Interaction Interaction::par(Interaction left, Interaction right) {
    return binary(NodeKind::Par, std::move(left), std::move(right));
}

Interaction Interaction::alt(Interaction left, Interaction right) {
    return binary(NodeKind::Alt, std::move(left), std::move(right));
}

Interaction Interaction::loop(LoopKind kind, Interaction body) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Loop;
    n->loop = kind;
    n->size = 1 + body.size();
    n->hash = hash_combine(0x10000 + static_cast<std::size_t>(kind), body.hash());
    n->children[0] = std::move(body);
    return Interaction(std::move(n));
}

NodeKind Interaction::kind() const noexcept { return node_->kind; }

bool Interaction::is_binary() const noexcept {
    switch (kind()) {
    case NodeKind::Strict:
    case NodeKind::Seq:
    case NodeKind::Par:
    case NodeKind::Alt:
        return true;
    default:
        return false;
    }
}

const Action& Interaction::action() const {
    assert(kind() == NodeKind::Act);
    return node_->action;
}

const Interaction& Interaction::left() const {
    assert(is_binary());
    return *node_->children[0];
}

const Interaction& Interaction::right() const {
    assert(is_binary());
    return *node_->children[1];
}

const Interaction& Interaction::body() const {
    assert(kind() == NodeKind::Loop);
    return *node_->children[0];
}

LoopKind Interaction::loop_kind() const {
    assert(kind() == NodeKind::Loop);
    return node_->loop;
}

std::size_t Interaction::size() const noexcept { return node_->size; }

std::size_t Interaction::hash() const noexcept { return node_->hash; }

bool operator==(const Interaction& lhs, const Interaction& rhs) noexcept {
    if (lhs.node_ == rhs.node_) {
        return true;
    }
    const auto& a = *lhs.node_;
    const auto& b = *rhs.node_;
    if (a.hash != b.hash || a.kind != b.kind || a.size != b.size) {
        return false;
    }
    switch (a.kind) {
    case NodeKind::Empty:
        return true;
    case NodeKind::Act:
        return a.action == b.action;
    case NodeKind::Loop:
        return a.loop == b.loop && a.children[0] == b.children[0];
    default:
        return a.children[0] == b.children[0] && a.children[1] == b.children[1];
    }
}

std::size_t term_size(const Interaction& i) noexcept { return i.size(); }

bool contains_loop(const Interaction& i) noexcept {
    switch (i.kind()) {
    case NodeKind::Empty:
    case NodeKind::Act:
        return false;
    case NodeKind::Loop:
        return true;
    default:
        return contains_loop(i.left()) || contains_loop(i.right());
    }
}

namespace {

void collect_actions(const Interaction& i, std::vector<Action>& out) {
    switch (i.kind()) {
    case NodeKind::Empty:
        return;
    case NodeKind::Act:
        out.push_back(i.action());
        return;
    case NodeKind::Loop:
        collect_actions(i.body(), out);
        return;
    default:
        collect_actions(i.left(), out);
        collect_actions(i.right(), out);
    }
}

} // namespace

std::vector<Action> actions_of(const Interaction& i) {
    std::vector<Action> out;
    collect_actions(i, out);
    return out;
}

bool well_formed(const Interaction& i, const Signature& sig) noexcept {
    switch (i.kind()) {
    case NodeKind::Empty:
        return true;
    case NodeKind::Act:
        return sig.admits(i.action());
    case NodeKind::Loop:
        return well_formed(i.body(), sig);
    default:
        return well_formed(i.left(), sig) && well_formed(i.right(), sig);
    }
}

} // namespace isd
