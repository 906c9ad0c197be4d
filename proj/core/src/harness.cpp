#include "isd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "isd/denotational.hpp"
#include "isd/dsl.hpp"

namespace isd::harness {

namespace {

// Draws are taken straight from the engine so that sequences do not depend
// on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::size_t pick(const std::vector<double>& weights) {
        double total = 0;
        for (double w : weights) {
            total += w;
        }
        double x = unit() * total;
        for (std::size_t k = 0; k < weights.size(); ++k) {
            if (weights[k] <= 0) {
                continue;
            }
            if (x < weights[k]) {
                return k;
            }
            x -= weights[k];
        }
        for (std::size_t k = weights.size(); k-- > 0;) {
            if (weights[k] > 0) {
                return k;
            }
        }
        return 0;
    }

private:
    std::mt19937_64 engine_;
};

enum Ctor : std::size_t { kEmpty, kAction, kStrict, kSeq, kPar, kAlt, kLoopX, kLoopH, kLoopS, kLoopP };
constexpr std::size_t kCtorCount = 10;

bool is_loop(std::size_t c) { return c >= kLoopX; }

std::vector<double> weights_of(const GenConfig& cfg) {
    std::vector<double> w(kCtorCount, 1.0);
    for (std::size_t c = 0; c < kCtorCount; ++c) {
        if (auto it = cfg.operator_weights.find(kConstructorNames[c]);
            it != cfg.operator_weights.end()) {
            w[c] = it->second;
        }
    }
    return w;
}

class Generator {
public:
    explicit Generator(const GenConfig& cfg)
        : cfg_(cfg), weights_(weights_of(cfg)), rng_(cfg.seed), sig_(generated_signature(cfg)) {}

    Interaction term(unsigned level) {
        std::vector<double> w = weights_;
        const double loop_scale = std::pow(cfg_.loop_probability_decay, level);
        bool has_inner = false;
        for (std::size_t c = 0; c < kCtorCount; ++c) {
            if (level >= cfg_.max_depth && c > kAction) {
                w[c] = 0;
            } else if (is_loop(c)) {
                w[c] *= loop_scale;
            }
            has_inner = has_inner || (c > kAction && w[c] > 0);
        }
        if (!has_inner && w[kEmpty] <= 0 && w[kAction] <= 0) {
            w[kAction] = 1;
        }
        switch (rng_.pick(w)) {
        case kEmpty: return Interaction::empty();
        case kAction: return Interaction::act(action());
        case kStrict: return binary(NodeKind::Strict, level);
        case kSeq: return binary(NodeKind::Seq, level);
        case kPar: return binary(NodeKind::Par, level);
        case kAlt: return binary(NodeKind::Alt, level);
        case kLoopX: return Interaction::loop(LoopKind::X, term(level + 1));
        case kLoopH: return Interaction::loop(LoopKind::H, term(level + 1));
        case kLoopS: return Interaction::loop(LoopKind::S, term(level + 1));
        default: return Interaction::loop(LoopKind::P, term(level + 1));
        }
    }

private:
    Interaction binary(NodeKind kind, unsigned level) {
        Interaction left = term(level + 1);
        Interaction right = term(level + 1);
        return Interaction::binary(kind, std::move(left), std::move(right));
    }

    Action action() {
        const auto& ls = sig_.lifelines();
        const auto& ms = sig_.messages();
        Identifier l = ls[rng_.below(ls.size())];
        const auto kind = rng_.below(2) == 0 ? ActionKind::Emission : ActionKind::Reception;
        Identifier m = ms[rng_.below(ms.size())];
        return Action{std::move(l), kind, std::move(m)};
    }

    const GenConfig& cfg_;
    std::vector<double> weights_;
    Rng rng_;
    Signature sig_;
};

std::vector<std::string> rendered(const TraceSet& traces) {
    std::vector<std::string> out;
    out.reserve(traces.size());
    for (const auto& t : traces) {
        out.push_back(render(t));
    }
    return out;
}

Trace tail_of(const Trace& t) { return Trace(t.begin() + 1, t.end()); }

Trace cons(const Action& a, const Trace& t) {
    Trace out{a};
    out.insert(out.end(), t.begin(), t.end());
    return out;
}

bool conflicts(const Trace& t, const Identifier& l) {
    return std::any_of(t.begin(), t.end(), [&](const Action& a) { return a.lifeline == l; });
}

TraceSet reference_schedule(SchedulingOp op, const Trace& t1, const Trace& t2) {
    switch (op) {
    case SchedulingOp::StrictSeq: {
        Trace t = t1;
        t.insert(t.end(), t2.begin(), t2.end());
        return TraceSet{t};
    }
    case SchedulingOp::WeakSeq:
        return reference::weak_seq(t1, t2);
    case SchedulingOp::Interleave:
        return reference::interleavings(t1, t2);
    }
    return {};
}

} // namespace

void GenConfig::validate() const {
    for (const auto& [name, weight] : operator_weights) {
        const bool known = std::any_of(std::begin(kConstructorNames), std::end(kConstructorNames),
                                       [&](const char* n) { return name == n; });
        if (!known) {
            throw std::invalid_argument("unknown constructor '" + name + "'");
        }
        if (!(weight >= 0)) {
            throw std::invalid_argument("negative weight for '" + name + "'");
        }
    }
    if (lifeline_count == 0 || message_count == 0) {
        throw std::invalid_argument("alphabets must be non-empty");
    }
    if (!(loop_probability_decay >= 0 && loop_probability_decay <= 1)) {
        throw std::invalid_argument("loop_probability_decay must lie in [0,1]");
    }
    const auto w = weights_of(*this);
    if (w[kEmpty] <= 0 && w[kAction] <= 0) {
        throw std::invalid_argument("at least one leaf constructor needs a positive weight");
    }
}

Signature generated_signature(const GenConfig& cfg) {
    std::vector<Identifier> ls;
    std::vector<Identifier> ms;
    for (unsigned k = 1; k <= cfg.lifeline_count; ++k) {
        ls.push_back("l" + std::to_string(k));
    }
    for (unsigned k = 1; k <= cfg.message_count; ++k) {
        ms.push_back("m" + std::to_string(k));
    }
    return Signature(std::move(ls), std::move(ms));
}

Interaction gen_interaction(const GenConfig& cfg) {
    cfg.validate();
    Generator gen(cfg);
    return gen.term(0);
}

TraceSet gen_trace_set(std::uint64_t seed, const Signature& sig, std::size_t max_traces,
                       std::size_t max_trace_len) {
    Rng rng(seed);
    TraceSet out;
    const auto count = rng.below(max_traces + 1);
    for (std::uint64_t k = 0; k < count; ++k) {
        Trace t;
        const auto len = rng.below(max_trace_len + 1);
        for (std::uint64_t p = 0; p < len; ++p) {
            const auto& l = sig.lifelines()[rng.below(sig.lifelines().size())];
            const auto kind = rng.below(2) == 0 ? ActionKind::Emission : ActionKind::Reception;
            const auto& m = sig.messages()[rng.below(sig.messages().size())];
            t.push_back(Action{l, kind, m});
        }
        out.insert(std::move(t));
    }
    return out;
}

Trace mutate_trace(const Trace& t, std::uint64_t seed) {
    if (t.empty()) {
        return t;
    }
    Rng rng(seed);
    enum Edit { Swap, Drop, Duplicate };
    std::vector<Edit> edits;
    if (t.size() >= 2) {
        edits.push_back(Swap);
    }
    edits.push_back(Drop);
    edits.push_back(Duplicate);
    Trace out = t;
    const auto pos = rng.below(t.size());
    switch (edits[rng.below(edits.size())]) {
    case Swap: {
        const auto k = rng.below(t.size() - 1);
        std::swap(out[k], out[k + 1]);
        break;
    }
    case Drop:
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos));
        break;
    case Duplicate:
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), t[pos]);
        break;
    }
    return out;
}

std::uint64_t trial_seed(std::uint64_t root, std::uint64_t index) noexcept {
    // splitmix64 over the pair
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace reference {

TraceSet interleavings(const Trace& t1, const Trace& t2) {
    if (t1.empty()) {
        return TraceSet{t2};
    }
    if (t2.empty()) {
        return TraceSet{t1};
    }
    TraceSet out;
    for (const auto& t : reference::interleavings(tail_of(t1), t2)) {
        out.insert(cons(t1.front(), t));
    }
    for (const auto& t : reference::interleavings(t1, tail_of(t2))) {
        out.insert(cons(t2.front(), t));
    }
    return out;
}

TraceSet weak_seq(const Trace& t1, const Trace& t2) {
    if (t1.empty()) {
        return TraceSet{t2};
    }
    if (t2.empty()) {
        return TraceSet{t1};
    }
    TraceSet out;
    for (const auto& t : reference::weak_seq(tail_of(t1), t2)) {
        out.insert(cons(t1.front(), t));
    }
    if (!conflicts(t1, t2.front().lifeline)) {
        for (const auto& t : reference::weak_seq(t1, tail_of(t2))) {
            out.insert(cons(t2.front(), t));
        }
    }
    return out;
}

TraceSet lift(SchedulingOp op, const TraceSet& lhs, const TraceSet& rhs) {
    TraceSet out;
    for (const auto& t1 : lhs) {
        for (const auto& t2 : rhs) {
            out.merge(reference_schedule(op, t1, t2));
        }
    }
    return out;
}

TraceSet lift_restricted(SchedulingOp op, const TraceSet& lhs, const TraceSet& rhs) {
    TraceSet out;
    for (const auto& t : reference::lift(op, lhs, rhs)) {
        if (t.empty()) {
            out.insert(t);
            continue;
        }
        const Trace rest = tail_of(t);
        bool head_from_lhs = false;
        for (const auto& candidate : lhs) {
            if (candidate.empty() || candidate.front() != t.front()) {
                continue;
            }
            for (const auto& t2 : rhs) {
                if (reference_schedule(op, tail_of(candidate), t2).contains(rest)) {
                    head_from_lhs = true;
                    break;
                }
            }
            if (head_from_lhs) {
                break;
            }
        }
        if (head_from_lhs) {
            out.insert(t);
        }
    }
    return out;
}

} // namespace reference

TraceSet brute_force_closure(SchedulingOp op, const TraceSet& base, std::size_t max_power,
                             bool restricted, std::size_t max_len) {
    TraceSet rung = TraceSet::epsilon();
    TraceSet out = rung;
    for (std::size_t j = 1; j <= max_power; ++j) {
        rung = (restricted ? reference::lift_restricted(op, base, rung)
                           : reference::lift(op, base, rung))
                   .truncated(max_len);
        out.merge(rung);
    }
    return out.truncated(max_len);
}

std::string Discrepancy::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["term"] = term;
    j["bound"] = bound;
    j["missing_in_operational"] = missing_in_operational;
    j["missing_in_denotational"] = missing_in_denotational;
    return j.dump();
}

std::size_t EquivReport::equivalent() const noexcept {
    return static_cast<std::size_t>(std::count_if(
        cases.begin(), cases.end(), [](const CaseResult& c) { return !c.discrepancy; }));
}

EquivReport run_differential(const EquivConfig& cfg) {
    const StepFunction steps = [](const Interaction& i) { return next_steps(i); };
    return run_differential(cfg, steps);
}

EquivReport run_differential(const EquivConfig& cfg, const StepFunction& steps) {
    GenConfig base = cfg.generator;
    base.max_depth = cfg.max_depth;
    base.validate();

    EquivReport report;
    report.cases.resize(cfg.cases);

    auto run_case = [&](std::size_t index) {
        GenConfig gen = base;
        gen.seed = trial_seed(cfg.seed, index);
        const Interaction term = gen_interaction(gen);
        const TraceSet den = sigma_d(term, cfg.max_len);
        const TraceSet op = sigma_o_up_to(term, cfg.max_len, steps);

        CaseResult& result = report.cases[index];
        result.index = index;
        result.seed = gen.seed;
        result.term = render_interaction(term);
        result.trace_count = den.size();
        if (den != op) {
            Discrepancy d;
            d.seed = gen.seed;
            d.term = result.term;
            d.bound = cfg.max_len;
            d.missing_in_operational = rendered(set_difference(den, op));
            d.missing_in_denotational = rendered(set_difference(op, den));
            result.discrepancy = std::move(d);
        }
    };

    const unsigned workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(std::max<std::size_t>(1, cfg.cases))));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < cfg.cases; k = next++) {
                run_case(k);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    return report;
}

} // namespace isd::harness
