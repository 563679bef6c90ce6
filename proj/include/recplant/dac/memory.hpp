#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "recplant/core/action.hpp"
#include "recplant/dac/prototype.hpp"

namespace recplant::dac {

using Tick = std::int64_t;

// Who / What / Where / When / Why / How annotation carried by every segment.
struct H5WTuple {
    std::optional<int> who; // worker cue id
    std::string what;       // focal object: device model, bin material, cue
    std::string where;      // bench / zone / grid cell
    Tick when = 0;
    std::string why;        // active goal id
    std::string how;        // action parameter summary
};

struct Origin {
    std::string agent;
    Tick tick = 0;

    bool operator<(const Origin& o) const {
        if (agent != o.agent) return agent < o.agent;
        return tick < o.tick;
    }
    bool operator==(const Origin& o) const { return agent == o.agent && tick == o.tick; }
};

struct MemorySegment {
    SensoryPrototype prototype;
    ActionPrimitive action;
    H5WTuple h5w;
    Origin origin;
};

struct Sequence {
    std::vector<MemorySegment> segments;
    std::string goal;
    double value = 0.0; // in [0,1]
    int use_count = 0;
    Origin origin;                // origin of the consolidation event
    std::vector<double> primes;   // per segment, >= 1
    Tick last_touch = 0;          // for recency-based eviction
};

struct ContextualChoice {
    ActionPrimitive action;
    double confidence = 0.0;
    int sequence = 0; // index into the store
    int segment = 0;
};

struct MemoryParams {
    double theta_c = 0.5;  // recall threshold
    double gamma = 0.9;    // discount per step remaining to the sequence end
    double beta = 1.5;     // prime boost of the successor on recall
    double lambda = 0.95;  // per-tick decay of (prime - 1)
    std::size_t stm_capacity = 50;
    std::size_t ltm_capacity = 200;
    double duplicate_cosine = 0.99;
    double consolidation_rate = 0.5; // how far value moves toward new reward
};

// Bounded FIFO of recent experience.
class ShortTermMemory {
public:
    explicit ShortTermMemory(std::size_t capacity = 50) : capacity_(capacity) {}

    void push(MemorySegment seg) {
        buf_.push_back(std::move(seg));
        if (buf_.size() > capacity_) buf_.pop_front();
    }
    void clear() { buf_.clear(); }
    bool empty() const { return buf_.empty(); }
    std::size_t size() const { return buf_.size(); }
    const std::deque<MemorySegment>& segments() const { return buf_; }

private:
    std::size_t capacity_;
    std::deque<MemorySegment> buf_;
};

// Long-term store of goal-tagged sequences with sensory-matching recall and
// internal chaining via prime multipliers.
class SequenceMemory {
public:
    explicit SequenceMemory(MemoryParams params = {}) : params_(params) {}

    const MemoryParams& params() const { return params_; }
    const std::vector<Sequence>& sequences() const { return sequences_; }
    std::vector<Sequence>& sequences() { return sequences_; }
    bool empty() const { return sequences_.empty(); }
    std::size_t size() const { return sequences_.size(); }

    // Copy STM into one new sequence valued r (or pull an existing duplicate's
    // value toward r); clears the STM. No-op on empty STM.
    void consolidate(ShortTermMemory& stm, const std::string& goal, double reward,
                     const Origin& origin, Tick now);

    // Best segment across sequences matching `goal` (all goals when empty),
    // scored cosine * prime * value * gamma^(steps to end). On recall the
    // successor's prime is multiplied by beta.
    std::optional<ContextualChoice> select(const SensoryPrototype& prototype,
                                           const std::string& goal, Tick now);

    // Per-tick decay of primes toward 1.
    void decay_primes();

    // Union with dedup: sequences are duplicates when same goal, same length
    // and pairwise segment cosine >= 0.99; the lexicographically smaller
    // origin is kept. Returns number of sequences actually added.
    int merge(const std::vector<Sequence>& incoming, Tick now);

    // direct insertion (used by merge plumbing and tests)
    void insert(Sequence seq, Tick now);

    bool duplicate_of(const Sequence& a, const Sequence& b) const;

private:
    void evict_to_capacity(Tick now);

    MemoryParams params_;
    std::vector<Sequence> sequences_;
};

} // namespace recplant::dac
