#include "recplant/dac/memory.hpp"

#include <algorithm>
#include <cmath>

namespace recplant::dac {

bool SequenceMemory::duplicate_of(const Sequence& a, const Sequence& b) const {
    if (a.goal != b.goal || a.segments.size() != b.segments.size()) return false;
    for (std::size_t i = 0; i < a.segments.size(); ++i) {
        if (cosine(a.segments[i].prototype, b.segments[i].prototype) < params_.duplicate_cosine)
            return false;
    }
    return true;
}

void SequenceMemory::consolidate(ShortTermMemory& stm, const std::string& goal, double reward,
                                 const Origin& origin, Tick now) {
    if (stm.empty()) return;
    Sequence seq;
    seq.segments.assign(stm.segments().begin(), stm.segments().end());
    seq.goal = goal;
    seq.value = std::clamp(reward, 0.0, 1.0);
    seq.origin = origin;
    seq.primes.assign(seq.segments.size(), 1.0);
    seq.last_touch = now;
    stm.clear();

    for (auto& existing : sequences_) {
        if (duplicate_of(existing, seq)) {
            existing.value += params_.consolidation_rate * (seq.value - existing.value);
            existing.use_count += 1;
            existing.last_touch = now;
            return;
        }
    }
    sequences_.push_back(std::move(seq));
    evict_to_capacity(now);
}

std::optional<ContextualChoice> SequenceMemory::select(const SensoryPrototype& prototype,
                                                       const std::string& goal, Tick now) {
    int best_seq = -1, best_seg = -1;
    double best_score = 0.0;
    for (int si = 0; si < static_cast<int>(sequences_.size()); ++si) {
        const Sequence& s = sequences_[si];
        if (!goal.empty() && s.goal != goal) continue;
        int n = static_cast<int>(s.segments.size());
        for (int gi = 0; gi < n; ++gi) {
            double c = cosine(prototype, s.segments[gi].prototype);
            if (c <= 0) continue;
            double score = c * s.primes[gi] * s.value * std::pow(params_.gamma, n - 1 - gi);
            if (score > best_score) { // strict: ties keep lowest (seq, seg)
                best_score = score;
                best_seq = si;
                best_seg = gi;
            }
        }
    }
    if (best_seq < 0 || best_score < params_.theta_c) return std::nullopt;

    Sequence& s = sequences_[best_seq];
    if (best_seg + 1 < static_cast<int>(s.segments.size()))
        s.primes[best_seg + 1] *= params_.beta; // internal chaining
    s.use_count += 1;
    s.last_touch = now;
    return ContextualChoice{s.segments[best_seg].action, best_score, best_seq, best_seg};
}

void SequenceMemory::decay_primes() {
    for (auto& s : sequences_)
        for (double& p : s.primes) p = 1.0 + (p - 1.0) * params_.lambda;
}

void SequenceMemory::insert(Sequence seq, Tick now) {
    if (seq.primes.size() != seq.segments.size()) seq.primes.assign(seq.segments.size(), 1.0);
    seq.last_touch = now;
    sequences_.push_back(std::move(seq));
    evict_to_capacity(now);
}

int SequenceMemory::merge(const std::vector<Sequence>& incoming, Tick now) {
    // Canonical fold: all candidates sorted by origin, then greedy keep-first.
    // Sorting by origin makes the result independent of merge bracketing.
    std::vector<Sequence> pool = sequences_;
    pool.insert(pool.end(), incoming.begin(), incoming.end());
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Sequence& a, const Sequence& b) { return a.origin < b.origin; });
    std::vector<Sequence> kept;
    kept.reserve(pool.size());
    for (auto& cand : pool) {
        bool dup = false;
        for (auto& k : kept) {
            if (duplicate_of(k, cand)) {
                dup = true;
                if (cand.value > k.value) k.value = cand.value;
                break;
            }
        }
        if (!dup) kept.push_back(std::move(cand));
    }
    int added = static_cast<int>(kept.size()) - static_cast<int>(sequences_.size());
    sequences_ = std::move(kept);
    evict_to_capacity(now);
    return std::max(added, 0);
}

void SequenceMemory::evict_to_capacity(Tick now) {
    while (sequences_.size() > params_.ltm_capacity) {
        // lowest value x recency goes first; ties by lexicographic origin
        int worst = 0;
        double worst_score = 0;
        for (int i = 0; i < static_cast<int>(sequences_.size()); ++i) {
            const Sequence& s = sequences_[i];
            double recency = 1.0 / (1.0 + static_cast<double>(now - s.last_touch));
            double score = s.value * recency;
            if (i == 0 || score < worst_score ||
                (score == worst_score && s.origin < sequences_[worst].origin)) {
                worst = i;
                worst_score = score;
            }
        }
        sequences_.erase(sequences_.begin() + worst);
    }
}

} // namespace recplant::dac
