#ifndef TWW_SEQUENCE_HPP
#define TWW_SEQUENCE_HPP

#include "tww/trigraph.hpp"

#include <cstdint>
#include <optional>

namespace tww {

struct ContractionStep {
    Vid left = 0, right = 0, result = 0;
    bool operator==(const ContractionStep&) const = default;
};

// A contraction sequence is the NP certificate: an ordered list of merges
// replayed from a base trigraph. Non-partial sequences end on K1.
struct ContractionSequence {
    Trigraph base;
    std::vector<ContractionStep> steps;
    bool partial = false;
    std::optional<std::uint64_t> expected_digest; // optional terminal digest for partial certificates

    std::size_t size() const { return steps.size(); }
};

// Current vertex id -> set of original base vertices merged into it.
using PartitionView = std::map<Vid, std::set<Vid>>;

struct VerificationReport {
    enum class Status { accepted, width_violation, malformed };
    Status status = Status::accepted;
    int width = 0;           // max red degree seen over the replay (up to the failure point)
    int violation_step = -1; // 0 = base trigraph, k = after the k-th contraction
    std::vector<Vid> offenders;
    std::string message;

    bool accepted() const { return status == Status::accepted; }
};

Trigraph replay(const ContractionSequence& seq);
Trigraph replay_prefix(const ContractionSequence& seq, std::size_t k);

// Accepted iff every trigraph of the replay, the base included, has max red
// degree <= d. On the first violating step, reports every vertex above d.
VerificationReport verify(const ContractionSequence& seq, int d);

// Max red degree ever attained; throws FormatError on a malformed step.
int width(const ContractionSequence& seq);

// Keep the steps whose two parts both meet s, on the intersected parts.
ContractionSequence restrict_to(const ContractionSequence& seq, const std::set<Vid>& s);

PartitionView partition_view(const ContractionSequence& seq, std::size_t k);

// Quotient trigraph of a partition of V(base): black between fully adjacent
// parts, red between non-homogeneous parts.
Trigraph trigraph_of_partition(const Trigraph& base, const PartitionView& p);

// head must be partial and tail.base equal to head's terminal trigraph;
// tail result ids are reallocated to keep fresh ids strictly increasing.
ContractionSequence concat(const ContractionSequence& head, const ContractionSequence& tail);

std::uint64_t trigraph_digest(const Trigraph& g);

// Incremental sequence recorder: tracks the working trigraph, the current
// part of every original vertex, and the max red degree seen so far.
class SequenceBuilder {
  public:
    explicit SequenceBuilder(Trigraph base);

    // a, b may be original ids or prior results; both are resolved to their
    // current parts. Returns the fresh result id.
    Vid contract(Vid a, Vid b);
    Vid current(Vid v) const;
    const Trigraph& graph() const { return g_; }
    const std::vector<ContractionStep>& steps() const { return steps_; }
    int max_width_seen() const { return max_width_; }
    std::size_t step_count() const { return steps_.size(); }

    ContractionSequence take() &&;

  private:
    Trigraph base_, g_;
    std::vector<ContractionStep> steps_;
    std::map<Vid, Vid> forward_; // original-or-result id -> current id
    Vid next_fresh_;
    int max_width_;
};

} // namespace tww

#endif
