#ifndef TWW_ENCODER_HPP
#define TWW_ENCODER_HPP

#include "tww/sequence.hpp"

#include <cstdint>
#include <optional>

namespace tww {

// t for a red component S under red-degree bound d: 2(2d+2)(2d)^{|S|-1} + 1.
std::uint64_t sound_t(int d, std::size_t component_size);

struct EncodingPlan {
    int d = 0;
    std::vector<Vid> component; // S in ascending order
    std::uint64_t t_sound = 0;
    int t = 0;         // the value actually used
    bool tainted = false; // t < t_sound (test-scale override)
    std::vector<std::vector<Vid>> a_ids, b_ids; // [component index][j], sides of L_i
};

struct EncodeResult {
    Trigraph graph;
    std::set<Vid> t_set;
    EncodingPlan plan;
};

struct EncoderGuard {
    std::uint64_t max_vertices = 2'000'000; // also derived from TWW_MEMORY_GUARD_MB
    bool force = false;
};

EncoderGuard guard_from_env();

// Blow up one red component S of h into bicliques K_{t,t} joined by complete
// bipartite graphs (black edges of h[S]) or canonical matchings (red edges),
// leaving h - S untouched.
EncodeResult encode_component(const Trigraph& h, const std::set<Vid>& s, int d,
                              std::optional<int> t_override = {},
                              const EncoderGuard& guard = {});

struct Decontraction {
    ContractionSequence seq;              // partial 2d-sequence from G to (a copy of) H
    std::map<Vid, Vid> component_vertex;  // final merged L_i id -> original v_i
};

Decontraction decontraction_sequence(const Trigraph& g, const EncodingPlan& plan);

struct EncodeAllResult {
    Trigraph graph; // plain graph, no red edges
    std::vector<EncodingPlan> plans;
    bool tainted = false;
};

// Iterate encode_component over every red component of size >= 2, smallest
// minimum vertex first. max_component_size guards the blow-up (fence-style
// inputs have 12-vertex red paths).
EncodeAllResult encode_all(const Trigraph& h, int d, std::optional<int> t_override = {},
                           const EncoderGuard& guard = {}, std::size_t max_component_size = 12);

// All per-component decontractions concatenated; ends at a trigraph equal to
// h up to the recorded component_vertex renamings.
Decontraction composed_decontraction(const Trigraph& g, const std::vector<EncodingPlan>& plans);

} // namespace tww

#endif
