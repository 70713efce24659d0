#include "tww/encoder.hpp"

#include <algorithm>
#include <cstdlib>

namespace tww {

std::uint64_t sound_t(int d, std::size_t component_size) {
    if (d < 1 || component_size < 2)
        throw TwwError("sound_t: need d >= 1 and |S| >= 2");
    std::uint64_t t = 2ull * static_cast<std::uint64_t>(2 * d + 2);
    for (std::size_t i = 1; i < component_size; ++i) {
        if (t > (1ull << 62) / static_cast<std::uint64_t>(2 * d))
            throw TwwError("sound_t: overflow");
        t *= static_cast<std::uint64_t>(2 * d);
    }
    return t + 1;
}

EncoderGuard guard_from_env() {
    EncoderGuard g;
    if (const char* mb = std::getenv("TWW_MEMORY_GUARD_MB")) {
        // ~48 bytes per vertex slot is pessimistic enough for the guard
        std::uint64_t cap = std::strtoull(mb, nullptr, 10);
        if (cap > 0)
            g.max_vertices = cap * 1024ull * 1024ull / 48ull;
    }
    return g;
}

EncodeResult encode_component(const Trigraph& h, const std::set<Vid>& s, int d,
                              std::optional<int> t_override, const EncoderGuard& guard) {
    if (s.size() < 2)
        throw TwwError("encode_component: component must have at least 2 vertices");
    // s must be exactly one connected component of the red graph
    {
        auto comps = h.red_components();
        std::vector<Vid> sv(s.begin(), s.end());
        bool found = false;
        for (const auto& c : comps)
            if (c == sv)
                found = true;
        if (!found)
            throw TwwError("encode_component: s is not a red component");
    }
    for (Vid v : s)
        if (h.red_degree(v) > d)
            throw TwwError("encode_component: red degree of the component exceeds d");

    EncodingPlan plan;
    plan.d = d;
    plan.component.assign(s.begin(), s.end());
    plan.t_sound = sound_t(d, s.size());
    std::uint64_t t64 = t_override ? static_cast<std::uint64_t>(*t_override) : plan.t_sound;
    if (t_override && *t_override < 1)
        throw TwwError("encode_component: t override must be positive");
    plan.tainted = t64 < plan.t_sound;

    std::uint64_t projected =
        static_cast<std::uint64_t>(h.n()) - s.size() + 2ull * t64 * s.size();
    if (projected > guard.max_vertices && !guard.force)
        throw TwwError("encode_component: projected " + std::to_string(projected) +
                       " vertices exceeds the memory guard (t = " + std::to_string(t64) +
                       "); use force to override");
    int t = static_cast<int>(t64);
    plan.t = t;

    EncodeResult res;
    Trigraph& g = res.graph;
    g = h;
    // record the outside black neighborhoods, then delete S
    std::map<Vid, std::vector<Vid>> outside;
    for (Vid v : s)
        for (Vid z : h.black_neighbors(v))
            if (!s.count(z))
                outside[v].push_back(z);
    for (Vid v : s) {
        for (Vid z : std::set<Vid>(g.black_neighbors(v)))
            g.remove_edge(v, z);
        for (Vid z : std::set<Vid>(g.red_neighbors(v)))
            g.remove_edge(v, z);
    }
    // dead ids stay dead: rebuild without S
    {
        std::set<Vid> keep;
        for (Vid v : g.vertices())
            if (!s.count(v))
                keep.insert(v);
        g = g.induced(keep);
    }

    Vid next = h.max_id() + 1;
    std::size_t k = s.size();
    plan.a_ids.assign(k, {});
    plan.b_ids.assign(k, {});
    for (std::size_t i = 0; i < k; ++i) {
        for (int j = 0; j < t; ++j) {
            Vid a = next++;
            g.add_vertex(a);
            plan.a_ids[i].push_back(a);
            res.t_set.insert(a);
        }
        for (int j = 0; j < t; ++j) {
            Vid b = next++;
            g.add_vertex(b);
            plan.b_ids[i].push_back(b);
            res.t_set.insert(b);
        }
    }
    // bicliques
    for (std::size_t i = 0; i < k; ++i)
        for (int ja = 0; ja < t; ++ja)
            for (int jb = 0; jb < t; ++jb)
                g.add_black(plan.a_ids[i][static_cast<std::size_t>(ja)],
                            plan.b_ids[i][static_cast<std::size_t>(jb)]);
    // black edges of h[S] -> complete bipartite between bicliques,
    // red edges -> canonical matchings on both sides
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t ip = i + 1; ip < k; ++ip) {
            Vid vi = plan.component[i], vip = plan.component[ip];
            if (h.has_black(vi, vip)) {
                for (int ja = 0; ja < t; ++ja) {
                    for (int jb = 0; jb < t; ++jb) {
                        g.add_black(plan.a_ids[i][static_cast<std::size_t>(ja)],
                                    plan.a_ids[ip][static_cast<std::size_t>(jb)]);
                        g.add_black(plan.a_ids[i][static_cast<std::size_t>(ja)],
                                    plan.b_ids[ip][static_cast<std::size_t>(jb)]);
                        g.add_black(plan.b_ids[i][static_cast<std::size_t>(ja)],
                                    plan.a_ids[ip][static_cast<std::size_t>(jb)]);
                        g.add_black(plan.b_ids[i][static_cast<std::size_t>(ja)],
                                    plan.b_ids[ip][static_cast<std::size_t>(jb)]);
                    }
                }
            } else if (h.has_red(vi, vip)) {
                for (int j = 0; j < t; ++j) {
                    g.add_black(plan.a_ids[i][static_cast<std::size_t>(j)],
                                plan.a_ids[ip][static_cast<std::size_t>(j)]);
                    g.add_black(plan.b_ids[i][static_cast<std::size_t>(j)],
                                plan.b_ids[ip][static_cast<std::size_t>(j)]);
                }
            }
        }
    }
    // black edges towards the rest of the trigraph
    for (std::size_t i = 0; i < k; ++i) {
        for (Vid z : outside[plan.component[i]]) {
            for (int j = 0; j < t; ++j) {
                g.add_black(plan.a_ids[i][static_cast<std::size_t>(j)], z);
                g.add_black(plan.b_ids[i][static_cast<std::size_t>(j)], z);
            }
        }
    }
    res.plan = std::move(plan);
    return res;
}

Decontraction decontraction_sequence(const Trigraph& g, const EncodingPlan& plan) {
    Decontraction out;
    SequenceBuilder sb(g);
    std::size_t k = plan.component.size();
    int t = plan.t;
    // lock-step across bicliques: fold every A-side, then every B-side
    for (int j = 1; j < t; ++j)
        for (std::size_t i = 0; i < k; ++i)
            sb.contract(plan.a_ids[i][0], plan.a_ids[i][static_cast<std::size_t>(j)]);
    for (int j = 1; j < t; ++j)
        for (std::size_t i = 0; i < k; ++i)
            sb.contract(plan.b_ids[i][0], plan.b_ids[i][static_cast<std::size_t>(j)]);
    for (std::size_t i = 0; i < k; ++i) {
        Vid merged = sb.contract(plan.a_ids[i][0], plan.b_ids[i][0]);
        out.component_vertex[merged] = plan.component[i];
    }
    out.seq = std::move(sb).take();
    out.seq.partial = true;
    return out;
}

EncodeAllResult encode_all(const Trigraph& h, int d, std::optional<int> t_override,
                           const EncoderGuard& guard, std::size_t max_component_size) {
    EncodeAllResult res;
    res.graph = h;
    auto comps = h.red_components();
    std::vector<std::vector<Vid>> big;
    for (auto& c : comps)
        if (c.size() >= 2)
            big.push_back(c);
    std::sort(big.begin(), big.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (const auto& c : big) {
        if (c.size() > max_component_size)
            throw TwwError("encode_all: red component of size " + std::to_string(c.size()) +
                           " exceeds the configured bound " + std::to_string(max_component_size));
        EncodeResult step = encode_component(res.graph, std::set<Vid>(c.begin(), c.end()), d,
                                             t_override, guard);
        res.graph = std::move(step.graph);
        res.tainted = res.tainted || step.plan.tainted;
        res.plans.push_back(std::move(step.plan));
    }
    return res;
}

Decontraction composed_decontraction(const Trigraph& g, const std::vector<EncodingPlan>& plans) {
    Decontraction out;
    SequenceBuilder sb(g);
    for (const auto& plan : plans) {
        std::size_t k = plan.component.size();
        for (int j = 1; j < plan.t; ++j)
            for (std::size_t i = 0; i < k; ++i)
                sb.contract(plan.a_ids[i][0], plan.a_ids[i][static_cast<std::size_t>(j)]);
        for (int j = 1; j < plan.t; ++j)
            for (std::size_t i = 0; i < k; ++i)
                sb.contract(plan.b_ids[i][0], plan.b_ids[i][static_cast<std::size_t>(j)]);
        for (std::size_t i = 0; i < k; ++i) {
            Vid merged = sb.contract(plan.a_ids[i][0], plan.b_ids[i][0]);
            out.component_vertex[merged] = plan.component[i];
        }
    }
    out.seq = std::move(sb).take();
    out.seq.partial = true;
    return out;
}

} // namespace tww
