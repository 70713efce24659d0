#include "tww/sequence.hpp"

#include <algorithm>

namespace tww {

namespace {

void apply_step(Trigraph& g, const ContractionStep& st, std::size_t idx) {
    auto fail = [&](const std::string& why) {
        throw FormatError("step " + std::to_string(idx + 1) + ": " + why);
    };
    if (!g.has_vertex(st.left))
        fail("unknown or dead vertex " + std::to_string(st.left));
    if (!g.has_vertex(st.right))
        fail("unknown or dead vertex " + std::to_string(st.right));
    if (st.left == st.right)
        fail("left and right coincide");
    if (g.has_vertex(st.result))
        fail("result id " + std::to_string(st.result) + " collides with a live vertex");
    g.contract(st.left, st.right, st.result);
}

} // namespace

Trigraph replay_prefix(const ContractionSequence& seq, std::size_t k) {
    if (k > seq.steps.size())
        throw TwwError("replay_prefix: index out of range");
    Trigraph g = seq.base;
    for (std::size_t i = 0; i < k; ++i)
        apply_step(g, seq.steps[i], i);
    return g;
}

Trigraph replay(const ContractionSequence& seq) {
    return replay_prefix(seq, seq.steps.size());
}

VerificationReport verify(const ContractionSequence& seq, int d) {
    VerificationReport rep;
    int n = seq.base.n();
    std::size_t expected = n > 0 ? static_cast<std::size_t>(n - 1) : 0;
    if (!seq.partial && seq.steps.size() != expected) {
        rep.status = VerificationReport::Status::malformed;
        rep.message = "non-partial sequence has " + std::to_string(seq.steps.size()) +
                      " steps, expected " + std::to_string(expected);
        return rep;
    }
    if (seq.steps.size() > expected) {
        rep.status = VerificationReport::Status::malformed;
        rep.message = "sequence has more steps than vertices allow";
        return rep;
    }

    Trigraph g = seq.base;
    auto check_state = [&](int step_index) {
        rep.width = std::max(rep.width, g.max_red_degree());
        if (g.max_red_degree() > d) {
            rep.status = VerificationReport::Status::width_violation;
            rep.violation_step = step_index;
            for (Vid v : g.vertices())
                if (g.red_degree(v) > d)
                    rep.offenders.push_back(v);
            return false;
        }
        return true;
    };

    if (!check_state(0))
        return rep;
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        try {
            apply_step(g, seq.steps[i], i);
        } catch (const FormatError& e) {
            rep.status = VerificationReport::Status::malformed;
            rep.message = e.what();
            return rep;
        }
        if (!check_state(static_cast<int>(i) + 1))
            return rep;
    }
    if (seq.expected_digest && trigraph_digest(g) != *seq.expected_digest) {
        rep.status = VerificationReport::Status::malformed;
        rep.message = "terminal trigraph does not match the recorded digest";
        return rep;
    }
    rep.status = VerificationReport::Status::accepted;
    return rep;
}

int width(const ContractionSequence& seq) {
    Trigraph g = seq.base;
    int w = g.max_red_degree();
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        apply_step(g, seq.steps[i], i);
        w = std::max(w, g.max_red_degree());
    }
    return w;
}

ContractionSequence restrict_to(const ContractionSequence& seq, const std::set<Vid>& s) {
    if (s.empty())
        throw TwwError("restrict_to: empty vertex set");
    for (Vid v : s)
        if (!seq.base.has_vertex(v))
            throw TwwError("restrict_to: vertex " + std::to_string(v) + " not in base");

    ContractionSequence out;
    out.base = seq.base.induced(s);

    // rep[current id in the full replay] = current id in the restricted replay,
    // present only for parts that meet s.
    std::map<Vid, Vid> rep;
    for (Vid v : s)
        rep[v] = v;
    Vid next_fresh = *s.rbegin() + 1;

    Trigraph restricted = out.base;
    for (const auto& st : seq.steps) {
        auto il = rep.find(st.left);
        auto ir = rep.find(st.right);
        if (il != rep.end() && ir != rep.end()) {
            Vid w = next_fresh++;
            restricted.contract(il->second, ir->second, w);
            out.steps.push_back({il->second, ir->second, w});
            rep.erase(st.left);
            rep.erase(st.right);
            rep[st.result] = w;
        } else if (il != rep.end()) {
            Vid keep = il->second;
            rep.erase(st.left);
            rep[st.result] = keep;
        } else if (ir != rep.end()) {
            Vid keep = ir->second;
            rep.erase(st.right);
            rep[st.result] = keep;
        }
    }
    out.partial = seq.partial || restricted.n() > 1;
    return out;
}

PartitionView partition_view(const ContractionSequence& seq, std::size_t k) {
    if (k > seq.steps.size())
        throw TwwError("partition_view: index out of range");
    PartitionView p;
    for (Vid v : seq.base.vertices())
        p[v] = {v};
    for (std::size_t i = 0; i < k; ++i) {
        const auto& st = seq.steps[i];
        auto il = p.find(st.left);
        auto ir = p.find(st.right);
        if (il == p.end() || ir == p.end())
            throw FormatError("step " + std::to_string(i + 1) + ": dead or unknown id");
        std::set<Vid> merged = std::move(il->second);
        merged.insert(ir->second.begin(), ir->second.end());
        p.erase(il);
        p.erase(st.right);
        p[st.result] = std::move(merged);
    }
    return p;
}

Trigraph trigraph_of_partition(const Trigraph& base, const PartitionView& p) {
    std::map<Vid, Vid> part_of; // original vertex -> part key
    std::size_t covered = 0;
    for (const auto& [key, members] : p) {
        if (members.empty())
            throw TwwError("trigraph_of_partition: empty part");
        for (Vid v : members) {
            if (!base.has_vertex(v))
                throw TwwError("trigraph_of_partition: part member not in base");
            if (!part_of.emplace(v, key).second)
                throw TwwError("trigraph_of_partition: parts overlap");
            ++covered;
        }
    }
    if (covered != static_cast<std::size_t>(base.n()))
        throw TwwError("trigraph_of_partition: parts do not cover the base");

    Trigraph q;
    for (const auto& [key, members] : p)
        q.add_vertex(key);

    std::map<std::pair<Vid, Vid>, std::size_t> black_between;
    std::set<std::pair<Vid, Vid>> red_between;
    auto keypair = [&](Vid x, Vid y) {
        Vid a = part_of.at(x), b = part_of.at(y);
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    };
    for (auto [x, y] : base.black_edges())
        if (part_of.at(x) != part_of.at(y))
            ++black_between[keypair(x, y)];
    for (auto [x, y] : base.red_edges())
        if (part_of.at(x) != part_of.at(y))
            red_between.insert(keypair(x, y));

    for (auto it = p.begin(); it != p.end(); ++it) {
        for (auto jt = std::next(it); jt != p.end(); ++jt) {
            auto key = std::make_pair(it->first, jt->first);
            std::size_t full = it->second.size() * jt->second.size();
            bool any_red = red_between.count(key) > 0;
            std::size_t blacks = 0;
            if (auto bt = black_between.find(key); bt != black_between.end())
                blacks = bt->second;
            if (!any_red && blacks == full)
                q.add_black(key.first, key.second);
            else if (any_red || blacks > 0)
                q.add_red(key.first, key.second);
        }
    }
    return q;
}

ContractionSequence concat(const ContractionSequence& head, const ContractionSequence& tail) {
    Trigraph terminal = replay(head);
    if (terminal != tail.base)
        throw TwwError("concat: tail base does not match head terminal trigraph");
    ContractionSequence out;
    out.base = head.base;
    out.steps = head.steps;

    Vid next_fresh = std::max(head.base.max_id(), terminal.max_id());
    for (const auto& st : head.steps)
        next_fresh = std::max(next_fresh, st.result);
    ++next_fresh;

    std::map<Vid, Vid> remap; // tail id -> combined id
    auto resolve = [&](Vid v) {
        auto it = remap.find(v);
        return it == remap.end() ? v : it->second;
    };
    for (const auto& st : tail.steps) {
        Vid w = next_fresh++;
        out.steps.push_back({resolve(st.left), resolve(st.right), w});
        remap[st.result] = w;
    }
    out.partial = tail.partial;
    return out;
}

std::uint64_t trigraph_digest(const Trigraph& g) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(g.n()));
    for (Vid v : g.vertices())
        mix(static_cast<std::uint64_t>(v));
    mix(0xb1ull);
    for (auto [u, v] : g.black_edges()) {
        mix(static_cast<std::uint64_t>(u));
        mix(static_cast<std::uint64_t>(v));
    }
    mix(0xedull);
    for (auto [u, v] : g.red_edges()) {
        mix(static_cast<std::uint64_t>(u));
        mix(static_cast<std::uint64_t>(v));
    }
    return h;
}

SequenceBuilder::SequenceBuilder(Trigraph base)
    : base_(base), g_(std::move(base)), next_fresh_(g_.max_id() + 1),
      max_width_(g_.max_red_degree()) {}

Vid SequenceBuilder::current(Vid v) const {
    while (true) {
        auto it = forward_.find(v);
        if (it == forward_.end())
            return v;
        v = it->second;
    }
}

Vid SequenceBuilder::contract(Vid a, Vid b) {
    Vid u = current(a), v = current(b);
    if (u == v)
        throw TwwError("SequenceBuilder: vertices already in the same part");
    Vid w = next_fresh_++;
    g_.contract(u, v, w);
    steps_.push_back({u, v, w});
    forward_[u] = w;
    forward_[v] = w;
    max_width_ = std::max(max_width_, g_.max_red_degree());
    return w;
}

ContractionSequence SequenceBuilder::take() && {
    ContractionSequence seq;
    seq.base = std::move(base_);
    seq.steps = std::move(steps_);
    seq.partial = g_.n() > 1;
    return seq;
}

} // namespace tww
