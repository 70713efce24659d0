#include "tww/gadgets.hpp"

#include <algorithm>
#include <unordered_set>

namespace tww {

void Manifest::set(const std::string& path, Vid v) {
    if (!roles_.emplace(path, v).second)
        throw TwwError("manifest: duplicate role " + path);
}

Vid Manifest::at(const std::string& path) const {
    auto it = roles_.find(path);
    if (it == roles_.end())
        throw TwwError("manifest: unknown role " + path);
    return it->second;
}

std::vector<Vid> FenceHandle::all() const {
    std::vector<Vid> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::vector<Vid> EnclosedSet::with_fence() const {
    std::vector<Vid> out = members;
    auto f = fence.all();
    out.insert(out.end(), f.begin(), f.end());
    return out;
}

EnclosedSet VerticalSet::enclosed() const {
    return {{x, y}, fence, node};
}

EnclosedSet OrHandle::enclosed() const {
    EnclosedSet s;
    s.members = {a, b, c, d, e};
    for (Vid v : fence_ab.all())
        s.members.push_back(v);
    for (Vid v : fence_cd.all())
        s.members.push_back(v);
    s.fence = fence_outer;
    s.node = node;
    return s;
}

EnclosedSet VariableHandle::top_set() const {
    EnclosedSet s;
    s.members = top_or.enclosed().with_fence();
    for (Vid v : fence_top_inner.all())
        s.members.push_back(v);
    s.members.push_back(f_top);
    s.members.push_back(g_top);
    s.fence = fence_top_outer;
    s.node = node_top;
    return s;
}

EnclosedSet VariableHandle::bot_set() const {
    EnclosedSet s;
    s.members = bot_or.enclosed().with_fence();
    for (Vid v : fence_bot_inner.all())
        s.members.push_back(v);
    s.members.push_back(f_bot);
    s.members.push_back(g_bot);
    s.fence = fence_bot_outer;
    s.node = node_bot;
    return s;
}

int PropagationDigraph::out_degree(int v) const {
    int d = 0;
    for (auto [a, b] : arcs)
        if (a == v)
            ++d;
    return d;
}

int PropagationDigraph::in_degree(int v) const {
    int d = 0;
    for (auto [a, b] : arcs)
        if (b == v)
            ++d;
    return d;
}

Vid GadgetBuilder::fresh(const std::string& role) {
    Vid v = g_.add_vertex();
    manifest_.set(role, v);
    return v;
}

FenceHandle GadgetBuilder::attach_fence(const std::vector<Vid>& s, const std::string& prefix) {
    if (s.empty())
        throw TwwError("attach_fence: empty attached set");
    FenceHandle f;
    f.path = prefix;
    f.attached = s;
    for (int i = 0; i < 6; ++i)
        f.a[static_cast<std::size_t>(i)] = fresh(prefix + ".a[" + std::to_string(i + 1) + "]");
    for (int i = 0; i < 6; ++i)
        f.b[static_cast<std::size_t>(i)] = fresh(prefix + ".b[" + std::to_string(i + 1) + "]");
    for (int i = 0; i < 6; ++i) {
        g_.add_black(f.a[static_cast<std::size_t>(i)], f.a[static_cast<std::size_t>((i + 1) % 6)]);
        g_.add_black(f.b[static_cast<std::size_t>(i)], f.b[static_cast<std::size_t>((i + 1) % 6)]);
    }
    g_.add_black(f.b[0], f.a[5]);
    for (int i = 0; i < 6; ++i)
        g_.add_red(f.a[static_cast<std::size_t>(i)], f.b[static_cast<std::size_t>(i)]);
    for (int i = 0; i < 5; ++i)
        g_.add_red(f.a[static_cast<std::size_t>(i)], f.b[static_cast<std::size_t>(i + 1)]);
    for (Vid v : s)
        for (Vid av : f.a)
            g_.add_black(av, v);
    fences_.push_back(f);
    return f;
}

VerticalSet GadgetBuilder::vertical_set(const std::string& prefix) {
    VerticalSet vs;
    vs.path = prefix;
    vs.x = fresh(prefix + ".x");
    vs.y = fresh(prefix + ".y");
    vs.fence = attach_fence({vs.x, vs.y}, prefix + ".fence");
    vs.node = register_node(prefix, true);
    return vs;
}

int GadgetBuilder::register_node(const std::string& path, bool vertical) {
    digraph_.nodes.push_back({path, vertical});
    return static_cast<int>(digraph_.nodes.size()) - 1;
}

void GadgetBuilder::guard_arc(const EnclosedSet& from, const VerticalSet& to) {
    if (from.node < 0 || to.node < 0)
        throw TwwError("guard_arc: unregistered endpoint");
    if (from.node == to.node)
        throw TwwError("guard_arc: self-arc");
    digraph_.arcs.emplace_back(from.node, to.node);
    auto check = [&](int node) {
        int out = digraph_.out_degree(node), in = digraph_.in_degree(node);
        if (out > 2 || in > 2 || out + in > 3)
            throw TwwError("guard_arc: degree cap exceeded at " + digraph_.nodes[static_cast<std::size_t>(node)].path);
    };
    check(from.node);
    check(to.node);
    for (Vid v : from.with_fence())
        g_.add_black(v, to.x);
}

void GadgetBuilder::add_propagation_arc(const VerticalSet& from, const VerticalSet& to) {
    guard_arc(from.enclosed(), to);
}

void GadgetBuilder::pair_link(Vid v, Vid p, Vid q) {
    g_.add_black(v, p);
    g_.add_black(v, q);
}

void GadgetBuilder::consume_input(const VerticalSet& vs) {
    if (!consumed_inputs_.insert(vs.path).second)
        throw TwwError("input slot already consumed: " + vs.path);
}

std::vector<VerticalSet> GadgetBuilder::long_chain(const VerticalSet& from, const VerticalSet& to,
                                                   int chain_length, const std::string& prefix) {
    if (chain_length < 2)
        throw TwwError("long_chain: length must be at least 2");
    std::vector<VerticalSet> sets;
    VerticalSet prev = from;
    for (int k = 0; k + 2 < chain_length; ++k) {
        VerticalSet next = vertical_set(prefix + ".set[" + std::to_string(k + 1) + "]");
        add_propagation_arc(prev, next);
        sets.push_back(next);
        prev = next;
    }
    add_propagation_arc(prev, to);
    return sets;
}

namespace {

// the bare OR gate: V={a,b}, V'={c,d}, e, edges ac bd ea ec, outer fence
OrHandle or_core_build(GadgetBuilder& gb, const std::string& prefix) {
    OrHandle h;
    h.path = prefix;
    Trigraph& g = gb.graph();
    h.a = gb.fresh(prefix + ".a");
    h.b = gb.fresh(prefix + ".b");
    h.fence_ab = gb.attach_fence({h.a, h.b}, prefix + ".fence_ab");
    h.c = gb.fresh(prefix + ".c");
    h.d = gb.fresh(prefix + ".d");
    h.fence_cd = gb.attach_fence({h.c, h.d}, prefix + ".fence_cd");
    h.e = gb.fresh(prefix + ".e");
    g.add_black(h.a, h.c);
    g.add_black(h.b, h.d);
    g.add_black(h.e, h.a);
    g.add_black(h.e, h.c);
    std::vector<Vid> outer_s = {h.e, h.a, h.b, h.c, h.d};
    for (Vid v : h.fence_ab.all())
        outer_s.push_back(v);
    for (Vid v : h.fence_cd.all())
        outer_s.push_back(v);
    h.fence_outer = gb.attach_fence(outer_s, prefix + ".fence_outer");
    return h;
}

} // namespace

OrHandle GadgetBuilder::or_gadget(const VerticalSet& in1, const VerticalSet& in2,
                                  const VerticalSet& out, const std::string& prefix) {
    consume_input(in1);
    consume_input(in2);
    OrHandle h = or_core_build(*this, prefix);
    pair_link(h.a, in1.x, in1.y);
    pair_link(h.c, in2.x, in2.y);
    h.link1 = {in1.x, in1.y};
    h.link2 = {in2.x, in2.y};
    h.node = register_node(prefix, false);
    guard_arc(h.enclosed(), out);
    return h;
}

AndHandle GadgetBuilder::and_gadget(const std::string& prefix) {
    AndHandle h;
    h.in1 = vertical_set(prefix + ".in[1]");
    h.in2 = vertical_set(prefix + ".in[2]");
    h.out = vertical_set(prefix + ".out");
    add_propagation_arc(h.in1, h.out);
    add_propagation_arc(h.in2, h.out);
    return h;
}

VariableHandle GadgetBuilder::variable_gadget(const std::string& prefix) {
    VariableHandle v;
    v.path = prefix;
    v.x = fresh(prefix + ".x");
    v.top = fresh(prefix + ".top");
    v.bot = fresh(prefix + ".bot");
    v.fence = attach_fence({v.x, v.top, v.bot}, prefix + ".fence");

    auto build_half = [&](bool top) {
        const std::string side = top ? ".top" : ".bot";
        Vid pole = top ? v.top : v.bot;
        OrHandle& orh = top ? v.top_or : v.bot_or;
        orh = or_core_build(*this, prefix + side + ".or");
        pair_link(orh.a, v.x, pole);
        orh.link1 = {v.x, pole};
        Vid f = fresh(prefix + side + ".f");
        graph().add_black(f, orh.c);
        std::vector<Vid> inner_s = orh.enclosed().with_fence();
        inner_s.push_back(f);
        FenceHandle inner = attach_fence(inner_s, prefix + side + ".fence_inner");
        Vid gn = fresh(prefix + side + ".g");
        graph().add_black(gn, orh.c);
        orh.link2 = {f, gn};
        std::vector<Vid> t_members = orh.enclosed().with_fence();
        for (Vid iv : inner.all())
            t_members.push_back(iv);
        t_members.push_back(f);
        t_members.push_back(gn);
        FenceHandle outer = attach_fence(t_members, prefix + side + ".fence_outer");
        if (top) {
            v.f_top = f;
            v.g_top = gn;
            v.fence_top_inner = inner;
            v.fence_top_outer = outer;
            v.node_top = register_node(prefix + ".T", false);
        } else {
            v.f_bot = f;
            v.g_bot = gn;
            v.fence_bot_inner = inner;
            v.fence_bot_outer = outer;
            v.node_bot = register_node(prefix + ".U", false);
        }
    };
    build_half(true);
    build_half(false);

    v.hg1 = vertical_set(prefix + ".hg[1]");
    pair_link(v.top, v.hg1.x, v.hg1.y);
    v.hg2 = vertical_set(prefix + ".hg[2]");
    pair_link(v.bot, v.hg2.x, v.hg2.y);

    v.out_pos = vertical_set(prefix + ".out_pos");
    guard_arc(v.top_set(), v.out_pos);
    v.out_neg = vertical_set(prefix + ".out_neg");
    guard_arc(v.bot_set(), v.out_neg);
    return v;
}

ClauseHandle GadgetBuilder::clause_gadget(const VerticalSet& in1, const VerticalSet& in2,
                                          const VerticalSet& in3, int chain_length,
                                          const std::string& prefix) {
    ClauseHandle c;
    c.path = prefix;
    c.mid = vertical_set(prefix + ".mid");
    c.or1 = or_gadget(in1, in2, c.mid, prefix + ".or1");
    c.prime = vertical_set(prefix + ".prime");
    c.chain = long_chain(c.mid, c.prime, chain_length, prefix + ".chain");
    c.out = vertical_set(prefix + ".out");
    c.or2 = or_gadget(c.prime, in3, c.out, prefix + ".or2");
    return c;
}

ClauseHandle GadgetBuilder::clause_gadget2(const VerticalSet& in1, const VerticalSet& in2,
                                           const std::string& prefix) {
    ClauseHandle c;
    c.path = prefix;
    c.reduced = true;
    c.out = vertical_set(prefix + ".out");
    c.or1 = or_gadget(in1, in2, c.out, prefix + ".or1");
    return c;
}

AttachmentCheck check_attachment_rule(const Trigraph& g, const FenceHandle& fence) {
    AttachmentCheck res;
    std::set<Vid> fset(fence.a.begin(), fence.a.end());
    fset.insert(fence.b.begin(), fence.b.end());
    auto fail = [&](int bullet, Vid witness, const std::string& msg) {
        res.ok = false;
        res.failed_bullet = bullet;
        res.witness = witness;
        res.message = msg;
        return res;
    };

    // structural validity of the fence itself
    if (fset.size() != 12)
        return fail(5, 0, "fence vertices not distinct");
    for (Vid v : fset)
        if (!g.has_vertex(v))
            return fail(5, v, "fence vertex missing");
    Trigraph f = g.induced(fset);
    if (f.black_edge_count() != 13 || f.red_edge_count() != 11)
        return fail(5, 0, "fence edge pattern broken");
    for (int i = 0; i < 6; ++i) {
        if (!f.has_black(fence.a[static_cast<std::size_t>(i)], fence.a[static_cast<std::size_t>((i + 1) % 6)]) ||
            !f.has_black(fence.b[static_cast<std::size_t>(i)], fence.b[static_cast<std::size_t>((i + 1) % 6)]))
            return fail(5, fence.a[static_cast<std::size_t>(i)], "fence cycle edge missing");
        if (!f.has_red(fence.a[static_cast<std::size_t>(i)], fence.b[static_cast<std::size_t>(i)]))
            return fail(5, fence.a[static_cast<std::size_t>(i)], "fence red rung missing");
    }
    for (int i = 0; i < 5; ++i)
        if (!f.has_red(fence.a[static_cast<std::size_t>(i)], fence.b[static_cast<std::size_t>(i + 1)]))
            return fail(5, fence.a[static_cast<std::size_t>(i)], "fence red diagonal missing");
    if (!f.has_black(fence.b[0], fence.a[5]))
        return fail(5, fence.b[0], "fence bridge missing");

    // F must be a connected component of the red graph
    for (Vid v : fset)
        for (Vid r : g.red_neighbors(v))
            if (!fset.count(r))
                return fail(4, v, "red edge leaves the fence");

    std::set<Vid> s(fence.attached.begin(), fence.attached.end());
    if (s.empty())
        return fail(5, 0, "empty attached set");
    std::set<Vid> x_set;
    for (Vid z : g.total_neighbors(fence.a[0]))
        if (!fset.count(z) && !s.count(z))
            x_set.insert(z);

    for (Vid av : fence.a) {
        std::set<Vid> outside;
        for (Vid z : g.total_neighbors(av))
            if (!fset.count(z))
                outside.insert(z);
        std::set<Vid> expect = x_set;
        expect.insert(s.begin(), s.end());
        if (outside != expect)
            return fail(1, av, "A-side neighborhood differs from X union S");
    }
    for (Vid bv : fence.b) {
        std::set<Vid> outside;
        for (Vid z : g.total_neighbors(bv))
            if (!fset.count(z))
                outside.insert(z);
        if (outside != x_set)
            return fail(2, bv, "B-side neighborhood differs from X");
    }
    for (Vid xv : x_set)
        for (Vid sv : s)
            if (!g.adjacent(xv, sv))
                return fail(3, xv, "X vertex misses part of S");

    res.ok = true;
    res.x_set = std::move(x_set);
    return res;
}

namespace {

void require_untouched(const SequenceBuilder& sb, const std::vector<Vid>& ids, const char* who) {
    for (Vid v : ids) {
        if (sb.current(v) != v || !sb.graph().has_vertex(v))
            throw TwwError(std::string(who) + ": vertex " + std::to_string(v) +
                           " already involved in a contraction");
    }
}

Vid single_part(const SequenceBuilder& sb, const std::vector<Vid>& ids, const char* who) {
    Vid p = sb.current(ids.front());
    for (Vid v : ids)
        if (sb.current(v) != p)
            throw TwwError(std::string(who) + ": set not contracted to a single vertex");
    return p;
}

} // namespace

Vid contract_fence(SequenceBuilder& sb, const FenceHandle& fence) {
    require_untouched(sb, fence.all(), "contract_fence");
    const Trigraph& g = sb.graph();
    std::set<Vid> fset(fence.a.begin(), fence.a.end());
    fset.insert(fence.b.begin(), fence.b.end());

    Vid s = single_part(sb, fence.attached, ("contract_fence " + fence.path).c_str());
    if (g.red_degree(s) > 3)
        throw TwwError("contract_fence " + fence.path + ": attached vertex has red degree " +
                       std::to_string(g.red_degree(s)) + " > 3");
    for (Vid v : fset)
        for (Vid r : g.red_neighbors(v))
            if (!fset.count(r))
                throw TwwError("contract_fence: red edge leaves the fence");
    // fg5 context: outside of s, every fence vertex sees the same black set
    std::set<Vid> x_ref;
    bool first = true;
    for (Vid v : fence.all()) {
        std::set<Vid> outside;
        for (Vid z : g.total_neighbors(v))
            if (!fset.count(z) && z != s)
                outside.insert(z);
        if (first) {
            x_ref = outside;
            first = false;
        } else if (outside != x_ref) {
            throw TwwError("contract_fence: attachment rule violated at vertex " + std::to_string(v));
        }
    }
    for (Vid av : fence.a)
        if (!g.has_black(av, s))
            throw TwwError("contract_fence: A side not fully adjacent to s");
    for (Vid bv : fence.b)
        if (g.adjacent(bv, s))
            throw TwwError("contract_fence: B side adjacent to s");

    int s_red_before = g.red_degree(s);
    Vid c1 = sb.contract(fence.a[0], fence.b[0]);
    sb.contract(fence.b[1], fence.b[2]);
    sb.contract(fence.a[1], fence.a[2]);
    sb.contract(fence.b[3], fence.b[1]);
    sb.contract(fence.a[3], fence.a[1]);
    sb.contract(fence.b[4], fence.b[1]);
    sb.contract(fence.a[4], fence.a[1]);
    sb.contract(fence.b[5], fence.b[1]);
    sb.contract(fence.a[5], fence.a[1]);
    Vid ac = sb.contract(fence.a[1], c1);
    Vid fin = sb.contract(ac, fence.b[1]);
    if (sb.graph().red_degree(sb.current(s)) > s_red_before + 1)
        throw TwwError("contract_fence: s gained more than one red edge");
    return fin;
}

Vid contract_fence_onto(SequenceBuilder& sb, const FenceHandle& fence, Vid s) {
    Vid pendant = contract_fence(sb, fence);
    return sb.contract(pendant, s);
}

OrCore core_of(const OrHandle& h) {
    return {h.a, h.b, h.c, h.d, h.e, h.fence_ab, h.fence_cd, h.fence_outer, h.link1, h.link2};
}

Vid contract_or(SequenceBuilder& sb, const OrCore& core, int side) {
    if (side != 1 && side != 2)
        throw TwwError("contract_or: side must be 1 or 2");
    std::vector<Vid> all = {core.a, core.b, core.c, core.d, core.e};
    for (Vid v : core.fence_ab.all())
        all.push_back(v);
    for (Vid v : core.fence_cd.all())
        all.push_back(v);
    for (Vid v : core.fence_outer.all())
        all.push_back(v);
    require_untouched(sb, all, "contract_or");

    Vid p = side == 1 ? core.a : core.c;
    Vid q = side == 1 ? core.b : core.d;
    Vid r = side == 1 ? core.c : core.a;
    Vid r2 = side == 1 ? core.d : core.b;
    const FenceHandle& fence_pq = side == 1 ? core.fence_ab : core.fence_cd;
    const FenceHandle& fence_rr = side == 1 ? core.fence_cd : core.fence_ab;
    const std::vector<Vid>& primed = side == 1 ? core.link1 : core.link2;
    const std::vector<Vid>& other = side == 1 ? core.link2 : core.link1;

    const Trigraph& g = sb.graph();
    Vid z = single_part(sb, primed, "contract_or: primed input");
    int gain = g.has_black(z, sb.current(p)) ? 1 : 0;
    if (g.red_degree(z) + gain > 4)
        throw TwwError("contract_or: primed input would exceed red degree 4");
    std::set<Vid> other_parts;
    for (Vid v : other)
        other_parts.insert(sb.current(v));
    for (Vid op : other_parts) {
        int og = g.has_black(op, sb.current(r)) ? 1 : 0;
        if (g.red_degree(op) + og > 4)
            throw TwwError("contract_or: unprimed input would exceed red degree 4");
    }

    Vid alpha = sb.contract(p, q);
    Vid gamma = sb.contract(r, r2);
    Vid a2 = contract_fence_onto(sb, fence_pq, alpha);
    Vid a3 = sb.contract(a2, core.e);
    Vid g2 = contract_fence_onto(sb, fence_rr, gamma);
    Vid eps = sb.contract(a3, g2);
    return contract_fence_onto(sb, core.fence_outer, eps);
}

Vid contract_or(SequenceBuilder& sb, const OrHandle& h, int side) {
    return contract_or(sb, core_of(h), side);
}

Vid contract_variable_half(SequenceBuilder& sb, const VariableHandle& var, bool top) {
    require_untouched(sb, {var.x, var.top, var.bot}, "contract_variable_half");
    Vid pole = top ? var.top : var.bot;
    const OrHandle& orh = top ? var.top_or : var.bot_or;
    Vid fv = top ? var.f_top : var.f_bot;
    Vid gv = top ? var.g_top : var.g_bot;
    const FenceHandle& inner = top ? var.fence_top_inner : var.fence_bot_inner;
    const FenceHandle& outer = top ? var.fence_top_outer : var.fence_bot_outer;

    sb.contract(var.x, pole); // +x
    Vid u = contract_or(sb, core_of(orh), 1);
    Vid u2 = sb.contract(u, fv);
    Vid u3 = contract_fence_onto(sb, inner, u2);
    Vid v = sb.contract(u3, gv);
    return contract_fence_onto(sb, outer, v);
}

Vid contract_variable_rest(SequenceBuilder& sb, const VariableHandle& var) {
    bool top_done = sb.current(var.x) == sb.current(var.top);
    bool bot_done = sb.current(var.x) == sb.current(var.bot);
    if (top_done == bot_done)
        throw TwwError("contract_variable_rest: exactly one half must be contracted");

    Vid z1 = single_part(sb, {var.hg1.x, var.hg1.y}, "contract_variable_rest: half-guard 1");
    Vid z2 = single_part(sb, {var.hg2.x, var.hg2.y}, "contract_variable_rest: half-guard 2");
    Vid z_other = top_done ? z2 : z1;
    if (sb.graph().red_degree(z_other) > 3)
        throw TwwError("contract_variable_rest: remaining half-guard has red degree > 3");

    Vid pole = top_done ? var.bot : var.top;
    const OrHandle& orh = top_done ? var.bot_or : var.top_or;
    Vid fv = top_done ? var.f_bot : var.f_top;
    Vid gv = top_done ? var.g_bot : var.g_top;
    const FenceHandle& inner = top_done ? var.fence_bot_inner : var.fence_top_inner;
    const FenceHandle& outer = top_done ? var.fence_bot_outer : var.fence_top_outer;

    Vid v = sb.contract(pole, var.x);
    if (sb.graph().red_degree(v) > 4)
        throw TwwError("contract_variable_rest: core exceeded red degree 4");
    Vid u2 = contract_or(sb, core_of(orh), 1);
    Vid u3 = sb.contract(u2, fv);
    Vid u4 = contract_fence_onto(sb, inner, u3);
    Vid w0 = sb.contract(u4, gv);
    Vid w = contract_fence_onto(sb, outer, w0);

    Vid u_done = sb.current(top_done ? var.top_or.a : var.bot_or.a);
    Vid y = sb.contract(u_done, w);
    Vid pend = contract_fence(sb, var.fence);
    Vid v2 = sb.contract(pend, v);
    return sb.contract(v2, y);
}

Vid collapse_vertical(SequenceBuilder& sb, const VerticalSet& vs) {
    Vid z = sb.contract(vs.x, vs.y);
    return contract_fence_onto(sb, vs.fence, z);
}

FirstStepReport exhaustive_first_step_check(const Trigraph& g, const FenceHandle& fence) {
    FirstStepReport rep;
    AttachmentCheck att = check_attachment_rule(g, fence);
    if (!att.ok) {
        rep.message = "attachment rule: " + att.message;
        return rep;
    }
    std::set<Vid> fset(fence.a.begin(), fence.a.end());
    fset.insert(fence.b.begin(), fence.b.end());
    std::set<Vid> s(fence.attached.begin(), fence.attached.end());
    std::set<Vid> y;
    for (Vid v : g.vertices())
        if (!fset.count(v) && !s.count(v) && !att.x_set.count(v))
            y.insert(v);

    // red degree of the would-be merge of u and v, without copying the graph
    auto merged_red = [&](Vid u, Vid v, const std::set<Vid>* within) {
        int cnt = 0;
        std::set<Vid> seen;
        auto scan = [&](Vid z) {
            if (z == u || z == v || !seen.insert(z).second)
                return;
            if (within && !within->count(z))
                return;
            if (!(g.has_black(u, z) && g.has_black(v, z)))
                ++cnt;
        };
        for (Vid z : g.black_neighbors(u))
            scan(z);
        for (Vid z : g.red_neighbors(u))
            scan(z);
        for (Vid z : g.black_neighbors(v))
            scan(z);
        for (Vid z : g.red_neighbors(v))
            scan(z);
        return cnt;
    };
    auto contracted_red = [&](Vid u, Vid v) { return merged_red(u, v, nullptr); };
    auto contracted_red_within = [&](Vid u, Vid v) { return merged_red(u, v, &fset); };

    auto same_side = [&](const std::array<Vid, 6>& side) {
        for (int i = 0; i < 6; ++i) {
            for (int j = i + 1; j < 6; ++j) {
                ++rep.aa_bb_pairs;
                if (contracted_red(side[static_cast<std::size_t>(i)], side[static_cast<std::size_t>(j)]) < 5) {
                    rep.message = "same-side first contraction below red degree 5";
                    return false;
                }
            }
        }
        return true;
    };
    if (!same_side(fence.a) || !same_side(fence.b))
        return rep;
    for (Vid av : fence.a) {
        for (Vid bv : fence.b) {
            ++rep.ab_pairs;
            if (contracted_red_within(av, bv) < 3) {
                rep.message = "A x B first contraction below red degree 3 within F";
                return rep;
            }
        }
    }
    rep.inside_pairs = rep.aa_bb_pairs + rep.ab_pairs;
    for (Vid xv : att.x_set) {
        for (Vid sv : s) {
            ++rep.xs_pairs;
            if (contracted_red(xv, sv) < 6) {
                rep.message = "X x S merge below red degree 6";
                return rep;
            }
        }
    }
    for (Vid yv : y) {
        for (Vid sv : s) {
            ++rep.ys_pairs;
            if (contracted_red(yv, sv) < 6) {
                rep.message = "Y x S merge below red degree 6";
                return rep;
            }
        }
    }
    for (Vid xv : att.x_set) {
        for (Vid yv : y) {
            ++rep.xy_pairs;
            if (contracted_red(xv, yv) < 12) {
                rep.message = "X x Y merge below red degree 12";
                return rep;
            }
        }
    }
    rep.ok = true;
    return rep;
}

namespace {

std::string partition_key(const std::map<Vid, std::vector<Vid>>& parts) {
    std::vector<const std::vector<Vid>*> order;
    for (const auto& [k, v] : parts)
        order.push_back(&v);
    std::sort(order.begin(), order.end(),
              [](const auto* a, const auto* b) { return a->front() < b->front(); });
    std::string key;
    for (const auto* p : order) {
        for (Vid v : *p) {
            key += std::to_string(v);
            key += ',';
        }
        key += ';';
    }
    return key;
}

} // namespace

ExploreResult explore_partial_sequences(
    const Trigraph& g, int d, std::uint64_t max_states,
    const std::function<bool(const Trigraph&, const PartitionView&)>& predicate) {
    ExploreResult res;
    std::unordered_set<std::string> seen;
    bool budget_hit = false;

    struct Frame {
        Trigraph g;
        std::map<Vid, std::vector<Vid>> parts;
    };

    std::function<void(const Frame&)> dfs = [&](const Frame& fr) {
        if (budget_hit)
            return;
        std::string key = partition_key(fr.parts);
        if (!seen.insert(key).second)
            return;
        if (++res.states > max_states) {
            budget_hit = true;
            return;
        }
        PartitionView pv;
        for (const auto& [k, v] : fr.parts)
            pv[k] = std::set<Vid>(v.begin(), v.end());
        if (predicate(fr.g, pv))
            ++res.hits;
        auto verts = fr.g.vertices();
        Vid fresh = fr.g.max_id() + 1;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                Trigraph g2 = fr.g.contracted(verts[i], verts[j], fresh);
                if (g2.max_red_degree() > d)
                    continue;
                Frame next{std::move(g2), fr.parts};
                auto mi = next.parts.find(verts[i]);
                auto mj = next.parts.find(verts[j]);
                std::vector<Vid> merged;
                std::merge(mi->second.begin(), mi->second.end(), mj->second.begin(), mj->second.end(),
                           std::back_inserter(merged));
                next.parts.erase(mi);
                next.parts.erase(verts[j]);
                next.parts[fresh] = std::move(merged);
                dfs(next);
                if (budget_hit)
                    return;
            }
        }
    };

    Frame root;
    root.g = g;
    for (Vid v : g.vertices())
        root.parts[v] = {v};
    dfs(root);
    res.exhausted = !budget_hit;
    return res;
}

} // namespace tww
