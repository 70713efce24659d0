#include "tww/trigraph.hpp"

#include <algorithm>

namespace tww {

Trigraph::Trigraph(int n) {
    if (n < 0)
        throw TwwError("negative vertex count");
    cells_.resize(static_cast<std::size_t>(n) + 1);
    for (int v = 1; v <= n; ++v)
        cells_[static_cast<std::size_t>(v)].live = true;
    n_live_ = n;
    red_hist_.assign(1, static_cast<std::size_t>(n));
}

void Trigraph::check_live(Vid v, const char* who) const {
    if (v <= 0 || v > max_id() || !cells_[static_cast<std::size_t>(v)].live)
        throw TwwError(std::string(who) + ": unknown vertex " + std::to_string(v));
}

// Move one vertex between red-degree histogram buckets.
void Trigraph::bump_red(std::size_t from, std::size_t to) {
    if (to >= red_hist_.size())
        red_hist_.resize(to + 1, 0);
    --red_hist_[from];
    ++red_hist_[to];
    if (static_cast<int>(to) > max_red_)
        max_red_ = static_cast<int>(to);
    while (max_red_ > 0 && red_hist_[static_cast<std::size_t>(max_red_)] == 0)
        --max_red_;
}

Vid Trigraph::add_vertex() {
    Vid v = max_id() + 1;
    if (v <= 0)
        v = 1;
    add_vertex(v);
    return v;
}

void Trigraph::add_vertex(Vid v) {
    if (v <= 0)
        throw TwwError("vertex ids must be positive");
    if (v <= max_id() && cells_[static_cast<std::size_t>(v)].live)
        throw TwwError("vertex id " + std::to_string(v) + " already live");
    if (v > max_id())
        cells_.resize(static_cast<std::size_t>(v) + 1);
    auto& c = cells_[static_cast<std::size_t>(v)];
    c.live = true;
    c.black.clear();
    c.red.clear();
    ++n_live_;
    if (red_hist_.empty())
        red_hist_.assign(1, 0);
    ++red_hist_[0];
}

bool Trigraph::has_vertex(Vid v) const {
    return v > 0 && v <= max_id() && cells_[static_cast<std::size_t>(v)].live;
}

std::vector<Vid> Trigraph::vertices() const {
    std::vector<Vid> out;
    out.reserve(static_cast<std::size_t>(n_live_));
    for (Vid v = 1; v <= max_id(); ++v)
        if (cells_[static_cast<std::size_t>(v)].live)
            out.push_back(v);
    return out;
}

void Trigraph::add_black(Vid u, Vid v) {
    check_live(u, "add_black");
    check_live(v, "add_black");
    if (u == v)
        throw TwwError("self-loop rejected");
    if (has_red(u, v))
        throw TwwError("edge already red");
    auto& cu = cells_[static_cast<std::size_t>(u)];
    if (!cu.black.insert(v).second)
        return;
    cells_[static_cast<std::size_t>(v)].black.insert(u);
    ++m_black_;
}

void Trigraph::add_red(Vid u, Vid v) {
    check_live(u, "add_red");
    check_live(v, "add_red");
    if (u == v)
        throw TwwError("self-loop rejected");
    if (has_black(u, v))
        throw TwwError("edge already black");
    auto& cu = cells_[static_cast<std::size_t>(u)];
    auto& cv = cells_[static_cast<std::size_t>(v)];
    if (!cu.red.insert(v).second)
        return;
    cv.red.insert(u);
    ++m_red_;
    bump_red(cu.red.size() - 1, cu.red.size());
    bump_red(cv.red.size() - 1, cv.red.size());
}

void Trigraph::remove_edge(Vid u, Vid v) {
    check_live(u, "remove_edge");
    check_live(v, "remove_edge");
    auto& cu = cells_[static_cast<std::size_t>(u)];
    auto& cv = cells_[static_cast<std::size_t>(v)];
    if (cu.black.erase(v)) {
        cv.black.erase(u);
        --m_black_;
    } else if (cu.red.erase(v)) {
        cv.red.erase(u);
        --m_red_;
        bump_red(cu.red.size() + 1, cu.red.size());
        bump_red(cv.red.size() + 1, cv.red.size());
    }
}

bool Trigraph::has_black(Vid u, Vid v) const {
    if (!has_vertex(u) || !has_vertex(v))
        return false;
    return cells_[static_cast<std::size_t>(u)].black.count(v) > 0;
}

bool Trigraph::has_red(Vid u, Vid v) const {
    if (!has_vertex(u) || !has_vertex(v))
        return false;
    return cells_[static_cast<std::size_t>(u)].red.count(v) > 0;
}

bool Trigraph::adjacent(Vid u, Vid v) const {
    return has_black(u, v) || has_red(u, v);
}

const std::set<Vid>& Trigraph::black_neighbors(Vid v) const {
    check_live(v, "black_neighbors");
    return cells_[static_cast<std::size_t>(v)].black;
}

const std::set<Vid>& Trigraph::red_neighbors(Vid v) const {
    check_live(v, "red_neighbors");
    return cells_[static_cast<std::size_t>(v)].red;
}

std::set<Vid> Trigraph::total_neighbors(Vid v) const {
    check_live(v, "total_neighbors");
    const auto& c = cells_[static_cast<std::size_t>(v)];
    std::set<Vid> out(c.black.begin(), c.black.end());
    out.insert(c.red.begin(), c.red.end());
    return out;
}

int Trigraph::degree(Vid v) const {
    check_live(v, "degree");
    const auto& c = cells_[static_cast<std::size_t>(v)];
    return static_cast<int>(c.black.size() + c.red.size());
}

int Trigraph::red_degree(Vid v) const {
    check_live(v, "red_degree");
    return static_cast<int>(cells_[static_cast<std::size_t>(v)].red.size());
}

std::vector<std::pair<Vid, Vid>> Trigraph::black_edges() const {
    std::vector<std::pair<Vid, Vid>> out;
    out.reserve(m_black_);
    for (Vid v = 1; v <= max_id(); ++v) {
        const auto& c = cells_[static_cast<std::size_t>(v)];
        if (!c.live)
            continue;
        for (Vid u : c.black)
            if (v < u)
                out.emplace_back(v, u);
    }
    return out;
}

std::vector<std::pair<Vid, Vid>> Trigraph::red_edges() const {
    std::vector<std::pair<Vid, Vid>> out;
    out.reserve(m_red_);
    for (Vid v = 1; v <= max_id(); ++v) {
        const auto& c = cells_[static_cast<std::size_t>(v)];
        if (!c.live)
            continue;
        for (Vid u : c.red)
            if (v < u)
                out.emplace_back(v, u);
    }
    return out;
}

void Trigraph::contract(Vid u, Vid v, Vid w) {
    check_live(u, "contract");
    check_live(v, "contract");
    if (u == v)
        throw TwwError("contract: u and v must differ");
    if (has_vertex(w))
        throw TwwError("contract: result id " + std::to_string(w) + " already live");
    if (n_live_ < 2)
        throw TwwError("contract: fewer than two vertices");

    const auto& cu = cells_[static_cast<std::size_t>(u)];
    const auto& cv = cells_[static_cast<std::size_t>(v)];
    std::vector<Vid> black_to, red_to;
    std::set<Vid> seen;
    auto classify = [&](Vid z) {
        if (z == u || z == v || !seen.insert(z).second)
            return;
        if (cu.black.count(z) && cv.black.count(z))
            black_to.push_back(z);
        else
            red_to.push_back(z);
    };
    for (Vid z : cu.black)
        classify(z);
    for (Vid z : cu.red)
        classify(z);
    for (Vid z : cv.black)
        classify(z);
    for (Vid z : cv.red)
        classify(z);

    for (Vid x : {u, v}) {
        auto& cx = cells_[static_cast<std::size_t>(x)];
        for (Vid z : std::vector<Vid>(cx.black.begin(), cx.black.end()))
            remove_edge(x, z);
        for (Vid z : std::vector<Vid>(cx.red.begin(), cx.red.end()))
            remove_edge(x, z);
        cx.live = false;
        --n_live_;
        --red_hist_[0];
    }

    add_vertex(w);
    for (Vid z : black_to)
        add_black(w, z);
    for (Vid z : red_to)
        add_red(w, z);
}

Trigraph Trigraph::contracted(Vid u, Vid v, Vid w) const {
    Trigraph g(*this);
    g.contract(u, v, w);
    return g;
}

Trigraph Trigraph::induced(const std::set<Vid>& s) const {
    Trigraph g;
    for (Vid v : s) {
        check_live(v, "induced");
        g.add_vertex(v);
    }
    for (Vid v : s) {
        const auto& c = cells_[static_cast<std::size_t>(v)];
        for (Vid u : c.black)
            if (u > v && s.count(u))
                g.add_black(v, u);
        for (Vid u : c.red)
            if (u > v && s.count(u))
                g.add_red(v, u);
    }
    return g;
}

std::vector<std::vector<Vid>> Trigraph::red_components() const {
    std::vector<std::vector<Vid>> comps;
    std::set<Vid> visited;
    for (Vid v = 1; v <= max_id(); ++v) {
        if (!cells_[static_cast<std::size_t>(v)].live || visited.count(v))
            continue;
        std::vector<Vid> comp, stack{v};
        visited.insert(v);
        while (!stack.empty()) {
            Vid x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (Vid y : cells_[static_cast<std::size_t>(x)].red)
                if (visited.insert(y).second)
                    stack.push_back(y);
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

Trigraph Trigraph::relabeled(const std::map<Vid, Vid>& old_to_new) const {
    Trigraph g;
    for (Vid v : vertices()) {
        auto it = old_to_new.find(v);
        if (it == old_to_new.end())
            throw TwwError("relabeled: no mapping for vertex " + std::to_string(v));
        g.add_vertex(it->second);
    }
    for (auto [u, v] : black_edges())
        g.add_black(old_to_new.at(u), old_to_new.at(v));
    for (auto [u, v] : red_edges())
        g.add_red(old_to_new.at(u), old_to_new.at(v));
    return g;
}

bool Trigraph::operator==(const Trigraph& o) const {
    if (n_live_ != o.n_live_ || m_black_ != o.m_black_ || m_red_ != o.m_red_)
        return false;
    if (vertices() != o.vertices())
        return false;
    for (Vid v : vertices()) {
        if (cells_[static_cast<std::size_t>(v)].black != o.cells_[static_cast<std::size_t>(v)].black)
            return false;
        if (cells_[static_cast<std::size_t>(v)].red != o.cells_[static_cast<std::size_t>(v)].red)
            return false;
    }
    return true;
}

RedDegreeProfile red_degree_profile(const Trigraph& g) {
    RedDegreeProfile p;
    for (Vid v : g.vertices()) {
        int d = g.red_degree(v);
        p.degree[v] = d;
        p.max_red_degree = std::max(p.max_red_degree, d);
    }
    return p;
}

} // namespace tww
