#ifndef TWW_TRIGRAPH_HPP
#define TWW_TRIGRAPH_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tww {

using Vid = int;

struct TwwError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by parsers and on malformed certificate steps (CLI exit code 2).
struct FormatError : TwwError {
    using TwwError::TwwError;
};

// A graph with disjoint black and red edge sets. Vertex ids are stable
// opaque positive integers; contraction results get a caller-supplied
// fresh id. Values are copyable and safe to share read-only.
class Trigraph {
  public:
    Trigraph() = default;
    explicit Trigraph(int n); // vertices 1..n, no edges

    Vid add_vertex();         // allocates max_id()+1
    void add_vertex(Vid v);   // explicit id, must not be live
    bool has_vertex(Vid v) const;
    int n() const { return n_live_; }
    bool empty() const { return n_live_ == 0; }
    Vid max_id() const { return static_cast<Vid>(cells_.size()) - 1; }
    std::vector<Vid> vertices() const; // sorted ascending

    void add_black(Vid u, Vid v);
    void add_red(Vid u, Vid v);
    void remove_edge(Vid u, Vid v);
    bool has_black(Vid u, Vid v) const;
    bool has_red(Vid u, Vid v) const;
    bool adjacent(Vid u, Vid v) const; // black or red

    const std::set<Vid>& black_neighbors(Vid v) const;
    const std::set<Vid>& red_neighbors(Vid v) const;
    std::set<Vid> total_neighbors(Vid v) const;

    int degree(Vid v) const;
    int red_degree(Vid v) const;
    int max_red_degree() const { return max_red_; }

    std::size_t black_edge_count() const { return m_black_; }
    std::size_t red_edge_count() const { return m_red_; }
    std::vector<std::pair<Vid, Vid>> black_edges() const; // sorted pairs u<v
    std::vector<std::pair<Vid, Vid>> red_edges() const;

    // Merge u and v into fresh vertex w: wz stays black iff both uz and vz
    // were black; every other inherited adjacency becomes red.
    void contract(Vid u, Vid v, Vid w);
    Trigraph contracted(Vid u, Vid v, Vid w) const;

    Trigraph induced(const std::set<Vid>& s) const;
    std::vector<std::vector<Vid>> red_components() const; // sorted, incl. singletons

    Trigraph relabeled(const std::map<Vid, Vid>& old_to_new) const;

    bool operator==(const Trigraph& o) const;
    bool operator!=(const Trigraph& o) const { return !(*this == o); }

  private:
    struct Cell {
        bool live = false;
        std::set<Vid> black, red;
    };

    void check_live(Vid v, const char* who) const;
    void bump_red(std::size_t from, std::size_t to);

    std::vector<Cell> cells_; // indexed by id, slot 0 unused
    int n_live_ = 0;
    std::size_t m_black_ = 0, m_red_ = 0;
    std::vector<std::size_t> red_hist_; // count of vertices per red degree
    int max_red_ = 0;
};

struct RedDegreeProfile {
    std::map<Vid, int> degree;
    int max_red_degree = 0;
};

RedDegreeProfile red_degree_profile(const Trigraph& g);

} // namespace tww

#endif
