#include "tww/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace tww {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream iss(line);
    std::vector<std::string> toks;
    std::string t;
    while (iss >> t)
        toks.push_back(t);
    return toks;
}

long parse_int(const std::string& tok, int line_no) {
    try {
        std::size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw FormatError("line " + std::to_string(line_no) + ": expected integer, got '" + tok + "'");
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw TwwError("cannot open " + path);
    return in;
}

} // namespace

Trigraph parse_trigraph(std::istream& in) {
    Trigraph g;
    bool got_header = false;
    long n = 0, want_black = 0, want_red = 0;
    long seen_black = 0, seen_red = 0;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty() || toks[0] == "c")
            continue;
        if (toks[0] == "p") {
            if (got_header)
                throw FormatError("line " + std::to_string(line_no) + ": duplicate header");
            if (toks.size() != 5 || toks[1] != "tww")
                throw FormatError("line " + std::to_string(line_no) + ": expected 'p tww <n> <#black> <#red>'");
            n = parse_int(toks[2], line_no);
            want_black = parse_int(toks[3], line_no);
            want_red = parse_int(toks[4], line_no);
            if (n < 0 || want_black < 0 || want_red < 0)
                throw FormatError("line " + std::to_string(line_no) + ": negative count");
            g = Trigraph(static_cast<int>(n));
            got_header = true;
            continue;
        }
        if (toks[0] == "e" || toks[0] == "r") {
            if (!got_header)
                throw FormatError("line " + std::to_string(line_no) + ": edge before header");
            if (toks.size() != 3)
                throw FormatError("line " + std::to_string(line_no) + ": expected '" + toks[0] + " <u> <v>'");
            long u = parse_int(toks[1], line_no), v = parse_int(toks[2], line_no);
            if (u < 1 || u > n || v < 1 || v > n)
                throw FormatError("line " + std::to_string(line_no) + ": vertex out of range");
            if (u == v)
                throw FormatError("line " + std::to_string(line_no) + ": self-loop");
            Vid a = static_cast<Vid>(u), b = static_cast<Vid>(v);
            if (g.adjacent(a, b))
                throw FormatError("line " + std::to_string(line_no) + ": duplicate or conflicting edge");
            if (toks[0] == "e") {
                g.add_black(a, b);
                ++seen_black;
            } else {
                g.add_red(a, b);
                ++seen_red;
            }
            continue;
        }
        throw FormatError("line " + std::to_string(line_no) + ": unknown record '" + toks[0] + "'");
    }
    if (!got_header)
        throw FormatError("missing 'p tww' header");
    if (seen_black != want_black || seen_red != want_red)
        throw FormatError("edge counts do not match header");
    return g;
}

Trigraph parse_trigraph_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_trigraph(in);
}

Trigraph canonical_labeling(const Trigraph& g, std::map<Vid, Vid>* old_to_new) {
    std::map<Vid, Vid> m;
    Vid next = 1;
    for (Vid v : g.vertices())
        m[v] = next++;
    if (old_to_new)
        *old_to_new = m;
    return g.relabeled(m);
}

void write_trigraph(std::ostream& out, const Trigraph& g) {
    Trigraph c = canonical_labeling(g);
    out << "p tww " << c.n() << ' ' << c.black_edge_count() << ' ' << c.red_edge_count() << '\n';
    for (auto [u, v] : c.black_edges())
        out << "e " << u << ' ' << v << '\n';
    for (auto [u, v] : c.red_edges())
        out << "r " << u << ' ' << v << '\n';
}

void write_trigraph_file(const std::string& path, const Trigraph& g) {
    std::ofstream out(path);
    if (!out)
        throw TwwError("cannot write " + path);
    write_trigraph(out, g);
}

ContractionSequence parse_sequence(std::istream& in, const Trigraph& base) {
    ContractionSequence seq;
    seq.base = base;
    bool got_header = false;
    long n = 0, want_steps = 0;
    std::string line;
    int line_no = 0;
    Vid next_result = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        if (toks[0] == "c") {
            if (toks.size() == 3 && toks[1] == "digest") {
                try {
                    seq.expected_digest = std::stoull(toks[2], nullptr, 16);
                } catch (const std::exception&) {
                    throw FormatError("line " + std::to_string(line_no) + ": bad digest");
                }
            }
            continue;
        }
        if (toks[0] == "s") {
            if (got_header)
                throw FormatError("line " + std::to_string(line_no) + ": duplicate header");
            if (toks.size() != 4 || toks[1] != "tww")
                throw FormatError("line " + std::to_string(line_no) + ": expected 's tww <n> <#steps>'");
            n = parse_int(toks[2], line_no);
            want_steps = parse_int(toks[3], line_no);
            if (n != base.n())
                throw FormatError("sequence declares " + std::to_string(n) + " vertices, base has " +
                                  std::to_string(base.n()));
            if (want_steps < 0 || want_steps > std::max(0l, n - 1))
                throw FormatError("line " + std::to_string(line_no) + ": bad step count");
            got_header = true;
            next_result = static_cast<Vid>(n) + 1;
            continue;
        }
        if (!got_header)
            throw FormatError("line " + std::to_string(line_no) + ": step before header");
        if (toks.size() != 2)
            throw FormatError("line " + std::to_string(line_no) + ": expected '<u> <v>'");
        long u = parse_int(toks[0], line_no), v = parse_int(toks[1], line_no);
        seq.steps.push_back({static_cast<Vid>(u), static_cast<Vid>(v), next_result++});
    }
    if (!got_header)
        throw FormatError("missing 's tww' header");
    if (static_cast<long>(seq.steps.size()) != want_steps)
        throw FormatError("step count does not match header");
    seq.partial = static_cast<long>(seq.steps.size()) < std::max(0l, n - 1);
    return seq;
}

ContractionSequence parse_sequence_file(const std::string& path, const Trigraph& base) {
    auto in = open_or_throw(path);
    return parse_sequence(in, base);
}

void write_sequence(std::ostream& out, const ContractionSequence& seq) {
    int n = seq.base.n();
    auto verts = seq.base.vertices();
    for (int i = 0; i < n; ++i)
        if (verts[static_cast<std::size_t>(i)] != i + 1)
            throw TwwError("write_sequence: base vertices must be 1..n");
    Vid expect = static_cast<Vid>(n) + 1;
    for (const auto& st : seq.steps)
        if (st.result != expect++)
            throw TwwError("write_sequence: result ids must be n+1, n+2, ...");
    out << "s tww " << n << ' ' << seq.steps.size() << '\n';
    for (const auto& st : seq.steps)
        out << st.left << ' ' << st.right << '\n';
    if (seq.expected_digest)
        out << "c digest " << std::hex << *seq.expected_digest << std::dec << '\n';
}

void write_sequence_file(const std::string& path, const ContractionSequence& seq) {
    std::ofstream out(path);
    if (!out)
        throw TwwError("cannot write " + path);
    write_sequence(out, seq);
}

CnfInstance parse_dimacs(std::istream& in) {
    CnfInstance cnf;
    bool got_header = false;
    long want_clauses = 0;
    std::string line;
    int line_no = 0;
    std::vector<int> clause;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty() || toks[0] == "c")
            continue;
        if (toks[0] == "p") {
            if (got_header)
                throw FormatError("line " + std::to_string(line_no) + ": duplicate header");
            if (toks.size() != 4 || toks[1] != "cnf")
                throw FormatError("line " + std::to_string(line_no) + ": expected 'p cnf <n> <m>'");
            cnf.n_vars = static_cast<int>(parse_int(toks[2], line_no));
            want_clauses = parse_int(toks[3], line_no);
            if (cnf.n_vars < 0 || want_clauses < 0)
                throw FormatError("line " + std::to_string(line_no) + ": negative count");
            got_header = true;
            continue;
        }
        if (!got_header)
            throw FormatError("line " + std::to_string(line_no) + ": clause before header");
        for (const auto& tok : toks) {
            long lit = parse_int(tok, line_no);
            if (lit == 0) {
                if (clause.empty())
                    throw FormatError("line " + std::to_string(line_no) + ": empty clause");
                cnf.clauses.push_back(clause);
                clause.clear();
            } else {
                if (std::abs(lit) > cnf.n_vars)
                    throw FormatError("line " + std::to_string(line_no) + ": literal out of range");
                clause.push_back(static_cast<int>(lit));
            }
        }
    }
    if (!got_header)
        throw FormatError("missing 'p cnf' header");
    if (!clause.empty())
        throw FormatError("last clause not 0-terminated");
    if (static_cast<long>(cnf.clauses.size()) != want_clauses)
        throw FormatError("clause count does not match header");
    return cnf;
}

CnfInstance parse_dimacs_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const CnfInstance& cnf) {
    out << "p cnf " << cnf.n_vars << ' ' << cnf.clauses.size() << '\n';
    for (const auto& cl : cnf.clauses) {
        for (int lit : cl)
            out << lit << ' ';
        out << "0\n";
    }
}

} // namespace tww
