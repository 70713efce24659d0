#ifndef TWW_IO_HPP
#define TWW_IO_HPP

#include "tww/cnf.hpp"
#include "tww/sequence.hpp"
#include "tww/trigraph.hpp"

#include <iosfwd>
#include <string>

namespace tww {

// Trigraph text format, 1-indexed:
//   c <comment>
//   p tww <n> <#black> <#red>
//   e <u> <v>     black edge
//   r <u> <v>     red edge
// Duplicate edges and black/red conflicts are rejected.
Trigraph parse_trigraph(std::istream& in);
Trigraph parse_trigraph_file(const std::string& path);
void write_trigraph(std::ostream& out, const Trigraph& g);
void write_trigraph_file(const std::string& path, const Trigraph& g);

// Sequence file format over a base with vertices 1..n:
//   s tww <n> <#steps>
//   <u> <v>        one line per step; result id implicit = n + step number
//   c digest <hex> optional terminal digest for partial sequences
ContractionSequence parse_sequence(std::istream& in, const Trigraph& base);
ContractionSequence parse_sequence_file(const std::string& path, const Trigraph& base);
void write_sequence(std::ostream& out, const ContractionSequence& seq);
void write_sequence_file(const std::string& path, const ContractionSequence& seq);

CnfInstance parse_dimacs(std::istream& in);
CnfInstance parse_dimacs_file(const std::string& path);
void write_dimacs(std::ostream& out, const CnfInstance& cnf);

// Writes with vertices relabeled to 1..n in ascending id order, as the text
// format requires contiguous ids. Identity when already contiguous.
Trigraph canonical_labeling(const Trigraph& g, std::map<Vid, Vid>* old_to_new = nullptr);

} // namespace tww

#endif
