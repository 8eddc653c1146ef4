#ifndef POPMATCH_IO_HPP
#define POPMATCH_IO_HPP

#include "popmatch/instance.hpp"

#include <string>
#include <string_view>

namespace popmatch {

enum class ParseErrorKind {
  Syntax,
  DuplicatePost,
  EmptyList,
  IdOutOfRange,
};

std::string_view to_string(ParseErrorKind kind);

class ParseError : public Error {
public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
             const std::string& what);

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

// Instance text:
//   <A> <P>
//   [(strict)]
//   a1: p3 (p1 p2) p4
//   ...
// '#' starts a comment. Applicant lines may appear in any order but each
// applicant exactly once. Last resort posts are added by the parser.
PrefInstance parse_instance(std::string_view text);
std::string serialize_instance(const PrefInstance& inst);

// Matching text: one `a<i> p<j>` or `a<i> L` line per applicant. Applicants
// without a line are unmatched. `L` means the last resort post, or unmatched
// for instances without last resorts.
Matching parse_matching(std::string_view text, const PrefInstance& inst);
/// Throws Error if some pair uses a post not on the applicant's list.
std::string serialize_matching(const Matching& m, const PrefInstance& inst);

// Bipartite graph text: `<L> <R>` then one `u v` edge per line, 1-based.
BipartiteGraph parse_bipartite(std::string_view text);
std::string serialize_bipartite(const BipartiteGraph& g);

/// Name used in output: `p<j>` for real posts, `l<i>` for last resorts.
std::string post_name(const PrefInstance& inst, PostId p);

/// Reads a whole file; throws Error if it cannot be opened.
std::string read_file(const std::string& path);

} // namespace popmatch

#endif // POPMATCH_IO_HPP
