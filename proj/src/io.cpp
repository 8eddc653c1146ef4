#include "popmatch/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace popmatch {

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
  case ParseErrorKind::Syntax:
    return "syntax error";
  case ParseErrorKind::DuplicatePost:
    return "duplicate post";
  case ParseErrorKind::EmptyList:
    return "empty list";
  case ParseErrorKind::IdOutOfRange:
    return "id out of range";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line,
                       std::size_t column, const std::string& what)
    : Error(std::string(to_string(kind)) + " at " + std::to_string(line) +
            ":" + std::to_string(column) + ": " + what),
      kind_(kind), line_(line), column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column; // 1-based
};

// Splits one line into tokens; '(' and ')' are always standalone tokens and
// everything after '#' is dropped.
std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') {
      break;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '(' || c == ')') {
      out.push_back({line.substr(i, 1), i + 1});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r' && line[j] != '#' && line[j] != '(' &&
           line[j] != ')') {
      ++j;
    }
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

bool parse_count(std::string_view s, std::size_t& out) {
  if (s.empty()) {
    return false;
  }
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// Parses `<prefix><n>` with n >= 1 and returns n, or throws Syntax.
std::size_t parse_label(const Token& tok, char prefix, std::size_t line) {
  std::size_t n = 0;
  if (tok.text.size() < 2 || tok.text[0] != prefix ||
      !parse_count(tok.text.substr(1), n) || n == 0) {
    throw ParseError(ParseErrorKind::Syntax, line, tok.column,
                     "expected " + std::string(1, prefix) + "<id>, got '" +
                         std::string(tok.text) + "'");
  }
  return n;
}

struct Header {
  std::size_t first;
  std::size_t second;
  std::size_t line_index;
};

// Finds the first non-blank line and reads two counts from it.
Header parse_header(const std::vector<std::string_view>& lines,
                    std::string_view what) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto toks = tokenize(lines[i]);
    if (toks.empty()) {
      continue;
    }
    Header h{0, 0, i};
    if (toks.size() != 2 || !parse_count(toks[0].text, h.first) ||
        !parse_count(toks[1].text, h.second)) {
      throw ParseError(ParseErrorKind::Syntax, i + 1, toks[0].column,
                       "expected header '" + std::string(what) + "'");
    }
    return h;
  }
  throw ParseError(ParseErrorKind::Syntax, 1, 1, "missing header");
}

} // namespace

PrefInstance parse_instance(std::string_view text) {
  auto lines = split_lines(text);
  Header h = parse_header(lines, "<A> <P>");
  const std::size_t num_applicants = h.first;
  const std::size_t num_posts = h.second;

  std::vector<PrefList> lists(num_applicants);
  std::vector<bool> seen(num_applicants, false);
  bool declared_strict = false;
  std::size_t strict_line = 0;

  for (std::size_t li = h.line_index + 1; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    auto toks = tokenize(lines[li]);
    if (toks.empty()) {
      continue;
    }
    if (toks.size() == 3 && toks[0].text == "(" && toks[1].text == "strict" &&
        toks[2].text == ")") {
      declared_strict = true;
      strict_line = line_no;
      continue;
    }
    const Token& head = toks[0];
    if (head.text.empty() || head.text.back() != ':') {
      throw ParseError(ParseErrorKind::Syntax, line_no, head.column,
                       "expected 'a<i>:'");
    }
    Token label{head.text.substr(0, head.text.size() - 1), head.column};
    std::size_t a = parse_label(label, 'a', line_no);
    if (a > num_applicants) {
      throw ParseError(ParseErrorKind::IdOutOfRange, line_no, head.column,
                       "applicant a" + std::to_string(a) + " exceeds " +
                           std::to_string(num_applicants));
    }
    if (seen[a - 1]) {
      throw ParseError(ParseErrorKind::Syntax, line_no, head.column,
                       "applicant a" + std::to_string(a) + " listed twice");
    }
    seen[a - 1] = true;

    PrefList list;
    std::vector<bool> used(num_posts, false);
    bool in_group = false;
    std::size_t group_column = 0;
    RankGroup group;
    for (std::size_t t = 1; t < toks.size(); ++t) {
      const Token& tok = toks[t];
      if (tok.text == "(") {
        if (in_group) {
          throw ParseError(ParseErrorKind::Syntax, line_no, tok.column,
                           "nested group");
        }
        in_group = true;
        group_column = tok.column;
        continue;
      }
      if (tok.text == ")") {
        if (!in_group) {
          throw ParseError(ParseErrorKind::Syntax, line_no, tok.column,
                           "unbalanced ')'");
        }
        if (group.empty()) {
          throw ParseError(ParseErrorKind::Syntax, line_no, tok.column,
                           "empty group");
        }
        list.push_back(std::move(group));
        group.clear();
        in_group = false;
        continue;
      }
      std::size_t p = parse_label(tok, 'p', line_no);
      if (p > num_posts) {
        throw ParseError(ParseErrorKind::IdOutOfRange, line_no, tok.column,
                         "post p" + std::to_string(p) + " exceeds " +
                             std::to_string(num_posts));
      }
      if (used[p - 1]) {
        throw ParseError(ParseErrorKind::DuplicatePost, line_no, tok.column,
                         "post p" + std::to_string(p) + " repeated");
      }
      used[p - 1] = true;
      if (in_group) {
        group.push_back(static_cast<PostId>(p - 1));
      } else {
        list.push_back({static_cast<PostId>(p - 1)});
      }
    }
    if (in_group) {
      throw ParseError(ParseErrorKind::Syntax, line_no, group_column,
                       "unterminated group");
    }
    if (list.empty()) {
      throw ParseError(ParseErrorKind::EmptyList, line_no, head.column,
                       "applicant a" + std::to_string(a) + " has no posts");
    }
    lists[a - 1] = std::move(list);
  }

  for (std::size_t a = 0; a < num_applicants; ++a) {
    if (!seen[a]) {
      throw ParseError(ParseErrorKind::EmptyList, lines.size(), 1,
                       "applicant a" + std::to_string(a + 1) +
                           " has no list");
    }
  }

  PrefInstance inst(num_posts, std::move(lists), true);
  if (declared_strict && !inst.strict()) {
    throw ParseError(ParseErrorKind::Syntax, strict_line, 1,
                     "instance declared (strict) but contains ties");
  }
  return inst;
}

std::string serialize_instance(const PrefInstance& inst) {
  std::ostringstream out;
  out << inst.num_applicants() << ' ' << inst.num_posts() << '\n';
  auto lists = inst.real_lists();
  for (std::size_t a = 0; a < lists.size(); ++a) {
    out << 'a' << a + 1 << ':';
    for (const auto& group : lists[a]) {
      if (group.size() == 1) {
        out << " p" << group[0] + 1;
      } else {
        out << " (";
        for (std::size_t i = 0; i < group.size(); ++i) {
          out << (i ? " p" : "p") << group[i] + 1;
        }
        out << ')';
      }
    }
    out << '\n';
  }
  return out.str();
}

Matching parse_matching(std::string_view text, const PrefInstance& inst) {
  Matching m = Matching::for_instance(inst);
  auto lines = split_lines(text);
  std::vector<bool> seen(inst.num_applicants(), false);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    auto toks = tokenize(lines[li]);
    if (toks.empty()) {
      continue;
    }
    if (toks.size() != 2) {
      throw ParseError(ParseErrorKind::Syntax, line_no, toks[0].column,
                       "expected 'a<i> p<j>' or 'a<i> L'");
    }
    std::size_t a = parse_label(toks[0], 'a', line_no);
    if (a > inst.num_applicants()) {
      throw ParseError(ParseErrorKind::IdOutOfRange, line_no, toks[0].column,
                       "applicant a" + std::to_string(a) + " out of range");
    }
    if (seen[a - 1]) {
      throw ParseError(ParseErrorKind::Syntax, line_no, toks[0].column,
                       "applicant a" + std::to_string(a) + " listed twice");
    }
    seen[a - 1] = true;
    auto aid = static_cast<ApplicantId>(a - 1);
    PostId post = kNoPost;
    if (toks[1].text == "L") {
      if (!inst.has_last_resort()) {
        continue;
      }
      post = inst.last_resort(aid);
    } else {
      std::size_t p = parse_label(toks[1], 'p', line_no);
      if (p > inst.num_posts()) {
        throw ParseError(ParseErrorKind::IdOutOfRange, line_no,
                         toks[1].column,
                         "post p" + std::to_string(p) + " out of range");
      }
      post = static_cast<PostId>(p - 1);
      if (inst.rank(aid, post) == 0) {
        throw ParseError(ParseErrorKind::IdOutOfRange, line_no,
                         toks[1].column,
                         "post p" + std::to_string(p) +
                             " is not on the list of a" + std::to_string(a));
      }
    }
    if (m.post_matched(post)) {
      throw ParseError(ParseErrorKind::DuplicatePost, line_no, toks[1].column,
                       "post assigned twice");
    }
    m.assign(aid, post);
  }
  return m;
}

std::string serialize_matching(const Matching& m, const PrefInstance& inst) {
  if (!consistent_with(m, inst)) {
    throw Error("matching is inconsistent with the instance");
  }
  std::ostringstream out;
  for (std::size_t a = 0; a < m.num_applicants(); ++a) {
    PostId p = m.post_of(static_cast<ApplicantId>(a));
    out << 'a' << a + 1 << ' ';
    if (p == kNoPost || inst.is_last_resort(p)) {
      out << 'L';
    } else {
      out << 'p' << p + 1;
    }
    out << '\n';
  }
  return out.str();
}

BipartiteGraph parse_bipartite(std::string_view text) {
  auto lines = split_lines(text);
  Header h = parse_header(lines, "<L> <R>");
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  std::vector<std::vector<bool>> present(h.first,
                                         std::vector<bool>(h.second, false));
  for (std::size_t li = h.line_index + 1; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    auto toks = tokenize(lines[li]);
    if (toks.empty()) {
      continue;
    }
    std::size_t u = 0;
    std::size_t v = 0;
    if (toks.size() != 2 || !parse_count(toks[0].text, u) ||
        !parse_count(toks[1].text, v)) {
      throw ParseError(ParseErrorKind::Syntax, line_no, toks[0].column,
                       "expected edge 'u v'");
    }
    if (u == 0 || u > h.first) {
      throw ParseError(ParseErrorKind::IdOutOfRange, line_no, toks[0].column,
                       "left vertex out of range");
    }
    if (v == 0 || v > h.second) {
      throw ParseError(ParseErrorKind::IdOutOfRange, line_no, toks[1].column,
                       "right vertex out of range");
    }
    if (present[u - 1][v - 1]) {
      throw ParseError(ParseErrorKind::Syntax, line_no, toks[0].column,
                       "duplicate edge");
    }
    present[u - 1][v - 1] = true;
    edges.emplace_back(static_cast<std::int32_t>(u - 1),
                       static_cast<std::int32_t>(v - 1));
  }
  return BipartiteGraph(h.first, h.second, std::move(edges));
}

std::string serialize_bipartite(const BipartiteGraph& g) {
  std::ostringstream out;
  out << g.left_count() << ' ' << g.right_count() << '\n';
  for (auto [u, v] : g.edges()) {
    out << u + 1 << ' ' << v + 1 << '\n';
  }
  return out.str();
}

std::string post_name(const PrefInstance& inst, PostId p) {
  if (inst.is_last_resort(p)) {
    return "l" + std::to_string(p - static_cast<PostId>(inst.num_posts()) + 1);
  }
  return "p" + std::to_string(p + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace popmatch
